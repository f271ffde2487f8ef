//! Recolouring of list colourings under `a`-feasible assignments.

pub mod bounds;
pub mod full;
pub mod linear;
pub mod recursion;

pub use bounds::{bound_recursion, theorem_bound, transform_k_bound, BoundCase, BoundParams, BoundReport};
pub use full::{change_full, find_full, full_prefix, full_up_to, is_full, FullSetState};
pub use linear::linear_transform;
pub use recursion::{transform_k, transform_list};
