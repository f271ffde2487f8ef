//! Explicit recolouring sequences between proper (list-)colourings of sparse graphs.

pub mod error;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod io;
pub mod list_recolor;
pub mod oracle;
pub mod planar;
pub mod sequence;

pub use error::{ErrorCategory, RecolorError, Result};
pub use graph::{degeneracy, degeneracy_ordering, DegeneracyOrdering, Graph, Vertex};
pub use instance::{
    check_feasible, greedy_colouring, is_proper, restrict_instance, Colour, Colouring, ListInstance,
    Restriction,
};
pub use sequence::{validate_sequence, RecoloringSequence, Step, StepFault, ValidationReport};
