//! 5-recolouring of planar bipartite graphs by configuration reduction.

pub mod config;
pub mod embedding;
pub mod levels;
pub mod reduce;
pub mod transform;

use crate::instance::Colour;

/// Colours are `0..PLANAR_COLOURS`.
pub const PLANAR_COLOURS: Colour = 5;

pub use config::{find_configuration, Configuration};
pub use embedding::{audit, euler_audit, AuditReport, ComponentAudit, Embedding};
pub use levels::{levels, LevelMap};
pub use reduce::{equalize_vw, merge, remove_vertex, VertexMap};
pub use transform::{
    planar_bound, transform_planar_bipartite, transform_planar_bipartite_traced, PlanarTrace,
};
