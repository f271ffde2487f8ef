use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by the recolouring engines and their supporting types.
///
/// The variants fall into three families that front ends map to distinct
/// exit codes (see [`RecolorError::category`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecolorError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("colouring has {got} entries, graph has {expected} vertices")]
    ColouringLength { expected: usize, got: usize },

    #[error("colouring is not proper: edge {0}-{1} is monochromatic")]
    Improper(Vertex, Vertex),

    #[error("colouring gives vertex {vertex} colour {colour}, which is not in its list")]
    OffList { vertex: Vertex, colour: u32 },

    #[error("vertex {vertex} has no admissible colour")]
    NoAdmissibleColour { vertex: Vertex },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification of an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed or inconsistent input data.
    Input,
    /// Well-formed input outside the regime an engine supports.
    Precondition,
    /// A guarantee the engine relies on did not hold.
    Internal,
}

impl RecolorError {
    pub fn category(&self) -> ErrorCategory {
        match self {
            RecolorError::InvalidInput(_)
            | RecolorError::ColouringLength { .. }
            | RecolorError::Improper(..)
            | RecolorError::OffList { .. } => ErrorCategory::Input,
            RecolorError::NoAdmissibleColour { .. }
            | RecolorError::Precondition(_)
            | RecolorError::Unsupported(_) => ErrorCategory::Precondition,
            RecolorError::Invariant(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, RecolorError>;

macro_rules! invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::RecolorError::Invariant(format!($($arg)+)));
        }
    };
}
pub(crate) use invariant;
