use alloc::string::String;

use crate::polytope::ValidationReport;

/// Failure to read a scalar literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseScalarError {
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed number {0:?}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("malformed linear program: {0}")]
    MalformedLp(&'static str),

    #[error("simplex exceeded its iteration limit")]
    IterationLimit,

    #[error("invalid polytope: {0}")]
    InvalidPolytope(ValidationReport),

    #[error("the origin is not interior to the hull")]
    UnboundedPolar,

    #[error("functionals chosen at vertex {vertex} have a nontrivial common kernel")]
    DegenerateSubset { vertex: usize },

    #[error("no functional subset given for vertex {vertex}")]
    MissingSubset { vertex: usize },

    #[error("facet {facet} is not incident to vertex {vertex}")]
    NotIncident { vertex: usize, facet: usize },

    #[error("index {index} out of range (len {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("linear program unexpectedly {0}")]
    LpFailed(&'static str),

    #[error("witness operator {0} has norm zero")]
    ZeroOperator(usize),

    #[error("singular linear system")]
    Singular,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("coordinates are irrational; use the float backend")]
    IrrationalCoordinates,

    #[error(transparent)]
    Parse(#[from] ParseScalarError),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
