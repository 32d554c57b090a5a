use thiserror::Error;

use crate::superalgebra::Parity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live over different signatures")]
    SignatureMismatch,
    #[error("operands live over different bundles")]
    BundleMismatch,
    #[error("expected {expected} components, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("at most 64 odd coordinates are supported, got {0}")]
    TooManyOddCoordinates(usize),
    #[error("{0} is not parity-homogeneous")]
    Inhomogeneous(&'static str),
    #[error("{what} must be {expected}, got `{value}`")]
    Parity {
        what: String,
        expected: Parity,
        value: String,
    },
    #[error("the algebroid carries no bracket; {0} requires one")]
    MissingBracket(&'static str),
    #[error("bracket entry {0} conflicts with graded antisymmetry")]
    AntisymmetryConflict(String),
    #[error("{0} requires the purely even tangent algebroid of a chart")]
    NotTangent(&'static str),
    #[error("metric is not symmetric at ({0}, {1})")]
    MetricNotSymmetric(String, String),
    #[error("supplied inverse metric does not invert g")]
    MetricInverse,
    #[error("endomorphism does not preserve the anchor at basis element `{0}`")]
    AnchorNotPreserved(String),
    #[error("law checks need a non-empty sample")]
    EmptySample,
    #[error("{0} is not torsion-free")]
    NotTorsionFree(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
