use thiserror::Error;

use crate::action::Finding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("degree mismatch: expected homogeneous of degree {expected}")]
    DegreeMismatch { expected: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("degree {degree} needs {coordinates} coordinates, above the size cap of {cap}")]
    SizeCapExceeded {
        degree: usize,
        coordinates: u128,
        cap: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("action is not scalar")]
    NotScalar,
    #[error("matrix of {0:?} is not in Jordan normal form: {1}")]
    NotJordanShape(String, String),
    #[error("sigma or tau of {0:?} does not act scalarly")]
    NotScalarSigmaTau(String),
    #[error("index {0} outside 1..={1}")]
    InvalidIndex(usize, usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("prefix x{x}^{k} cancelled out of the support at step {k}")]
    CancellationDetected { x: usize, k: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("spec has {} error finding(s)", .0.len())]
    Validation(Vec<Finding>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
