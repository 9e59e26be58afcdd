use thiserror::Error;

use crate::exprdsl::ExprError;
use crate::pointgroups::GroupId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown point group `{0}`")]
    UnknownGroup(String),
    #[error("{0} is a continuous group and cannot be enumerated")]
    ContinuousGroup(GroupId),
    #[error("structural set is not closed: ⟨Q⟩{label} has no match (Q = {element})")]
    NotClosed { label: String, element: String },
    #[error("unsupported tensor order {0}")]
    UnsupportedOrder(usize),
    #[error("tensor of order {0} combined with tensor of order {1}")]
    OrderMismatch(usize, usize),
    #[error("expected {expected} tensor components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("trace of an empty product")]
    EmptyChain,
    #[error("grid resolution {0} is below the minimum of 360")]
    GridTooCoarse(usize),
    #[error("{what} index {index} out of range (have {len})")]
    IndexOutOfRange { what: &'static str, index: usize, len: usize },
    #[error("expected {expected} free coefficient expressions, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unknown variable `{var}`; valid names are I1..I{count}")]
    UnknownVariable { var: String, count: usize },
    #[error("wrong kind: operation needs {0}")]
    WrongKind(&'static str),
    #[error("model is not symmetrized; enable unsymmetrized evaluation explicitly")]
    Unsymmetrized,
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid model file: {0}")]
    ModelFile(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
