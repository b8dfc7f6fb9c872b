use thiserror::Error;

use crate::set::SumsetKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("dilation factor must be nonzero")]
    InvalidDilation,

    #[error("set {0} cannot be normalized: elements must be nonnegative with at least one positive")]
    NotNormalizable(String),

    #[error("fold h = {h} is out of range for the {kind} sumset of a {k}-element set")]
    InvalidFold { h: usize, k: usize, kind: SumsetKind },

    #[error("h * max|a| = {h} * {max_abs} exceeds 2^62")]
    Overflow { h: usize, max_abs: u64 },

    #[error("dense value range of {cells} cells exceeds the layered engine limit of {limit}")]
    RangeTooLarge { cells: u64, limit: u64 },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("{id} is not applicable for k = {k}, h = {h}")]
    NotApplicable { id: String, k: usize, h: usize },

    #[error("arithmetic progression test is degenerate for a single element")]
    Degenerate,

    #[error("search space is empty: {0}")]
    EmptySpace(String),

    #[error("theorem bound {id} violated by {set} at h = {h}: |sumset| = {cardinality} < {bound}")]
    TheoremViolation {
        id: String,
        set: String,
        h: usize,
        cardinality: usize,
        bound: i64,
    },

    #[error("engines disagree on {set} at h = {h}: naive {naive}, layered {layered}")]
    EngineMismatch {
        set: String,
        h: usize,
        naive: usize,
        layered: usize,
    },

    #[error("malformed set literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("worker for partition block {block} failed: {reason}")]
    Worker { block: usize, reason: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
