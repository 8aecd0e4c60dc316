use thiserror::Error;

use crate::forms::Violation;
use crate::group::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure of a Cayley table to describe a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("table has {rows} rows but order is {order}")]
    RowCount { rows: usize, order: usize },
    #[error("row {row} has {len} entries, expected {order}")]
    RowLength {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("id 0 is not an identity: 0*{x} or {x}*0 differs from {x}")]
    Identity { x: usize },
    #[error("element {x} has no two-sided inverse")]
    Inverse { x: usize },
    #[error("associativity fails for ({x}*{y})*{z} != {x}*({y}*{z})")]
    Associativity { x: usize, y: usize, z: usize },
    #[error("{given} labels given for a group of order {order}")]
    Labels { given: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element id {id} out of range for a group of order {order}")]
    InvalidElement { id: usize, order: usize },
    #[error("group order {order} is outside the supported range 1..={max}")]
    Size { order: usize, max: usize },
    #[error("not a group: {0}")]
    Axiom(#[from] AxiomViolation),
    #[error("subset is not closed: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {by} * {member} * {by}^-1 is outside it")]
    NotNormal { member: Elem, by: Elem },
    #[error("{0}")]
    Condition(Violation),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid Pauli group spec: {0}")]
    PauliSpec(String),
    #[error("vector has {got} coordinates, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error(
        "form is degenerate (radical of dimension {radical_dim}); use the quotient construction"
    )]
    Degenerate { radical_dim: usize },
    #[error("quadric does not match any classification row: {0}")]
    Classification(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("well-definedness check failed: {0}")]
    NotWellDefined(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Condition(v)
    }
}
