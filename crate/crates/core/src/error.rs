use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is not a subdivision of a simple graph: {0}")]
    NotASubdivision(String),
    #[error("pattern search exceeded its budget of {0} pattern vertices")]
    PatternTooLarge(usize),
    #[error("instance too large for exact computation: {0}")]
    TooLarge(String),
    #[error("invalid tree decomposition ({condition}): {witness}")]
    InvalidDecomposition { condition: String, witness: String },
    #[error("no bag gives a balanced separator")]
    NoBalancedBag,
    #[error("invalid covering: {0}")]
    InvalidCovering(String),
    #[error("oracle does not support this block: {0}")]
    UnsupportedBlock(String),
    #[error("oracle violation: {0}")]
    OracleViolation(String),
    #[error("packing search exceeded its budget of {0} nodes")]
    PackingBudgetExceeded(usize),
    #[error("partition width {width} exceeds the proven bound {bound}")]
    WidthBoundExceeded { width: usize, bound: usize },
    #[error("graph is outside the required class: {0}")]
    ClassViolation(String),
    #[error("maximum degree {degree} exceeds the allowed bound {bound}")]
    DegreeBoundViolated { degree: usize, bound: usize },
    #[error("suppressed core has {size} vertices, more than {bound}")]
    CoreTooLarge { size: usize, bound: usize },
    #[error("remainder component is not a clique: {0:?}")]
    NonCliqueRemainder(Vec<usize>),
    #[error("drawing is not weakly outer {k}-planar: edges {e:?} and {f:?} cross and both have more than {k} crossings")]
    NotWeaklyOuterKPlanar {
        k: usize,
        e: (usize, usize),
        f: (usize, usize),
    },
    #[error("component {0:?} exceeds the allowed size")]
    ComponentTooLarge(Vec<usize>),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
