use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("no vertex with id `{0}`")]
    NoSuchVertex(String),
    #[error("no edge with id `{0}`")]
    NoSuchEdge(String),
    #[error("edge `{0}` has a non-positive length")]
    NonPositiveLength(String),
    #[error("symbolic variable index must be at least 1 (edge `{0}`)")]
    BadVariable(String),
    #[error("canonical divisor is not effective at vertex `{vertex}` (K = {order})")]
    NonEffectiveCanonicalDivisor { vertex: String, order: i64 },
    #[error("cannot contract loop edge `{0}`")]
    LoopContraction(String),
    #[error("cannot fuse vertex `{0}` with itself")]
    SameVertex(String),
    #[error("operation needs numeric edge lengths")]
    SymbolicLengths,
    #[error("genus {genus} is too small (need at least {min})")]
    GenusTooSmall { genus: i64, min: i64 },
    #[error("genus {0} is not covered by a proven constant; pass the conjectural flag to use (g-1)/(27g)")]
    UnsupportedGenus(i64),
    #[error("genus {genus} exceeds the enumeration limit {limit}")]
    GenusTooLarge { genus: i64, limit: i64 },
    #[error("delta index {index} is outside [0, {max}]")]
    BadDeltaIndex { index: usize, max: usize },
    #[error("degree must be positive")]
    BadDegree,
    #[error("not a canonical cubic model: {0}")]
    NotCanonicalCubic(String),
    #[error("subgraph is not a pointed summand: {0}")]
    NotAPointedSummand(String),
    #[error("polynomial arity mismatch ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("singular linear system")]
    SingularSystem,
    #[error("subdivision fraction must lie strictly between 0 and 1")]
    BadFraction,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
