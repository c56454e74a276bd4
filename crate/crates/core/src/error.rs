use thiserror::Error;

/// Errors raised by constructors, checkers and file loaders.
///
/// Everything except [`Error::Internal`] is a usage error: the caller passed
/// parameters outside an operation's contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} outside 1..=64")]
    InvalidGround(u32),
    #[error("subset bits {bits:#x} do not fit in ground set [{ground_n}]")]
    BitsOutOfRange { bits: u64, ground_n: u32 },
    #[error("element {element} not in ground set [{ground_n}]")]
    ElementOutOfRange { element: u32, ground_n: u32 },
    #[error("ground sets differ: [{left}] vs [{right}]")]
    GroundMismatch { left: u32, right: u32 },
    #[error("subset size {k} exceeds ground set size {n}")]
    SubsetTooLarge { k: u32, n: u32 },
    #[error("rank {rank} out of range for {k}-subsets of [{n}]")]
    RankOutOfRange { rank: u64, n: u32, k: u32 },
    #[error("invalid parameters for {family}(n={n}, m={m}): {reason}")]
    InvalidParameters {
        family: &'static str,
        n: u32,
        m: u32,
        reason: String,
    },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: u32, count: usize },
    #[error("endpoints must be distinct (got {0} twice)")]
    SameEndpoints(u32),
    #[error("path length {length} outside [{min}, {max}]")]
    LengthOutOfRange { length: usize, min: usize, max: usize },
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("map is not a bijection: {0}")]
    NotPermutation(String),
    #[error("generator {generator} is not an automorphism: edge ({u}, {v}) maps to a non-edge")]
    NotAutomorphism { generator: usize, u: u32, v: u32 },
    #[error("operation requires a Johnson graph, got family `{0}`")]
    NotJohnson(String),
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
