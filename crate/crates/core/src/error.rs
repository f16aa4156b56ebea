use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph with {requested} vertices exceeds the vertex cap of {cap}")]
    CapExceeded { requested: u128, cap: usize },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),

    #[error("graph has an isolated vertex {0}; no total dominating set exists")]
    IsolatedVertex(usize),

    #[error("vertex {0} is social but has no private neighbor; the set is not minimal")]
    NotMinimal(usize),

    #[error("the set does not dominate vertex {0}")]
    NotDominating(usize),

    #[error("oracle limited to {cap} vertices, graph has {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("cannot parse graph descriptor {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("inconsistent bounds for {quantity}: lower {lo} exceeds upper {hi}")]
    InconsistentBounds { quantity: String, lo: u64, hi: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
