use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a graph failed the 2-connectivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    TooSmall(usize),
    Disconnected,
    CutVertex(usize),
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::TooSmall(n) => write!(f, "only {n} vertices"),
            Connectivity::Disconnected => write!(f, "graph is disconnected"),
            Connectivity::CutVertex(v) => write!(f, "vertex {v} is a cut vertex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("edge {0}-{1} is already present")]
    DuplicateEdge(usize, usize),

    #[error("target ({a},{b}) is not admissible: need a,b >= 1 and a+b = τ={tau}")]
    Target { a: usize, b: usize, tau: usize },

    #[error("tuple {parts:?} is not admissible: need positive entries summing to τ={tau}")]
    Tuple { parts: Vec<usize>, tau: usize },

    #[error("graph is not 2-connected: {0}")]
    NotTwoConnected(Connectivity),

    #[error("{what}: order {n} exceeds capacity {max}")]
    Capacity { what: &'static str, n: usize, max: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("no ({a},{b})-partition exists for {graph6}: path partition counterexample")]
    PartitionCounterexample { graph6: String, a: usize, b: usize },

    #[error("no star colouring with at most {bound} colours exists for {graph6}")]
    StarCounterexample { graph6: String, bound: usize },
}

impl Error {
    pub(crate) fn capacity(what: &'static str, n: usize, max: usize) -> Self {
        Error::Capacity { what, n, max }
    }
}
