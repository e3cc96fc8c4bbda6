use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed document: {0}")]
    Parse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("row {row} of the kernel sums to {sum}, not 1")]
    RowSum { row: usize, sum: String },

    #[error("kernel entry ({from}, {to}) is nonzero but {from}->{to} is not an arc")]
    SupportOutsideArcs { from: usize, to: usize },

    #[error("kernel entry ({from}, {to}) is negative")]
    NegativeEntry { from: usize, to: usize },

    #[error("vertex {0} has no outgoing arc")]
    Sink(usize),

    #[error("no nowherezero stationary distribution: {0}")]
    NoNowherezeroStationary(String),

    #[error("exact backend requested but the kernel contains float entries")]
    FloatKernelInExactMode,

    #[error("empty vertex subset")]
    EmptySubset,

    #[error("n = {n} is out of range 1..={max}")]
    OutOfRange { n: usize, max: usize },

    #[error("{vertices} vertices exceeds the enumeration cap of {cap}; raise it with --cap")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("search space of {size} maps exceeds the cap of {cap}; raise it with --cap")]
    SearchSpaceExceeded { size: f64, cap: f64 },

    #[error("invalid function family: {0}")]
    InvalidFamily(String),

    #[error("frame is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("eigen-solver did not converge (off-diagonal norm {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("precondition unmet: {0}")]
    Precondition(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
