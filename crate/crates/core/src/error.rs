use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank deficient: numerical rank {rank} < required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("basis is not orthonormal (max deviation {deviation:.3e})")]
    InvalidBasis { deviation: f64 },

    #[error("sampling failed to reach full rank after {attempts} attempts (seed {seed})")]
    SamplingFailure { seed: u64, attempts: usize },

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("conductance undefined: set is empty or the whole vertex set")]
    UndefinedDenominator,

    #[error("graph is disconnected ({components} components); process each component separately")]
    Disconnected { components: usize },

    #[error("profiles belong to different graphs")]
    GraphMismatch,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 3 input, 4 guard, 5 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Guard(_) => 4,
            Error::RankDeficient { .. } | Error::InvalidBasis { .. } | Error::SamplingFailure { .. } => 5,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::RankDeficient { .. } => "rank-deficient",
            Error::InvalidBasis { .. } => "invalid-basis",
            Error::SamplingFailure { .. } => "sampling-failure",
            Error::Guard(_) => "guard",
            Error::UndefinedDenominator => "undefined-denominator",
            Error::Disconnected { .. } => "disconnected",
            Error::GraphMismatch => "graph-mismatch",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}
