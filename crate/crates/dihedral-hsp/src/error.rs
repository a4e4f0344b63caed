use thiserror::Error;

/// Errors surfaced by simulator and solver entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error("state vector must have at least one amplitude")]
    EmptyState,

    #[error("simulation needs {required} amplitudes, cap is {cap} (override with {cap_env})", cap_env = crate::sampler::CAP_ENV_VAR)]
    AmplitudeCap { required: u64, cap: u64 },

    #[error("element set is not closed under the group operation")]
    NotClosed,

    #[error("rotation generating set contains a reflection")]
    ReflectionInRotations,

    #[error("measurement branch b={branch} carries zero probability mass")]
    EmptyBranch { branch: u8 },

    #[error("sample set is empty")]
    EmptySamples,

    #[error("Hoeffding bound needs lower < upper")]
    DegenerateRange,

    #[error("oracle query budget exceeded: used {used}, budget {budget}")]
    BudgetExceeded { used: u64, budget: u64 },

    #[error("Fourier coefficient shapes do not match the irrep set")]
    DimensionMismatch,

    #[error("malformed oracle dump: {0}")]
    BadDump(String),

    #[error("invalid experiment spec: {0}")]
    BadSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
