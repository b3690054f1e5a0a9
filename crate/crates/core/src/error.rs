use thiserror::Error;

/// Errors raised by parameter validation and the dense oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count must be at least {min}, got {got}")]
    TooFewQubits { min: u64, got: u64 },

    #[error("epsilon must be a finite angle in [0, pi/2], got {0}")]
    InvalidEpsilon(f64),

    #[error("overlap deficit 1-|<phi1|phi2>|^2 must lie in [0, 1], got {0}")]
    InvalidOverlapDeficit(f64),

    #[error("gamma_t must be finite and nonnegative, got {0}")]
    InvalidGammaT(f64),

    #[error("loss probability must lie in [0, 1], got {0}")]
    InvalidLossProbability(f64),

    #[error("measurement index {index} outside 1..={n}")]
    IndexOutOfRange { index: u64, n: u64 },

    #[error("{what} needs {n} qubits but the dense limit is {cap}")]
    SizeCap {
        what: &'static str,
        n: u64,
        cap: u64,
    },

    #[error("grid must be finite, nonnegative, ascending and start at 0")]
    InvalidGrid,

    #[error("filter is undefined for epsilon = 0 (phi1 = phi2)")]
    DegenerateFilter,

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("not a density operator: {0}")]
    NotDensityOperator(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
