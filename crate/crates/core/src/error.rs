use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has {found} entries, expected {expected}")]
    EntryCount { expected: usize, found: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("{kernel} permanent limited to n <= {limit}, got n = {n}")]
    PermanentTooLarge {
        kernel: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("multiplicity vector has length {found}, matrix dimension is {expected}")]
    MultiplicityLength { expected: usize, found: usize },
    #[error("row multiplicities sum to {rows} but column multiplicities sum to {cols}")]
    UnbalancedMultiplicities { rows: usize, cols: usize },
    #[error("number of modes must be at least 1")]
    ZeroModes,
    #[error("basis for d = {modes}, n = {photons} exceeds the cap of {cap} states")]
    BasisTooLarge {
        modes: usize,
        photons: usize,
        cap: usize,
    },
    #[error("mode index {index} out of range 1..={modes}")]
    ModeOutOfRange { index: usize, modes: usize },
    #[error("mode sequence is not nondecreasing")]
    DecreasingSequence,
    #[error("state has {found} modes, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("particle number mismatch: input has {input}, output has {output}")]
    ParticleMismatch { input: usize, output: usize },
    #[error("exact normalization limited to n <= 20 particles, got {photons}")]
    GammaOverflow { photons: usize },
    #[error("occupation {occupation} in mode {mode} violates Pauli exclusion")]
    NotFermionic { mode: usize, occupation: usize },
    #[error("matrix is not unitary: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotUnitary { deviation: f64, tolerance: f64 },
    #[error("expected an even dimension for a real 2d x 2d matrix, got {0}")]
    OddDimension(usize),
    #[error("distribution sums to {total}, not 1")]
    Unnormalized { total: f64 },
    #[error("chi-square test needs at least 2 bins after pooling, got {0}")]
    TooFewBins(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Numerical validation failures, as opposed to malformed or
    /// inconsistent input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotUnitary { .. } | Error::Unnormalized { .. })
    }
}
