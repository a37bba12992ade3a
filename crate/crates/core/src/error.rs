use thiserror::Error;

/// Errors raised across construction, synthesis, compilation and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("subspace index {index} out of range for d={d} (valid 0..={})", .d.saturating_sub(2))]
    SubspaceOutOfRange { index: usize, d: usize },

    #[error("dimension d={d} outside supported range {min}..={max}")]
    DimensionOutOfRange { d: usize, min: usize, max: usize },

    #[error("control word {word:?} is not in the control sector of pqrs {pqrs:?}")]
    NotInSector { pqrs: [usize; 4], word: [usize; 4] },

    #[error("malformed basis word: {0}")]
    MalformedWord(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("wire mismatch: {0}")]
    WireMismatch(String),

    #[error("unsupported gating configuration: {0}")]
    UnsupportedGating(String),

    #[error("singular-M correction search exhausted at rank {rank} of {size}")]
    CorrectionExhausted { rank: usize, size: usize },

    #[error("empty control sequence")]
    EmptySequence,

    #[error("invalid control sequence: {0}")]
    InvalidSequence(String),

    #[error("state space of {dim} amplitudes exceeds the cap of {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("faces {0} and {1} are not opposite")]
    NotOpposite(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
