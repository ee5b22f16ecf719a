use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    #[error("non-finite deformation parameter ({re}, {im})")]
    NonFinite { re: f64, im: f64 },

    #[error("invalid half-integer `{0}`")]
    InvalidHalfInt(String),

    #[error("invalid spin label {0}: spins must be non-negative")]
    InvalidSpin(String),

    #[error("operation requires the Lie basis, got {0}")]
    NonLieBasis(String),

    #[error("operation requires the crystal basis, got {0}")]
    NonCrystalBasis(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("word of length {0} exceeds the symmetrizer limit of {max}", max = crate::ncpoly::MAX_SYMMETRIZE_LEN)]
    WordTooLong(usize),

    #[error("irreducible decomposition failed: {0}")]
    DecompositionFailure(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The variant name, for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateDenominator(_) => "DegenerateDenominator",
            Error::NonFinite { .. } => "NonFinite",
            Error::InvalidHalfInt(_) => "InvalidHalfInt",
            Error::InvalidSpin(_) => "InvalidSpin",
            Error::NonLieBasis(_) => "NonLieBasis",
            Error::NonCrystalBasis(_) => "NonCrystalBasis",
            Error::BasisMismatch(_) => "BasisMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::WordTooLong(_) => "WordTooLong",
            Error::DecompositionFailure(_) => "DecompositionFailure",
            Error::InvalidSequence(_) => "InvalidSequence",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::UnknownCheck(_) => "UnknownCheck",
        }
    }
}
