use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("mode index {index} out of range for {n} modes")]
    ModeOutOfRange { index: usize, n: usize },

    #[error("alpha and beta have different lengths ({alpha} vs {beta})")]
    RaggedMultiIndex { alpha: usize, beta: usize },

    #[error("polynomial is not skew-hermitian: term {term} has no matching partner")]
    NotSkewHermitian { term: String },

    #[error("{0} lies in the diagonal subspace and has no complementary partner")]
    InputInDiagonal(String),

    #[error("invalid chain seed: {0}")]
    InvalidSeed(String),

    #[error("invalid Type I partner: {0}")]
    InvalidPartner(String),

    #[error("chain level {level} breaks complementarity at mode {mode}")]
    ComplementarityViolation { level: usize, mode: usize },

    #[error("top-degree terms cancel at chain level {level}; rerun without leading_only")]
    LeadingCancellation { level: usize },

    #[error("term limit exceeded: {terms} terms (limit {limit})")]
    TermLimit { terms: usize, limit: usize },

    #[error("Perp membership conditions need |gamma| >= 3, got {0}")]
    DegreeTooSmall(u32),

    #[error("inadmissible omnibus input: {0}")]
    Inadmissible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
