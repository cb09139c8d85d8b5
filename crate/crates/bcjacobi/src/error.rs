use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("invalid partition `{0}`: parts must be positive and weakly decreasing")]
    BadPartition(String),
    #[error("parameter certification failed: {0}")]
    Uncertifiable(String),
    #[error("operation requires a certified parameter context")]
    NotCertified,
    #[error("degree bound {bound} too small, need at least {needed}")]
    DegreeBound { bound: usize, needed: usize },
    #[error("basis mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: &'static str, got: &'static str },
    #[error("variable lists differ: {0}")]
    VarMismatch(String),
    #[error("k must be nonzero")]
    ZeroK,
    #[error("eigenvalue resonance between {0} and {1}")]
    Resonance(String, String),
    #[error("nonzero remainder dividing by ({0} - {1}): input not in the symmetric algebra")]
    NonzeroRemainder(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate factor in gamma-ratio product: {0}")]
    DegenerateFactor(String),
    #[error("partition {0} is not contained in the fat ({1},{2})-hook")]
    FatHook(String, usize, usize),
    #[error("inadmissible shift {0} for partition {1}")]
    InadmissibleShift(String, String),
    #[error("singular linear system: {0}")]
    SingularSystem(String),
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
