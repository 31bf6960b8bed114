use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("spectrum does not split over the working field: {0}")]
    NonSplitSpectrum(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("construction word exceeds the degree budget ({degree} > {budget})")]
    DegreeBudgetExceeded { degree: usize, budget: usize },
    #[error("pair is not unipotently ramified and Frobenius semisimple")]
    NotUrfs,
    #[error("matrix is not an element of the group")]
    NotInGroup,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("no instance found within budget: {0}")]
    NotFound(String),
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
