use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("simplex ({dim}, {index}) does not belong to this simplicial set")]
    ForeignSimplex { dim: usize, index: usize },

    #[error("malformed simplicial set: {0}")]
    MalformedSet(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("expected a monomorphism: {0}")]
    NotMono(String),

    #[error("square does not commute: {0}")]
    NotCommutative(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("not a quasicategory up to dimension {max_dim}")]
    NotQuasicategory { max_dim: usize },

    #[error("bound {bound} too small (minimum {minimum})")]
    BoundTooSmall { bound: usize, minimum: usize },

    #[error("invalid finite category: {0}")]
    InvalidCategory(String),

    #[error("nerve has nondegenerate simplices above the bound {max_dim}")]
    NerveUnbounded { max_dim: usize },

    #[error("truncation mismatch: {0}")]
    Truncation(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
