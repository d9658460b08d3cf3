use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("closure exceeded the size limit of {limit} elements")]
    SizeLimit { limit: usize },

    #[error("search budget exhausted after {tried} candidates")]
    BudgetExhausted { tried: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
