use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("argument {index} out of range for degree {degree}")]
    IndexOutOfRange { index: i64, degree: usize },

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed cycle notation: {0}")]
    MalformedNotation(String),

    #[error("invalid colored permutation: {0}")]
    InvalidColored(String),

    /// The input is a valid value but lies outside the domain of the map.
    #[error("outside domain: {0}")]
    Domain(String),

    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("enumeration of {size} elements exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("rank {index} out of range for a domain of size {size}")]
    RankOutOfRange { index: String, size: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}
