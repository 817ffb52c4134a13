use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("invalid extension class: {0}")]
    InvalidClass(String),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not a quotient: {0}")]
    NotAQuotient(String),
    #[error("inconsistent certificate: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::IllDefinedMap(_) => "ill_defined_map",
            Error::EndpointMismatch(_) => "endpoint_mismatch",
            Error::NotExact(_) => "not_exact",
            Error::InvalidClass(_) => "invalid_class",
            Error::Unsupported(_) => "unsupported_instance",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::Parse { .. } => "parse_error",
            Error::NotAQuotient(_) => "not_a_quotient",
            Error::Inconsistent(_) => "inconsistent",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Parse { position, .. } => Some(*position),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
