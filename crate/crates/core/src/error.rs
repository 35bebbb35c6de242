use thiserror::Error;

/// Every failure the library can report. The variant name is part of the
/// public contract: the CLI prints it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("operands live in different rings: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: String },
    #[error("division by {0} is ambiguous in {1}")]
    ZeroDivisor(String, String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("universal polynomial {key} failed an exact division by {divisor}")]
    IntegralityViolation { key: String, divisor: u64 },
    #[error("cache file unreadable: {0}")]
    CacheCorrupt(String),
    #[error("{key} exceeds the universal-polynomial ceiling {ceiling}")]
    CeilingExceeded { key: String, ceiling: u64 },
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("ghost vector is not in the image of the ghost map at index {0}")]
    NotInGhostImage(u64),
    #[error("operation needs a torsion-free ring, got {0}")]
    UnsupportedRing(String),
    #[error("{0} is not a subset of {1}")]
    NotSubset(String, String),
    #[error("truncation sets differ: expected {expected}, got {found}")]
    SetMismatch { expected: String, found: String },
    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, String),
    #[error("{0} exceeds the enumeration budget {1}")]
    BudgetExceeded(u64, u64),
    #[error("not divisor-closed: {0}")]
    NotDivisorClosed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl WittError {
    pub fn name(&self) -> &'static str {
        match self {
            WittError::SpecMismatch(..) => "SpecMismatch",
            WittError::NotDivisible { .. } => "NotDivisible",
            WittError::ZeroDivisor(..) => "ZeroDivisor",
            WittError::NotAUnit(_) => "NotAUnit",
            WittError::NotPrime(_) => "NotPrime",
            WittError::IntegralityViolation { .. } => "IntegralityViolation",
            WittError::CacheCorrupt(_) => "CacheCorrupt",
            WittError::CeilingExceeded { .. } => "CeilingExceeded",
            WittError::MissingVariable(_) => "MissingVariable",
            WittError::NotInGhostImage(_) => "NotInGhostImage",
            WittError::UnsupportedRing(_) => "UnsupportedRing",
            WittError::NotSubset(..) => "NotSubset",
            WittError::SetMismatch { .. } => "SetMismatch",
            WittError::NotInvertible(..) => "NotInvertible",
            WittError::BudgetExceeded(..) => "BudgetExceeded",
            WittError::NotDivisorClosed(_) => "NotDivisorClosed",
            WittError::Parse(_) => "Parse",
            WittError::InvalidInput(_) => "InvalidInput",
            WittError::Io(_) => "Io",
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        WittError::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, WittError>;
