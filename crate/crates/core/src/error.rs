use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors raised by the counting and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} must be at least 1")]
    ZeroArgument(&'static str),

    #[error("symbol {symbol} is outside the alphabet 0..{alphabet}")]
    SymbolOutOfRange { symbol: u32, alphabet: u32 },

    #[error("a word must contain at least one symbol")]
    EmptyWord,

    #[error("enumerating {requested} strings exceeds the budget of {limit}")]
    BudgetExceeded { requested: BigUint, limit: u64 },

    #[error("{what} evaluated to the negative value {value}")]
    NegativeCount { what: &'static str, value: BigInt },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(value: u64, name: &'static str) -> Result<()> {
    if value == 0 {
        Err(Error::ZeroArgument(name))
    } else {
        Ok(())
    }
}
