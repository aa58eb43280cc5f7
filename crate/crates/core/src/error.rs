use thiserror::Error;

/// Reasons a symbol sequence is not a valid multiset permutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unparseable character {ch:?} at position {position}")]
    BadCharacter { position: usize, ch: char },
    #[error("symbol {symbol} at position {position} is outside the alphabet [0, {k})")]
    SymbolOutOfRange {
        position: usize,
        symbol: usize,
        k: usize,
    },
    #[error("symbol {symbol} occurs {found} times, expected {expected}")]
    WrongMultiplicity {
        symbol: usize,
        found: usize,
        expected: usize,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter {name} = {value} is out of range ({reason})")]
    ParamOutOfRange {
        name: &'static str,
        value: usize,
        reason: &'static str,
    },
    #[error("vertex count of ST^{ell}_{k} overflows a 64-bit integer")]
    Overflow { k: usize, ell: usize },
    #[error("invalid word: {0}")]
    InvalidWord(#[from] WordError),
    #[error("index {index} out of range for {count} vertices")]
    IndexOutOfRange { index: u64, count: u64 },
    #[error("ST^{ell}_{k} needs {required} vertices, budget is {budget}")]
    BudgetExceeded {
        k: usize,
        ell: usize,
        required: u64,
        budget: u64,
    },
    #[error("operation requires ell = {expected}, got {found}")]
    UnsupportedEll { expected: usize, found: usize },
    #[error("coloring leaves vertex {vertex} uncolored")]
    PartialColoring { vertex: usize },
    #[error("instance with {n} vertices exceeds the search limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("isomorphism witness failed re-verification: {0}")]
    WitnessInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
