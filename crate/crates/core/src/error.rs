use thiserror::Error;

/// Which of the two weight-function conditions failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum WeightCondition {
    /// Column/block weight multisets disagree.
    ColumnBlockMultiset,
    /// Block weights are not strictly increasing.
    BlockIncreasing,
}

impl std::fmt::Display for WeightCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightCondition::ColumnBlockMultiset => write!(f, "(i)"),
            WeightCondition::BlockIncreasing => write!(f, "(ii)"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("stack count must be at least 2, got {k}")]
    StackCountTooSmall { k: usize },

    #[error("deck size must be positive")]
    EmptyDeck,

    #[error("stack count {k} does not divide deck size {n_cards}")]
    StackCountDoesNotDivide { n_cards: usize, k: usize },

    #[error("deck has {actual} cards, expected {expected}")]
    DeckLengthMismatch { expected: usize, actual: usize },

    #[error("weight table has {actual} entries, expected {expected}")]
    WeightLengthMismatch { expected: usize, actual: usize },

    #[error("weight condition {condition} violated at column {column}")]
    InvalidWeight {
        condition: WeightCondition,
        column: usize,
    },

    #[error("requires gcd(q, k) = 1, but gcd({q}, {k}) = {gcd}")]
    QkNotCoprime { q: usize, k: usize, gcd: usize },

    #[error("requires gcd(q/g, g) = 1 for g = gcd(q, k); fails for q = {q}, k = {k}")]
    GeneralizedPrecondition { q: usize, k: usize },

    #[error("multiplicative order undefined: gcd({k}, {s}) != 1")]
    OrderUndefined { k: u64, s: u64 },

    #[error("state space of {states} decks exceeds the enumeration budget of {budget}")]
    BudgetExceeded { states: u128, budget: u64 },

    #[error("poset level DP needs {bits} state bits, above the limit of {limit}")]
    PosetTooWide { bits: u32, limit: u32 },

    #[error("count exceeds the integer range of the level DP accumulator")]
    CountOverflow,

    #[error("period {d} does not divide the cycle-length lcm {lcm}")]
    PeriodNotRealizable { d: u64, lcm: u64 },

    #[error("no cycle length is a multiple of {d}; cannot seed a period-{d} pattern")]
    NoCycleForPeriod { d: u64 },

    #[error("constructed deck failed verification for period {d}: {detail}")]
    ConstructionFailed { d: u64, detail: String },

    #[error("cannot parse deck string {input:?}: {reason}")]
    DeckParse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
