use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} is outside the supported range 2..=65536")]
    FieldOrderOutOfRange(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine elements of GF({left}) and GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("value {value} is not an element of GF({order})")]
    ValueOutOfRange { value: u64, order: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("minimum distance needs at least two words, code has {0}")]
    TooFewWords(usize),
    #[error("strength {t} exceeds word length {n}")]
    InvalidStrength { t: usize, n: usize },
    #[error("coordinate {index} out of range for word length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("symbol {symbol} is not in the alphabet 0..{alphabet}")]
    InvalidSymbol { symbol: u64, alphabet: u32 },
    #[error("duplicate word {0:?}")]
    DuplicateWord(Vec<u32>),
    #[error("no word carries the requested symbol at the shortened coordinate")]
    EmptyResult,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("evaluation point {0} appears more than once")]
    DuplicateEvaluationPoint(u32),
    #[error("column multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("dimension {k} out of range for length {n}")]
    DimensionOutOfRange { k: usize, n: usize },

    #[error("code does not meet the minimal-support AME requirements: {0}")]
    NotAmeRelevantMds(String),
    #[error("state amplitudes do not share a common magnitude")]
    NonUniformSupport,
    #[error("support has {found} kets, minimal support needs {expected}")]
    WrongSupportSize { expected: u64, found: u64 },
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("bad site subset: {0}")]
    BadSubset(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
