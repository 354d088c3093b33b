use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a sentence was rejected by the normal-form validator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormViolation {
    PrefixShape,
    MatrixNotDnf,
    MultipleSigmaLiterals,
    NoFirstOrderVariables,
}

impl std::fmt::Display for NormalFormViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormalFormViolation::PrefixShape => "prefix shape",
            NormalFormViolation::MatrixNotDnf => "matrix not DNF",
            NormalFormViolation::MultipleSigmaLiterals => "multiple σ-literals in one implicant",
            NormalFormViolation::NoFirstOrderVariables => "no first-order existential block",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{symbol}` has arity {expected}, got {found} arguments")]
    ArityMismatch { symbol: String, expected: usize, found: usize },

    #[error("element {value} out of range for universe of size {size} ({context})")]
    OutOfRange { value: usize, size: usize, context: String },

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("missing interpretation for symbol `{0}`")]
    MissingSymbol(String),

    #[error("`{0}` is a built-in numeric symbol and cannot be declared")]
    ReservedSymbol(String),

    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("second-order quantifier over `{0}` encountered by the first-order evaluator")]
    SecondOrderNode(String),

    #[error("second-order prefix is not of shape ∃*∀*: {0}")]
    PrefixShape(String),

    #[error("not in normal form ({reason}): {at}")]
    NotNormalForm { reason: NormalFormViolation, at: String },

    #[error("budget exceeded: {what} needs {required}, cap is {cap}")]
    BudgetExceeded { what: String, required: u128, cap: u128 },

    #[error("query defines an empty universe")]
    EmptyUniverse,

    #[error("constant `{constant}` has {count} witnesses, expected exactly one")]
    ConstantWitness { constant: String, count: usize },

    #[error("vocabulary mismatch: expected `{expected}`, found `{found}`")]
    VocabularyMismatch { expected: String, found: String },

    #[error("{what} requires size at least {required}, got {found}")]
    SizeTooSmall { what: String, required: usize, found: usize },

    #[error("inconsistent conditions: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn budget(what: impl Into<String>, required: u128, cap: u128) -> Self {
        Error::BudgetExceeded { what: what.into(), required, cap }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
