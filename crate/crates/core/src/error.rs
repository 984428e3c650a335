use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grade {numerator}/{denominator} is not a value in [0,1]")]
    GradeOutOfRange { numerator: u64, denominator: u64 },

    #[error("grade denominator must be positive")]
    ZeroDenominator,

    #[error("cannot parse grade {0:?}")]
    GradeSyntax(String),

    #[error("{what} must not be empty")]
    EmptyCarrier { what: &'static str },

    #[error("duplicate {what} label {label:?}")]
    DuplicateLabel { what: &'static str, label: String },

    #[error("invalid label {0:?}: labels must be non-empty and must not contain '|', ',', '{{' or '}}'")]
    InvalidLabel(String),

    #[error("unknown {what} label {label:?}")]
    UnknownLabel { what: &'static str, label: String },

    #[error("{what} index {index} out of range (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("operands live on different carriers")]
    CarrierMismatch,

    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("cell ({a}, {gamma}, {b}) is the zero fuzzy subset")]
    ZeroCell { a: usize, gamma: usize, b: usize },

    #[error("cell ({a}, {gamma}, {b}) of the crisp table is empty")]
    EmptyCell { a: usize, gamma: usize, b: usize },

    #[error("the zero fuzzy subset is not allowed here")]
    ZeroSubset,

    #[error("the Γ-operation is not associative at ({a}, {alpha}, {b}, {beta}, {c})")]
    NotAssociative {
        a: usize,
        alpha: usize,
        b: usize,
        beta: usize,
        c: usize,
    },

    #[error("the fuzzy subset is not a fuzzy Γ-subsemigroup at ({a}, {gamma}, {b})")]
    NotSubsemigroup { a: usize, gamma: usize, b: usize },

    #[error("a product sequence needs n ≥ 2 fuzzy factors separated by n-1 sorts")]
    MalformedProduct,

    #[error("sort sets differ between source and target")]
    SortMismatch,

    #[error(
        "relation is not regular: representatives ({a}, {b}) and ({a2}, {b2}) of the same classes give different product classes under sort {gamma}"
    )]
    NotRegular {
        a: usize,
        b: usize,
        a2: usize,
        b2: usize,
        gamma: usize,
    },

    #[error("grade {grade} is not on the grid with denominator {denominator}")]
    OffGrid { grade: String, denominator: u64 },

    #[error("budget exceeded: {needed} candidates requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
