use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial or a zero field element")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("factor recombination exceeded {0} subsets")]
    RecombinationCap(u64),
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("subfield is not contained in the extension")]
    NotContained,
    #[error("point {point} out of range for a group on {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("the given set is not a block of the group")]
    NotABlock,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group of order {0} is too large for explicit enumeration")]
    GroupTooLarge(String),
    #[error("unsupported d = {0}: composition-factor table covers 1 <= d <= 7")]
    UnsupportedD(usize),
    #[error("degree budget {budget} exceeded (reached degree {reached})")]
    BudgetExceeded { budget: u64, reached: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
