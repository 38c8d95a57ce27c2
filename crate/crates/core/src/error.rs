use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infinite root set")]
    InfiniteRootSet,
    #[error("argument must be nonzero")]
    Zero,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("factor budget exceeded")]
    FactorBudgetExceeded,
    #[error("singular model (discriminant {0})")]
    SingularModel(String),
    #[error("cusp parameter")]
    CuspParameter,
    #[error("singular parameter")]
    SingularParameter,
    #[error("invalid level {0}")]
    InvalidLevel(u32),
    #[error("invalid family index (n={n}, i={i})")]
    InvalidIndex { n: u32, i: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("phi data unavailable (level {0})")]
    PhiUnavailable(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("degenerate parameters")]
    DegenerateParameters,
    #[error("classification inconsistency: {0}")]
    Inconsistency(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("not a kernel: {0}")]
    NotAKernel(String),
    #[error("derivation failure: {0}")]
    Derivation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
