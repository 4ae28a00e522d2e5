use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("factorization budget exceeded on cofactor {0}")]
    FactorizationBudgetExceeded(String),
    #[error("prime factor {0} does not fit a machine word")]
    PrimeTooLarge(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("quaternion algebra is ramified at the real place")]
    RealRamified,
    #[error("degenerate quaternion algebra: (1+4a)b = 0")]
    DegenerateAlgebra,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate denominator: 1 - x - a^2 x^2 = 0")]
    DegenerateDenominator,
    #[error("odd number of places ({0}) requested for a ramification set")]
    OddCardinality(usize),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("counterexample found: {0}")]
    CounterexampleFound(String),
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("negation present in a formula that must be negation-free")]
    NegationPresent,
    #[error("formula is not quantifier-free")]
    NotQuantifierFree,
    #[error("field-signature term where a ring-signature term is required")]
    InversePresent,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("certificate error: {0}")]
    Certificate(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
