use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("{p} does not divide {m}")]
    NotDividing { p: u64, m: u64 },
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("non-integral discriminant exponent at p = {p}")]
    NonIntegralExponent { p: u64 },
    #[error("Galois group is not cyclic")]
    NotCyclic,
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("violation found: {0}")]
    ViolationFound(String),
    #[error("{0} is not a prime congruent to 1 mod 4")]
    BadP(u64),
    #[error("tower inconsistent: {0}")]
    TowerInconsistent(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisFail(String),
    #[error("degree mismatch: expected {expected}, field has degree {actual}")]
    DegreeMismatch { expected: u64, actual: u64 },
    #[error("field shape not recognized: {0}")]
    ShapeNotRecognized(String),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Errors that indicate a broken internal invariant rather than bad input.
    pub fn is_bug_trap(&self) -> bool {
        matches!(
            self,
            Error::InternalMismatch(_)
                | Error::NonIntegralExponent { .. }
                | Error::ViolationFound(_)
                | Error::NonIntegral(_)
        )
    }
}
