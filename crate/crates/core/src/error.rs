use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not coprime to modulus {m}")]
    NotCoprime { a: u64, m: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what}: {value} exceeds limit {limit}")]
    LimitExceeded { what: &'static str, value: u64, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero element has no multiplicative order")]
    ZeroElement,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not primitive")]
    NotPrimitive,
    #[error("group is not in the variety {0}")]
    NotInVariety(String),
    #[error("primes must be distinct, got {0} twice")]
    SamePrime(u64),
    #[error("prime {0} equals the field characteristic")]
    CharacteristicConflict(u64),
    #[error("generator is singular")]
    SingularGenerator,
    #[error("action does not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no Sylow system found")]
    NoSystemFound,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_limit(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::LimitExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
