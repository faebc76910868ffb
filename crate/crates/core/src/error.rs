use thiserror::Error;

/// Errors raised by constructions and checks over finite structures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a category: {0}")]
    NotACategory(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a ring: {0}")]
    NotARing(String),
    #[error("not a ring homomorphism: {0}")]
    NotAHom(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("enumeration budget of {cap} elementary steps exceeded")]
    EnumerationBudgetExceeded { cap: u64 },
    #[error("factorizer contract violated on morphism {morphism}: {reason}")]
    FactorizerContractViolation { morphism: String, reason: String },
    #[error("invalid covering family: {0}")]
    InvalidFamily(String),
    #[error("not a prime ideal: {0}")]
    NotAPrime(String),
    #[error("simplicial identity violated: {0}")]
    IdentityViolation(String),
    #[error("truncation too low: {0}")]
    TruncationTooLow(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("lattice law violated: {0}")]
    LatticeViolation(String),
    #[error("not a G-set: {0}")]
    NotAGSet(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("map is not linear: {0}")]
    NotLinear(String),
}

pub type Result<T> = std::result::Result<T, Error>;
