use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("field order {0} exceeds the configured limit")]
    LimitExceeded(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("potent exponent must be at least 2, got {0}")]
    InvalidExponent(u64),
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("{0} is not a prime power")]
    InvalidOrder(u64),
    #[error("character is not defined on this field")]
    CharacterUndefined,
    #[error("nu is undefined at zero")]
    UndefinedAtZero,
    #[error("the identity does not apply to this field")]
    CaseInapplicable,
    #[error("polynomial is a constant multiple of a d-th power")]
    BoundInapplicable,
    #[error("character must be nontrivial")]
    InvalidCharacter,
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    InvalidModulus,
}

pub type Result<T> = std::result::Result<T, Error>;
