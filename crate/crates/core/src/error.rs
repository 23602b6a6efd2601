use thiserror::Error;

/// Errors raised by the arithmetic and symbol routines.
///
/// Every variant is a domain error: the inputs fall outside the set on which
/// the requested object is defined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed as a symbol argument")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{value} is not a {p}-adic unit")]
    NotUnit { value: String, p: u64 },
    #[error("the prime 2 is not allowed here")]
    EvenPrime,
    #[error("{0} is too large (limit is 2^63 in magnitude)")]
    TooLarge(String),
    #[error("{0} is not a square in Q_{1}")]
    NonResidue(String, u64),
    #[error("p-adic operands live over different primes ({0} and {1})")]
    MixedPrimes(u64, u64),
    #[error("cannot invert zero")]
    DivisionByZero,
    #[error("{0} divides the ramified prime")]
    Ramified(String),
    #[error("{0} is not coprime to the modulus {1}")]
    NotCoprime(String, String),
    #[error("{0} is not primary")]
    NotPrimary(String),
    #[error("{0}")]
    Domain(String),
    #[error("search for {0} exhausted its depth bound without a decision")]
    Undecided(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
