use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("binom({a},{b}) is 0 mod {p}, so it does not induce a permutation")]
    NonInvertibleMultiplier { a: u32, b: u32, p: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("automata error: {0}")]
    Automaton(String),

    #[error("linear representation produced a non-integral value {0}")]
    NonIntegral(String),

    #[error("cube with {cells} cells exceeds the limit of {limit}")]
    CubeTooLarge { cells: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
