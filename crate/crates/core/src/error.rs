use alloc::string::String;

use crate::Natural;

/// Everything that can go wrong in `qf-core`.
///
/// `TheoryViolation` and `TableMismatch` mean a computed fact contradicted the
/// mathematics (or the reference table); every other variant is an input
/// that falls outside an operation's domain.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(Natural),
    #[error("undefined input: {0}")]
    UndefinedInput(&'static str),
    #[error("{value} has no inverse modulo {modulus}")]
    NoInverse { value: Natural, modulus: Natural },
    #[error("moduli {0} and {1} are not coprime")]
    CoprimalityViolation(Natural, Natural),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("factoring effort exceeded; unfactored cofactor {0}")]
    EffortExceeded(Natural),
    #[error("degenerate input: z and y must differ")]
    DegenerateInput,
    #[error("invalid exponent {0}: must be an odd prime")]
    InvalidExponent(u32),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("characterization fails: {n} does not divide {p} - 1")]
    CharacterizationFails { p: Natural, n: u32 },
    #[error("z = {0} is not a witness for these parameters")]
    NotAWitness(Natural),
    #[error("{q} does not divide the quotient {value}")]
    NotADivisor { q: Natural, value: Natural },
    #[error("theory violation: {0}")]
    TheoryViolation(String),
    #[error("table mismatch at y = {y}, z = {z}: {detail}")]
    TableMismatch { y: u32, z: u32, detail: String },
}

impl Error {
    /// True for errors that mean a verification failed rather than that the
    /// caller passed bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::TheoryViolation(_) | Error::TableMismatch { .. }
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
