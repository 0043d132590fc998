use alloc::string::String;

/// Errors raised by the core library.
///
/// Most of these signal a violated precondition. `NotIntegral`,
/// `NotDivisible` and `OmegaParity` can only fire on an arithmetic bug.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("weight {0} is not supported (must be even and at least 4)")]
    InvalidWeight(u64),
    #[error("argument {name} = {value} is below the minimum {min}")]
    OutOfDomain {
        name: &'static str,
        value: i64,
        min: i64,
    },
    #[error("{0}: exact sum is not an integer")]
    NotIntegral(&'static str),
    #[error("{0}: quotient is not exact")]
    NotDivisible(&'static str),
    #[error("{0} is not congruent to 1 modulo 8, no 2-adic square root")]
    NotSquareMod8(String),
    #[error("branch {branch} mod 8 is not a square root of {value} modulo 16")]
    NonViableBranch { value: String, branch: u8 },
    #[error("shift t = {0} is not a multiple of 8")]
    InvalidShift(i64),
    #[error("2-adic logarithm needs an argument congruent to 1 mod 2")]
    LogDomain,
    #[error("division by a 2-adic zero")]
    DivisionByZero,
    #[error("Ω_{t}: ratio of logarithms is not odd, Ω_t would not be 2-adically integral")]
    OmegaParity { t: i64 },
    #[error("insufficient 2-adic precision: {0}")]
    InsufficientPrecision(&'static str),
    #[error("fingerprint basis: {0}")]
    Basis(&'static str),
    #[error("polynomial: {0}")]
    Polynomial(&'static str),
    #[error("root finding did not converge")]
    RootFinding,
    #[error("threshold certification failed: {0}")]
    Certification(&'static str),
    #[error("{case}: certified crossing {crossing} exceeds the claimed bound {claimed}")]
    ThresholdExceeded {
        case: &'static str,
        crossing: u64,
        claimed: u64,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
