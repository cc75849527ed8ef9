use alloc::string::String;

use crate::exactnum::Symbol;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("symbol `{0}` has no value in the assignment")]
    MissingSymbol(Symbol),
    #[error("expected a constant, found symbolic expression `{0}`")]
    NotConstant(String),
    #[error("expected an integer, found `{0}`")]
    NotIntegral(String),
    #[error("weight ({a}, {b}; {c}) violates the parity condition a + b = c mod 2")]
    Parity { a: String, b: String, c: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no weight nu with nu + rho dominant has kappa in its orbit")]
    NoOrbit,
    #[error("weights are not compatible: {0}")]
    Incompatible(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("no ordering of the Hecke parameters satisfies x1*x4 = x2*x3 = {0}")]
    NoValidOrdering(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("matrix is not in GSp(4) for the form J")]
    NotSymplectic,
    #[error("matrix is singular")]
    Singular,
    #[error("the orbit leaves the big cell chart (ZB + D is singular)")]
    LeftBigCell,
    #[error("entry `{0}` is not p-integral")]
    NonIntegralEntry(String),
    #[error("parameters violate 0 <= n <= m < t (with m > n when n != 0): m={m}, n={n}, t={t}")]
    TubeParameters { m: i64, n: i64, t: i64 },
    #[error("exponent `{0}` is not an integer")]
    NonIntegralExponent(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("lambda = {lambda} outside the polynomial range [0, {max}]")]
    LambdaOutOfRange { lambda: i64, max: i64 },
    #[error("verification failed at coefficient {index}: {detail}")]
    VerificationFailed { index: usize, detail: String },
    #[error("modulus {modulus} is divisible by p = {p}")]
    ModulusDivisibleByP { modulus: u64, p: u64 },
    #[error("insufficient q-precision: need at least {needed}, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("negative power of theta requires a p-depleted form")]
    NotDepleted,
    #[error("parse error: {0}")]
    Parse(String),
}
