use thiserror::Error;

/// Errors surfaced by the library.
///
/// Numerical-pathology variants (`Eigensolve`, `Quadrature`) signal an
/// implementation or conditioning problem, not a caller mistake; callers
/// should treat them as bugs worth reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("eigenvalue bisection for degree {degree} exceeded its budget of {budget} steps")]
    Eigensolve { degree: u32, budget: u64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("size cap exceeded for {what}: n = {n} > {cap}")]
    CapExceeded {
        what: &'static str,
        n: u32,
        cap: u32,
    },

    #[error("argument outside the rate-function domain: {0}")]
    Domain(String),

    #[error("evaluation outside the convergence strip: {0}")]
    StripViolation(String),

    #[error("zone-of-control parameters fail the admissibility arithmetic: {0}")]
    ZoneArithmetic(String),

    #[error("numerical pathology: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
