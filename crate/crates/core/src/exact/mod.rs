//! Exact rational and cyclotomic arithmetic, Bernoulli numbers and the
//! B-series that carries the per-weight inverse J-class factor.
//!
//! Nothing in this module touches floating point except
//! [`Cyclotomic::to_complex`], which exists for numeric smoke tests.

mod bernoulli;
mod cyclotomic;
mod polynomial;
mod rational;

pub use bernoulli::{b_series_coefficients, bernoulli, bernoulli_numbers};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use polynomial::Polynomial;
pub use rational::{binomial, factorial, int, is_integer, parse_rational, rat, to_decimal, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero (a singular denominator; a ζ = 1 factor routed to the twisted expansion?)")]
    DivisionByZero,
    #[error("B-series order must be even, got {0}")]
    OddOrder(u32),
    #[error("{0}")]
    Parse(String),
}

/// ζ_N^k, a vertex of a rank-one torus.
pub fn cyc_root(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root(n, k)
}

pub fn cyc_inverse(z: &Cyclotomic) -> Result<Cyclotomic, ExactError> {
    z.inverse()
}
