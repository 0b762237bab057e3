//! Brute-force multiplicity functions, computed without the series/transform
//! engine.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{int, Rational};
use crate::xispace::MultiplicityTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid oracle parameters: {0}")]
    InvalidParameters(String),
    #[error("support reaches the window boundary at λ = {0}; widen the window")]
    SupportAtBoundary(i64),
    #[error("denominator factors must have positive exponents")]
    BadDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum OracleSpec {
    P1Character { a: i64 },
    PartitionDp { weights: Vec<i64> },
    /// `Σ c x^e / Π (1 - x^{a_j})`, numerator as `(e, c)` pairs.
    RationalSeries { numerator: Vec<(i64, i64)>, denominator: Vec<i64> },
}

impl OracleSpec {
    pub fn validate(&self) -> Result<(), OracleError> {
        match self {
            OracleSpec::P1Character { a } if *a < 0 => Err(OracleError::InvalidParameters(format!("A = {a} < 0"))),
            OracleSpec::PartitionDp { weights } if weights.is_empty() || weights.iter().any(|&w| w < 1) => {
                Err(OracleError::InvalidParameters(format!("weights {weights:?} must be positive")))
            }
            OracleSpec::RationalSeries { numerator, denominator } => {
                if denominator.iter().any(|&a| a < 1) {
                    return Err(OracleError::BadDenominator);
                }
                if numerator.iter().any(|&(e, _)| e < 0) {
                    return Err(OracleError::InvalidParameters("numerator exponents must be ≥ 0".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, lo: i64, hi: i64) -> Result<MultiplicityTable, OracleError> {
        self.validate()?;
        Ok(match self {
            OracleSpec::P1Character { a } => p1_multiplicities(*a, lo, hi),
            OracleSpec::PartitionDp { weights } => {
                let p = partition_dp(weights, hi.max(0) as usize);
                MultiplicityTable::from_fn(lo, hi, |l| if l < 0 { int(0) } else { p.get(l).unwrap() })
            }
            OracleSpec::RationalSeries { numerator, denominator } => {
                let s = rational_series(numerator, denominator, hi.max(0) as usize)?;
                MultiplicityTable::from_fn(lo, hi, |l| if l < 0 { int(0) } else { Rational::from_integer(s[l as usize].into()) })
            }
        })
    }
}

/// Indicator of `[0, A]`.
pub fn p1_multiplicities(a: i64, lo: i64, hi: i64) -> MultiplicityTable {
    MultiplicityTable::from_fn(lo, hi, |l| int((0..=a).contains(&l) as i64))
}

/// Number of ways to write λ as a nonnegative combination of the weights.
pub fn partition_dp(weights: &[i64], lambda_max: usize) -> MultiplicityTable {
    let mut p = vec![0i128; lambda_max + 1];
    p[0] = 1;
    for &a in weights {
        let a = a as usize;
        for l in a..=lambda_max {
            p[l] += p[l - a];
        }
    }
    MultiplicityTable::from_values(0, lambda_max as i64, p.iter().enumerate().map(|(l, &v)| (l as i64, Rational::from_integer(v.into()))))
}

/// Exponential-time enumeration, independent of [`partition_dp`].
pub fn partition_naive(weights: &[i64], lambda: i64) -> u64 {
    match weights.split_first() {
        None => (lambda == 0) as u64,
        Some((&a, rest)) => (0..=lambda / a).map(|n| partition_naive(rest, lambda - n * a)).sum(),
    }
}

/// Checks `P_{(1,2)}(λ) = λ/2 + 3/4 + (-1)^λ/4` on `[0, lambda_max]`.
pub fn quasipolynomial_check(lambda_max: usize) -> bool {
    let p = partition_dp(&[1, 2], lambda_max);
    let ok = p.iter().all(|(l, v)| {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        v == Rational::new(l.into(), 2.into()) + Rational::new(3.into(), 4.into()) + Rational::new(sign.into(), 4.into())
    });
    ok
}

/// `Σ_λ m(λ) f(λ)` with `f` given by ascending coefficients.
pub fn em_direct_sum(m: &MultiplicityTable, f: &[Rational]) -> Result<Rational, OracleError> {
    let (lo, hi) = m.window();
    let mut total = Rational::zero();
    for (l, v) in m.iter() {
        if v.is_zero() {
            continue;
        }
        if l == lo || l == hi {
            return Err(OracleError::SupportAtBoundary(l));
        }
        let x = int(l);
        let mut fx = Rational::zero();
        let mut pow = Rational::one();
        for c in f {
            fx += c * &pow;
            pow *= &x;
        }
        total += v * fx;
    }
    Ok(total)
}

/// Coefficients up to `x^n` of `Σ c x^e / Π_j (1 - x^{a_j})`.
pub fn rational_series(numerator: &[(i64, i64)], denominator: &[i64], n: usize) -> Result<Vec<i128>, OracleError> {
    if denominator.iter().any(|&a| a < 1) {
        return Err(OracleError::BadDenominator);
    }
    let mut s = vec![0i128; n + 1];
    for &(e, c) in numerator {
        if e >= 0 && (e as usize) <= n {
            s[e as usize] += c as i128;
        }
    }
    for &a in denominator {
        let a = a as usize;
        for l in a..=n {
            s[l] += s[l - a];
        }
    }
    Ok(s)
}
