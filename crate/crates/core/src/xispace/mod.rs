//! Weight-side distribution algebra.
//!
//! Each q-coefficient of a vertex series is inverse-Fourier-transformed into a
//! [`SplineDistribution`]. Walls are the integers (rank one), lattice values
//! are read off with one-sided limits, and polynomial test functions are
//! paired exactly for the Euler-MacLaurin identity.

mod distribution;
mod table;

pub use distribution::{inverse_fourier_term, Delta, SplineDistribution};
pub use table::MultiplicityTable;

use thiserror::Error;

use crate::exact::{to_decimal, Cyclotomic, Polynomial, Rational};
use crate::qtheta::{QSeries, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XiSpaceError {
    #[error("degree bound violated at q^{k}: spline degree {degree} exceeds {bound}")]
    DegreeBound { k: usize, degree: usize, bound: i64 },
    #[error("spline part of m_{k} must vanish (k > d_max = {d_max})")]
    NonvanishingSpline { k: usize, d_max: usize },
    #[error("multiplicity at {lambda} is not real rational: {value}")]
    NonRational { lambda: i64, value: String },
    #[error("truncation order {have} too small, need at least {need}")]
    TruncationTooSmall { need: usize, have: usize },
    #[error("m_{0} is not compactly supported")]
    NotCompact(usize),
    #[error("member m_{0} still pairs with the test function past the grading bound")]
    NotStabilized(usize),
    #[error("sample step must be positive")]
    BadStep,
}

/// `m([q]) = sum_k q^k m_k` with the degree budget `d_max = dim M - dim G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplineFamily {
    pub truncation_order: usize,
    pub d_max: usize,
    pub members: Vec<SplineDistribution>,
}

impl SplineFamily {
    pub fn member(&self, k: usize) -> &SplineDistribution {
        &self.members[k]
    }

    /// Termwise sum of two families with the same budget.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.truncation_order.min(other.truncation_order);
        SplineFamily {
            truncation_order: order,
            d_max: self.d_max.max(other.d_max),
            members: (0..=order).map(|k| self.members[k].add(&other.members[k])).collect(),
        }
    }

    /// Enforces: spline degree of `m_k` ≤ `d_max - k`, and zero spline part
    /// for `k > d_max`.
    pub fn check_degree_bound(&self) -> Result<(), XiSpaceError> {
        for (k, m) in self.members.iter().enumerate() {
            let Some(degree) = m.max_degree() else { continue };
            if k > self.d_max {
                return Err(XiSpaceError::NonvanishingSpline { k, d_max: self.d_max });
            }
            let bound = self.d_max as i64 - k as i64;
            if degree as i64 > bound {
                return Err(XiSpaceError::DegreeBound { k, degree, bound });
            }
        }
        Ok(())
    }
}

/// Term-wise inverse Fourier transform of a vertex series.
pub fn transform_family(series: &QSeries, d_max: usize) -> Result<SplineFamily, XiSpaceError> {
    let members = series
        .coeffs()
        .iter()
        .map(|c| c.terms().map(|t| inverse_fourier_term(&t)).fold(SplineDistribution::zero(), |a, b| a.add(&b)))
        .collect();
    let family = SplineFamily { truncation_order: series.truncation_order(), d_max, members };
    family.check_degree_bound()?;
    Ok(family)
}

/// `lim_{t→0+} d(v + t·ε)` with `ε` of the given sign; deltas never contribute.
pub fn lim_eps(d: &SplineDistribution, v: &Rational, eps: Sign) -> Cyclotomic {
    d.one_sided_limit(v, eps)
}

/// `sum_k lim_ε m_k(λ)` over the spline-carrying range `k ≤ d_max`.
pub fn family_limit(family: &SplineFamily, lambda: i64, eps: Sign) -> Cyclotomic {
    let v = Rational::from_integer(lambda.into());
    family.members.iter().take(family.d_max + 1).map(|m| lim_eps(m, &v, eps)).sum()
}

/// `mult(λ) = sum_g g^λ · sum_k lim_ε m_k^{(g)}(λ)` on `[lo, hi]`.
///
/// Each family is the one attached to the multiplier `g`. The result must be
/// real rational; integrality is recorded, not enforced.
pub fn multiplicity(
    data: &[(Cyclotomic, SplineFamily)],
    lo: i64,
    hi: i64,
    eps: Sign,
) -> Result<MultiplicityTable, XiSpaceError> {
    for (_, fam) in data {
        if fam.truncation_order < fam.d_max {
            return Err(XiSpaceError::TruncationTooSmall { need: fam.d_max, have: fam.truncation_order });
        }
        fam.check_degree_bound()?;
    }
    let mut values = Vec::new();
    for lambda in lo..=hi {
        let mut total = Cyclotomic::zero();
        for (g, fam) in data {
            let lim = family_limit(fam, lambda, eps);
            if lim.is_zero() {
                continue;
            }
            let twist = g.pow(lambda).map_err(|_| XiSpaceError::NonRational {
                lambda,
                value: format!("vertex {g} is not invertible"),
            })?;
            total = &total + &(&twist * &lim);
        }
        let value = total
            .to_rational()
            .ok_or_else(|| XiSpaceError::NonRational { lambda, value: total.to_string() })?;
        values.push((lambda, value));
    }
    Ok(MultiplicityTable::from_values(lo, hi, values))
}

/// Both sides of the Euler-MacLaurin pairing of a family with a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmPairing {
    /// `∫ m_k f` over the spline part, per k.
    pub spline_terms: Vec<Cyclotomic>,
    /// Delta contributions `sum coeff (-1)^s f^{(s)}(p)`, per k.
    pub delta_terms: Vec<Cyclotomic>,
    pub total: Rational,
    /// Largest k whose member can pair nontrivially with polynomials of
    /// degree ≤ deg f; every later member pairs to zero.
    pub stabilization_order: usize,
}

impl EmPairing {
    pub fn contribution(&self, k: usize) -> Cyclotomic {
        &self.spline_terms[k] + &self.delta_terms[k]
    }
}

/// `sum_k ∫ m_k(ξ) f(ξ) dξ` for a compactly supported family.
///
/// The `q^k` member of a family with `d_max + 1` unipotent-pole budget has
/// deltas of order at least `k - d_max - 1`, so degree-`d` test functions
/// need `Q ≥ d + d_max + 1`.
pub fn em_pairing(family: &SplineFamily, f: &[Rational]) -> Result<EmPairing, XiSpaceError> {
    let f = Polynomial::from_rationals(f);
    let deg = f.degree().unwrap_or(0);
    let need = deg + family.d_max + 1;
    if family.truncation_order < need {
        return Err(XiSpaceError::TruncationTooSmall { need, have: family.truncation_order });
    }
    let mut spline_terms = Vec::with_capacity(family.members.len());
    let mut delta_terms = Vec::with_capacity(family.members.len());
    let mut stabilization_order = 0;
    for (k, m) in family.members.iter().enumerate() {
        let spline = m.spline_integral(&f).ok_or(XiSpaceError::NotCompact(k))?;
        spline_terms.push(spline);
        delta_terms.push(m.delta_pairing(&f));
        let live = !m.spline_is_zero() || m.deltas().iter().any(|d| d.order as usize <= deg);
        if live {
            if k > need {
                return Err(XiSpaceError::NotStabilized(k));
            }
            stabilization_order = k;
        }
    }
    let total: Cyclotomic = spline_terms.iter().chain(&delta_terms).cloned().sum();
    let total = total
        .to_rational()
        .ok_or_else(|| XiSpaceError::NonRational { lambda: 0, value: total.to_string() })?;
    Ok(EmPairing { spline_terms, delta_terms, total, stabilization_order })
}

/// True iff every member vanishes outside `[lo, hi]`.
pub fn compact_support_check(family: &SplineFamily, lo: &Rational, hi: &Rational) -> bool {
    family.members.iter().all(|m| m.supported_in(lo, hi))
}

/// Samples the spline part at `lo, lo + step, …, ≤ hi`, skipping breakpoints.
pub fn sample_spline(
    d: &SplineDistribution,
    lo: &Rational,
    hi: &Rational,
    step: &Rational,
) -> Result<Vec<(Rational, Cyclotomic)>, XiSpaceError> {
    if step <= &Rational::from_integer(0.into()) {
        return Err(XiSpaceError::BadStep);
    }
    let mut rows = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        if let Some(v) = d.value_at(&x) {
            rows.push((x.clone(), v));
        }
        x += step;
    }
    Ok(rows)
}

/// Renders samples as CSV with header `xi,value,value_exact`. The `value`
/// column is a decimal rendering (real part for non-real values) and is for
/// presentation only; `value_exact` is lossless.
pub fn samples_to_csv(rows: &[(Rational, Cyclotomic)]) -> String {
    let mut out = String::from("xi,value,value_exact\n");
    for (x, v) in rows {
        let (value, exact) = match v.to_rational() {
            Some(r) => (to_decimal(&r, 12), r.to_string()),
            None => (format!("{}", v.to_complex().0), v.to_string()),
        };
        out.push_str(&format!("{},{},{}\n", to_decimal(x, 12), value, exact));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ramp() -> SplineDistribution {
        SplineDistribution::truncated_power(int(0), 1, &Cyclotomic::one(), Sign::Plus)
    }

    #[test]
    fn degree_bound_is_enforced() {
        let fam = SplineFamily { truncation_order: 2, d_max: 1, members: vec![ramp(), ramp(), SplineDistribution::zero()] };
        assert!(matches!(fam.check_degree_bound(), Err(XiSpaceError::DegreeBound { k: 1, degree: 1, bound: 0 })));
        let fam = SplineFamily {
            truncation_order: 2,
            d_max: 1,
            members: vec![ramp(), SplineDistribution::zero(), SplineDistribution::delta(int(0), 0, Cyclotomic::one()).add(&SplineDistribution::truncated_power(int(1), 0, &Cyclotomic::one(), Sign::Plus))],
        };
        assert!(matches!(fam.check_degree_bound(), Err(XiSpaceError::NonvanishingSpline { k: 2, d_max: 1 })));
    }

    #[test]
    fn csv_rendering() {
        let rows = sample_spline(&ramp(), &int(-1), &int(2), &rat(1, 2)).unwrap();
        let csv = samples_to_csv(&rows);
        assert_eq!(
            csv,
            "xi,value,value_exact\n-1,0,0\n-0.5,0,0\n0.5,0.5,1/2\n1,1,1\n1.5,1.5,3/2\n2,2,2\n"
        );
        assert!(matches!(sample_spline(&ramp(), &int(0), &int(1), &int(0)), Err(XiSpaceError::BadStep)));
        let zero = sample_spline(&SplineDistribution::zero(), &int(0), &int(2), &int(1)).unwrap();
        assert!(zero.iter().all(|(_, v)| v.is_zero()));
    }
}
