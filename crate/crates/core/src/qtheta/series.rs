use std::fmt;

use super::theta::{ThetaSum, ThetaTerm};
use super::QThetaError;
use crate::exact::Cyclotomic;

/// Formal series `sum_{k=0}^{Q} q^k α_k(θ)` truncated at order `Q`.
/// Negative powers of `q` are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<ThetaSum>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![ThetaSum::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: ThetaSum) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from `(q-power, term)` pairs; powers above the
    /// truncation order are dropped, negative powers are a grading error.
    pub fn from_q_terms(
        order: usize,
        terms: impl IntoIterator<Item = (i64, ThetaTerm)>,
    ) -> Result<Self, QThetaError> {
        let mut s = Self::zero(order);
        for (k, t) in terms {
            if k < 0 {
                return Err(QThetaError::GradingViolation(k));
            }
            if let Some(slot) = s.coeffs.get_mut(k as usize) {
                slot.push(t);
            }
        }
        Ok(s)
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &ThetaSum {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[ThetaSum] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.truncation_order().min(other.truncation_order());
        QSeries { coeffs: (0..=order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QThetaError> {
        let order = self.truncation_order().min(other.truncation_order());
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j])?);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a q-independent factor.
    pub fn mul_theta(&self, factor: &ThetaSum) -> Result<Self, QThetaError> {
        Ok(QSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect::<Result<_, _>>()?,
        })
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// `sum_k α_k(θ)` at q = 1, numerically.
    pub fn eval_complex_at_q1(&self, theta: f64) -> (f64, f64) {
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), c| {
            let (r, i) = c.eval_complex(theta);
            (re + r, im + i)
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "q^{k}: {c}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
