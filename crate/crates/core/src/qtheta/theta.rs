use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::QThetaError;
use crate::exact::Cyclotomic;

/// A boundary-value side: `(θ + i0)` for `Plus`, `(θ - i0)` for `Minus`.
/// The same two-valued type is used for lim_ε directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub enum Sign {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected '+' or '-', got {other:?}")),
        }
    }
}

/// `coeff · e^{i·expo·θ} · (θ ± i0)^tpow`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    pub coeff: Cyclotomic,
    pub expo: i64,
    pub tpow: i64,
    pub polarization: Sign,
}

impl ThetaTerm {
    pub fn new(coeff: Cyclotomic, expo: i64, tpow: i64, polarization: Sign) -> Self {
        let polarization = if tpow < 0 { polarization } else { Sign::Plus };
        ThetaTerm { coeff, expo, tpow, polarization }
    }

    fn key(&self) -> TermKey {
        TermKey { expo: self.expo, tpow: self.tpow, polarization: self.polarization }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TermKey {
    expo: i64,
    tpow: i64,
    polarization: Sign,
}

impl TermKey {
    fn combine(self, other: TermKey) -> Result<TermKey, QThetaError> {
        let polarization = match (self.tpow < 0, other.tpow < 0) {
            (true, true) if self.polarization != other.polarization => {
                return Err(QThetaError::MixedPolarization)
            }
            (true, _) => self.polarization,
            (false, true) => other.polarization,
            (false, false) => Sign::Plus,
        };
        let tpow = self.tpow + other.tpow;
        Ok(TermKey {
            expo: self.expo + other.expo,
            tpow,
            polarization: if tpow < 0 { polarization } else { Sign::Plus },
        })
    }
}

/// A finite sum of [`ThetaTerm`]s in canonical order (by exponent, then
/// θ-power, then polarization), with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThetaSum {
    terms: BTreeMap<TermKey, Cyclotomic>,
}

impl ThetaSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_terms([ThetaTerm::new(c, 0, 0, Sign::Plus)])
    }

    pub fn monomial(coeff: Cyclotomic, expo: i64, tpow: i64, polarization: Sign) -> Self {
        Self::from_terms([ThetaTerm::new(coeff, expo, tpow, polarization)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ThetaTerm>) -> Self {
        let mut s = Self::zero();
        for t in terms {
            s.push(t);
        }
        s
    }

    pub fn push(&mut self, term: ThetaTerm) {
        let term = ThetaTerm::new(term.coeff, term.expo, term.tpow, term.polarization);
        self.accumulate(term.key(), term.coeff);
    }

    fn accumulate(&mut self, key: TermKey, coeff: Cyclotomic) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ThetaTerm> + '_ {
        self.terms.iter().map(|(k, c)| ThetaTerm {
            coeff: c.clone(),
            expo: k.expo,
            tpow: k.tpow,
            polarization: k.polarization,
        })
    }

    pub fn min_tpow(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.tpow).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.accumulate(*k, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QThetaError> {
        let mut out = Self::zero();
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                out.accumulate(ka.combine(*kb)?, a * b);
            }
        }
        Ok(out)
    }

    /// Numeric value at a real θ ≠ 0 under the embedding ζ_N ↦ e^{2πi/N}.
    pub fn eval_complex(&self, theta: f64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let (cr, ci) = c.to_complex();
            let mag = theta.powi(k.tpow as i32);
            let (s, co) = (k.expo as f64 * theta).sin_cos();
            let (tr, ti) = (mag * co, mag * s);
            (re + cr * tr - ci * ti, im + cr * ti + ci * tr)
        })
    }
}

impl fmt::Display for ThetaSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, t) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            if t.expo != 0 {
                write!(f, "*e^(i*{}*th)", t.expo)?;
            }
            match t.tpow {
                0 => {}
                p if p < 0 => write!(f, "*(th{}i0)^{}", t.polarization, p)?,
                p => write!(f, "*th^{p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_int(n)
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut s = ThetaSum::monomial(c(2), 1, 0, Sign::Plus);
        s.push(ThetaTerm::new(c(-2), 1, 0, Sign::Minus));
        assert!(s.is_zero());
    }

    #[test]
    fn polarization_normalized_for_nonnegative_powers() {
        let t = ThetaTerm::new(c(1), 0, 2, Sign::Minus);
        assert_eq!(t.polarization, Sign::Plus);
        let a = ThetaSum::monomial(c(1), 0, -2, Sign::Minus);
        let b = ThetaSum::monomial(c(1), 0, 2, Sign::Plus);
        assert_eq!(a.mul(&b).unwrap(), ThetaSum::constant(c(1)));
        let d = ThetaSum::monomial(c(1), 0, 1, Sign::Plus);
        let prod = a.mul(&d).unwrap();
        assert_eq!(prod, ThetaSum::monomial(c(1), 0, -1, Sign::Minus));
    }

    #[test]
    fn poles_compose_and_mixing_is_rejected() {
        let p = ThetaSum::monomial(c(1), 0, -2, Sign::Plus);
        let q = ThetaSum::monomial(c(1), 0, -3, Sign::Plus);
        assert_eq!(p.mul(&q).unwrap(), ThetaSum::monomial(c(1), 0, -5, Sign::Plus));
        let m = ThetaSum::monomial(c(1), 0, -1, Sign::Minus);
        assert!(matches!(p.mul(&m), Err(QThetaError::MixedPolarization)));
    }

    #[test]
    fn numeric_evaluation() {
        let s = ThetaSum::from_terms([
            ThetaTerm::new(c(1), 0, 0, Sign::Plus),
            ThetaTerm::new(c(-1), -1, 0, Sign::Plus),
        ]);
        let (re, im) = s.eval_complex(0.5);
        assert!((re - (1.0 - 0.5f64.cos())).abs() < 1e-14);
        assert!((im - 0.5f64.sin()).abs() < 1e-14);
        let half = ThetaSum::monomial(Cyclotomic::from_rational(rat(1, 2)), 0, -2, Sign::Plus);
        assert!((half.eval_complex(0.5).0 - 2.0).abs() < 1e-14);
    }

    fn sum() -> impl Strategy<Value = ThetaSum> {
        prop::collection::vec((-3i64..=3, -3i64..=3, -2i64..=3, prop::sample::select(vec![1u32, 3, 4])), 0..5)
            .prop_map(|ts| {
                ThetaSum::from_terms(ts.into_iter().map(|(c, e, p, n)| {
                    ThetaTerm::new(&Cyclotomic::from_int(c) * &Cyclotomic::root(n, 1), e, p, Sign::Plus)
                }))
            })
    }

    proptest! {
        #[test]
        fn ring_laws(a in sum(), b in sum(), d in sum()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.add(&d)).unwrap(), a.mul(&b).unwrap().add(&a.mul(&d).unwrap()));
        }
    }
}
