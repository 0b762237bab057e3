use std::fmt;

use num_traits::Zero;

use super::cyclotomic::Cyclotomic;
use super::rational::{binomial, int, Rational};

/// Univariate polynomial in ξ with cyclotomic coefficients, stored ascending
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Cyclotomic>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::new(coeffs.iter().cloned().map(Cyclotomic::from_rational).collect())
    }

    /// `ξ^d`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![Cyclotomic::zero(); d + 1];
        c[d] = Cyclotomic::one();
        Self::new(c)
    }

    /// `(ξ - m)^d / d!`.
    pub fn truncated_power_body(m: &Rational, d: usize) -> Self {
        let fact: Rational = (1..=d as i64).map(int).product();
        let coeffs = (0..=d)
            .map(|j| {
                // C(d, j) ξ^j (-m)^{d-j}
                let mut c = Rational::from_integer(binomial(d as u64, j as u64));
                for _ in 0..d - j {
                    c *= -m;
                }
                Cyclotomic::from_rational(c / &fact)
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Cyclotomic::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&int(j as i64)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut c = vec![Cyclotomic::zero()];
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, x)| x.scale(&Rational::new(1.into(), (j as i64 + 1).into()))),
        );
        Self::new(c)
    }

    /// Exact integral over `[a, b]`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Cyclotomic {
        let anti = self.antiderivative();
        &anti.eval(b) - &anti.eval(a)
    }

    /// Rational coefficients, if every coefficient is rational.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(Cyclotomic::to_rational).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let simple = c.is_rational();
            match (j, simple) {
                (0, _) => write!(f, "{c}")?,
                (_, true) if c.to_rational().is_some_and(|r| r == int(1)) => {}
                (_, true) => write!(f, "{c}*")?,
                (_, false) => write!(f, "({c})*")?,
            }
            match j {
                0 => {}
                1 => write!(f, "xi")?,
                _ => write!(f, "xi^{j}")?,
            }
        }
        Ok(())
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::ops::Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        Polynomial::add(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn truncated_power_body_expands() {
        // (ξ - 2)^2 / 2 = 2 - 2ξ + ξ²/2
        let p = Polynomial::truncated_power_body(&int(2), 2);
        assert_eq!(p, Polynomial::from_rationals(&[int(2), int(-2), rat(1, 2)]));
        assert_eq!(p.eval(&int(2)), Cyclotomic::zero());
    }

    #[test]
    fn calculus() {
        let p = Polynomial::from_rationals(&[int(1), int(0), int(3)]);
        assert_eq!(p.derivative(), Polynomial::from_rationals(&[int(0), int(6)]));
        assert_eq!(p.integrate(&int(0), &int(1)), Cyclotomic::from_int(2));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::from_rationals(&[int(0)]).degree(), None);
        assert_eq!(p.to_string(), "1 + 3*xi^2");
    }
}
