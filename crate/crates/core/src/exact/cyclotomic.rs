//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! An element of order `N` is stored as its coordinate vector in the power
//! basis `1, ζ, …, ζ^{φ(N)-1}`, where `ζ = e^{2πi/N}` and every product is
//! reduced modulo the `N`-th cyclotomic polynomial. This basis makes the
//! representation unique, so equality within one field is coordinate
//! equality. Operands of different orders are lifted into ℚ(ζ_lcm) first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{int, Rational};
use super::ExactError;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coords: Vec<Rational>,
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (ascending) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 = prod_{d | n} Phi_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, Arc::clone(&p));
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Reduces a polynomial in ζ (ascending coefficients) modulo Φ_n.
fn reduce(n: u32, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], Rational::zero());
            if c.is_zero() {
                continue;
            }
            let shift = i - deg;
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    poly[shift + j] -= &c * int(pj);
                }
            }
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coords: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// ζ_n^k.
    pub fn root(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_coords(n, poly)
    }

    /// The imaginary unit ζ_4.
    pub fn i() -> Self {
        Self::root(4, 1)
    }

    /// i^k.
    pub fn i_pow(k: i64) -> Self {
        Self::root(4, k)
    }

    /// Builds an element from power-basis coordinates of any length; the
    /// polynomial is reduced modulo Φ_n.
    pub fn from_coords(n: u32, coords: Vec<Rational>) -> Self {
        assert!(n >= 1, "cyclotomic order 0");
        let coords = reduce(n, coords);
        Cyclotomic { order: n, coords }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coords.iter().skip(1).all(Zero::is_zero) {
            self.coords.truncate(1);
            self.order = 1;
        }
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Coordinates of `self` in ℚ(ζ_m); `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Vec<Rational> {
        assert!(m.is_multiple_of(self.order), "order {} does not divide {m}", self.order);
        if m == self.order {
            let mut c = self.coords.clone();
            c.resize(euler_phi(m) as usize, Rational::zero());
            return c;
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coords.len() - 1) * step + 1];
        for (j, c) in self.coords.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        reduce(m, poly)
    }

    fn binary(&self, other: &Self, op: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>) -> Self {
        let m = self.order.lcm(&other.order);
        let a = self.lift(m);
        let b = other.lift(m);
        Self::from_coords(m, op(&a, &b))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic { order: self.order, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// The Galois automorphism ζ ↦ ζ^k (k coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut poly = vec![Rational::zero(); n as usize];
        for (j, c) in self.coords.iter().enumerate() {
            let e = (j as i64 * k).rem_euclid(n) as usize;
            poly[e] += c;
        }
        Self::from_coords(self.order, poly)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // z * prod_{k != 1} sigma_k(z) is the field norm, a nonzero rational.
        let n = self.order as i64;
        let mut cofactor = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                cofactor = &cofactor * &self.galois(k);
            }
        }
        let norm = (self * &cofactor)
            .to_rational()
            .expect("field norm must be rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// True when `self` is a root of unity; every root of unity in ℚ(ζ_N)
    /// has order dividing lcm(2, N).
    pub fn is_root_of_unity(&self) -> bool {
        let m = self.order.lcm(&2) as i64;
        !self.is_zero() && self.pow(m).map(|p| p.is_one()).unwrap_or(false)
    }

    /// Value under the embedding ζ_N ↦ e^{2πi/N}, as (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coords.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * j as f64 / n;
            (re + c * a.cos(), im + c * a.sin())
        })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let m = self.order.lcm(&other.order);
        self.lift(m) == other.lift(m)
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for Cyclotomic {
    /// Writes `c0 + c1*z{N} + c2*z{N}^2 + …` with `z{N}` the primitive root e^{2πi/N}.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coords[0]);
        }
        self.binary(rhs, |a, b| {
            let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        out[i + j] += x * y;
                    }
                }
            }
            out
        })
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$m(&rhs) }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn roots() {
        assert_eq!(Cyclotomic::root(1, 0), Cyclotomic::one());
        assert_eq!(Cyclotomic::root(2, 1), Cyclotomic::from_int(-1));
        let s = &Cyclotomic::root(3, 1) + &Cyclotomic::root(3, 2);
        assert_eq!(s, Cyclotomic::from_int(-1));
        assert!(s.is_rational());
        let i = Cyclotomic::root(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        // ζ_12^3 = i, ζ_6^2 = ζ_3
        assert_eq!(Cyclotomic::root(12, 3), i);
        assert_eq!(Cyclotomic::root(6, 2), Cyclotomic::root(3, 1));
        assert_ne!(Cyclotomic::root(6, 1), Cyclotomic::root(3, 1));
    }

    #[test]
    fn inverses() {
        let two = &Cyclotomic::one() - &Cyclotomic::from_int(-1);
        assert_eq!(two.inverse().unwrap(), Cyclotomic::from_rational(rat(1, 2)));

        let z4 = Cyclotomic::root(4, 1);
        let w = &Cyclotomic::one() - &z4;
        let expected = (&Cyclotomic::one() + &z4).scale(&rat(1, 2));
        assert_eq!(w.inverse().unwrap(), expected);

        let z3 = Cyclotomic::root(3, 1);
        assert_eq!(z3.inverse().unwrap(), Cyclotomic::root(3, 2));

        assert!(matches!(Cyclotomic::zero().inverse(), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn roots_of_unity_and_embedding() {
        assert!(Cyclotomic::root(5, 2).is_root_of_unity());
        assert!((-Cyclotomic::root(3, 1)).is_root_of_unity());
        assert!(!Cyclotomic::from_int(2).is_root_of_unity());
        let (re, im) = Cyclotomic::root(4, 1).to_complex();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
        assert_eq!(Cyclotomic::root(3, 1).conj(), Cyclotomic::root(3, 2));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(Cyclotomic::from_rational(rat(-1, 2)).to_string(), "-1/2");
        let z = &Cyclotomic::one() - &Cyclotomic::root(4, 1).scale(&rat(3, 2));
        assert_eq!(z.to_string(), "1 - 3/2*z4");
    }

    fn element() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]), prop::collection::vec((-5i64..=5, 1i64..=4), 1..6))
            .prop_map(|(n, cs)| {
                let coords = cs.into_iter().map(|(p, q)| rat(p, q)).collect();
                Cyclotomic::from_coords(n, coords)
            })
    }

    proptest! {
        #[test]
        fn field_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a - &a, Cyclotomic::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one());
            }
        }
    }
}
