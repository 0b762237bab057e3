//! Localization data for circle actions and the builders that produce them.
//!
//! A [`LocalizationDatum`] lists, for every vertex `g` (a root of unity used
//! as the multiplier `g^λ`), the fixed-point contributions whose expansion
//! gives the spline family paired with `g`.
//!
//! Conventions (locked by the oracle tests): the family paired with the
//! multiplier `g` is the local expansion of the character at `θ₀` with
//! `e^{iθ₀} = g⁻¹`. For a weight `a` this gives the numerator
//! `1 - g^a e^{-iaθ}`, a unipotent pair when `g^a = 1`, and otherwise a
//! twisted pair with `ζ = g^{-a}`.

mod builders;
mod reduction;

pub use builders::{build_p1, build_p1_polarized, build_pushed_symbol, enumerate_vertices, twist_numerators, Twist};
pub use reduction::{dominant_extract, weyl_antisymmetrize, IrrepMultiplicity};

use thiserror::Error;

use crate::exact::{Cyclotomic, ExactError};
use crate::qtheta::{assemble_contribution, FactorKind, FactorSpec, QSeries, QThetaError, Sign};
use crate::xispace::{multiplicity, transform_family, MultiplicityTable, SplineFamily, XiSpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("weights must be positive integers, got {0:?}")]
    BadWeights(Vec<i64>),
    #[error("window [{lo}, {hi}] too small for ρ = {rho}")]
    InsufficientWindow { lo: i64, hi: i64, rho: i64 },
    #[error("table is not anti-invariant at λ = {lambda}: m({lambda}) = {value}, m(-{lambda}) = {mirror}")]
    NotAntiInvariant { lambda: i64, value: String, mirror: String },
    #[error("qtheta: {0}")]
    QTheta(#[from] QThetaError),
    #[error("xispace: {0}")]
    XiSpace(#[from] XiSpaceError),
}

impl From<ExactError> for GeometryError {
    fn from(e: ExactError) -> Self {
        GeometryError::QTheta(e.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub prefactor_weight: i64,
    pub prefactor_zeta: Cyclotomic,
    pub factors: Vec<FactorSpec>,
    pub polarization: Sign,
}

impl Contribution {
    pub fn expand(&self, order: usize) -> Result<QSeries, QThetaError> {
        assemble_contribution(self.prefactor_weight, &self.prefactor_zeta, &self.factors, order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexBlock {
    pub g: Cyclotomic,
    pub contributions: Vec<Contribution>,
}

impl VertexBlock {
    pub fn validate(&self) -> Result<(), GeometryError> {
        let bad = |msg: String| Err(GeometryError::InvalidDatum(format!("vertex {}: {msg}", self.g)));
        if !self.g.is_root_of_unity() {
            return bad("not a root of unity".into());
        }
        for (ci, c) in self.contributions.iter().enumerate() {
            for (fi, f) in c.factors.iter().enumerate() {
                let at = format!("contribution {ci}, factor {fi}");
                match f.kind {
                    FactorKind::Numerator => {}
                    FactorKind::DenomUnipotent => {
                        if !f.zeta.is_one() {
                            return bad(format!("{at}: unipotent pair needs ζ = 1, got {}", f.zeta));
                        }
                        if !self.g.pow(f.weight).map(|p| p.is_one()).unwrap_or(false) {
                            return bad(format!("{at}: g^{} ≠ 1 for a unipotent pair", f.weight));
                        }
                        if f.polarization != c.polarization {
                            return bad(format!("{at}: polarization differs from the contribution's"));
                        }
                    }
                    FactorKind::DenomTwisted => {
                        if f.zeta.is_one() {
                            return bad(format!("{at}: twisted pair with ζ = 1"));
                        }
                        let ga = self.g.pow(f.weight)?;
                        let gma = self.g.pow(-f.weight)?;
                        if f.zeta != ga && f.zeta != gma {
                            return bad(format!("{at}: ζ = {} is not g^(±{})", f.zeta, f.weight));
                        }
                    }
                }
                f.validate().map_err(|e| GeometryError::InvalidDatum(format!("vertex {}: {at}: {e}", self.g)))?;
            }
        }
        Ok(())
    }

    pub fn expand(&self, order: usize) -> Result<QSeries, GeometryError> {
        let mut total = QSeries::zero(order);
        for c in &self.contributions {
            total = total.add(&c.expand(order)?);
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationDatum {
    pub label: String,
    /// Real dimension of M.
    pub dim_m: u32,
    pub dim_g: u32,
    pub vertices: Vec<VertexBlock>,
}

impl LocalizationDatum {
    /// `dim M - dim G`, the spline degree budget.
    pub fn d_max(&self) -> usize {
        (self.dim_m - self.dim_g) as usize
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let bad = |msg: &str| Err(GeometryError::InvalidDatum(format!("{}: {msg}", self.label)));
        if self.dim_g != 1 {
            return bad("only rank-one groups are supported (dim G = 1)");
        }
        if !self.dim_m.is_multiple_of(2) || self.dim_m < self.dim_g {
            return bad("dim M must be even and at least dim G");
        }
        if !self.vertices.iter().any(|v| v.g.is_one()) {
            return bad("the identity vertex is missing");
        }
        for (i, a) in self.vertices.iter().enumerate() {
            if self.vertices[..i].iter().any(|b| b.g == a.g) {
                return bad("vertices must be distinct");
            }
            a.validate()?;
        }
        Ok(())
    }

    /// One spline family per vertex, at truncation order `order`.
    pub fn vertex_families(&self, order: usize) -> Result<Vec<(Cyclotomic, SplineFamily)>, GeometryError> {
        self.validate()?;
        self.vertices
            .iter()
            .map(|v| {
                let series = v.expand(order)?;
                Ok((v.g.clone(), transform_family(&series, self.d_max())?))
            })
            .collect()
    }

    /// Family attached to the identity vertex.
    pub fn identity_family(&self, order: usize) -> Result<SplineFamily, GeometryError> {
        self.validate()?;
        let v = self.vertices.iter().find(|v| v.g.is_one()).expect("validated");
        Ok(transform_family(&v.expand(order)?, self.d_max())?)
    }

    pub fn multiplicities(&self, order: usize, lo: i64, hi: i64, eps: Sign) -> Result<MultiplicityTable, GeometryError> {
        let families = self.vertex_families(order)?;
        Ok(multiplicity(&families, lo, hi, eps)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Rational};

    fn indicator(lo: i64, hi: i64, a: i64) -> Vec<(i64, Rational)> {
        (lo..=hi).map(|l| (l, int((0..=a).contains(&l) as i64))).collect()
    }

    #[test]
    fn p1_tent_at_a0() {
        let m0 = build_p1(0).identity_family(2).unwrap().member(0).clone();
        assert_eq!(m0.breakpoints(), &[int(-1), int(0), int(1)]);
        for (x, y) in [(rat(-1, 2), rat(1, 2)), (rat(1, 4), rat(3, 4)), (rat(3, 2), int(0))] {
            assert_eq!(m0.value_at(&x).unwrap().to_rational().unwrap(), y);
        }
    }

    #[test]
    fn p1_indicator_both_signs() {
        for a in [0u32, 1, 3, 7] {
            for eps in [Sign::Plus, Sign::Minus] {
                let hi = a as i64 + 5;
                let t = build_p1(a).multiplicities(4, -5, hi, eps).unwrap();
                assert_eq!(t.iter().collect::<Vec<_>>(), indicator(-5, hi, a as i64), "A={a} {eps:?}");
            }
        }
    }

    #[test]
    fn pushed_one_two_closed_form() {
        let d = build_pushed_symbol(&[1, 2]).unwrap();
        let t = d.multiplicities(6, 0, 20, Sign::Plus).unwrap();
        for (l, v) in t.iter() {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            assert_eq!(v, rat(l, 2) + rat(3, 4) + rat(sign, 4), "λ={l}");
        }
        let fams = d.vertex_families(6).unwrap();
        let (g, minus) = &fams[1];
        assert_eq!(g, &Cyclotomic::from_int(-1));
        assert!(!minus.member(0).spline_is_zero());
        for l in 0..6i64 {
            let lim = crate::xispace::family_limit(minus, l, Sign::Plus);
            assert_eq!((&g.pow(l).unwrap() * &lim).to_rational().unwrap(), rat(if l % 2 == 0 { 1 } else { -1 }, 4));
        }
    }

    #[test]
    fn pushed_small_values() {
        let t = build_pushed_symbol(&[1, 1]).unwrap().multiplicities(6, 0, 8, Sign::Plus).unwrap();
        assert!(t.iter().all(|(l, v)| v == int(l + 1)));
        let t = build_pushed_symbol(&[2, 3]).unwrap().multiplicities(6, 0, 12, Sign::Plus).unwrap();
        assert_eq!(t.get(1).unwrap(), int(0));
        assert_eq!(t.get(12).unwrap(), int(3));
    }

    #[test]
    fn spinor_twist_telescopes() {
        for a in [0u32, 2, 3] {
            let d = twist_numerators(&build_p1(a), &Twist::spinor(1)).unwrap();
            let ai = a as i64;
            let t = d.multiplicities(6, -5, ai + 5, Sign::Plus).unwrap();
            let mut expected = std::collections::BTreeMap::new();
            for (l, v) in [(ai, 1), (ai + 1, 1), (-1, -1), (0, -1)] {
                *expected.entry(l).or_insert(0) += v;
            }
            let expected: Vec<_> = expected.into_iter().filter(|(_, v)| *v != 0).map(|(l, v)| (l, int(v))).collect();
            assert_eq!(t.support(), expected, "A={a}");
        }
    }

    #[test]
    fn shift_twist_shifts_table() {
        let d = twist_numerators(&build_p1(2), &Twist::shift(3)).unwrap();
        let t = d.multiplicities(4, -2, 10, Sign::Plus).unwrap();
        assert_eq!(t.support(), vec![(3, int(1)), (4, int(1)), (5, int(1))]);
    }

    #[test]
    fn validation_rejects_bad_blocks() {
        let mut d = build_p1(1);
        d.vertices[0].contributions[0].factors[1].polarization = Sign::Minus;
        assert!(matches!(d.validate(), Err(GeometryError::InvalidDatum(_))));

        let mut d = build_pushed_symbol(&[1, 2]).unwrap();
        d.vertices[1].contributions[0].factors[3] = FactorSpec::twisted(Cyclotomic::root(3, 1), 2);
        assert!(d.validate().is_err());

        let mut d = build_p1(1);
        d.vertices.push(d.vertices[0].clone());
        assert!(d.validate().is_err());

        let mut d = build_p1(1);
        d.vertices[0].g = Cyclotomic::from_int(-1);
        assert!(d.validate().is_err());
    }
}
