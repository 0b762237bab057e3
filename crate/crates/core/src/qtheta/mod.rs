//! Fourier-side engine.
//!
//! A vertex contribution `ζ₀ e^{iμθ} · Π numerators / Π deformed denominators`
//! is expanded into a [`QSeries`] whose coefficients are finite sums of
//! `c · e^{imθ} · (θ ± i0)^t`.
//!
//! Grading: each unipotent weight pair `(1 - e^{iqaθ})(1 - e^{-iqaθ})` is
//! replaced by `B(qaθ)/(aθ)²` with `B(x) = ((x/2)/sin(x/2))²`, so the `q^{-2}`
//! pole of the raw pair never appears and all stored q-powers are `≥ 0`.
//! Twisted pairs `(1 - ζe^{iqaθ})(1 - ζ⁻¹e^{-iqaθ})`, `ζ ≠ 1`, are analytic at
//! `q = 0` and are inverted as a power series in `q` directly.

mod series;
mod theta;

pub use series::QSeries;
pub use theta::{Sign, ThetaSum, ThetaTerm};

use thiserror::Error;

use crate::exact::{b_series_coefficients, factorial, int, Cyclotomic, ExactError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QThetaError {
    #[error("mixed polarizations (θ+i0 and θ-i0) in one product")]
    MixedPolarization,
    #[error("negative power q^{0} produced (grading violation)")]
    GradingViolation(i64),
    #[error("misrouted factor: {0}")]
    MisroutedFactor(String),
    #[error("factor weight must be nonzero")]
    ZeroWeight,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FactorKind {
    /// `1 - ζ e^{iaθ}` in the equivariant Chern character.
    Numerator,
    /// Tangent weight pair of the fixed locus, deformed by the J-class.
    DenomUnipotent,
    /// Normal weight pair twisted by a nontrivial eigenvalue `ζ`.
    DenomTwisted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSpec {
    pub kind: FactorKind,
    pub zeta: Cyclotomic,
    pub weight: i64,
    pub polarization: Sign,
}

impl FactorSpec {
    pub fn numerator(zeta: Cyclotomic, weight: i64) -> Self {
        FactorSpec { kind: FactorKind::Numerator, zeta, weight, polarization: Sign::Plus }
    }

    pub fn unipotent(weight: i64, polarization: Sign) -> Self {
        FactorSpec { kind: FactorKind::DenomUnipotent, zeta: Cyclotomic::one(), weight, polarization }
    }

    pub fn twisted(zeta: Cyclotomic, weight: i64) -> Self {
        FactorSpec { kind: FactorKind::DenomTwisted, zeta, weight, polarization: Sign::Plus }
    }

    /// Checks the ζ-routing invariant of the factor kind.
    pub fn validate(&self) -> Result<(), QThetaError> {
        match self.kind {
            FactorKind::Numerator => Ok(()),
            FactorKind::DenomUnipotent if !self.zeta.is_one() => Err(QThetaError::MisroutedFactor(
                format!("unipotent pair with ζ = {} ≠ 1", self.zeta),
            )),
            FactorKind::DenomTwisted if self.zeta.is_one() => Err(QThetaError::MisroutedFactor(
                "twisted pair with ζ = 1 (use the unipotent expansion)".into(),
            )),
            _ if self.weight == 0 => Err(QThetaError::ZeroWeight),
            _ => Ok(()),
        }
    }
}

/// `B(qaθ)/(aθ)² = sum_t c_{2t} a^{2t-2} q^{2t} θ^{2t-2}`, truncated at `q^order`.
pub fn expand_unipotent_pair(weight: i64, polarization: Sign, order: usize) -> Result<QSeries, QThetaError> {
    if weight == 0 {
        return Err(QThetaError::ZeroWeight);
    }
    let even = (order - order % 2) as u32;
    let coeffs = b_series_coefficients(even)?;
    let a = int(weight);
    let terms = coeffs.into_iter().enumerate().map(|(t, c)| {
        let e = 2 * t as i32 - 2;
        let scale = if e >= 0 { pow(&a, e as u32) } else { pow(&a, (-e) as u32).recip() };
        (2 * t as i64, ThetaTerm::new(Cyclotomic::from_rational(c * scale), 0, e as i64, polarization))
    });
    QSeries::from_q_terms(order, terms)
}

fn pow(a: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * a)
}

/// Reciprocal of `(1 - ζ e^{iqaθ})(1 - ζ⁻¹ e^{-iqaθ})` as a series in `q`;
/// the `q^k` coefficient is a cyclotomic multiple of `θ^k`.
pub fn expand_twisted_pair(zeta: &Cyclotomic, weight: i64, order: usize) -> Result<QSeries, QThetaError> {
    if zeta.is_one() {
        return Err(QThetaError::MisroutedFactor(
            "twisted pair with ζ = 1 (use the unipotent expansion)".into(),
        ));
    }
    if weight == 0 {
        return Err(QThetaError::ZeroWeight);
    }
    let zinv = zeta.inverse()?;
    // u(x) = 2 - ζ e^{ix} - ζ⁻¹ e^{-ix} = sum_k u_k x^k
    let u: Vec<Cyclotomic> = (0..=order)
        .map(|k| {
            let k = k as i64;
            let sum = &(zeta * &Cyclotomic::i_pow(k)) + &(&zinv * &Cyclotomic::i_pow(-k));
            let inv_fact = Rational::from_integer(factorial(k as u64)).recip();
            let mut uk = (-sum).scale(&inv_fact);
            if k == 0 {
                uk = &uk + &Cyclotomic::from_int(2);
            }
            uk
        })
        .collect();
    let u0_inv = u[0].inverse()?;
    let mut v: Vec<Cyclotomic> = Vec::with_capacity(order + 1);
    v.push(u0_inv.clone());
    for n in 1..=order {
        let acc: Cyclotomic = (1..=n).map(|k| &u[k] * &v[n - k]).sum();
        v.push(-(&acc * &u0_inv));
    }
    let a = int(weight);
    let terms = v.into_iter().enumerate().map(|(k, vk)| {
        (k as i64, ThetaTerm::new(vk.scale(&pow(&a, k as u32)), 0, k as i64, Sign::Plus))
    });
    QSeries::from_q_terms(order, terms)
}

/// `1 - ζ e^{iaθ}`.
pub fn numerator_factor(zeta: &Cyclotomic, weight: i64) -> ThetaSum {
    ThetaSum::from_terms([
        ThetaTerm::new(Cyclotomic::one(), 0, 0, Sign::Plus),
        ThetaTerm::new(-zeta, weight, 0, Sign::Plus),
    ])
}

/// Expands `ζ₀ e^{iμθ} · Π factors` into a canonical [`QSeries`].
pub fn assemble_contribution(
    prefactor_weight: i64,
    prefactor_zeta: &Cyclotomic,
    factors: &[FactorSpec],
    order: usize,
) -> Result<QSeries, QThetaError> {
    let mut pol = None;
    for f in factors {
        f.validate()?;
        if f.kind == FactorKind::DenomUnipotent {
            match pol {
                Some(p) if p != f.polarization => return Err(QThetaError::MixedPolarization),
                _ => pol = Some(f.polarization),
            }
        }
    }
    let mut head = ThetaSum::monomial(prefactor_zeta.clone(), prefactor_weight, 0, Sign::Plus);
    for f in factors.iter().filter(|f| f.kind == FactorKind::Numerator) {
        head = head.mul(&numerator_factor(&f.zeta, f.weight))?;
    }
    let mut series = QSeries::constant(order, head);
    for f in factors {
        let expanded = match f.kind {
            FactorKind::Numerator => continue,
            FactorKind::DenomUnipotent => expand_unipotent_pair(f.weight, f.polarization, order)?,
            FactorKind::DenomTwisted => expand_twisted_pair(&f.zeta, f.weight, order)?,
        };
        series = series.mul(&expanded)?;
    }
    Ok(series)
}

/// Number of unipotent pairs in a factor list.
pub fn unipotent_count(factors: &[FactorSpec]) -> usize {
    factors.iter().filter(|f| f.kind == FactorKind::DenomUnipotent).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn c(r: Rational) -> Cyclotomic {
        Cyclotomic::from_rational(r)
    }

    #[test]
    fn unipotent_pair_examples() {
        let s = expand_unipotent_pair(1, Sign::Plus, 4).unwrap();
        let expected = QSeries::from_q_terms(
            4,
            [
                (0, ThetaTerm::new(c(int(1)), 0, -2, Sign::Plus)),
                (2, ThetaTerm::new(c(rat(1, 12)), 0, 0, Sign::Plus)),
                (4, ThetaTerm::new(c(rat(1, 240)), 0, 2, Sign::Plus)),
            ],
        )
        .unwrap();
        assert_eq!(s, expected);

        let s = expand_unipotent_pair(2, Sign::Plus, 2).unwrap();
        let expected = QSeries::from_q_terms(
            2,
            [
                (0, ThetaTerm::new(c(rat(1, 4)), 0, -2, Sign::Plus)),
                // (1 + (2qθ)²/12) / (2θ)²: the q² coefficient is 1/12
                (2, ThetaTerm::new(c(rat(1, 12)), 0, 0, Sign::Plus)),
            ],
        )
        .unwrap();
        assert_eq!(s, expected);

        let s = expand_unipotent_pair(1, Sign::Minus, 0).unwrap();
        assert_eq!(s.coeff(0), &ThetaSum::monomial(Cyclotomic::one(), 0, -2, Sign::Minus));
        assert!(matches!(expand_unipotent_pair(0, Sign::Plus, 2), Err(QThetaError::ZeroWeight)));
    }

    #[test]
    fn twisted_pair_examples() {
        let minus_one = Cyclotomic::from_int(-1);
        let s = expand_twisted_pair(&minus_one, 1, 0).unwrap();
        assert_eq!(s.coeff(0), &ThetaSum::constant(c(rat(1, 4))));
        let s = expand_twisted_pair(&minus_one, 1, 1).unwrap();
        assert_eq!(s.coeff(0), &ThetaSum::constant(c(rat(1, 4))));
        assert!(s.coeff(1).is_zero());

        let s = expand_twisted_pair(&Cyclotomic::root(3, 1), 1, 0).unwrap();
        assert_eq!(s.coeff(0), &ThetaSum::constant(c(rat(1, 3))));

        assert!(matches!(
            expand_twisted_pair(&Cyclotomic::one(), 1, 2),
            Err(QThetaError::MisroutedFactor(_))
        ));
    }

    /// Multiplying the expansion back by the Taylor series of the pair itself
    /// must give 1 through the truncation order.
    #[test]
    fn twisted_pair_is_reciprocal_of_pair() {
        for (zeta, a) in [
            (Cyclotomic::from_int(-1), 1),
            (Cyclotomic::root(3, 1), 2),
            (Cyclotomic::root(4, 3), -3),
            (Cyclotomic::root(5, 2), 1),
        ] {
            let order = 7;
            let zinv = zeta.inverse().unwrap();
            // pair(q) = 2 - ζ e^{iqaθ} - ζ⁻¹ e^{-iqaθ}, coefficient of q^k is u_k (aθ)^k
            let pair = QSeries::from_q_terms(
                order,
                (0..=order as i64).map(|k| {
                    let ik = Cyclotomic::i_pow(k);
                    let ink = Cyclotomic::i_pow(-k);
                    let fact = Rational::from_integer(factorial(k as u64));
                    let mut uk = (-(&(&zeta * &ik) + &(&zinv * &ink))).scale(&fact.recip());
                    if k == 0 {
                        uk = &uk + &Cyclotomic::from_int(2);
                    }
                    let ak = pow(&int(a), k as u32);
                    (k, ThetaTerm::new(uk.scale(&ak), 0, k, Sign::Plus))
                }),
            )
            .unwrap();
            let inv = expand_twisted_pair(&zeta, a, order).unwrap();
            let prod = pair.mul(&inv).unwrap();
            assert_eq!(prod, QSeries::constant(order, ThetaSum::constant(Cyclotomic::one())));
        }
    }

    #[test]
    fn numerator_examples() {
        let n = numerator_factor(&Cyclotomic::one(), -1);
        assert_eq!(
            n,
            ThetaSum::from_terms([
                ThetaTerm::new(Cyclotomic::one(), 0, 0, Sign::Plus),
                ThetaTerm::new(Cyclotomic::from_int(-1), -1, 0, Sign::Plus),
            ])
        );
        assert!(numerator_factor(&Cyclotomic::one(), 0).is_zero());
        let n = numerator_factor(&Cyclotomic::from_int(-1), -1);
        assert_eq!(
            n,
            ThetaSum::from_terms([
                ThetaTerm::new(Cyclotomic::one(), 0, 0, Sign::Plus),
                ThetaTerm::new(Cyclotomic::one(), -1, 0, Sign::Plus),
            ])
        );
    }

    fn p1_factors(pol: Sign) -> (Vec<FactorSpec>, Vec<FactorSpec>) {
        (
            vec![FactorSpec::numerator(Cyclotomic::one(), -1), FactorSpec::unipotent(1, pol)],
            vec![FactorSpec::numerator(Cyclotomic::one(), 1), FactorSpec::unipotent(1, pol)],
        )
    }

    #[test]
    fn assemble_examples() {
        let (at0, _) = p1_factors(Sign::Plus);
        let s = assemble_contribution(0, &Cyclotomic::one(), &at0, 4).unwrap();
        let expected = expand_unipotent_pair(1, Sign::Plus, 4)
            .unwrap()
            .mul_theta(&numerator_factor(&Cyclotomic::one(), -1))
            .unwrap();
        assert_eq!(s, expected);
        assert_eq!(
            s.coeff(0),
            &ThetaSum::from_terms([
                ThetaTerm::new(Cyclotomic::one(), 0, -2, Sign::Plus),
                ThetaTerm::new(Cyclotomic::from_int(-1), -1, -2, Sign::Plus),
            ])
        );

        let s = assemble_contribution(3, &Cyclotomic::one(), &[], 4).unwrap();
        assert_eq!(s, QSeries::constant(4, ThetaSum::monomial(Cyclotomic::one(), 3, 0, Sign::Plus)));
    }

    #[test]
    fn assemble_errors() {
        let mixed = [FactorSpec::unipotent(1, Sign::Plus), FactorSpec::unipotent(2, Sign::Minus)];
        assert!(matches!(
            assemble_contribution(0, &Cyclotomic::one(), &mixed, 2),
            Err(QThetaError::MixedPolarization)
        ));
        let bad = [FactorSpec { kind: FactorKind::DenomTwisted, ..FactorSpec::unipotent(1, Sign::Plus) }];
        assert!(assemble_contribution(0, &Cyclotomic::one(), &bad, 2).is_err());
        assert!(matches!(
            QSeries::from_q_terms(2, [(-2, ThetaTerm::new(Cyclotomic::one(), 0, 0, Sign::Plus))]),
            Err(QThetaError::GradingViolation(-2))
        ));
    }

    #[test]
    fn grading_bounds_hold() {
        let factors = vec![
            FactorSpec::numerator(Cyclotomic::from_int(-1), -1),
            FactorSpec::numerator(Cyclotomic::one(), -2),
            FactorSpec::unipotent(2, Sign::Plus),
            FactorSpec::twisted(Cyclotomic::from_int(-1), 1),
            FactorSpec::unipotent(1, Sign::Plus),
        ];
        let s = assemble_contribution(0, &Cyclotomic::one(), &factors, 8).unwrap();
        let pairs = unipotent_count(&factors) as i64;
        for (k, c) in s.coeffs().iter().enumerate() {
            for t in c.terms() {
                assert!(t.tpow >= k as i64 - 2 * pairs);
                // unipotent shifts are even; twisted shifts track q-order
                assert_eq!((t.tpow - k as i64).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn p1_series_converges_to_character_at_q1() {
        for a in [0i64, 1, 3, 5] {
            for pol in [Sign::Plus, Sign::Minus] {
                let (at0, at_inf) = p1_factors(pol);
                let s = assemble_contribution(0, &Cyclotomic::one(), &at0, 12)
                    .unwrap()
                    .add(&assemble_contribution(a, &Cyclotomic::one(), &at_inf, 12).unwrap());
                for theta in [0.1, 0.05, -0.1, 0.0371] {
                    let (re, im) = s.eval_complex_at_q1(theta);
                    let (er, ei) = (0..=a).fold((0.0, 0.0), |(r, i), d| {
                        let (sn, cs) = (d as f64 * theta).sin_cos();
                        (r + cs, i + sn)
                    });
                    assert!((re - er).abs() < 1e-6 && (im - ei).abs() < 1e-6, "A={a} θ={theta}");
                }
            }
        }
    }
}
