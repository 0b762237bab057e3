use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use super::{Contribution, GeometryError, LocalizationDatum, VertexBlock};
use crate::exact::{Cyclotomic, Rational};
use crate::qtheta::{FactorSpec, Sign};

/// ∂̄ twisted by `L^A` on P¹, circle acting by `[x, y] ↦ [e^{iθ}x, y]`.
pub fn build_p1(a: u32) -> LocalizationDatum {
    build_p1_polarized(a, Sign::Plus)
}

pub fn build_p1_polarized(a: u32, polarization: Sign) -> LocalizationDatum {
    let one = Cyclotomic::one();
    let fixed_point = |mu: i64, numerator_weight: i64| Contribution {
        prefactor_weight: mu,
        prefactor_zeta: one.clone(),
        factors: vec![
            FactorSpec::numerator(one.clone(), numerator_weight),
            FactorSpec::unipotent(1, polarization),
        ],
        polarization,
    };
    LocalizationDatum {
        label: format!("P1(A={a})"),
        dim_m: 2,
        dim_g: 1,
        vertices: vec![VertexBlock {
            g: one.clone(),
            contributions: vec![fixed_point(0, -1), fixed_point(a as i64, 1)],
        }],
    }
}

fn check_weights(weights: &[i64]) -> Result<(), GeometryError> {
    if weights.is_empty() || weights.iter().any(|&w| w < 1) {
        return Err(GeometryError::BadWeights(weights.to_vec()));
    }
    Ok(())
}

/// Angles `k/n ∈ [0, 1)` of all roots of unity of order dividing some weight.
fn vertex_angles(weights: &[i64]) -> BTreeSet<Rational> {
    weights
        .iter()
        .flat_map(|&a| (0..a).map(move |k| Rational::new(k.into(), a.into())))
        .collect()
}

fn root_at(angle: &Rational) -> Cyclotomic {
    let n = angle.denom().to_u32().expect("small order");
    let k = angle.numer().to_i64().expect("small numerator");
    Cyclotomic::root(n, k)
}

/// `∪_j {ζ : ζ^{a_j} = 1}`, sorted by angle; always starts with 1.
pub fn enumerate_vertices(weights: &[i64]) -> Result<Vec<Cyclotomic>, GeometryError> {
    check_weights(weights)?;
    Ok(vertex_angles(weights).iter().map(root_at).collect())
}

/// The symbol on ℂⁿ pushed by the circle acting with the given weights; its
/// multiplicities are the partition function of the weight list on λ ≥ 0.
pub fn build_pushed_symbol(weights: &[i64]) -> Result<LocalizationDatum, GeometryError> {
    check_weights(weights)?;
    let mut vertices = Vec::new();
    for g in enumerate_vertices(weights)? {
        let mut factors = Vec::with_capacity(2 * weights.len());
        for &a in weights {
            let ga = g.pow(a)?;
            factors.push(FactorSpec::numerator(ga.clone(), -a));
            if ga.is_one() {
                factors.push(FactorSpec::unipotent(a, Sign::Plus));
            } else {
                factors.push(FactorSpec::twisted(g.pow(-a)?, a));
            }
        }
        vertices.push(VertexBlock {
            g,
            contributions: vec![Contribution {
                prefactor_weight: 0,
                prefactor_zeta: Cyclotomic::one(),
                factors,
                polarization: Sign::Plus,
            }],
        });
    }
    let label = format!(
        "pushed({})",
        weights.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    );
    Ok(LocalizationDatum { label, dim_m: 2 * weights.len() as u32, dim_g: 1, vertices })
}

/// Multiplication of the index by a character `ζ₀ e^{iμθ} Π (1 - ζ e^{iaθ})`
/// of the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub prefactor_weight: i64,
    pub prefactor_zeta: Cyclotomic,
    pub numerators: Vec<(Cyclotomic, i64)>,
}

impl Twist {
    pub fn identity() -> Self {
        Twist { prefactor_weight: 0, prefactor_zeta: Cyclotomic::one(), numerators: Vec::new() }
    }

    pub fn shift(c: i64) -> Self {
        Twist { prefactor_weight: c, ..Self::identity() }
    }

    /// Spinor character of su(2)/t: `e^{iρθ} - e^{-iρθ} = e^{iρθ}(1 - e^{-2iρθ})`.
    pub fn spinor(rho: i64) -> Self {
        Twist { prefactor_weight: rho, prefactor_zeta: Cyclotomic::one(), numerators: vec![(Cyclotomic::one(), -2 * rho)] }
    }
}

/// Multiplies every contribution by the twist character, evaluated in the
/// local coordinate of each vertex: at the multiplier `g` the character
/// `e^{iμθ}` becomes `g^{-μ} e^{iμθ}`.
pub fn twist_numerators(d: &LocalizationDatum, twist: &Twist) -> Result<LocalizationDatum, GeometryError> {
    let mut out = d.clone();
    for v in &mut out.vertices {
        let local = |z: &Cyclotomic, a: i64| -> Result<Cyclotomic, GeometryError> { Ok(z * &v.g.pow(-a)?) };
        let pre_zeta = local(&twist.prefactor_zeta, twist.prefactor_weight)?;
        let extra: Vec<FactorSpec> = twist
            .numerators
            .iter()
            .map(|(z, a)| Ok(FactorSpec::numerator(local(z, *a)?, *a)))
            .collect::<Result<_, GeometryError>>()?;
        for c in &mut v.contributions {
            c.prefactor_weight += twist.prefactor_weight;
            c.prefactor_zeta = &c.prefactor_zeta * &pre_zeta;
            c.factors.extend(extra.iter().cloned());
        }
    }
    if twist != &Twist::identity() {
        out.label = format!("{}*twist", d.label);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn vertices() {
        assert_eq!(enumerate_vertices(&[1]).unwrap(), vec![Cyclotomic::one()]);
        assert_eq!(enumerate_vertices(&[1, 2]).unwrap(), vec![Cyclotomic::one(), Cyclotomic::from_int(-1)]);
        assert_eq!(
            enumerate_vertices(&[2, 3]).unwrap(),
            vec![Cyclotomic::one(), Cyclotomic::root(3, 1), Cyclotomic::from_int(-1), Cyclotomic::root(3, 2)]
        );
        assert!(matches!(enumerate_vertices(&[0]), Err(GeometryError::BadWeights(_))));
        assert!(matches!(build_pushed_symbol(&[]), Err(GeometryError::BadWeights(_))));
    }

    /// Brute force: scan all N-th roots of unity for N = lcm(weights).
    #[test]
    fn vertex_count_matches_root_scan() {
        for weights in [vec![1], vec![2, 3], vec![4, 6], vec![1, 2, 3], vec![5], vec![2, 2]] {
            let n: i64 = weights.iter().fold(1, |l, &a| num_integer::lcm(l, a));
            let count = (0..n)
                .filter(|&k| {
                    let z = Cyclotomic::root(n as u32, k);
                    weights.iter().any(|&a| z.pow(a).unwrap().is_one())
                })
                .count();
            assert_eq!(enumerate_vertices(&weights).unwrap().len(), count, "{weights:?}");
        }
    }

    #[test]
    fn builders_validate() {
        for a in 0..4 {
            build_p1(a).validate().unwrap();
            build_p1_polarized(a, Sign::Minus).validate().unwrap();
        }
        for w in [vec![1], vec![1, 1], vec![1, 2], vec![2, 3], vec![1, 2, 3]] {
            let d = build_pushed_symbol(&w).unwrap();
            d.validate().unwrap();
            assert_eq!(d.dim_m, 2 * w.len() as u32);
        }
    }

    #[test]
    fn identity_twist_is_noop() {
        let d = build_p1(3);
        assert_eq!(twist_numerators(&d, &Twist::identity()).unwrap(), d);
    }

    #[test]
    fn p1_numerator_sum() {
        // q^0 numerators of the two fixed points sum to 1 + e^{3iθ} - e^{4iθ} - e^{-iθ}
        let d = build_p1(3);
        let heads: Vec<_> = d.vertices[0]
            .contributions
            .iter()
            .map(|c| {
                c.factors
                    .iter()
                    .filter(|f| f.kind == crate::qtheta::FactorKind::Numerator)
                    .fold(crate::qtheta::ThetaSum::monomial(c.prefactor_zeta.clone(), c.prefactor_weight, 0, Sign::Plus), |acc, f| {
                        acc.mul(&crate::qtheta::numerator_factor(&f.zeta, f.weight)).unwrap()
                    })
            })
            .collect();
        let total = heads[0].add(&heads[1]);
        let expected = crate::qtheta::ThetaSum::from_terms([
            crate::qtheta::ThetaTerm::new(Cyclotomic::one(), 0, 0, Sign::Plus),
            crate::qtheta::ThetaTerm::new(Cyclotomic::one(), 3, 0, Sign::Plus),
            crate::qtheta::ThetaTerm::new(Cyclotomic::from_int(-1), 4, 0, Sign::Plus),
            crate::qtheta::ThetaTerm::new(Cyclotomic::from_int(-1), -1, 0, Sign::Plus),
        ]);
        assert_eq!(total, expected);
        let _ = int(0);
    }
}
