//! Rank-one (SU(2)) reduction between torus multiplicities and irreducible
//! representations.

use num_traits::Zero;

use super::GeometryError;
use crate::exact::Rational;
use crate::xispace::MultiplicityTable;

/// `m̃(λ) = m(λ + ρ) - m(λ - ρ)` on the window shrunk by ρ at both ends.
pub fn weyl_antisymmetrize(m: &MultiplicityTable, rho: i64) -> Result<MultiplicityTable, GeometryError> {
    let (lo, hi) = m.window();
    if rho < 1 || m.is_empty() || lo + rho > hi - rho {
        return Err(GeometryError::InsufficientWindow { lo, hi, rho });
    }
    Ok(MultiplicityTable::from_fn(lo + rho, hi - rho, |l| {
        m.get(l + rho).expect("in window") - m.get(l - rho).expect("in window")
    }))
}

/// Multiplicity of `V_λ`, the irreducible representation of highest weight `λ - ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepMultiplicity {
    pub lambda: i64,
    pub highest_weight: i64,
    pub multiplicity: Rational,
}

/// Reads off the regular dominant part `λ > 0` of an anti-invariant table.
pub fn dominant_extract(m: &MultiplicityTable, rho: i64) -> Result<Vec<IrrepMultiplicity>, GeometryError> {
    for (l, v) in m.iter() {
        if let Some(mirror) = m.get(-l) {
            if v != -mirror.clone() {
                return Err(GeometryError::NotAntiInvariant {
                    lambda: l,
                    value: v.to_string(),
                    mirror: mirror.to_string(),
                });
            }
        }
    }
    Ok(m
        .iter()
        .filter(|(l, v)| *l > 0 && !v.is_zero())
        .map(|(lambda, multiplicity)| IrrepMultiplicity { lambda, highest_weight: lambda - rho, multiplicity })
        .collect())
}
