//! Lossless JSON form of [`LocalizationDatum`].
//!
//! Cyclotomic numbers are written as `{"order": N, "coords": ["p/q", …]}` in
//! the power basis of `ℚ(ζ_N)`; polarizations as `"+"`/`"-"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{parse_rational, Cyclotomic};
use crate::geometry::{Contribution, LocalizationDatum, VertexBlock};
use crate::qtheta::{FactorKind, FactorSpec, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("datum: {0}")]
    Invalid(String),
}

impl DocumentError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocumentError::Schema { path: path.into(), message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclotomicDoc {
    pub order: u32,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub kind: FactorKind,
    pub zeta: CyclotomicDoc,
    pub weight: i64,
    pub polarization: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ContributionDoc {
    pub prefactor_weight: i64,
    pub prefactor_zeta: CyclotomicDoc,
    pub polarization: Sign,
    pub factors: Vec<FactorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub g: CyclotomicDoc,
    pub contributions: Vec<ContributionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct DatumDoc {
    pub label: String,
    pub dim_m: u32,
    pub dim_g: u32,
    pub vertices: Vec<VertexDoc>,
}

pub fn cyclotomic_to_doc(z: &Cyclotomic) -> CyclotomicDoc {
    CyclotomicDoc { order: z.order(), coords: z.coords().iter().map(ToString::to_string).collect() }
}

pub fn cyclotomic_from_doc(d: &CyclotomicDoc, path: &str) -> Result<Cyclotomic, DocumentError> {
    if d.order == 0 {
        return Err(DocumentError::at(format!("{path}.order"), "order must be ≥ 1"));
    }
    let coords = d
        .coords
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| DocumentError::at(format!("{path}.coords[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cyclotomic::from_coords(d.order, coords))
}

impl From<&LocalizationDatum> for DatumDoc {
    fn from(d: &LocalizationDatum) -> Self {
        DatumDoc {
            label: d.label.clone(),
            dim_m: d.dim_m,
            dim_g: d.dim_g,
            vertices: d
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    g: cyclotomic_to_doc(&v.g),
                    contributions: v
                        .contributions
                        .iter()
                        .map(|c| ContributionDoc {
                            prefactor_weight: c.prefactor_weight,
                            prefactor_zeta: cyclotomic_to_doc(&c.prefactor_zeta),
                            polarization: c.polarization,
                            factors: c
                                .factors
                                .iter()
                                .map(|f| FactorDoc {
                                    kind: f.kind,
                                    zeta: cyclotomic_to_doc(&f.zeta),
                                    weight: f.weight,
                                    polarization: f.polarization,
                                })
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl DatumDoc {
    /// Converts to a datum, checking factor routing and polarization
    /// uniformity per contribution before the datum-level invariants.
    pub fn to_datum(&self) -> Result<LocalizationDatum, DocumentError> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (vi, v) in self.vertices.iter().enumerate() {
            let vp = format!("vertices[{vi}]");
            let g = cyclotomic_from_doc(&v.g, &format!("{vp}.g"))?;
            let mut contributions = Vec::with_capacity(v.contributions.len());
            for (ci, c) in v.contributions.iter().enumerate() {
                let cp = format!("{vp}.contributions[{ci}]");
                let mut factors = Vec::with_capacity(c.factors.len());
                for (fi, f) in c.factors.iter().enumerate() {
                    let fp = format!("{cp}.factors[{fi}]");
                    let spec = FactorSpec {
                        kind: f.kind,
                        zeta: cyclotomic_from_doc(&f.zeta, &format!("{fp}.zeta"))?,
                        weight: f.weight,
                        polarization: f.polarization,
                    };
                    spec.validate().map_err(|e| DocumentError::at(&fp, e.to_string()))?;
                    if spec.kind == FactorKind::DenomUnipotent && spec.polarization != c.polarization {
                        return Err(DocumentError::at(
                            format!("{fp}.polarization"),
                            format!("mixed polarization: factor {} in a {} contribution", spec.polarization, c.polarization),
                        ));
                    }
                    factors.push(spec);
                }
                contributions.push(Contribution {
                    prefactor_weight: c.prefactor_weight,
                    prefactor_zeta: cyclotomic_from_doc(&c.prefactor_zeta, &format!("{cp}.prefactorZeta"))?,
                    factors,
                    polarization: c.polarization,
                });
            }
            vertices.push(VertexBlock { g, contributions });
        }
        let datum = LocalizationDatum { label: self.label.clone(), dim_m: self.dim_m, dim_g: self.dim_g, vertices };
        datum.validate().map_err(|e| DocumentError::Invalid(e.to_string()))?;
        Ok(datum)
    }
}

pub fn serialize_datum(d: &LocalizationDatum) -> String {
    serde_json::to_string_pretty(&DatumDoc::from(d)).expect("datum documents always serialize")
}

pub fn parse_datum_value(value: serde_json::Value) -> Result<LocalizationDatum, DocumentError> {
    let doc: DatumDoc = serde_path_to_error::deserialize(value)
        .map_err(|e| DocumentError::at(e.path().to_string(), e.inner().to_string()))?;
    doc.to_datum()
}

pub fn parse_datum(text: &str) -> Result<LocalizationDatum, DocumentError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: DatumDoc =
        serde_path_to_error::deserialize(de).map_err(|e| DocumentError::at(e.path().to_string(), e.inner().to_string()))?;
    doc.to_datum()
}
