use std::fmt::Write as _;

use serde::Serialize;

use emlindex_core::document::{cyclotomic_to_doc, CyclotomicDoc};
use emlindex_core::exact::Cyclotomic;
use emlindex_core::SplineDistribution;

/// Exact value: a `p/q` string when rational, otherwise power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Rational(String),
    Cyclotomic(CyclotomicDoc),
}

impl From<&Cyclotomic> for ExactValue {
    fn from(z: &Cyclotomic) -> Self {
        match z.to_rational() {
            Some(r) => ExactValue::Rational(r.to_string()),
            None => ExactValue::Cyclotomic(cyclotomic_to_doc(z)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub point: String,
    pub order: u32,
    pub coeff: ExactValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    pub k: usize,
    pub breakpoints: Vec<String>,
    /// Ascending coefficients of each piece, left to right.
    pub pieces: Vec<Vec<ExactValue>>,
    pub deltas: Vec<DeltaReport>,
    pub text: String,
}

impl MemberReport {
    pub fn new(k: usize, m: &SplineDistribution) -> Self {
        MemberReport {
            k,
            breakpoints: m.breakpoints().iter().map(ToString::to_string).collect(),
            pieces: m.pieces().iter().map(|p| p.coeffs().iter().map(ExactValue::from).collect()).collect(),
            deltas: m
                .deltas()
                .iter()
                .map(|d| DeltaReport { point: d.point.to_string(), order: d.order, coeff: (&d.coeff).into() })
                .collect(),
            text: m.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSplines {
    pub g: ExactValue,
    pub members: Vec<MemberReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityEntry {
    pub lambda: i64,
    pub value: String,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MultiplicityReport {
    pub window: (i64, i64),
    pub entries: Vec<MultiplicityEntry>,
    pub all_integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub lambda: i64,
    pub engine: String,
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub oracle: String,
    pub compared: (i64, i64),
    pub passed: bool,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmTerm {
    pub k: usize,
    pub spline: ExactValue,
    pub delta: ExactValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmReport {
    pub polynomial: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub stabilization_order: usize,
    pub terms: Vec<EmTerm>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CsvFile {
    pub name: String,
    #[serde(skip)]
    pub content: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportBundle {
    pub label: String,
    pub d_max: usize,
    pub truncation_order: usize,
    pub eps_sign: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splines: Option<Vec<VertexSplines>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<MultiplicityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub em: Option<EmReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<Vec<CsvFile>>,
    pub passed: bool,
}

impl ReportBundle {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "datum {}  d_max={}  Q={}  eps={}", self.label, self.d_max, self.truncation_order, self.eps_sign);
        if let Some(splines) = &self.splines {
            for (vi, v) in splines.iter().enumerate() {
                let _ = writeln!(out, "vertex {vi} g={}", show(&v.g));
                for m in &v.members {
                    let _ = writeln!(out, "  m{}:", m.k);
                    for line in m.text.lines().map(str::trim).filter(|l| !l.is_empty()) {
                        let _ = writeln!(out, "    {line}");
                    }
                }
            }
        }
        if let Some(m) = &self.multiplicity {
            let _ = writeln!(out, "multiplicity on [{}, {}]", m.window.0, m.window.1);
            let values: Vec<_> = m.entries.iter().map(|e| e.value.as_str()).collect();
            let _ = writeln!(out, "  values: {}", values.join(","));
            for e in m.entries.iter().filter(|e| !e.integral) {
                let _ = writeln!(out, "  non-integral at {}: {}", e.lambda, e.value);
            }
        }
        if let Some(v) = &self.verify {
            let verdict = if v.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "verify: {verdict} against {} on [{}, {}]", v.oracle, v.compared.0, v.compared.1);
            if let Some(x) = &v.first_mismatch {
                let _ = writeln!(out, "  first mismatch at {}: engine {} oracle {}", x.lambda, x.engine, x.oracle);
            }
        }
        if let Some(e) = &self.em {
            let verdict = if e.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "em: {verdict}  LHS={}  RHS={}  stabilization k={}", e.lhs, e.rhs, e.stabilization_order);
            for t in &e.terms {
                let _ = writeln!(out, "  k={}: spline {} delta {}", t.k, show(&t.spline), show(&t.delta));
            }
        }
        if let Some(files) = &self.csv {
            for f in files {
                let _ = writeln!(out, "csv: {}", f.name);
            }
        }
        out
    }
}

fn show(v: &ExactValue) -> String {
    match v {
        ExactValue::Rational(s) => s.clone(),
        ExactValue::Cyclotomic(d) => format!("{{order {}: [{}]}}", d.order, d.coords.join(", ")),
    }
}
