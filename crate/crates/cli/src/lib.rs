//! Job runner behind the `emlindex` binary.
//!
//! A [`JobConfig`] names a datum (builder or inline document), a window and a
//! set of tasks; [`run`] executes them and returns a [`ReportBundle`] whose
//! JSON form is byte-for-byte deterministic.

pub mod config;
pub mod report;

use std::fs;
use std::path::Path;

use thiserror::Error;

use emlindex_core::exact::{int, Rational};
use emlindex_core::oracle::em_direct_sum;
use emlindex_core::xispace::{sample_spline, samples_to_csv};
use emlindex_core::{em_pairing, MultiplicityTable, OracleSpec};

pub use config::{ConfigError, DatumSource, JobConfig, Outputs, Task, Verifier};
pub use report::ReportBundle;
use report::{CsvFile, EmReport, EmTerm, Mismatch, MultiplicityEntry, MultiplicityReport, MemberReport, VerifyReport, VertexSplines};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Engine(#[from] emlindex_core::Error),
    #[error("io: {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl RunError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        RunError::Io { path: path.display().to_string(), source }
    }
}

fn engine<E: Into<emlindex_core::Error>>(e: E) -> RunError {
    RunError::Engine(e.into())
}

impl Verifier {
    pub fn name(&self) -> String {
        match self {
            Verifier::Spec(OracleSpec::P1Character { a }) => format!("p1Character(A={a})"),
            Verifier::Spec(OracleSpec::PartitionDp { weights }) => format!("partitionDP({weights:?})"),
            Verifier::Spec(OracleSpec::RationalSeries { .. }) => "rationalSeries".into(),
            Verifier::SpinorP1 { a, rho } => format!("spinorP1(A={a}, rho={rho})"),
        }
    }

    /// Window actually compared; partition functions are checked on λ ≥ 0.
    pub fn compared_window(&self, lo: i64, hi: i64) -> (i64, i64) {
        match self {
            Verifier::Spec(OracleSpec::PartitionDp { .. } | OracleSpec::RationalSeries { .. }) => (lo.max(0), hi),
            _ => (lo, hi),
        }
    }

    pub fn evaluate(&self, lo: i64, hi: i64) -> Result<MultiplicityTable, RunError> {
        match self {
            Verifier::Spec(o) => o.evaluate(lo, hi).map_err(engine),
            Verifier::SpinorP1 { a, rho } => {
                let ind = |l: i64| (0..=*a).contains(&l) as i64;
                Ok(MultiplicityTable::from_fn(lo, hi, |l| int(ind(l - rho) - ind(l + rho))))
            }
        }
    }
}

pub fn run(config: &JobConfig) -> Result<ReportBundle, RunError> {
    config.validate()?;
    let datum = config.datum.build()?;
    let d_max = datum.d_max();
    let q = config.resolve_truncation_order(d_max)?;
    let (lo, hi) = config.window();
    let eps = config.eps_sign;
    let families = datum.vertex_families(q).map_err(engine)?;

    let mut bundle = ReportBundle {
        label: datum.label.clone(),
        d_max,
        truncation_order: q,
        eps_sign: eps.to_string(),
        splines: None,
        multiplicity: None,
        verify: None,
        em: None,
        csv: None,
        passed: true,
    };

    if config.has(Task::Splines) {
        bundle.splines = Some(
            families
                .iter()
                .map(|(g, fam)| VertexSplines {
                    g: g.into(),
                    members: fam
                        .members
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| !m.is_zero())
                        .map(|(k, m)| MemberReport::new(k, m))
                        .collect(),
                })
                .collect(),
        );
    }

    let needs_table = config.has(Task::Multiplicity) || config.has(Task::Verify) || config.has(Task::Em);
    let table = if needs_table {
        Some(emlindex_core::xispace::multiplicity(&families, lo, hi, eps).map_err(engine)?)
    } else {
        None
    };

    if config.has(Task::Multiplicity) {
        let t = table.as_ref().expect("computed");
        let entries: Vec<_> = t
            .iter()
            .map(|(lambda, v)| MultiplicityEntry { lambda, integral: v.is_integer(), value: v.to_string() })
            .collect();
        let all_integral = entries.iter().all(|e| e.integral);
        bundle.multiplicity = Some(MultiplicityReport { window: (lo, hi), entries, all_integral });
    }

    if config.has(Task::Verify) {
        let verifier = match &config.oracle {
            Some(o) => Verifier::Spec(o.clone()),
            None => config.datum.default_oracle().expect("validated"),
        };
        let (clo, chi) = verifier.compared_window(lo, hi);
        if clo > chi {
            return Err(ConfigError::Invalid(format!("window [{lo}, {hi}] has no λ ≥ 0 to verify")).into());
        }
        let engine_t = table.as_ref().expect("computed").restrict(clo, chi);
        let oracle_t = verifier.evaluate(clo, chi)?;
        let first_mismatch = engine_t
            .first_mismatch(&oracle_t)
            .map(|(lambda, e, o)| Mismatch { lambda, engine: e.to_string(), oracle: o.to_string() });
        let passed = first_mismatch.is_none();
        bundle.passed &= passed;
        bundle.verify = Some(VerifyReport { oracle: verifier.name(), compared: (clo, chi), passed, first_mismatch });
    }

    if config.has(Task::Em) {
        if datum.vertices.len() != 1 {
            return Err(ConfigError::Invalid("the em task needs a datum with the identity vertex only".into()).into());
        }
        let f = config.polynomial()?;
        let em = em_pairing(&families[0].1, &f).map_err(engine)?;
        let lhs = em_direct_sum(table.as_ref().expect("computed"), &f).map_err(engine)?;
        let passed = lhs == em.total;
        bundle.passed &= passed;
        bundle.em = Some(EmReport {
            polynomial: f.iter().map(Rational::to_string).collect(),
            lhs: lhs.to_string(),
            rhs: em.total.to_string(),
            stabilization_order: em.stabilization_order,
            terms: (0..em.spline_terms.len())
                .filter(|&k| !em.contribution(k).is_zero() || k <= em.stabilization_order)
                .map(|k| EmTerm { k, spline: (&em.spline_terms[k]).into(), delta: (&em.delta_terms[k]).into() })
                .collect(),
            passed,
        });
    }

    if config.has(Task::Csv) {
        let step = config.csv_step()?;
        let mut files = Vec::new();
        for (vi, (_, fam)) in families.iter().enumerate() {
            for (k, m) in fam.members.iter().enumerate().take(d_max + 1) {
                if m.spline_is_zero() {
                    continue;
                }
                let rows = sample_spline(m, &int(lo), &int(hi), &step).map_err(engine)?;
                files.push(CsvFile { name: format!("vertex{vi}_m{k}.csv"), content: samples_to_csv(&rows) });
            }
        }
        if let Some(dir) = &config.outputs.csv_dir {
            fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
            for f in &files {
                let path = dir.join(&f.name);
                fs::write(&path, &f.content).map_err(|e| RunError::io(&path, e))?;
            }
        }
        bundle.csv = Some(files);
    }

    if let Some(path) = &config.outputs.report {
        fs::write(path, bundle.to_json()).map_err(|e| RunError::io(path, e))?;
    }
    Ok(bundle)
}
