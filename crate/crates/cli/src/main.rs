use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use emlindex_cli::{run, DatumSource, JobConfig, Task};
use emlindex_core::document::{parse_datum, serialize_datum, DatumDoc};
use emlindex_core::Sign;

#[derive(Parser)]
#[command(name = "emlindex", version, about = "Exact multiplicities of circle-equivariant indices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run tasks on a datum; exits nonzero if any verification fails.
    Run(RunArgs),
    /// Print the JSON document of a built datum.
    Datum(DatumArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    P1,
    Pushed,
    P1Spinor,
}

#[derive(Args)]
struct DatumArgs {
    #[arg(long, value_enum)]
    builder: Option<Builder>,
    #[arg(long = "A", value_name = "A")]
    a: Option<u32>,
    /// Comma-separated positive weights for the pushed builder.
    #[arg(long, value_delimiter = ',')]
    weights: Vec<i64>,
    #[arg(long, default_value_t = 1)]
    rho: i64,
    /// Polarization of the P¹ denominators.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    polarization: Sign,
    /// Inline datum document (JSON).
    #[arg(long, conflicts_with = "builder")]
    datum: Option<PathBuf>,
}

impl DatumArgs {
    fn source(&self) -> Result<Option<DatumSource>> {
        if let Some(path) = &self.datum {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let datum = parse_datum(&text).with_context(|| format!("in {}", path.display()))?;
            return Ok(Some(DatumSource::Inline { datum: DatumDoc::from(&datum) }));
        }
        let Some(builder) = self.builder else { return Ok(None) };
        let need_a = || self.a.context("--A is required for this builder");
        Ok(Some(match builder {
            Builder::P1 => DatumSource::P1 { a: need_a()?, polarization: self.polarization },
            Builder::P1Spinor => DatumSource::P1Spinor { a: need_a()?, rho: self.rho },
            Builder::Pushed => {
                if self.weights.is_empty() {
                    bail!("--weights is required for the pushed builder");
                }
                DatumSource::Pushed { weights: self.weights.clone() }
            }
        }))
    }
}

#[derive(Args)]
struct RunArgs {
    /// Job configuration document; flags given here override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    datum: DatumArgs,
    /// Tasks: splines, multiplicity, verify, em, csv (repeatable or comma-separated).
    #[arg(long = "task", value_delimiter = ',')]
    tasks: Vec<Task>,
    /// Weight window `lo..hi`, inclusive.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    /// Ascending polynomial coefficients for the em task, e.g. `0,0,1` for ξ².
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    poly: Vec<String>,
    #[arg(long = "Q", value_name = "Q")]
    q: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<Sign>,
    #[arg(long)]
    csv_step: Option<String>,
    /// Write the machine-readable report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for CSV samples.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print the JSON report instead of the text report.
    #[arg(long)]
    json: bool,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .char_indices()
        .skip(1)
        .find(|&(i, _)| s[i..].starts_with(".."))
        .map(|(i, _)| (&s[..i], &s[i + 2..]))
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|e| format!("window start: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("window end: {e}"))?;
    Ok((lo, hi))
}

impl RunArgs {
    fn config(&self) -> Result<JobConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                JobConfig::from_json(&text).with_context(|| format!("in {}", path.display()))?
            }
            None => {
                let source = self.datum.source()?.context("either --config or --builder/--datum is required")?;
                JobConfig::new(source, Vec::new())
            }
        };
        if self.config.is_some() {
            if let Some(source) = self.datum.source()? {
                cfg.datum = source;
            }
        }
        if !self.tasks.is_empty() {
            cfg.tasks = self.tasks.clone();
        }
        if cfg.tasks.is_empty() {
            cfg.tasks = vec![Task::Multiplicity];
        }
        if self.window.is_some() {
            cfg.window = self.window;
        }
        if !self.poly.is_empty() {
            cfg.em_polynomial = Some(self.poly.clone());
        }
        if self.q.is_some() {
            cfg.truncation_order = self.q;
        }
        if let Some(eps) = self.eps {
            cfg.eps_sign = eps;
        }
        if self.csv_step.is_some() {
            cfg.csv_step = self.csv_step.clone();
        }
        if self.out.is_some() {
            cfg.outputs.report = self.out.clone();
        }
        if self.csv.is_some() {
            cfg.outputs.csv_dir = self.csv.clone();
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run_command(&args),
        Command::Datum(args) => datum_command(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", chain_message(&e));
            ExitCode::from(2)
        }
    }
}

/// Joins the error chain, skipping causes already quoted by their parent.
fn chain_message(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !out.contains(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
    }
    out
}

fn run_command(args: &RunArgs) -> Result<bool> {
    let config = args.config()?;
    let bundle = run(&config)?;
    if args.json {
        print!("{}", bundle.to_json());
    } else {
        print!("{}", bundle.human());
    }
    Ok(bundle.passed)
}

fn datum_command(args: &DatumArgs) -> Result<bool> {
    let source = args.source()?.context("--builder or --datum is required")?;
    let datum = source.build()?;
    println!("{}", serialize_datum(&datum));
    Ok(true)
}
