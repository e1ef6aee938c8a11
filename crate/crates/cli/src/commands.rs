use std::fmt;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use contextspace::io::dump_json;
use contextspace::tables::no_signaling_report;
use contextspace::{
    build_space, convergence_check, correlation_report, estimate_partial, parse_family, read_records,
    simulate as run_trials, write_records, ContextFamily, ContextWeights, EmpiricalEstimate, Error, KolmogorovSpace,
    SimulationConfig, TrialRecord,
};
use serde_json::{json, Value};

use crate::render;
use crate::WeightArgs;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
        }
    }

    /// 1 for bad input, 2 when an internal consistency check failed.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// A report in both renderings.
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn select(self, json: bool) -> String {
        if json {
            format!("{:#}\n", self.json)
        } else {
            self.text
        }
    }
}

fn load_family(path: &Path) -> Result<ContextFamily, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(parse_family(&text)?)
}

fn parse_weight_list(flag: &str, raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{flag}: {s:?} is not a number")))
        })
        .collect()
}

fn weights_for(family: &ContextFamily, args: &WeightArgs) -> Result<ContextWeights, CliError> {
    let uniform = ContextWeights::uniform(family.m(), family.n());
    let u = match &args.weights_a {
        Some(raw) => parse_weight_list("--weights-a", raw)?,
        None => uniform.u().to_vec(),
    };
    let v = match &args.weights_b {
        Some(raw) => parse_weight_list("--weights-b", raw)?,
        None => uniform.v().to_vec(),
    };
    Ok(ContextWeights::new(u, v)?)
}

fn load_space(path: &Path, args: &WeightArgs) -> Result<KolmogorovSpace, CliError> {
    let family = load_family(path)?;
    let weights = weights_for(&family, args)?;
    Ok(build_space(family, weights)?)
}

pub fn build(family: &Path, weights: &WeightArgs, out: Option<&Path>) -> Result<String, CliError> {
    let space = load_space(family, weights)?;
    let dump = dump_json(&space)? + "\n";
    match out {
        None => Ok(dump),
        Some(path) => {
            fs::write(path, &dump).map_err(io_err(path))?;
            Ok(format!("wrote {} atoms to {}\n", space.atoms().len(), path.display()))
        }
    }
}

pub fn analyze(family: &Path, weights: &WeightArgs) -> Result<Report, CliError> {
    let space = load_space(family, weights)?;
    let report = correlation_report(&space)?;
    Ok(Report {
        text: render::correlation_report(&report, space.m(), space.n()),
        json: serde_json::to_value(&report).map_err(Error::from)?,
    })
}

fn estimate_section(
    records: &[TrialRecord],
    m: usize,
    n: usize,
) -> Result<(String, Value, EmpiricalEstimate), CliError> {
    let est = estimate_partial(records, m, n)?;
    let chsh = est.max_chsh();
    let bounds = est.bounds();
    let warnings: Vec<String> = est
        .empty_contexts()
        .into_iter()
        .map(|(i, j)| Error::EmptyContext { i, j }.to_string())
        .collect();
    let mut text = render::estimate(&est);
    text += &render::chsh_and_bounds(chsh.as_ref(), bounds.as_ref(), m, n, "empirical ");
    for w in &warnings {
        text += &format!("warning: {w}\n");
    }
    let value = json!({
        "estimate": &est,
        "chsh": chsh,
        "bounds": bounds,
        "warnings": warnings,
    });
    Ok((text, value, est))
}

pub fn simulate(
    family: &Path,
    weights: &WeightArgs,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
    tolerance: f64,
) -> Result<Report, CliError> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(CliError::Usage(format!(
            "--tolerance must be non-negative, got {tolerance}"
        )));
    }
    let space = load_space(family, weights)?;
    let config = SimulationConfig::new(space.family().clone(), space.weights().clone(), trials, seed)?;
    let records: Vec<TrialRecord> = run_trials(&config).collect();
    if let Some(path) = out {
        let file = File::create(path).map_err(io_err(path))?;
        let mut w = BufWriter::new(file);
        write_records(records.iter().copied(), &mut w).map_err(|e| match e {
            Error::Io(source) => io_err(path)(source),
            other => other.into(),
        })?;
        w.flush().map_err(io_err(path))?;
    }
    let (m, n) = (space.m(), space.n());
    let (mut text, mut value, est) = estimate_section(&records, m, n)?;
    let convergence = convergence_check(&est, &space, tolerance)?;
    text = format!("trials: {trials}\nseed: {seed}\n") + &text + &render::convergence(&convergence);
    value["trials"] = json!(trials);
    value["seed"] = json!(seed);
    value["convergence"] = serde_json::to_value(&convergence).map_err(Error::from)?;
    if let Some(path) = out {
        text += &format!("records written to {}\n", path.display());
    }
    Ok(Report { text, json: value })
}

pub fn ingest(records: &Path, m: usize, n: usize) -> Result<Report, CliError> {
    let file = File::open(records).map_err(io_err(records))?;
    let records = read_records(BufReader::new(file), m, n)?;
    let (text, value, _) = estimate_section(&records, m, n)?;
    Ok(Report {
        text: format!("trials: {}\n", records.len()) + &text,
        json: value,
    })
}

pub fn check(family: &Path, weights: &WeightArgs) -> Result<Report, CliError> {
    let space = load_space(family, weights)?;
    let signaling = no_signaling_report(space.family());
    let independence = space.independence_check_eta();
    Ok(Report {
        text: render::check(&signaling, &independence),
        json: json!({
            "valid": true,
            "no_signaling": signaling,
            "independence": independence,
        }),
    })
}
