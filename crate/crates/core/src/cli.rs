//! Command-line front end and JSON reports.
//!
//! Exit codes: 0 for success, 1 when the inputs parse but violate a
//! precondition of the requested command, 2 for parse and usage errors.

use std::io::Write;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::connect::{image_connectedness_check, RealSubset};
use crate::continuity::{
    defect_at, defect_profile, gap_certificate, is_qr_continuous, trivial_continuity_bound,
    FuzzyParams,
};
use crate::error::Error as CoreError;
use crate::function::SampledFunction;
use crate::io::{read_dataset, DatasetKind, IoError, Payload};
use crate::set::DiscreteSet;
use crate::solver::{discrete_intermediate, fuzzy_intermediate, CodomainGrid, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Lower/upper inner bounds and uniformity of a set
    Stats,
    /// Interior gaps and outer rays of a set
    Gaps,
    /// Continuity defect at one point (--a) or at every point
    Defect,
    /// (q, r)-continuity verdict
    Continuity,
    /// Intermediate value solve (fuzzy, or exact with --exact)
    Solve,
    /// r-connected components of a point set or interval union
    Components,
    /// Inverse of a strictly monotone function
    Invert,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Stats => "stats",
            Command::Gaps => "gaps",
            Command::Defect => "defect",
            Command::Continuity => "continuity",
            Command::Solve => "solve",
            Command::Components => "components",
            Command::Invert => "invert",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "fuzzycont", version, about = "Fuzzy continuity and discrete intermediate values on sampled data")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input file, `-` for standard input
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    /// Duplicate tolerance for input points
    #[arg(long, default_value_t = 0.0)]
    pub tol: f64,
    #[arg(long)]
    pub target: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, conflicts_with = "codomain")]
    pub codomain_spacing: Option<f64>,
    /// Set file listing the admissible values
    #[arg(long)]
    pub codomain: Option<String>,
    /// Require an exact hit under the discrete grid preconditions
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PreconditionViolated,
    ParseError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PreconditionViolated => 1,
            Status::ParseError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain JSON")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nstatus: {}\n", self.command, json!(self.status).as_str().unwrap());
        flatten_text(&self.results, "", &mut out);
        out
    }
}

fn flatten_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            for (i, item) in items.iter().enumerate() {
                flatten_text(item, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

/// Why a command stopped before producing results.
enum Failure {
    Precondition(String),
    Usage(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn require(v: Option<f64>, flag: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this command")))
}

fn params(cli: &Cli) -> Result<FuzzyParams, Failure> {
    FuzzyParams::new(require(cli.q, "q")?, require(cli.r, "r")?)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn echo_inputs(cli: &Cli) -> Value {
    let mut m = Map::new();
    m.insert("input".into(), json!(cli.input));
    m.insert("tol".into(), json!(cli.tol));
    for (name, v) in [
        ("q", cli.q),
        ("r", cli.r),
        ("target", cli.target),
        ("a", cli.a),
        ("b", cli.b),
        ("codomain_spacing", cli.codomain_spacing),
    ] {
        if let Some(v) = v {
            m.insert(name.into(), json!(v));
        }
    }
    if let Some(path) = &cli.codomain {
        m.insert("codomain".into(), json!(path));
    }
    if cli.command == Command::Solve {
        m.insert("exact".into(), json!(cli.exact));
    }
    Value::Object(m)
}

fn load_set(cli: &Cli) -> Result<DiscreteSet, Failure> {
    match read_dataset(&cli.input, DatasetKind::Set, cli.tol)?.payload {
        Payload::Set(s) => Ok(s),
        _ => unreachable!("kind set"),
    }
}

fn load_function(cli: &Cli) -> Result<SampledFunction, Failure> {
    match read_dataset(&cli.input, DatasetKind::Function, cli.tol)?.payload {
        Payload::Function(f) => Ok(f),
        _ => unreachable!("kind function"),
    }
}

fn load_subset(cli: &Cli) -> Result<RealSubset, Failure> {
    match read_dataset(&cli.input, DatasetKind::Subset, cli.tol)?.payload {
        Payload::Subset(s) => Ok(s),
        _ => unreachable!("kind subset"),
    }
}

fn pairs_json(pairs: impl Iterator<Item = (f64, f64)>) -> Value {
    Value::Array(pairs.map(|(a, b)| json!([a, b])).collect())
}

fn witness_json(w: &Witness) -> Value {
    serde_json::to_value(w).expect("witness serializes")
}

fn stats(cli: &Cli) -> Result<Value, Failure> {
    let set = load_set(cli)?;
    let st = set.stats();
    Ok(json!({
        "count": set.len(),
        "min": set.min(),
        "max": set.max(),
        "lib": st.lib,
        "uib": st.uib,
        "uniform": st.uniform,
        "spacing": st.spacing,
        "trivial_continuity_bound": trivial_continuity_bound(&set),
    }))
}

fn gaps(cli: &Cli) -> Result<Value, Failure> {
    let set = load_set(cli)?;
    let report = set.gaps();
    Ok(json!({
        "interior_gaps": pairs_json(report.interior_gaps.iter().map(|g| (g.lo, g.hi))),
        "left_ray": { "hi": report.left_ray.hi },
        "right_ray": { "lo": report.right_ray.lo },
    }))
}

fn defect(cli: &Cli) -> Result<Value, Failure> {
    let f = load_function(cli)?;
    let q = require(cli.q, "q")?;
    if !(q >= 0.0) {
        return Err(Failure::Usage(format!("--q must be nonnegative, got {q}")));
    }
    if let Some(a) = cli.a {
        return Ok(json!({ "a": a, "defect": defect_at(&f, a, q)? }));
    }
    let p = defect_profile(&f, q);
    Ok(json!({
        "global": p.global,
        "argmax": p.argmax,
        "per_point": pairs_json(p.per_point.iter().map(|d| (d.a, d.defect))),
    }))
}

fn continuity(cli: &Cli) -> Result<Value, Failure> {
    let f = load_function(cli)?;
    let params = params(cli)?;
    let profile = defect_profile(&f, params.q());
    let failing: Vec<f64> = profile
        .per_point
        .iter()
        .filter(|d| d.defect > params.r())
        .map(|d| d.a)
        .collect();
    let certificate = gap_certificate(&f).ok();
    Ok(json!({
        "continuous": is_qr_continuous(&f, params),
        "global_defect": profile.global,
        "argmax": profile.argmax,
        "failing_points": failing,
        "image_connectedness": image_connectedness_check(&f, params),
        "gap_certificate": certificate,
    }))
}

fn solve(cli: &Cli) -> Result<Value, Failure> {
    let f = load_function(cli)?;
    let target = require(cli.target, "target")?;
    let a = cli.a.unwrap_or(f.domain().min());
    let b = cli.b.unwrap_or(f.domain().max());
    let w = if cli.exact {
        let params = params(cli)?;
        let grid = match (&cli.codomain_spacing, &cli.codomain) {
            (Some(v), None) => {
                CodomainGrid::uniform(*v).map_err(|e| Failure::Usage(e.to_string()))?
            }
            (None, Some(path)) => match read_dataset(path, DatasetKind::Set, cli.tol)?.payload {
                Payload::Set(s) => CodomainGrid::Explicit(s),
                _ => unreachable!("kind set"),
            },
            _ => {
                return Err(Failure::Usage(
                    "--exact needs --codomain-spacing or --codomain".into(),
                ))
            }
        };
        discrete_intermediate(&f, &grid, a, b, target, params)?
    } else {
        fuzzy_intermediate(&f, a, b, target)?
    };
    Ok(json!({ "a": a, "b": b, "witness": witness_json(&w) }))
}

fn components(cli: &Cli) -> Result<Value, Failure> {
    let set = load_subset(cli)?;
    let r = require(cli.r, "r")?;
    let d = set.r_components(r);
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| pairs_json(c.pieces().iter().map(|p| (p.lo, p.hi))))
        .collect();
    Ok(json!({
        "r": r,
        "connected": d.components.len() == 1,
        "count": d.components.len(),
        "components": comps,
    }))
}

fn invert(cli: &Cli) -> Result<Value, Failure> {
    let f = load_function(cli)?;
    let inv = f.invert_monotone()?;
    Ok(json!({
        "monotone": f.monotone_class(),
        "inverse": pairs_json(inv.pairs()),
        "certificate": gap_certificate(&f)?,
        "inverse_certificate": gap_certificate(&inv)?,
    }))
}

/// Executes a parsed command line and builds its report.
pub fn execute(cli: &Cli) -> Report {
    let outcome = match cli.command {
        Command::Stats => stats(cli),
        Command::Gaps => gaps(cli),
        Command::Defect => defect(cli),
        Command::Continuity => continuity(cli),
        Command::Solve => solve(cli),
        Command::Components => components(cli),
        Command::Invert => invert(cli),
    };
    let (status, results) = match outcome {
        Ok(v) => (Status::Ok, v),
        Err(Failure::Precondition(msg)) => (Status::PreconditionViolated, json!({ "error": msg })),
        Err(Failure::Usage(msg)) => (Status::ParseError, json!({ "error": msg })),
    };
    Report {
        command: cli.command.name().to_string(),
        inputs: echo_inputs(cli),
        results,
        status,
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// rendered report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let report = execute(&cli);
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(body.as_bytes());
    report.status.exit_code()
}
