//! Command-line front end.
//!
//! Every subcommand accepts the same flag set; flags a command does not use
//! are ignored. A flat `key = value` file given with `--config` supplies
//! defaults for any long flag (dashes or underscores) plus an optional
//! `command` key; flags on the command line take precedence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::model::{FieldTheory, RenyiIndex, DEFAULT_C_T};
use crate::oracle::{perturbative_check, renyi_subsystem_entropy, LatticeSpec, PerturbativeCheck, PerturbativeReport, Subsystem};
use crate::quad::McConfig;
use crate::replica::{
    fit_power_law, renyi_cubic, renyi_ssb, renyi_ssb_pi, renyi_unbroken, short_range_fraction, xcheck_momentum_with,
    EntropyResult, Line, PowerLawFit, XCHECK_DEFAULT_TOLERANCE,
};

pub const SEED_ENV: &str = "FIELD_ENTANGLE_SEED";
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

pub const CSV_COLUMNS: [&str; 11] = [
    "command",
    "alpha",
    "N",
    "lambda",
    "mass",
    "cutoff",
    "value",
    "error",
    "contribution_DKK",
    "contribution_DDKK",
    "seed",
];

#[derive(Parser, Debug)]
#[command(name = "field-entangle", version, about = "Rényi entanglement entropy between interacting scalar fields")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// σ-π model with a cubic vertex
    Cubic(RunArgs),
    /// O(N) model, unbroken phase
    Unbroken(RunArgs),
    /// O(N) model, broken phase, σ focused
    Ssb(RunArgs),
    /// O(N) model, broken phase, one π focused
    SsbPi(RunArgs),
    /// Unbroken-phase cutoff sweep with a power-law fit
    ScalingFit(RunArgs),
    /// Momentum-space Monte Carlo against the radial evaluation
    Xcheck(RunArgs),
    /// Exact entropy of two bilinearly coupled lattice fields
    Oracle(RunArgs),
    /// Share of the half-space integral beyond a separation
    ShortRange(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cubic(_) => "cubic",
            Command::Unbroken(_) => "unbroken",
            Command::Ssb(_) => "ssb",
            Command::SsbPi(_) => "ssb-pi",
            Command::ScalingFit(_) => "scaling-fit",
            Command::Xcheck(_) => "xcheck",
            Command::Oracle(_) => "oracle",
            Command::ShortRange(_) => "short-range",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Cubic(a)
            | Command::Unbroken(a)
            | Command::Ssb(a)
            | Command::SsbPi(a)
            | Command::ScalingFit(a)
            | Command::Xcheck(a)
            | Command::Oracle(a)
            | Command::ShortRange(a) => a,
        }
    }
}

const COMMAND_NAMES: [&str; 8] = ["cubic", "unbroken", "ssb", "ssb-pi", "scaling-fit", "xcheck", "oracle", "short-range"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Mass,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramKind {
    Ddkk,
    Dkk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubsystemArg {
    Phi,
    Chi,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// Flat `key = value` file with defaults for any flag
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Rényi index α ≥ 2 [default: 2]
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Number of fields N [default: 2]
    #[arg(long = "n")]
    pub n: Option<u32>,
    /// Coupling λ
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Mass m (unbroken, cubic) or μ (broken) [default: 1]
    #[arg(long)]
    pub mass: Option<f64>,
    /// Cutoff Λ, also the Pauli-Villars regulator mass
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Vacuum expectation value of the cubic model [default: 1]
    #[arg(long)]
    pub vev: Option<f64>,
    /// Renormalised coupling λ_u of the broken phase [default: λ]
    #[arg(long)]
    pub lambda_u: Option<f64>,
    /// Constant C_t of the shift scale [default: 1]
    #[arg(long = "c-t")]
    pub c_t: Option<f64>,
    /// Comma-separated cutoffs (or couplings g for `oracle`)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub sweep: Option<Vec<f64>>,
    /// Monte Carlo samples [default: 1000000]
    #[arg(long)]
    pub samples: Option<u64>,
    /// Seed; falls back to FIELD_ENTANGLE_SEED, then 1
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative Monte Carlo tolerance [default: 0.25]
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Separation R for `short-range` [default: 10/Λ]
    #[arg(long)]
    pub range: Option<f64>,
    /// Diagram for `short-range` [default: ddkk]
    #[arg(long, value_enum)]
    pub diagram: Option<DiagramKind>,
    /// Lattice dimension [default: 1]
    #[arg(long)]
    pub dims: Option<u32>,
    /// Sites per dimension [default: 32]
    #[arg(long)]
    pub sites: Option<usize>,
    /// Lattice mass of φ [default: 1]
    #[arg(long)]
    pub mass_phi: Option<f64>,
    /// Lattice mass of χ [default: m_φ]
    #[arg(long)]
    pub mass_chi: Option<f64>,
    /// Bilinear coupling g
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Field kept by the reduction [default: phi]
    #[arg(long, value_enum)]
    pub subsystem: Option<SubsystemArg>,
    /// Run the order, replica-ratio and volume-law sweep for `oracle`
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Report energies in units of the mass or as given [default: mass]
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    /// Worker threads; results do not depend on it
    #[arg(long)]
    pub threads: Option<usize>,
}

/// One computed point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub alpha: Option<u32>,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub lambda: Option<f64>,
    pub mass: Option<f64>,
    pub cutoff: Option<f64>,
    pub value: f64,
    pub error: f64,
    pub contributions: BTreeMap<String, f64>,
    pub seed: u64,
    #[serde(flatten)]
    pub extra: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: &'static str,
    pub units: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass_scale: Option<f64>,
    pub threads: Option<usize>,
    pub inputs: Map<String, Value>,
    pub results: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<PowerLawFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<PerturbativeReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let wrap = |e: csv::Error| Error::Config(format!("cannot write CSV: {e}"));
        w.write_record(CSV_COLUMNS).map_err(wrap)?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        for r in &self.results {
            w.write_record([
                self.command.to_string(),
                opt(r.alpha.map(|a| a.to_string())),
                opt(r.n.map(|n| n.to_string())),
                opt(r.lambda.map(|v| v.to_string())),
                opt(r.mass.map(|v| v.to_string())),
                opt(r.cutoff.map(|v| v.to_string())),
                r.value.to_string(),
                r.error.to_string(),
                opt(r.contributions.get("DKK").map(|v| v.to_string())),
                opt(r.contributions.get("DDKK").map(|v| v.to_string())),
                r.seed.to_string(),
            ])
            .map_err(wrap)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(format!("cannot write CSV: {e}")))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }

    /// The echoed inputs as a config file that reproduces this run.
    pub fn to_config(&self) -> String {
        let mut out = format!("command = {}\n", self.command);
        for (k, v) in &self.inputs {
            let text = match v {
                Value::Array(items) => items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k} = {text}\n"));
        }
        out
    }
}

fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected `key = value`, got `{raw}`", i + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Error::Config(format!("config line {}: empty key", i + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Splices the entries of a `--config` file in front of the explicit flags.
fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            path = argv.get(i + 1).cloned();
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.to_string_lossy())))?;
    let entries = parse_config(&text)?;

    let mut rest: Vec<OsString> = argv.iter().skip(1).cloned().collect();
    let cmd_pos = rest.iter().position(|a| COMMAND_NAMES.contains(&a.to_string_lossy().as_ref()));
    let command = match cmd_pos {
        Some(p) => rest.remove(p),
        None => entries
            .iter()
            .find(|(k, _)| k == "command")
            .map(|(_, v)| OsString::from(v))
            .ok_or_else(|| Error::Config("no subcommand given on the command line or in the config".into()))?,
    };

    let mut out = vec![argv.first().cloned().unwrap_or_else(|| "field-entangle".into()), command];
    for (k, v) in entries {
        match k.as_str() {
            "command" => {}
            "check" => match v.as_str() {
                "true" => out.push("--check".into()),
                "false" => {}
                _ => return Err(Error::Config(format!("check must be true or false, got `{v}`"))),
            },
            _ => out.push(format!("--{k}={v}").into()),
        }
    }
    out.extend(rest);
    Ok(out)
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("missing --{flag}")))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

struct Inputs(Map<String, Value>);

impl Inputs {
    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.0.insert(key.to_string(), v.into());
    }
}

/// Converts energies of a record to units of `scale`.
fn rescale(r: &mut Record, scale: f64, value_power: i32, extra_powers: &[(&str, i32)]) {
    let v = scale.powi(value_power);
    r.value /= v;
    r.error /= v;
    for c in r.contributions.values_mut() {
        *c /= v;
    }
    r.mass = r.mass.map(|m| m / scale);
    r.cutoff = r.cutoff.map(|c| c / scale);
    for (key, p) in extra_powers {
        if let Some(x) = r.extra.get_mut(*key) {
            *x /= scale.powi(*p);
        }
    }
}

fn entropy_record(e: &EntropyResult, n: Option<u32>, lambda: f64, mass: f64, seed: u64) -> Record {
    Record {
        alpha: Some(e.alpha.get()),
        n,
        lambda: Some(lambda),
        mass: Some(mass),
        cutoff: Some(e.cutoff),
        value: e.value_per_volume,
        error: e.error,
        contributions: e.contributions.iter().map(|c| (c.label.clone(), c.value)).collect(),
        seed,
        extra: BTreeMap::new(),
    }
}

fn cutoffs(a: &RunArgs, inputs: &mut Inputs) -> Result<Vec<f64>> {
    match (&a.sweep, a.cutoff) {
        (Some(s), _) => {
            inputs.put("sweep", s.clone());
            Ok(s.clone())
        }
        (None, Some(c)) => {
            inputs.put("cutoff", c);
            Ok(vec![c])
        }
        (None, None) => Err(Error::Config("missing --cutoff (or --sweep)".into())),
    }
}

/// Runs a parsed command and returns its report.
pub fn execute(command: &Command) -> Result<Report> {
    let a = command.args();
    if let Some(t) = a.threads {
        if t == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
        return pool.install(|| execute_inner(command));
    }
    execute_inner(command)
}

fn execute_inner(command: &Command) -> Result<Report> {
    let a = command.args();
    let mut inputs = Inputs(Map::new());
    let seed = resolve_seed(a.seed)?;
    let units = a.units.unwrap_or(Units::Mass);
    let format = a.format.unwrap_or(Format::Json);
    let alpha_raw = a.alpha.unwrap_or(2);
    let alpha = RenyiIndex::new(alpha_raw)?;
    inputs.put("alpha", alpha_raw);

    let mut fit = None;
    let mut check = None;
    let mut mass_scale = None;
    let mut results = Vec::new();
    // powers of the mass scale carried by value and by any extra fields
    let mut value_power = 3;
    let mut extra_powers: Vec<(&str, i32)> = Vec::new();

    match command {
        Command::Oracle(_) => {
            let dims = a.dims.unwrap_or(1);
            let sites = a.sites.unwrap_or(32);
            let m_phi = a.mass_phi.unwrap_or(1.0);
            let m_chi = a.mass_chi.unwrap_or(m_phi);
            let subsystem = match a.subsystem.unwrap_or(SubsystemArg::Phi) {
                SubsystemArg::Phi => Subsystem::Phi,
                SubsystemArg::Chi => Subsystem::Chi,
            };
            inputs.put("dims", dims);
            inputs.put("sites", sites);
            inputs.put("mass-phi", m_phi);
            inputs.put("mass-chi", m_chi);
            inputs.put("subsystem", if subsystem == Subsystem::Phi { "phi" } else { "chi" });
            let couplings = match (&a.sweep, a.g) {
                (Some(s), _) => {
                    inputs.put("sweep", s.clone());
                    s.clone()
                }
                (None, Some(g)) => {
                    inputs.put("g", g);
                    vec![g]
                }
                (None, None) if a.check => Vec::new(),
                (None, None) => return Err(Error::Config("missing --g (or --sweep)".into())),
            };
            for &g in &couplings {
                let spec = LatticeSpec::new(dims, sites, m_phi, m_chi, g)?;
                results.push(Record {
                    alpha: Some(alpha_raw),
                    n: None,
                    lambda: Some(g),
                    mass: Some(m_phi),
                    cutoff: None,
                    value: renyi_subsystem_entropy(&spec, alpha_raw, subsystem)?,
                    error: 0.0,
                    contributions: BTreeMap::new(),
                    seed,
                    extra: BTreeMap::from([("sites".to_string(), sites as f64)]),
                });
            }
            if a.check {
                inputs.put("check", true);
                let base = LatticeSpec::new(dims, sites, m_phi, m_chi, 0.0)?;
                let mut plan = PerturbativeCheck::default();
                if let Some(s) = &a.sweep {
                    plan.couplings = s.clone();
                }
                check = Some(perturbative_check(&base, alpha_raw, &plan)?);
            }
        }
        Command::Cubic(_) => {
            let lambda = required(a.lambda, "lambda")?;
            let mass = a.mass.unwrap_or(1.0);
            let vev = a.vev.unwrap_or(1.0);
            inputs.put("lambda", lambda);
            inputs.put("mass", mass);
            inputs.put("vev", vev);
            for cutoff in cutoffs(a, &mut inputs)? {
                let e = renyi_cubic(alpha, lambda, vev, mass, cutoff)?;
                let mut r = entropy_record(&e, None, lambda, mass, seed);
                r.extra.insert("vev".into(), vev);
                results.push(r);
            }
            mass_scale = Some(mass);
            extra_powers.push(("vev", 1));
        }
        _ => {
            let n = a.n.unwrap_or(2);
            let lambda = required(a.lambda, "lambda")?;
            let mass = a.mass.unwrap_or(1.0);
            inputs.put("n", n);
            inputs.put("lambda", lambda);
            inputs.put("mass", mass);
            mass_scale = Some(mass);
            let broken = matches!(command, Command::Ssb(_) | Command::SsbPi(_));
            let (lambda_u, c_t) = if broken {
                let lu = a.lambda_u.unwrap_or(lambda);
                let ct = a.c_t.unwrap_or(DEFAULT_C_T);
                inputs.put("lambda-u", lu);
                inputs.put("c-t", ct);
                (lu, ct)
            } else {
                (lambda, DEFAULT_C_T)
            };
            let samples = a.samples.unwrap_or(DEFAULT_SAMPLES);
            let tolerance = a.tolerance.unwrap_or(XCHECK_DEFAULT_TOLERANCE);
            let diagram = a.diagram.unwrap_or(DiagramKind::Ddkk);
            match command {
                Command::Xcheck(_) => {
                    inputs.put("samples", samples);
                    inputs.put("tolerance", tolerance);
                    inputs.put("seed", seed);
                }
                Command::ShortRange(_) => {
                    inputs.put("diagram", if diagram == DiagramKind::Ddkk { "ddkk" } else { "dkk" });
                    if let Some(r) = a.range {
                        inputs.put("range", r);
                    }
                }
                _ => {}
            }
            let sweep = cutoffs(a, &mut inputs)?;
            if matches!(command, Command::ScalingFit(_)) && a.sweep.is_none() {
                return Err(Error::Config("scaling-fit needs --sweep".into()));
            }
            for cutoff in sweep {
                let model = if broken {
                    FieldTheory::broken(n, lambda, mass, cutoff)?
                } else {
                    FieldTheory::unbroken(n, lambda, mass, cutoff)?
                };
                let record = match command {
                    Command::Unbroken(_) | Command::ScalingFit(_) => {
                        entropy_record(&renyi_unbroken(alpha, &model)?, Some(n), lambda, mass, seed)
                    }
                    Command::Ssb(_) | Command::SsbPi(_) => {
                        let e = if matches!(command, Command::Ssb(_)) {
                            renyi_ssb(alpha, &model, lambda_u, c_t)?
                        } else {
                            renyi_ssb_pi(alpha, &model, lambda_u, c_t)?
                        };
                        let p = model.ssb_parameters(lambda_u, c_t)?;
                        let mut r = entropy_record(&e, Some(n), lambda, mass, seed);
                        r.extra.insert("lambda_u".into(), lambda_u);
                        r.extra.insert("shift_scale".into(), p.shift_scale);
                        r.extra.insert("m_sigma_eff".into(), p.m_sigma_eff);
                        r.extra.insert("m_pi_eff".into(), p.m_pi_eff);
                        r
                    }
                    Command::Xcheck(_) => {
                        let cfg = McConfig::new(samples, seed).with_tolerance(Some(tolerance));
                        let mc = xcheck_momentum_with(alpha, &model, &cfg)?;
                        let radial = renyi_unbroken(alpha, &model)?;
                        let mut r = entropy_record(&mc, Some(n), lambda, mass, seed);
                        let sigma = (mc.value_per_volume - radial.value_per_volume).abs() / (mc.error + radial.error);
                        r.extra.insert("reference_value".into(), radial.value_per_volume);
                        r.extra.insert("reference_error".into(), radial.error);
                        r.extra.insert("deviation_sigma".into(), sigma);
                        r.extra.insert("samples".into(), samples as f64);
                        r
                    }
                    Command::ShortRange(_) => {
                        let range = a.range.unwrap_or(10.0 / cutoff);
                        let focused = Line::regulated(mass, cutoff);
                        let lines = match diagram {
                            DiagramKind::Ddkk => vec![focused; 4],
                            DiagramKind::Dkk => vec![focused; 3],
                        };
                        let fraction = short_range_fraction(&lines, cutoff, range)?;
                        Record {
                            alpha: None,
                            n: Some(n),
                            lambda: Some(lambda),
                            mass: Some(mass),
                            cutoff: Some(cutoff),
                            value: fraction,
                            error: 0.0,
                            contributions: BTreeMap::new(),
                            seed,
                            extra: BTreeMap::from([("range".to_string(), range)]),
                        }
                    }
                    _ => unreachable!("handled above"),
                };
                results.push(record);
            }
            if matches!(command, Command::ShortRange(_)) {
                value_power = 0;
                extra_powers.push(("range", -1));
            }
            if broken {
                extra_powers.extend([("shift_scale", 1), ("m_sigma_eff", 1), ("m_pi_eff", 1)]);
            }
            if matches!(command, Command::Xcheck(_)) {
                extra_powers.extend([("reference_value", 3), ("reference_error", 3)]);
            }
        }
    }

    let units_label = match (command, units, mass_scale) {
        (Command::Oracle(_), _, _) => "lattice",
        (_, Units::Mass, Some(m)) if m > 0.0 => {
            for r in &mut results {
                rescale(r, m, value_power, &extra_powers);
            }
            "mass"
        }
        _ => "raw",
    };
    if let Command::ScalingFit(_) = command {
        let points: Vec<(f64, f64)> = results.iter().map(|r| (r.cutoff.unwrap_or(f64::NAN), r.value)).collect();
        fit = Some(fit_power_law(&points)?);
    }
    if !matches!(command, Command::Xcheck(_)) {
        inputs.put("seed", seed);
    }
    inputs.put("units", if units == Units::Mass { "mass" } else { "raw" });
    inputs.put("format", if format == Format::Json { "json" } else { "csv" });
    if let Some(t) = a.threads {
        inputs.put("threads", t);
    }

    Ok(Report {
        version: env!("CARGO_PKG_VERSION"),
        command: command.name(),
        units: units_label,
        mass_scale: if units_label == "mass" { mass_scale } else { None },
        threads: a.threads,
        inputs: inputs.0,
        results,
        fit,
        check,
    })
}

/// Parses `argv`, runs the command and writes the report. Returns the
/// process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let a = cli.command.args();
    let rendered = execute(&cli.command).and_then(|report| match a.format.unwrap_or(Format::Json) {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.to_csv(),
    });
    let text = match rendered {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let written = match &a.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| ("stdout".to_string(), e)),
    };
    match written {
        Ok(()) => 0,
        Err((target, e)) => fail(&Error::Config(format!("cannot write {target}: {e}"))),
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("field-entangle: {e}");
    e.exit_code()
}
