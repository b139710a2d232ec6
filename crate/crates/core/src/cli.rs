//! `theta` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{theta_bounds, CertificateDocument};
use crate::error::{Error, Result};
use crate::graph::{
    generate_config_model, generate_random_regular_girth, NamedGraph, RegularGraph,
};
use crate::sdp_oracle::exact_theta;
use crate::thresholds;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Restarts allowed to the girth-constrained sampler.
const GIRTH_SAMPLER_RESTARTS: usize = 200;
/// Largest degree for which `auto` uses whole-matching rejection.
const AUTO_CONFIG_MAX_DEGREE: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "theta", version, about = "Certified bounds on the Lovasz theta of regular graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and verify both certificates for one graph.
    Certify(CertifyArgs),
    /// Certify many random graphs and tabulate the bounds.
    Sweep(SweepArgs),
    /// Compare the certified bounds with the exact oracle on tiny graphs.
    OracleCompare(OracleArgs),
    /// Tabulate the closed-form refutation thresholds.
    Thresholds(ThresholdArgs),
    /// Write a graph as an edge list.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sampler {
    /// Configuration model for small degrees, sequential pairing otherwise.
    Auto,
    /// Uniform configuration model with whole-matching rejection.
    Config,
    /// Sequential pairing with a girth constraint.
    Girth,
}

#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Edge-list file.
    #[arg(long, conflicts_with_all = ["named", "n"])]
    pub graph: Option<PathBuf>,
    /// Named fixture (petersen, k4, c5, k33, heawood, tutte-coxeter, ...).
    #[arg(long, conflicts_with = "n")]
    pub named: Option<String>,
    #[arg(long, requires = "d")]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Sampler::Auto)]
    pub sampler: Sampler,
    /// Minimum girth for random graphs; implies the girth sampler.
    #[arg(long)]
    pub min_girth: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Cap on the even girth budget.
    #[arg(long)]
    pub gamma: Option<usize>,
    #[arg(long, env = "THETA_TOL", default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, env = "THETA_DENSE_LIMIT", default_value_t = 2500)]
    pub dense_limit: usize,
    /// Write the certificate JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Degrees, e.g. `3..6` (inclusive) or `3,5,8`.
    #[arg(long)]
    pub d: String,
    #[arg(long)]
    pub n: usize,
    /// Seeds, e.g. `0..9` (inclusive) or `1,2,7`.
    #[arg(long, default_value = "0..4")]
    pub seeds: String,
    #[arg(long)]
    pub gamma: Option<usize>,
    #[arg(long, env = "THETA_TOL", default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, env = "THETA_DENSE_LIMIT", default_value_t = 2500)]
    pub dense_limit: usize,
    #[arg(long, value_enum, default_value_t = Sampler::Auto)]
    pub sampler: Sampler,
    #[arg(long)]
    pub min_girth: Option<usize>,
    /// Fill the elapsed_ms column (makes the output run-dependent).
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Comma-separated graph names; empty for none.
    #[arg(long, default_value = "c5,petersen,k4,k33")]
    pub graphs: String,
    #[arg(long, default_value_t = 1e-4)]
    pub precision: f64,
    #[arg(long, default_value_t = 60)]
    pub max_iter: usize,
    #[arg(long, env = "THETA_TOL", default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value = "2..10")]
    pub k: String,
    /// Comma-separated affinities, e.g. `-1,0,0.5`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, default_value = "3")]
    pub d: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `a..b` (inclusive) or a comma-separated list.
pub fn parse_int_range(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParameter(format!("bad range {spec:?}"));
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

pub fn parse_real_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad number {s:?}")))
        })
        .collect()
}

pub fn sample_graph(
    n: usize,
    d: usize,
    seed: u64,
    sampler: Sampler,
    min_girth: Option<usize>,
) -> Result<RegularGraph> {
    let sampler = match (sampler, min_girth) {
        (_, Some(_)) => Sampler::Girth,
        (Sampler::Auto, None) if d <= AUTO_CONFIG_MAX_DEGREE => Sampler::Config,
        (Sampler::Auto, None) => Sampler::Girth,
        (s, None) => s,
    };
    match sampler {
        Sampler::Config => generate_config_model(n, d, seed),
        _ => generate_random_regular_girth(n, d, min_girth.unwrap_or(3), seed, GIRTH_SAMPLER_RESTARTS),
    }
}

fn load_graph(source: &GraphSource) -> Result<(RegularGraph, String)> {
    if let Some(path) = &source.graph {
        return Ok((RegularGraph::read_edge_list(path)?, path.display().to_string()));
    }
    if let Some(name) = &source.named {
        return Ok((NamedGraph::parse(name)?.build()?, name.clone()));
    }
    match (source.n, source.d) {
        (Some(n), Some(d)) => {
            let g = sample_graph(n, d, source.seed, source.sampler, source.min_girth)?;
            Ok((g, format!("random n={n} d={d} seed={}", source.seed)))
        }
        _ => Err(Error::InvalidParameter(
            "give --graph FILE, --named NAME, or --n and --d".into(),
        )),
    }
}

fn check_dense_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    Ok(())
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::VerificationFailed(_) | Error::InvariantViolation(_) | Error::NonConvergence { .. } => {
            EXIT_VERIFICATION
        }
        _ => EXIT_INPUT,
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

/// Runs the CLI and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Certify(a) => cmd_certify(a, stdout, stderr),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
        Command::OracleCompare(a) => cmd_oracle_compare(a, stdout, stderr),
        Command::Thresholds(a) => cmd_thresholds(a, stdout),
        Command::Generate(a) => cmd_generate(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn cmd_certify(a: &CertifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let (g, label) = load_graph(&a.source)?;
    check_dense_limit(g.n(), a.dense_limit)?;
    let bounds = theta_bounds(&g, a.gamma, a.tol)?;
    let doc = CertificateDocument::from_bounds(&g, &bounds);
    let mut json = doc.to_json_pretty();
    json.push('\n');
    emit(&a.out, stdout, &json)?;

    let summary: &mut dyn Write = if a.out.is_some() { stdout } else { stderr };
    writeln!(summary, "graph: {label} (n = {}, d = {}, girth = {})", g.n(), g.d(), fmt_opt_usize(doc.girth))?;
    writeln!(summary, "lower bound (dual witness): {}", bounds.lower)?;
    match (&bounds.primal, &bounds.upper_unavailable) {
        (Some((cert, report)), _) => writeln!(
            summary,
            "upper bound (primal, gamma = {}): {} with lambda_min(P) = {:e}",
            cert.gamma_used, cert.kappa, report.lambda_min
        )?,
        (None, Some(why)) => writeln!(summary, "warning: {why}; reporting the lower bound only")?,
        (None, None) => {}
    }
    writeln!(summary, "verified: {}", doc.verified)?;
    Ok(if doc.verified { EXIT_OK } else { EXIT_VERIFICATION })
}

fn fmt_opt_usize(v: Option<usize>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// One row of the sweep table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub girth: Option<usize>,
    pub even_gamma_used: Option<usize>,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub kappa_formula: Option<f64>,
    pub lambda_min: Option<f64>,
    pub elapsed_ms: Option<u128>,
    pub error: Option<String>,
}

pub const SWEEP_HEADER: &str =
    "d,n,seed,girth,even_gamma_used,lower_bound,upper_bound,kappa_formula,lambda_min,elapsed_ms,error";

impl SweepRow {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.n,
            self.seed,
            self.girth.map_or_else(String::new, |g| g.to_string()),
            self.even_gamma_used.map_or_else(String::new, |g| g.to_string()),
            fmt_opt_f64(self.lower_bound),
            fmt_opt_f64(self.upper_bound),
            fmt_opt_f64(self.kappa_formula),
            fmt_opt_f64(self.lambda_min),
            self.elapsed_ms.map_or_else(String::new, |t| t.to_string()),
            csv_field(self.error.as_deref().unwrap_or("")),
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn sweep_row(d: usize, n: usize, seed: u64, a: &SweepArgs) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        d,
        n,
        seed,
        girth: None,
        even_gamma_used: None,
        lower_bound: None,
        upper_bound: None,
        kappa_formula: None,
        lambda_min: None,
        elapsed_ms: None,
        error: None,
    };
    let outcome = sample_graph(n, d, seed, a.sampler, a.min_girth).and_then(|g| {
        row.girth = g.girth().girth;
        theta_bounds(&g, a.gamma, a.tol)
    });
    match outcome {
        Ok(b) => {
            row.lower_bound = Some(b.lower);
            row.lambda_min = Some(b.dual.lambda_min_a);
            if let Some((cert, _)) = &b.primal {
                row.even_gamma_used = Some(cert.gamma_used);
                row.upper_bound = Some(cert.kappa);
                row.kappa_formula = Some(cert.kappa_formula());
            }
            row.error = b.upper_unavailable.map(|w| format!("dual only: {w}"));
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    if a.timing {
        row.elapsed_ms = Some(start.elapsed().as_millis());
    }
    row
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    Some(sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64))
}

pub fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    check_dense_limit(a.n, a.dense_limit)?;
    let degrees = parse_int_range(&a.d)?;
    let seeds = parse_int_range(&a.seeds)?;
    let jobs: Vec<(usize, u64)> = degrees
        .iter()
        .flat_map(|&d| seeds.iter().map(move |&s| (d as usize, s)))
        .collect();
    let mut rows: Vec<SweepRow> = jobs.par_iter().map(|&(d, s)| sweep_row(d, a.n, s, a)).collect();
    rows.sort_by_key(|r| (r.d, r.seed));

    let text = match a.format {
        Format::Csv => {
            let mut t = String::from(SWEEP_HEADER);
            t.push('\n');
            for r in &rows {
                t.push_str(&r.csv());
                t.push('\n');
            }
            t
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    emit(&a.out, stdout, &text)?;

    let mut gaps: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.lower_bound.map(|l| l - thresholds::spectral_lower_threshold(r.d as f64)))
        .collect();
    gaps.sort_by(f64::total_cmp);
    if !gaps.is_empty() {
        let q = |p| quantile(&gaps, p).expect("non-empty");
        writeln!(
            stderr,
            "lower_bound - (1 + d/(2 sqrt(d-1))): min {} q25 {} median {} q75 {} max {}",
            q(0.0),
            q(0.25),
            q(0.5),
            q(0.75),
            q(1.0)
        )?;
    }
    let failed = rows.iter().filter(|r| r.lower_bound.is_none()).count();
    if failed > 0 {
        writeln!(stderr, "{failed} row(s) failed; see the error column")?;
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub graph: String,
    pub n: usize,
    pub oracle_lo: f64,
    pub oracle_hi: f64,
    pub iterations: usize,
    pub dual_lower: f64,
    pub primal_upper: Option<f64>,
    pub ok: bool,
}

pub const ORACLE_HEADER: &str = "graph,n,oracle_lo,oracle_hi,iterations,dual_lower,primal_upper,ok";

pub fn oracle_row(name: &str, precision: f64, max_iter: usize, tol: f64) -> Result<OracleRow> {
    let g = NamedGraph::parse(name)?.build()?;
    let oracle = exact_theta(&g, precision, max_iter)?;
    let bounds = theta_bounds(&g, None, tol)?;
    let ok = bounds.lower <= oracle.hi + precision
        && bounds.upper.is_none_or(|u| oracle.lo <= u + precision);
    Ok(OracleRow {
        graph: name.to_string(),
        n: g.n(),
        oracle_lo: oracle.lo,
        oracle_hi: oracle.hi,
        iterations: oracle.iterations,
        dual_lower: bounds.lower,
        primal_upper: bounds.upper,
        ok,
    })
}

pub fn cmd_oracle_compare(a: &OracleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let names: Vec<&str> = a.graphs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let rows = names
        .iter()
        .map(|name| oracle_row(name, a.precision, a.max_iter, a.tol))
        .collect::<Result<Vec<_>>>()?;
    let text = match a.format {
        Format::Csv => {
            let mut t = String::from(ORACLE_HEADER);
            t.push('\n');
            for r in &rows {
                t.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    csv_field(&r.graph),
                    r.n,
                    r.oracle_lo,
                    r.oracle_hi,
                    r.iterations,
                    r.dual_lower,
                    fmt_opt_f64(r.primal_upper),
                    r.ok
                ));
            }
            t
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    emit(&a.out, stdout, &text)?;
    let bad: Vec<&str> = rows.iter().filter(|r| !r.ok).map(|r| r.graph.as_str()).collect();
    if bad.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(stderr, "oracle disagrees with the certificates on: {}", bad.join(", "))?;
        Ok(EXIT_VERIFICATION)
    }
}

/// Threshold verdicts for one `(d, k, τ)`; `None` where undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub d: u64,
    pub k: u64,
    pub tau: f64,
    pub d_ks_regular: Option<f64>,
    pub d_ks_poisson: Option<f64>,
    pub d_first: Option<f64>,
    pub effective_k: Option<f64>,
    pub refutation_possible: Option<bool>,
    pub refutation_impossible: Option<bool>,
    pub d_info_order: Option<f64>,
}

pub const THRESHOLD_HEADER: &str = "d,k,tau,d_ks_regular,d_ks_poisson,d_first,effective_k,refutation_possible,refutation_impossible,d_info_order";

pub fn threshold_row(d: u64, k: u64, tau: f64) -> ThresholdRow {
    let (df, kf) = (d as f64, k as f64);
    ThresholdRow {
        d,
        k,
        tau,
        d_ks_regular: thresholds::kesten_stigum_regular(kf, tau).ok(),
        d_ks_poisson: thresholds::kesten_stigum_poisson(kf, tau).ok(),
        d_first: thresholds::first_moment_coloring(kf).ok(),
        effective_k: thresholds::effective_k(kf, tau).ok(),
        refutation_possible: thresholds::sos2_refutation_possible(df, kf, tau).ok(),
        refutation_impossible: thresholds::sos2_refutation_impossible(df, kf, tau).ok(),
        d_info_order: thresholds::information_threshold_order(kf, tau).ok(),
    }
}

impl ThresholdRow {
    fn csv(&self) -> String {
        let real = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| x.to_string());
        let flag = |v: Option<bool>| v.map_or_else(|| "undefined".to_string(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.k,
            self.tau,
            real(self.d_ks_regular),
            real(self.d_ks_poisson),
            real(self.d_first),
            real(self.effective_k),
            flag(self.refutation_possible),
            flag(self.refutation_impossible),
            real(self.d_info_order),
        )
    }
}

pub fn cmd_thresholds(a: &ThresholdArgs, stdout: &mut dyn Write) -> Result<u8> {
    let degrees = parse_int_range(&a.d)?;
    let ks = parse_int_range(&a.k)?;
    let taus = parse_real_list(&a.tau)?;
    let mut rows = Vec::with_capacity(degrees.len() * ks.len() * taus.len());
    for &d in &degrees {
        for &k in &ks {
            for &tau in &taus {
                rows.push(threshold_row(d, k, tau));
            }
        }
    }
    let text = match a.format {
        Format::Csv => {
            let mut t = String::from(THRESHOLD_HEADER);
            t.push('\n');
            for r in &rows {
                t.push_str(&r.csv());
                t.push('\n');
            }
            t
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    emit(&a.out, stdout, &text)?;
    Ok(EXIT_OK)
}

pub fn cmd_generate(a: &GenerateArgs, stdout: &mut dyn Write) -> Result<u8> {
    let (g, _) = load_graph(&a.source)?;
    emit(&a.out, stdout, &g.to_edge_list())?;
    Ok(EXIT_OK)
}
