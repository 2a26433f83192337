//! File-based pipelines behind the `lorentz-encode` binary.
//!
//! Each subcommand reads an optional JSON config, writes CSV/JSON artifacts into the
//! output directory and returns the list of files it wrote. Files are written to a
//! temporary sibling and renamed into place, so a reader never sees a partial file.
//! Floats in CSV use `{:.16e}` (17 significant digits, round-trip safe).

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuits::{
    c_lc_complex, c_lc_deterministic_with, c_lc_lorentzian_with, metrics, u_lorentzian, u_shift, u_slater,
    CircuitMetrics, EncodingCircuit, QftConvention, ReflectionScope,
};
use crate::fitter::{fit, FitConfig, FitResult, TargetFunction};
use crate::locfuncs::{
    complex_lc_target_state, lc_target_state, lf_vector, normalize_lc, AxisParams, ComplexLcSpec, ComplexTerm,
    ImagPart, LcSpec, LcTerm,
};
use crate::qara::{default_w_grid, log_grid, plan_exact, plan_for_lc, sweep_fig1c, write_sweep_csv, DEFAULT_RATIOS};
use crate::statevector::QuantumState;
use crate::{Error, Result};

/// Environment variable capping the rayon worker count.
pub const THREADS_ENV: &str = "LORENTZ_ENCODE_THREADS";

/// Tolerance for the postconditions checked after `encode`.
const POST_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "lorentz-encode",
    version,
    about = "Encode, fit and analyse linear combinations of discrete Lorentzians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON config for the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Emit the amplified encoder that succeeds with certainty.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Required number of data axes; checked against the config.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub dim: Option<u8>,
    /// Use the inverse-QFT convention for translations and Lorentzian generators.
    #[arg(long, global = true)]
    pub qft_dagger: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build and simulate the encoder of an LC.
    Encode,
    /// Fit an LC of Lorentzians to a sampled target.
    Fit,
    /// Failure weights of amplitude reduction + amplification under an erroneous weight.
    QaraSweep,
    /// Depth and gate counts across a size sweep.
    Metrics,
}

/// Flags shared by all subcommands.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub deterministic: bool,
    pub dim: Option<usize>,
    pub qft_dagger: bool,
}

impl From<&Cli> for RunOptions {
    fn from(cli: &Cli) -> Self {
        RunOptions {
            seed: cli.seed,
            deterministic: cli.deterministic,
            dim: cli.dim.map(usize::from),
            qft_dagger: cli.qft_dagger,
        }
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    init_threads()?;
    let opts = RunOptions::from(cli);
    let cfg = cli.config.as_deref();
    match cli.command {
        Command::Encode => {
            let path = cfg.ok_or_else(|| Error::param("encode needs --config with an LC spec"))?;
            let config: EncodeConfig = read_json(path)?;
            Ok(cmd_encode(&config, &opts, &cli.out)?.files)
        }
        Command::Fit => {
            let (config, base) = match cfg {
                Some(p) => (read_json::<FitRunConfig>(p)?, p.parent().map(Path::to_path_buf)),
                None => (FitRunConfig::default(), None),
            };
            Ok(cmd_fit(&config, base.as_deref(), &opts, &cli.out)?.files)
        }
        Command::QaraSweep => {
            let config = cfg.map(read_json).transpose()?.unwrap_or_default();
            cmd_qara_sweep(&config, &cli.out)
        }
        Command::Metrics => {
            let config = cfg.map(read_json).transpose()?.unwrap_or_default();
            cmd_metrics(&config, &opts, &cli.out)
        }
    }
}

/// Machine-readable error report printed on failure.
pub fn error_json(err: &Error) -> String {
    let kind = format!("{err:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    serde_json::json!({ "error": kind, "message": err.to_string() }).to_string()
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::param(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes `bytes` to `dir/name` through a temporary file in the same directory.
fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_atomic(dir, name, &bytes)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::param(format!("csv: {other:?}")),
    }
}

/// Builds a CSV in memory from pre-formatted rows, then writes it atomically.
fn write_csv(dir: &Path, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<PathBuf> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    write_atomic(dir, name, &bytes)
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn amplitude_rows(state: &QuantumState) -> Vec<Vec<String>> {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| vec![i.to_string(), fmt(z.re), fmt(z.im), fmt(z.norm_sqr())])
        .collect()
}

// ---------------------------------------------------------------------------
// encode

/// LC payload of `encode`.
///
/// A term is either one-dimensional (`a`, `k_c`) or a product over `axes`. A nonzero
/// `coeff_im` or an `imag` part selects the complex-coefficient encoder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodeConfig {
    pub n_q: usize,
    pub terms: Vec<TermConfig>,
    #[serde(default)]
    pub deterministic: bool,
    #[serde(default)]
    pub qft_dagger: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub coeff: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub coeff_im: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_c: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<AxisParams>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<ImagPart>,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl TermConfig {
    pub fn one_dim(coeff: f64, a: f64, k_c: i64) -> Self {
        TermConfig { coeff, coeff_im: 0.0, a: Some(a), k_c: Some(k_c), axes: None, imag: None }
    }

    fn is_complex(&self) -> bool {
        self.coeff_im != 0.0 || self.imag.is_some()
    }

    fn axes(&self) -> Result<Vec<AxisParams>> {
        match (&self.axes, self.a, self.k_c) {
            (Some(axes), None, None) => Ok(axes.clone()),
            (None, Some(a), Some(k_c)) => Ok(vec![AxisParams { a, k_c }]),
            _ => Err(Error::param("each term needs either `a` and `k_c` or `axes`, not both")),
        }
    }
}

impl EncodeConfig {
    pub fn one_dim(n_q: usize, terms: &[(f64, f64, i64)]) -> Self {
        EncodeConfig {
            n_q,
            terms: terms.iter().map(|&(d, a, k)| TermConfig::one_dim(d, a, k)).collect(),
            deterministic: false,
            qft_dagger: false,
        }
    }

    fn is_complex(&self) -> bool {
        self.terms.iter().any(TermConfig::is_complex)
    }

    /// The real LC, normalised.
    pub fn lc_spec(&self) -> Result<LcSpec> {
        let terms =
            self.terms.iter().map(|t| Ok(LcTerm { coeff: t.coeff, axes: t.axes()? })).collect::<Result<Vec<_>>>()?;
        normalize_lc(&LcSpec::new(self.n_q, terms)?)
    }

    pub fn complex_spec(&self) -> Result<ComplexLcSpec> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let axes = t.axes()?;
                if axes.len() != 1 {
                    return Err(Error::param("complex coefficients are supported on one axis only"));
                }
                Ok(ComplexTerm {
                    coeff: Complex64::new(t.coeff, t.coeff_im),
                    a: axes[0].a,
                    k_c: axes[0].k_c,
                    imag: t.imag,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexLcSpec::new(self.n_q, terms)
    }
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EncodeSummary {
    pub n_q: usize,
    pub dim: usize,
    pub n_loc: usize,
    pub complex: bool,
    pub deterministic: bool,
    pub qft_dagger: bool,
    pub lambda: f64,
    /// Success weight of the probabilistic encoder predicted in closed form.
    pub w_analytic: f64,
    /// Success weight of the probabilistic encoder measured by simulation.
    pub w_simulated: f64,
    /// Success probability of the emitted circuit.
    pub success_probability: f64,
    pub fidelity: f64,
    pub m_opt: usize,
    pub theta_ar_opt: f64,
    pub n_qubits: usize,
    pub depth: usize,
    pub counts: CircuitMetrics,
}

pub struct EncodeOutput {
    pub summary: EncodeSummary,
    pub files: Vec<PathBuf>,
}

/// `‖Σ d_ℓ f_ℓ‖²` before normalisation.
fn complex_norm_sqr(lc: &ComplexLcSpec) -> f64 {
    let n_q = lc.n_q();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_q];
    for t in lc.terms() {
        let re = lf_vector(n_q, t.a, t.k_c);
        let im = t.imag.map(|p| (p.weight, lf_vector(n_q, p.a, t.k_c)));
        for (j, slot) in amps.iter_mut().enumerate() {
            let mut f = Complex64::new(re[j], 0.0);
            if let Some((w, ref v)) = im {
                f += Complex64::new(0.0, w * v[j]);
            }
            *slot += t.coeff * f;
        }
    }
    amps.iter().map(Complex64::norm_sqr).sum()
}

pub fn cmd_encode(config: &EncodeConfig, opts: &RunOptions, out: &Path) -> Result<EncodeOutput> {
    let deterministic = opts.deterministic || config.deterministic;
    let qft_dagger = opts.qft_dagger || config.qft_dagger;
    let convention = if qft_dagger { QftConvention::Dagger } else { QftConvention::Forward };
    let complex = config.is_complex();

    let (target, probabilistic, emitted, w_analytic, plan, n_loc, dim) = if complex {
        if deterministic || qft_dagger {
            return Err(Error::param("complex LCs support only the default probabilistic encoder"));
        }
        let lc = config.complex_spec()?;
        let enc = c_lc_complex(&lc)?;
        let w = (complex_norm_sqr(&lc) / enc.lambda.powi(2)).min(1.0);
        (complex_lc_target_state(&lc)?, enc, None, w, plan_exact(w)?, lc.terms().len(), 1)
    } else {
        let lc = config.lc_spec()?;
        let plan = plan_for_lc(&lc)?;
        let enc = c_lc_lorentzian_with(&lc, convention)?;
        let emitted = if deterministic {
            Some(c_lc_deterministic_with(&lc, &plan, convention, ReflectionScope::FullRegister)?)
        } else {
            None
        };
        (lc_target_state(&lc)?, enc, emitted, plan.w, plan, lc.n_loc(), lc.dim())
    };
    if let Some(d) = opts.dim {
        if d != dim {
            return Err(Error::param(format!("--dim {d} does not match the config ({dim} axes)")));
        }
    }

    let w_simulated = probabilistic.simulate_success()?.probability;
    let emitted: &EncodingCircuit = emitted.as_ref().unwrap_or(&probabilistic);
    let outcome = emitted.simulate_success()?;
    let fidelity = outcome.data_state.fidelity(&target)?;
    let counts = emitted.metrics();

    let summary = EncodeSummary {
        n_q: config.n_q,
        dim,
        n_loc,
        complex,
        deterministic,
        qft_dagger,
        lambda: probabilistic.lambda,
        w_analytic,
        w_simulated,
        success_probability: outcome.probability,
        fidelity,
        m_opt: plan.m_opt,
        theta_ar_opt: plan.theta_ar_opt,
        n_qubits: emitted.circuit.n_qubits(),
        depth: counts.depth,
        counts,
    };

    let header = ["index", "re", "im", "probability"];
    let files = vec![
        write_csv(out, "target.csv", &header, amplitude_rows(&target))?,
        write_csv(out, "encoded.csv", &header, amplitude_rows(&outcome.data_state))?,
        write_json(out, "summary.json", &summary)?,
    ];

    if fidelity < 1.0 - POST_TOL {
        return Err(Error::param(format!("postcondition failed: fidelity {fidelity}")));
    }
    if deterministic && outcome.probability < 1.0 - POST_TOL {
        return Err(Error::param(format!("postcondition failed: success probability {}", outcome.probability)));
    }
    Ok(EncodeOutput { summary, files })
}

// ---------------------------------------------------------------------------
// fit

/// Bundled target name accepted by `fit`.
pub const BUILTIN_TWO_GAUSSIANS: &str = "builtin:two-gaussians";

/// `fit` payload: a target reference plus the fitter settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitRunConfig {
    /// CSV `(index, value)`, JSON array, or `builtin:two-gaussians`.
    pub target: String,
    #[serde(flatten)]
    pub fit: FitConfig,
}

impl Default for FitRunConfig {
    fn default() -> Self {
        FitRunConfig { target: BUILTIN_TWO_GAUSSIANS.to_string(), fit: FitConfig::default() }
    }
}

/// Contents of `fit.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub n_q: usize,
    pub n_loc: usize,
    pub d: Vec<f64>,
    pub a: Vec<f64>,
    pub k_c: Vec<i64>,
    #[serde(rename = "F")]
    pub f: f64,
    pub seed: u64,
    pub beta: f64,
    pub n_metropolis: usize,
    pub n_p: usize,
    pub trace_length: usize,
    pub accepted_moves: usize,
}

pub struct FitOutput {
    pub result: FitResult,
    pub report: FitReport,
    pub files: Vec<PathBuf>,
}

/// Parses target samples from CSV (`index,value` or a bare value column, optional
/// header) or a JSON array of numbers.
pub fn parse_target(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let field = record.get(record.len().saturating_sub(1)).unwrap_or("");
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(Error::Parse { line: i + 1, msg: format!("bad value {field:?}") }),
        }
    }
    Ok(values)
}

pub fn load_target(spec: &str, base: Option<&Path>) -> Result<TargetFunction> {
    if spec == BUILTIN_TWO_GAUSSIANS {
        return Ok(TargetFunction::two_gaussians());
    }
    let path = Path::new(spec);
    let path = match base {
        Some(b) if path.is_relative() => b.join(path),
        _ => path.to_path_buf(),
    };
    TargetFunction::new(parse_target(&fs::read_to_string(path)?)?)
}

pub fn cmd_fit(config: &FitRunConfig, base: Option<&Path>, opts: &RunOptions, out: &Path) -> Result<FitOutput> {
    let target = load_target(&config.target, base)?;
    let mut fc = config.fit.clone();
    if let Some(seed) = opts.seed {
        fc.seed = seed;
    }
    let result = fit(&target, &fc)?;
    let report = FitReport {
        n_q: result.n_q,
        n_loc: result.d.len(),
        d: result.d.clone(),
        a: result.a.clone(),
        k_c: result.k_c.clone(),
        f: result.f,
        seed: result.seed,
        beta: fc.beta,
        n_metropolis: fc.n_metropolis,
        n_p: fc.n_p,
        trace_length: result.trace.len(),
        accepted_moves: result.trace.iter().filter(|t| t.accepted).count(),
    };
    let fitted = lc_target_state(&result.to_lc()?)?;
    let rows = target
        .samples()
        .iter()
        .zip(fitted.amplitudes())
        .enumerate()
        .map(|(j, (t, f))| vec![j.to_string(), fmt(*t), fmt(f.re)]);
    let files = vec![
        write_json(out, "fit.json", &report)?,
        write_csv(out, "fit_curve.csv", &["index", "target", "fitted"], rows)?,
    ];
    Ok(FitOutput { result, report, files })
}

// ---------------------------------------------------------------------------
// qara-sweep

/// `qara-sweep` payload. An explicit `w_grid` overrides the log grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub ratios: Vec<f64>,
    pub w_min: f64,
    pub w_max: f64,
    pub n_w: usize,
    pub w_grid: Option<Vec<f64>>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let grid = default_w_grid();
        SweepConfig {
            ratios: DEFAULT_RATIOS.to_vec(),
            w_min: grid[0],
            w_max: grid[grid.len() - 1],
            n_w: grid.len(),
            w_grid: None,
        }
    }
}

pub fn cmd_qara_sweep(config: &SweepConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let grid = match &config.w_grid {
        Some(g) => g.clone(),
        None => log_grid(config.w_min, config.w_max, config.n_w)?,
    };
    let rows = sweep_fig1c(&config.ratios, &grid)?;
    let mut bytes = Vec::new();
    write_sweep_csv(&rows, &mut bytes)?;
    Ok(vec![write_atomic(out, "qara_sweep.csv", &bytes)?])
}

// ---------------------------------------------------------------------------
// metrics

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builder {
    USlater,
    UShift,
    ULorentzian,
    CLc,
    CLcDeterministic,
}

/// `metrics` payload: one builder swept over `n_q × n_loc`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    pub builder: Builder,
    pub n_q: Vec<usize>,
    /// Ignored by the single-function builders.
    pub n_loc: Vec<usize>,
    pub a: f64,
    pub k: i64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig { builder: Builder::USlater, n_q: (2..=16).collect(), n_loc: vec![1], a: 0.5, k: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MetricsRow {
    pub n_q: usize,
    pub n_loc: usize,
    pub depth: usize,
    pub cx_count: usize,
    pub mcu_count: usize,
}

/// LC used for size sweeps: spread centers, distinct rates, alternating signs.
pub fn sweep_lc(n_q: usize, n_loc: usize) -> Result<LcSpec> {
    let n = (1i64 << n_q) as f64;
    let terms: Vec<(f64, f64, i64)> = (0..n_loc)
        .map(|l| {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let k = (((l as f64 + 0.5) * n / n_loc as f64).round() as i64).rem_euclid(n as i64);
            (sign / (1.0 + l as f64), 0.3 + 0.25 * l as f64, k)
        })
        .collect();
    normalize_lc(&LcSpec::one_dim(n_q, &terms)?)
}

pub fn metrics_rows(config: &MetricsConfig, opts: &RunOptions) -> Result<Vec<MetricsRow>> {
    if config.n_q.is_empty() || config.n_loc.is_empty() {
        return Err(Error::param("metrics sweep needs non-empty n_q and n_loc lists"));
    }
    let convention = if opts.qft_dagger { QftConvention::Dagger } else { QftConvention::Forward };
    let single = matches!(config.builder, Builder::USlater | Builder::UShift | Builder::ULorentzian);
    let n_locs: &[usize] = if single { &[1] } else { &config.n_loc };
    let mut rows = Vec::new();
    for &n_q in &config.n_q {
        for &n_loc in n_locs {
            if n_loc == 0 {
                return Err(Error::param("n_loc must be positive"));
            }
            let m = match config.builder {
                Builder::USlater => metrics(&u_slater(config.a, n_q)?),
                Builder::UShift => metrics(&u_shift(config.k, n_q)?),
                Builder::ULorentzian => metrics(&u_lorentzian(config.a, n_q)?),
                Builder::CLc => c_lc_lorentzian_with(&sweep_lc(n_q, n_loc)?, convention)?.metrics(),
                Builder::CLcDeterministic => {
                    let lc = sweep_lc(n_q, n_loc)?;
                    let plan = plan_for_lc(&lc)?;
                    c_lc_deterministic_with(&lc, &plan, convention, ReflectionScope::FullRegister)?.metrics()
                }
            };
            rows.push(MetricsRow { n_q, n_loc, depth: m.depth, cx_count: m.cnot, mcu_count: m.multi_controlled });
        }
    }
    Ok(rows)
}

pub fn cmd_metrics(config: &MetricsConfig, opts: &RunOptions, out: &Path) -> Result<Vec<PathBuf>> {
    let rows = metrics_rows(config, opts)?;
    let csv_rows = rows
        .iter()
        .map(|r| [r.n_q, r.n_loc, r.depth, r.cx_count, r.mcu_count].iter().map(ToString::to_string).collect());
    Ok(vec![write_csv(out, "metrics.csv", &["n_q", "n_loc", "depth", "cx_count", "mcu_count"], csv_rows)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_parsing_accepts_csv_and_json() {
        assert_eq!(parse_target("index,value\n0,1.5\n1,-2\n").unwrap(), vec![1.5, -2.0]);
        assert_eq!(parse_target("0.5\n0.25\n").unwrap(), vec![0.5, 0.25]);
        assert_eq!(parse_target(" [1, 2.5]").unwrap(), vec![1.0, 2.5]);
        assert!(parse_target("index,value\n0,x\n").is_err());
    }

    #[test]
    fn term_needs_exactly_one_shape() {
        let mut t = TermConfig::one_dim(1.0, 0.5, 0);
        t.axes = Some(vec![AxisParams { a: 0.5, k_c: 0 }]);
        let cfg = EncodeConfig { n_q: 3, terms: vec![t], deterministic: false, qft_dagger: false };
        assert!(cfg.lc_spec().is_err());
    }

    #[test]
    fn error_json_names_the_variant() {
        let s = error_json(&Error::param("bad"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["error"], "InvalidParameter");
        assert!(v["message"].as_str().unwrap().contains("bad"));
    }
}
