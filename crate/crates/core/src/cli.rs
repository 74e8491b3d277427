//! The `smt` command line. Every run resolves one [`RunConfig`] (defaults,
//! then `--config`, then flags), hashes it, and writes CSV tables plus a JSON
//! verdict. Exit codes: 0 pass, 1 verdict fail or numerical error, 2 usage.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::SmtError;
use crate::exactmath::{run_identity_suite, suite_passed, SuiteBounds};
use crate::inverse::{invert_radial, rel_l2, InversionConfig};
use crate::quadrature::{QuadSpec, QuadratureRule};
use crate::rangecheck::{general_range_check, range_residual, uniform_grid, HarmonicH, HarmonicSource, PerturbedData};
use crate::spectral::{bessel_zero_vanishing, lambda_grid, mk_sweep, HankelSamples, DEFAULT_SEED};
use crate::transform::{forward_radial, funk_hecke_forward, Bump, Dimension, HData, PowerWeighted, RadialProfile, SmtProfile, T_FLOOR};
use crate::ucp::{below_threshold_report, default_t_grid, verify_with_data, UcpSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "smt", version, about = "Spherical mean transform checks in odd dimensions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Odd dimension n >= 3.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Harmonic degree, or the derivative order for ucp-demo.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Largest k swept by mk-check.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long = "lambda-max", global = true)]
    lambda_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// 64-bit seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Output directory; without it tables go to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON run config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// JSON radial profile `{center, width, amplitude?, power?}`.
    #[arg(long, global = true)]
    profile: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum Cmd {
    /// Spherical means of a radial bump, checked against the Funk-Hecke form.
    Forward,
    /// Reconstruct a radial profile from half data on (0, 1).
    Invert {
        /// CSV with columns t,g; defaults to forward-generated data.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Range symmetry residual of forward data (m = 0) or a single harmonic (m >= 1).
    RangeCheck {
        /// Multiply the data by 1 + delta for t > 1.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Bessel cross-product identity of the Hankel transform of the data.
    CrossCheck {
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Seeded sweep of the M_k identity for every k up to --k.
    MkCheck,
    /// Exact-arithmetic identity suite.
    Identities {
        #[arg(long = "max-k")]
        max_k: Option<usize>,
    },
    /// Hankel transform of the data at Bessel zeros.
    Zeros {
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Build and verify the unique-continuation counterexample.
    UcpDemo {
        /// JSON `{n, epsilon, m, center, width}`.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("bad seed {s:?}: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub center: f64,
    pub width: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub power: u32,
}

fn one() -> f64 {
    1.0
}

impl Default for ProfileSpec {
    fn default() -> Self {
        ProfileSpec { center: 0.5, width: 0.3, amplitude: 1.0, power: 0 }
    }
}

impl ProfileSpec {
    pub fn build(&self) -> crate::Result<PowerWeighted<Bump>> {
        Ok(PowerWeighted { power: self.power, inner: Bump::new(self.center, self.width)?.scaled(self.amplitude) })
    }
}

/// Everything a run reads. Unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub lambda_max: Option<f64>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub quadrature: Option<QuadSpec>,
    pub profile: Option<ProfileSpec>,
    pub delta: Option<f64>,
    pub max_k: Option<usize>,
    pub count: Option<usize>,
    pub data: Option<PathBuf>,
    pub inversion: Option<InversionConfig>,
    pub ucp: Option<UcpSpec>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Fail(String),
}

impl From<SmtError> for CliError {
    fn from(e: SmtError) -> Self {
        match e {
            SmtError::InvalidArgument(_) | SmtError::UnsupportedBinomial { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{what} {}: {e}", path.display())))
}

/// A table with a name and named columns.
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn numeric(name: &str, columns: Vec<&'static str>, rows: Vec<Vec<f64>>) -> Table {
        Table { name: name.into(), columns, rows: rows.into_iter().map(|r| r.into_iter().map(fmt17).collect()).collect() }
    }
}

/// 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

struct Outcome {
    passed: bool,
    summary: String,
    result: Value,
    tables: Vec<Table>,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Usage(m)) => {
            eprintln!("smt: error: {m}");
            2
        }
        Err(CliError::Fail(m)) => {
            eprintln!("smt: failed: {m}");
            1
        }
    }
}

fn subcommand_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Forward => "forward",
        Cmd::Invert { .. } => "invert",
        Cmd::RangeCheck { .. } => "range-check",
        Cmd::CrossCheck { .. } => "cross-check",
        Cmd::MkCheck => "mk-check",
        Cmd::Identities { .. } => "identities",
        Cmd::Zeros { .. } => "zeros",
        Cmd::UcpDemo { .. } => "ucp-demo",
    }
}

fn resolve(cli: &Cli) -> CliResult<RunConfig> {
    let mut c: RunConfig = match &cli.config {
        Some(p) => read_json(p, "config")?,
        None => RunConfig::default(),
    };
    macro_rules! over {
        ($($f:ident),*) => { $( if cli.$f.is_some() { c.$f = cli.$f.clone(); } )* };
    }
    over!(n, m, k, lambda_max, grid, tol, seed, out);
    if let Some(p) = &cli.profile {
        c.profile = Some(read_json(p, "profile")?);
    }
    match &cli.cmd {
        Cmd::Invert { data } => {
            if data.is_some() {
                c.data = data.clone();
            }
        }
        Cmd::RangeCheck { delta } | Cmd::CrossCheck { delta } => {
            if delta.is_some() {
                c.delta = *delta;
            }
        }
        Cmd::Zeros { count, delta } => {
            if count.is_some() {
                c.count = *count;
            }
            if delta.is_some() {
                c.delta = *delta;
            }
        }
        Cmd::Identities { max_k } => {
            if max_k.is_some() {
                c.max_k = *max_k;
            }
        }
        Cmd::UcpDemo { spec } => {
            if let Some(p) = spec {
                c.ucp = Some(read_json(p, "ucp spec")?);
            }
        }
        Cmd::Forward | Cmd::MkCheck => {}
    }
    if let Ok(s) = std::env::var("SMT_THREADS") {
        let t: usize = s.trim().parse().map_err(|_| CliError::Usage(format!("SMT_THREADS={s:?} is not a count")))?;
        c.threads = Some(t);
    }
    if c.threads == Some(0) {
        return usage("threads must be at least 1");
    }
    if let Some(g) = c.grid {
        if g < 2 {
            return usage("--grid must be at least 2");
        }
    }
    if let Some(t) = c.tol {
        if !(t > 0.0) {
            return usage("--tol must be positive");
        }
    }
    if c.quadrature.is_none() {
        let panels = if matches!(cli.cmd, Cmd::UcpDemo { .. }) { 32 } else { 8 };
        c.quadrature = Some(QuadSpec { nodes: 32, panels });
    }
    Ok(c)
}

/// SHA-256 of the resolved config and subcommand, hex. The output directory
/// and thread count do not enter.
pub fn config_hash(sub: &str, cfg: &RunConfig) -> String {
    let cfg = RunConfig { out: None, threads: None, ..cfg.clone() };
    let body = json!({ "subcommand": sub, "config": cfg });
    let digest = Sha256::digest(body.to_string().as_bytes());
    digest.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn execute(cli: Cli) -> CliResult<bool> {
    let sub = subcommand_name(&cli.cmd);
    let cfg = resolve(&cli)?;
    let hash = config_hash(sub, &cfg);
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Fail(e.to_string()))?;
    let cmd = cli.cmd.clone();
    let outcome = pool.install(|| dispatch(&cmd, &cfg, seed))?;

    let header = format!("# smt {VERSION}\n# subcommand {sub}\n# config_hash {hash}\n# seed {seed}\n");
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    let doc = json!({
        "tool": "smt",
        "version": VERSION,
        "subcommand": sub,
        "config_hash": hash,
        "seed": seed,
        "config": cfg,
        "verdict": verdict,
        "result": outcome.result,
    });
    match &cfg.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("--out {}: {e}", dir.display())))?;
            for t in &outcome.tables {
                write_file(&dir.join(format!("{}.csv", t.name)), &render_csv(&header, t))?;
            }
            let json = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Fail(e.to_string()))?;
            write_file(&dir.join(format!("{}.json", sub.replace('-', "_"))), &(json + "\n"))?;
        }
        None => {
            for t in &outcome.tables {
                print!("{}", render_csv(&header, t));
            }
        }
    }
    println!("# {sub}: {verdict} {}", outcome.summary);
    Ok(outcome.passed)
}

fn write_file(p: &Path, s: &str) -> CliResult<()> {
    fs::write(p, s).map_err(|e| CliError::Fail(format!("{}: {e}", p.display())))
}

pub fn render_csv_rows(header: &str, name: &str, columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = String::from(header);
    let _ = writeln!(s, "# table {name}");
    s.push_str(&columns.join(","));
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn render_csv(header: &str, t: &Table) -> String {
    render_csv_rows(header, &t.name, &t.columns, &t.rows)
}

fn dim_of(cfg: &RunConfig) -> CliResult<Dimension> {
    Ok(Dimension::new(cfg.n.unwrap_or(3))?)
}

fn quad_of(cfg: &RunConfig) -> CliResult<QuadratureRule> {
    Ok(cfg.quadrature.unwrap_or_default().build()?)
}

fn profile_of(cfg: &RunConfig) -> CliResult<PowerWeighted<Bump>> {
    Ok(cfg.profile.unwrap_or_default().build()?)
}

fn delta_of(cfg: &RunConfig) -> CliResult<f64> {
    let d = cfg.delta.unwrap_or(0.0);
    if !d.is_finite() || d <= -1.0 {
        return usage(format!("delta must be finite and > -1, got {d}"));
    }
    Ok(d)
}

fn dispatch(cmd: &Cmd, cfg: &RunConfig, seed: u64) -> CliResult<Outcome> {
    match cmd {
        Cmd::Forward => forward(cfg),
        Cmd::Invert { .. } => invert(cfg),
        Cmd::RangeCheck { .. } => range_check(cfg),
        Cmd::CrossCheck { .. } => cross_check(cfg),
        Cmd::MkCheck => mk_check(cfg, seed),
        Cmd::Identities { .. } => identities(cfg),
        Cmd::Zeros { .. } => zeros(cfg),
        Cmd::UcpDemo { .. } => ucp_demo(cfg),
    }
}

fn forward(cfg: &RunConfig) -> CliResult<Outcome> {
    let dim = dim_of(cfg)?;
    let q = quad_of(cfg)?;
    let f = profile_of(cfg)?;
    let count = cfg.grid.unwrap_or(200);
    let tol = cfg.tol.unwrap_or(1e-9);
    let ts: Vec<f64> = (0..count).map(|i| 2.0 * (i as f64 + 0.5) / count as f64).filter(|&t| t >= T_FLOOR).collect();
    let rows: Vec<Vec<f64>> = ts
        .iter()
        .map(|&t| Ok(vec![t, forward_radial(&f, dim, t, &q)?, funk_hecke_forward(&f, dim, t, &q)?]))
        .collect::<crate::Result<_>>()?;
    let sup = rows.iter().map(|r| r[1].abs()).fold(0.0, f64::max);
    let diff = rows.iter().map(|r| (r[1] - r[2]).abs()).fold(0.0, f64::max);
    let rel = if sup > 0.0 { diff / sup } else { diff };
    Ok(Outcome {
        passed: rel <= tol,
        summary: format!("max rel difference to Funk-Hecke form {rel:.3e} (tol {tol:e})"),
        result: json!({ "n": dim.n(), "points": rows.len(), "max_abs_g": sup, "funk_hecke_rel_diff": rel, "tol": tol }),
        tables: vec![Table::numeric("forward", vec!["t", "g", "g_funk_hecke"], rows)],
    })
}

fn read_tg(path: &Path) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("data {}: {e}", path.display())))?;
    let (mut t, mut g) = (Vec::new(), Vec::new());
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(|c: char| c.is_ascii_alphabetic()) {
            continue;
        }
        let mut it = line.split(',').map(|x| x.trim().parse::<f64>());
        match (it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b))) => {
                t.push(a);
                g.push(b);
            }
            _ => return usage(format!("data {} line {}: expected t,g", path.display(), i + 1)),
        }
    }
    Ok((t, g))
}

fn invert(cfg: &RunConfig) -> CliResult<Outcome> {
    let dim = dim_of(cfg)?;
    let q = quad_of(cfg)?;
    let icfg = cfg.inversion.unwrap_or_default();
    icfg.validate()?;
    let tol = cfg.tol.unwrap_or(1e-3);
    let truth = if cfg.data.is_none() { Some(profile_of(cfg)?) } else { None };
    let (t, g) = match (&cfg.data, &truth) {
        (Some(p), _) => read_tg(p)?,
        (None, Some(f)) => {
            let t = icfg.collocation_grid();
            let g = t.iter().map(|&ti| forward_radial(f, dim, ti, &q)).collect::<crate::Result<Vec<_>>>()?;
            (t, g)
        }
        (None, None) => unreachable!(),
    };
    let rec = invert_radial(&t, &g, dim, &icfg)?;
    let mut rows = Vec::new();
    let mut err = None;
    match &truth {
        Some(f) => {
            let want: Vec<f64> = rec.nodes.iter().map(|&r| f.value(r)).collect();
            err = Some(rel_l2(&rec.values, &want));
            for ((r, v), w) in rec.nodes.iter().zip(&rec.values).zip(&want) {
                rows.push(vec![*r, *v, *w]);
            }
        }
        None => {
            for (r, v) in rec.nodes.iter().zip(&rec.values) {
                rows.push(vec![*r, *v, f64::NAN]);
            }
        }
    }
    let passed = err.is_none_or(|e| e <= tol);
    let summary = match err {
        Some(e) => format!("rel L2 error {e:.3e} (tol {tol:e}), rank {}", rec.rank),
        None => format!("reconstructed from external data, rank {}, residual {:.3e}", rec.rank, rec.residual_norm),
    };
    Ok(Outcome {
        passed,
        summary,
        result: json!({
            "n": dim.n(), "rank": rec.rank, "residual_norm": rec.residual_norm,
            "rel_l2_error": err, "tol": tol, "inversion": icfg,
        }),
        tables: vec![Table::numeric("invert", vec!["r", "f_reconstructed", "f_true"], rows)],
    })
}

fn range_check(cfg: &RunConfig) -> CliResult<Outcome> {
    let dim = dim_of(cfg)?;
    let q = quad_of(cfg)?;
    let f = profile_of(cfg)?;
    let m = cfg.m.unwrap_or(0);
    let delta = delta_of(cfg)?;
    let tol = cfg.tol.unwrap_or(1e-6);
    let defect_tol = 1e-8;
    let grid = uniform_grid(0.01, 1.0, cfg.grid.unwrap_or(101));
    let (report, defects) = if m == 0 {
        let data = PerturbedData { inner: SmtProfile::new(dim, f, q.clone()), delta };
        (range_residual(&data, dim.k(), &grid)?, None)
    } else if delta == 0.0 {
        let r = general_range_check(HarmonicSource::Analytic { f: &f }, dim, m, &grid, &q)?;
        (r.range.clone(), Some(r))
    } else {
        let data = PerturbedData { inner: HarmonicH { f: &f, dim, m, quad: q.clone() }, delta };
        let r = general_range_check(HarmonicSource::External { data: &data }, dim, m, &grid, &q)?;
        (r.range.clone(), Some(r))
    };
    let moments_ok = defects.as_ref().is_none_or(|d| d.moments_vanish(defect_tol));
    let passed = report.passes(tol) && moments_ok;
    let rows: Vec<Vec<f64>> = report.grid.iter().zip(&report.residual).map(|(&t, &r)| vec![t, r]).collect();
    let mut summary = format!("normalized residual {:.3e} (tol {tol:e})", report.normalized);
    if let Some(d) = &defects {
        let worst = d.defects.iter().zip(&d.defect_scales).map(|(x, s)| if *s > 0.0 { x.abs() / s } else { x.abs() }).fold(0.0, f64::max);
        let _ = write!(summary, ", worst moment defect {worst:.3e} (tol {defect_tol:e})");
    }
    Ok(Outcome {
        passed,
        summary,
        result: json!({
            "n": dim.n(), "m": m, "k_used": report.k_used, "delta": delta,
            "normalized_residual": report.normalized, "sup_residual": report.sup_residual, "scale": report.scale,
            "tol": tol, "defects": defects.as_ref().map(|d| &d.defects), "defect_scales": defects.as_ref().map(|d| &d.defect_scales),
            "moments_vanish": moments_ok,
        }),
        tables: vec![Table::numeric("range_check", vec!["tau", "residual"], rows)],
    })
}

fn data_for(cfg: &RunConfig, dim: Dimension, q: &QuadratureRule) -> CliResult<Box<dyn HData>> {
    let f = profile_of(cfg)?;
    let delta = delta_of(cfg)?;
    Ok(Box::new(PerturbedData { inner: SmtProfile::new(dim, f, q.clone()), delta }))
}

fn cross_check(cfg: &RunConfig) -> CliResult<Outcome> {
    let dim = dim_of(cfg)?;
    let q = quad_of(cfg)?;
    let data = data_for(cfg, dim, &q)?;
    let lmax = cfg.lambda_max.unwrap_or(40.0);
    if !(lmax > 0.5) {
        return usage(format!("--lambda-max must exceed 0.5, got {lmax}"));
    }
    let tol = cfg.tol.unwrap_or(1e-8);
    let s = HankelSamples::new(data.as_ref(), lmax, &q)?;
    let rows: Vec<Vec<f64>> = lambda_grid(0.5, lmax, cfg.grid.unwrap_or(20))
        .into_iter()
        .map(|l| s.cross_product(dim.k(), l).map(|c| vec![c.lambda, c.lhs, c.rhs, c.residual]))
        .collect::<crate::Result<_>>()?;
    let worst = rows.iter().map(|r| r[3]).fold(0.0, f64::max);
    Ok(Outcome {
        passed: worst <= tol,
        summary: format!("max residual {worst:.3e} over {} lambda (tol {tol:e})", rows.len()),
        result: json!({ "n": dim.n(), "k": dim.k(), "lambda_max": lmax, "max_residual": worst, "tol": tol }),
        tables: vec![Table::numeric("cross_check", vec!["lambda", "lhs", "rhs", "residual"], rows)],
    })
}

fn mk_check(cfg: &RunConfig, seed: u64) -> CliResult<Outcome> {
    let kmax = cfg.k.unwrap_or(6);
    let count = cfg.grid.unwrap_or(100);
    let tol = cfg.tol.unwrap_or(1e-8);
    let mut rows = Vec::new();
    let mut per_k = Vec::new();
    let mut passed = true;
    for k in 0..=kmax {
        let v = mk_sweep(k, count, seed)?;
        let worst = v.iter().map(|x| x.residual).fold(0.0, f64::max);
        let tk = if k == 0 { tol.min(1e-14) } else { tol };
        passed &= worst <= tk;
        per_k.push(json!({ "k": k, "max_residual": worst, "tol": tk }));
        rows.extend(v.into_iter().map(|x| vec![x.k as f64, x.lambda, x.t, x.lhs, x.rhs, x.residual]));
    }
    Ok(Outcome {
        passed,
        summary: format!("{count} points per k for k <= {kmax}"),
        result: json!({ "per_k": per_k, "points_per_k": count }),
        tables: vec![Table::numeric("mk_check", vec!["k", "lambda", "t", "lhs", "rhs", "residual"], rows)],
    })
}

fn identities(cfg: &RunConfig) -> CliResult<Outcome> {
    let bounds = match cfg.max_k {
        Some(k) => SuiteBounds::uniform(k),
        None => SuiteBounds::default(),
    };
    let rows = run_identity_suite(&bounds);
    let passed = suite_passed(&rows);
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let status = match (r.passed(), r.informational) {
                (true, _) => "PASS",
                (false, true) => "INFO",
                (false, false) => "FAIL",
            };
            vec![r.name.to_string(), format!("\"{}\"", r.range), r.cases.to_string(), r.failures.len().to_string(), status.into()]
        })
        .collect();
    Ok(Outcome {
        passed,
        summary: format!("{} identity families", rows.len()),
        result: json!({ "bounds": bounds, "rows": rows }),
        tables: vec![Table { name: "identities".into(), columns: vec!["identity", "range", "cases", "failures", "status"], rows: table }],
    })
}

fn zeros(cfg: &RunConfig) -> CliResult<Outcome> {
    let dim = dim_of(cfg)?;
    let q = quad_of(cfg)?;
    let m = cfg.m.unwrap_or(0);
    let count = cfg.count.unwrap_or(10);
    let tol = cfg.tol.unwrap_or(1e-6);
    let report = if m == 0 {
        let data = data_for(cfg, dim, &q)?;
        bessel_zero_vanishing(data.as_ref(), dim.k(), 0, count, &q)?
    } else {
        let f = profile_of(cfg)?;
        let data = PerturbedData { inner: HarmonicH { f: &f, dim, m, quad: q.clone() }, delta: delta_of(cfg)? };
        bessel_zero_vanishing(&data, dim.k(), m, count, &q)?
    };
    let worst = report.worst_ratio();
    let rows: Vec<Vec<f64>> = report.zeros.iter().zip(&report.values).zip(report.ratios()).map(|((z, v), r)| vec![*z, *v, r]).collect();
    Ok(Outcome {
        passed: worst <= tol,
        summary: format!("worst |F| / max|F| at zeros of j_(m+k+1/2): {worst:.3e} (tol {tol:e})"),
        result: json!({ "n": dim.n(), "m": m, "order": report.order, "max_abs": report.max_abs, "worst_ratio": worst, "tol": tol }),
        tables: vec![Table::numeric("zeros", vec!["zero", "abs_hankel", "ratio"], rows)],
    })
}

fn ucp_demo(cfg: &RunConfig) -> CliResult<Outcome> {
    let spec = match cfg.ucp {
        Some(s) => s,
        None => {
            let dim = dim_of(cfg)?;
            let eps = if dim.n() == 3 { 0.25 } else { 0.2 };
            UcpSpec { n: dim.n(), epsilon: eps, m: cfg.m.unwrap_or(4 * dim.k() + 2), center: 0.6, width: 0.15 }
        }
    };
    spec.validate()?;
    let q = quad_of(cfg)?;
    let tol = cfg.tol.unwrap_or(1e-7);
    let grid = default_t_grid(cfg.grid.unwrap_or(1000));
    let (report, g) = verify_with_data(&spec, &q, &grid, tol)?;
    let below = below_threshold_report(&spec, &q, &grid)?;
    let outside_ok = report.outside_max >= 1e3 * report.inside_max;
    let passed = report.passed && outside_ok;
    let f = crate::ucp::build_counterexample(&spec)?;
    let fr: Vec<Vec<f64>> = (0..1000).map(|i| i as f64 / 1000.0).map(|r| vec![r, f.value(r)]).collect();
    let gr: Vec<Vec<f64>> = grid.iter().zip(&g).map(|(&t, &v)| vec![t, v]).collect();
    Ok(Outcome {
        passed,
        summary: format!(
            "inside ratio {:.3e} (tol {tol:e}), outside/inside {:.3e}, f = 0 on [0, eps]: {}",
            report.ratio_inside,
            report.outside_max / report.inside_max,
            report.f_vanishes_near_origin
        ),
        result: json!({ "report": report, "outside_exceeds_1e3_inside": outside_ok, "below_threshold": below }),
        tables: vec![Table::numeric("ucp_g", vec!["t", "g"], gr), Table::numeric("ucp_f", vec!["r", "f"], fr)],
    })
}
