//! Command-line front end. [`run`] parses an argument vector, writes the
//! requested tables and returns the process exit code:
//! 0 success, 1 usage, 2 numeric failure, 3 I/O failure.

mod svg;
mod table;

pub use svg::{plot_svg, render_svg};
pub use table::{format_float, write_atomic, Column, Table};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::asymptotics::{
    cosine_approximant_with, fig1_table, normalized_poly, phases_with, phi_max, sigma, Fig1Preset,
    PhaseVariant, PhiCoord,
};
use crate::charpoly::{evaluate, zeros, EvalMode, PolySpec};
use crate::empirics::{ks_distance, EmpiricalMeasure};
use crate::error::{Error, Result};
use crate::numerics::PrecisionPolicy;
use crate::raney::{
    cdf_v, density_v, moment_quadrature, raney_number, sample, stieltjes, stieltjes_quadrature,
    stieltjes_root, CdfForm, RaneyParams,
};
use crate::rmt::{ensemble_run, EnsembleConfig};

#[derive(Debug, Parser)]
#[command(
    name = "wishart",
    version,
    about = "Average characteristic polynomials of truncated-unitary/Ginibre products"
)]
struct Cli {
    /// Worker threads for grid sweeps and ensembles (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact and adaptive evaluation of F_n, certified zeros.
    Charpoly {
        #[command(subcommand)]
        op: CharpolyOp,
    },
    /// Plancherel-Rotach phases and the oscillation figure.
    Asymptotics {
        #[command(subcommand)]
        op: AsymptoticsOp,
    },
    /// The limiting zero distribution.
    Raney {
        #[command(subcommand)]
        op: RaneyOp,
    },
    /// Monte-Carlo squared singular values, rescaled by n^(r-1).
    Simulate {
        #[command(flatten)]
        spec: SimArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Kolmogorov-Smirnov distance of a CSV column to V; prints {"ks": value}.
    Ks {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        /// Column to read (default: value, rescaled_zero, sample, then the first).
        #[arg(long)]
        column: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum CharpolyOp {
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        /// Evaluation points, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        x: Vec<f64>,
        /// Evaluate F_n(n^(r-1) x) instead of F_n(x).
        #[arg(long)]
        rescaled: bool,
        #[arg(long, default_value_t = 1e-12)]
        rel_tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    Zeros {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
enum AsymptoticsOp {
    /// Normalized polynomial against its cosine approximant on a φ grid.
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Variant::PiOverTwo)]
        phase_variant: Variant,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Preset r=3, κ=2, ν=2,5, n=150, 500 points on [2π/13, π/6].
    Fig1 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        phi_min: Option<f64>,
        #[arg(long)]
        phi_max: Option<f64>,
        #[arg(long, value_enum, default_value_t = Variant::PiOverTwo)]
        phase_variant: Variant,
        #[command(flatten)]
        out: OutArgs,
    },
    /// a(φ), f(φ), g(φ) and the log envelope on a φ grid.
    Phases {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Variant::PiOverTwo)]
        phase_variant: Variant,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
enum RaneyOp {
    Density {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    Cdf {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    Moments {
        #[arg(long)]
        r: usize,
        /// Highest moment order.
        #[arg(long, default_value_t = 8)]
        n: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    Sample {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    Stieltjes {
        #[arg(long)]
        r: usize,
        /// Points z > x*, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    kappa: u32,
    /// ν_1,...,ν_{r-1}, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    nu: Vec<u32>,
}

impl SpecArgs {
    fn build(&self) -> Result<PolySpec> {
        PolySpec::new(self.r, self.kappa, self.nu.clone())
    }

    fn meta(&self) -> Value {
        json!({"r": self.r, "kappa": self.kappa, "nu": self.nu})
    }
}

#[derive(Debug, Args)]
struct SimArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    kappa: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    nu: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Default: 5% of π/(r+1).
    #[arg(long)]
    phi_min: Option<f64>,
    /// Default: 95% of π/(r+1).
    #[arg(long)]
    phi_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    points: usize,
}

impl GridArgs {
    fn resolve(&self, r: usize) -> Result<(f64, f64, Vec<f64>)> {
        let end = phi_max(r);
        let lo = self.phi_min.unwrap_or(0.05 * end);
        let hi = self.phi_max.unwrap_or(0.95 * end);
        grid(lo, hi, self.points, r).map(|g| (lo, hi, g))
    }
}

fn grid(lo: f64, hi: f64, points: usize, r: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && lo < hi && hi < phi_max(r)) || points < 2 {
        return Err(Error::InvalidParams(format!(
            "need 0 < phi_min < phi_max < pi/{} and points >= 2, got [{lo}, {hi}] with {points}",
            r + 1
        )));
    }
    let m = (points - 1) as f64;
    Ok((0..points).map(|i| lo + (hi - lo) * i as f64 / m).collect())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    PiOverTwo,
    ROverTwo,
}

impl From<Variant> for PhaseVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::PiOverTwo => PhaseVariant::PiOverTwo,
            Variant::ROverTwo => PhaseVariant::ROverTwo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also render the table as an SVG plot.
    #[arg(long)]
    svg: Option<PathBuf>,
}

impl OutArgs {
    fn emit(&self, table: &Table, meta: Value, plot: Option<&Table>) -> Result<()> {
        let bytes = match self.format {
            Format::Csv => table.to_csv()?,
            Format::Json => table.to_json(&meta),
        };
        match &self.out {
            Some(p) => write_atomic(p, &bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        if let Some(p) = &self.svg {
            plot_svg(plot.unwrap_or(table), p)?;
        }
        Ok(())
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::InvalidParams(_) => 1,
        Error::PrecisionCap { .. } | Error::Numeric(_) | Error::Certification(_) => 2,
        Error::Io(_) => 3,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::InvalidParams(_) => "usage",
        Error::PrecisionCap { .. } => "precision",
        Error::Numeric(_) => "numeric",
        Error::Certification(_) => "certification",
        Error::Io(_) => "io",
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Runs the command line `argv` (program name first). Diagnostics go to
/// standard error as a single `wishart: error[kind]: message` line.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("wishart: error[usage]: {}", one_line(first));
            return 1;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::InvalidParams("--jobs must be >= 1".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Error::Numeric(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("wishart: error[{}]: {}", kind(&e), one_line(&e.to_string()));
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Charpoly { op } => charpoly_cmd(op),
        Command::Asymptotics { op } => asymptotics_cmd(op),
        Command::Raney { op } => raney_cmd(op),
        Command::Simulate { spec, out } => simulate_cmd(spec, out),
        Command::Ks { input, r, column } => ks_cmd(input, *r, column.as_deref()),
    }
}

fn charpoly_cmd(op: &CharpolyOp) -> Result<()> {
    match op {
        CharpolyOp::Eval {
            spec,
            n,
            x,
            rescaled,
            rel_tol,
            out,
        } => {
            let ps = spec.build()?;
            let mode = if *rescaled {
                EvalMode::Rescaled
            } else {
                EvalMode::Plain
            };
            let policy = PrecisionPolicy::with_tolerance(*rel_tol);
            let values = x
                .par_iter()
                .map(|&xi| evaluate(&ps, *n, xi, mode, &policy))
                .collect::<Result<Vec<_>>>()?;
            let table = Table::new()
                .with("x", Column::Float(x.clone()))
                .with(
                    "value",
                    Column::Float(values.iter().map(|v| v.to_f64()).collect()),
                )
                .with(
                    "sign",
                    Column::Int(values.iter().map(|v| v.signum() as i64).collect()),
                )
                .with(
                    "log_abs_value",
                    Column::Float(values.iter().map(|v| v.ln_abs()).collect()),
                )
                .with(
                    "precision_bits",
                    Column::Int(values.iter().map(|v| v.precision_bits() as i64).collect()),
                )
                .with(
                    "rel_error_bound",
                    Column::Float(values.iter().map(|v| v.rel_error_bound()).collect()),
                );
            let mut meta = spec.meta();
            meta["command"] = json!("charpoly eval");
            meta["n"] = json!(n);
            meta["rescaled"] = json!(rescaled);
            meta["rel_tol"] = json!(rel_tol);
            out.emit(&table, meta, None)
        }
        CharpolyOp::Zeros { spec, n, out } => {
            let ps = spec.build()?;
            let z = zeros(&ps, *n)?;
            let table = Table::new()
                .with("index", Column::Int((0..*n as i64).collect()))
                .with("zero", Column::Float(z.zeros().to_vec()))
                .with("rescaled_zero", Column::Float(z.rescaled(ps.r())));
            let mut meta = spec.meta();
            meta["command"] = json!("charpoly zeros");
            meta["n"] = json!(n);
            out.emit(&table, meta, None)
        }
    }
}

fn asymptotics_cmd(op: &AsymptoticsOp) -> Result<()> {
    let policy = PrecisionPolicy::default();
    match op {
        AsymptoticsOp::Compare {
            spec,
            n,
            grid: g,
            phase_variant,
            out,
        } => {
            let ps = spec.build()?;
            let (lo, hi, phis) = g.resolve(ps.r())?;
            let variant = PhaseVariant::from(*phase_variant);
            let rows = phis
                .par_iter()
                .map(|&t| {
                    let p = PhiCoord::new(t, ps.r())?;
                    let parts = phases_with(&p, &ps, *n, variant);
                    let norm = normalized_poly(&p, &ps, *n, &policy)?;
                    let c = cosine_approximant_with(&p, &ps, *n, variant);
                    Ok([t, sigma(&p), parts.envelope_log, norm, c, (norm - c).abs()])
                })
                .collect::<Result<Vec<_>>>()?;
            let col = |k: usize| Column::Float(rows.iter().map(|r| r[k]).collect());
            let table = Table::new()
                .with("phi", col(0))
                .with("x", col(1))
                .with("log_envelope", col(2))
                .with("normalized_poly", col(3))
                .with("cosine_approximant", col(4))
                .with("deviation", col(5));
            let plot = Table::new()
                .with("phi", col(0))
                .with("normalized_poly", col(3))
                .with("cosine_approximant", col(4));
            let mut meta = spec.meta();
            meta["command"] = json!("asymptotics compare");
            meta["n"] = json!(n);
            meta["phi_min"] = json!(lo);
            meta["phi_max"] = json!(hi);
            meta["points"] = json!(g.points);
            meta["phase_variant"] = json!(format!("{phase_variant:?}"));
            out.emit(&table, meta, Some(&plot))
        }
        AsymptoticsOp::Fig1 {
            n,
            points,
            phi_min,
            phi_max: phi_hi,
            phase_variant,
            out,
        } => {
            let d = Fig1Preset::default();
            let preset = Fig1Preset {
                n: n.unwrap_or(d.n),
                points: points.unwrap_or(d.points),
                phi_min: phi_min.unwrap_or(d.phi_min),
                phi_max: phi_hi.unwrap_or(d.phi_max),
                variant: (*phase_variant).into(),
                ..d
            };
            if preset.points < 2 {
                return Err(Error::InvalidParams("points must be >= 2".into()));
            }
            let rows = fig1_table(&preset, &policy)?;
            let col = |f: fn(&crate::asymptotics::Fig1Row) -> f64| {
                Column::Float(rows.iter().map(f).collect())
            };
            let table = Table::new()
                .with("phi", col(|r| r.phi))
                .with("x", col(|r| r.x))
                .with("normalized_poly", col(|r| r.normalized_poly))
                .with("cosine_approximant", col(|r| r.cosine_approximant));
            let plot = Table::new()
                .with("phi", col(|r| r.phi))
                .with("normalized_poly", col(|r| r.normalized_poly))
                .with("cosine_approximant", col(|r| r.cosine_approximant));
            let meta = json!({
                "command": "asymptotics fig1",
                "r": preset.spec.r(),
                "kappa": preset.spec.kappa(),
                "nu": preset.spec.nu(),
                "n": preset.n,
                "phi_min": preset.phi_min,
                "phi_max": preset.phi_max,
                "points": preset.points,
                "phase_variant": format!("{phase_variant:?}"),
            });
            out.emit(&table, meta, Some(&plot))
        }
        AsymptoticsOp::Phases {
            spec,
            n,
            grid: g,
            phase_variant,
            out,
        } => {
            let ps = spec.build()?;
            let (lo, hi, phis) = g.resolve(ps.r())?;
            let variant = PhaseVariant::from(*phase_variant);
            let rows = phis
                .iter()
                .map(|&t| {
                    let p = PhiCoord::new(t, ps.r())?;
                    let parts = phases_with(&p, &ps, *n, variant);
                    Ok([
                        t,
                        sigma(&p),
                        crate::asymptotics::a_of(&p),
                        parts.phase_f,
                        parts.phase_g,
                        parts.envelope_log,
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            let col = |k: usize| Column::Float(rows.iter().map(|r| r[k]).collect());
            let table = Table::new()
                .with("phi", col(0))
                .with("x", col(1))
                .with("a", col(2))
                .with("f", col(3))
                .with("g", col(4))
                .with("envelope_log", col(5));
            let plot = Table::new()
                .with("phi", col(0))
                .with("f", col(3))
                .with("g", col(4));
            let mut meta = spec.meta();
            meta["command"] = json!("asymptotics phases");
            meta["n"] = json!(n);
            meta["phi_min"] = json!(lo);
            meta["phi_max"] = json!(hi);
            meta["points"] = json!(g.points);
            meta["phase_variant"] = json!(format!("{phase_variant:?}"));
            out.emit(&table, meta, Some(&plot))
        }
    }
}

fn raney_cmd(op: &RaneyOp) -> Result<()> {
    match op {
        RaneyOp::Density { r, points, out } => {
            let xs = crate::raney::SupportInterval::new(*r)?.upper;
            if *points < 1 {
                return Err(Error::InvalidParams("points must be >= 1".into()));
            }
            let x: Vec<f64> = (1..=*points)
                .map(|i| xs * i as f64 / (*points + 1) as f64)
                .collect();
            let v = x
                .iter()
                .map(|&xi| density_v(xi, *r))
                .collect::<Result<Vec<_>>>()?;
            let table = Table::new()
                .with("x", Column::Float(x))
                .with("density", Column::Float(v));
            let meta = json!({"command": "raney density", "r": r, "points": points});
            out.emit(&table, meta, None)
        }
        RaneyOp::Cdf { r, points, out } => {
            let xs = crate::raney::SupportInterval::new(*r)?.upper;
            if *points < 2 {
                return Err(Error::InvalidParams("points must be >= 2".into()));
            }
            let m = (*points - 1) as f64;
            let x: Vec<f64> = (0..*points).map(|i| xs * i as f64 / m).collect();
            let v: Vec<f64> = x.iter().map(|&xi| cdf_v(xi, *r, CdfForm::Closed)).collect();
            let table = Table::new()
                .with("x", Column::Float(x))
                .with("cdf", Column::Float(v));
            let meta = json!({"command": "raney cdf", "r": r, "points": points});
            out.emit(&table, meta, None)
        }
        RaneyOp::Moments { r, n, out } => {
            let params = RaneyParams::model(*r)?;
            let ks: Vec<u32> = (0..=*n).collect();
            let exact: Vec<f64> = ks
                .iter()
                .map(|&k| raney_number(&params, k as u64))
                .collect();
            let quad = ks
                .iter()
                .map(|&k| moment_quadrature(k, *r))
                .collect::<Result<Vec<_>>>()?;
            let table = Table::new()
                .with("k", Column::Int(ks.iter().map(|&k| k as i64).collect()))
                .with("raney_number", Column::Float(exact))
                .with("quadrature", Column::Float(quad));
            let meta = json!({"command": "raney moments", "r": r, "n": n});
            out.emit(&table, meta, None)
        }
        RaneyOp::Sample {
            r,
            count,
            seed,
            out,
        } => {
            let s = sample(*r, *count, *seed)?;
            let table = Table::new().with("sample", Column::Float(s));
            let meta = json!({"command": "raney sample", "r": r, "count": count, "seed": seed});
            out.emit(&table, meta, None)
        }
        RaneyOp::Stieltjes { r, x, out } => {
            let w = x
                .iter()
                .map(|&z| stieltjes_root(z, *r))
                .collect::<Result<Vec<_>>>()?;
            let f = x
                .iter()
                .map(|&z| stieltjes(z, *r))
                .collect::<Result<Vec<_>>>()?;
            let q = x
                .iter()
                .map(|&z| stieltjes_quadrature(z, *r))
                .collect::<Result<Vec<_>>>()?;
            let table = Table::new()
                .with("z", Column::Float(x.clone()))
                .with("w", Column::Float(w))
                .with("stieltjes", Column::Float(f))
                .with("quadrature", Column::Float(q));
            let meta = json!({"command": "raney stieltjes", "r": r});
            out.emit(&table, meta, None)
        }
    }
}

fn simulate_cmd(a: &SimArgs, out: &OutArgs) -> Result<()> {
    let config = EnsembleConfig::new(a.r, a.n, a.kappa, a.nu.clone(), a.trials, a.seed)?;
    let mu = ensemble_run(&config)?;
    let table = Table::new().with("value", Column::Float(mu.atoms().to_vec()));
    let meta = json!({
        "command": "simulate",
        "r": a.r,
        "n": a.n,
        "kappa": a.kappa,
        "nu": a.nu,
        "trials": a.trials,
        "seed": a.seed,
    });
    out.emit(&table, meta, None)
}

fn ks_cmd(input: &std::path::Path, r: usize, column: Option<&str>) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r must be >= 2, got {r}")));
    }
    let table = Table::read_csv(input)?;
    let col = match column {
        Some(name) => table.column(name).ok_or_else(|| {
            Error::InvalidParams(format!("no column `{name}` in {}", input.display()))
        })?,
        None => ["value", "rescaled_zero", "sample"]
            .iter()
            .find_map(|n| table.column(n))
            .or_else(|| table.columns().first())
            .ok_or_else(|| Error::InvalidParams(format!("{} has no columns", input.display())))?,
    };
    let mu = EmpiricalMeasure::new(col.as_f64())?;
    let ks = ks_distance(&mu, |x| cdf_v(x, r, CdfForm::Phase));
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{}", json!({ "ks": ks }))?;
    Ok(())
}
