//! `casimir`: finite-temperature Casimir force calculations between
//! parallel metal plates, from the command line.
//!
//! Four subcommands: `sweep` tabulates pressure and free energy over a
//! gap grid, `compare` reports the pressure ratio of the two n = 0 TE
//! prescriptions, `limit-probe` traces the disputed ξ → 0 limit along
//! a fixed-q or fixed-p path, and `pfa` converts plate free energy
//! into sphere-plate force. Output is frozen-schema CSV or JSON with a
//! metadata header; `--plot` drops a matplotlib script next to the
//! data file.
//!
//! Exit codes: 0 success, 2 usage error, 3 computation failure
//! (truncated sums still write their partial table before exiting 3).

mod emit;
mod run;
mod units;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use casimir_core::{LimitPath, QuadSpec, SumConfig};

use emit::PlotKind;
use run::{ComparePlan, PfaPlan, ProbePlan, SweepPlan};
use units::{build_grid, prescription_name, resolve_model, resolve_prescriptions};

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Finite-temperature Casimir force between metal plates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pressure and free energy per unit area over a gap sweep
    Sweep(SweepCmd),
    /// Per-gap pressure ratio of the two n = 0 TE prescriptions
    Compare(CompareCmd),
    /// Trace the xi -> 0 limit along a fixed-q or fixed-p path
    LimitProbe(LimitProbeCmd),
    /// Sphere-plate force via the proximity-force approximation
    Pfa(PfaCmd),
}

#[derive(Args)]
struct ModelOpts {
    /// Dielectric model: ideal, plasma, drude, or table:PATH
    #[arg(long, default_value = "drude")]
    model: String,
    /// Plasma frequency, with unit (e.g. 9.0eV or 1.37e16rad/s)
    #[arg(long = "omega-p", default_value = "9.0eV")]
    omega_p: String,
    /// Drude relaxation rate, with unit
    #[arg(long = "gamma-d", default_value = "0.035eV")]
    gamma_d: String,
}

#[derive(Args)]
struct GridOpts {
    /// Smallest gap, m
    #[arg(long, default_value_t = 1e-7)]
    dmin: f64,
    /// Largest gap, m
    #[arg(long, default_value_t = 5e-6)]
    dmax: f64,
    /// Number of gap points
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Logarithmic spacing (the default)
    #[arg(long, conflicts_with = "linear")]
    log: bool,
    /// Linear spacing
    #[arg(long)]
    linear: bool,
}

impl GridOpts {
    fn log_spacing(&self) -> bool {
        !self.linear
    }

    fn spacing_name(&self) -> &'static str {
        if self.log_spacing() {
            "log"
        } else {
            "linear"
        }
    }
}

#[derive(Args)]
struct EngineOpts {
    /// Temperature, K
    #[arg(long, default_value_t = 300.0)]
    temp: f64,
    /// Relative tolerance of the wave-number quadrature, in [1e-12, 1e-4]
    #[arg(long = "rel-tol", default_value_t = 1e-9)]
    rel_tol: f64,
    /// Hard cap on Matsubara terms per point
    #[arg(long = "max-terms", default_value_t = 20_000)]
    max_terms: usize,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

impl EngineOpts {
    fn sum_config(&self) -> Result<SumConfig, String> {
        if !(self.temp > 0.0 && self.temp.is_finite()) {
            return Err(format!("--temp must be positive and finite, got {}", self.temp));
        }
        if !(1e-12..=1e-4).contains(&self.rel_tol) {
            return Err(format!(
                "--rel-tol must lie in [1e-12, 1e-4], got {:e}",
                self.rel_tol
            ));
        }
        if self.max_terms < 10 {
            return Err(format!("--max-terms must be at least 10, got {}", self.max_terms));
        }
        Ok(SumConfig {
            term_rel_tol: (self.rel_tol * 10.0).min(1e-4),
            max_terms: self.max_terms,
            quad: QuadSpec {
                rel_tol: self.rel_tol,
                ..QuadSpec::default()
            },
        })
    }
}

#[derive(Args)]
struct OutputOpts {
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    out: String,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write a matplotlib script next to the data (needs --output, CSV)
    #[arg(long)]
    plot: bool,
}

enum OutFormat {
    Csv,
    Json,
}

impl OutputOpts {
    fn format(&self) -> Result<OutFormat, String> {
        match self.out.as_str() {
            "csv" => Ok(OutFormat::Csv),
            "json" => Ok(OutFormat::Json),
            other => Err(format!("unknown output format {other:?} (expected csv or json)")),
        }
    }

    fn validate_plot(&self) -> Result<(), String> {
        if self.plot {
            if self.output.is_none() {
                return Err("--plot needs --output so the script can reference the data file".into());
            }
            if !matches!(self.format()?, OutFormat::Csv) {
                return Err("--plot scripts read CSV; use --out csv".into());
            }
        }
        Ok(())
    }
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    grid: GridOpts,
    #[command(flatten)]
    engine: EngineOpts,
    /// n = 0 TE prescription: pointwise, ideal-te0, or both
    #[arg(long, default_value = "both")]
    prescription: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct CompareCmd {
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    grid: GridOpts,
    #[command(flatten)]
    engine: EngineOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct LimitProbeCmd {
    /// Limit path: fixed-q or fixed-p
    #[arg(long, default_value = "fixed-q")]
    path: String,
    /// Transverse wave number for fixed-q, rad/m
    #[arg(long, default_value_t = 1e6)]
    q: f64,
    /// p = c gamma0 / xi for fixed-p
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Top of the frequency ladder, rad/s
    #[arg(long = "xi-start", default_value_t = 1e14)]
    xi_start: f64,
    /// Decades of descent
    #[arg(long, default_value_t = 8)]
    decades: usize,
    /// Ladder rungs per decade
    #[arg(long = "per-decade", default_value_t = 3)]
    per_decade: usize,
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct PfaCmd {
    /// Sphere radius, m
    #[arg(long, default_value_t = 1e-2)]
    radius: f64,
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    grid: GridOpts,
    #[command(flatten)]
    engine: EngineOpts,
    /// n = 0 TE prescription: pointwise, ideal-te0, or both
    #[arg(long, default_value = "both")]
    prescription: String,
    #[command(flatten)]
    output: OutputOpts,
}

enum Failure {
    Usage(String),
    Compute(String),
}

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(cmd) => cmd_sweep(cmd),
        Command::Compare(cmd) => cmd_compare(cmd),
        Command::LimitProbe(cmd) => cmd_limit_probe(cmd),
        Command::Pfa(cmd) => cmd_pfa(cmd),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Shared tail of the tabulating commands: deliver the table, drop the
/// plot script, report failures, and fold truncation into the exit
/// code.
fn finish_table(
    output: &OutputOpts,
    kind: PlotKind,
    content: String,
    truncated: usize,
    failures: &[String],
) -> Result<ExitCode, Failure> {
    emit::deliver(output.output.as_deref(), &content).map_err(Failure::Compute)?;
    if output.plot {
        let path: &Path = output.output.as_deref().expect("validated with the flags");
        emit::write_plot_script(kind, path).map_err(Failure::Compute)?;
    }
    for msg in failures {
        eprintln!("error: {msg}");
    }
    if truncated > 0 {
        eprintln!(
            "warning: {truncated} point(s) hit the Matsubara term cap; \
             their rows carry the partial sums (see est_rel_err)"
        );
    }
    if failures.is_empty() && truncated == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn cmd_sweep(cmd: SweepCmd) -> Result<ExitCode, Failure> {
    let (model, model_name) =
        resolve_model(&cmd.model.model, &cmd.model.omega_p, &cmd.model.gamma_d).map_err(usage)?;
    let prescriptions = resolve_prescriptions(&cmd.prescription).map_err(usage)?;
    let grid = build_grid(
        cmd.grid.dmin,
        cmd.grid.dmax,
        cmd.grid.points,
        cmd.grid.log_spacing(),
        false,
    )
    .map_err(usage)?;
    let cfg = cmd.engine.sum_config().map_err(usage)?;
    cmd.output.validate_plot().map_err(usage)?;
    let format = cmd.output.format().map_err(usage)?;

    let plan = SweepPlan {
        grid,
        temp: cmd.engine.temp,
        model,
        model_name,
        prescriptions: prescriptions.clone(),
        cfg,
        jobs: cmd.engine.jobs,
    };
    let table = run::run_sweep(&plan).map_err(Failure::Compute)?;

    let content = match format {
        OutFormat::Csv => emit::sweep_csv(&table.rows),
        OutFormat::Json => emit::json_document(
            json!({
                "command": "sweep",
                "model": model_name,
                "temp_K": cmd.engine.temp,
                "dmin_m": cmd.grid.dmin,
                "dmax_m": cmd.grid.dmax,
                "points": cmd.grid.points,
                "spacing": cmd.grid.spacing_name(),
                "prescriptions": prescriptions.iter().map(|&p| prescription_name(p)).collect::<Vec<_>>(),
                "rel_tol": cmd.engine.rel_tol,
                "max_terms": cmd.engine.max_terms,
            }),
            &table.rows,
        ),
    };
    finish_table(&cmd.output, PlotKind::Sweep, content, table.truncated, &table.failures)
}

fn cmd_compare(cmd: CompareCmd) -> Result<ExitCode, Failure> {
    let (model, model_name) =
        resolve_model(&cmd.model.model, &cmd.model.omega_p, &cmd.model.gamma_d).map_err(usage)?;
    let grid = build_grid(
        cmd.grid.dmin,
        cmd.grid.dmax,
        cmd.grid.points,
        cmd.grid.log_spacing(),
        false,
    )
    .map_err(usage)?;
    let cfg = cmd.engine.sum_config().map_err(usage)?;
    cmd.output.validate_plot().map_err(usage)?;
    let format = cmd.output.format().map_err(usage)?;

    let plan = ComparePlan {
        grid,
        temp: cmd.engine.temp,
        model,
        cfg,
        jobs: cmd.engine.jobs,
    };
    let table = run::run_compare(&plan).map_err(Failure::Compute)?;

    let content = match format {
        OutFormat::Csv => emit::compare_csv(&table.rows),
        OutFormat::Json => emit::json_document(
            json!({
                "command": "compare",
                "model": model_name,
                "temp_K": cmd.engine.temp,
                "dmin_m": cmd.grid.dmin,
                "dmax_m": cmd.grid.dmax,
                "points": cmd.grid.points,
                "spacing": cmd.grid.spacing_name(),
                "ratio": "pressure(pointwise) / pressure(ideal-te0)",
                "rel_tol": cmd.engine.rel_tol,
                "max_terms": cmd.engine.max_terms,
            }),
            &table.rows,
        ),
    };
    finish_table(&cmd.output, PlotKind::Compare, content, table.truncated, &table.failures)
}

fn cmd_limit_probe(cmd: LimitProbeCmd) -> Result<ExitCode, Failure> {
    let (model, model_name) =
        resolve_model(&cmd.model.model, &cmd.model.omega_p, &cmd.model.gamma_d).map_err(usage)?;
    let path = match cmd.path.as_str() {
        "fixed-q" => {
            if !(cmd.q > 0.0 && cmd.q.is_finite()) {
                return Err(usage(format!("--q must be positive and finite, got {}", cmd.q)));
            }
            LimitPath::FixedQ { q: cmd.q }
        }
        "fixed-p" => {
            if !(cmd.p >= 1.0 && cmd.p.is_finite()) {
                return Err(usage(format!("--p must be >= 1 and finite, got {}", cmd.p)));
            }
            LimitPath::FixedP { p: cmd.p }
        }
        other => {
            return Err(usage(format!(
                "unknown path {other:?} (expected fixed-q or fixed-p)"
            )))
        }
    };
    if !(cmd.xi_start > 0.0 && cmd.xi_start.is_finite()) {
        return Err(usage(format!(
            "--xi-start must be positive and finite, got {:e}",
            cmd.xi_start
        )));
    }
    if cmd.decades < 3 {
        return Err(usage(format!("--decades must be at least 3, got {}", cmd.decades)));
    }
    if cmd.per_decade < 1 {
        return Err(usage(format!(
            "--per-decade must be at least 1, got {}",
            cmd.per_decade
        )));
    }
    cmd.output.validate_plot().map_err(usage)?;
    let format = cmd.output.format().map_err(usage)?;

    let plan = ProbePlan {
        path,
        model,
        xi_start: cmd.xi_start,
        decades: cmd.decades,
        per_decade: cmd.per_decade,
    };
    let (rows, class) = run::run_probe(&plan);

    let content = match format {
        OutFormat::Csv => emit::probe_csv(&rows),
        OutFormat::Json => emit::json_document(
            json!({
                "command": "limit-probe",
                "model": model_name,
                "path": cmd.path,
                "q": cmd.q,
                "p": cmd.p,
                "xi_start": cmd.xi_start,
                "decades": cmd.decades,
                "per_decade": cmd.per_decade,
                "classification": format!("{class:?}"),
            }),
            &rows,
        ),
    };
    emit::deliver(cmd.output.output.as_deref(), &content).map_err(Failure::Compute)?;
    if cmd.output.plot {
        let path: &Path = cmd.output.output.as_deref().expect("validated with the flags");
        emit::write_plot_script(PlotKind::Probe, path).map_err(Failure::Compute)?;
    }
    println!("classification: {class:?}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_pfa(cmd: PfaCmd) -> Result<ExitCode, Failure> {
    if !(cmd.radius > 0.0 && cmd.radius.is_finite()) {
        return Err(usage(format!(
            "--radius must be positive and finite, got {:e}",
            cmd.radius
        )));
    }
    let (model, model_name) =
        resolve_model(&cmd.model.model, &cmd.model.omega_p, &cmd.model.gamma_d).map_err(usage)?;
    let prescriptions = resolve_prescriptions(&cmd.prescription).map_err(usage)?;
    let grid = build_grid(
        cmd.grid.dmin,
        cmd.grid.dmax,
        cmd.grid.points,
        cmd.grid.log_spacing(),
        true,
    )
    .map_err(usage)?;
    let cfg = cmd.engine.sum_config().map_err(usage)?;
    cmd.output.validate_plot().map_err(usage)?;
    let format = cmd.output.format().map_err(usage)?;

    let d_max = *grid.last().expect("grid is never empty");
    if cmd.radius < 100.0 * d_max {
        eprintln!(
            "warning: the proximity-force approximation needs R >> d; \
             R = {:.3e} m is below 100 x the largest gap {:.3e} m",
            cmd.radius, d_max
        );
    }

    let plan = PfaPlan {
        radius: cmd.radius,
        grid,
        temp: cmd.engine.temp,
        model,
        prescriptions: prescriptions.clone(),
        cfg,
        jobs: cmd.engine.jobs,
    };
    let table = run::run_pfa(&plan).map_err(Failure::Compute)?;

    let content = match format {
        OutFormat::Csv => emit::pfa_csv(&table.rows),
        OutFormat::Json => emit::json_document(
            json!({
                "command": "pfa",
                "model": model_name,
                "radius_m": cmd.radius,
                "temp_K": cmd.engine.temp,
                "dmin_m": cmd.grid.dmin,
                "dmax_m": cmd.grid.dmax,
                "points": cmd.grid.points,
                "spacing": cmd.grid.spacing_name(),
                "prescriptions": prescriptions.iter().map(|&p| prescription_name(p)).collect::<Vec<_>>(),
                "rel_tol": cmd.engine.rel_tol,
                "max_terms": cmd.engine.max_terms,
            }),
            &table.rows,
        ),
    };
    finish_table(&cmd.output, PlotKind::Pfa, content, table.truncated, &table.failures)
}
