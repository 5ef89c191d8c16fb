//! Command execution: engine-call plans, the rayon worker pool, and
//! row assembly. Points are computed in parallel but collected in
//! submission order, so output is deterministic for any --jobs value.

use std::f64::consts::PI;

use rayon::prelude::*;

use casimir_core::{
    classify_limit, pressure, trace_limit, DielectricModel, ForceResult, LifshitzError,
    LimitClass, LimitPath, PlateSystem, Prescription, SumConfig,
};

use crate::emit::{CompareRow, PfaRow, ProbeRow, SweepRow};
use crate::units::prescription_name;

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if jobs > 0 {
        builder = builder.num_threads(jobs);
    }
    builder
        .build()
        .map_err(|e| format!("cannot start worker pool: {e}"))
}

/// A converged or term-capped frequency sum; anything else is a
/// failure string carrying the offending gap.
enum Outcome {
    Converged(ForceResult),
    Truncated(ForceResult),
}

fn evaluate(d: f64, temp: f64, model: &DielectricModel, pres: Prescription, cfg: &SumConfig) -> Result<Outcome, String> {
    let system = PlateSystem::new(d, temp, model.clone(), pres);
    match pressure(&system, cfg) {
        Ok(r) => Ok(Outcome::Converged(r)),
        Err(LifshitzError::Truncated { partial, .. }) => Ok(Outcome::Truncated(*partial)),
        Err(e) => Err(format!(
            "d = {d:.3e} m, {}: {e}",
            prescription_name(pres)
        )),
    }
}

pub struct SweepPlan {
    pub grid: Vec<f64>,
    pub temp: f64,
    pub model: DielectricModel,
    pub model_name: &'static str,
    pub prescriptions: Vec<Prescription>,
    pub cfg: SumConfig,
    pub jobs: usize,
}

pub struct TableOutcome<R> {
    pub rows: Vec<R>,
    pub truncated: usize,
    pub failures: Vec<String>,
}

pub fn run_sweep(plan: &SweepPlan) -> Result<TableOutcome<SweepRow>, String> {
    let pool = thread_pool(plan.jobs)?;
    let tasks: Vec<(f64, Prescription)> = plan
        .grid
        .iter()
        .flat_map(|&d| plan.prescriptions.iter().map(move |&p| (d, p)))
        .collect();
    let results: Vec<Result<Outcome, String>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(d, pres)| evaluate(d, plan.temp, &plan.model, pres, &plan.cfg))
            .collect()
    });

    let mut out = TableOutcome {
        rows: Vec::with_capacity(tasks.len()),
        truncated: 0,
        failures: Vec::new(),
    };
    for (&(d, pres), res) in tasks.iter().zip(results) {
        let force = match res {
            Ok(Outcome::Converged(r)) => r,
            Ok(Outcome::Truncated(r)) => {
                out.truncated += 1;
                r
            }
            Err(msg) => {
                out.failures.push(msg);
                continue;
            }
        };
        out.rows.push(SweepRow {
            d_m: d,
            t_k: plan.temp,
            model: plan.model_name,
            prescription: prescription_name(pres),
            pressure_pa: force.pressure,
            free_energy_j_m2: force.free_energy_area,
            eta: force.eta,
            n_terms: force.n_used,
            est_rel_err: force.est_rel_err,
        });
    }
    Ok(out)
}

pub struct ComparePlan {
    pub grid: Vec<f64>,
    pub temp: f64,
    pub model: DielectricModel,
    pub cfg: SumConfig,
    pub jobs: usize,
}

pub fn run_compare(plan: &ComparePlan) -> Result<TableOutcome<CompareRow>, String> {
    let pool = thread_pool(plan.jobs)?;
    let results: Vec<(Result<Outcome, String>, Result<Outcome, String>)> = pool.install(|| {
        plan.grid
            .par_iter()
            .map(|&d| {
                (
                    evaluate(d, plan.temp, &plan.model, Prescription::PointwiseLimit, &plan.cfg),
                    evaluate(d, plan.temp, &plan.model, Prescription::IdealTEZero, &plan.cfg),
                )
            })
            .collect()
    });

    let mut out = TableOutcome {
        rows: Vec::with_capacity(plan.grid.len()),
        truncated: 0,
        failures: Vec::new(),
    };
    for (&d, (pw, id)) in plan.grid.iter().zip(results) {
        let pw = settle(pw, &mut out.truncated, &mut out.failures);
        let id = settle(id, &mut out.truncated, &mut out.failures);
        let (Some(pw), Some(id)) = (pw, id) else {
            continue;
        };
        out.rows.push(CompareRow {
            d_m: d,
            ratio: pw.pressure / id.pressure,
            abs_diff_pa: (pw.pressure - id.pressure).abs(),
        });
    }
    Ok(out)
}

fn settle(
    side: Result<Outcome, String>,
    truncated: &mut usize,
    failures: &mut Vec<String>,
) -> Option<ForceResult> {
    match side {
        Ok(Outcome::Converged(r)) => Some(r),
        Ok(Outcome::Truncated(r)) => {
            *truncated += 1;
            Some(r)
        }
        Err(msg) => {
            failures.push(msg);
            None
        }
    }
}

pub struct ProbePlan {
    pub path: LimitPath,
    pub model: DielectricModel,
    pub xi_start: f64,
    pub decades: usize,
    pub per_decade: usize,
}

pub fn run_probe(plan: &ProbePlan) -> (Vec<ProbeRow>, LimitClass) {
    let trace = trace_limit(
        plan.path,
        plan.model.clone(),
        plan.xi_start,
        plan.decades,
        plan.per_decade,
    );
    let class = classify_limit(&trace);
    let rows = trace
        .rows
        .iter()
        .map(|r| ProbeRow {
            xi: r.xi,
            gamma0: r.gamma0,
            gamma1: r.gamma1,
            diff: r.diff,
            ratio: r.ratio,
            rte2: r.rte2,
        })
        .collect();
    (rows, class)
}

pub struct PfaPlan {
    pub radius: f64,
    pub grid: Vec<f64>,
    pub temp: f64,
    pub model: DielectricModel,
    pub prescriptions: Vec<Prescription>,
    pub cfg: SumConfig,
    pub jobs: usize,
}

pub fn run_pfa(plan: &PfaPlan) -> Result<TableOutcome<PfaRow>, String> {
    let pool = thread_pool(plan.jobs)?;
    let tasks: Vec<(f64, Prescription)> = plan
        .grid
        .iter()
        .flat_map(|&d| plan.prescriptions.iter().map(move |&p| (d, p)))
        .collect();
    let results: Vec<Result<Outcome, String>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(d, pres)| evaluate(d, plan.temp, &plan.model, pres, &plan.cfg))
            .collect()
    });

    let mut out = TableOutcome {
        rows: Vec::with_capacity(tasks.len()),
        truncated: 0,
        failures: Vec::new(),
    };
    for (&(d, pres), res) in tasks.iter().zip(results) {
        let force = match res {
            Ok(Outcome::Converged(r)) => r,
            Ok(Outcome::Truncated(r)) => {
                out.truncated += 1;
                r
            }
            Err(msg) => {
                out.failures.push(msg);
                continue;
            }
        };
        out.rows.push(PfaRow {
            d_m: d,
            prescription: prescription_name(pres),
            force_n: 2.0 * PI * plan.radius * force.free_energy_area,
        });
    }
    Ok(out)
}
