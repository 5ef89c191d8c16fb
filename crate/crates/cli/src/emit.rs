//! Output surfaces: frozen-schema CSV, JSON with a metadata header,
//! generated plot scripts, and file-or-stdout delivery.
//!
//! The CSV column orders are a compatibility contract. Numeric fields
//! are printed with `{:.8e}` (nine significant digits, scientific
//! notation) so byte-level diffs are meaningful across runs.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use casimir_core::constants::{C, HBAR, K_B};

pub const SWEEP_HEADER: &str =
    "d_m,T_K,model,prescription,pressure_Pa,free_energy_J_m2,eta,n_terms,est_rel_err";
pub const COMPARE_HEADER: &str = "d_m,ratio,abs_diff_Pa";
pub const PROBE_HEADER: &str = "xi,gamma0,gamma1,diff,ratio,rte2";
pub const PFA_HEADER: &str = "d_m,prescription,force_N";

pub fn fmt_e(x: f64) -> String {
    format!("{x:.8e}")
}

/// One row of the sweep table, already resolved to printable values.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub d_m: f64,
    #[serde(rename = "T_K")]
    pub t_k: f64,
    pub model: &'static str,
    pub prescription: &'static str,
    #[serde(rename = "pressure_Pa")]
    pub pressure_pa: f64,
    #[serde(rename = "free_energy_J_m2")]
    pub free_energy_j_m2: f64,
    pub eta: f64,
    pub n_terms: usize,
    pub est_rel_err: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub d_m: f64,
    pub ratio: f64,
    #[serde(rename = "abs_diff_Pa")]
    pub abs_diff_pa: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeRow {
    pub xi: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    pub diff: f64,
    pub ratio: f64,
    pub rte2: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PfaRow {
    pub d_m: f64,
    pub prescription: &'static str,
    #[serde(rename = "force_N")]
    pub force_n: f64,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}",
            fmt_e(r.d_m),
            fmt_e(r.t_k),
            r.model,
            r.prescription,
            fmt_e(r.pressure_pa),
            fmt_e(r.free_energy_j_m2),
            fmt_e(r.eta),
            r.n_terms,
            fmt_e(r.est_rel_err),
        ));
    }
    out.push('\n');
    out
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from(COMPARE_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&format!(
            "{},{},{}",
            fmt_e(r.d_m),
            fmt_e(r.ratio),
            fmt_e(r.abs_diff_pa)
        ));
    }
    out.push('\n');
    out
}

pub fn probe_csv(rows: &[ProbeRow]) -> String {
    let mut out = String::from(PROBE_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&format!(
            "{},{},{},{},{},{}",
            fmt_e(r.xi),
            fmt_e(r.gamma0),
            fmt_e(r.gamma1),
            fmt_e(r.diff),
            fmt_e(r.ratio),
            fmt_e(r.rte2),
        ));
    }
    out.push('\n');
    out
}

pub fn pfa_csv(rows: &[PfaRow]) -> String {
    let mut out = String::from(PFA_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&format!(
            "{},{},{}",
            fmt_e(r.d_m),
            r.prescription,
            fmt_e(r.force_n)
        ));
    }
    out.push('\n');
    out
}

/// JSON mirror of a CSV table: metadata header (constants, package
/// version, echo of the resolved configuration) plus the rows as an
/// array of objects keyed by the CSV column names.
pub fn json_document<R: Serialize>(config: serde_json::Value, rows: &[R]) -> String {
    let doc = json!({
        "metadata": {
            "package": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "constants": {
                "hbar_J_s": HBAR,
                "c_m_per_s": C,
                "k_B_J_per_K": K_B,
            },
            "config": config,
        },
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
    s.push('\n');
    s
}

/// Deliver to --output or stdout.
pub fn deliver(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Companion matplotlib script next to the data file: `foo.csv` gets
/// `foo_plot.py` producing `foo.png`.
pub fn write_plot_script(kind: PlotKind, data_path: &Path) -> Result<(), String> {
    let stem = data_path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| format!("cannot derive a script name from {}", data_path.display()))?;
    let data_name = data_path
        .file_name()
        .and_then(|s| s.to_str())
        .ok_or_else(|| format!("cannot derive a data name from {}", data_path.display()))?;
    let script_path = data_path.with_file_name(format!("{stem}_plot.py"));
    let body = plot_script(kind, data_name, stem);
    fs::write(&script_path, body)
        .map_err(|e| format!("cannot write {}: {e}", script_path.display()))
}

#[derive(Debug, Clone, Copy)]
pub enum PlotKind {
    Sweep,
    Compare,
    Probe,
    Pfa,
}

fn plot_script(kind: PlotKind, data_name: &str, stem: &str) -> String {
    match kind {
        PlotKind::Sweep => format!(
            r#"#!/usr/bin/env python3
"""Casimir pressure against gap, one curve per prescription."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

series = defaultdict(lambda: ([], []))
with open("{data_name}") as fh:
    for row in csv.DictReader(fh):
        xs, ys = series[row["prescription"]]
        xs.append(float(row["d_m"]))
        ys.append(abs(float(row["pressure_Pa"])))

fig, ax = plt.subplots(figsize=(6, 4.2))
for name, (xs, ys) in sorted(series.items()):
    ax.loglog(xs, ys, marker="o", markersize=3, linewidth=1.2, label=name)
ax.set_xlabel("gap d (m)")
ax.set_ylabel("|pressure| (Pa)")
ax.grid(True, which="both", alpha=0.3)
ax.legend(title="n = 0 TE prescription")
fig.tight_layout()
fig.savefig("{stem}.png", dpi=160)
"#
        ),
        PlotKind::Compare => format!(
            r#"#!/usr/bin/env python3
"""Pressure ratio of the two zero-frequency prescriptions vs gap."""
import csv

import matplotlib.pyplot as plt

xs, ys = [], []
with open("{data_name}") as fh:
    for row in csv.DictReader(fh):
        xs.append(float(row["d_m"]))
        ys.append(float(row["ratio"]))

fig, ax = plt.subplots(figsize=(6, 4.2))
ax.semilogx(xs, ys, marker="o", markersize=3, linewidth=1.2)
ax.axhline(0.5, color="gray", linestyle="--", linewidth=0.8)
ax.set_xlabel("gap d (m)")
ax.set_ylabel("P_pointwise / P_ideal-te0")
ax.grid(True, which="both", alpha=0.3)
fig.tight_layout()
fig.savefig("{stem}.png", dpi=160)
"#
        ),
        PlotKind::Probe => format!(
            r#"#!/usr/bin/env python3
"""TE reflectivity and decay-constant ratio down the frequency ladder."""
import csv

import matplotlib.pyplot as plt

xi, rte2, ratio = [], [], []
with open("{data_name}") as fh:
    for row in csv.DictReader(fh):
        xi.append(float(row["xi"]))
        rte2.append(float(row["rte2"]))
        ratio.append(float(row["ratio"]))

fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
ax1.loglog(xi, rte2, marker="o", markersize=3)
ax1.set_ylabel("r_TE^2")
ax2.loglog(xi, ratio, marker="o", markersize=3, color="tab:orange")
ax2.set_ylabel("gamma1 / gamma0")
ax2.set_xlabel("xi (rad/s)")
for ax in (ax1, ax2):
    ax.grid(True, which="both", alpha=0.3)
fig.tight_layout()
fig.savefig("{stem}.png", dpi=160)
"#
        ),
        PlotKind::Pfa => format!(
            r#"#!/usr/bin/env python3
"""Sphere-plate force against gap, one curve per prescription."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

series = defaultdict(lambda: ([], []))
with open("{data_name}") as fh:
    for row in csv.DictReader(fh):
        xs, ys = series[row["prescription"]]
        xs.append(float(row["d_m"]))
        ys.append(abs(float(row["force_N"])))

fig, ax = plt.subplots(figsize=(6, 4.2))
for name, (xs, ys) in sorted(series.items()):
    ax.loglog(xs, ys, marker="o", markersize=3, linewidth=1.2, label=name)
ax.set_xlabel("gap d (m)")
ax.set_ylabel("|force| (N)")
ax.grid(True, which="both", alpha=0.3)
ax.legend(title="n = 0 TE prescription")
fig.tight_layout()
fig.savefig("{stem}.png", dpi=160)
"#
        ),
    }
}
