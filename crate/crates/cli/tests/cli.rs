//! End-to-end tests of the `casimir` binary: frozen output schemas,
//! exit codes, the partial-table truncation path, and file handling.
//! Everything runs the real executable through std::process.

use std::fs;
use std::io::Write;
use std::process::{Command, Output};

use casimir_core::constants::{E_CHARGE, HBAR};
use casimir_core::{pressure, DielectricModel, PlateSystem, Prescription, SumConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("launch casimir")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn csv_headers_are_frozen() {
    let sweep = run(&["sweep", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2"]);
    assert_eq!(code(&sweep), 0);
    assert_eq!(
        stdout_of(&sweep).lines().next().unwrap(),
        "d_m,T_K,model,prescription,pressure_Pa,free_energy_J_m2,eta,n_terms,est_rel_err"
    );

    let compare = run(&["compare", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2"]);
    assert_eq!(code(&compare), 0);
    assert_eq!(
        stdout_of(&compare).lines().next().unwrap(),
        "d_m,ratio,abs_diff_Pa"
    );

    let probe = run(&["limit-probe"]);
    assert_eq!(code(&probe), 0);
    assert_eq!(
        stdout_of(&probe).lines().next().unwrap(),
        "xi,gamma0,gamma1,diff,ratio,rte2"
    );

    let pfa = run(&[
        "pfa", "--radius", "1e-2", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2",
    ]);
    assert_eq!(code(&pfa), 0);
    assert_eq!(
        stdout_of(&pfa).lines().next().unwrap(),
        "d_m,prescription,force_N"
    );
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["sweep", "--dmin", "1e-6", "--dmax", "1e-6", "--points", "2"],
        &["sweep", "--dmin", "2e-6", "--dmax", "1e-6"],
        &["sweep", "--omega-p", "9.0lightyears"],
        &["sweep", "--model", "bcs"],
        &["sweep", "--prescription", "majority-vote"],
        &["sweep", "--plot"],
        &["sweep", "--out", "yaml"],
        &["sweep", "--rel-tol", "1e-2"],
        &["sweep", "--max-terms", "3"],
        &["sweep", "--temp", "-10"],
        &["limit-probe", "--path", "diagonal"],
        &["limit-probe", "--path", "fixed-p", "--p", "0.5"],
        &["limit-probe", "--decades", "2"],
        &["pfa", "--radius", "-1"],
        &["sweep", "--no-such-flag"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(code(&out), 2, "args {args:?}: stderr {}", stderr_of(&out));
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["sweep", "--help"])), 0);
}

#[test]
fn truncation_writes_the_partial_table_and_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.csv");
    let out = run(&[
        "sweep", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2", "--temp", "1",
        "--max-terms", "50", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr_of(&out).contains("term cap"), "stderr: {}", stderr_of(&out));

    let table = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 1 + 4, "header plus 2 gaps x 2 prescriptions");
    for row in &lines[1..] {
        let n_terms: usize = row.split(',').nth(7).unwrap().parse().unwrap();
        assert_eq!(n_terms, 51, "zero term plus the 50 capped terms");
    }
}

#[test]
fn tabulated_model_round_trips_through_a_file() {
    let omega_p = 1.37e16f64;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gold.tab");
    let mut file = fs::File::create(&path).unwrap();
    writeln!(file, "# plasma permittivity sampled for the round trip").unwrap();
    for k in 0..=150 {
        let xi = 1e12 * 10f64.powf(6.0 * k as f64 / 150.0);
        writeln!(file, "{xi:e} {:e}", 1.0 + omega_p * omega_p / (xi * xi)).unwrap();
    }
    drop(file);

    let spec = format!("table:{}", path.display());
    let out = run(&[
        "sweep", "--model", &spec, "--prescription", "ideal-te0",
        "--dmin", "5e-7", "--dmax", "6e-7", "--points", "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let body = stdout_of(&out);
    let first = body.lines().nth(1).unwrap();
    assert_eq!(first.split(',').nth(2).unwrap(), "table");

    let tabulated: f64 = first.split(',').nth(4).unwrap().parse().unwrap();
    let reference = pressure(
        &PlateSystem::new(
            5e-7,
            300.0,
            DielectricModel::plasma(omega_p).unwrap(),
            Prescription::IdealTEZero,
        ),
        &SumConfig::default(),
    )
    .unwrap()
    .pressure;
    let rel = (tabulated - reference).abs() / reference.abs();
    assert!(
        rel < 1e-2,
        "tabulated {tabulated:.6e} vs analytic plasma {reference:.6e}, rel {rel:.2e}"
    );
}

#[test]
fn json_output_carries_metadata_and_rows() {
    let out = run(&[
        "sweep", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2", "--out", "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();

    assert_eq!(doc["metadata"]["package"], "casimir-cli");
    assert!(doc["metadata"]["version"].is_string());
    assert_eq!(doc["metadata"]["constants"]["hbar_J_s"], 1.054571817e-34);
    assert_eq!(doc["metadata"]["constants"]["c_m_per_s"], 299792458.0);
    assert_eq!(doc["metadata"]["config"]["command"], "sweep");
    assert_eq!(doc["metadata"]["config"]["model"], "drude");

    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[0]["pressure_Pa"].as_f64().unwrap() < 0.0);
    assert_eq!(rows[0]["T_K"], 300.0);
}

#[test]
fn default_drude_parameters_are_gold_in_electronvolts() {
    let explicit = format!("{:e}", 9.0 * E_CHARGE / HBAR);
    let defaulted = run(&["sweep", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2"]);
    let spelled = run(&[
        "sweep", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2",
        "--omega-p", &format!("{explicit}rad/s"),
    ]);
    assert_eq!(stdout_of(&defaulted), stdout_of(&spelled));
}

#[test]
fn pfa_warns_when_the_sphere_is_not_large() {
    let out = run(&[
        "pfa", "--radius", "1e-5", "--dmin", "1e-6", "--dmax", "5e-6", "--points", "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr_of(&out).contains("R >> d"),
        "stderr: {}",
        stderr_of(&out)
    );

    let quiet = run(&[
        "pfa", "--radius", "1e-2", "--dmin", "1e-6", "--dmax", "5e-6", "--points", "2",
    ]);
    assert!(stderr_of(&quiet).is_empty());
}

#[test]
fn pfa_force_is_linear_in_radius() {
    let force_at = |radius: &str| -> f64 {
        let out = run(&[
            "pfa", "--radius", radius, "--model", "ideal", "--temp", "1",
            "--dmin", "1e-6", "--dmax", "1e-6", "--points", "1",
            "--prescription", "ideal-te0",
        ]);
        assert_eq!(code(&out), 0);
        let body = stdout_of(&out);
        body.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap()
    };
    let single = force_at("1e-2");
    let double = force_at("2e-2");
    let rel = (double - 2.0 * single).abs() / (2.0 * single).abs();
    assert!(rel < 1e-8, "F(2R) = {double:e} vs 2 F(R) = {:e}", 2.0 * single);
}

#[test]
fn compare_ratio_settles_at_one_half_for_large_gaps() {
    let out = run(&["compare", "--dmin", "1.9e-5", "--dmax", "2.1e-5", "--points", "2"]);
    assert_eq!(code(&out), 0);
    for row in stdout_of(&out).lines().skip(1) {
        let ratio: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((ratio - 0.5).abs() < 0.01, "ratio = {ratio}");
    }
}

#[test]
fn probe_reports_the_classification_after_the_table() {
    let inline = run(&["limit-probe", "--path", "fixed-q", "--q", "1e6"]);
    assert_eq!(code(&inline), 0);
    assert_eq!(
        stdout_of(&inline).lines().last().unwrap(),
        "classification: TEVanishes"
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let to_file = run(&[
        "limit-probe", "--path", "fixed-p", "--p", "2.0",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    assert_eq!(stdout_of(&to_file), "classification: TEIdeal\n");
    let table = fs::read_to_string(&path).unwrap();
    assert_eq!(table.lines().count(), 1 + 25, "header plus 8 decades x 3 + 1 rungs");
}

#[test]
fn plot_script_lands_next_to_the_data() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--dmin", "1e-6", "--dmax", "2e-6", "--points", "2",
        "--output", path.to_str().unwrap(), "--plot",
    ]);
    assert_eq!(code(&out), 0);
    let script = fs::read_to_string(dir.path().join("sweep_plot.py")).unwrap();
    assert!(script.contains("matplotlib"));
    assert!(script.contains("sweep.csv"));
}
