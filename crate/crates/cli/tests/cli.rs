use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxqubit")).args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Header plus data rows, metadata stripped.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<Option<f64>> {
    let (header, rows) = parse_csv(text);
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| if r[i].is_empty() { None } else { Some(r[i].parse().unwrap()) }).collect()
}

#[test]
fn materials_table_matches_reference_values() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.csv");
    run_ok(&["materials-table", "--out", s(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(header[0], "material");
    let names: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["Si", "Ge", "InP", "GaAs", "InAs", "InSb"]);
    let zeta = column(&text, "zeta_110_x100");
    for (z, want) in zeta.iter().zip([8.38, 1.47, 3.17, 2.07, 1.01, 0.58]) {
        assert!((z.unwrap() - want).abs() <= 0.01 * want, "{z:?} vs {want}");
    }
    assert!(text.contains("# tiers: none\n"));
}

#[test]
fn materials_table_row_counts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.csv");
    run_ok(&["materials-table", "--out", s(&out), "--set", "materials_table.materials="]);
    let (header, rows) = parse_csv(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(header.len(), 13);
    assert!(rows.is_empty());
    run_ok(&["materials-table", "--out", s(&out), "--set", "materials_table.materials=Si"]);
    assert_eq!(parse_csv(&std::fs::read_to_string(&out).unwrap()).1.len(), 1);
}

#[test]
fn output_is_byte_deterministic_and_reproducible_from_sidecar() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", "[e0_sweep]\ncount = 9\n[fields]\nb = 0.5\n");
    let (a, b, c) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("c.csv"));
    run_ok(&["e0-sweep", "--config", s(&cfg), "--out", s(&a), "--threads", "1"]);
    run_ok(&["e0-sweep", "--config", s(&cfg), "--out", s(&b), "--threads", "3"]);
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());

    // The sidecar is a complete configuration producing the same file.
    let sidecar = dir.path().join("a.csv.config.ini");
    run_ok(&["e0-sweep", "--config", s(&sidecar), "--out", s(&c)]);
    assert_eq!(bytes, std::fs::read(&c).unwrap());

    let text = String::from_utf8(bytes).unwrap();
    let ini = std::fs::read_to_string(&sidecar).unwrap();
    assert!(text.contains(&format!("# config_sha256: {}\n", boxqubit_cli::output::sha256_hex(&ini))));
    assert!(ini.contains("b = 0.5\n"));
}

#[test]
fn stdout_when_no_out() {
    let out = run_ok(&["lz-sweep", "--set", "lz_sweep.count=3", "--tier", "analytic2,linearized"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# tiers: analytic2,linearized\n"));
    assert_eq!(column(&text, "Lz"), vec![Some(1.0), Some(5.5), Some(10.0)]);
}

#[test]
fn e0_sweep_structure() {
    let out = run_ok(&["e0-sweep", "--set", "e0_sweep.count=11"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let exact = column(&text, "f_R_minimal_exact");
    let lin = column(&text, "f_R_linearized");
    assert_eq!(exact[0], Some(0.0));
    assert!(exact[10].unwrap() < lin[10].unwrap());
    assert!(text.contains("# units: E0=mV/nm f_R_minimal_exact=GHz"));
}

#[test]
fn angle_map_rows_and_symmetries() {
    let out = run_ok(&[
        "angle-map",
        "--tier",
        "analytic2,minimal_exact",
        "--set",
        "angle_map.theta_count=4",
        "--set",
        "angle_map.phi_count=5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let theta = column(&text, "theta_deg");
    let a2 = column(&text, "f_R_analytic2");
    let exact = column(&text, "f_R_minimal_exact");
    assert_eq!(theta.len(), 20);
    for row in 0..4 {
        let first = a2[5 * row].unwrap();
        for k in 1..5 {
            assert!((a2[5 * row + k].unwrap() - first).abs() <= 1e-12 * first.abs().max(1e-300));
        }
    }
    for i in 0..5 {
        assert_eq!(theta[i], Some(0.0));
        assert!(exact[i].unwrap() < 1e-12);
    }
}

#[test]
fn strain_sweep_marks_reference() {
    let out = run_ok(&[
        "strain-sweep",
        "--tier",
        "minimal_exact",
        "--set",
        "strain_sweep.count=3",
        "--set",
        "strain_sweep.max=0.0004",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(column(&text, "reference"), vec![Some(1.0), Some(0.0), Some(0.0)]);
    assert_eq!(column(&text, "Lz_eff_sq")[0], Some(100.0));
    assert!(column(&text, "f_R_minimal_exact").iter().all(|v| v.unwrap() > 0.0));
}

#[test]
fn convergence_columns() {
    let out = run_ok(&["convergence", "--set", "convergence.cutoffs=2x2x2,3x3x2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(column(&text, "dim"), vec![Some(32.0), Some(72.0)]);
    assert_eq!(column(&text, "rel_change")[0], None);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["e0-sweep", "--config", "/nonexistent/boxqubit.ini"]), 1);
    let bad = write(&dir, "bad.ini", "[model]\nwidth = 3\n");
    assert_eq!(code(&["e0-sweep", "--config", s(&bad)]), 1);
    assert_eq!(code(&["e0-sweep", "--tier", "converged_full"]), 1);
    assert_eq!(code(&["strain-sweep", "--set", "model.material=Ge", "--set", "strain_sweep.count=2"]), 1);
    assert_eq!(code(&["e0-sweep", "--bogus"]), 1);
    assert_eq!(code(&["convergence", "--set", "convergence.cutoffs=40x40x40"]), 2);
    let out = dir.path().join("missing-dir").join("x.csv");
    assert_eq!(code(&["materials-table", "--out", s(&out)]), 1);
    assert_eq!(code(&["--help"]), 0);
}
