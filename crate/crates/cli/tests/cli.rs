use std::path::Path;
use std::process::{Command, Output};

fn krylov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krylov")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, col: usize) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().to_string()).collect()
}

#[test]
fn hahn_quarter_coefficients() {
    let o = krylov(&["family", "--family", "hahn", "--a", "0.25", "--b", "0.25", "--n-max", "5", "--emit", "bn"]);
    assert!(o.status.success());
    let b: Vec<f64> = column(&stdout(&o), 1).iter().map(|s| s.parse().unwrap()).collect();
    assert!((b[0] - 0.5f64.sqrt()).abs() < 1e-15);
    assert_eq!(&b[1..], &[1.5, 2.5, 3.5, 4.5]);
}

#[test]
fn linear_chain_autocorrelation() {
    let o = krylov(&["solve", "--family", "mp", "--eta", "1", "--t-max", "1", "--t-step", "1", "--emit", "C"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("t,C"));
    let c: f64 = column(&out, 1)[1].parse().unwrap();
    assert!((c - 1.0 / 1f64.cosh()).abs() < 1e-10, "{c}");
}

#[test]
fn exact_inversion_of_cos_sech() {
    let o = krylov(&["invert", "--series", "cos_sech", "--omega", "1", "--n-max", "3", "--exact"]);
    assert!(o.status.success());
    assert_eq!(column(&stdout(&o), 1), ["2/1", "4/1", "10/1"]);
}

#[test]
fn file_output_with_manifest_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = krylov(&[
            "--out", out.to_str().unwrap(), "complexity", "--family", "hahn", "--r", "1/2", "--omega", "1", "--t-max", "2",
            "--t-step", "0.25",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
        out
    };
    let (x, y) = (run("a.csv"), run("b.csv"));
    assert_eq!(std::fs::read(&x).unwrap(), std::fs::read(&y).unwrap());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(&format!("{}.manifest.json", x.display()))).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "complexity");
    assert_eq!(manifest["params"]["complexity"]["r"], "1/2");
    assert_eq!(manifest["outputs"][0], x.display().to_string());
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn deformation_tables() {
    let o = krylov(&["deform", "--family", "linear", "--kappa", "1/4", "--n-max", "4", "--exact"]);
    assert_eq!(column(&stdout(&o), 2), ["3/4", "17/4", "144/17", "281/17"]);
    let o = krylov(&["deform", "--family", "hahn", "--a", "0.3", "--b", "0.7", "--kappa", "0.5", "--emit", "kappa", "--n-max", "8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let (est, tel) = (column(&out, 1), column(&out, 2));
    for (e, t) in est.iter().zip(&tel) {
        let (e, t): (f64, f64) = (e.parse().unwrap(), t.parse().unwrap());
        assert!((e - t).abs() < 1e-12 * t);
    }
}

#[test]
fn closed_forms_and_measure() {
    let o = krylov(&["family", "--family", "hahn", "--a", "0.5", "--b", "0.5", "--emit", "C", "--t-max", "1", "--t-step", "0.5"]);
    let c: Vec<f64> = column(&stdout(&o), 1).iter().map(|s| s.parse().unwrap()).collect();
    assert!((c[2] - 2.0 / 2f64.sinh()).abs() < 1e-14);
    let o = krylov(&["family", "--family", "mp", "--eta", "2", "--emit", "measure", "--x-max", "0", "--x-step", "1"]);
    let rho: f64 = column(&stdout(&o), 1)[0].parse().unwrap();
    // ρ(0) = (1/2π) ∫ sech² t dt
    assert!((rho - 1.0 / std::f64::consts::PI).abs() < 1e-14, "{rho}");
    let o = krylov(&["family", "--family", "hahn", "--a", "0.25", "--b", "0.75", "--emit", "phi", "--n-max", "2", "--t-max", "0.5", "--t-step", "0.5"]);
    assert_eq!(stdout(&o).lines().next(), Some("t,phi_0,phi_1,phi_2"));
}

#[test]
fn argument_errors_exit_with_2() {
    for args in [
        &["family", "--family", "hahn", "--a", "0.5", "--emit", "bn"][..],
        &["family", "--family", "mp", "--eta", "x", "--emit", "bn"],
        &["solve", "--family", "hahn", "--a", "0.5", "--b", "0.5", "--kappa", "1"],
        &["family", "--family", "alternating", "--omega", "1", "--emit", "phi"],
        &["bogus"],
        &["invert", "--series", "sech_power", "--n-max", "3"],
    ] {
        let o = krylov(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn contract_failures_exit_with_3_and_name_the_invariant() {
    let o = krylov(&["solve", "--family", "linear", "--t-max", "3", "--sites-max", "300"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[truncation tail below tail_tol]"));
}

#[test]
fn verify_and_thread_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_krylov"))
        .args(["verify", "--filter", "moments/"])
        .env("KRYLOV_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().count() > 2);
    assert!(out.lines().skip(1).all(|l| l.split(',').nth(2) == Some("true")));
    let o = Command::new(env!("CARGO_BIN_EXE_krylov")).args(["verify"]).env("KRYLOV_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let o = krylov(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("invert"));
}
