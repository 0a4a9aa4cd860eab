use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-susy")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_record(out: &Output) -> serde_json::Value {
    serde_json::from_slice(out.stderr.trim_ascii()).unwrap()
}

#[test]
fn spectrum_reports_coulomb_levels() {
    let out = run(&["spectrum", "--v", "0.5", "--kd", "1", "--nmax", "2"]);
    assert!(out.status.success());
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["energy"].as_f64().unwrap(), 0.6);
    assert!((rows[1]["energy"].as_f64().unwrap() - 15.0 / 17.0).abs() < 1e-15);
    assert_eq!(rows[0]["missing_spinor_partner"], true);
    assert_eq!(rows[1]["missing_spinor_partner"], false);
    assert_eq!(doc["meta"]["regime"], "spin");
}

#[test]
fn quantum_numbers_resolve_kd() {
    let a = run(&["spectrum", "--v", "0.5", "--d", "3", "--j", "1/2", "--ell", "1"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let doc = json(&a);
    assert_eq!(doc["meta"]["kd"], "1");
    assert_eq!(doc["meta"]["tau"], 1);
    let b = run(&["spectrum", "--v", "0.5", "--d", "3", "--j", "1/2", "--ell", "0"]);
    assert_eq!(b.status.code(), Some(2));
}

#[test]
fn wrong_sign_exits_with_invalid_input() {
    let out = run(&["spectrum", "--regime", "pseudo", "--v", "0.5", "--kd", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["error"]["code"], "no_bound_state");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["spectrum", "--v", "0.5"][..],
        &["spectrum", "--v", "0.5", "--kd", "1", "--lambda", "0.2"],
        &["spectrum", "--v", "0.5", "--kd", "1/3"],
        &["spectrum", "--kd", "1"],
        &["nonsense"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(error_record(&out)["error"]["exit_code"], 2);
    }
}

#[test]
fn spin_coulomb_ground_spinor_is_missing() {
    let out = run(&["wavefunction", "--v", "0.5", "--kd", "1", "--n", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_record(&out)["error"]["code"], "missing_singlet");
}

#[test]
fn wavefunction_rows_start_at_origin() {
    let out = run(&["wavefunction", "--v", "0.5", "--kd", "2", "--n", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
    assert_eq!(lines.next(), Some("r,psi1,psi2"));
    assert!(lines.next().unwrap().starts_with("0.0000000000000000e0,"));
    assert!(text.contains("# norm="));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# model\nregime = pseudo\nv = -0.9\nkd = 2\nnmax = 1\n").unwrap();
    let path = config.to_str().unwrap();
    let base = json(&run(&["spectrum", "--config", path]));
    assert_eq!(base["meta"]["regime"], "pseudo");
    assert_eq!(base["rows"].as_array().unwrap().len(), 2);
    let over = json(&run(&["spectrum", "--config", path, "--v", "-0.3"]));
    assert_eq!(over["meta"]["v"].as_f64().unwrap(), -0.3);
    assert_eq!(over["meta"]["kd"], "2");
}

fn bytes(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--output", path.to_str().unwrap()]);
    assert!(run(&full).status.success());
    std::fs::read(path).unwrap()
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &["spectrum", "--potential", "kratzer", "--v", "0.9", "--lambda", "0.2", "--c", "0.05", "--kd", "1", "--format", "csv"],
        &["wavefunction", "--regime", "pseudo", "--v", "-0.5", "--kd", "1", "--n", "1"],
        &["verify", "--suite", "ladder"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = bytes(dir.path(), &format!("{i}a"), args);
        let b = bytes(dir.path(), &format!("{i}b"), args);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn verify_passes_and_reports_every_check() {
    let out = run(&["verify", "--suite", "susy"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["passed"] == true));
    assert_eq!(doc["meta"]["checks"].as_u64().unwrap() as usize, rows.len());
}
