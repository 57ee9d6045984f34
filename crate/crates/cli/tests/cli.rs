use std::path::Path;
use std::process::{Command, Output};

fn cslosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cslosc"))
        .args(args)
        .env_remove("CSLOSC_DEFAULTS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(out)))
}

#[test]
fn frozen_plus_state_stays_at_one() {
    let out = cslosc(&["simulate", "--omega-x", "0", "--lambda", "1", "--psi0", "plus", "-n", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,mean,var,envelope");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[1] == 1.0 && r[2] == 0.0));
}

#[test]
fn simulate_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, format: &str| {
        let path = dir.path().join(name);
        let out = cslosc(&[
            "simulate", "--omega-x", "1", "--lambda", "0.3", "--psi0", "0.7", "-n", "200", "--t-max", "4",
            "--seed", "9", "--format", format, "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv", "csv"), run("b.csv", "csv"));
    assert_eq!(run("a.json", "json"), run("b.json", "json"));
    let other = cslosc(&["simulate", "--omega-x", "1", "--lambda", "0.3", "-n", "200", "--t-max", "4", "--seed", "10"]);
    assert_ne!(other.stdout, run("c.csv", "csv"));
}

#[test]
fn single_trajectory_has_its_own_columns() {
    let out = cslosc(&["simulate", "--omega-x", "1", "--lambda", "1", "-n", "1", "--t-max", "0.1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("t,sigma_z\n"));
}

#[test]
fn table_one_lists_computed_and_published() {
    let out = cslosc(&["table", "I", "--format", "csv", "--strict"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let k = text.lines().find(|l| l.contains("K-meson")).unwrap();
    let cols: Vec<&str> = k.split(',').collect();
    let computed: f64 = cols[3].parse().unwrap();
    assert_eq!(cols[4], "1.5e-38");
    assert!(computed / 1.5e-38 < 3.0 && 1.5e-38 / computed < 3.0);
    assert_eq!(cols[6], "pass");
}

#[test]
fn table_two_ru_complex_within_a_decade() {
    let out = cslosc(&["table", "II", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["system"] == "Ru-D2 complex").unwrap();
    let computed = row["computed"].as_f64().unwrap();
    assert!((computed / 1e5).log10().abs() <= 1.0);
    assert_eq!(row["published"].as_f64(), Some(1e5));
    assert_eq!(row["status"], "pass");
}

#[test]
fn strict_table_fails_when_cells_drift() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("drift.conf");
    std::fs::write(&conf, "meson.K.delta_m = 1e-10\n").unwrap();
    let lax = cslosc(&["--defaults", conf.to_str().unwrap(), "table", "I"]);
    assert!(lax.status.success());
    assert!(stdout(&lax).contains("FAIL"));
    let strict = cslosc(&["--defaults", conf.to_str().unwrap(), "table", "I", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn defaults_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("grw.conf");
    std::fs::write(&conf, "csl.gamma = 1e-30\n").unwrap();
    let via_env = Command::new(env!("CARGO_BIN_EXE_cslosc"))
        .args(["rate", "meson", "--name", "K"])
        .env("CSLOSC_DEFAULTS", &conf)
        .output()
        .unwrap();
    let via_flag = cslosc(&["--grw", "rate", "meson", "--name", "K"]);
    let adler = cslosc(&["rate", "meson", "--name", "K"]);
    let rate = |o: &Output| json(o)["lambda_csl_hz"].as_f64().unwrap();
    assert_eq!(rate(&via_env), rate(&via_flag));
    assert!((rate(&adler) / rate(&via_flag) - 1e8).abs() < 1e-3);
}

#[test]
fn compare_ranks_systems() {
    for (system, verdict) in [
        ("neutrino", "decoherence hides collapse"),
        ("meson", "decoherence hides collapse"),
        ("chiral", "collapse testable"),
    ] {
        let out = cslosc(&["compare", system]);
        assert!(out.status.success());
        assert!(stdout(&out).contains(verdict), "{system}: {}", stdout(&out));
    }
    let v = json(&cslosc(&["compare", "chiral", "--json"]));
    assert_eq!(v["verdict"], "collapse_accessible");
}

#[test]
fn rate_records() {
    let nu = json(&cslosc(&["rate", "neutrino", "--energy", "1", "--time", "1"]));
    assert_eq!(nu["kind"], "collapse");
    let r = nu["lambda_csl_hz"].as_f64().unwrap();
    assert!((r / 7e-36 - 1.0).abs() < 0.2);

    let src = json(&cslosc(&["rate", "neutrino", "--source", "solar"]));
    assert!(src["damping_factor"].as_f64().unwrap() > 0.0);

    let exact = json(&cslosc(&["rate", "neutrino", "--energy", "1e6", "--momentum", "1e6", "--m2-light", "0"]));
    assert!(exact["inputs"]["momentum_ev"].is_number());

    let chiral = json(&cslosc(&["rate", "chiral", "--fixture", "ammonia"]));
    let (e, d) = (chiral["lambda_csl_hz"].as_f64().unwrap(), chiral["inputs"]["dipole_rate_hz"].as_f64().unwrap());
    assert!((e / d - 1.0).abs() < 1e-2);

    let dw = json(&cslosc(&["rate", "chiral", "--mu", "3", "--q0", "0.8"]));
    let r = dw["lambda_csl_hz"].as_f64().unwrap();
    assert!((r / 3.2e-15 - 1.0).abs() < 0.05);
}

#[test]
fn chiral_rate_from_xyz_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, z: f64| {
        let p = dir.path().join(name);
        std::fs::write(&p, format!("2\ntest\nC 0 0 0\nD 0 0 {z}\n")).unwrap();
        p
    };
    let (l, r) = (write("l.xyz", 1.0), write("r.xyz", -1.0));
    let out = cslosc(&["rate", "chiral", "--left", l.to_str().unwrap(), "--right", r.to_str().unwrap(), "--method", "dipole"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["lambda_csl_hz"].as_f64().unwrap() > 0.0);
}

#[test]
fn bounds() {
    let ammonia = json(&cslosc(&["bound", "--molecule", "ammonia"]));
    assert_eq!(ammonia["kind"], "bound");
    assert!((ammonia["lambda_bound_hz"].as_f64().unwrap() / 1.7e16 - 1.0).abs() < 0.05);

    let ru = json(&cslosc(&["bound", "--mu", "2", "--q0", "2", "--omega-x", "1"]));
    assert!((ru["lambda_bound_hz"].as_f64().unwrap() / 2.5e5 - 1.0).abs() < 1e-9);

    let res = json(&cslosc(&["bound", "--mu", "100", "--q0", "10", "--resolution", "1e-14", "--mode-frequency", "1e9"]));
    let b = res["lambda_bound_hz"].as_f64().unwrap();
    assert!((b / 1e-5).log10().abs() <= 1.0);

    let checked = json(&cslosc(&[
        "bound", "--mu", "3", "--q0", "0.8", "--omega-x", "24e9", "--barrier", "0.25", "--well-frequency", "2e13",
        "--temperature", "10",
    ]));
    assert!(checked["validity"]["valid"].is_boolean());
}

#[test]
fn decoherence_records() {
    let coll = json(&cslosc(&["decohere", "collisional", "--density", "cryogenic"]));
    let rows = coll.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["kind"] == "decoherence"));

    let one = json(&cslosc(&["decohere", "collisional", "--density", "1e10", "--velocity", "500", "--cross-section", "1e-18"]));
    assert!((one["lambda_dec_hz"].as_f64().unwrap() - 5e-6).abs() < 1e-18);

    let nu = json(&cslosc(&["decohere", "neutrino", "--source", "cosmogenic"]));
    let d = nu["damping_factor"].as_f64().unwrap();
    assert!(d > 1e-5 / 3.0 && d < 3e-5);

    let meson = json(&cslosc(&["decohere", "meson"]));
    let b = meson["lambda_dec_hz"].as_f64().unwrap();
    assert!((1e8..1e9).contains(&b));
}

#[test]
fn exit_codes() {
    // clap usage errors
    assert_eq!(cslosc(&["table", "III"]).status.code(), Some(2));
    assert_eq!(cslosc(&["simulate", "--omega-x", "1"]).status.code(), Some(2));
    assert_eq!(cslosc(&["--bogus", "table", "I"]).status.code(), Some(2));
    assert_eq!(cslosc(&["--gamma", "1e-22", "--grw", "table", "I"]).status.code(), Some(2));
    // domain and input errors from the library
    assert_eq!(cslosc(&["simulate", "--omega-x", "1", "--lambda", "1", "--dt", "0.5"]).status.code(), Some(2));
    assert_eq!(cslosc(&["bound", "--mu", "3", "--q0", "1", "--omega-x", "0"]).status.code(), Some(2));
    assert_eq!(cslosc(&["rate", "meson", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(cslosc(&["--gamma", "-1", "table", "I"]).status.code(), Some(2));
    assert_eq!(cslosc(&["decohere", "neutrino", "--energy", "1", "--medium", "vacuum"]).status.code(), Some(2));
    let missing = cslosc(&["--defaults", "/definitely/not/here.conf", "table", "I"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
}

#[test]
fn malformed_xyz_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.xyz");
    std::fs::write(&bad, "2\n\nC 0 0 0\nC 0 zero 0\n").unwrap();
    let out = cslosc(&["rate", "chiral", "--left", bad.to_str().unwrap(), "--right", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(Path::new(&bad).exists());
}
