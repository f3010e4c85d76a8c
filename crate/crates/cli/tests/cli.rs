//! End-to-end checks of the `rfso` binary: subcommands, files, exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rfso"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rfso-cli-test-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

const SCENARIO: &str = r#"{
  "rf": { "relay_count": 3, "selected_rank": 2, "correlation": 0.7, "avg_snr_db": 20.0 },
  "optical": { "beta1": 1.0, "beta2": 1.0, "detection": "heterodyne", "avg_elec_snr_db": 20.0 },
  "impairments": { "kappa1": 0.1, "kappa2": 0.1 },
  "gamma_th_db": 3.0
}"#;

#[test]
fn sweep_writes_csv_and_metadata() {
    let dir = tmp_dir("sweep");
    let scenario = dir.join("scenario.json");
    fs::write(&scenario, SCENARIO).unwrap();
    let out = dir.join("curve.csv");

    let status = bin()
        .args(["sweep", "--scenario"])
        .arg(&scenario)
        .arg("--out")
        .arg(&out)
        .args(["--trials", "10000", "--seed", "7", "--grid", "10:20:5", "--outputs", "op_closed,op_mc"])
        .status()
        .unwrap();
    assert!(status.success());

    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "abscissa_db,op_closed,op_mc,op_mc_half_width");
    assert_eq!(lines.count(), 3, "10, 15, 20 dB rows");

    let meta = fs::read_to_string(dir.join("curve.meta.json")).unwrap();
    assert!(meta.contains("\"seed\": 7"));
    assert!(meta.contains("\"trials\": 10000"));
    assert!(meta.contains("tool_version"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_is_byte_deterministic() {
    let dir = tmp_dir("determinism");
    let out1 = dir.join("a.csv");
    let out2 = dir.join("b.csv");
    for out in [&out1, &out2] {
        let status = bin()
            .args(["sweep", "--out"])
            .arg(out)
            .args(["--trials", "20000", "--seed", "11", "--grid", "8:12:2", "--outputs", "op_mc,ec_mc"])
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_default_scenario_exits_zero() {
    let output = bin()
        .args(["validate", "--trials", "20000"])
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("[PASS]"));
    assert!(!stdout.contains("[FAIL]"));
}

#[test]
fn validate_reports_none_for_ideal_hardware() {
    let dir = tmp_dir("ideal");
    let scenario = dir.join("ideal.json");
    fs::write(
        &scenario,
        SCENARIO.replace("\"kappa1\": 0.1, \"kappa2\": 0.1", "\"kappa1\": 0.0, \"kappa2\": 0.0"),
    )
    .unwrap();
    let output = bin()
        .args(["validate", "--trials", "10000", "--scenario"])
        .arg(&scenario)
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("none (ideal hardware)"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_errors_exit_two() {
    let dir = tmp_dir("badcfg");
    let scenario = dir.join("bad.json");
    fs::write(&scenario, SCENARIO.replace("\"selected_rank\": 2", "\"selected_rank\": 12")).unwrap();
    let output = bin()
        .args(["validate", "--scenario"])
        .arg(&scenario)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("selected_rank"));

    // empty outputs set is a config error too
    let status = bin()
        .args(["sweep", "--out", "/dev/null", "--outputs", "", "--trials", "10000"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sample_dumps_rows() {
    let dir = tmp_dir("sample");
    let out = dir.join("samples.csv");
    let status = bin()
        .args(["sample", "--trials", "500", "--seed", "3", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "trial,gamma1,irradiance,gamma2,sndr");
    assert_eq!(text.lines().count(), 501);
    fs::remove_dir_all(&dir).unwrap();
}
