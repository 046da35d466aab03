use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn eqext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqext")).args(args).output().unwrap()
}

fn anomaly(name: &str) -> Output {
    eqext(&["anomaly", fixture(name).to_str().unwrap()])
}

#[test]
fn anomaly_free_fixtures_exit_zero() {
    for name in ["adjoint_sl3.json", "block_sl2_in_sl4.json"] {
        let out = anomaly(name);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: pass"));
    }
}

#[test]
fn anomalous_fixtures_exit_one() {
    for name in ["left_sl3.json", "left_sl2.json"] {
        assert_eq!(anomaly(name).status.code(), Some(1), "{name}");
    }
}

#[test]
fn malformed_row_exits_two_with_location() {
    let out = anomaly("malformed_row.json");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("T_L[1]") && err.contains("row 1"), "{err}");
}

#[test]
fn missing_file_and_bad_arguments_exit_two() {
    assert_eq!(anomaly("does_not_exist.json").status.code(), Some(2));
    assert_eq!(eqext(&["relcoh", "--pair", "sl3"]).status.code(), Some(2));
    assert_eq!(eqext(&["invariants", "--algebra", "xy3"]).status.code(), Some(2));
}

#[test]
fn structured_report_is_json_with_verdict() {
    let out = eqext(&["--output", "structured", "relcoh", "--pair", "sl3/so3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["results"]["betti"], serde_json::json!([1, 0, 0, 0, 0, 1]));
    assert!(v["inputs_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn text_output_of_examples() {
    let relcoh = String::from_utf8(eqext(&["relcoh", "--pair", "sl3/so3"]).stdout).unwrap();
    assert!(relcoh.contains("betti: 1 0 0 0 0 1"));
    let series = eqext(&["series", "--n", "5", "--truncate", "40"]);
    assert_eq!(series.status.code(), Some(0));
    let wzw = eqext(&["wzw-verify"]);
    assert_eq!(wzw.status.code(), Some(0));
}
