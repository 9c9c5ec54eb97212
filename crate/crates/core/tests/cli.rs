use std::process::Command;

fn icp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_icp")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap() + &String::from_utf8(out.stderr).unwrap())
}

#[test]
fn run_writes_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    let (code, out) = icp(&["run", "--kappa", "8", "--ell", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("config ell=3"));
    assert!(text.lines().last().unwrap().starts_with("summary verdict=accepted"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.kv");
    std::fs::write(&cfg, "n=5\nkappa=8\nell=2\n# comment\nstrategy=forging-int\n").unwrap();
    let (code, out) = icp(&["run", "--config", cfg.to_str().unwrap(), "--kappa", "12", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let config = v["config"].as_str().unwrap();
    assert!(config.contains("n=5") && config.contains("kappa=12") && config.contains("strategy=forging-int"));
}

#[test]
fn montecarlo_report_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out) = icp(&["montecarlo", "--kappa", "8", "--trials", "500", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["metrics"]["estimate"]["trials"], 500);
    assert!(v["wall_time_ms"].is_number());

    // 500 trials cannot show a 2^-14 bound
    let (code, out) = icp(&["montecarlo", "--strategy", "guessing-int", "--kappa", "16", "--trials", "500"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("add trials"));
}

#[test]
fn secrecy_linearity_complexity() {
    assert_eq!(icp(&["secrecy", "--kappa", "4", "--ell", "1", "--sessions", "3"]).0, 0);
    assert_eq!(icp(&["secrecy", "--kappa", "4", "--ell", "1", "--leak-one-honest-triple"]).0, 0);
    assert_eq!(icp(&["linearity", "--q", "3", "--offsets", "1,2,3,4", "--public-instances", "0,2"]).0, 0);
    assert_eq!(icp(&["complexity", "--n", "5", "--ell", "8", "--kappa", "16"]).0, 0);
}

#[test]
fn bad_input_exits_2() {
    let (code, out) = icp(&["run", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(out.contains("error"));
    assert_eq!(icp(&["montecarlo", "--trials", "10"]).0, 2);
    assert_eq!(icp(&["run", "--strategy", "nonsense"]).0, 2);
}
