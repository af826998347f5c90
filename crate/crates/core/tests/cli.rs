use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hbsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbsum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hbsum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const SMALL: &str = r#"{
  "identities": ["hb-0", "rp-S", "mikolas-final", "g-rp"],
  "modulus_max": 6,
  "order_max": 2,
  "shift_denominators": [1, 2],
  "samples_per_identity": 40,
  "seed": 7,
  "series_degree": 3,
  "d_values": [2],
  "series_modulus_max": 3
}"#;

#[test]
fn eval_prints_exact_values() {
    let o = hbsum(&["eval", "--sum", "dedekind", "--a", "1", "--c", "3"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "1/18\n"));
    let o = hbsum(&["eval", "--sum", "s5", "--a", "1", "--c", "1"]);
    assert_eq!(stdout(&o), "0\n");
    assert_eq!(hbsum(&["eval", "--sum", "dedekind", "--a", "1", "--c", "-2"]).status.code(), Some(3));
    assert_eq!(hbsum(&["eval", "--sum", "dedekind", "--a", "x", "--c", "3"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let o = hbsum(&["check", "--identity", "hb-5", "--a", "3", "--c", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("pass"));
    let o = hbsum(&["check", "--identity", "hb-5", "--a", "2", "--c", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("not-applicable"));
    let o = hbsum(&["check", "--identity", "eq-0", "--p", "3", "--q", "2", "--X", "1/7", "--Y", "2/7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(hbsum(&["check", "--identity", "no-such", "--a", "1"]).status.code(), Some(2));
}

#[test]
fn series_branches() {
    let o = hbsum(&["series", "--theorem", "omega", "--a", "1", "--b", "1", "--c", "1", "--d", "2", "--degree", "4", "--x", "1/3"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("rhs: 0"));
    assert!(text.lines().filter(|l| l.starts_with("residual degree")).all(|l| {
        l.split(": ").nth(1).unwrap().split(' ').all(|c| c == "0")
    }));
    assert_eq!(hbsum(&["series", "--a", "1", "--b", "1", "--c", "1", "--d", "3"]).status.code(), Some(3));
}

#[test]
fn series_export_file() {
    let path = scratch("omega.txt");
    let o = hbsum(&[
        "series", "--a", "1", "--b", "2", "--c", "3", "--d", "2", "--x", "1/2", "--degree", "3",
        "--export", path.to_str().unwrap(),
    ]);
    assert!(o.status.code().is_some());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines() {
        let f: Vec<&str> = line.split(' ').collect();
        assert_eq!(f.len(), 3, "{line}");
        let (i, j): (u32, u32) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        assert!(i + j <= 3);
        assert!(f[2].contains('/'));
    }
}

#[test]
fn malformed_config_is_usage_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{ \"modulus_max\": ").unwrap();
    let o = hbsum(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    std::fs::write(&path, r#"{"modulus_mx": 4}"#).unwrap();
    assert_eq!(hbsum(&["sweep", "--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&path, r#"{"d_values": [3]}"#).unwrap();
    assert_eq!(hbsum(&["sweep", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

fn strip_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn sweep_report_schema_and_determinism() {
    let cfg = scratch("small.json");
    std::fs::write(&cfg, SMALL).unwrap();
    let run = || {
        let o = hbsum(&["sweep", "--config", cfg.to_str().unwrap(), "--format", "json"]);
        let v: Value = serde_json::from_slice(&o.stdout).expect("json report");
        (o.status.code(), v)
    };
    let (code, first) = run();
    let (_, second) = run();
    for key in ["version", "config", "results", "pass", "timestamp"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let pass = first["pass"].as_bool().unwrap();
    assert_eq!(code, Some(if pass { 0 } else { 1 }));
    for r in first["results"].as_array().unwrap() {
        for key in ["id", "points_tested", "points_applicable", "indeterminate", "failures"] {
            assert!(r.get(key).is_some(), "result missing {key}");
        }
        for f in r["failures"].as_array().unwrap() {
            assert!(f.get("params").is_some() && f.get("residual").is_some());
        }
    }
    assert_eq!(strip_timestamp(first), strip_timestamp(second));
}

#[test]
fn text_report_and_output_file() {
    let cfg = scratch("hb0.json");
    std::fs::write(&cfg, r#"{"identities": ["hb-0"], "modulus_max": 30}"#).unwrap();
    let out = scratch("hb0.txt");
    let o = hbsum(&["sweep", "--config", cfg.to_str().unwrap(), "--format", "text", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("hb-0"));
}

#[test]
fn default_config_round_trips() {
    let o = hbsum(&["sweep", "--print-default-config"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("seed").is_some());
}
