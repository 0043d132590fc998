use std::path::PathBuf;
use std::process::{Command, Output};

use hecke_trace::report::strip_runtime;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke-trace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("stdout is json");
    strip_runtime(&mut v);
    v
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against `tests/golden/<name>.json`; set `UPDATE_GOLDEN=1` to
/// rewrite the files.
fn assert_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let got = json_of(&out);
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        let mut s = serde_json::to_string_pretty(&got).unwrap();
        s.push('\n');
        std::fs::write(&path, s).unwrap();
        return;
    }
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}; run with UPDATE_GOLDEN=1", path.display()));
    let want: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(got, want, "{name} drifted from its golden file");
}

#[test]
fn golden_outputs() {
    assert_golden("trace", &["trace", "--weight", "12", "--format", "json"]);
    assert_golden(
        "trace_table",
        &["trace-table", "--kmax", "12", "--format", "json"],
    );
    assert_golden("hurwitz", &["hurwitz", "--n", "12", "--format", "json"]);
    assert_golden(
        "hurwitz_table",
        &["hurwitz-table", "--max", "32", "--format", "json"],
    );
    assert_golden(
        "sequence",
        &[
            "sequence", "--max", "10", "--shift", "plus", "--format", "json",
        ],
    );
    assert_golden(
        "omega",
        &["omega", "--t", "8", "--precision", "96", "--format", "json"],
    );
    assert_golden("constants", &["constants", "--format", "json"]);
    assert_golden("thresholds", &["thresholds", "--format", "json"]);
    assert_golden(
        "verify_theorem",
        &["verify", "theorem", "--kmax", "100", "--format", "json"],
    );
    assert_golden(
        "search_eps_minus",
        &[
            "search",
            "repeats",
            "--sequence",
            "eps-minus",
            "--max",
            "2000",
            "--format",
            "json",
        ],
    );
}

#[test]
fn trace_prints_the_value() {
    let out = run(&["trace", "--weight", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "-24\n");
}

#[test]
fn theorem_check_passes_with_no_collisions() {
    let out = run(&["verify", "theorem", "--kmax", "100", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["parameters"]["collisions"], Value::Array(vec![]));
}

#[test]
fn expected_witness_is_flagged_and_exits_zero() {
    let out = run(&[
        "search",
        "repeats",
        "--sequence",
        "eps-minus",
        "--max",
        "302000",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "expected-witness");
    assert_eq!(v["witnesses"][0]["m"], "5");
    assert_eq!(v["witnesses"][0]["n"], "9");
    assert_eq!(v["witnesses"][0]["value"], "55");
    assert_eq!(v["witnesses"][0]["trace_equality"], false);
}

#[test]
fn mutated_threshold_exits_one() {
    let out = run(&[
        "thresholds",
        "--case",
        "a",
        "--claimed",
        "100000",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["status"], "fail");
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["trace", "--wieght", "12"][..],
        &["search", "repeats", "--sequence", "b", "--max", "10"],
        &[
            "search",
            "repeats",
            "--sequence",
            "a",
            "--max",
            "10",
            "--primes",
            "4611686018427387847",
        ],
        &["omega", "--precision", "16"],
        &["trace", "--weight", "7"],
        &["pipeline", "--config", "/nonexistent/config.toml"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn csv_and_text_formats() {
    let out = run(&["hurwitz-table", "--max", "4", "--format", "csv"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "n,h,twelve_h\n0,-1/12,-1\n1,0,0\n2,0,0\n3,1/3,4\n4,1/2,6\n"
    );
    let out = run(&["hurwitz", "--n", "23"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3\n");
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("hecke-trace-out-{}.json", std::process::id()));
    let out = run(&[
        "trace",
        "--weight",
        "20",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["trace"], "456");
}

#[test]
fn pipeline_config_file_and_flags() {
    let dir = std::env::temp_dir();
    let cfg = dir.join(format!("hecke-trace-cfg-{}.toml", std::process::id()));
    std::fs::write(
        &cfg,
        "a_max = 500\neps_max = 400\ntheorem_kmax = 300\noracle_kmax = 100\n\
         identity_nmax = 200\nproduct_degree = 200\nvaluation_kmax = 200\nformat = \"json\"\n",
    )
    .unwrap();
    let out = run(&[
        "pipeline",
        "--config",
        cfg.to_str().unwrap(),
        "--theorem-kmax",
        "250",
    ]);
    std::fs::remove_file(&cfg).ok();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json_of(&out);
    let stages: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["stage"].as_str().unwrap())
        .collect();
    assert_eq!(
        stages,
        [
            "identities",
            "hurwitz_table",
            "oracle_equivalence",
            "valuation",
            "congruence_table",
            "threshold_a_case",
            "threshold_eps_case",
            "constants",
            "search_a",
            "search_eps_plus",
            "search_eps_minus",
            "theorem",
        ]
    );
    let theorem = v.as_array().unwrap().last().unwrap();
    assert_eq!(theorem["parameters"]["range"][1], "250");
}

#[test]
fn version_flag() {
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}
