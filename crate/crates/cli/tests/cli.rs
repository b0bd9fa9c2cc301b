use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pgqldpc::alist::from_alist;
use serde_json::Value;

fn pgqldpc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgqldpc"))
        .args(args)
        .current_dir(dir)
        .env_remove("PGQLDPC_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_quantum_pi() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(
        dir.path(),
        &[
            "generate",
            "--s",
            "2",
            "--family",
            "pi",
            "--out-prefix",
            "c",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for name in ["c.hx.alist", "c.hz.alist"] {
        let h = from_alist(&fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        assert_eq!(h.shape(), (21, 22));
    }
    let report = read_json(&dir.path().join("c.json"));
    assert_eq!(report["n"], 22);
    assert_eq!(report["K"]["computed"], 2);
    assert_eq!(report["family"], "pi");
    assert!(report.get("stamp").is_none());
}

#[test]
fn generate_sym_sk_at_s1() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(dir.path(), &["generate", "--s", "1", "--family", "sym-sk"]);
    assert!(out.status.success());
    let hx =
        from_alist(&fs::read_to_string(dir.path().join("sym-sk-s1.hx.alist")).unwrap()).unwrap();
    let hz =
        from_alist(&fs::read_to_string(dir.path().join("sym-sk-s1.hz.alist")).unwrap()).unwrap();
    assert_eq!(hx.shape(), (1, 4));
    assert_eq!(hx, hz);
}

#[test]
fn generate_classical_writes_one_alist() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(
        dir.path(),
        &[
            "generate",
            "--s",
            "2",
            "--construction",
            "h-se",
            "--out-prefix",
            "hse",
        ],
    );
    assert!(out.status.success());
    assert!(dir.path().join("hse.alist").exists());
    assert!(!dir.path().join("hse.hx.alist").exists());
    let report = read_json(&dir.path().join("hse.json"));
    assert_eq!(report["k"]["computed"], 6);
    assert_eq!(report["d"]["witness_weight"], 6);
}

#[test]
fn reports_are_reproducible_and_stamp_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let run = |prefix: &str, stamp: bool| {
        let mut args = vec![
            "generate",
            "--s",
            "2",
            "--family",
            "asym",
            "--out-prefix",
            prefix,
        ];
        if stamp {
            args.push("--stamp");
        }
        assert!(pgqldpc(dir.path(), &args).status.success());
        fs::read(dir.path().join(format!("{prefix}.json"))).unwrap()
    };
    assert_eq!(run("a", false), run("b", false));
    let stamped: Value = serde_json::from_slice(&run("c", true)).unwrap();
    assert!(stamped["stamp"]["unix_time"].is_u64());
}

#[test]
fn unsupported_s_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(dir.path(), &["generate", "--s", "9", "--family", "pi"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported s"));
    let out = pgqldpc(dir.path(), &["generate", "--s", "2", "--family", "nope"]);
    assert!(!out.status.success());
}

#[test]
fn verify_s2_exits_zero_with_dimension_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(dir.path(), &["verify", "--s", "2", "--all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("[FLAG] h-se: k:"));
    for line in [
        "[PASS] table: secant lines",
        "[PASS] m-pi: rank",
        "[PASS] h-sk: self-orthogonal",
        "[PASS] pi: stabilizer count",
    ] {
        assert!(text.contains(line), "missing {line}");
    }
}

#[test]
fn verify_pi_s1_distance() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(
        dir.path(),
        &[
            "verify",
            "--s",
            "1",
            "--family",
            "pi",
            "--distance-cap",
            "8",
        ],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("[PASS] m-pi-prime: d: claim 4 computed d_exact = 4"));
}

#[test]
fn verify_exit_code_follows_failures() {
    // the asym dimension interval is empty at s = 1, so that check fails
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(dir.path(), &["verify", "--s", "1", "--family", "asym"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL] asym: K"));
}

#[test]
fn verify_s3_reports_bounds_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(
        dir.path(),
        &["verify", "--s", "3", "--all", "--json", "v.json"],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[INFO] m-pi-prime: d: claim 10; bounds only: 6 <= d <= 10"));
    let report = read_json(&dir.path().join("v.json"));
    assert_eq!(report["distance_cap"], 5);
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let get = |c: &str| -> Value {
        let out = pgqldpc(dir.path(), &["analyze", "--s", "2", "--construction", c]);
        assert!(out.status.success());
        serde_json::from_slice(&out.stdout).unwrap()
    };
    assert_eq!(get("m-pi-prime")["tanner"]["four_cycle_count"], 210);
    assert_eq!(get("m-pi")["tanner"]["girth"], 6);
    assert!(get("h-se")["tanner"]["overlap_spectrum"].get("1").is_some());
}

#[test]
fn distance_of_pi_s2() {
    let dir = tempfile::tempdir().unwrap();
    let out = pgqldpc(dir.path(), &["distance", "--s", "2", "--family", "pi"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("K=2 D: 6"));
}

#[test]
fn simulate_grid_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str, jobs: &'static str| {
        vec![
            "--jobs",
            jobs,
            "simulate",
            "--s",
            "2",
            "--family",
            "pi",
            "--p-grid",
            "0.001:0.1:10",
            "--trials",
            "1000",
            "--seed",
            "7",
            "--out",
            out,
        ]
    };
    assert!(pgqldpc(dir.path(), &args("a", "1")).status.success());
    assert!(pgqldpc(dir.path(), &args("b", "4")).status.success());
    let csv = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,trials,failures,rate,ci_low,ci_high");
    assert_eq!(lines.len(), 11);
    assert_eq!(csv, fs::read_to_string(dir.path().join("b.csv")).unwrap());
    assert_eq!(
        fs::read(dir.path().join("a.json")).unwrap(),
        fs::read(dir.path().join("b.json")).unwrap()
    );
    assert_eq!(read_json(&dir.path().join("a.json"))["seed"], 7);
}

#[test]
fn simulate_flag_validation() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["simulate", "--s", "2", "--family", "pi"];
    let bad: [&[&str]; 5] = [
        &["--p-list", "0.1", "--trials", "0"],
        &["--p-grid", "0.1:0.2"],
        &["--p-list", "1.5"],
        &[],
        &["--p-list", "0.1", "--damping", "1"],
    ];
    for extra in bad {
        let args: Vec<&str> = base.iter().chain(extra).copied().collect();
        assert!(!pgqldpc(dir.path(), &args).status.success(), "{extra:?}");
    }
    let out = pgqldpc(
        dir.path(),
        &[
            "simulate",
            "--s",
            "2",
            "--construction",
            "m-pi",
            "--p-list",
            "0.1",
        ],
    );
    assert!(!out.status.success());
    let out = pgqldpc(
        dir.path(),
        &[
            "simulate", "--s", "2", "--family", "pi", "--p-list", "0,0.05", "--trials", "50",
        ],
    );
    assert!(out.status.success());
    // Wilson upper bound for 0 of 50 is z^2 / (50 + z^2)
    assert!(stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0,50,0,0,0,0.071347599"));
}
