//! Drive the installed binary end to end.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_insdel-lab"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("insdel-lab-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn encode_decode_spaced_roundtrip() {
    let codeword = run_ok(&["encode", "--code", "spaced", "-x", "10", "--t", "2"]);
    assert_eq!(codeword.trim(), "0101010101010101");
    // Decode both bits from the clean codeword; seeds pick good addresses
    // almost always, so check a majority.
    for (i, expected) in [(0, "1"), (1, "0")] {
        let mut agree = 0;
        for seed in 0..20 {
            let out = run_ok(&[
                "--seed",
                &seed.to_string(),
                "decode",
                "--code",
                "spaced",
                "-y",
                codeword.trim(),
                "-i",
                &i.to_string(),
                "--n",
                "2",
                "--t",
                "2",
            ]);
            if out.trim() == expected {
                agree += 1;
            }
        }
        assert!(agree >= 15, "bit {i}: {agree}/20");
    }
}

#[test]
fn otp_key_file_roundtrip() {
    let key_path = tmp_path("otp.key");
    let _ = fs::remove_file(&key_path);
    let key_arg = key_path.to_str().unwrap();
    let codeword = run_ok(&[
        "--seed", "5", "encode", "--code", "otp", "-x", "1011", "--t", "3", "--key", key_arg,
    ]);
    assert_eq!(codeword.trim().len(), 12);
    assert!(key_path.exists());
    for i in 0..4 {
        let out = run_ok(&[
            "--seed",
            "9",
            "decode",
            "--code",
            "otp",
            "-y",
            codeword.trim(),
            "-i",
            &i.to_string(),
            "--key",
            key_arg,
        ]);
        let expected = ["1", "0", "1", "1"][i];
        assert_eq!(out.trim(), expected, "bit {i}");
    }
    let _ = fs::remove_file(&key_path);
}

#[test]
fn corrupt_emits_trace_and_is_seed_deterministic() {
    let args = [
        "--seed",
        "11",
        "corrupt",
        "--channel",
        "two-query",
        "--m",
        "64",
        "--delta",
        "0.2",
        "--word",
        &"10".repeat(32),
    ];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a, b);
    assert!(a.contains("corrupted="), "{a}");
    assert!(a.contains("trace step=iid"), "{a}");
    assert!(a.contains("trace step=prefix"), "{a}");
    assert!(a.contains("deletions="), "{a}");

    let t1 = run_ok(&[
        "corrupt",
        "--channel",
        "type1",
        "--m",
        "4",
        "--e",
        "1",
        "--word",
        "0101",
    ]);
    assert!(t1.contains("corrupted=101"), "{t1}");
}

#[test]
fn corrupt_adversarial_needs_profile() {
    let out = bin()
        .args([
            "corrupt",
            "--channel",
            "adversarial",
            "--m",
            "16",
            "--delta",
            "0.1",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--profile"));
}

#[test]
fn quad_analyze_file() {
    let poly_path = tmp_path("poly.txt");
    fs::write(&poly_path, "x1*x2 + x1*x3 + x2\n").unwrap();
    let out = run_ok(&[
        "quad",
        "--analyze",
        poly_path.to_str().unwrap(),
        "--correlate",
        "0",
    ]);
    assert!(out.contains("symplectic_rank=2 (h=1)"), "{out}");
    assert!(out.contains("zero_probability=1/2"), "{out}");
    assert!(out.contains("zero_count=4"), "{out}");
    let _ = fs::remove_file(&poly_path);
}

#[test]
fn goodsets_csv_output() {
    let out_path = tmp_path("goodsets.csv");
    run_ok(&[
        "--out",
        out_path.to_str().unwrap(),
        "goodsets",
        "--code",
        "hadamard",
        "--n",
        "2",
        "-q",
        "2",
        "--epsilon",
        "0.5",
    ]);
    let content = fs::read_to_string(&out_path).unwrap();
    assert!(content.contains("PASS"), "{content}");
    assert!(content.contains("i,positions,advantage"), "{content}");
    let _ = fs::remove_file(&out_path);
}

#[test]
fn list_covers_all_verbose_kinds() {
    let out = run_ok(&["list"]);
    for kind in [
        "anticoncentration",
        "spaced-hadamard-type1",
        "good-address-density",
        "quadratic-zero-counts",
        "channel-budgets",
        "induced-distribution",
        "correspondence-monotonicity",
        "hq-bound",
        "hitting-probability",
        "hadamard-attack",
        "lcc-to-ldc",
        "determinism",
    ] {
        assert!(out.contains(kind), "missing {kind} in:\n{out}");
    }
}

#[test]
fn experiment_config_run_writes_csv_and_exit_code() {
    let config_path = tmp_path("config.json");
    let csv_path = tmp_path("rows.csv");
    fs::write(
        &config_path,
        format!(
            r#"{{
                "schema_version": 1,
                "kind": "quadratic-zero-counts",
                "seed": 4,
                "threads": 1,
                "params": {{"ns": [4, 6], "per_n": 25}},
                "out": "{}"
            }}"#,
            csv_path.to_str().unwrap().replace('\\', "/")
        ),
    )
    .unwrap();
    let out = run_ok(&["experiment", "--config", config_path.to_str().unwrap()]);
    assert!(out.contains("PASS zero-count-mismatches"), "{out}");
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("experiment,parameters,estimate,ci_low,ci_high,trials,seed"));

    // Re-running produces identical CSV bytes.
    run_ok(&["experiment", "--config", config_path.to_str().unwrap()]);
    assert_eq!(csv, fs::read_to_string(&csv_path).unwrap());

    let _ = fs::remove_file(&config_path);
    let _ = fs::remove_file(&csv_path);
}

#[test]
fn verify_entropy_passes() {
    let out = run_ok(&["verify", "entropy"]);
    assert!(out.contains("PASS entropy-bound-violations"), "{out}");
}

#[test]
fn unknown_kind_suggests_nearest() {
    let config_path = tmp_path("bad-config.json");
    fs::write(
        &config_path,
        r#"{"schema_version":1,"kind":"hiting-probability","seed":1,"threads":1,"params":{},"out":null}"#,
    )
    .unwrap();
    let out = bin()
        .args(["experiment", "--config", config_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("hitting-probability"), "{stderr}");
    let _ = fs::remove_file(&config_path);
}
