//! Acceptance criterion 9: byte-identical output on repeated runs, golden
//! agreement for the worked commands, and structured errors (never a
//! crash) on the malformed corpus.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cuspline")
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary spawns")
}

const GOLDEN_CASES: &[(&str, &[&str], &str)] = &[
    ("m-star", &[], "m_star_01"),
    ("mu-star", &[], "mu_star_rank1"),
    ("mu-left", &[], "mu_left_rank1"),
    ("mu-right", &[], "mu_right_shape"),
    ("unitary-generic", &[], "unitary_ok"),
    ("unitary-generic", &[], "unitary_half"),
    ("steinberg-classify", &[], "steinberg_st"),
    ("steinberg-classify", &[], "steinberg_dual"),
    ("transfer", &["--src", "a0:s1", "--dst", "b0:s2"], "transfer_zero"),
    ("split", &[], "split_two_lines"),
    ("glue", &[], "glue_two_lines"),
    ("assoc-check", &[], "assoc_two_lines"),
    ("distribute", &[], "distribute_2x3"),
    ("project-generic", &[], "project_generic"),
];

#[test]
fn criterion_9_golden_and_determinism() {
    let start = Instant::now();
    for (cmd, extra, case) in GOLDEN_CASES {
        let input = data(&format!("cases/{case}.json"));
        let input = input.to_str().unwrap();
        let mut args = vec![*cmd, "--input", input];
        args.extend_from_slice(extra);
        let first = run(&args);
        assert!(
            first.status.success(),
            "{case}: expected success, got {:?}\n{}",
            first.status,
            String::from_utf8_lossy(&first.stdout)
        );
        let second = run(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "{case}: repeated runs differ"
        );
        let golden = std::fs::read(data(&format!("golden/{case}.json")))
            .unwrap_or_else(|e| panic!("{case}: golden file missing: {e}"));
        assert_eq!(
            first.stdout, golden,
            "{case}: output deviates from the golden file"
        );
    }
    println!(
        "ACCEPTANCE 9a golden determinism: PASS ({} cases, {:.2?})",
        GOLDEN_CASES.len(),
        start.elapsed()
    );
}

#[test]
fn criterion_9_fuzz_determinism() {
    let start = Instant::now();
    for suite in ["coassoc", "assoc", "roundtrip", "preservation", "transfer", "mu-left"] {
        let args = ["fuzz", "--suite", suite, "--trials", "120", "--seed", "42"];
        let first = run(&args);
        assert!(first.status.success(), "suite {suite} reported failures");
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "suite {suite} not deterministic");
        let report: serde_json::Value =
            serde_json::from_slice(&first.stdout).expect("report is JSON");
        assert_eq!(report["status"], "ok");
        assert_eq!(report["failures"].as_array().map(Vec::len), Some(0));
    }
    println!(
        "ACCEPTANCE 9b fuzz determinism: PASS (6 suites, {:.2?})",
        start.elapsed()
    );
}

/// Command to run each corpus file under; 27 is a stand-in input for the
/// unknown-suite invocation.
const MALFORMED: &[(&str, &str)] = &[
    ("m-star", "01_syntax.json"),
    ("m-star", "02_empty.json"),
    ("m-star", "03_wrong_top_type.json"),
    ("m-star", "04_missing_fields.json"),
    ("m-star", "05_bad_schema_version.json"),
    ("m-star", "06_unknown_top_field.json"),
    ("m-star", "07_bad_rational.json"),
    ("m-star", "08_alpha_quarter.json"),
    ("m-star", "09_negative_alpha.json"),
    ("m-star", "10_partner_self.json"),
    ("m-star", "11_partner_missing.json"),
    ("m-star", "12_partner_not_mutual.json"),
    ("m-star", "13_duplicate_symbol.json"),
    ("m-star", "14_unknown_symbol.json"),
    ("m-star", "15_reversed_segment.json"),
    ("m-star", "16_fractional_segment.json"),
    ("split", "17_overlapping_split.json"),
    ("split", "18_eps_off_domain.json"),
    ("split", "19_zero_exponent_row.json"),
    ("steinberg-classify", "20_steinberg_n_zero.json"),
    ("transfer", "21_transfer_alpha_mismatch.json"),
    ("glue", "22_glue_sigma_mismatch.json"),
    ("split", "23_bad_sign.json"),
    ("mu-left", "24_missing_payload_field.json"),
    ("split", "25_jord_off_grid.json"),
    ("split", "26_jord_on_pair_line.json"),
];

#[test]
fn criterion_9_malformed_corpus() {
    let start = Instant::now();
    assert!(MALFORMED.len() >= 20, "corpus must hold at least 20 files");
    for (cmd, file) in MALFORMED {
        let input = data(&format!("malformed/{file}"));
        let out = run(&[cmd, "--input", input.to_str().unwrap()]);
        let code = out
            .status
            .code()
            .unwrap_or_else(|| panic!("{file}: killed by signal, not a clean exit"));
        assert!(
            [2, 3, 64, 65].contains(&code),
            "{file}: unexpected exit code {code}\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let body: serde_json::Value = serde_json::from_slice(&out.stdout)
            .unwrap_or_else(|e| panic!("{file}: error output is not JSON: {e}"));
        let err = body
            .get("error")
            .unwrap_or_else(|| panic!("{file}: no error object in {body}"));
        assert_eq!(err["code"], code, "{file}: body code mirrors exit code");
        assert!(
            err["message"].as_str().is_some_and(|m| !m.is_empty()),
            "{file}: empty error message"
        );
        assert!(err.get("path").is_some(), "{file}: missing path field");
    }
    // usage-level failures: unknown command and unknown suite
    let unknown_cmd = run(&["no-such-command"]);
    assert_eq!(unknown_cmd.status.code(), Some(64));
    let body: serde_json::Value = serde_json::from_slice(&unknown_cmd.stdout).unwrap();
    assert_eq!(body["error"]["code"], 64);

    let unknown_suite = run(&["fuzz", "--suite", "no-such-suite", "--trials", "1"]);
    assert_eq!(unknown_suite.status.code(), Some(2));
    let body: serde_json::Value = serde_json::from_slice(&unknown_suite.stdout).unwrap();
    assert_eq!(body["error"]["code"], 2);

    println!(
        "ACCEPTANCE 9c malformed corpus: PASS ({} files, {:.2?})",
        MALFORMED.len() + 2,
        start.elapsed()
    );
}

#[test]
fn registry_env_var_fallback() {
    let dir = std::env::temp_dir().join("cuspline-env-test");
    std::fs::create_dir_all(&dir).unwrap();
    let reg_path = dir.join("registry.json");
    std::fs::write(
        &reg_path,
        r#"[{"id": "rho", "selfdual": true, "alpha": "0"}]"#,
    )
    .unwrap();
    let inst_path = dir.join("instance.json");
    std::fs::write(
        &inst_path,
        r#"{"schemaVersion": 1, "payload": {"standard": [{"line": "rho", "b": "0", "e": "0"}]}}"#,
    )
    .unwrap();
    let out = Command::new(bin())
        .args(["m-star", "--input", inst_path.to_str().unwrap()])
        .env("CUSPLINE_REGISTRY", reg_path.to_str().unwrap())
        .output()
        .expect("binary spawns");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    // without the variable the same file is a validation error
    let out = Command::new(bin())
        .args(["m-star", "--input", inst_path.to_str().unwrap()])
        .env_remove("CUSPLINE_REGISTRY")
        .output()
        .expect("binary spawns");
    assert_eq!(out.status.code(), Some(2));
}
