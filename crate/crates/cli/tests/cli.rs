use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use rekit::json::MatrixJson;
use rekit::rmatrix::s_hat;

fn re_kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_re-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn re_kit_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_re-kit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_s_matches_the_library() {
    let out = re_kit(&["gen-s", "--grading", "0110"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "re-kit/1");
    assert_eq!(doc["matrix"]["n"], 4);
    let t = MatrixJson::from_value(&doc["matrix"])
        .unwrap()
        .to_tensor()
        .unwrap();
    assert_eq!(t.dim(), 16);
    assert_eq!(t, *s_hat(&"0110".parse().unwrap()).matrix());
}

#[test]
fn gen_r_is_sparse() {
    let doc = json(&re_kit(&["gen-r", "--grading", "01"]));
    assert_eq!(doc["matrix"]["entries"].as_array().unwrap().len(), 5);
}

#[test]
fn families_lists_descriptors() {
    let doc = json(&re_kit(&["families", "--grading", "00"]));
    let names: Vec<&str> = doc["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["descriptor"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "type1:1,2",
            "type2:0",
            "type2:1",
            "type2:2",
            "type2:1:1-2",
            "type2:1:2-1"
        ]
    );
}

#[test]
fn verify_re_of_a_member() {
    let out = re_kit(&[
        "verify",
        "re",
        "--grading",
        "00",
        "--family",
        "type1:1,2",
        "--mode",
        "symbolic",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["zero"], true);
    assert_eq!(doc["witness"], Value::Null);
    assert_eq!(doc["mode"], "symbolic");
}

#[test]
fn verify_checks_on_the_braid_matrix() {
    for check in ["hecke", "braid", "ybe", "spectral-ybe"] {
        let out = re_kit(&[
            "verify",
            check,
            "--grading",
            "010",
            "--mode",
            "random",
            "--seed",
            "4",
        ]);
        assert_eq!(out.status.code(), Some(0), "{check}");
        let doc = json(&out);
        assert_eq!(doc["seed"], 4);
        assert_eq!(doc["trials"], 8);
    }
}

#[test]
fn verify_graded_lemma_and_spectral_for_a_cubic_member() {
    for check in ["re-graded", "lemma", "spectral-re"] {
        let out = re_kit(&["verify", check, "--grading", "000", "--family", "type1:1,2"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{check}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["zero"], true);
    }
}

#[test]
fn nonzero_residual_exits_one() {
    let dir = std::env::temp_dir().join(format!("re-kit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ones.json");
    let m = r#"{"n": 2, "entries": [[1,1,"1"],[1,2,"1"],[2,1,"1"],[2,2,"1"]]}"#;
    std::fs::write(&path, m).unwrap();
    let path = path.to_str().unwrap();
    let out = re_kit(&["verify", "re", "--grading", "00", "--matrix", path]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["zero"], false);
    assert!(doc["witness"]["row"].as_u64().is_some());
    let out = re_kit(&["verify", "lemma", "--grading", "00", "--matrix", path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["witness"]["equation"].is_string());
    let out = re_kit(&["classify", "--grading", "00", "--matrix", path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"], "not-a-solution");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["gen-s", "--grading", "012"],
        &["verify", "re", "--grading", "00"],
        &["assemble", "--grading", "00", "--family", "type1:2,1"],
        &[
            "assemble",
            "--grading",
            "00",
            "--family",
            "type2:1",
            "--param",
            "mu=3",
        ],
        &[
            "verify",
            "re",
            "--grading",
            "00",
            "--family",
            "type1:1,2",
            "--mode",
            "fast",
        ],
        &["crosscheck", "--all-gradings"],
    ];
    for args in cases {
        let out = re_kit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn assemble_then_classify_round_trips() {
    let out = re_kit(&[
        "assemble",
        "--grading",
        "000",
        "--family",
        "type1:1,3",
        "--param",
        "lambda=2",
        "--param",
        "mu=-3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let assembled = json(&out);
    let back = re_kit_stdin(&["classify", "--grading", "000"], &out.stdout);
    assert_eq!(back.status.code(), Some(0));
    let doc = json(&back);
    assert_eq!(doc["result"], "member");
    assert_eq!(doc["family"]["descriptor"], "type1:1,3");
    assert_eq!(
        doc["family"]["params"]["y"],
        assembled["family"]["params"]["y"]
    );
}

#[test]
fn baxterize_reports_the_branch() {
    let doc = json(&re_kit(&[
        "baxterize",
        "--grading",
        "000",
        "--family",
        "type1:1,2",
    ]));
    assert_eq!(doc["class"], "cubic");
    let doc = json(&re_kit(&[
        "baxterize",
        "--grading",
        "000",
        "--family",
        "type1:1,3",
    ]));
    assert_eq!(doc["class"], "quadratic");
    let doc = json(&re_kit(&["baxterize", "--grading", "00"]));
    assert_eq!(doc["spectral_variable"], "x");
    assert_eq!(doc["matrix"]["n"], 2);
}

#[test]
fn crosscheck_passes_and_is_deterministic() {
    let args = ["crosscheck", "--n", "3", "--all-gradings", "--seed", "0"];
    let first = re_kit(&args);
    assert_eq!(first.status.code(), Some(0));
    let doc = json(&first);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["results"].as_array().unwrap().len(), 8);
    assert_eq!(re_kit(&args).stdout, first.stdout);
}

#[test]
fn random_mode_is_reproducible() {
    let args = [
        "verify",
        "spectral-re",
        "--grading",
        "0110",
        "--family",
        "type1:1,4",
        "--mode",
        "random",
        "--seed",
        "9",
    ];
    let first = re_kit(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(re_kit(&args).stdout, first.stdout);
}
