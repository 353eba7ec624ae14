use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn qspine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = qspine(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json"),
    )
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn json_ok(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&run_ok(args)).expect("valid json");
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{args:?} violates the schema: {errors:?}"
    );
    v
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn lens_spine_both_methods_agree() {
    let v = json_ok(&[
        "invariant",
        &path("cyclic3.pres"),
        "--p",
        "5",
        "--method",
        "both",
        "--json",
    ]);
    assert_eq!(v["homology_z_q"], 4);
    assert_eq!(v["skein"]["z_q"], 4);
    assert_eq!(v["agree"], true);
    assert_eq!(v["homology"]["torsion"], serde_json::json!([3]));
    let text = run_ok(&["invariant", &path("cyclic3.pres"), "--p", "5"]);
    assert!(text.contains("methods agree: yes"));
}

#[test]
fn commutator_skein_only() {
    let v = json_ok(&[
        "invariant",
        &path("torus.pres"),
        "--p",
        "7",
        "--method",
        "skein",
        "--json",
    ]);
    assert_eq!(v["skein"]["z_q"], 3);
    assert_eq!(v["euler_char"], 0);
    assert_eq!(v["homology_z_q"], Value::Null);
    let v = json_ok(&["invariant", &path("torus.pres"), "--p", "7", "--json"]);
    assert_eq!(v["method"], "skein");
}

#[test]
fn homology_refuses_small_euler_characteristic() {
    let out = qspine(&[
        "invariant",
        &path("torus.pres"),
        "--p",
        "7",
        "--method",
        "homology",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn skein_refuses_wide_cables() {
    let out = qspine(&[
        "invariant",
        &path("two_cyclic.pres"),
        "--p",
        "13",
        "--method",
        "skein",
        "--guard",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_cases_for_each_method() {
    let v = json_ok(&["invariant", &path("circle.pres"), "--p", "5", "--json"]);
    assert_eq!(v["agree"], Value::Null);
    assert_eq!(v["skein"]["z_q"], 1);
    for (file, p, expect) in [("cyclic2.pres", "7", 2), ("two_cyclic.pres", "5", 1)] {
        let v = json_ok(&["invariant", &path(file), "--p", p, "--json"]);
        assert_eq!(v["agree"], true, "{file}");
        assert_eq!(v["skein"]["z_q"], expect, "{file}");
    }
}

#[test]
fn verify_passes_for_default_primes() {
    let text = run_ok(&["verify", "--p", "5,7,11,13"]);
    assert!(!text.contains("FAIL"));
    let v = json_ok(&["verify", "--p", "5,7,11,13", "--json"]);
    assert_eq!(v["all_pass"], true);
    let constants = v["constants"].as_array().unwrap();
    assert_eq!(constants.len(), 4);
    for c in constants {
        for key in ["g1", "global_dim", "c_plus", "c_minus"] {
            assert!(c[key]["text"].is_string(), "{key}");
        }
    }
    assert_eq!(
        run_ok(&["verify-identities", "--p", "5"]),
        run_ok(&["verify", "--p", "5"])
    );
}

#[test]
fn fuzz_homology_hundred_cases() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("fail.log");
    let v = json_ok(&[
        "fuzz-ac",
        "--p",
        "5",
        "--method",
        "homology",
        "--cases",
        "100",
        "--moves",
        "20",
        "--seed",
        "1",
        "--json",
        "--log",
        log.to_str().unwrap(),
    ]);
    assert_eq!(v["discrepancies"], 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 100);
    assert!(!log.exists());
}

#[test]
fn fuzz_skein_small_guard() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("fail.log");
    let v = json_ok(&[
        "fuzz-ac",
        "--p",
        "5",
        "--method",
        "skein",
        "--cases",
        "20",
        "--moves",
        "6",
        "--guard",
        "12",
        "--json",
        "--log",
        log.to_str().unwrap(),
    ]);
    assert_eq!(v["discrepancies"], 0);
}

#[test]
fn fuzz_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("fail.log");
    let args = [
        "fuzz-ac",
        "--p",
        "7",
        "--method",
        "both",
        "--cases",
        "8",
        "--moves",
        "5",
        "--seed",
        "42",
        "--log",
        log.to_str().unwrap(),
    ];
    let a = qspine(&args);
    let b = qspine(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = qspine(&[
        "fuzz-ac",
        "--p",
        "7",
        "--method",
        "both",
        "--cases",
        "8",
        "--moves",
        "5",
        "--seed",
        "43",
        "--log",
        log.to_str().unwrap(),
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn fuzz_single_case_replays() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("fail.log");
    let log = log.to_str().unwrap();
    let all = json_ok(&[
        "fuzz-ac", "--cases", "6", "--moves", "4", "--seed", "9", "--json", "--log", log,
    ]);
    let one = json_ok(&[
        "fuzz-ac", "--cases", "6", "--moves", "4", "--seed", "9", "--case", "3", "--json", "--log",
        log,
    ]);
    let results = one["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0], all["results"][3]);
}

#[test]
fn dual_examples() {
    assert_eq!(run_ok(&["dual", &path("circle.pres")]).trim(), "<| 1>");
    assert_eq!(run_ok(&["dual", &path("cyclic2.pres")]).trim(), "<r | r^2>");
}

#[test]
fn dual_twice_restores_exponent_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.pres");
    std::fs::write(&once, run_ok(&["dual", &path("two_cyclic.pres")])).unwrap();
    let twice = run_ok(&["dual", once.to_str().unwrap()]);
    let again = dir.path().join("twice.pres");
    std::fs::write(&again, &twice).unwrap();
    let a = json_ok(&["invariant", &path("two_cyclic.pres"), "--json"]);
    let b = json_ok(&["invariant", again.to_str().unwrap(), "--json"]);
    assert_eq!(a["homology"], b["homology"]);
    assert_eq!(a["skein"]["z_q"], b["skein"]["z_q"]);
    assert_eq!(twice.trim(), "<r1, r2 | r1^2, r2^3>");
}

#[test]
fn link_info_hopf() {
    let v = json_ok(&["link-info", &path("hopf.link"), "--json"]);
    assert_eq!(v["linking_matrix"], serde_json::json!([[2, 1], [1, 0]]));
    assert_eq!(
        v["inertia"],
        serde_json::json!({"positive": 1, "negative": 1, "zero": 0})
    );
    let v = json_ok(&["link-info", &path("cyclic_thickening.link"), "--json"]);
    assert_eq!(v["dotted"], serde_json::json!([false, true]));
}

#[test]
fn rtw_unknots() {
    let v = json_ok(&["rtw", &path("plus_unknot.link"), "--p", "7", "--json"]);
    assert_eq!(v["x_power"], 0);
    assert_eq!(v["coefficient"]["text"], "1");
    let v = json_ok(&["rtw", &path("zero_unknot.link"), "--p", "7", "--json"]);
    assert_eq!(v["x_power"], 1);
    assert!(v["explicit"].is_object());
    let v = json_ok(&["rtw", &path("zero_unknot.link"), "--p", "5", "--json"]);
    assert_eq!(v["explicit"], Value::Null);
}

#[test]
fn timing_only_on_request() {
    let v = json_ok(&["invariant", &path("cyclic3.pres"), "--json"]);
    assert!(v.get("timing_ms").is_none());
    let v = json_ok(&["invariant", &path("cyclic3.pres"), "--json", "--timing"]);
    assert!(v["timing_ms"].is_object());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        qspine(&["invariant", &path("broken.pres")]).status.code(),
        Some(1)
    );
    assert_eq!(
        qspine(&["invariant", &path("missing.pres")]).status.code(),
        Some(1)
    );
    assert_eq!(
        qspine(&["invariant", &path("cyclic3.pres"), "--p", "9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(qspine(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(qspine(&["--help"]).status.code(), Some(0));
}
