//! Document round trips, validation errors with locations, and parity of
//! the command-line answers with the library.

use std::path::Path;
use std::process::Command;

use ecgw::exactqi::is_quasi_iso_m;
use ecgw::extcat::FinSetInstance;
use ecgw_cli::document::{AnyChainMap, DocError, Document};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ecgw"))
}

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn load_save_round_trip_is_byte_identical() {
    let doc = Document::load(&fixture("sample.json")).expect("fixture loads");
    let first = doc.to_canonical_json();
    let reloaded = Document::from_str(&first).expect("canonical form reloads");
    assert_eq!(first, reloaded.to_canonical_json());
}

#[test]
fn empty_document_is_valid() {
    let doc = Document::from_str(r#"{"version":"1"}"#).expect("empty document");
    assert!(doc.complexes.is_empty());
    let bytes = doc.to_canonical_json();
    assert_eq!(bytes, Document::from_str(&bytes).unwrap().to_canonical_json());
}

#[test]
fn chain_condition_violation_names_the_degree() {
    let Err(err) = Document::load(&fixture("bad_chain.json")) else {
        panic!("fixture must fail validation");
    };
    match err {
        DocError::Validation(msg) => {
            assert!(msg.contains("bad"), "{msg}");
            assert!(msg.contains("degree 0"), "{msg}");
        }
        DocError::Parse(msg) => panic!("expected validation error, got parse error: {msg}"),
    }
}

#[test]
fn malformed_json_is_a_parse_error() {
    assert!(matches!(
        Document::from_str("{not json"),
        Err(DocError::Parse(_))
    ));
}

#[test]
fn qiso_answers_match_the_library() {
    let doc = Document::load(&fixture("sample.json")).unwrap();
    let AnyChainMap::M(f) = &doc.chain_maps["incl"] else {
        panic!("fixture map `incl` is m-kind");
    };
    let expect = is_quasi_iso_m(&FinSetInstance, f).unwrap();
    assert!(expect, "the fixture inclusion has an exact cokernel");
    let out = bin()
        .args(["chain", "qiso", "--file"])
        .arg(fixture("sample.json"))
        .args(["--map", "incl"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "true");
    assert!(out.status.success());

    // The e-kind quotient has a non-exact kernel.
    let out = bin()
        .args(["chain", "qiso", "--file"])
        .arg(fixture("sample.json"))
        .args(["--map", "quot"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "false");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exact_and_homology_commands() {
    let out = bin()
        .args(["chain", "exact", "--file"])
        .arg(fixture("sample.json"))
        .args(["--complex", "Z"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "true");
    let out = bin()
        .args(["chain", "homology", "--file"])
        .arg(fixture("sample.json"))
        .args(["--complex", "X"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("H_0 = {z}"), "{text}");
    assert!(text.contains("H_1 = {}"), "{text}");
}

#[test]
fn coker_output_reloads_as_a_document() {
    let out = bin()
        .args(["chain", "coker", "--file"])
        .arg(fixture("sample.json"))
        .args(["--map", "incl"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = Document::from_str(&text).expect("coker output is a valid document");
    let z = &doc.complexes["coker"];
    assert_eq!(z.degree(1).len(), 1);
    assert_eq!(z.degree(0).len(), 1);
}

#[test]
fn validate_and_exit_codes() {
    let ok = bin()
        .args(["chain", "validate", "--file"])
        .arg(fixture("sample.json"))
        .args(["--complex", "X"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let bad = bin()
        .args(["chain", "validate", "--file"])
        .arg(fixture("bad_chain.json"))
        .args(["--complex", "bad"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let missing = bin()
        .args(["chain", "validate", "--file", "/nonexistent.json"])
        .args(["--complex", "X"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let usage = bin().args(["chain", "validate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn sdot_build_face_and_dot() {
    let out = bin()
        .args(["sdot", "build", "--file"])
        .arg(fixture("sample.json"))
        .args(["--row", "m.row0,m.row1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("staircase level 2"), "{text}");
    assert!(text.contains("A[1,2] = {b}"), "{text}");

    let out = bin()
        .args(["sdot", "face", "--file"])
        .arg(fixture("sample.json"))
        .args(["--staircase", "steps", "--index", "0", "--dot"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("digraph staircase {"), "{text}");

    let out = bin()
        .args(["sdot", "degeneracy", "--file"])
        .arg(fixture("sample.json"))
        .args(["--staircase", "steps", "--index", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn k0_euler_and_gw() {
    let out = bin()
        .args(["k0", "euler", "--file"])
        .arg(fixture("sample.json"))
        .args(["--complex", "X"])
        .output()
        .unwrap();
    // χ(X) = |X_0| - |X_1| = 2 - 1.
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");

    let out = bin()
        .args(["k0", "gw", "--file"])
        .arg(fixture("sample.json"))
        .args(["--window", "0", "1", "--trials", "40", "--seed", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("violations: 0"), "{text}");
}

#[test]
fn seed_env_variable_is_the_default() {
    let with_flag = bin()
        .args(["audit", "--instance", "finset", "--suite", "axioms"])
        .args(["--trials", "30", "--seed", "12345"])
        .output()
        .unwrap();
    let with_env = bin()
        .args(["audit", "--instance", "finset", "--suite", "axioms"])
        .args(["--trials", "30"])
        .env("ECGW_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
}
