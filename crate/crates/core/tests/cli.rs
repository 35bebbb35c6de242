//! The command line, both in-process and through the built binary.

use std::process::Command;

use serde_json::Value as Json;
use wittkit::cli;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("wittkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Json {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn binary_runs() {
    let bin = env!("CARGO_BIN_EXE_wittkit");
    let out = Command::new(bin).args(["basis", "teich", "2", "--set", "{1,2,3}"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2·V1 + 1·V2 + 2·V3");
    let bad = Command::new(bin).args(["witt", "mul", "1,2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let domain = Command::new(bin).args(["witt", "add", "1,2", "1", "--set", "div2"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8(domain.stderr).unwrap().starts_with("error: InvalidInput"));
}

#[test]
fn witt_verbs() {
    let j = json(&["witt", "teich", "2", "--set", "{1,2,3}", "--ring", "Z"]);
    assert_eq!(j["coords"], serde_json::json!({"1": 2, "2": 0, "3": 0}));
    assert_eq!(call(&["witt", "ghost", "1,2", "--set", "div2"]).1.trim(), "⟨1, 5⟩");
    assert_eq!(call(&["witt", "from-ghost", "1,5", "--set", "div2"]).1.trim(), "(1, 2)");
    assert_eq!(call(&["witt", "neg", "1,0", "--set", "div2", "--ring", "Z/4"]).1.trim(), "(3, 3)");
    assert_eq!(call(&["witt", "frob", "2", "1,1", "--set", "div2"]).1.trim(), "(3)");
    assert_eq!(call(&["witt", "versch", "2", "5", "--set", "div2"]).1.trim(), "(0, 5)");
    // ghost and universal strategies agree
    let g = call(&["witt", "mul", "2,-1,3", "1,4,-2", "--set", "seg3", "--strategy", "ghost"]).1;
    let u = call(&["witt", "mul", "2,-1,3", "1,4,-2", "--set", "seg3", "--strategy", "universal"]).1;
    assert_eq!(g, u);
    // the ghost strategy needs a torsion-free base
    let (code, _, err) = call(&["witt", "add", "1,1", "1,1", "--set", "div2", "--ring", "Z/4", "--strategy", "ghost"]);
    assert_eq!(code, 1);
    assert!(err.contains("UnsupportedRing"), "{err}");
}

#[test]
fn other_rings_read_json() {
    use wittkit::{RingElement, RingSpec, TruncationSet, WittVector};
    let ring = RingSpec::parse("Z[x]").unwrap();
    let x = RingElement::variable(&ring, "x").unwrap();
    let s = TruncationSet::divisors_of(2);
    let v = WittVector::new(&ring, &s, &[x.clone(), RingElement::one(&ring)]).unwrap();
    let text = v.to_json().to_string();
    let sum = json(&["witt", "add", &text, &text, "--set", "div2", "--ring", "Z[x]"]);
    let expected = v.add(&v).unwrap();
    assert_eq!(WittVector::from_json(&sum).unwrap(), expected);
    // a bare coordinate array in the same value encoding
    let coords: Vec<Json> = v.coords().iter().map(|c| ring.value_to_json(c.value())).collect();
    let arr = Json::Array(coords).to_string();
    let sum = json(&["witt", "add", &arr, &text, "--set", "div2", "--ring", "Z[x]"]);
    assert_eq!(WittVector::from_json(&sum).unwrap(), expected);
}

#[test]
fn basis_round_trip() {
    let to = call(&["basis", "to", "3,-1,2,5", "--set", "div6"]).1;
    let back = call(&["basis", "from", to.trim(), "--set", "div6"]);
    assert_eq!(back.0, 0, "{}", back.2);
    let (_, from_json, _) = call(&["basis", "to", "3,-1,2,5", "--set", "div6", "--format", "json"]);
    assert_eq!(call(&["basis", "from", from_json.trim(), "--set", "div6"]).1.trim(), "(3, -1, 2, 5)");
}

#[test]
fn delta_and_series() {
    assert_eq!(call(&["delta", "--target", "div2", "1,2,3", "--set", "div4"]).1.trim(), "((1, 2), (2, -3))");
    assert_eq!(call(&["gamma", "3,0,0", "--set", "seg3", "--precision", "3"]).1.trim(), "1 + 3*t + 9*t^2 + 27*t^3 (mod t^4)");
    let (code, _, err) = call(&["gamma-inv", "2,1", "--n", "1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: NotAUnit"), "{err}");
}

#[test]
fn ptypical_verbs() {
    let (code, out, _) = call(&["ptypical", "tau", "--p", "3", "--n", "2", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "3 ↦ (0, 1)");
    let (code, _, err) = call(&["ptypical", "tau", "--p", "2", "--n", "20"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: BudgetExceeded"), "{err}");
    let (code, _, err) = call(&["ptypical", "decompose", "1,2,3,4", "--p", "2", "--set", "div6"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: NotInvertible"), "{err}");
}

#[test]
fn drwz_verbs() {
    assert_eq!(call(&["drwz", "d", "5*V4", "--set", "div12"]).1.trim(), "1·dV4");
    assert_eq!(call(&["drwz", "frob", "3", "dV6", "--set", "div12"]).1.trim(), "1·dV2");
    assert_eq!(call(&["drwz", "mul", "V2", "dV3", "--set", "div6"]).1.trim(), "4·dV6");
    let table = json(&["drwz", "table", "--set", "div4"]);
    assert!(!table["entries"].as_array().unwrap().is_empty());
    let (code, _, err) = call(&["drwz", "d", "V5", "--set", "div4"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn law_suites_and_mutations() {
    for suite in ["wittcomplex", "ring", "relations", "comonad"] {
        let (code, out, err) = call(&["laws", "check", "--suite", suite, "--set", "div4", "--target", "div2", "--trials", "5"]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
    }
    let (code, out, _) = call(&["laws", "check", "--suite", "wittcomplex", "--set", "div12", "--trials", "5", "--mutation", "wrong-crt", "--json"]);
    assert_eq!(code, 1);
    let j: Json = serde_json::from_str(&out).unwrap();
    assert!(j["laws"].as_array().unwrap().iter().any(|l| l["passed"] == false));
    let (code, _, _) = call(&["laws", "check", "--suite", "ring", "--set", "div2", "--trials", "5", "--poly-mutation", "drop-s2"]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["laws", "check", "--suite", "comonad", "--set", "div8", "--target", "div4", "--trials", "3", "--poly-mutation", "delta-two"]);
    assert_eq!(code, 1);
}

#[test]
fn cache_file_round_trip() {
    let path = std::env::temp_dir().join(format!("wittkit-cli-{}.cache", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, err) = call(&["cache", "warm", "--up-to", "6", "--cache", p]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("cached"));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("wittkit-universal-cache"));
    let (code, _, err) = call(&["witt", "add", "1,2", "3,4", "--set", "div2", "--ring", "Z/5", "--cache", p]);
    assert_eq!(code, 0, "{err}");
    std::fs::remove_file(&path).unwrap();
    let (code, _, err) = call(&["witt", "add", "1", "1", "--set", "div1", "--ceiling", "500"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
}
