use std::process::{Command, Output};

use hymcg::hyp::{HypCutProfile, Lift, StabilizerProfile, SymmetricCurveClass};
use hymcg::strata::{HomologyReport, LaminarFamily, StableTree};
use hymcg::symplectic::SympMatrix;
use hymcg::words::{Permutation, TwistWord};

fn hymcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hymcg"))
        .args(args)
        .env_remove("HYMCG_CLOSURE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = hymcg(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn parse<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["symp", "involution-check", "--genus", "2"]).trim(), "OK: -I");
    assert_eq!(ok(&["strata", "dim", "--n", "7", "--variant", "b"]).trim(), "2");
    assert_eq!(ok(&["hyp", "classify", "--g", "2", "--subset", "3,4,5"]).trim(), "separatingInvariant(1,1)");
}

#[test]
fn exit_codes() {
    assert_eq!(hymcg(&["bogus"]).status.code(), Some(2));
    assert_eq!(hymcg(&["strata", "dim", "--n", "7", "--wat"]).status.code(), Some(2));
    // parses, but the library rejects it
    assert_eq!(hymcg(&["hyp", "classify", "--g", "2", "--subset", "1,2"]).status.code(), Some(2));
    assert_eq!(hymcg(&["word", "reduce", "--g", "2", "--word", "t9"]).status.code(), Some(2));
    assert_eq!(hymcg(&["symp", "level", "--g", "2", "--word", "t1", "--modulus", "2"]).status.code(), Some(1));
    assert_eq!(hymcg(&["symp", "level", "--g", "2", "--word", "t1^2", "--modulus", "2"]).status.code(), Some(0));
    assert_eq!(hymcg(&["--help"]).status.code(), Some(0));
}

#[test]
fn closure_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hymcg"))
        .args(["symp", "closure", "--g", "2", "--modulus", "2"])
        .env("HYMCG_CLOSURE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let v: serde_json::Value = serde_json::from_str(&ok(&["symp", "closure", "--g", "2", "--modulus", "2", "--json"])).unwrap();
    assert_eq!(v["order"], 720);
    assert_eq!(v["spOrder"], "720");
}

#[test]
fn json_round_trips() {
    let w: TwistWord = parse(&["word", "reduce", "--g", "2", "--word", "t1 t1^2 t2 t2^-1 t3"]);
    assert_eq!(w.to_string(), "t1^3 t3");
    let inv: TwistWord = parse(&["word", "involution", "--g", "2"]);
    assert_eq!(inv, TwistWord::involution(2).unwrap());
    let p: Permutation = parse(&["word", "rhow", "--g", "2", "--word", "t1 t2"]);
    assert_eq!(p.to_string(), "(1 3 2)");

    let m: SympMatrix = parse(&["symp", "eval", "--g", "2", "--word", "t1^-3 t4"]);
    assert!(m.to_int().unwrap().is_symplectic());
    let big: SympMatrix = parse(&["symp", "eval", "--g", "1", "--word", "t2^123456789012345678901234567890"]);
    assert!(big.to_int().unwrap().is_symplectic());
    let t: SympMatrix = parse(&["symp", "transvection", "--g", "2", "--index", "3", "--exponent", "-2", "--modulus", "5"]);
    assert_eq!(t.modulus, Some(5));

    let fams: Vec<LaminarFamily> = parse(&["strata", "enum", "--n", "6", "--dim", "1", "--group", "full"]);
    assert!(!fams.is_empty());
    let h: HomologyReport = parse(&["strata", "homology", "--n", "5"]);
    assert_eq!(h.betti, vec![1, 6]);
    let tree: StableTree = parse(&["strata", "tree", "--n", "6", "--family", "[[2,3],[2,3,4]]"]);
    assert!(tree.is_stable());

    let c: SymmetricCurveClass = parse(&["hyp", "classify", "--g", "3", "--subset", "2,3,4,5"]);
    assert_eq!(c.to_string(), "swappedPair(1,1)");
    let l: Lift = parse(&["hyp", "lift", "--g", "3", "--family", "[[2,3,4,5]]"]);
    assert_eq!(l.upstairs_simplex_size, 2);
    let cut: HypCutProfile = parse(&["hyp", "cut", "--g", "2", "--family", "[[3,4,5]]"]);
    assert_eq!(cut.components.len(), 2);
    let raw: HypCutProfile = parse(&["hyp", "cut", "--g", "2", "--family", "[[2,3]]", "--raw"]);
    assert_eq!(raw.components.len(), 2);
    let s: StabilizerProfile = parse(&["hyp", "stab", "--g", "2", "--family", "[[2,3]]"]);
    assert_eq!(s.twist_generators[0].lattice.to_string(), "2Z");
}

#[test]
fn dot_output() {
    let dot = ok(&["strata", "dot", "--n", "6", "--family", "[[2,3]]"]);
    assert!(dot.starts_with("graph stable_tree {"));
    assert!(dot.contains("v0 -- v1;"));
}

#[test]
fn seeded_checks_are_reproducible() {
    for args in [
        ["symp", "purity-check", "--g", "3", "--seed", "11", "--samples", "300", "--json"],
        ["hyp", "conservation-check", "--g", "4", "--seed", "11", "--samples", "300", "--json"],
    ] {
        let a = ok(&args);
        assert_eq!(a, ok(&args));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn torus_purity_counterexample_is_reported() {
    let out = hymcg(&["symp", "purity-check", "--g", "1", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
}

#[test]
fn surface_commands() {
    assert!(ok(&["surface", "info", "--genus", "2", "--punctures", "1"]).contains("chi = -3"));
    assert!(ok(&["surface", "quotient", "--genus", "3"]).contains("8 branch points"));
    let out = hymcg(&["surface", "quotient", "--genus", "2", "--boundary", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(hymcg(&["surface", "info", "--genus", "-1"]).status.code(), Some(2));
}
