//! End-to-end runs of the `newt` binary on the bundled example ideals.

use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("examples");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    std::fs::write(&p, text).expect("writable scratch directory");
    p.to_string_lossy().into_owned()
}

fn newt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn invariants_of_example2() {
    let o = newt(&["invariants", &example("example2.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("depth: 1\n"), "{text}");
    assert!(text.contains("e: 18\n"), "{text}");
    assert!(text.contains("e by areas: 18\n"), "{text}");
    assert!(text.contains("closure: (x,y)^3(x^3,y)\n"), "{text}");
}

#[test]
fn invariants_json_schema() {
    let o = newt(&["invariants", "--json", &example("example2.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(v["depth"], 1);
    assert_eq!(v["e"], 18);
    assert_eq!(v["mult_m"], 4);
    assert_eq!(v["closure"], "(x,y)^3(x^3,y)");
    let rees = v["rees"].as_array().expect("rees list");
    let nd: Vec<(u64, u64)> = rees
        .iter()
        .map(|r| (r["N"].as_u64().unwrap(), r["d"].as_u64().unwrap()))
        .collect();
    assert_eq!(nd, vec![(4, 3), (6, 1)]);
}

#[test]
fn closure_equality() {
    let o = newt(&["closure-eq", &example("ex6a.ideal"), &example("ex6b.ideal")]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "EQUAL\n".into()));
    let o = newt(&[
        "closure-eq",
        &example("ex6a.ideal"),
        &example("example2.ideal"),
    ]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "NOT EQUAL\n".into())
    );
}

#[test]
fn dot_tree_of_example3() {
    let o = newt(&["tree", "--dot", &example("example3.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    let vertices = text
        .lines()
        .filter(|l| l.trim_start().starts_with('v') && l.contains("[label="))
        .count();
    assert_eq!(vertices, 12);
}

#[test]
fn process_of_example1() {
    let o = newt(&["process", &example("example1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim_end(),
        "x^0 y^0 {(σ(2,1,3);y),(σ(1,1,-1),σ(1,1,GENERIC);2),(σ(1,1,-1),σ(1,3,GENERIC);1)}"
    );
}

#[test]
fn process_json_round_trips() {
    let o = newt(&["process", "--json", &example("example4.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    let p = newton::NewtonProcess::from_json(stdout(&o).trim()).expect("parsable process");
    assert_eq!(
        p.to_string(),
        "x^0 y^0 {(σ(1,1,GENERIC);3),(σ(1,1,1);y),(σ(1,1,1),σ(1,2,GENERIC);1)}"
    );
}

#[test]
fn polygon_valuation_degree_factor_gencurve() {
    let e2 = example("example2.ideal");
    let o = newt(&["polygon", &e2]);
    assert_eq!(
        stdout(&o),
        "vertices: (0,4) (3,1) (6,0)\nface 1a+1b=4: lattice points 4, d = 3\nface 1a+3b=6: lattice points 2, d = 1\n"
    );
    let o = newt(&["valuation", &e2, "--poly", "y^2-x^3"]);
    assert_eq!(stdout(&o), "N_0(y^2 - x^3) = 2\nN_1(y^2 - x^3) = 3\n");
    let o = newt(&["degree", &e2, "--poly", "y"]);
    assert_eq!(stdout(&o), "d(y) = 6\n");
    let o = newt(&["factor", &e2]);
    assert_eq!(stdout(&o), "(x,y)^3(x^3,y)\n");
    let o = newt(&["gencurve", "--json", &e2]);
    let t = newton::NewtonTree::from_json(stdout(&o).trim()).expect("parsable tree");
    let unit_arrows = t
        .arrows
        .iter()
        .filter(|a| a.kind == newton::tree::ArrowKind::Branch)
        .count();
    assert_eq!(unit_arrows, 4);
}

#[test]
fn check_passes_and_is_deterministic() {
    let args = ["check", "--seed", "7", &example("example3.ideal")];
    let (a, b) = (newt(&args), newt(&args));
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(
        text.contains("PASS oracle e: e = 102, resultant oracle 102"),
        "{text}"
    );
    assert!(text.ends_with("seed 7\n"));
}

#[test]
fn exit_codes() {
    let o = newt(&["invariants", &example("irrational.ideal")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("X^2 - 2"), "{err}");
    let o = newt(&["invariants", &example("no-such-file.ideal")]);
    assert_eq!(o.status.code(), Some(3));
    let bad = scratch("bad.ideal", "x^2\ny+*\n");
    assert_eq!(newt(&["process", &bad]).status.code(), Some(3));
    let unit = scratch("unit.ideal", "1+x\ny\n");
    assert_eq!(newt(&["process", &unit]).status.code(), Some(3));
    let o = newt(&["closure-eq", &example("ex6a.ideal")]);
    assert_eq!(o.status.code(), Some(3));
    let o = newt(&["degree", &example("example2.ideal"), "--poly", "x+"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn non_finite_codimension_reports_undefined() {
    let f = scratch("principal.ideal", "y^2-x^3\n");
    let o = newt(&["invariants", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("e: undefined\n"), "{text}");
    assert!(text.contains("closure: C{(σ(2,3,1);y)}\n"), "{text}");
    assert!(text.contains("process: x^0 y^0 {(σ(2,3,1);y)}\n"), "{text}");
}
