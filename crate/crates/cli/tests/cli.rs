//! End-to-end runs of the binary: exit codes, stdin, error locations, JSON stability.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_homlie");

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn homlie(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(BIN).args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    Run { code: o.status.code().unwrap(), out: String::from_utf8(o.stdout).unwrap(), err: String::from_utf8(o.stderr).unwrap() }
}

/// A scratch directory unique to one test.
fn scratch(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homlie-cli-{}-{test}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn named(name: &str) -> String {
    let r = homlie(&["fixture", "named", name], "");
    assert_eq!(r.code, 0, "{}", r.err);
    r.out
}

#[test]
fn threedim_pipeline_passes() {
    let fx = homlie(&["fixture", "threedim", "--a", "0", "--b", "1", "--c", "1", "--d", "0"], "");
    let r = homlie(&["check", "structure", "-"], &fx.out);
    assert_eq!(r.code, 0, "{}", r.out);
    // a = 1 breaks multiplicativity but not Hom-Jacobi
    let fx = homlie(&["fixture", "threedim", "--a", "1", "--b", "1", "--c", "1"], "");
    let r = homlie(&["check", "structure", "-", "--json"], &fx.out);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["hom_jacobi"], true);
    assert_eq!(v["multiplicative"], false);
}

#[test]
fn jackson_reports_every_failing_pair() {
    let fx = homlie(&["fixture", "jackson-sl2", "--q", "2"], "");
    let r = homlie(&["check", "structure", "-"], &fx.out);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("multiplicativity fails at (e,f): 3·h vs 12·h"), "{}", r.out);
    assert_eq!(r.out.matches("multiplicativity fails at").count(), 3);
}

#[test]
fn zero_operator_is_rota_baxter_everywhere() {
    let dir = scratch("rb-zero");
    for name in ["abelian2", "fixture-b", "fixture-b-alt", "yau-sl2", "yau-heis4"] {
        let alg = write(&dir, &format!("{name}.json"), &named(name));
        let dim = serde_json::from_str::<serde_json::Value>(&named(name)).unwrap()["dim"].as_u64().unwrap() as usize;
        let zero = serde_json::json!({ "matrix": vec![vec![0; dim]; dim] }).to_string();
        let op = write(&dir, &format!("zero-{name}.json"), &zero);
        for w in ["1", "0", "-1/2"] {
            let r = homlie(&["check", "rotabaxter", "--algebra", &alg, "--op", &op, "--weight", w], "");
            assert_eq!(r.code, 0, "{name} weight {w}: {}{}", r.out, r.err);
        }
    }
}

#[test]
fn false_verdicts_exit_one_with_witness() {
    let dir = scratch("false");
    let alg = write(&dir, "b.json", &named("fixture-b"));
    let op = write(&dir, "r.json", r#"{"matrix": [[1,0,0],[0,0,0],[0,0,1]]}"#);
    let r = homlie(&["check", "rotabaxter", "--algebra", &alg, "--op", &op, "--weight", "1", "--json"], "");
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["mc_residual_zero"], false);
    assert!(v["witness"]["pair"].is_array());

    let phi = write(&dir, "phi.json", r#"{"matrix": [[1,0,0],[0,2,0],[0,0,1]]}"#);
    let r = homlie(&["check", "morphism", "--algebra", &alg, "--morphism", &phi], "");
    assert_eq!(r.code, 1);
    assert!(r.out.contains("not a morphism"));
}

#[test]
fn nijenhuis_and_relative_checks() {
    let dir = scratch("operators");
    let alg = write(&dir, "b.json", &named("fixture-b"));
    let id = write(&dir, "id.json", r#"{"matrix": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let r = homlie(&["check", "nijenhuis", "--algebra", &alg, "--op", &id, "--json"], "");
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["details"]["is_morphism"], true);

    let act = homlie(&["fixture", "doubled-action", "fixture-b"], "");
    let act = write(&dir, "act.json", &act.out);
    // R(y, h) = −y is relative Rota-Baxter of weight 1 on the doubled action
    let mut rows = vec![vec![0i64; 6]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = -1;
    }
    let op = write(&dir, "rel.json", &serde_json::json!({ "matrix": rows }).to_string());
    let r = homlie(&["check", "relative-rb", "--algebra", &alg, "--action", &act, "--op", &op, "--weight", "1", "--json"], "");
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["details"]["graph_closed"], true);
    let r = homlie(&["check", "relative-rb", "--algebra", &alg, "--action", &act, "--op", &op, "--weight", "2"], "");
    assert_eq!(r.code, 1);
}

#[test]
fn bracket_cohomology_and_deform() {
    let dir = scratch("compute");
    let alg = write(&dir, "b.json", &named("fixture-b"));
    let id = r#"{"arity":1,"coeffs":[{"tuple":[1],"value":[1,0,0]},{"tuple":[2],"value":[0,1,0]},{"tuple":[3],"value":[0,0,1]}]}"#;
    let p = write(&dir, "id-cochain.json", id);
    let r = homlie(&["bracket", "--kind", "cup", "--algebra", &alg, "--p", &p, "--q", &p], "");
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["arity"], 2);
    // [id,id]_C = 2μ
    assert_eq!(v["coeffs"][0]["value"], serde_json::json!(["0", "0", "2"]));
    let r = homlie(&["bracket", "--kind", "nr", "--algebra", &alg, "--p", &p, "--q", &p], "");
    assert_eq!(r.code, 0);

    let r = homlie(&["cohomology", "--algebra", &alg, "--coefficients", "adjoint", "--degree", "2"], "");
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!((v["dim_cochains"].as_u64(), v["dim_cohomology"].as_u64()), (Some(4), Some(1)));

    let sl2 = write(&dir, "s.json", &named("yau-sl2"));
    let phi = write(&dir, "phi.json", r#"{"matrix": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let r = homlie(&["deform", "extend", "--algebra", &sl2, "--morphism", &phi, "--to-order", "4", "--json"], "");
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["reached_order"], 4);
    assert_eq!(v["revalidated"], true);
}

#[test]
fn input_errors_exit_two_with_location() {
    let dup = r#"{"dim":2,"alpha":[[1,0],[0,1]],"brackets":[{"i":1,"j":2,"value":[1,0]},{"i":1,"j":2,"value":[0,1]}]}"#;
    let r = homlie(&["check", "structure", "-"], dup);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("brackets[1]") && r.err.contains("duplicate"), "{}", r.err);

    let short = r#"{"dim":2,"alpha":[[1,0],[0,1]],"brackets":[{"i":1,"j":2,"value":[1]}]}"#;
    let r = homlie(&["check", "structure", "-"], short);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("brackets[0].value"), "{}", r.err);

    let r = homlie(&["check", "structure", "-"], "{not json");
    assert_eq!(r.code, 2);
    assert!(r.err.contains("<stdin>"), "{}", r.err);

    assert_eq!(homlie(&["no-such-command"], "").code, 2);
    assert_eq!(homlie(&["check", "rotabaxter", "--algebra", "a.json"], "").code, 2);
    assert_eq!(homlie(&["check", "structure", "/definitely/missing.json"], "").code, 2);

    // a non-multiplicative algebra is refused where one is required
    let dir = scratch("errors");
    let jackson = write(&dir, "j.json", &homlie(&["fixture", "jackson-sl2", "--q", "2"], "").out);
    let op = write(&dir, "zero.json", r#"{"matrix": [[0,0,0],[0,0,0],[0,0,0]]}"#);
    let r = homlie(&["check", "nijenhuis", "--algebra", &jackson, "--op", &op], "");
    assert_eq!(r.code, 2);
    assert!(r.err.contains("j.json"), "{}", r.err);
}

#[test]
fn rationals_are_normalized_and_output_is_canonical() {
    let text = r#"{"dim":2,"alpha":[[1,0],[0,"2/2"]],"brackets":[{"i":1,"j":2,"value":["2/4",0]}]}"#;
    let dir = scratch("canonical");
    let path = write(&dir, "a.json", text);
    let r = homlie(&["check", "structure", &path], "");
    assert_eq!(r.code, 0, "{}", r.err);
    // re-serializing a fixture through the library is a fixed point
    let fx = named("yau-heis4");
    let parsed: homlie::io::AlgebraJson = homlie::io::from_json(&fx, "fixture").unwrap();
    assert_eq!(homlie::io::to_json(&parsed), fx);
    let raw = parsed.to_raw().unwrap();
    assert_eq!(homlie::io::to_json(&homlie::io::AlgebraJson::from_raw(&raw)), fx);
    // decimals are refused
    let r = homlie(&["check", "structure", "-"], r#"{"dim":1,"alpha":[[0.5]]}"#);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_theorems_selection_and_failure_exit() {
    let r = homlie(&["verify-theorems", "--trials", "3", "--fixture", "fixture-b", "--identity", "cup_graded_lie", "--identity", "13"], "");
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(r.out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let r =
        homlie(&["verify-theorems", "--trials", "10", "--fixture", "yau-sl2", "--identity", "3", "--mutate", "unsigned-cup", "--json"], "");
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["mutation"], "unsigned_cup");
    assert_eq!(v["passed"], false);
    let r = homlie(&["verify-theorems", "--identity", "no_such_identity"], "");
    assert_eq!(r.code, 2);
}
