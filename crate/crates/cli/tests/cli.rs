use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorcount"))
        .args(args)
        .env_remove("TENSOR_ORBIT_MAX_BRUTE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--rank", "3", "--tensors", "6"]), "16\n");
    assert_eq!(stdout(&["count", "--rank", "3", "--tensors", "4", "--method", "kronecker"]), "5\n");
    assert_eq!(stdout(&["count", "--rank", "3", "--tensors", "4", "--method", "brute"]), "5\n");
    assert_eq!(stdout(&["count", "--rank", "3", "--tensors", "8", "--connected"]), "60\n");
    let json = stdout(&["count", "--rank", "4", "--tensors", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["value"], "75649235368772418");
}

#[test]
fn sequence_formats() {
    let oeis = stdout(&["sequence", "--rank", "4", "--max-n", "4", "--format", "oeis"]);
    assert_eq!(oeis.lines().count(), 4);
    assert!(oeis.ends_with("4 4154\n"));

    let csv = stdout(&["sequence", "--rank", "3", "--max-n", "3", "--format", "csv"]);
    assert_eq!(csv, "n,value\n1,1\n2,5\n3,16\n");

    let json = stdout(&["connected", "--rank", "3", "--max-n", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[9]["value"], "112137138");
    assert!(v[9]["value"].is_string());

    let checked = stdout(&["sequence", "--rank", "3", "--max-n", "6", "--cross-check"]);
    assert!(checked.ends_with("6 3580\n"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let a = stdout(&["--threads", "1", "sequence", "--rank", "5", "--max-n", "6"]);
    let b = stdout(&["--threads", "3", "sequence", "--rank", "5", "--max-n", "6"]);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["count", "--rank", "3"]), 1);
    assert_eq!(code(&["count", "--rank", "3", "--tensors", "5"]), 1);
    assert_eq!(code(&["count", "--rank", "4", "--tensors", "4", "--method", "squares"]), 1);
    assert_eq!(code(&["count", "--rank", "3", "--tensors", "6", "--method", "brute"]), 2);
    assert_eq!(code(&["correlator", "--sigma", "(1 2"]), 1);
}

#[test]
fn brute_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tensorcount"))
        .args(["count", "--rank", "3", "--tensors", "4", "--method", "brute"])
        .env("TENSOR_ORBIT_MAX_BRUTE", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tables() {
    let chars = stdout(&["character-table", "--m", "3"]);
    assert_eq!(chars.lines().nth(2), Some("\"[2,1]\",-1,0,2"));
    let kron = stdout(&["kronecker-table", "--m", "4", "--even-only"]);
    assert_eq!(kron.lines().count(), 6);
    assert!(kron.contains("\"[2,2]\",\"[2,2]\",\"[2,2]\",1"));
}

#[test]
fn correlators() {
    let two = stdout(&["correlator", "--rank", "3", "--sigma", "(),(),()", "--tau", "(),(),()", "--at", "3"]);
    assert_eq!(two, "2*N^3\n54\n");
    let one = stdout(&["correlator", "--sigma", "[1,2],[1,2],[1,2]", "--one-point", "--at", "2"]);
    assert_eq!(one, "N^3\n8\n");
    assert_eq!(code(&["correlator", "--rank", "4", "--sigma", "(),(),()", "--one-point"]), 1);
    assert_eq!(code(&["correlator", "--sigma", "(),(),()"]), 1);
}

#[test]
fn symplectic() {
    assert_eq!(stdout(&["symplectic-k4", "--coeff", "T_000,T_032,T_212,T_220"]), "4\n");
    assert_eq!(stdout(&["symplectic-k4", "--coeff", "T_000*T_000"]), "0\n");
    assert!(stdout(&["symplectic-k4"]).contains("nonzero true"));
}

#[test]
fn algebra_report_is_json() {
    let out = stdout(&["algebra-check", "--rank", "3", "--tensors", "2", "--samples", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["unit_check"]["found"], true);
}

#[test]
fn selftest_succeeds() {
    let out = stdout(&["selftest"]);
    assert!(out.lines().all(|l| l.starts_with("ok ")));
}
