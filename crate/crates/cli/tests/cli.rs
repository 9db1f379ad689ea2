use std::io::Write;
use std::process::{Command, Output, Stdio};

fn pfcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn idempotent_expression_evaluates_to_itself() {
    let squared = pfcat(&["compose", "E(2) * E(2)"]);
    let once = pfcat(&["compose", "E(2)"]);
    assert_eq!(code(&squared), 0);
    assert_eq!(stdout(&squared), stdout(&once));
    assert_eq!(stdout(&pfcat(&["compose", "u_1 o s_1"])), stdout(&pfcat(&["compose", "u_1"])));
    assert_eq!(stdout(&pfcat(&["compose", "u_1 ∘ s_1"])), stdout(&pfcat(&["compose", "u_1"])));
}

#[test]
fn diagram_literal_is_a_boundary_diagram() {
    let out = pfcat(&["compose", "--echo", "(1,3)(2,4)"]);
    assert_eq!(stdout(&out), "(1,3)(2,4)\n1*(1,3)(2,4)\n");
}

#[test]
fn ev_rank_matches_noncrossing_count() {
    let out = pfcat(&["ev-rank", "--r", "3", "--n", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "rank=5 noncrossing=5 MATCH\n");
    let out = pfcat(&["ev-rank", "--r", "4", "--n", "2", "--slicing", "cups-first", "--samples", "2", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "rank=84 noncrossing=84 MATCH\ninvariance samples=2 seed=3 broken=0 PASS\n"
    );
}

#[test]
fn blocked_enumeration_has_six_elements() {
    let out = pfcat(&["enumerate", "--what", "x", "--r", "4", "--n", "2", "--k", "2"]);
    assert_eq!(stdout(&out).lines().count(), 6);
    let out = pfcat(&["enumerate", "--what", "x", "--r", "4", "--n", "2", "--k", "2", "--count"]);
    assert_eq!(stdout(&out), "6\n");
}

#[test]
fn csp_pass_and_fail_exit_codes() {
    let out = pfcat(&["csp-verify", "--r", "2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("P(q) = q^2 + q^4"), "{text}");
    assert!(text.ends_with("PASS\n"));

    let out = pfcat(&["csp-verify", "--family", "fundamental", "--r", "2", "--n", "1", "--k", "3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).ends_with("FAIL (first failing d = 1)\n"));
}

#[test]
fn grid_output_is_ordered_and_stable() {
    let args = ["csp-verify", "--grid", "r<=4,n<=2", "--format", "tsv"];
    let first = stdout(&pfcat(&args));
    let second = stdout(&pfcat(&args));
    assert_eq!(first, second);
    let labels: Vec<&str> = first.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(labels, ["X(1,1)", "X(1,2)", "X(2,1)", "X(2,2)", "X(3,1)", "X(3,2)", "X(4,1)", "X(4,2)"]);
    assert!(first.lines().skip(1).all(|l| l.contains("\tPASS\t")));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = pfcat(&["compose", "u_1 + * s_1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column 7"), "{err}");

    let out = pfcat(&["compose", "E(2) * (1,2)"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot compose D(2,2) with D(0,2)"));

    assert_eq!(code(&pfcat(&["frobenius", "--kind", "nope", "--r", "2"])), 2);
    assert_eq!(code(&pfcat(&["ev-rank"])), 2);
    assert_eq!(code(&pfcat(&["idempotent-check", "--delta", "x"])), 2);
}

#[test]
fn idempotent_check_and_negative_control() {
    let out = pfcat(&["idempotent-check", "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().filter(|l| l.ends_with("PASS")).count(), 4);
    let out = pfcat(&["idempotent-check", "--n", "1", "--delta", "1/3", "--construction", "sum"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("idempotent=no"));
}

#[test]
fn normal_form_from_stdin_with_trace() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pfcat"))
        .args(["normal-form", "--n", "1", "--trace", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(b"(1,3)(2,4)\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "-1*(1,2)(3,4) - 1*(1,4)(2,3)\nstep 1: (1,3)(2,4) crossings=1 violation=(1,3)(2,4)\nsteps=1 fuel=3\n"
    );
}

#[test]
fn normal_form_from_file() {
    let dir = std::env::temp_dir().join(format!("pfcat-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("morphism.txt");
    std::fs::write(&path, "1/2*(1,3)(2,4) + (1,2)(3,4)\n").unwrap();
    let out = pfcat(&["normal-form", "--n", "1", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(stdout(&out), "1/2*(1,2)(3,4) - 1/2*(1,4)(2,3)\n");
    // n = 2 allows one crossing, nothing to do
    let out = pfcat(&["normal-form", "--n", "2", "--expr", "(1,3)(2,4)"]);
    assert_eq!(stdout(&out), "1*(1,3)(2,4)\n");
}

#[test]
fn characters_and_fake_degrees() {
    let out = pfcat(&["frobenius", "--kind", "fundamental", "--r", "2", "--n", "1", "--k", "3", "--basis", "s"]);
    assert_eq!(stdout(&out), "s[1,1]\n");
    let out = pfcat(&["fake-degree", "--kind", "fundamental", "--r", "2", "--n", "1", "--k", "3"]);
    assert_eq!(stdout(&out), "q\n");
    let out = pfcat(&["fake-degree", "--r", "2", "--n", "2"]);
    assert_eq!(stdout(&out), "1 + q^2 + q^4\n");
    let out = pfcat(&["fake-degree", "--expr", "1/2*p[1,1]"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn identity_checks() {
    let out = pfcat(&["littlewood-check", "--r", "4"]);
    assert_eq!(stdout(&out), "r=0 PASS\nr=1 PASS\nr=2 PASS\nr=3 PASS\nr=4 PASS\n");
    let out = pfcat(&["kronecker-check", "--r", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 4);
}
