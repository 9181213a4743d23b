//! End-to-end tests of the command-line interface: golden output for the
//! running example, exit codes, machine mode, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivermod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn cells_matches_the_golden_listing() {
    let out = run(&["cells", data("two_cycle.quiver").to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    let golden = std::fs::read_to_string(data("two_cycle_cells.golden")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn output_is_deterministic() {
    let args = ["cells", "--machine"];
    let file = data("two_cycle.quiver");
    let first = run(&[args[0], args[1], file.to_str().unwrap()]);
    let second = run(&[args[0], args[1], file.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    assert!(first.status.success());
}

#[test]
fn betti_all_methods_agree_on_the_running_example() {
    let out = run(&["betti", data("two_cycle.quiver").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P = q^8 + 2*q^7 + 5*q^6 + 6*q^5 + 7*q^4 + 4*q^3 + 2*q^2"));
    // all five methods listed for theta = 0
    for name in [
        "recursion",
        "summation",
        "series",
        "multipartitions",
        "cells",
    ] {
        assert!(text.contains(&format!("method {name}")), "missing {name}");
    }
}

#[test]
fn betti_machine_mode_emits_exponent_coefficient_pairs() {
    let out = run(&[
        "betti",
        "--machine",
        "--method",
        "summation",
        data("two_cycle.quiver").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "poly=8:1,7:2,6:5,5:6,4:7,3:4,2:2\n");
}

#[test]
fn nonempty_reports_the_counterexample_as_empty() {
    let out = run(&["nonempty", data("loop_arrow.quiver").to_str().unwrap()]);
    assert!(out.status.success(), "emptiness is an answer, not an error");
    let text = stdout(&out);
    assert!(text.contains("hilbert scheme: empty"), "got: {text}");
}

#[test]
fn betti_of_empty_moduli_is_zero() {
    let out = run(&[
        "betti",
        "--quiet",
        data("loop_arrow.quiver").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P = 0"));
    assert!(text.contains("empty"));
}

#[test]
fn kronecker_coprime_line() {
    let out = run(&[
        "betti",
        "--quiet",
        data("kronecker.quiver").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("P = q^2 + 2*q + 1"));

    let pd = run(&[
        "pd",
        "--machine",
        data("kronecker.quiver").to_str().unwrap(),
    ]);
    assert!(pd.status.success());
    // P_d = (q^2-1)/(q-1)^2 = (q+1)/(q-1)
    assert_eq!(stdout(&pd), "pd_num=1:1,0:1\npd_den=1:1,0:-1\n");
}

#[test]
fn series_cap_extends_the_index_set() {
    let out = run(&[
        "betti",
        "--quiet",
        "--method",
        "series",
        "--cap",
        "2,2",
        data("kronecker.quiver").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    assert_eq!(stdout(&out), "P = q^2 + 2*q + 1\n");
    // a cap that does not dominate d is an infeasible input
    let bad = run(&[
        "betti",
        "--method",
        "series",
        "--cap",
        "0,1",
        data("kronecker.quiver").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(4));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let bad = data("two_cycle.quiver").with_file_name("bad.quiver");
    std::fs::write(&bad, "vertex a\narrow a nowhere\n").unwrap();
    let out = run(&["euler", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "got: {err}");
    assert!(err.contains("column 9"), "got: {err}");
    std::fs::remove_file(&bad).unwrap();
}

#[test]
fn infeasible_inputs_exit_4() {
    // betti needs n
    let noframe = data("two_cycle.quiver").with_file_name("noframe.quiver");
    std::fs::write(&noframe, "vertex a\narrow a a\nd 1\n").unwrap();
    let out = run(&["betti", noframe.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    std::fs::remove_file(&noframe).unwrap();

    // hilb refuses a nonzero theta
    let out2 = run(&["hilb", data("kronecker.quiver").to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(4));

    // infeasible polystable type
    let none = data("two_cycle.quiver").with_file_name("pair.quiver");
    std::fs::write(&none, "vertex a\nvertex b\nd 2 0\nn 1 1\n").unwrap();
    let out3 = run(&[
        "local-quiver",
        "--part",
        "1:1,0",
        "--part",
        "1:1,0",
        none.to_str().unwrap(),
    ]);
    assert_eq!(out3.status.code(), Some(4));
    std::fs::remove_file(&none).unwrap();
}

#[test]
fn frame_emits_reparseable_quiver_format() {
    let out = run(&[
        "frame",
        "--quiet",
        data("two_cycle.quiver").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("vertex").count(), 3);
    assert_eq!(text.matches("arrow").count(), 2 + 4);
    assert!(text.contains("d^ = (2,2,1)"));
    assert!(text.contains("coprime for theta^: true"));
}

#[test]
fn local_quiver_subspace_example() {
    // 4-subspace quiver: the two half-multiplicity summands give the
    // two-vertex local quiver with one arrow each way and no loops
    let sub = data("two_cycle.quiver").with_file_name("subspace4.quiver");
    std::fs::write(
        &sub,
        "vertex c\nvertex p1\nvertex p2\nvertex p3\nvertex p4\n\
         arrow p1 c\narrow p2 c\narrow p3 c\narrow p4 c\n\
         d 2 1 1 1 1\nn 1 0 0 0 0\ntheta -1 0 0 0 0\n",
    )
    .unwrap();
    let out = run(&[
        "local-quiver",
        "--machine",
        "--part",
        "1:1,1,1,0,0",
        "--part",
        "1:1,0,0,1,1",
        sub.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    assert_eq!(
        stdout(&out),
        "vertices=2\narrows=1>2,2>1\nd_xi=(1,1)\nn_xi=(1,1)\n"
    );
    std::fs::remove_file(&sub).unwrap();
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--instances", "20"]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    assert!(stdout(&out).contains("selftest: pass"));
}
