use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const GRAPH1: &str = "digraph 3\n0 1\n0 2\n2 2\n";
const GRAPH2: &str = "digraph 3\n0 1\n1 2\n2 2\n";

fn yablo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yablo"))
        .args(args)
        .output()
        .expect("spawn yablo")
}

fn yablo_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_yablo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn yablo");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("yablo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn solve_reports_verdicts_and_exit_codes() {
    let o = yablo_stdin(&["solve", "-"], GRAPH1);
    assert_eq!(stdout(&o), "NO-KERNEL\n");
    assert_eq!(o.status.code(), Some(1));

    let o = yablo_stdin(
        &["solve", "-", "--enumerate"],
        "digraph 4\n0 1\n1 2\n2 3\n3 0\n",
    );
    assert_eq!(stdout(&o), "KERNEL 0 2\nKERNEL 1 3\n");
    assert_eq!(o.status.code(), Some(0));

    let path = temp_file(
        "cycle4.txt",
        "# four-cycle\ndigraph 4\n0 1\n1 2\n2 3\n3 0\n",
    );
    let o = yablo(&["solve", path.to_str().unwrap(), "--oracle"]);
    assert_eq!(stdout(&o), "KERNEL 0 2\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_two() {
    let o = yablo_stdin(&["solve", "-"], "digraph 2\n0 5\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = yablo(&["solve", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));

    let o = yablo_stdin(&["eval", "-", "--formula", "forall x. R(x,"], GRAPH1);
    assert_eq!(o.status.code(), Some(2));

    // free variable
    let o = yablo_stdin(&["eval", "-", "--formula", "R(x,x)"], GRAPH1);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_sentences_axioms_and_thetas() {
    let o = yablo_stdin(&["eval", "-", "--axiom", "A1"], GRAPH2);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("TRUE\n", Some(0)));

    let o = yablo_stdin(&["eval", "-", "--axiom", "A2"], GRAPH2);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("FALSE\n", Some(1)));

    let o = yablo_stdin(&["eval", "-", "--formula", "forall x. R(x,x)"], GRAPH1);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("FALSE\n", Some(1)));

    let o = yablo_stdin(&["eval", "-", "--formula", "exists x. R(x,x)"], GRAPH1);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("TRUE\n", Some(0)));

    let chain = stdout(&yablo(&["gen", "--witness-chain", "1"]));
    let o = yablo_stdin(&["eval", "-", "--theta", "0"], &chain);
    assert_eq!(
        (stdout(&o).as_str(), o.status.code()),
        ("{1, 2}\n", Some(1))
    );
    let o = yablo_stdin(&["eval", "-", "--theta", "1"], &chain);
    assert_eq!(
        (stdout(&o).as_str(), o.status.code()),
        ("{0, 1, 2}\n", Some(0))
    );

    // s on a non-functional graph is an error
    let o = yablo_stdin(&["eval", "-", "--axiom", "S"], GRAPH1);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_outputs_are_canonical_and_reproducible() {
    let o = yablo(&["gen", "--cycle", "3"]);
    assert_eq!(stdout(&o), "digraph 3\n0 1\n1 2\n2 0\n");

    let o = yablo(&["gen", "--successor", "cycles=[1,2] n=0 z=0"]);
    assert_eq!(stdout(&o), "digraph 3\n0 0\n1 2\n2 1\n");

    let o = yablo(&["gen", "--successor", "cycles=[2] n=1 z=0"]);
    assert_eq!(o.status.code(), Some(2));

    let a = yablo(&["gen", "--random", "12", "0.3", "7"]);
    let b = yablo(&["gen", "--random", "12", "0.3", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(
        a.stdout,
        yablo(&["gen", "--random", "12", "0.3", "8"]).stdout
    );

    assert_eq!(
        yablo(&["gen", "--random", "3", "1.5", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn gen_solve_pipelines() {
    let cases = [
        (&["--cycle", "5"][..], "NO-KERNEL\n", 1),
        (&["--cycle", "6"][..], "KERNEL 0 2 4\n", 0),
        (
            &["--successor", "cycles=[2,3] n=0 z=0"][..],
            "NO-KERNEL\n",
            1,
        ),
        (&["--witness-chain", "3"][..], "NO-KERNEL\n", 1),
    ];
    for (gen_args, expected, code) in cases {
        let mut args = vec!["gen"];
        args.extend_from_slice(gen_args);
        let g = stdout(&yablo(&args));
        let o = yablo_stdin(&["solve", "-"], &g);
        assert_eq!(stdout(&o), expected, "{gen_args:?}");
        assert_eq!(o.status.code(), Some(code), "{gen_args:?}");
    }
}

#[test]
fn verify_suites() {
    for suite in ["fixtures", "lemma", "y1"] {
        let o = yablo(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}\n{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"), "{suite}");
    }
    let o = yablo(&["verify", "--suite", "compactness", "--N", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C23"));

    let o = yablo(&["verify", "--suite", "thetas", "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_n"));

    let o = yablo(&["verify", "--suite", "compactness", "--N", "101"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "thetas",
        "--exhaustive-nodes",
        "2",
        "--samples",
        "20",
        "--seed",
        "3",
        "--format",
        "json",
    ];
    let a = yablo(&args);
    let b = yablo(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let report = &v[0];
    assert_eq!(report["suite"], "thetas");
    assert_eq!(report["passed"], true);
    assert!(
        report["checks"]["(1) forall x theta_n implies no kernel"]["pass"]
            .as_u64()
            .unwrap()
            > 0
    );

    let path = temp_file("report.json", "");
    let o = yablo(&[
        "verify",
        "--suite",
        "fixtures",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["suite"], "fixtures");
}
