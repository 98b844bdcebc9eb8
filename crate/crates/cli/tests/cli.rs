use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_concover"))
}

fn run(args: &[&str]) -> (Value, i32, Output) {
    let out = bin().args(args).output().expect("spawn concover");
    let report: Value = serde_json::from_slice(&out.stdout).expect("stdout is one JSON report");
    (report, out.status.code().expect("exit code"), out)
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("concover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// The canonical cover of K_n: branch set i for every i, and the members
/// are the complements of single vertices.
fn canonical_complete_cover(n: usize, name: &str) -> PathBuf {
    let graph = match n {
        3 => "Bw",
        5 => "D~{",
        _ => unreachable!(),
    };
    let members: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&v| v != i).collect())
        .collect();
    temp_file(
        name,
        &json!({ "graph": graph, "members": members }).to_string(),
    )
}

#[test]
fn gamma_of_named_graphs() {
    let (r, code, _) = run(&["gamma", "w8"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(
        (r["result"]["lower"].as_i64(), r["result"]["upper"].as_i64()),
        (Some(2), Some(2))
    );

    let (r, _, _) = run(&["gamma", "k6"]);
    assert_eq!(
        (r["result"]["lower"].as_i64(), r["result"]["upper"].as_i64()),
        (Some(4), Some(4))
    );

    let (r, _, _) = run(&["gamma", "path:5"]);
    assert_eq!(r["result"]["upper"], 0);
    assert_eq!(r["result"]["upper_rule"], "forest");
}

#[test]
fn graph_arguments_from_files_and_stdin() {
    let path = temp_file("square.txt", "0 1\n1 2\n2 3\n3 0\n");
    let (r, code, _) = run(&["gamma", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["upper"], 1);

    let mut child = bin()
        .args(["minor", "-", "k3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"0 1\n1 2\n2 3\n3 0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_ne!(r["result"]["minor"], "none");
}

#[test]
fn budget_exhaustion_is_reported_not_failed() {
    // The Petersen graph: no structural rule bounds it from above.
    let (r, code, _) = run(&["--exhaustive", "--budget-nodes", "1", "gamma", "IheA@GUAo"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["upper"], "unknown");
    assert_eq!(r["status"], "unknown-budget-exhausted");
}

#[test]
fn betti_of_canonical_covers() {
    let k3 = canonical_complete_cover(3, "k3.json");
    let (r, code, _) = run(&["betti", k3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["betti"], json!([0, 1]));

    let k5 = canonical_complete_cover(5, "k5.json");
    let (r, _, _) = run(&["betti", k5.to_str().unwrap()]);
    assert_eq!(r["result"]["betti"], json!([0, 0, 0, 1]));

    let (r, _, _) = run(&["nerve", k5.to_str().unwrap()]);
    assert_eq!(r["result"]["f_vector"], json!([5, 10, 10, 5]));

    let complex = temp_file("circle.txt", "0 1\n1 2\n0 2\n");
    let (r, _, _) = run(&["betti", "--complex", complex.to_str().unwrap()]);
    assert_eq!(r["result"]["betti"], json!([0, 1]));
}

#[test]
fn invalid_cover_exits_with_input_code() {
    // Path 0-1-2-3; the members meet in {0, 3}, which is disconnected.
    let path = temp_file(
        "bad.json",
        r#"{"graph": "Ch", "members": [[0, 1, 2, 3], [0, 3]]}"#,
    );
    let (r, code, _) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "failed");
    assert_eq!(r["result"]["violation"]["intersection"], json!([0, 3]));
}

#[test]
fn tchain_of_the_bipyramid() {
    let cycle = temp_file("sphere.txt", "1 2 3\n2 4 5\n3 4 5\n1 3 4\n2 3 5\n1 2 4\n");
    let (r, code, _) = run(&["tchain", cycle.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        r["result"]["tetrahedra"],
        json!([[1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5]])
    );
    assert_eq!(r["result"]["boundary_is_cycle"], true);

    let order = temp_file("sphere2.txt", "2 4 5\n1 2 3\n3 4 5\n1 3 4\n2 3 5\n1 2 4\n");
    let (r, _, _) = run(&[
        "tchain",
        cycle.to_str().unwrap(),
        "--order",
        order.to_str().unwrap(),
    ]);
    assert_eq!(
        r["result"]["tetrahedra"],
        json!([[1, 2, 3, 4], [2, 3, 4, 5]])
    );

    let open = temp_file("open.txt", "1 2 3\n");
    let (_, code, _) = run(&["tchain", open.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn minors_piercing_and_helly() {
    let (r, _, _) = run(&["minor", "w8", "k5"]);
    assert_eq!(r["result"]["minor"], "none");
    let (r, _, _) = run(&["minor", "w8", "k4"]);
    assert_eq!(
        r["result"]["minor"]["branch_sets"]
            .as_array()
            .unwrap()
            .len(),
        4
    );

    let disjoint = temp_file(
        "disjoint.json",
        r#"{"graph": "G?????", "members": [[0], [1, 2], [3], [4]]}"#,
    );
    let (r, code, _) = run(&["pierce", disjoint.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["vertices"].as_array().unwrap().len(), 4);

    let k5 = canonical_complete_cover(5, "k5-helly.json");
    let (r, _, _) = run(&["helly", k5.to_str().unwrap()]);
    assert_eq!(r["result"]["helly"], 5);
    assert_eq!(
        r["result"]["clique_minor"]["branch_sets"]
            .as_array()
            .unwrap()
            .len(),
        5
    );
    let (r, _, _) = run(&["pq", k5.to_str().unwrap(), "--p", "5", "--q", "4"]);
    assert_eq!(r["result"]["holds"], true);
    let (r, _, _) = run(&["pq", k5.to_str().unwrap(), "--p", "5", "--q", "5"]);
    assert_eq!(r["result"]["holds"], false);
}

#[test]
fn search_finds_triangle_homology() {
    let (r, code, _) = run(&["search", "k3", "--dim", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["outcome"], "found");
    let (r, _, _) = run(&["search", "path:4", "--dim", "1"]);
    assert_eq!(r["result"]["outcome"], "proven-absent");
}

#[test]
fn stored_examples_reproduce() {
    for name in [
        "w8",
        "sphere-orderings",
        "planar-pipeline",
        "piercing-witness",
    ] {
        let (r, code, _) = run(&["reproduce", name]);
        assert_eq!(code, 0, "{name}: {r}");
        assert_eq!(r["status"], "ok");
        assert!(r["result"]["assertions"]
            .as_array()
            .unwrap()
            .iter()
            .all(|a| a["pass"] == true));
    }
    let (r, code, out) = run(&["reproduce", "no-such-example"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown fixture"));
}

#[test]
fn resource_caps_exit_with_resource_code() {
    let (r, code, _) = run(&["--cap-vertices", "4", "minor", "w8", "k4"]);
    assert_eq!(code, 4, "{r}");
    assert_eq!(r["status"], "error");
}

#[test]
fn sweeps_need_a_seed_and_are_reproducible() {
    let (_, code, _) = run(&["sweep", "--count", "2"]);
    assert_eq!(code, 2);

    let args = [
        "--seed", "7", "sweep", "--family", "k4-free", "--count", "6",
    ];
    let (r, code, first) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(r["result"].as_array().unwrap().len(), 6);
    let again = bin().args(args).output().unwrap();
    assert_eq!(first.stdout, again.stdout);
    let threaded = bin().args(["--threads", "1"]).args(args).output().unwrap();
    assert_eq!(first.stdout, threaded.stdout);
}

#[test]
fn timing_is_opt_in() {
    let (r, _, _) = run(&["gamma", "k4"]);
    assert!(r.get("timing_ms").is_none());
    let (r, _, _) = run(&["--timing", "gamma", "k4"]);
    assert!(r["timing_ms"].is_u64());
}
