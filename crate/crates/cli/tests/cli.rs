use std::io::Write;
use std::process::{Command, Output, Stdio};

fn chromix(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chromix"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn p21_of_t03_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let t03 = stdout(&chromix(&["target", "t03"], None));
    let path = write(&dir, "t03.nm", &t03);
    let out = chromix(&["check", "p21", &path], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "holds: true\n");
}

#[test]
fn gadget16_has_no_image_in_t03() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        &dir,
        "g16.nm",
        &stdout(&chromix(
            &["gen", "gadget", "--k", "16", "--n", "0", "--m", "3"],
            None,
        )),
    );
    let t = write(&dir, "t03.nm", &stdout(&chromix(&["target", "t03"], None)));
    let out = chromix(&["hom", "find", &g, &t], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chromatic_number_of_an_arc() {
    let out = chromix(
        &["chrom", "-", "--max-k", "5", "--json"],
        Some("nmgraph 1 0\nvertices 2\narc 0 1 2\n"),
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema"], "chromix.report/1");
    assert_eq!(report["result"]["k"], 2);
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["inputs"][0]["path"], "-");
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    // exactly one report
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(chromix(&["bogus"], None).status.code(), Some(2));
    let missing_seed = chromix(&["gen", "p2t", "--nv", "5", "--n", "0", "--m", "2"], None);
    assert_eq!(missing_seed.status.code(), Some(2));
    let missing_seed = chromix(
        &["gen", "lowmad", "--nv", "50", "--n", "0", "--m", "2"],
        None,
    );
    assert_eq!(missing_seed.status.code(), Some(2));
    let bad = chromix(
        &["check", "p21", "-"],
        Some("nmgraph 1 0\nvertices 2\narc 0 1 3\n"),
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
    let json = chromix(&["frobnicate", "--json"], None);
    assert_eq!(json.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(report["exit_code"], 2);
}

#[test]
fn failing_checks_print_witnesses() {
    let walecki = stdout(&chromix(
        &["target", "walecki", "--n", "0", "--m", "2"],
        None,
    ));
    let out = chromix(&["check", "p21", "-"], Some(&walecki));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness: u="));
    let out = chromix(&["check", "regular", "-", "--d", "3"], Some(&walecki));
    assert_eq!(out.status.code(), Some(1));
    let out = chromix(&["check", "expansion", "-", "--json"], Some(&walecki));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn budget_exhaustion_exits_three() {
    // C7 does not map to C9
    let c7 =
        "graph\nvertices 7\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 5 6\nedge 0 6\n";
    let out = chromix(
        &["hom", "circular", "-", "--g", "4", "--budget", "1"],
        Some(c7),
    );
    assert_eq!(out.status.code(), Some(3));
    let out = chromix(&["hom", "circular", "-", "--g", "4"], Some(c7));
    assert_eq!(out.status.code(), Some(1));
    let out = chromix(&["hom", "circular", "-", "--g", "2"], Some(c7));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn acyclic_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        &dir,
        "c4.txt",
        "graph\nvertices 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 0 3\n",
    );
    let two = write(
        &dir,
        "two.col",
        "coloring\nvertices 4\ncolor 0 0\ncolor 1 1\ncolor 2 0\ncolor 3 1\n",
    );
    let three = write(
        &dir,
        "three.col",
        "coloring\nvertices 4\ncolor 0 0\ncolor 1 1\ncolor 2 0\ncolor 3 2\n",
    );
    assert_eq!(
        chromix(&["check", "acyclic", &g, &two], None).status.code(),
        Some(1)
    );
    assert_eq!(
        chromix(&["check", "acyclic", &g, &three], None)
            .status
            .code(),
        Some(0)
    );
    let out = chromix(&["acyclic-color", &g, "--n", "0", "--m", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("palette: "));
}

#[test]
fn sparsity_commands() {
    let path = "graph\nvertices 5\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\n";
    let out = chromix(&["mad", "-"], Some(path));
    assert!(stdout(&out).starts_with("mad: 8/5\n"));
    let out = chromix(&["arboricity", "-", "--emit-forests", "--json"], Some(path));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["arboricity"], 1);
    assert_eq!(report["result"]["forests"][0].as_array().unwrap().len(), 4);
}

#[test]
fn generators_are_reproducible() {
    let args = [
        "gen", "lowmad", "--nv", "50", "--seed", "9", "--n", "1", "--m", "1",
    ];
    assert_eq!(stdout(&chromix(&args, None)), stdout(&chromix(&args, None)));
    let tree = stdout(&chromix(
        &[
            "gen", "p2t", "--nv", "60", "--seed", "2", "--n", "1", "--m", "1",
        ],
        None,
    ));
    let t11 = stdout(&chromix(&["target", "t11"], None));
    let dir = tempfile::tempdir().unwrap();
    let (g, t) = (write(&dir, "g.nm", &tree), write(&dir, "t.nm", &t11));
    assert_eq!(
        chromix(&["hom", "two-tree", &g, &t], None).status.code(),
        Some(0)
    );
}
