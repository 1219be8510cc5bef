use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn modlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_count_of_worked_example() {
    let o = modlat(&[
        "enumerate",
        "--poset",
        &fixture("fig81.poset.json"),
        "--lines",
        &fixture("fig81.lines.json"),
        "--count",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "13");
}

#[test]
fn enumerate_expand_lists_members() {
    let o = modlat(&[
        "enumerate",
        "--poset",
        &fixture("fig81.poset.json"),
        "--lines",
        &fixture("fig81.lines.json"),
        "--expand",
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 13);
    assert!(lines.iter().all(|l| l.len() == 7));
}

#[test]
fn enumerate_rebuild_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.json");
    let lat = dir.path().join("lattice.json");
    let o = modlat(&[
        "enumerate",
        "--poset",
        &fixture("fig81.poset.json"),
        "--lines",
        &fixture("fig81.lines.json"),
        "--json",
        "--out",
        rows.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = modlat(&[
        "rebuild",
        "--poset",
        &fixture("fig81.poset.json"),
        "--rows",
        rows.to_str().unwrap(),
        "--out",
        lat.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&lat).unwrap()).unwrap();
    assert_eq!(v["names"].as_array().unwrap().len(), 13);

    let o = modlat(&["rebuild", "--lattice", lat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphic: true"));

    let o = modlat(&["analyze", "--lattice", lat.to_str().unwrap(), "--json"]);
    let p: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(p["i"], 3);
    assert_eq!(p["j"], 7);
}

#[test]
fn analyze_m3() {
    let o = modlat(&["analyze", "--lattice", &fixture("m3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for want in ["j = 3", "delta = 2", "i = 1", "acyclic = true"] {
        assert!(s.contains(want), "{want} missing in\n{s}");
    }
}

#[test]
fn subgroup_lattice_analysis() {
    let o = modlat(&["subgroup-lattice", "--group", "2,2,2", "--analyze"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for want in ["j = 7", "i = 7", "acyclic = false", "r* = 8"] {
        assert!(s.contains(want), "{want} missing in\n{s}");
    }
}

#[test]
fn bol_and_localize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let lat = dir.path().join("z2.json");
    let bol = dir.path().join("bol.json");
    assert_eq!(
        modlat(&["subgroup-lattice", "--group", "2,2,2", "--out", lat.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let o = modlat(&["bol", "--lattice", lat.to_str().unwrap(), "--json", "--out", bol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = modlat(&[
        "localize",
        "--lattice",
        lat.to_str().unwrap(),
        "--bol",
        bol.to_str().unwrap(),
        "--a",
        "H14[4]",
        "--b",
        "H15[8]",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let p: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(p["points"].as_array().unwrap().len(), 4);
    assert_eq!(p["lines"].as_array().unwrap().len(), 6);

    let o = modlat(&["bol", "--lattice", lat.to_str().unwrap(), "--sigma"]);
    assert!(stdout(&o).contains("implications: 21"));

    let o = modlat(&["localize", "--lattice", lat.to_str().unwrap(), "--a", "0", "--b", "H15[8]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rstar_and_witness() {
    let o = modlat(&["rstar", "--pls", &fixture("fano.pls.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rstar"], 8);
    assert_eq!(v["acyclifier"].as_array().unwrap().len(), 8);

    let o = modlat(&["rstar", "--group", "4,4", "--all-bols"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r* = 2"));

    let o = modlat(&["witness-triangle", "--group", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("28 triangle configurations"));
}

#[test]
fn distributive_from_matrix() {
    let o = modlat(&["distributive", "--sets", &fixture("ex8a.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("join-irreducibles (7)"));
    let o = modlat(&["distributive", "--sets", &fixture("ex8a.txt"), "--dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn verify_single_lattice_and_corpus() {
    let o = modlat(&["verify", "--lattice", &fixture("m3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = modlat(&["verify", "--jobs", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks pass"));
}

#[test]
fn exit_codes() {
    assert_eq!(modlat(&[]).status.code(), Some(2));
    assert_eq!(modlat(&["analyze", "--lattice", "/does/not/exist.json"]).status.code(), Some(2));
    assert_eq!(modlat(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let n5 = dir.path().join("n5.json");
    std::fs::write(&n5, r#"{"names": ["0","a","b","c","1"], "covers": [[0,1],[1,2],[2,4],[0,3],[3,4]]}"#).unwrap();
    let o = modlat(&["analyze", "--lattice", n5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("modular"));
}
