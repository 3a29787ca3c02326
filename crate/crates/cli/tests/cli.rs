use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nutforge::format::{parse_edge_list, parse_graph6};
use nutforge::seeds::find_seed;
use nutforge::verify_nut;

fn nutforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nutforge"))
        .args(args)
        .env_remove("NUTFORGE_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn seed_file(dir: &Path, id: &str) -> PathBuf {
    let o = nutforge(&["seeds", "show", id, "--format", "edgelist"]);
    assert!(o.status.success(), "{}", stderr(&o));
    write(dir, &format!("{id}.txt"), &stdout(&o))
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_accepts_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let file = seed_file(dir.path(), "S-2-7");
    let o = nutforge(&["verify", arg(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("nullity 1"), "{out}");
    assert!(out.contains("kernel"), "{out}");
}

#[test]
fn verify_reports_four_cycle_nullity() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.g6", "Cr\n");
    let o = nutforge(&["verify", arg(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("nullity 2"), "{}", stdout(&o));
}

#[test]
fn verify_rejects_malformed_input_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.txt", "3 2\n0 1\n1 x\n");
    let o = nutforge(&["verify", "--input-format", "edgelist", arg(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn verify_json_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let file = seed_file(dir.path(), "S-8-3");
    let o = nutforge(&["--json", "verify", arg(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nullity"], 1);
}

#[test]
fn construct_fowler_and_bridge() {
    let dir = tempfile::tempdir().unwrap();
    let cubic = seed_file(dir.path(), "S-12-0");
    let o = nutforge(&["construct", "fowler", "--vertex", "0", arg(&cubic)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g = parse_edge_list(&stdout(&o)).unwrap();
    assert_eq!(g.order(), 18);
    assert!(verify_nut(&g).is_nut);

    let small = seed_file(dir.path(), "S-2-7");
    let o = nutforge(&["construct", "bridge", "--edge", "2,3", "--kernel", arg(&small)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g = parse_edge_list(&stdout(&o)).unwrap();
    assert_eq!(g.order(), 11);
    assert!(stdout(&o).contains("# kernel:"));
}

#[test]
fn construct_rejects_non_bridge() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let o = nutforge(&["construct", "bridge", "--edge", "0,1", arg(&file)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn realisable_exit_codes() {
    let o = nutforge(&["realisable", "8", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("exception"), "{}", stdout(&o));
    assert_eq!(nutforge(&["realisable", "2", "7"]).status.code(), Some(0));
    assert_eq!(nutforge(&["realisable", "3", "7"]).status.code(), Some(2));
}

#[test]
fn realise_outputs_verify() {
    let o = nutforge(&["realise", "12", "6", "--format", "graph6"]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_graph6(stdout(&o).trim()).unwrap();
    assert!(verify_nut(&g).is_nut);
    let sig = g.degree_signature().unwrap();
    assert_eq!((sig.v3, sig.v2), (12, 6));

    let o = nutforge(&["realise", "20", "0", "--planar"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nutforge(&["realise", "20", "0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn emitted_graph_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = nutforge(&["realise", "14", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let file = write(dir.path(), "g.txt", &text);
    assert_eq!(nutforge(&["verify", arg(&file)]).status.code(), Some(0));
    let g = parse_edge_list(&text).unwrap();
    let o = nutforge(&["seeds", "show", "S-2-7", "--format", "graph6"]);
    let seed = parse_graph6(stdout(&o).trim()).unwrap();
    assert_eq!(
        seed.canonical_form().unwrap(),
        find_seed("S-2-7").unwrap().graph.canonical_form().unwrap()
    );
    assert_eq!(g.degree_signature().unwrap().v3, 14);
}

#[test]
fn seeds_verify_reports_every_record() {
    let o = nutforge(&["seeds", "verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 27);
}

#[test]
fn betti_notes_the_gap() {
    let o = nutforge(&["betti", "15"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("missing m-n+1 in 2..=8: 3"), "{}", stdout(&o));
}

#[test]
fn cubic_oracles() {
    assert_eq!(nutforge(&["polyhedral", "20"]).status.code(), Some(1));
    assert_eq!(nutforge(&["polyhedral", "24"]).status.code(), Some(0));
    assert_eq!(nutforge(&["toroidal", "20"]).status.code(), Some(0));
    assert_eq!(nutforge(&["toroidal", "18"]).status.code(), Some(1));
}

#[test]
fn census_compares_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = nutforge(&["census", "--max-n", "9", "--compare-paper", "--out", arg(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("v3,v2,count"));
    assert!(csv.lines().any(|l| l.starts_with("2,7,1")), "{csv}");
}

#[test]
fn census_respects_order_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nutforge"))
        .args(["census", "--max-n", "8"])
        .env("NUTFORGE_MAX_ORDER", "6")
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(stderr(&o).contains("order bound"), "{}", stderr(&o));
}
