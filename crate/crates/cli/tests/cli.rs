use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sigcert(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigcert"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.poly"), "2 :\n-1 : 1 2\n").unwrap();
    fs::write(dir.path().join("g.poly"), "1 :\n-1 : 1\n-1 : 2\n").unwrap();
    fs::write(dir.path().join("h.poly"), "1 : 1 2\n").unwrap();
    let o = sigcert(&["check", "f.poly"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min = 1"));
    let o = sigcert(&["check", "g.poly"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violated at x = 11"));
    // a positive nonlinear term is outside what check decides
    assert_eq!(sigcert(&["check", "h.poly"], dir.path()).status.code(), Some(2));
}

#[test]
fn min_uses_enumeration_for_general_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.poly"), "1 : 1 2\n-1 : 1\n-1 : 2\n").unwrap();
    let o = sigcert(&["min", "f.poly"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min = -1"));
}

#[test]
fn relax_graph_with_gap() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tri.rudy"), "3 3\n1 2 1\n2 3 1\n1 3 1\n").unwrap();
    let o = sigcert(&["relax", "tri.rudy", "--method", "std", "--level", "1", "--opt", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("bound = 3"), "{out}");
    assert!(out.contains("gap = 0.333333"), "{out}");
    // the top level is exact
    let o = sigcert(&["relax", "tri.rudy", "--level", "3", "--mode", "cutplane"], dir.path());
    assert!(stdout(&o).contains("bound = 2"));
    let o = sigcert(&["--float", "relax", "tri.rudy", "--method", "sa1"], dir.path());
    assert!(stdout(&o).contains("bound = 3"));
}

#[test]
fn relax_level_out_of_range() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.poly"), "2 :\n-1 : 1 2\n").unwrap();
    let o = sigcert(&["relax", "f.poly", "--level", "99"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
    assert_eq!(sigcert(&["relax", "f.poly", "--method", "bogus"], dir.path()).status.code(), Some(2));
}

#[test]
fn relax_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.poly"), "1 : 1 2\n-2 : 1 3\n1 : 3\n").unwrap();
    let o = sigcert(&["relax", "f.poly", "--level", "1", "--certificate", "c.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert!(doc["lambda"].is_string());
}

#[test]
fn export_mps() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tri.rudy"), "3 3\n1 2 1\n2 3 1\n1 3 1\n").unwrap();
    let o = sigcert(&["export", "--mps", "m.mps", "tri.rudy", "--level", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let mps = fs::read_to_string(dir.path().join("m.mps")).unwrap();
    assert!(mps.starts_with("NAME") && mps.trim_end().ends_with("ENDATA"));
    assert!(dir.path().join("m.names").exists());
}

#[test]
fn gen_is_seeded_and_run_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = sigcert(&["gen", "graph", "--n", "7", "--density", "0.5", "--seed", "9"], dir.path());
    let b = sigcert(&["gen", "graph", "--n", "7", "--density", "0.5", "--seed", "9"], dir.path());
    assert_eq!(a.stdout, b.stdout);
    fs::write(dir.path().join("g.1"), &a.stdout).unwrap();
    fs::write(dir.path().join("optima.txt"), "# name value\ng.1 100\n").unwrap();
    let o = sigcert(
        &["run", "g.1", "--methods", "sa1,std", "--levels", "1,2", "--optima", "optima.txt", "--csv", "r.csv"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(csv.starts_with("instance,method,level,bound,optimum,gap,time_s,rows,cols"));
    assert_eq!(csv.lines().count(), 4);
    let o = sigcert(&["report", "r.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let table = stdout(&o);
    assert!(table.contains("sa1") && table.contains("std 2") && table.contains("All"));
}
