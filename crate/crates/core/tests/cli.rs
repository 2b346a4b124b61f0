use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_kmroots");
const CATALOG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.json");

/// Table row 1: index 5, lattice 2.
const AMBIENT: &str = "rank 4\nedge 1 4 3\nedge 2 3 3\nedge 2 4 3\nedge 3 4 3\n";
const ROOTS: &str = "0 0 1 0\n0 0 0 1\n0 2 1 1\n1 0 0 0\n";
/// A minimal pair failing (*).
const G2_AMBIENT: &str = "rank 3\nedge 1 3 6<\nedge 2 3 6>\n";
const G2_ROOTS: &str = "[1, 0, 0]\n[0, 0, 1]\n[0, 1, 1]  # long root\n";

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(x: &Path) -> &str {
    x.to_str().unwrap()
}

#[test]
fn classify_type() {
    let f = fixture("ambient.dsl", AMBIENT);
    let o = run(&["classify-type", p(&f)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("hyperbolic\n"));
    let f = fixture("a3.dsl", "rank 3\nedge 1 2 3\nedge 2 3 3\n");
    assert!(stdout(&run(&["classify-type", p(&f)])).starts_with("finite\n"));
    let f = fixture("cox.dsl", "rank 3\nedge 1 2 4\nedge 2 3 4\n");
    assert_eq!(
        stdout(&run(&["classify-type", p(&f)])),
        "coxeter diagram: finite or affine\n"
    );
}

#[test]
fn indices_and_star() {
    let a = fixture("t1.dsl", AMBIENT);
    let r = fixture("t1.roots", ROOTS);
    assert_eq!(stdout(&run(&["lattice-index", p(&a), p(&r)])), "2\n");
    assert_eq!(stdout(&run(&["coset-index", p(&a), p(&r)])), "5\n");
    let o = run(&["star-check", p(&a), p(&r), "--height", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "holds up to height 12\n");

    let a = fixture("g2.dsl", G2_AMBIENT);
    let r = fixture("g2.roots", G2_ROOTS);
    let o = run(&["star-check", p(&a), p(&r)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("fails: "));
}

#[test]
fn errors_exit_two() {
    let a = fixture("bad.dsl", "rank 3\nedge 1 2 5\n");
    let o = run(&["classify-type", p(&a)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad label `5` at line 2"));

    let a = fixture("t1b.dsl", AMBIENT);
    let r = fixture("short.roots", "1 0 0\n");
    assert_eq!(run(&["lattice-index", p(&a), p(&r)]).status.code(), Some(2));
    let o = run(&[
        "coset-index",
        p(&a),
        p(&fixture("t1b.roots", ROOTS)),
        "--max-cosets",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeded 3 cosets"));
    assert_eq!(
        run(&["verify-catalog", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn roots_and_simplices() {
    let a = fixture("a2.dsl", "rank 2\nedge 1 2 3\n");
    assert_eq!(
        stdout(&run(&["roots", p(&a), "--height", "5"])),
        "0 1\n1 0\n1 1\n"
    );
    let o = stdout(&run(&["enum-simplices", "--rank", "10"]));
    assert_eq!(o.matches("rank 10\n").count(), 3);
    let c = fixture("chain.dsl", "rank 3\nedge 1 2 4\nedge 2 3 4\n");
    let o = stdout(&run(&["enum-dynkin", p(&c)]));
    assert!(o.matches("rank 3").count() >= 2);
}

#[test]
fn find_subsystems_reports_bound() {
    let a = fixture("t1c.dsl", AMBIENT);
    let o = stdout(&run(&["find-subsystems", p(&a), "--height", "3"]));
    assert!(o.starts_with("# complete up to height 3\n"));
    assert!(o.contains("[0 0 0 1; 0 0 1 0; 0 1 0 0; 1 0 0 0] lattice index 1\n"));
    assert!(o.contains("[0 0 1 1; 0 1 0 1; 0 1 1 0; 1 0 0 0] lattice index 2\n"));
}

#[test]
fn verify_and_hasse() {
    let o = run(&["verify-catalog", CATALOG]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("206 of 206 records verified\n"));

    let dot = run(&["emit-hasse", CATALOG]);
    assert!(dot.status.success());
    assert_eq!(dot.stdout, run(&["emit-hasse", CATALOG]).stdout);
    let text = stdout(&dot);
    assert!(text.starts_with("digraph hasse {\n"));
    assert!(text.contains("label=\"527\", style=solid"));
    assert!(text.contains("style=dotted"));

    let json = stdout(&run(&["emit-hasse", CATALOG, "--out", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(
        v["edges"].as_array().unwrap().len(),
        text.matches(" -> ").count()
    );
}

#[test]
fn verify_reports_mismatch() {
    let text = std::fs::read_to_string(CATALOG).unwrap();
    let line = text.lines().find(|l| l.contains("Table 1 row 1")).unwrap();
    let bad = format!(
        "[\n{}\n]\n",
        line.trim_end_matches(',')
            .replace("\"group_index\":5", "\"group_index\":6")
    );
    let f = fixture("bad_catalog.json", &bad);
    let o = run(&["verify-catalog", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("group_index: expected 6, computed 5"));
    assert_eq!(run(&["emit-hasse", p(&f)]).status.code(), Some(2));
}

#[test]
fn config_file_defaults() {
    let a = fixture("t1d.dsl", AMBIENT);
    let r = fixture("t1d.roots", ROOTS);
    let cfg = fixture("kmroots.toml", "height = 7\n");
    let o = run(&["star-check", p(&a), p(&r), "--config", p(&cfg)]);
    assert_eq!(stdout(&o), "holds up to height 7\n");
    let o = run(&[
        "star-check",
        p(&a),
        p(&r),
        "--config",
        p(&cfg),
        "--height",
        "9",
    ]);
    assert_eq!(stdout(&o), "holds up to height 9\n");
    let bad = fixture("bad.toml", "heigth = 7\n");
    assert_eq!(
        run(&["star-check", p(&a), p(&r), "--config", p(&bad)])
            .status
            .code(),
        Some(2)
    );
}
