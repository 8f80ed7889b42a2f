use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use circuit_walks::network::Digraph;
use circuit_walks::Polyhedron;
use tempfile::TempDir;

const SQUARE: &str = "n 2\nLE 4\n1 0 | 1\n0 1 | 1\n-1 0 | 0\n0 -1 | 0\n";
const HEXAGON: &str = "n 2\nLE 6\n-2 1 | 0\n-1 8 | 15\n3 1 | 30\n3 -1 | 30\n-1 -8 | 15\n-2 -1 | 0\n";
const REGULAR_HEXAGON: &str = "n 2\nLE 6\n1 0 | 1\n0 1 | 1\n-1 1 | 1\n-1 0 | 1\n0 -1 | 1\n1 -1 | 1\n";
const PATH_DIGRAPH: &str = "nodes 4\narc 0 1\narc 1 2\narc 0 3\narc 2 0\narc 2 3\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn first_line(&self) -> &str {
        self.stdout.lines().next().unwrap_or("")
    }
}

fn cwalk(args: &[&str]) -> Run {
    cwalk_env(args, None)
}

fn cwalk_env(args: &[&str], limit: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cwalk"));
    cmd.args(args);
    match limit {
        Some(l) => cmd.env("CW_ENUM_LIMIT", l),
        None => cmd.env_remove("CW_ENUM_LIMIT"),
    };
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn square_distance_is_two() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "square.poly", SQUARE);
    let r = cwalk(&["distance", s(&sq), "(0,0)", "(1,1)", "--k", "2", "--variant", "circ"]);
    assert_eq!((r.code, r.first_line()), (0, "DIST 2"));
    let r = cwalk(&["distance", s(&sq), "(0,0)", "(1,1)", "--k", "1"]);
    assert_eq!((r.code, r.first_line()), (1, "GT 1"));
    for variant in ["scm", "sc-decomp"] {
        let r = cwalk(&["distance", s(&sq), "(0,0)", "(1,1)", "--k", "2", "--variant", variant]);
        assert_eq!((r.code, r.first_line()), (0, "DIST 2"), "{variant}");
    }
}

#[test]
fn hexagon_steps() {
    let dir = TempDir::new().unwrap();
    let hex = file(&dir, "hexagon.poly", HEXAGON);
    let r = cwalk(&["scm-step", s(&hex), "(0,0)", "(10,0)", "--method", "brute"]);
    assert_eq!((r.code, r.first_line()), (1, "NONE"));
    let r = cwalk(&["incident-facet-step", s(&hex), "(0,0)", "(10,0)", "--method", "brute"]);
    assert_eq!(r.code, 0);
    assert!(r.first_line().starts_with("STEP "));
    // the hexagon is not totally unimodular
    let r = cwalk(&["scm-step", s(&hex), "(0,0)", "(10,0)", "--method", "tu"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("totally unimodular"));
}

#[test]
fn circulation_round_trip() {
    let dir = TempDir::new().unwrap();
    let prefix = dir.path().join("c6");
    let args = ["gadget", "circulation", "--nodes", "6", "--decomposable", "--seed", "1", "--out", s(&prefix)];
    let first = cwalk(&args);
    assert_eq!(first.code, 0);
    let poly_text = fs::read_to_string(dir.path().join("c6.poly")).unwrap();
    let graph_text = fs::read_to_string(dir.path().join("c6.graph")).unwrap();
    // deterministic per seed
    let second = cwalk(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(poly_text, fs::read_to_string(dir.path().join("c6.poly")).unwrap());
    // emitted files read back bit-exactly
    assert_eq!(Polyhedron::parse(&poly_text).unwrap().to_text(), poly_text);
    assert_eq!(Digraph::parse(&graph_text).unwrap().to_text(), graph_text);
    let field = |name: &str| {
        first.stdout.lines().find_map(|l| l.strip_prefix(name)).unwrap().trim().to_string()
    };
    let (zero, full) = (field("zero "), field("full "));
    let r = cwalk(&["distance", s(&dir.path().join("c6.poly")), &zero, &full, "--k", "2"]);
    assert_eq!((r.code, r.first_line()), (0, "DIST 2"));
}

#[test]
fn walk_files() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "square.poly", SQUARE);
    let good = file(&dir, "good.walk", "from (0,0)\nto (1,1)\n1 0 * 1\n0 1 * 1\n");
    let r = cwalk(&["walk-verify", s(&sq), s(&good), "--sign-compatible"]);
    assert_eq!((r.code, r.first_line()), (0, "ACCEPT"));
    let short = file(&dir, "short.walk", "from (0,0)\nto (1,1)\n1 0 * 1/2\n0 1 * 1\n");
    let r = cwalk(&["walk-verify", s(&sq), s(&short)]);
    assert_eq!((r.code, r.first_line()), (1, "REJECT 5 step 1"));
    let broken = file(&dir, "broken.walk", "from (0,0)\nto (1,1)\n1 0 1\n");
    let r = cwalk(&["walk-verify", s(&sq), s(&broken)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
}

#[test]
fn malformed_polyhedron_is_line_anchored() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.poly", "n 2\nLE 2\n1 0 | 1\n1 x | 2\n");
    let r = cwalk(&["circuits", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 4"), "{}", r.stderr);
    let sq = file(&dir, "square.poly", SQUARE);
    let r = cwalk(&["maxstep", s(&sq), "(0,0", "(1,0)"]);
    assert_eq!(r.code, 2);
}

#[test]
fn circuits_and_recognition() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "square.poly", SQUARE);
    let r = cwalk(&["circuits", s(&sq)]);
    assert_eq!(r.stdout, "CIRCUITS 2\n(0, 1)\n(1, 0)\n");
    assert_eq!(cwalk(&["is-circuit", s(&sq), "(1,0)"]).code, 0);
    let r = cwalk(&["is-circuit", s(&sq), "(1,1)"]);
    assert_eq!((r.code, r.first_line()), (1, "NO"));
    let r = cwalk(&["maxstep", s(&sq), "(0,0)", "(0,1)"]);
    assert_eq!((r.code, r.first_line()), (0, "STEP 1 (0, 1)"));
    let r = cwalk(&["maxstep", s(&sq), "(0,1)", "(0,1)"]);
    assert_eq!((r.code, r.first_line()), (1, "NOT-A-STEP"));
}

#[test]
fn enumeration_limit_from_environment() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "square.poly", SQUARE);
    let r = cwalk_env(&["circuits", s(&sq)], Some("1"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("too large"), "{}", r.stderr);
    let r = cwalk_env(&["circuits", s(&sq)], Some("nonsense"));
    assert_eq!(r.code, 2);
}

#[test]
fn geometric_distance_reports_symbolic_length() {
    let dir = TempDir::new().unwrap();
    let tri = file(&dir, "triangle.poly", "n 2\nLE 3\n-1 0 | 0\n0 -1 | 0\n1 1 | 1\n");
    let r = cwalk(&["geom-distance", s(&tri), "(1,0)", "(0,1)", "--p", "2", "--cap", "2"]);
    assert_eq!((r.code, r.first_line()), (0, "GDIST 2^(1/2) ~ 1.414214"));
    let r = cwalk(&["geom-distance", s(&tri), "(1,0)", "(0,1)", "--p", "inf", "--cap", "2"]);
    assert_eq!((r.code, r.first_line()), (0, "GDIST 1 ~ 1.000000"));
}

#[test]
fn facet_steps_by_method() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "square.poly", SQUARE);
    for method in ["brute", "tu"] {
        let r = cwalk(&["facet-step", s(&sq), "(0,0)", "--facet", "0", "--method", method]);
        assert_eq!(r.code, 0, "{method}");
        assert!(r.first_line().starts_with("STEP (1, 0)"), "{method}: {}", r.stdout);
    }
    let net = file(&dir, "tri.graph", "nodes 3\narc 0 1\narc 1 2\narc 2 0\n");
    let r = cwalk(&["incident-facet-step", s(&net), "(0,0,0)", "(1,1,1)", "--method", "nf"]);
    assert_eq!((r.code, r.first_line()), (0, "STEP (1, 1, 1)"));
    let r = cwalk(&["scm-step", s(&net), "(0,0,0)", "(1,1,1)", "--method", "nf"]);
    assert_eq!((r.code, r.first_line()), (0, "STEP (1, 1, 1)"));
}

#[test]
fn parallelotope_check() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "square.poly", SQUARE);
    let r = cwalk(&["parallelotope-check", s(&sq)]);
    assert_eq!((r.code, r.first_line()), (0, "PARALLELOTOPE 2 2"));
    let hex = file(&dir, "regular.poly", REGULAR_HEXAGON);
    let r = cwalk(&["parallelotope-check", s(&hex)]);
    assert_eq!((r.code, r.first_line()), (1, "NOT-PARALLELOTOPE 2"));
    let pyramid = file(&dir, "pyramid.poly", "n 3\nLE 5\n0 0 -1 | 0\n2 0 1 | 2\n-2 0 1 | 0\n0 2 1 | 2\n0 -2 1 | 0\n");
    let r = cwalk(&["parallelotope-check", s(&pyramid)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("simple"));
}

#[test]
fn hardness_gadget_files() {
    let dir = TempDir::new().unwrap();
    let graph = file(&dir, "path.graph", PATH_DIGRAPH);
    let r = cwalk(&["gadget", "aux-graph", s(&graph), "--t", "3"]);
    assert_eq!((r.code, r.first_line()), (0, "AUXGRAPH 9 10"));
    let prefix = dir.path().join("path");
    let r = cwalk(&["gadget", "hardness", s(&graph), "--t", "3", "--out", s(&prefix)]);
    assert_eq!((r.code, r.first_line()), (0, "GADGET OK"), "{}", r.stdout);
    let prime = fs::read_to_string(dir.path().join("path.prime.poly")).unwrap();
    let parsed = Polyhedron::parse(&prime).unwrap();
    assert_eq!(parsed.to_text(), prime);
    assert_eq!(parsed.dim(), 10);
    let r = cwalk(&["gadget", "hardness", s(&graph), "--t", "1"]);
    assert_eq!(r.code, 2);
}
