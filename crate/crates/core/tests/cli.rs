use std::path::PathBuf;
use std::process::Command;

use sphvar::cli::run;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = vec![];
    let mut err = vec![];
    let mut full = vec!["sphvar"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares with the stored file; `SPHVAR_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let (c, out, err) = run_cli(args);
    assert_eq!(c, code, "{name}: exit code; stderr: {err}");
    let path = golden_path(name);
    if std::env::var_os("SPHVAR_BLESS").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(out, want, "{name}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1, "{name}");
}

#[test]
fn golden_outputs() {
    golden("check-wavefront.json", &["--json", "check", "a2-sl2", "wavefront"], 0);
    golden("check-affine.json", &["--json", "check", "u-sl3", "affine"], 0);
    golden("basicfn-a2.json", &["--json", "basicfn", "a2-sl2", "--case", "borel", "--height", "6", "--q", "sym"], 0);
    golden("basicfn-u-sl3.json", &["--json", "basicfn", "u-sl3", "--height", "2", "--q", "3"], 0);
    golden("basicfn-graded.json", &["--json", "basicfn", "pp-gl3-21", "--case", "graded", "--height", "2"], 0);
    golden("orbits-a1.json", &["--json", "orbits", "a1-gl1", "--height", "3", "--integral"], 0);
    golden("describe-u-sl3.json", &["--json", "describe", "u-sl3"], 0);
    golden("lf-pp-gl3.json", &["--json", "lf", "pp-gl3-21", "--point", "z1=2,z2=3", "--degree", "2"], 0);
    golden("catalog-test-triple.json", &["--json", "catalog", "test", "triple-product"], 0);
    golden("oracle-kappa.json", &["--json", "oracle", "run", "kappa", "--q", "2", "--height", "2"], 0);
    golden("error-input.json", &["--json", "check", "no-such-key", "wavefront"], 2);
}

#[test]
fn human_outputs() {
    let (c, out, _) = run_cli(&["basicfn", "a2-sl2", "--case", "borel", "--height", "6", "--q", "sym"]);
    assert_eq!(c, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 13);
    for r in rows {
        let cols: Vec<&str> = r.split('\t').collect();
        let l: i64 = cols[0].parse().unwrap();
        assert_eq!(cols[1], if l <= 0 { "1" } else { "0" });
    }
    let (c, out, _) = run_cli(&["orbits", "a1-gl1", "--height", "3", "--integral"]);
    assert_eq!(c, 0);
    assert_eq!(out.lines().count(), 5);
    let (c, out, _) = run_cli(&["lf", "a2-sl2", "--rep", "u_P", "--point", "z1=a"]);
    assert_eq!(c, 0);
    assert_eq!(out.trim(), "1/((1 - a*T))");
}

#[test]
fn exit_codes() {
    assert_eq!(run_cli(&["check", "a2-sl2", "wavefront"]).0, 0);
    // A^1 under GL1 is not parabolically induced
    assert_eq!(run_cli(&["check", "a1-gl1", "induced"]).0, 1);
    assert_eq!(run_cli(&["check", "u-sl3", "induced"]).0, 0);
    assert_eq!(run_cli(&["check", "nope", "wavefront"]).0, 2);
    assert_eq!(run_cli(&["check", "a2-sl2", "sideways"]).0, 2);
    assert_eq!(run_cli(&["basicfn", "a2-sl2", "--q", "banana"]).0, 2);
    assert_eq!(run_cli(&["basicfn", "tensor-4"]).0, 2);
    assert_eq!(run_cli(&["lf", "pp-gl3-21", "--point", "z1=0,z2=1"]).0, 2);
    assert_eq!(run_cli(&["lf", "pp-gl3-21", "--point", "z1=1"]).0, 2);
    assert_eq!(run_cli(&["lf", "pp-gl3-21", "--point", "z1=a,z2=b", "--degree", "2"]).0, 2);
    assert_eq!(run_cli(&["oracle", "run", "nothing"]).0, 2);
    assert_eq!(run_cli(&["oracle", "run", "pp-gl3", "--q", "4"]).0, 2);
    assert_eq!(run_cli(&["catalog", "show", "nothing"]).0, 2);
    assert_eq!(run_cli(&["--help"]).0, 0);
}

#[test]
fn catalog_commands() {
    let (c, out, _) = run_cli(&["catalog", "list"]);
    assert_eq!(c, 0);
    assert!(out.lines().count() >= 10);
    for key in out.lines() {
        let (c, o, _) = run_cli(&["catalog", "test", key]);
        assert_eq!(c, 0, "{key}\n{o}");
    }
    let (c, out, _) = run_cli(&["catalog", "show", "a1-gl1"]);
    assert_eq!(c, 0);
    let doc = sphvar::document::InputDocument::parse(&out).unwrap();
    assert_eq!(doc.name, "a1-gl1");
}

#[test]
fn reads_documents_from_files() {
    let dir = std::env::temp_dir().join(format!("sphvar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("a2.json");
    std::fs::write(&good, sphvar::catalog::source("a2-sl2").unwrap()).unwrap();
    assert_eq!(run_cli(&["check", good.to_str().unwrap(), "wavefront"]).0, 0);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"schema": 1, "group": {"type": "SL", "rank": 2}, "lattice_map": [[1]], "valuation_cone": {"generators": []}, "oops": 1}"#).unwrap();
    let (c, _, err) = run_cli(&["describe", bad.to_str().unwrap()]);
    assert_eq!(c, 2);
    assert!(err.contains("oops"), "{err}");
    let v2 = dir.join("v2.json");
    std::fs::write(&v2, sphvar::catalog::source("a2-sl2").unwrap().replacen("\"schema\": 1", "\"schema\": 2", 1)).unwrap();
    assert_eq!(run_cli(&["describe", v2.to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_uses_q_default_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sphvar"))
        .args(["basicfn", "u-sl3", "--height", "2"])
        .env("SPH_Q_DEFAULT", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("l1\tl2\tvalue\tat_q\n"), "{s}");
    assert!(s.contains("-1\t-1\tq + 1\t3\n"));
    let out = Command::new(env!("CARGO_BIN_EXE_sphvar")).args(["check", "a1-gl1", "induced"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
