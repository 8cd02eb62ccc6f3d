use std::path::PathBuf;
use std::process::{Command, Output};

use higher_hochschild::report::Report;
use higher_hochschild::simplicial::SimplicialSet;

fn hhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhs")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn json(out: &Output) -> Report {
    Report::from_json(&String::from_utf8_lossy(&out.stdout)).expect("valid report")
}

#[test]
fn sphere_with_upper_triangular_coefficients_is_refused_with_a_witness() {
    let out = hhs(&["--json", "cohomology", &data("sphere2.sset"), "--algebra", "upper-tri 2", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let Report::Cohomology(r) = json(&out) else { panic!("wrong report kind") };
    let refusal = r.refusal.expect("refused");
    let w = refusal.witness.expect("witness attached");
    assert!(w.verify(&SimplicialSet::sphere2()));
    assert_eq!(w.fiber_labels, ["[00112]", "[00122]", "[01122]", "[01112]"]);
}

#[test]
fn sphere_with_commutative_coefficients_succeeds() {
    for cmd in ["homology", "cohomology"] {
        let out = hhs(&[cmd, &data("sphere2.sset"), "--algebra", "trunc-poly 2", "--module", "symmetric", "--max-degree", "3"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).contains("betti"));
    }
}

#[test]
fn nncmo_on_the_sphere_exits_with_two() {
    let out = hhs(&["nncmo", &data("sphere2.sset"), "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    for s in ["[00112]", "[00122]", "[01122]", "[01112]", "d2d1 = d1d3"] {
        assert!(text.contains(s), "{text}");
    }
    let out = hhs(&["nncmo", "circle", "--cutoff", "4", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cyclic_tables_for_the_circle() {
    let out = hhs(&["cyclic", &data("circle.sset"), "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("level 2: [001] < [011]"));
    assert!(text.contains("level 4: [00001] < [00011] < [00111] < [01111]"));
    assert_eq!(hhs(&["cyclic", "sphere2", "--cutoff", "4"]).status.code(), Some(2));
}

#[test]
fn circle_cohomology_in_degree_zero_is_the_center() {
    let out = hhs(&["--json", "cohomology", "circle", "--algebra", "upper-tri 2", "--module", "regular", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let Report::Cohomology(r) = json(&out) else { panic!("wrong report kind") };
    assert_eq!(r.table[0].betti, 1);
    assert_eq!(r.table.len(), 5);
}

#[test]
fn file_algebras_and_modules_match_builders() {
    let a = hhs(&["--json", "homology", "circle", "--algebra", &data("upper-tri-2.alg"), "--max-degree", "2"]);
    let b = hhs(&["--json", "homology", "circle", "--algebra", "upper-tri 2", "--max-degree", "2"]);
    let (Report::Homology(a), Report::Homology(b)) = (json(&a), json(&b)) else { panic!() };
    assert_eq!(a.table, b.table);
    let m = hhs(&["--json", "homology", "sphere2", "--algebra", "trunc-poly 2", "--module", &data("trunc-poly-2-symmetric.mod"), "--max-degree", "2"]);
    let s = hhs(&["--json", "homology", "sphere2", "--algebra", "trunc-poly 2", "--module", "symmetric", "--max-degree", "2"]);
    let (Report::Homology(m), Report::Homology(s)) = (json(&m), json(&s)) else { panic!() };
    assert_eq!(m.table, s.table);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let runs: Vec<&[&str]> = vec![
        &["--json", "nncmo", "sphere2", "--cutoff", "4"],
        &["--json", "cyclic", "wedge-2", "--cutoff", "3"],
        &["--json", "actions", "circle", "--cutoff", "3"],
        &["--json", "validate", "interval", "--algebra", "group S3"],
        &["--json", "homology", "wedge-2", "--algebra", "trunc-poly 2", "--max-degree", "2", "--normalized"],
        &["--json", "pair-constraints", "circle", "sphere2-with-circle"],
    ];
    for args in runs {
        let first = hhs(args);
        let second = hhs(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        let text = String::from_utf8(first.stdout).unwrap();
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text.trim_end(), "{args:?}");
    }
}

#[test]
fn input_errors_exit_with_one_and_name_the_line() {
    let dir = std::env::temp_dir().join(format!("hhs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.sset");
    std::fs::write(&bad, "basepoint v0\n# a loop\nsimplex e dim=1 faces=[v0]\n").unwrap();
    let out = hhs(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.sset:3"), "{err}");
    assert!(err.contains("expected"), "{err}");

    assert_eq!(hhs(&["nncmo", "circle", "--cutoff", "1"]).status.code(), Some(1));
    assert_eq!(hhs(&["homology", "circle", "--algebra", "upper-tri", "--max-degree", "2"]).status.code(), Some(1));
    assert_eq!(hhs(&["homology", "circle", "--algebra", "upper-tri 2", "--max-degree", "0"]).status.code(), Some(1));
    assert_eq!(hhs(&["pair-constraints", "sphere2", "circle"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
