use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use homlie::io::{algebra_document, load_instance, poisson_document, to_json, Instance};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn homlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlie"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn passing_check_exits_zero() {
    let o = homlie(&["check", "jacobi", "sl2.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: PASS"));
    assert!(stdout(&o).contains("sha256"));
}

#[test]
fn failing_check_exits_one() {
    let o = homlie(&["check", "poisson", "sl2_non_invariant.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL maurer-cartan weight 2"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        homlie(&["check", "jacobi", "missing.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homlie(&["check", "poisson", "sl2.json"]).status.code(),
        Some(2)
    );
    assert_eq!(homlie(&["check", "frobnicate"]).status.code(), Some(2));
    let o = homlie(&[
        "check",
        "braiding",
        "sl2.json",
        "casimir.json",
        "--reps",
        "adjoint",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structured_reports_are_deterministic() {
    let strip = |o: Output| -> String {
        stdout(&o)
            .lines()
            .filter(|l| !l.contains("wall_time_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let args = [
        "--format",
        "structured",
        "--seed",
        "9",
        "check",
        "ce",
        "string.json",
        "-W",
        "4",
    ];
    let a = strip(homlie(&args));
    let b = strip(homlie(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&stdout(&homlie(&args))).unwrap();
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["passed"], true);
}

#[test]
fn braiding_certificate_on_the_casimir() {
    let o = homlie(&[
        "check",
        "braiding",
        "sl2.json",
        "casimir.json",
        "--reps",
        "adjoint,adjoint,adjoint",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for check in [
        "gamma-equivariance of t",
        "left hexagon",
        "right hexagon",
        "total symmetry",
        "coherence",
        "t matches the Casimir contraction",
    ] {
        assert!(out.contains(&format!("PASS {check}")), "{check}\n{out}");
    }
}

#[test]
fn ce_export_writes_the_delta_table() {
    let o = homlie(&["ce", "export", "sl2.json", "-W", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "ce_presentation");
    assert_eq!(v["word_cap"], 6);
    assert_eq!(v["differential"].as_array().unwrap().len(), 3);
}

#[test]
fn generated_instances_load_and_operate() {
    let dir = std::env::temp_dir().join(format!("homlie-gen-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    assert_eq!(
        homlie(&["gen", "random", "--seed", "4", "-o", d])
            .status
            .code(),
        Some(0)
    );
    let rep = dir.join("representation.json");
    let o = homlie(&["check", "rep", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let f = dir.join("intertwiner.json");
    let ff = dir.join("ff.json");
    let fof = dir.join("fof.json");
    let s = |p: &Path| p.to_str().unwrap().to_string();
    assert_eq!(
        homlie(&["op", "compose", &s(&f), &s(&f), "-o", &s(&ff)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        homlie(&["op", "odot", &s(&f), &s(&f), "-o", &s(&fof)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(homlie(&["op", "diff", &s(&fof)]).status.code(), Some(0));
    let Instance::Intertwiner { map, source, .. } = load_instance(&fof, 4).unwrap().instance else {
        panic!()
    };
    assert_eq!(source.factors().len(), 2);
    assert_eq!(map.source().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn shipped_fixtures_are_in_canonical_form() {
    for name in ["abelian", "sl2", "dgla", "string"] {
        let p = fixtures().join(format!("{name}.json"));
        let l = load_instance(&p, 4).unwrap();
        assert!(l.warnings.is_empty());
        let Instance::Algebra(a) = l.instance else {
            panic!()
        };
        assert_eq!(
            to_json(&algebra_document(&a)),
            std::fs::read_to_string(&p).unwrap()
        );
    }
    for (name, alg) in [
        ("casimir", "sl2.json"),
        ("sl2_non_invariant", "sl2.json"),
        ("string_poisson", "string.json"),
    ] {
        let p = fixtures().join(format!("{name}.json"));
        let Instance::Poisson { sps, .. } = load_instance(&p, 4).unwrap().instance else {
            panic!()
        };
        assert_eq!(
            to_json(&poisson_document(&sps, alg)),
            std::fs::read_to_string(&p).unwrap()
        );
    }
}
