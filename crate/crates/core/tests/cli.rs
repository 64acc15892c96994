use std::path::Path;
use std::process::{Command, Output};

use surface_actions::exclusivity::sl2_7_published_triple;
use surface_actions::report::{parse_report, Report, CACHE_MAGIC};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_surface-actions"));
    c.env_remove("HF_CATALOG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

const SYM5_ONLY: &str =
    "id=S5 degree=5 gens=(1,2);(1,2,3,4,5) order=120 coverage=all-of-order:120\n";

#[test]
fn scalar_outputs() {
    let o = run(&["measure", "(0;2,3,7)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/42");

    let o = run(&[
        "trichotomy",
        "--dim",
        "6",
        "--singular",
        "0",
        "--involution-fixes",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "countably_many; locally_rigid=true");

    let o = run(&["embed", "H4", "S5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).starts_with("no monomorphism (definitive:"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn unit_periods_warn() {
    let o = run(&["measure", "(0;1,2,3,7)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1/42"));
    assert!(stdout(&o).contains("warning:"));
}

#[test]
fn json_parses_back() {
    for args in [
        vec!["--format", "json", "measure", "(1;2)"],
        vec!["--format", "json", "signatures", "3", "24"],
        vec!["--format", "json", "find-action", "C7", "3"],
        vec![
            "--format",
            "json",
            "todd-coxeter",
            "<x,y | x^2, y^3, (x*y)^5>",
        ],
        vec!["--format", "json", "genus-report", "8"],
    ] {
        let o = run(&args);
        let env = parse_report(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(env.schema, "surface-actions/report/v1");
    }
    let o = run(&[
        "--format",
        "json",
        "todd-coxeter",
        "<x,y | x^2, y^3, (x*y)^5>",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(matches!(
        parse_report(&stdout(&o)).unwrap().report,
        Report::ToddCoxeter(_)
    ));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["signatures", "2", "7"]).status.code(), Some(2));
    assert_eq!(run(&["find-action", "C7", "3"]).status.code(), Some(0));
    assert_eq!(run(&["find-action", "C7", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "--coset-budget",
            "10",
            "todd-coxeter",
            "<x,y | x^2, y^3, (x*y)^5>"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(run(&["genus-report", "8"]).status.code(), Some(0));
    assert_eq!(
        run(&["genus-report", "4", "--no-supplementary"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["embed", "C5", "S5"]).status.code(), Some(0));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["frobnicate"],
        vec!["measure"],
        vec!["measure", "(0;2,3"],
        vec!["signatures", "1", "2"],
        vec!["find-action", "NoSuchGroup", "3"],
        vec!["--workers", "0", "measure", "(0;2,3,7)"],
        vec!["trichotomy", "--dim", "5", "--singular", "0"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    for args in [vec!["find-action", "A5", "4"], vec!["genus-report", "6"]] {
        let plain = run(&args);
        let mut with = vec!["--cache", c];
        with.extend(&args);
        let cold = run(&with);
        let warm = run(&with);
        assert_eq!(stdout(&cold), stdout(&plain));
        assert_eq!(stdout(&warm), stdout(&plain));
        assert_eq!(warm.status.code(), plain.status.code());
    }
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with(CACHE_MAGIC));
    assert_eq!(text.lines().count(), 3);

    let mut corrupted = text.clone();
    corrupted.push_str("{not json\n");
    std::fs::write(&cache, corrupted).unwrap();
    let o = run(&["--cache", c, "find-action", "A5", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    assert_eq!(stdout(&o), stdout(&run(&["find-action", "A5", "4"])));

    std::fs::write(&cache, "something else\n").unwrap();
    assert_eq!(
        run(&["--cache", c, "measure", "(0;2,3,7)"]).status.code(),
        Some(1)
    );
}

#[test]
fn tampered_cache_record_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let fresh = run(&["--cache", c, "find-action", "C7", "3"]);
    let text = std::fs::read_to_string(&cache).unwrap();
    std::fs::write(&cache, text.replacen("\"genus\":3", "\"genus\":4", 1)).unwrap();
    let again = run(&["--cache", c, "find-action", "C7", "3"]);
    assert_eq!(stdout(&again), stdout(&fresh));
    assert!(stderr(&again).contains("warning"));
}

#[test]
fn verify_vector_flags_mismatched_periods() {
    let (_, _, v) = sl2_7_published_triple().unwrap();
    let elliptic: Vec<String> = v.elliptic.iter().map(|p| p.to_string()).collect();
    let file = serde_json::json!({
        "group": "SL2(7)",
        "signature": "(0;2,3,7)",
        "vector": { "elliptic": elliptic },
    });
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triple.json");
    std::fs::write(&path, file.to_string()).unwrap();
    let o = run(&["--format", "json", "verify-vector", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("INVALID-AS-DECLARED"), "{out}");
    assert!(out.contains('4'));

    let record = surface_actions::rh::cyclic_two_point_action(5).unwrap();
    std::fs::write(&path, serde_json::to_string(&record).unwrap()).unwrap();
    let o = run(&["verify-vector", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn documented_vector_file_is_valid() {
    let o = run(&[
        "--format",
        "json",
        "verify-vector",
        &fixture("c7_vector.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"VALID\""));
}

#[test]
fn catalog_settles_conditional_genus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s5.cat");
    std::fs::write(&path, SYM5_ONLY).unwrap();
    let p = path.to_str().unwrap();

    let o = run(&[
        "--catalog",
        p,
        "--format",
        "json",
        "genus-report",
        "4",
        "--no-supplementary",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["outcome"]["kind"], "impossible");
    let steps: Vec<&str> = v["result"]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["step"].as_str().unwrap())
        .collect();
    assert!(steps.contains(&"catalog_check"), "{steps:?}");

    let o = bin()
        .env("HF_CATALOG", p)
        .args(["genus-report", "4", "--no-supplementary"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let o = bin()
        .env("HF_CATALOG", p)
        .args(["find-action", "S5", "4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn order40_fixture_resolves() {
    let cat = fixture("order40.cat");
    let o = run(&[
        "--catalog",
        &cat,
        "--format",
        "json",
        "find-action",
        "G40_01",
        "4",
    ]);
    assert!(
        matches!(o.status.code(), Some(0) | Some(2)),
        "{}",
        stderr(&o)
    );
    parse_report(&stdout(&o)).unwrap();
    let o = run(&[
        "--catalog",
        &cat,
        "--catalog",
        &fixture("q8.cat"),
        "embed",
        "Q8",
        "G40_01",
    ]);
    assert!(
        matches!(o.status.code(), Some(0) | Some(2)),
        "{}",
        stderr(&o)
    );
}

#[test]
fn worker_count_does_not_change_output() {
    let one = run(&["--workers", "1", "--format", "json", "genus-report", "3"]);
    let many = run(&["--workers", "4", "--format", "json", "genus-report", "3"]);
    assert_eq!(stdout(&one), stdout(&many));
}
