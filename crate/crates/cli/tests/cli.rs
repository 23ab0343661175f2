use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hmcoh_cli::report::{Body, Report, Status};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn hmcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmcoh")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

fn dims(r: &Report) -> Vec<usize> {
    match &r.body {
        Body::Dims { dims, .. } => dims.clone(),
        other => panic!("unexpected body {other:?}"),
    }
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hmcoh-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn chain_cohomology() {
    let path = data("corpus/chain-3.json");
    let out = hmcoh(&["cohomology", path.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(dims(&r), vec![1, 0, 0, 0]);
    assert_eq!(r.regime.field.as_deref(), Some("Q"));
    assert_eq!(r.regime.complex.as_deref(), Some("normalized"));
    assert_eq!(r.regime.max_degree, Some(3));
}

#[test]
fn concentrated_grading_fails_with_witness() {
    let cat = data("data/chain2.json");
    let grading = data("data/concentrated-c2.json");
    let out = hmcoh(&["galois", cat.to_str().unwrap(), "--grading", grading.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r.status, Status::CheckFailed);
    match r.body {
        Body::Galois { strongly_graded, witness: Some(w), .. } => {
            assert!(!strongly_graded);
            assert_eq!((w.object.as_str(), w.degree.as_str()), ("00", "g"));
            assert!(w.achieved < w.required);
        }
        other => panic!("unexpected body {other:?}"),
    }
}

#[test]
fn layered_oracle() {
    let path = data("corpus/u-layered-3-1.json");
    let out = hmcoh(&["oracle", path.to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dims(&report(&out)), vec![1, 4, 0]);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let cat = data("data/crown.json");
    let act = data("data/crown-dihedral.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["decompose", cat.to_str().unwrap(), "--action", act.to_str().unwrap(), "--max-degree", "1"],
        vec!["galois", cat.to_str().unwrap(), "--action", act.to_str().unwrap()],
        vec!["tower", "--family", "tree-tower(2,5)", "--max-degree", "2"],
    ];
    for args in runs {
        let a = hmcoh(&args);
        let b = hmcoh(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let r = report(&a);
        assert_eq!(r.to_json().as_bytes(), &a.stdout[..]);
        let again: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(hmcoh(&["cohomology", "no-such-file.json", "--max-degree", "1"]).status.code(), Some(2));
    let cat = data("data/crown.json");
    assert_eq!(hmcoh(&["cohomology", cat.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hmcoh(&["cohomology", cat.to_str().unwrap(), "--max-degree", "1", "--field", "F4"]).status.code(), Some(2));
    let out = hmcoh(&["cohomology", cat.to_str().unwrap(), "--max-degree", "3", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out).status, Status::BudgetExceeded);
    let rot = data("data/crown-rotation.json");
    let out = hmcoh(&["collapse", cat.to_str().unwrap(), "--action", rot.to_str().unwrap(), "--max-degree", "1", "--field", "F3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(matches!(report(&out).body, Body::Collapse { ref mode, .. } if mode == "e2-bound"));
}

#[test]
fn table_format_is_aligned_text() {
    let path = data("corpus/chain-3.json");
    let out = hmcoh(&["cohomology", path.to_str().unwrap(), "--max-degree", "1", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree  dim\n0       1\n1       0\n"), "{text}");
}

#[test]
fn smash_file_round_trips() {
    let dir = scratch("smash");
    let cat = data("data/crown.json");
    let act = data("data/crown-rotation.json");
    let smash = dir.join("smash.json");
    let out = hmcoh(&["smash", cat.to_str().unwrap(), "--action", act.to_str().unwrap(), "--out", smash.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let Body::Smash { total_dim, group_order, .. } = r.body else { panic!("unexpected body") };
    assert_eq!(group_order, 3);
    let back = hmcoh(&["validate", smash.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
    let h = hmcoh(&["cohomology", smash.to_str().unwrap(), "--max-degree", "1"]);
    assert_eq!(h.status.code(), Some(0));
    assert_eq!(dims(&report(&h)).len(), 2);
    assert_eq!(total_dim, 3 * 12);
}

#[test]
fn gen_reproduces_checked_in_corpus() {
    let dir = scratch("corpus");
    let out = hmcoh(&["gen", "--corpus", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let checked = data("corpus");
    let mut names: Vec<_> = fs::read_dir(&checked).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    let mut fresh: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    fresh.sort();
    assert_eq!(names, fresh);
    for n in names {
        assert_eq!(fs::read(checked.join(&n)).unwrap(), fs::read(dir.join(&n)).unwrap(), "{n:?}");
    }
}
