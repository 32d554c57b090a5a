use std::path::PathBuf;

use conheap_core::frontend::{emit_model, load_model, parse_model, run_command, Command, FrontendError, Options};

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn bundled() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(models_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "model"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 6);
    paths
}

#[test]
fn bundled_models_round_trip() {
    for path in bundled() {
        let (m, _) = load_model(&path).unwrap();
        let text = emit_model(&m);
        assert_eq!(parse_model(&text).unwrap(), m, "{}", path.display());
    }
}

#[test]
fn bundled_models_verify() {
    let opts = Options { samples: 6, ..Options::default() };
    for path in bundled() {
        let report = run_command(Command::Verify, Some(&path), &opts).unwrap();
        assert!(report.passed(), "{}:\n{}", path.display(), report.render(Default::default()));
    }
}

#[test]
fn parity_violation_is_an_input_error() {
    let path = models_dir().join("invalid/parity.model");
    match run_command(Command::Verify, Some(&path), &Options::default()) {
        Err(FrontendError::Model { err, .. }) => {
            assert_eq!((err.line, err.col), (13, 22));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn torsion_of_the_symmetric_connection_vanishes() {
    let opts = Options { connections: vec!["sym".into()], ..Options::default() };
    let r = run_command(Command::Torsion, Some(&models_dir().join("plane.model")), &opts).unwrap();
    assert_eq!(r.values[0], ("torsion.sym".to_owned(), "{}".to_owned()));
}

#[test]
fn heap_command_is_componentwise() {
    let opts = Options::default();
    let r = run_command(Command::Heap, Some(&models_dir().join("flat_witness.model")), &opts).unwrap();
    assert_eq!(r.values[0].1, "{e1,e2->e1: 1; e2,e1->e2: 1}");
    assert!(r.passed());
}

#[test]
fn torsion_needs_a_bracket() {
    let dir = std::env::temp_dir().join(format!("conheap-models-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("anchored.model");
    std::fs::write(&path, "ring { even: x }\nbundle { even: e1\n e1 -> d/dx }\nconnection c {}\n").unwrap();
    let r = run_command(Command::Torsion, Some(&path), &Options::default());
    assert!(matches!(r, Err(FrontendError::Core(_))), "{r:?}");
    std::fs::remove_dir_all(&dir).unwrap();
}
