use std::fs;
use std::path::PathBuf;

use elcontrol::corpus::{embedded_corpus, export, load_dir, load_embedded_corpus, load_file, EXTENSION};
use elcontrol::relations::{witness_profile_report, LabeledInstance};
use elcontrol::{Error, VotingRule};

#[test]
fn export_then_load_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let written = export(dir.path()).unwrap();
    assert_eq!(written.len(), 128);
    assert!(dir.path().join("veto").join(format!("Veto.16.{EXTENSION}")).is_file());
    let mut loaded = load_dir(dir.path()).unwrap();
    let mut embedded = load_embedded_corpus();
    for list in [&mut loaded, &mut embedded] {
        list.sort_by(|a, b| a.id.cmp(&b.id));
    }
    assert_eq!(loaded.len(), embedded.len());
    for (l, e) in loaded.iter().zip(&embedded) {
        assert_eq!((&l.id, &l.file), (&e.id, &e.file));
    }
}

#[test]
fn load_dir_orders_ids_naturally() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path()).unwrap();
    let ids: Vec<String> = load_dir(&dir.path().join("plurality"))
        .unwrap()
        .into_iter()
        .map(|r| r.id)
        .collect();
    let want: Vec<String> = (1..=50).map(|i| format!("Plur.{i}")).collect();
    assert_eq!(ids, want);
}

#[test]
fn bad_files_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.election");
    fs::write(&path, "system: plurality\ncandidates: a b\nvotes:\na>b\na>a\n").unwrap();
    match load_file(&path) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
        other => panic!("expected a parse error, got {other:?}"),
    }
    fs::write(&path, "system: approval\ncandidates: a b b\nvotes:\n").unwrap();
    assert!(matches!(load_file(&path), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(
        load_file(&dir.path().join("missing.election")),
        Err(Error::Io { .. })
    ));
}

fn report_path(rule: VotingRule) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("reports")
        .join(format!("{}-witness-profiles.txt", rule.name()))
}

/// The stored reports match a fresh classification. Set
/// `ELCONTROL_UPDATE_REPORTS=1` to rewrite them.
#[test]
fn stored_witness_profiles_are_current() {
    for rule in VotingRule::ALL {
        let corpus: Vec<LabeledInstance> = embedded_corpus(rule)
            .into_iter()
            .map(|r| LabeledInstance {
                instance: r.reduced().unwrap(),
                id: r.id,
            })
            .collect();
        let fresh = witness_profile_report(rule, &corpus).unwrap();
        let path = report_path(rule);
        if std::env::var_os("ELCONTROL_UPDATE_REPORTS").is_some() {
            fs::write(&path, &fresh).unwrap();
        }
        let stored = fs::read_to_string(&path).unwrap();
        assert!(stored == fresh, "{} is stale", path.display());
    }
}
