//! Every bundled expectation re-solved from scratch, and the committed
//! `fixtures/` artifacts checked against the in-code definitions.

use std::collections::BTreeSet;
use std::path::PathBuf;

use compnet::lp::SolverLimits;
use compnet::model::ComputingNetwork;
use compnet::testkit::{evaluate_metric, fixtures, manifest};

#[test]
fn every_bundled_expectation_is_reproduced() {
    let limits = SolverLimits::default();
    let mut checked = 0usize;
    for f in fixtures() {
        for exp in &f.expected {
            let got = evaluate_metric(&f.network, &f.source, &f.dest, &exp.metric, &limits)
                .unwrap_or_else(|e| panic!("{} {:?}: {e}", f.name, exp.metric));
            assert!(
                (got - exp.value).abs() <= 1e-6,
                "{} {:?}: got {got}, expected {}",
                f.name,
                exp.metric,
                exp.value
            );
            checked += 1;
        }
    }
    assert!(checked >= 40, "expected a substantial suite, ran {checked}");
}

/// Repo-root `fixtures/` directory (two levels above this crate).
fn committed_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("fixtures")
}

#[test]
fn committed_topologies_match_the_code() {
    let dir = committed_dir();
    for f in fixtures() {
        let path = dir.join(format!("{}.json", f.name));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{} is not committed: {e}", path.display()));
        let net = ComputingNetwork::from_json(&text)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            net.to_json(),
            f.network.to_json(),
            "{} differs from the bundled definition; regenerate with \
             `compnet fixtures --export fixtures`",
            path.display()
        );
    }
}

#[test]
fn committed_manifest_matches_the_code() {
    let path = committed_dir().join("manifest.json");
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{} is not committed: {e}", path.display()));
    let on_disk: serde_json::Value = serde_json::from_str(&text).expect("manifest parses");
    let in_code = serde_json::to_value(manifest()).expect("manifest serializes");
    assert_eq!(
        on_disk,
        in_code,
        "committed manifest is stale; regenerate with `compnet fixtures --export fixtures`"
    );
}

#[test]
fn committed_directory_has_no_strays() {
    let dir = committed_dir();
    let expected: BTreeSet<String> = fixtures()
        .iter()
        .map(|f| format!("{}.json", f.name))
        .chain(["manifest.json".to_string()])
        .collect();
    let actual: BTreeSet<String> = std::fs::read_dir(&dir)
        .expect("fixtures directory exists")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(actual, expected);
}
