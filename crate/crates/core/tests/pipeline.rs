use std::path::{Path, PathBuf};

use artin_core::pipeline::{verify_theta_table, Example, DEFAULT_HEIGHT};
use artin_core::verify::{verify_paper, Bounds, RunConfig};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn quick_config() -> RunConfig {
    let mut c = RunConfig::new(root().join("data/registry.json"), root().join("data/tables"));
    c.bounds = Bounds { moments: 20_000, chebotarev: 5_000, divisibility: 500, theta: 500, ..Bounds::default() };
    c
}

#[test]
fn theta_table_has_six_passing_items() {
    let ex = Example::builtin(DEFAULT_HEIGHT).unwrap();
    let t = verify_theta_table(&ex, 500, true).unwrap();
    let got: Vec<(&str, &str)> = t.items.iter().map(|i| (i.name.as_str(), i.survivors[0].as_str())).collect();
    assert_eq!(
        got,
        [
            ("theta21", "3*chi5"),
            ("theta13", "3*chi5'"),
            ("theta10", "6*chi_t + 3*chi_q"),
            ("theta02", "chi4 + 2*chi5"),
            ("theta03", "chi4' + 2*chi5'"),
            ("theta32", "psi13"),
        ]
    );
    assert!(t.all_pass(), "{t:#?}");
    for item in &t.items {
        for p in &item.profiles {
            assert!(p.self_dual && p.rational, "{}", item.name);
        }
    }
}

#[test]
fn verify_paper_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = quick_config();
    c.out_dir = Some(dir.path().to_path_buf());
    let first = verify_paper(&c).unwrap();
    // The C1 count follows E63, not E21; everything else must pass.
    for r in &first.records {
        assert_eq!(r.pass, r.id != 1, "{}", first.table());
    }
    assert!(first.records[1].detail.contains("1 + p - 3 a63"));
    assert_eq!(first.records.len(), 13);
    assert_eq!(first.records[0].id, 2);
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap();
    let (summary, moments, theta) = (read("summary.csv"), read("moments.csv"), read("theta_table.json"));
    c.threads = Some(1);
    let second = verify_paper(&c).unwrap();
    assert_eq!(second.exit_code(), 1);
    assert_eq!(read("summary.csv"), summary);
    assert_eq!(read("moments.csv"), moments);
    assert_eq!(read("theta_table.json"), theta);
    assert!(dir.path().join("checks/09-theta-table.json").is_file());
}

#[test]
fn corrupted_coefficient_fails_the_twist_check_first() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(root().join("data/registry.json")).unwrap();
    let bad = text.replace("[1, -1, 0, -36, 27]", "[1, -1, 0, -36, 28]");
    assert_ne!(bad, text);
    let path = dir.path().join("registry.json");
    std::fs::write(&path, bad).unwrap();
    let mut c = quick_config();
    c.registry = path;
    let s = verify_paper(&c).unwrap();
    assert_eq!(s.exit_code(), 1);
    let first = &s.records[0];
    assert_eq!((first.id, first.pass), (2, false));
    assert!(first.reproducer.as_deref().unwrap().starts_with("artin verify-paper "));
}

#[test]
fn missing_table_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["S4", "C2"] {
        std::fs::copy(root().join(format!("data/tables/{id}.json")), dir.path().join(format!("{id}.json"))).unwrap();
    }
    let mut c = quick_config();
    c.tables = dir.path().to_path_buf();
    let err = verify_paper(&c).unwrap_err();
    assert!(err.to_string().contains("T288"), "{err}");
}
