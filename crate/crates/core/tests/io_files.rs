use std::fs;
use std::path::PathBuf;

use aal_core::institutions::{institution_report, Corpus, InstitutionKind, ReportBounds};
use aal_core::io::{load_algebra, load_context, load_logic};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aal-io-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn files_on_disk_shadow_bundled_ones() {
    let dir = scratch("shadow");
    fs::write(
        dir.join("B2.json"),
        r#"{"signature": {"connectives": [{"name": "neg", "arity": 1}]}, "size": 2, "tables": {"neg": [0, 1]}}"#,
    )
    .unwrap();
    fs::write(
        dir.join("logic.json"),
        r#"{"kind": "matrices", "signature": {"connectives": [{"name": "neg", "arity": 1}]},
            "matrices": [{"algebra": "B2.json", "filter": [1]}, {"algebra": "H3.json", "filter": [2]}]}"#,
    )
    .unwrap();
    let local = load_algebra(dir.join("B2.json").to_str().unwrap()).unwrap();
    assert_eq!(local.table("neg").unwrap(), &[0, 1]);
    let bundled = load_algebra("B2.json").unwrap();
    assert_eq!(bundled.table("neg").unwrap(), &[1, 0]);
    let l = load_logic(dir.join("logic.json").to_str().unwrap()).unwrap();
    assert_eq!(l.signature().len(), 1);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corpus_files_with_includes_and_faults() {
    let dir = scratch("corpus");
    fs::write(
        dir.join("faulty.json"),
        r#"{"include": "identity_corpus.json",
            "faults": [{"morphism": "id_cpc", "connective": "and", "args": [1, 1], "value": 0}]}"#,
    )
    .unwrap();
    let c = Corpus::load(dir.join("faulty.json").to_str().unwrap()).unwrap();
    assert_eq!(c.faults.len(), 1);
    let r = institution_report(InstitutionKind::If, &c, &ReportBounds::default(), 400, 5).unwrap();
    assert!(!r.passed());
    let again = institution_report(InstitutionKind::If, &c, &ReportBounds::default(), 400, 5).unwrap();
    assert_eq!(r.to_string(), again.to_string());
    assert_eq!(r.to_json(), again.to_json());
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bundled_context_loads_by_name() {
    let ctx = load_context("classical_context.json").unwrap();
    assert_eq!(ctx.theta().to_string(), "neg(neg(x0))");
    assert!(load_context("missing.json").is_err());
}
