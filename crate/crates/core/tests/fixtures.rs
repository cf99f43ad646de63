use std::path::PathBuf;

use projinj::format::load;
use projinj::report::{analyze, AnalysisOptions, AnalysisReport};
use projinj::symform::Decision;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(name: &str) -> AnalysisReport {
    let a = load(&fixture(name), None).unwrap();
    analyze(a, name, &AnalysisOptions::default()).unwrap()
}

fn decision(r: &AnalysisReport) -> Decision {
    r.symmetry.as_ref().unwrap().decision
}

#[test]
fn certified_fixtures() {
    for name in [
        "kx2.alg",
        "kx3.quiver",
        "semisimple_2.alg",
        "sl2_principal.quiver",
        "zigzag_a2.quiver",
        "zigzag_a3.quiver",
        "zigzag_a3_f7.quiver",
        "zigzag_a3_signed.quiver",
        "zigzag_a4.quiver",
    ] {
        let r = run(name);
        let v = r.symmetry.as_ref().unwrap();
        assert_eq!(v.decision, Decision::SymmetricCertified, "{name}");
        assert_eq!(v.oracle.outcome, "symmetric", "{name}");
        let c = v.certificate.as_ref().unwrap();
        assert_eq!(c.gram_rank, c.admissible_basis.len(), "{name}");
        assert!(c.gram_symmetric, "{name}");
    }
}

#[test]
fn upgraded_by_exact_oracle() {
    for name in ["exterior2.alg", "qplane_2.alg"] {
        let r = run(name);
        let v = r.symmetry.as_ref().unwrap();
        assert_eq!(v.decision, Decision::NotSymmetricCertified, "{name}");
        assert!(v.upgraded_by_oracle, "{name}");
        assert!(v.obstruction.is_some(), "{name}");
    }
}

#[test]
fn nakayama_primed_witness() {
    let r = run("nakayama_c2.quiver");
    let v = r.symmetry.as_ref().unwrap();
    assert_eq!(v.decision, Decision::NotSymmetricCertified);
    assert_eq!(v.primed_witness.as_deref(), Some("v0' = v1"));
    assert!(!v.upgraded_by_oracle);
}

#[test]
fn assumptions_unmet() {
    assert_eq!(decision(&run("a2_line.quiver")), Decision::AssumptionsUnmet);
    let r = run("nakayama_c3.quiver");
    assert_eq!(decision(&r), Decision::AssumptionsUnmet);
    assert!(!r.socular.is_involution);
}

#[test]
fn direct_sum_splits_by_block() {
    let r = run("zigzag_a2_plus_nakayama_c2.quiver");
    assert_eq!(decision(&r), Decision::NotSymmetricCertified);
    let per: Vec<(Vec<String>, Decision)> =
        r.block_verdicts.iter().map(|b| (b.simples.clone(), b.verdict.decision)).collect();
    assert_eq!(per, vec![
        (vec!["1".to_string(), "2".to_string()], Decision::SymmetricCertified),
        (vec!["v0".to_string(), "v1".to_string()], Decision::NotSymmetricCertified),
    ]);
}

#[test]
fn json_round_trip_and_determinism() {
    for name in ["zigzag_a3.quiver", "exterior2.alg", "a2_line.quiver"] {
        let a = serde_json::to_string_pretty(&run(name)).unwrap();
        let b = serde_json::to_string_pretty(&run(name)).unwrap();
        assert_eq!(a, b);
        let back: AnalysisReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back, run(name));
    }
}
