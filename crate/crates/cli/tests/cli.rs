use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn projinj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projinj")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn json_is_deterministic() {
    let p = fixture("zigzag_a3.quiver");
    let p = p.to_str().unwrap();
    let a = projinj(&["analyze", p, "--report", "json"]);
    let b = projinj(&["analyze", p, "--report", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["symmetry"]["decision"], "symmetric-certified");
    assert_eq!(v["symmetry"]["certificate"]["homogeneity"], -2);
}

#[test]
fn negative_verdicts_exit_zero() {
    for name in ["nakayama_c2.quiver", "exterior2.alg", "a2_line.quiver"] {
        let o = projinj(&["analyze", fixture(name).to_str().unwrap()]);
        assert!(o.status.success(), "{name}");
    }
}

#[test]
fn parse_and_validation_errors_exit_nonzero() {
    let dir = std::env::temp_dir().join(format!("projinj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad_parse = dir.join("bad.alg");
    std::fs::write(&bad_parse, "field Q\nbasis e zero\n").unwrap();
    let bad_assoc = dir.join("unit.alg");
    std::fs::write(&bad_assoc, "field Q\nbasis e1 0\nbasis e2 0\nidempotents e1\nmult e1 e1 = e2\n").unwrap();
    for p in [&bad_parse, &bad_assoc] {
        let o = projinj(&["analyze", p.to_str().unwrap()]);
        assert!(!o.status.success());
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    assert!(!projinj(&["validate", bad_assoc.to_str().unwrap()]).status.success());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn field_override_and_seed() {
    let p = fixture("zigzag_a2.quiver");
    let o = projinj(&["analyze", p.to_str().unwrap(), "--field", "Fp:5", "--oracle-seed", "0x10", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"]["field"], "Fp 5");
    assert_eq!(v["symmetry"]["oracle"]["seed"], 16);
}

#[test]
fn multiplicities_and_skip_cartan() {
    let p = fixture("kx2.alg");
    let o = projinj(&["analyze", p.to_str().unwrap(), "--multiplicities", "o=2", "--skip-cartan"]);
    let s = stdout(&o);
    assert!(s.contains("End(Q) for o=2: dim 8, gram rank 8"));
    assert!(!s.contains("cartan matrix"));
}

#[test]
fn compile_round_trips() {
    let o = projinj(&["compile", fixture("sl2_principal.quiver").to_str().unwrap()]);
    assert!(o.status.success());
    let a = projinj::format::parse_input(None, &stdout(&o), None).unwrap();
    assert_eq!(a.dim(), 5);
}
