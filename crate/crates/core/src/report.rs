//! The analysis pipeline and its serializable report.
//!
//! Scalars appear as strings (`"3/2"`, or residues over `Fp`) so the JSON
//! form is exact and byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algcore::{blocks, validate, GradedAlgebra};
use crate::cartan::{cartan_degree_check, dual_projective_check, graded_cartan};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::gmod::{lengths, projective, socle, socular_set, InjectiveRoute, SocularData};
use crate::homs::EndB;
use crate::laurent::LaurentPoly;
use crate::symform::{
    decide_symmetric, extend_hat_tr, Decision, Obstruction, OracleConfig, OracleMethod, OracleOutcome, SymmetryVerdict,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub oracle: OracleConfig,
    /// Simple name to multiplicity, for the form on `End(Q)`.
    pub multiplicities: Option<BTreeMap<String, usize>>,
    pub skip_cartan: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub dim: usize,
    pub degree_dims: Vec<usize>,
    pub simples: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub involution: bool,
    pub involution_fixes_simples: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveSummary {
    pub simple: String,
    pub dim: usize,
    pub top_degree: i32,
    pub graded_dim: LaurentPoly,
    pub graded_length: usize,
    pub loewy_length: usize,
    /// `[name, degree]` of each simple summand of the socle.
    pub socle: Vec<(String, i32)>,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocularSummary {
    pub lambda0: Vec<String>,
    pub primed: BTreeMap<String, String>,
    pub is_involution: bool,
    pub top_degree_socle: BTreeMap<String, bool>,
    pub injective_route: InjectiveRoute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSummary {
    pub source: String,
    pub target: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndBSummary {
    pub dim: usize,
    pub graded_dim: LaurentPoly,
    pub basis: Vec<HomSummary>,
    /// Basis index of each `θ_λ`.
    pub thetas: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSummary {
    pub gram_rank: usize,
    pub dim: usize,
    pub nondegenerate: bool,
    pub symmetric: bool,
    pub homogeneity: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub seed: u64,
    pub trials: u32,
    pub functional_dim: usize,
    pub samples: u32,
    pub outcome: String,
    pub method: Option<OracleMethod>,
    pub witness: Option<Vec<String>>,
    pub error_bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleEntry {
    pub hom: HomSummary,
    pub partner: usize,
    pub scalar: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub admissible_basis: Vec<AdmissibleEntry>,
    pub theta_scales: BTreeMap<String, String>,
    /// The symmetrizing form on the admissible basis.
    pub form: Vec<String>,
    /// The same form on the basis listed under `endb`.
    pub form_on_endb_basis: Vec<String>,
    pub homogeneity: Option<i32>,
    pub gram_rank: usize,
    pub gram_symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub decision: Decision,
    pub primed_witness: Option<String>,
    pub obstruction: Option<Obstruction>,
    pub upgraded_by_oracle: bool,
    pub unmet: Vec<String>,
    pub certificate: Option<CertificateSummary>,
    pub oracle: OracleSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub simples: Vec<String>,
    pub lambda0: Vec<String>,
    pub endb_dim: usize,
    pub verdict: VerdictSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HatTrSummary {
    Computed {
        multiplicities: BTreeMap<String, usize>,
        dim: usize,
        gram_rank: usize,
        symmetric: bool,
        nondegenerate: bool,
        homogeneity: Option<i32>,
    },
    Refused {
        multiplicities: BTreeMap<String, usize>,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedEntry {
    pub row: String,
    pub col: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDegreeEntry {
    pub block: Vec<String>,
    pub lambda0: Vec<String>,
    pub top_degrees: Vec<i32>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanSummary {
    /// Rows and columns in the order of `algebra.simples`.
    pub matrix: Vec<Vec<LaurentPoly>>,
    pub symmetric: bool,
    pub applicable: bool,
    pub inapplicable_reason: Option<String>,
    pub twisted_identity: Vec<TwistedEntry>,
    pub block_degrees: Vec<BlockDegreeEntry>,
    pub violations: Vec<String>,
    /// `(P^λ)^⊛ ≅ P^λ⟨-d_λ⟩` for each qualifying `λ`.
    pub dual_projective: BTreeMap<String, bool>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub algebra: AlgebraSummary,
    pub projectives: Vec<ProjectiveSummary>,
    pub socular: SocularSummary,
    /// Set when the pipeline stopped early.
    pub stopped: Option<String>,
    pub endb: Option<EndBSummary>,
    pub frobenius: Option<FrobeniusSummary>,
    pub symmetry: Option<VerdictSummary>,
    pub block_verdicts: Vec<BlockVerdict>,
    pub hat_tr: Option<HatTrSummary>,
    pub cartan: Option<CartanSummary>,
}

const CARTAN_NOTE: &str =
    "Cartan symmetry is checked directly; cellular or highest-weight structure is not verified.";

fn fmt_vec(k: Field, v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| k.format(c)).collect()
}

fn hom_summary(a: &GradedAlgebra, s: usize, t: usize, d: i32) -> HomSummary {
    HomSummary { source: a.lambda_name(s).to_string(), target: a.lambda_name(t).to_string(), degree: d }
}

fn oracle_summary(k: Field, v: &SymmetryVerdict) -> OracleSummary {
    let o = &v.oracle;
    let (outcome, method, witness, error_bound) = match &o.outcome {
        OracleOutcome::Symmetric { witness, method } => ("symmetric", Some(*method), Some(fmt_vec(k, witness)), None),
        OracleOutcome::NotSymmetricExact => ("not-symmetric-exact", None, None, None),
        OracleOutcome::NotSymmetricProbable { error_bound } => {
            ("not-symmetric-probable", Some(OracleMethod::Sampling), None, Some(format!("{error_bound:.3e}")))
        }
        OracleOutcome::Inconclusive => ("inconclusive", None, None, None),
    };
    OracleSummary {
        seed: o.config.seed,
        trials: o.config.trials,
        functional_dim: o.functional_dim,
        samples: o.samples,
        outcome: outcome.to_string(),
        method,
        witness,
        error_bound,
    }
}

fn verdict_summary(a: &GradedAlgebra, v: &SymmetryVerdict) -> VerdictSummary {
    let k = a.field();
    let certificate = v.certificate.as_ref().map(|c| CertificateSummary {
        admissible_basis: c
            .basis
            .elements
            .iter()
            .enumerate()
            .map(|(i, h)| AdmissibleEntry {
                hom: hom_summary(a, h.source, h.target, h.degree),
                partner: c.basis.partner[i],
                scalar: k.format(&c.basis.scalar[i]),
            })
            .collect(),
        theta_scales: c.basis.theta_scales.iter().map(|(l, s)| (a.lambda_name(*l).to_string(), k.format(s))).collect(),
        form: fmt_vec(k, &c.form.values),
        form_on_endb_basis: fmt_vec(k, &c.form_on_input.values),
        homogeneity: c.form.homogeneity,
        gram_rank: c.gram.rank,
        gram_symmetric: c.gram.symmetric,
    });
    VerdictSummary {
        decision: v.decision,
        primed_witness: v
            .primed_witness
            .map(|(l, p)| format!("{}' = {}", a.lambda_name(l), a.lambda_name(p))),
        obstruction: v.obstruction.clone(),
        upgraded_by_oracle: v.upgraded_by_oracle,
        unmet: v.unmet.clone(),
        certificate,
        oracle: oracle_summary(k, v),
    }
}

fn names(a: &GradedAlgebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&l| a.lambda_name(l).to_string()).collect()
}

/// Runs validation, classification, `B`, the forms, the symmetry decision,
/// the optional `End(Q)` form and the Cartan checks, in that order.
pub fn analyze(a: GradedAlgebra, input: &str, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let v = validate(&a);
    if !v.ok() {
        let msgs: Vec<String> = v
            .failures()
            .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
            .collect();
        return Err(Error::Validation(msgs.join("; ")));
    }
    let a = Arc::new(a);
    let k = a.field();
    let block_list = blocks(&a);
    let mut warnings = Vec::new();
    if a.has_involution() && !v.star_fixes_simples() {
        warnings.push("the involution permutes the simples; duality-based checks are disabled".into());
    }
    let algebra = AlgebraSummary {
        field: k.to_string(),
        dim: a.dim(),
        degree_dims: a.degree_dims(),
        simples: a.lambda_names().to_vec(),
        blocks: block_list.iter().map(|b| names(&a, b)).collect(),
        involution: a.has_involution(),
        involution_fixes_simples: v.star_fixes_simples(),
        warnings,
    };

    let soc = socular_set(&a)?;
    let mut projectives = Vec::new();
    for l in 0..a.lambda_count() {
        let p = projective(&a, l)?;
        let (graded_length, loewy_length) = lengths(&p)?;
        projectives.push(ProjectiveSummary {
            simple: a.lambda_name(l).to_string(),
            dim: p.dim(),
            top_degree: soc.top_degrees[l],
            graded_dim: p.graded_dim(),
            graded_length,
            loewy_length,
            socle: socle(&p).types.iter().map(|&(n, d)| (a.lambda_name(n).to_string(), d)).collect(),
            injective: soc.contains(l),
        });
    }
    let socular = SocularSummary {
        lambda0: names(&a, &soc.lambda0),
        primed: soc.primed.iter().map(|(l, p)| (a.lambda_name(*l).to_string(), a.lambda_name(*p).to_string())).collect(),
        is_involution: soc.is_involution,
        top_degree_socle: soc
            .top_degree_socle
            .iter()
            .map(|(l, b)| (a.lambda_name(*l).to_string(), *b))
            .collect(),
        injective_route: soc.route,
    };
    let mut report = AnalysisReport {
        input: input.to_string(),
        algebra,
        projectives,
        socular,
        stopped: None,
        endb: None,
        frobenius: None,
        symmetry: None,
        block_verdicts: Vec::new(),
        hat_tr: None,
        cartan: None,
    };
    if soc.lambda0.is_empty() {
        report.stopped = Some("no projective-injective module".into());
        return Ok(report);
    }

    let b = EndB::build(&a, &soc, None)?;
    report.endb = Some(EndBSummary {
        dim: b.dim(),
        graded_dim: LaurentPoly::from_terms(b.degrees().into_iter().map(|d| (d, 1))),
        basis: b.basis().iter().map(|h| hom_summary(&a, h.source, h.target, h.degree)).collect(),
        thetas: b
            .members()
            .iter()
            .filter_map(|&l| b.theta_index(l).map(|i| (a.lambda_name(l).to_string(), i)))
            .collect(),
    });
    if let Ok(tr) = b.canonical_tr() {
        let g = b.gram(&tr);
        report.frobenius = Some(FrobeniusSummary {
            gram_rank: g.rank,
            dim: b.dim(),
            nondegenerate: g.nondegenerate,
            symmetric: g.symmetric,
            homogeneity: tr.homogeneity,
        });
    }
    let verdict = decide_symmetric(&b, &soc, options.oracle)?;
    report.symmetry = Some(verdict_summary(&a, &verdict));

    let with_members: Vec<&Vec<usize>> =
        block_list.iter().filter(|bl| bl.iter().any(|l| soc.contains(*l))).collect();
    if with_members.len() > 1 {
        for bl in with_members {
            let members: Vec<usize> = bl.iter().copied().filter(|l| soc.contains(*l)).collect();
            let bb = EndB::build(&a, &soc, Some(&members))?;
            let bv = decide_symmetric(&bb, &soc, options.oracle)?;
            report.block_verdicts.push(BlockVerdict {
                simples: names(&a, bl),
                lambda0: names(&a, &members),
                endb_dim: bb.dim(),
                verdict: verdict_summary(&a, &bv),
            });
        }
    }

    if let Some(mult) = &options.multiplicities {
        report.hat_tr = Some(hat_tr_summary(&a, &verdict, mult)?);
    }

    if !options.skip_cartan {
        report.cartan = Some(cartan_summary(&a, &soc)?);
    }
    Ok(report)
}

fn hat_tr_summary(a: &GradedAlgebra, verdict: &SymmetryVerdict, mult: &BTreeMap<String, usize>) -> Result<HatTrSummary> {
    let refuse = |reason: String| Ok(HatTrSummary::Refused { multiplicities: mult.clone(), reason });
    let Some(cert) = &verdict.certificate else {
        return refuse(format!("B is not certified symmetric ({})", verdict.decision));
    };
    let mut by_index = BTreeMap::new();
    for (name, &m) in mult {
        let Some(l) = a.lambda_index(name) else {
            return Err(Error::UnknownLabel(name.clone()));
        };
        by_index.insert(l, m);
    }
    match extend_hat_tr(&cert.endb, &cert.form, &by_index) {
        Ok(h) => Ok(HatTrSummary::Computed {
            multiplicities: mult.clone(),
            dim: h.table.dim,
            gram_rank: h.gram.rank,
            symmetric: h.gram.symmetric,
            nondegenerate: h.gram.nondegenerate,
            homogeneity: h.form.homogeneity,
        }),
        Err(Error::Precondition(reason)) => refuse(reason),
        Err(e) => Err(e),
    }
}

fn cartan_summary(a: &Arc<GradedAlgebra>, soc: &SocularData) -> Result<CartanSummary> {
    let c = graded_cartan(a)?;
    let r = cartan_degree_check(a, soc, &c);
    let dual = dual_projective_check(a, soc)?;
    Ok(CartanSummary {
        matrix: c.entries.clone(),
        symmetric: r.symmetric,
        applicable: r.applicable,
        inapplicable_reason: r.reason.clone(),
        twisted_identity: r
            .twisted
            .iter()
            .map(|&(l, m, holds)| TwistedEntry {
                row: a.lambda_name(l).to_string(),
                col: a.lambda_name(m).to_string(),
                holds,
            })
            .collect(),
        block_degrees: r
            .blocks
            .iter()
            .map(|b| BlockDegreeEntry {
                block: names(a, &b.block),
                lambda0: names(a, &b.members),
                top_degrees: b.degrees.clone(),
                equal: b.equal,
            })
            .collect(),
        violations: r.violations.clone(),
        dual_projective: dual.iter().map(|d| (a.lambda_name(d.lambda).to_string(), d.holds)).collect(),
        note: CARTAN_NOTE.to_string(),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_verdict(out: &mut String, indent: &str, v: &VerdictSummary) {
    let _ = writeln!(out, "{indent}verdict: {}", v.decision);
    if let Some(w) = &v.primed_witness {
        let _ = writeln!(out, "{indent}  witness: {w}");
    }
    for u in &v.unmet {
        let _ = writeln!(out, "{indent}  unmet: {u}");
    }
    if let Some(o) = &v.obstruction {
        let _ = writeln!(out, "{indent}  obstruction: {o}");
    }
    if v.upgraded_by_oracle {
        let _ = writeln!(out, "{indent}  certified by the oracle's exact branch");
    }
    if let Some(c) = &v.certificate {
        let h = c.homogeneity.map_or("inhomogeneous".to_string(), |d| format!("homogeneous of degree {d}"));
        let _ = writeln!(out, "{indent}  admissible basis of size {}; form {h}", c.admissible_basis.len());
        let _ = writeln!(out, "{indent}  form: [{}]", c.form.join(", "));
        let _ = writeln!(out, "{indent}  gram rank {}, symmetric {}", c.gram_rank, yes(c.gram_symmetric));
    }
    let o = &v.oracle;
    let _ = write!(
        out,
        "{indent}  oracle (seed {:#x}, {} trials): {}, dim S = {}",
        o.seed, o.trials, o.outcome, o.functional_dim
    );
    if let Some(e) = &o.error_bound {
        let _ = write!(out, ", error bound {e}");
    }
    let _ = writeln!(out);
}

/// Human-readable rendering of a report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let al = &r.algebra;
    let _ = writeln!(out, "input: {}", r.input);
    let _ = writeln!(out, "field: {}", al.field);
    let _ = writeln!(
        out,
        "algebra: dim {}, degree dims {:?}, simples [{}]",
        al.dim,
        al.degree_dims,
        al.simples.join(", ")
    );
    let blocks: Vec<String> = al.blocks.iter().map(|b| format!("{{{}}}", b.join(", "))).collect();
    let _ = writeln!(out, "blocks: {}", blocks.join(" "));
    let _ = writeln!(out, "involution: {}", if al.involution { "present" } else { "absent" });
    for w in &al.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "projectives:");
    for p in &r.projectives {
        let soc: Vec<String> = p.socle.iter().map(|(n, d)| format!("L^{n}<{d}>")).collect();
        let _ = writeln!(
            out,
            "  P^{}: dim {}, d = {}, graded dim {}, lengths ({}, {}), socle {}{}",
            p.simple,
            p.dim,
            p.top_degree,
            p.graded_dim,
            p.graded_length,
            p.loewy_length,
            soc.join(" + "),
            if p.injective { ", injective" } else { "" }
        );
    }
    let s = &r.socular;
    let primed: Vec<String> = s.primed.iter().map(|(l, p)| format!("{l}' = {p}")).collect();
    let _ = writeln!(
        out,
        "projective-injective: [{}]; {}; primed map {}an involution",
        s.lambda0.join(", "),
        primed.join(", "),
        if s.is_involution { "is " } else { "is not " }
    );
    if let Some(stop) = &r.stopped {
        let _ = writeln!(out, "stopped: {stop}");
        return out;
    }
    if let Some(b) = &r.endb {
        let _ = writeln!(out, "B: dim {}, graded dim {}", b.dim, b.graded_dim);
    }
    match &r.frobenius {
        Some(f) => {
            let _ = writeln!(
                out,
                "canonical form: gram rank {}/{}, Frobenius {}, gram symmetric {}",
                f.gram_rank,
                f.dim,
                yes(f.nondegenerate),
                yes(f.symmetric)
            );
        }
        None => {
            let _ = writeln!(out, "canonical form: not defined (primed map is not an involution)");
        }
    }
    if let Some(v) = &r.symmetry {
        render_verdict(&mut out, "", v);
    }
    for bv in &r.block_verdicts {
        let _ = writeln!(out, "block {{{}}}: B of dim {}", bv.simples.join(", "), bv.endb_dim);
        render_verdict(&mut out, "  ", &bv.verdict);
    }
    match &r.hat_tr {
        Some(HatTrSummary::Computed { multiplicities, dim, gram_rank, symmetric, homogeneity, .. }) => {
            let m: Vec<String> = multiplicities.iter().map(|(l, k)| format!("{l}={k}")).collect();
            let h = homogeneity.map_or("inhomogeneous".to_string(), |d| format!("degree {d}"));
            let _ = writeln!(
                out,
                "End(Q) for {}: dim {}, gram rank {}, symmetric {}, {}",
                m.join(","),
                dim,
                gram_rank,
                yes(*symmetric),
                h
            );
        }
        Some(HatTrSummary::Refused { reason, .. }) => {
            let _ = writeln!(out, "End(Q): refused, {reason}");
        }
        None => {}
    }
    if let Some(c) = &r.cartan {
        let _ = writeln!(out, "cartan matrix:");
        for row in &c.matrix {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  [{}]", cells.join(", "));
        }
        let _ = writeln!(out, "cartan symmetric: {}", yes(c.symmetric));
        if c.applicable {
            for b in &c.block_degrees {
                if !b.lambda0.is_empty() {
                    let _ = writeln!(
                        out,
                        "  block {{{}}}: top degrees {:?}, equal {}",
                        b.block.join(", "),
                        b.top_degrees,
                        yes(b.equal)
                    );
                }
            }
            for (l, ok) in &c.dual_projective {
                let _ = writeln!(out, "  dual of P^{l} is P^{l} shifted down by d: {}", yes(*ok));
            }
        } else if let Some(reason) = &c.inapplicable_reason {
            let _ = writeln!(out, "degree checks inapplicable: {reason}");
        }
        for v in &c.violations {
            let _ = writeln!(out, "  violation: {v}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_input;

    const NAKAYAMA: &str = "\
vertex v0 v1
arrow a v0 v1 1
arrow b v1 v0 1
relation a.b = 0
relation b.a = 0
maxdeg 3
involution arrow a -> b
involution arrow b -> a
";

    #[test]
    fn nakayama_report() {
        let a = parse_input(None, NAKAYAMA, None).unwrap();
        let r = analyze(a, "nakayama", &AnalysisOptions::default()).unwrap();
        let f = r.frobenius.as_ref().unwrap();
        assert!(f.nondegenerate && !f.symmetric);
        let v = r.symmetry.as_ref().unwrap();
        assert_eq!(v.decision, Decision::NotSymmetricCertified);
        assert_eq!(v.primed_witness.as_deref(), Some("v0' = v1"));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<AnalysisReport>(&json).unwrap(), r);
        assert!(render_text(&r).contains("not-symmetric-certified"));
    }

    #[test]
    fn invalid_algebra_is_an_error() {
        let text = "field Q\nbasis e1 0\nbasis e2 0\nidempotents e1\nmult e1 e1 = e2\n";
        let a = parse_input(None, text, None).unwrap();
        assert!(matches!(analyze(a, "bad", &AnalysisOptions::default()), Err(Error::Validation(_))));
    }
}
