//! Deciding whether `B` is symmetric: necessary conditions, admissible bases,
//! the attached canonical form, partners, extension to `End(Q)`, and an
//! independent oracle over the space of commutator-killing functionals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{congruent_diagonalize, Matrix};
use crate::field::Scalar;
use crate::gmod::SocularData;
use crate::homs::{compose, EndB, Gram, HomElement, MultTable, TraceForm};

type Slot = (usize, usize, i32);

/// Outcome of the checks that every symmetrizing form forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryConditions {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

/// `λ' = λ` on all members and, for a given form `t`, `t(θ_λ) ≠ 0` and `t`
/// vanishing on `Hom(P^λ, P^μ)` for `λ ≠ μ`.
pub fn necessary_conditions(b: &EndB, t: Option<&TraceForm>) -> NecessaryConditions {
    let a = b.algebra();
    let k = b.field();
    let mut witnesses = Vec::new();
    for &l in b.members() {
        let p = b.primed(l);
        if p != l {
            witnesses.push(format!("{}' = {} != {}", a.lambda_name(l), a.lambda_name(p), a.lambda_name(l)));
        }
    }
    if let Some(t) = t {
        for &l in b.members() {
            if let Some(i) = b.theta_index(l) {
                if k.is_zero(&t.values[i]) {
                    witnesses.push(format!("form vanishes on theta_{}", a.lambda_name(l)));
                }
            }
        }
        for (i, h) in b.basis().iter().enumerate() {
            if h.source != h.target && !k.is_zero(&t.values[i]) {
                witnesses.push(format!(
                    "form is nonzero on a map P^{} -> P^{}",
                    a.lambda_name(h.source),
                    a.lambda_name(h.target)
                ));
            }
        }
    }
    NecessaryConditions { passed: witnesses.is_empty(), witnesses }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    PrimedNotIdentity,
    TopDegreeSocle,
    DegreeMismatch,
    CardinalityMismatch,
    EscapesTheta,
    SingularPairing,
    LeftScalarsNotDiagonal,
    ScalarNotConstant,
    SelfLoopScalar,
    Cocycle,
    SelfPairingNotSymmetric,
    VerificationFailed,
}

/// Why no admissible basis was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub slot: Option<String>,
    pub detail: String,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = serde_json::to_value(self.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        match &self.slot {
            Some(s) => write!(f, "{kind} at {s}: {}", self.detail),
            None => write!(f, "{kind}: {}", self.detail),
        }
    }
}

fn slot_name(b: &EndB, s: Slot) -> String {
    let a = b.algebra();
    format!("Hom(P^{}, P^{})_{}", a.lambda_name(s.0), a.lambda_name(s.1), s.2)
}

fn obstruction(b: &EndB, kind: ObstructionKind, slot: Option<Slot>, detail: impl Into<String>) -> Obstruction {
    Obstruction { kind, slot: slot.map(|s| slot_name(b, s)), detail: detail.into() }
}

/// An appropriate basis of `B` with partners and scalars such that
/// `partner(f) ∘ f = c_f θ̃_source` and `f ∘ partner(f) = c_f θ̃_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleBasis {
    pub elements: Vec<HomElement>,
    pub partner: Vec<usize>,
    /// `c_f`; clause (iii) needs `c_f = c_{partner(f)}`.
    pub scalar: Vec<Scalar>,
    /// Index of `θ̃_λ` in `elements`.
    pub thetas: BTreeMap<usize, usize>,
    /// `θ̃_λ = s_λ θ_λ` relative to the θ of the input `B`.
    pub theta_scales: BTreeMap<usize, Scalar>,
}

/// `c` with `h = c θ`, `Some(0)` for `h = 0`, `None` if `h ∉ K θ`.
fn theta_multiple(h: &HomElement, theta: &HomElement) -> Option<Scalar> {
    let k = h.matrix.field();
    if h.is_zero() {
        return Some(k.zero());
    }
    if h.slot() != theta.slot() {
        return None;
    }
    let (r, c) = theta.matrix.first_nonzero()?;
    let s = k.div(h.matrix.get(r, c), theta.matrix.get(r, c))?;
    (theta.scale(&s) == *h).then_some(s)
}

fn combine(k: crate::field::Field, elems: &[HomElement], coeffs: impl Iterator<Item = Scalar>) -> Result<HomElement> {
    let mut acc = elems[0].scale(&k.zero());
    for (c, e) in coeffs.zip(elems) {
        acc = acc.add_scaled(&c, e)?;
    }
    Ok(acc)
}

struct Pair {
    f_slot: Slot,
    g_slot: Slot,
    f: Vec<HomElement>,
    g: Vec<HomElement>,
}

/// Pairing matrix `Φ` with `f_i ∘ g_j = Φ_ij θ`.
fn pairing(b: &EndB, slot: Slot, f: &[HomElement], g: &[HomElement], theta: &HomElement) -> std::result::Result<Matrix, Obstruction> {
    let k = b.field();
    let mut phi = Matrix::zeros(k, f.len(), g.len());
    for (i, fi) in f.iter().enumerate() {
        for (j, gj) in g.iter().enumerate() {
            let h = compose(fi, gj).map_err(|e| obstruction(b, ObstructionKind::EscapesTheta, Some(slot), e.to_string()))?;
            let c = theta_multiple(&h, theta).ok_or_else(|| {
                obstruction(b, ObstructionKind::EscapesTheta, Some(slot), format!("composite ({i},{j}) is not a multiple of theta"))
            })?;
            phi.set(i, j, c);
        }
    }
    Ok(phi)
}

/// Right-dual basis `g'` with `f_i ∘ g'_j = δ_ij θ_target`, and the matrix of
/// left scalars `g'_j ∘ f_i = C_ji θ_source`.
fn dual_pair(
    b: &EndB,
    pair: &Pair,
    thetas: &BTreeMap<usize, HomElement>,
) -> std::result::Result<(Vec<HomElement>, Matrix), Obstruction> {
    let k = b.field();
    let (l, m, _) = pair.f_slot;
    let phi = pairing(b, pair.f_slot, &pair.f, &pair.g, &thetas[&m])?;
    let inv = phi.inverse().ok_or_else(|| {
        obstruction(b, ObstructionKind::SingularPairing, Some(pair.f_slot), format!("pairing matrix {phi:?} is singular"))
    })?;
    let gp = (0..pair.g.len())
        .map(|j| combine(k, &pair.g, (0..pair.g.len()).map(|t| inv.get(t, j).clone())))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| obstruction(b, ObstructionKind::EscapesTheta, Some(pair.g_slot), e.to_string()))?;
    let mut left = Matrix::zeros(k, gp.len(), pair.f.len());
    for (j, gj) in gp.iter().enumerate() {
        for (i, fi) in pair.f.iter().enumerate() {
            let h = compose(gj, fi).map_err(|e| obstruction(b, ObstructionKind::EscapesTheta, Some(pair.g_slot), e.to_string()))?;
            let c = theta_multiple(&h, &thetas[&l]).ok_or_else(|| {
                obstruction(b, ObstructionKind::EscapesTheta, Some(pair.g_slot), format!("composite ({j},{i}) is not a multiple of theta"))
            })?;
            left.set(j, i, c);
        }
    }
    Ok((gp, left))
}

/// The constant `c` with `C = c I`, if any.
fn scalar_matrix(m: &Matrix) -> Option<Scalar> {
    let k = m.field();
    let c = m.get(0, 0).clone();
    for r in 0..m.rows() {
        for s in 0..m.cols() {
            let expected = if r == s { c.clone() } else { k.zero() };
            if *m.get(r, s) != expected {
                return None;
            }
        }
    }
    Some(c)
}

/// Builds an admissible basis of `B` or reports the first obstruction.
pub fn construct_admissible(b: &EndB, soc: &SocularData) -> std::result::Result<AdmissibleBasis, Obstruction> {
    use ObstructionKind::*;
    let k = b.field();
    let a = b.algebra();
    for &l in b.members() {
        if b.primed(l) != l {
            return Err(obstruction(
                b,
                PrimedNotIdentity,
                None,
                format!("{}' = {}", a.lambda_name(l), a.lambda_name(b.primed(l))),
            ));
        }
        if soc.top_degree_socle.get(&l) != Some(&true) {
            return Err(obstruction(b, TopDegreeSocle, None, format!("soc(P^{}) is not its top degree", a.lambda_name(l))));
        }
    }
    let d = |l: usize| b.top_degree(l);
    let slot_elems = |s: Slot| -> Vec<HomElement> { b.slot(s.0, s.1, s.2).iter().map(|&i| b.element(i).clone()).collect() };
    let is_theta_slot = |s: Slot| s.0 == s.1 && s.2 == d(s.0);

    // clauses (i) and (ii), and the slot pairs
    let mut pairs = Vec::new();
    let mut self_paired = Vec::new();
    let mut done = BTreeSet::new();
    for (&s, idx) in b.slots() {
        if done.contains(&s) {
            continue;
        }
        let (l, m, j) = s;
        if d(l) != d(m) {
            return Err(obstruction(b, DegreeMismatch, Some(s), format!("d_{} = {} but d_{} = {}", a.lambda_name(l), d(l), a.lambda_name(m), d(m))));
        }
        let t = (m, l, d(l) - j);
        let t_len = b.slot(t.0, t.1, t.2).len();
        if t_len != idx.len() {
            return Err(obstruction(b, CardinalityMismatch, Some(s), format!("{} elements against {} in {}", idx.len(), t_len, slot_name(b, t))));
        }
        done.insert(s);
        done.insert(t);
        if s == t {
            self_paired.push(s);
            continue;
        }
        let s_is_f = if is_theta_slot(s) {
            true
        } else if is_theta_slot(t) {
            false
        } else if l != m {
            l < m
        } else {
            j < t.2
        };
        let (f_slot, g_slot) = if s_is_f { (s, t) } else { (t, s) };
        pairs.push(Pair { f_slot, g_slot, f: slot_elems(f_slot), g: slot_elems(g_slot) });
    }

    // pass 1: scalars c(λ, μ) against the current θ's
    let mut thetas: BTreeMap<usize, HomElement> = BTreeMap::new();
    for &l in b.members() {
        thetas.insert(l, b.theta(l).map_err(|e| obstruction(b, TopDegreeSocle, None, e.to_string()))?.clone());
    }
    let mut edges: BTreeMap<(usize, usize), (Scalar, Slot)> = BTreeMap::new();
    for pair in &pairs {
        let (_, left) = dual_pair(b, pair, &thetas)?;
        let c = scalar_matrix(&left).ok_or_else(|| {
            obstruction(b, LeftScalarsNotDiagonal, Some(pair.g_slot), format!("left scalars {left:?} are not a multiple of the identity"))
        })?;
        if k.is_zero(&c) {
            return Err(obstruction(b, LeftScalarsNotDiagonal, Some(pair.g_slot), "left scalars vanish"));
        }
        let (l, m, _) = pair.f_slot;
        if l == m {
            if !k.is_one(&c) {
                return Err(obstruction(b, SelfLoopScalar, Some(pair.f_slot), format!("c = {} on a loop", k.format(&c))));
            }
            continue;
        }
        match edges.get(&(l, m)) {
            Some((c0, s0)) if *c0 != c => {
                return Err(obstruction(
                    b,
                    ScalarNotConstant,
                    Some(pair.f_slot),
                    format!("c = {} here but {} at {}", k.format(&c), k.format(c0), slot_name(b, *s0)),
                ));
            }
            Some(_) => {}
            None => {
                edges.insert((l, m), (c, pair.f_slot));
            }
        }
    }

    // pass 2: t_μ = c(λ, μ) t_λ along a spanning forest rooted at least members
    let mut adj: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (&(l, m), (c, _)) in &edges {
        adj.entry(l).or_default().push((m, c.clone()));
        adj.entry(m).or_default().push((l, k.inv(c).expect("nonzero")));
    }
    let mut t: BTreeMap<usize, Scalar> = BTreeMap::new();
    for &root in b.members() {
        if t.contains_key(&root) {
            continue;
        }
        t.insert(root, k.one());
        let mut queue = VecDeque::from([root]);
        while let Some(l) = queue.pop_front() {
            for (m, c) in adj.get(&l).cloned().unwrap_or_default() {
                if !t.contains_key(&m) {
                    t.insert(m, k.mul(&t[&l], &c));
                    queue.push_back(m);
                }
            }
        }
    }
    for (&(l, m), (c, s)) in &edges {
        if t[&m] != k.mul(&t[&l], c) {
            return Err(obstruction(
                b,
                Cocycle,
                Some(*s),
                format!("scalars around a cycle through {} and {} do not multiply to 1", a.lambda_name(l), a.lambda_name(m)),
            ));
        }
    }
    let mut theta_scales = BTreeMap::new();
    for &l in b.members() {
        let s = k.inv(&t[&l]).expect("nonzero");
        thetas.insert(l, thetas[&l].scale(&s));
        theta_scales.insert(l, s);
    }

    // pass 3: dual bases against the rescaled θ's; every scalar is now 1
    let mut chosen: BTreeMap<Slot, Vec<(HomElement, Scalar)>> = BTreeMap::new();
    let mut links: Vec<((Slot, usize), (Slot, usize))> = Vec::new();
    for pair in &mut pairs {
        if is_theta_slot(pair.f_slot) {
            pair.f = vec![thetas[&pair.f_slot.0].clone()];
        }
        let (gp, left) = dual_pair(b, pair, &thetas)?;
        if scalar_matrix(&left).is_none_or(|c| !k.is_one(&c)) {
            return Err(obstruction(b, Cocycle, Some(pair.g_slot), "rescaled theta's leave a scalar different from 1"));
        }
        for i in 0..gp.len() {
            links.push(((pair.f_slot, i), (pair.g_slot, i)));
        }
        chosen.insert(pair.f_slot, pair.f.iter().map(|f| (f.clone(), k.one())).collect());
        chosen.insert(pair.g_slot, gp.into_iter().map(|g| (g, k.one())).collect());
    }
    for &s in &self_paired {
        let f = slot_elems(s);
        let phi = pairing(b, s, &f, &f, &thetas[&s.0])?;
        if !phi.is_symmetric() {
            return Err(obstruction(b, SelfPairingNotSymmetric, Some(s), format!("pairing matrix {phi:?} is not symmetric")));
        }
        if !phi.is_invertible() {
            return Err(obstruction(b, SingularPairing, Some(s), format!("pairing matrix {phi:?} is singular")));
        }
        let (p, diag) = congruent_diagonalize(&phi).expect("symmetric");
        let mut elems = Vec::new();
        for (col, c) in diag.into_iter().enumerate() {
            let h = combine(k, &f, (0..f.len()).map(|i| p.get(i, col).clone()))
                .map_err(|e| obstruction(b, EscapesTheta, Some(s), e.to_string()))?;
            links.push(((s, col), (s, col)));
            elems.push((h, c));
        }
        chosen.insert(s, elems);
    }

    let mut elements = Vec::new();
    let mut scalar = Vec::new();
    let mut position: BTreeMap<(Slot, usize), usize> = BTreeMap::new();
    for (s, elems) in &chosen {
        for (i, (h, c)) in elems.iter().enumerate() {
            position.insert((*s, i), elements.len());
            elements.push(h.clone());
            scalar.push(c.clone());
        }
    }
    let mut partner = vec![usize::MAX; elements.len()];
    for (x, y) in links {
        partner[position[&x]] = position[&y];
        partner[position[&y]] = position[&x];
    }
    let thetas_idx = b
        .members()
        .iter()
        .map(|&l| (l, position[&((l, l, d(l)), 0)]))
        .collect();
    let ab = AdmissibleBasis { elements, partner, scalar, thetas: thetas_idx, theta_scales };
    let v = verify_admissible(b, &ab);
    if !v.passed {
        return Err(obstruction(b, VerificationFailed, None, v.witness.unwrap_or_default()));
    }
    Ok(ab)
}

/// Result of checking the admissible condition clause by clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub passed: bool,
    pub clause: Option<&'static str>,
    pub witness: Option<String>,
}

impl Verification {
    fn fail(clause: &'static str, witness: String) -> Self {
        Verification { passed: false, clause: Some(clause), witness: Some(witness) }
    }
}

/// Checks that `ab` is an appropriate basis of `B` satisfying clauses
/// (i)-(iii), by exact composition only.
pub fn verify_admissible(b: &EndB, ab: &AdmissibleBasis) -> Verification {
    let k = b.field();
    let a = b.algebra();
    let n = ab.elements.len();
    if n != b.dim() || ab.partner.len() != n || ab.scalar.len() != n {
        return Verification::fail("basis", format!("{n} elements for a {}-dimensional algebra", b.dim()));
    }
    let mut by_slot: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
    for (i, h) in ab.elements.iter().enumerate() {
        by_slot.entry(h.slot()).or_default().push(i);
    }
    for (s, idx) in &by_slot {
        if b.slot(s.0, s.1, s.2).len() != idx.len() {
            return Verification::fail("basis", format!("{} has the wrong number of elements", slot_name(b, *s)));
        }
        let cols: Vec<Vec<Scalar>> = idx.iter().map(|&i| ab.elements[i].matrix.entries().to_vec()).collect();
        if Matrix::from_columns(k, cols[0].len(), &cols).rank() != idx.len() {
            return Verification::fail("basis", format!("elements of {} are dependent", slot_name(b, *s)));
        }
    }
    let mut thetas = BTreeMap::new();
    for &l in b.members() {
        let Some(&i) = ab.thetas.get(&l) else {
            return Verification::fail("appropriate", format!("no theta for {}", a.lambda_name(l)));
        };
        let th = &ab.elements[i];
        let Ok(orig) = b.theta(l) else {
            return Verification::fail("appropriate", format!("theta_{} is not in B", a.lambda_name(l)));
        };
        if th.is_zero() || theta_multiple(th, orig).is_none() {
            return Verification::fail("appropriate", format!("element {i} is not a multiple of theta_{}", a.lambda_name(l)));
        }
        thetas.insert(l, th.clone());
    }
    for (s, idx) in &by_slot {
        let (l, m, j) = *s;
        if b.top_degree(l) != b.top_degree(m) {
            return Verification::fail("(i)", format!("{} is nonzero but d differs", slot_name(b, *s)));
        }
        let t = (m, l, b.top_degree(l) - j);
        if by_slot.get(&t).map_or(0, Vec::len) != idx.len() {
            return Verification::fail("(ii)", format!("{} and {} differ in size", slot_name(b, *s), slot_name(b, t)));
        }
    }
    for (i, f) in ab.elements.iter().enumerate() {
        let g_idx = ab.partner[i];
        let (l, m, j) = f.slot();
        let t = (m, l, b.top_degree(l) - j);
        let fail = |w: String| Verification::fail("(iii)", format!("element {i} in {}: {w}", slot_name(b, (l, m, j))));
        if g_idx >= n || ab.elements[g_idx].slot() != t || ab.partner[g_idx] != i {
            return fail("partner is not in the paired slot".into());
        }
        let c = &ab.scalar[i];
        if k.is_zero(c) || *c != ab.scalar[g_idx] {
            return fail(format!("scalars {} and {} do not match", k.format(c), k.format(&ab.scalar[g_idx])));
        }
        let g = &ab.elements[g_idx];
        let (Ok(gf), Ok(fg)) = (compose(g, f), compose(f, g)) else {
            return fail("partner does not compose".into());
        };
        if theta_multiple(&gf, &thetas[&l]).as_ref() != Some(c) || theta_multiple(&fg, &thetas[&m]).as_ref() != Some(c) {
            return fail("partner compositions are not c times theta".into());
        }
        for &h_idx in by_slot.get(&t).into_iter().flatten() {
            if h_idx == g_idx {
                continue;
            }
            let h = &ab.elements[h_idx];
            if !compose(h, f).is_ok_and(|x| x.is_zero()) || !compose(f, h).is_ok_and(|x| x.is_zero()) {
                return fail(format!("element {h_idx} composes nontrivially"));
            }
        }
    }
    Verification { passed: true, clause: None, witness: None }
}

/// `B` rebased on an admissible basis with its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub basis: AdmissibleBasis,
    pub endb: EndB,
    /// The canonical form on `endb`'s basis.
    pub form: TraceForm,
    /// The same form on the basis of the input `B`.
    pub form_on_input: TraceForm,
    pub gram: Gram,
}

/// The canonical form attached to an admissible basis, with its Gram matrix.
pub fn attached_form(b: &EndB, ab: &AdmissibleBasis) -> Result<Certificate> {
    let rebased = b.with_basis(ab.elements.clone())?;
    let form = rebased.canonical_tr()?;
    let gram = rebased.gram(&form);
    let k = b.field();
    let values = b
        .basis()
        .iter()
        .map(|h| rebased.coordinates(h).map(|c| k.dot(&c, &form.values)))
        .collect::<Result<Vec<_>>>()?;
    let form_on_input = TraceForm::new(k, values, &b.degrees());
    Ok(Certificate { basis: ab.clone(), endb: rebased, form, form_on_input, gram })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub seed: u64,
    pub trials: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { seed: 0xF0B0, trials: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    Scan,
    Grid,
    Sampling,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome {
    /// A nondegenerate functional killing all commutators.
    Symmetric { witness: Vec<Scalar>, method: OracleMethod },
    /// No such functional exists.
    NotSymmetricExact,
    /// Every sample was degenerate; `error_bound` bounds the chance of that
    /// happening for a symmetric algebra.
    NotSymmetricProbable { error_bound: f64 },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleRecord {
    pub config: OracleConfig,
    /// `dim S`, the space of functionals vanishing on `[B, B]`.
    pub functional_dim: usize,
    pub samples: u32,
    pub outcome: OracleOutcome,
}

impl OracleRecord {
    pub fn is_symmetric(&self) -> bool {
        matches!(self.outcome, OracleOutcome::Symmetric { .. })
    }

    pub fn refutes(&self) -> bool {
        matches!(self.outcome, OracleOutcome::NotSymmetricExact | OracleOutcome::NotSymmetricProbable { .. })
    }
}

/// Brute-force decision from the multiplication table alone.
pub fn oracle_symmetric(table: &MultTable, config: OracleConfig) -> OracleRecord {
    let k = table.field;
    let n = table.dim;
    let s = table.commutators().kernel().columns();
    let m = s.len();
    let record = |samples, outcome| OracleRecord { config, functional_dim: m, samples, outcome };
    if n == 0 {
        return record(0, OracleOutcome::Symmetric { witness: Vec::new(), method: OracleMethod::Scan });
    }
    if m == 0 {
        return record(0, OracleOutcome::NotSymmetricExact);
    }
    let grams: Vec<Matrix> = s.iter().map(|v| table.gram(v).matrix).collect();
    let functional = |coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![k.zero(); n];
        for (c, v) in coeffs.iter().zip(&s) {
            for (o, x) in out.iter_mut().zip(v) {
                k.add_mul_assign(o, c, x);
            }
        }
        out
    };
    let try_coeffs = |coeffs: &[Scalar]| -> bool {
        let mut g = Matrix::zeros(k, n, n);
        for (c, gi) in coeffs.iter().zip(&grams) {
            if !k.is_zero(c) {
                g = g.add_scaled(c, gi);
            }
        }
        g.rank() == n
    };

    let unit = |i: usize| -> Vec<Scalar> { (0..m).map(|t| if t == i { k.one() } else { k.zero() }).collect() };
    for i in 0..m {
        if try_coeffs(&unit(i)) {
            return record(0, OracleOutcome::Symmetric { witness: s[i].clone(), method: OracleMethod::Scan });
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let mut c = unit(i);
            c[j] = k.one();
            if try_coeffs(&c) {
                return record(0, OracleOutcome::Symmetric { witness: functional(&c), method: OracleMethod::Scan });
            }
        }
    }

    // det is a polynomial of degree <= n, so a grid of n + 1 values per
    // coordinate decides whether it vanishes identically
    if m * n <= 16 && k.fits_distinct(n as u64 + 1) {
        let mut idx = vec![0usize; m];
        let mut count = 0;
        loop {
            count += 1;
            let c: Vec<Scalar> = idx.iter().map(|&v| k.from_i64(v as i64)).collect();
            if try_coeffs(&c) {
                return record(count, OracleOutcome::Symmetric { witness: functional(&c), method: OracleMethod::Grid });
            }
            let mut pos = 0;
            while pos < m {
                idx[pos] += 1;
                if idx[pos] <= n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == m {
                return record(count, OracleOutcome::NotSymmetricExact);
            }
        }
    }

    if config.trials == 0 {
        return record(0, OracleOutcome::Inconclusive);
    }
    let bound = 10 * n as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for t in 0..config.trials {
        let c: Vec<Scalar> = (0..m).map(|_| k.from_i64(rng.gen_range(-bound..=bound))).collect();
        if try_coeffs(&c) {
            return record(t + 1, OracleOutcome::Symmetric { witness: functional(&c), method: OracleMethod::Sampling });
        }
    }
    let distinct = match k.characteristic() {
        0 => 2 * bound + 1,
        p => (2 * bound + 1).min(p as i64),
    };
    let per_trial = (n as f64 / distinct as f64).min(1.0);
    record(config.trials, OracleOutcome::NotSymmetricProbable { error_bound: per_trial.powi(config.trials as i32) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    SymmetricCertified,
    NotSymmetricCertified,
    NotSymmetricProbable,
    AssumptionsUnmet,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Decision::SymmetricCertified => "symmetric-certified",
            Decision::NotSymmetricCertified => "not-symmetric-certified",
            Decision::NotSymmetricProbable => "not-symmetric-probable",
            Decision::AssumptionsUnmet => "assumptions-unmet",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryVerdict {
    pub decision: Decision,
    pub certificate: Option<Certificate>,
    pub obstruction: Option<Obstruction>,
    /// `(λ, λ')` with `λ' ≠ λ`.
    pub primed_witness: Option<(usize, usize)>,
    pub oracle: OracleRecord,
    /// The construction failed and the oracle's exact branch refuted.
    pub upgraded_by_oracle: bool,
    pub unmet: Vec<String>,
}

/// The decision ladder: standing assumptions, then `λ' = λ`, then the
/// admissible construction; the oracle is always run and recorded.
pub fn decide_symmetric(b: &EndB, soc: &SocularData, config: OracleConfig) -> Result<SymmetryVerdict> {
    let a = b.algebra();
    let oracle = oracle_symmetric(b.table(), config);
    let mut verdict = SymmetryVerdict {
        decision: Decision::AssumptionsUnmet,
        certificate: None,
        obstruction: None,
        primed_witness: None,
        oracle,
        upgraded_by_oracle: false,
        unmet: Vec::new(),
    };
    if !b.primed_is_involution() {
        verdict.unmet.push("the primed map is not an involution on the projective-injective simples".into());
    }
    for &l in b.members() {
        if soc.top_degree_socle.get(&l) != Some(&true) {
            verdict.unmet.push(format!("soc(P^{}) is not concentrated in degree d", a.lambda_name(l)));
        }
    }
    if !verdict.unmet.is_empty() {
        return Ok(verdict);
    }
    if let Some(&l) = b.members().iter().find(|&&l| b.primed(l) != l) {
        verdict.decision = Decision::NotSymmetricCertified;
        verdict.primed_witness = Some((l, b.primed(l)));
        return Ok(verdict);
    }
    match construct_admissible(b, soc) {
        Ok(ab) => {
            let cert = attached_form(b, &ab)?;
            if !cert.gram.symmetric || !cert.gram.nondegenerate {
                return Err(Error::Internal("verified admissible basis gave a non-symmetrizing form".into()));
            }
            verdict.decision = Decision::SymmetricCertified;
            verdict.certificate = Some(cert);
        }
        Err(obs) => {
            verdict.obstruction = Some(obs);
            if verdict.oracle.outcome == OracleOutcome::NotSymmetricExact {
                verdict.decision = Decision::NotSymmetricCertified;
                verdict.upgraded_by_oracle = true;
            } else {
                verdict.decision = Decision::NotSymmetricProbable;
            }
        }
    }
    Ok(verdict)
}

/// `End_A(Q)` for `Q = ⊕ (P^μ)^{k_μ}` with the form `hat-tr` built from `tr`
/// on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatTr {
    /// `(μ, copy)` for each summand of `Q`, in order.
    pub copies: Vec<(usize, usize)>,
    /// `(source copy, target copy, B basis index)` for each basis element.
    pub basis: Vec<(usize, usize, usize)>,
    pub degrees: Vec<i32>,
    pub table: MultTable,
    pub form: TraceForm,
    pub gram: Gram,
}

/// `hat-tr(f) = tr(f_{ss})` summed over diagonal components: `tr` on maps
/// between equal copies, 0 between different copies.
pub fn extend_hat_tr(b: &EndB, tr: &TraceForm, multiplicities: &BTreeMap<usize, usize>) -> Result<HatTr> {
    let k = b.field();
    let g = b.gram(tr);
    if !g.symmetric || !g.nondegenerate {
        return Err(Error::Precondition("the form on B is not symmetrizing".into()));
    }
    if multiplicities.values().all(|&m| m == 0) {
        return Err(Error::Precondition("all multiplicities are zero".into()));
    }
    if let Some(l) = multiplicities.keys().find(|l| !b.members().contains(l)) {
        return Err(Error::Precondition(format!("{} is not a member of B", b.algebra().lambda_name(*l))));
    }
    let copies: Vec<(usize, usize)> =
        multiplicities.iter().flat_map(|(&l, &m)| (0..m).map(move |r| (l, r))).collect();
    let mut basis = Vec::new();
    for (s, &(ls, _)) in copies.iter().enumerate() {
        for (t, &(lt, _)) in copies.iter().enumerate() {
            for (i, h) in b.basis().iter().enumerate() {
                if h.source == ls && h.target == lt {
                    basis.push((s, t, i));
                }
            }
        }
    }
    let n = basis.len();
    let index: BTreeMap<(usize, usize, usize), usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut products = Vec::with_capacity(n * n);
    for &(s1, t1, i1) in &basis {
        for &(s2, t2, i2) in &basis {
            let mut v = vec![k.zero(); n];
            // (s1 -> t1) ∘ (s2 -> t2) is defined when t2 = s1
            if t2 == s1 {
                for (j, c) in b.table().product(i1, i2).iter().enumerate() {
                    if !k.is_zero(c) {
                        v[index[&(s2, t1, j)]] = c.clone();
                    }
                }
            }
            products.push(v);
        }
    }
    let table = MultTable { field: k, dim: n, products };
    let values: Vec<Scalar> =
        basis.iter().map(|&(s, t, i)| if s == t { tr.values[i].clone() } else { k.zero() }).collect();
    let degrees: Vec<i32> = basis.iter().map(|&(_, _, i)| b.element(i).degree).collect();
    let form = TraceForm::new(k, values, &degrees);
    let gram = table.gram(&form.values);
    Ok(HatTr { copies, basis, degrees, table, form, gram })
}
