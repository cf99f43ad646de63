//! Graded modules given by action matrices, and the classification of
//! projective-injective indecomposables.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algcore::{validate, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, Scalar};
use crate::laurent::LaurentPoly;

/// A finite-dimensional graded left module. `action[i]` is the matrix of the
/// algebra basis element `x_i` on the module basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    labels: Vec<String>,
    degrees: Vec<i32>,
    action: Vec<Matrix>,
}

impl GradedModule {
    pub fn new(algebra: Arc<GradedAlgebra>, labels: Vec<String>, degrees: Vec<i32>, action: Vec<Matrix>) -> Result<Self> {
        let n = degrees.len();
        if labels.len() != n || action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("module data has inconsistent lengths".into()));
        }
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("action matrix has the wrong size".into()));
        }
        Ok(GradedModule { algebra, labels, degrees, action })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// Matrix of an arbitrary algebra element given in basis coordinates.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let k = self.field();
        let mut m = Matrix::zeros(k, self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !k.is_zero(c) {
                m = m.add_scaled(c, &self.action[i]);
            }
        }
        m
    }

    pub fn degree_indices(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// `(lowest, highest)` nonzero degree.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    /// Top nonzero degree; `d_λ` for a projective `P^λ`.
    pub fn top_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    pub fn graded_dim(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.degrees.iter().map(|&d| (d, 1)))
    }

    /// Grading, associativity and unit of the action.
    pub fn check(&self) -> Result<()> {
        let a = &self.algebra;
        let k = self.field();
        for (i, m) in self.action.iter().enumerate() {
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if !k.is_zero(m.get(r, c)) && self.degrees[r] != self.degrees[c] + a.degree(i) {
                        return Err(Error::Validation(format!(
                            "{} maps {} to {} against the grading",
                            a.label(i),
                            self.labels[c],
                            self.labels[r]
                        )));
                    }
                }
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.act(a.product(i, j)) != self.action[i].mul(&self.action[j]) {
                    return Err(Error::Validation(format!(
                        "action is not associative on {} * {}",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        let mut unit = a.zero_vector();
        for &e in a.idempotents() {
            unit[e] = k.one();
        }
        if self.act(&unit) != Matrix::identity(k, self.dim()) {
            return Err(Error::Validation("unit does not act as the identity".into()));
        }
        Ok(())
    }

    /// The submodule spanned by `vectors`, which must be homogeneous of the
    /// given degrees, independent, and closed under the action.
    pub fn submodule(&self, vectors: &[Vec<Scalar>], degrees: Vec<i32>, labels: Vec<String>) -> Result<GradedModule> {
        let k = self.field();
        if vectors.is_empty() {
            let action = vec![Matrix::zeros(k, 0, 0); self.algebra.dim()];
            return GradedModule::new(self.algebra.clone(), labels, degrees, action);
        }
        let basis = Matrix::from_columns(k, self.dim(), vectors);
        let coords = basis
            .left_inverse()
            .ok_or_else(|| Error::Precondition("submodule spanning set is dependent".into()))?;
        let mut action = Vec::with_capacity(self.algebra.dim());
        for m in &self.action {
            let image = m.mul(&basis);
            let restricted = coords.mul(&image);
            if basis.mul(&restricted) != image {
                return Err(Error::Precondition("span is not a submodule".into()));
            }
            action.push(restricted);
        }
        GradedModule::new(self.algebra.clone(), labels, degrees, action)
    }
}

/// `P^λ = A e_λ` with basis the nonzero `x e_λ` for algebra basis elements
/// `x`, kept greedily in basis order.
pub fn projective(a: &Arc<GradedAlgebra>, lambda: usize) -> Result<GradedModule> {
    if lambda >= a.lambda_count() {
        return Err(Error::UnknownLabel(format!("simple #{lambda}")));
    }
    let k = a.field();
    let e = a.idempotent(lambda);
    let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.product(i, e).to_vec()).collect();
    let keep = Matrix::from_columns(k, a.dim(), &images).independent_columns();
    let vectors: Vec<Vec<Scalar>> = keep.iter().map(|&i| images[i].clone()).collect();
    let basis = Matrix::from_columns(k, a.dim(), &vectors);
    let coords = basis.left_inverse().expect("independent columns");
    let action = (0..a.dim()).map(|i| coords.mul(&a.left_matrix(i).mul(&basis))).collect();
    GradedModule::new(
        a.clone(),
        keep.iter().map(|&i| a.label(i).to_string()).collect(),
        keep.iter().map(|&i| a.degree(i)).collect(),
        action,
    )
}

/// The simple `L^λ`, one-dimensional in degree 0.
pub fn simple(a: &Arc<GradedAlgebra>, lambda: usize) -> Result<GradedModule> {
    if lambda >= a.lambda_count() {
        return Err(Error::UnknownLabel(format!("simple #{lambda}")));
    }
    let k = a.field();
    let e = a.idempotent(lambda);
    let action = (0..a.dim())
        .map(|i| {
            let c = if a.degree(i) == 0 { a.product(i, e)[e].clone() } else { k.zero() };
            Matrix::from_rows(k, vec![vec![c]])
        })
        .collect();
    GradedModule::new(a.clone(), vec![format!("L^{}", a.lambda_name(lambda))], vec![0], action)
}

/// Keeps an independent subset per degree, in input order, grouped by
/// ascending degree.
fn prune_by_degree(vectors: Vec<(i32, Vec<Scalar>)>, field: Field, len: usize) -> Vec<(i32, Vec<Scalar>)> {
    let mut by_degree: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    for (d, v) in vectors {
        by_degree.entry(d).or_default().push(v);
    }
    let mut out = Vec::new();
    for (d, vs) in by_degree {
        let keep = Matrix::from_columns(field, len, &vs).independent_columns();
        out.extend(keep.into_iter().map(|i| (d, vs[i].clone())));
    }
    out
}

/// Graded dimensions of the layers `rad^i M / rad^{i+1} M`, until zero.
/// `rad A` is the span of the positive-degree basis elements.
pub fn radical_filtration(m: &GradedModule) -> Vec<LaurentPoly> {
    let k = m.field();
    let a = m.algebra();
    let radical = a.radical_basis();
    let mut current: Vec<(i32, Vec<Scalar>)> = (0..m.dim())
        .map(|i| {
            let mut v = vec![k.zero(); m.dim()];
            v[i] = k.one();
            (m.degree(i), v)
        })
        .collect();
    current = prune_by_degree(current, k, m.dim());
    let mut layers = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &x in &radical {
            for (d, v) in &current {
                let w = m.action(x).mul_vec(v);
                if w.iter().any(|c| !k.is_zero(c)) {
                    next.push((d + a.degree(x), w));
                }
            }
        }
        let next = prune_by_degree(next, k, m.dim());
        let mut layer = LaurentPoly::zero();
        for (d, _) in &current {
            layer.add_term(*d, 1);
        }
        for (d, _) in &next {
            layer.add_term(*d, -1);
        }
        layers.push(layer);
        current = next;
    }
    layers
}

/// The socle, with a basis adapted to the decomposition by simple type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Socle {
    pub vectors: Vec<Vec<Scalar>>,
    /// `(λ, degree)` of each basis vector.
    pub types: Vec<(usize, i32)>,
}

impl Socle {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// `(λ, s)` when the socle is simple, isomorphic to `L^λ⟨s⟩`.
    pub fn simple_type(&self) -> Option<(usize, i32)> {
        (self.types.len() == 1).then(|| self.types[0])
    }

    /// `dim e_λ soc_d`.
    pub fn multiplicity(&self, lambda: usize, degree: i32) -> usize {
        self.types.iter().filter(|&&t| t == (lambda, degree)).count()
    }

    pub fn module(&self, m: &GradedModule) -> Result<GradedModule> {
        let a = m.algebra();
        m.submodule(
            &self.vectors,
            self.types.iter().map(|t| t.1).collect(),
            self.types.iter().map(|(l, d)| format!("L^{}<{}>", a.lambda_name(*l), d)).collect(),
        )
    }
}

/// `{v : rad(A) v = 0}`, computed degree by degree as a joint kernel.
pub fn socle(m: &GradedModule) -> Socle {
    let k = m.field();
    let a = m.algebra();
    let radical = a.radical_basis();
    let all_rows: Vec<usize> = (0..m.dim()).collect();
    let mut vectors = Vec::new();
    let mut types = Vec::new();
    let Some((lo, hi)) = m.degree_range() else {
        return Socle { vectors, types };
    };
    for d in lo..=hi {
        let cols = m.degree_indices(d);
        if cols.is_empty() {
            continue;
        }
        let mut stacked = Matrix::zeros(k, 0, cols.len());
        for &x in &radical {
            stacked = stacked.vstack(&m.action(x).select(&all_rows, &cols));
        }
        let kernel = stacked.kernel();
        let lifted: Vec<Vec<Scalar>> = kernel
            .columns()
            .into_iter()
            .map(|c| {
                let mut v = vec![k.zero(); m.dim()];
                for (t, &i) in cols.iter().enumerate() {
                    v[i] = c[t].clone();
                }
                v
            })
            .collect();
        if lifted.is_empty() {
            continue;
        }
        for lambda in 0..a.lambda_count() {
            let e = m.action(a.idempotent(lambda));
            let images: Vec<Vec<Scalar>> = lifted.iter().map(|v| e.mul_vec(v)).collect();
            for i in Matrix::from_columns(k, m.dim(), &images).independent_columns() {
                vectors.push(images[i].clone());
                types.push((lambda, d));
            }
        }
    }
    Socle { vectors, types }
}

/// `(graded length, Loewy length)`.
pub fn lengths(m: &GradedModule) -> Result<(usize, usize)> {
    let (lo, hi) = m.degree_range().ok_or_else(|| Error::Precondition("zero module".into()))?;
    Ok(((hi - lo + 1) as usize, radical_filtration(m).len()))
}

/// `M^⊛`: degree `j` is the linear dual of `M_{-j}`, and `a` acts by the
/// transpose of `a^⋆`.
pub fn dual(m: &GradedModule) -> Result<GradedModule> {
    let a = m.algebra();
    if !a.has_involution() {
        return Err(Error::InvolutionAbsent);
    }
    let action = (0..a.dim()).map(|i| m.act(a.star(i).expect("involution present")).transpose()).collect();
    GradedModule::new(
        a.clone(),
        m.labels.iter().map(|l| format!("{l}^*")).collect(),
        m.degrees.iter().map(|d| -d).collect(),
        action,
    )
}

/// Linear dual of a module over `opposite(a)`, which is a left `a`-module.
pub fn linear_dual_over(m: &GradedModule, a: Arc<GradedAlgebra>) -> Result<GradedModule> {
    if m.algebra().dim() != a.dim() {
        return Err(Error::DimensionMismatch("module is over a different algebra".into()));
    }
    GradedModule::new(
        a,
        m.labels.iter().map(|l| format!("{l}^*")).collect(),
        m.degrees.iter().map(|d| -d).collect(),
        m.action.iter().map(Matrix::transpose).collect(),
    )
}

/// `M⟨k⟩`, with `M⟨k⟩_d = M_{d-k}`.
pub fn shift(m: &GradedModule, k: i32) -> GradedModule {
    GradedModule { degrees: m.degrees.iter().map(|d| d + k).collect(), ..m.clone() }
}

/// `Σ_k dim(e_λ M_k) v^k`.
pub fn graded_multiplicity(m: &GradedModule, lambda: usize) -> LaurentPoly {
    let a = m.algebra();
    let e = m.action(a.idempotent(lambda));
    let rows: Vec<usize> = (0..m.dim()).collect();
    let mut p = LaurentPoly::zero();
    if let Some((lo, hi)) = m.degree_range() {
        for d in lo..=hi {
            let cols = m.degree_indices(d);
            if !cols.is_empty() {
                p.add_term(d, e.select(&rows, &cols).rank() as i64);
            }
        }
    }
    p
}

/// How indecomposable injectives were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectiveRoute {
    /// `I^ν = (P^ν)^⊛`; used when `⋆` fixes every simple.
    StarDual,
    /// `I^ν` is the linear dual of the projective `e_ν A` of the opposite
    /// algebra.
    Opposite,
}

fn injective_route(a: &GradedAlgebra) -> InjectiveRoute {
    if a.has_involution() && validate(a).star_fixes_simples() {
        InjectiveRoute::StarDual
    } else {
        InjectiveRoute::Opposite
    }
}

/// The indecomposable injective with socle `L^ν` in degree 0.
pub fn injective(a: &Arc<GradedAlgebra>, nu: usize) -> Result<GradedModule> {
    match injective_route(a) {
        InjectiveRoute::StarDual => dual(&projective(a, nu)?),
        InjectiveRoute::Opposite => {
            let op = Arc::new(a.opposite());
            linear_dual_over(&projective(&op, nu)?, a.clone())
        }
    }
}

/// Basis of `Hom_A(M, N)_j`: intertwiners sending `M_k` into `N_{k+j}`.
/// The basis is the kernel basis of the intertwiner equations, so it is
/// deterministic.
pub fn intertwiner_basis(m: &GradedModule, n: &GradedModule, j: i32) -> Vec<Matrix> {
    let k = m.field();
    let a = m.algebra();
    let mut unknown = vec![vec![None; m.dim()]; n.dim()];
    let mut count = 0;
    for r in 0..n.dim() {
        for c in 0..m.dim() {
            if n.degree(r) == m.degree(c) + j {
                unknown[r][c] = Some(count);
                count += 1;
            }
        }
    }
    if count == 0 {
        return Vec::new();
    }

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut reduced: Option<Matrix> = None;
    for x in 0..a.dim() {
        let am = m.action(x);
        let an = n.action(x);
        for r in 0..n.dim() {
            for c2 in 0..m.dim() {
                if n.degree(r) != m.degree(c2) + j + a.degree(x) {
                    continue;
                }
                // (T a_M)[r][c2] - (a_N T)[r][c2]
                let mut row = vec![k.zero(); count];
                let mut nonzero = false;
                for c0 in 0..m.dim() {
                    if let Some(u) = unknown[r][c0] {
                        let v = am.get(c0, c2);
                        if !k.is_zero(v) {
                            row[u] = k.add(&row[u], v);
                            nonzero = true;
                        }
                    }
                }
                for r0 in 0..n.dim() {
                    if let Some(u) = unknown[r0][c2] {
                        let v = an.get(r, r0);
                        if !k.is_zero(v) {
                            row[u] = k.sub(&row[u], v);
                            nonzero = true;
                        }
                    }
                }
                if nonzero && row.iter().any(|v| !k.is_zero(v)) {
                    rows.push(row);
                }
                if rows.len() >= 4 * count {
                    reduced = Some(compress(k, reduced.take(), std::mem::take(&mut rows), count));
                }
            }
        }
    }
    let system = compress(k, reduced, rows, count);
    let kernel = system.kernel();
    kernel
        .columns()
        .into_iter()
        .map(|sol| {
            let mut t = Matrix::zeros(k, n.dim(), m.dim());
            for r in 0..n.dim() {
                for c in 0..m.dim() {
                    if let Some(u) = unknown[r][c] {
                        t.set(r, c, sol[u].clone());
                    }
                }
            }
            t
        })
        .collect()
}

/// Row-reduces accumulated equations and keeps only the nonzero rows.
fn compress(k: Field, reduced: Option<Matrix>, rows: Vec<Vec<Scalar>>, count: usize) -> Matrix {
    let mut m = reduced.unwrap_or_else(|| Matrix::zeros(k, 0, count));
    if !rows.is_empty() {
        m = m.vstack(&Matrix::from_rows(k, rows));
    }
    if m.rows() == 0 {
        return m;
    }
    let r = m.rref();
    let keep: Vec<usize> = (0..r.rank).collect();
    let cols: Vec<usize> = (0..count).collect();
    r.matrix.select(&keep, &cols)
}

/// An invertible homogeneous degree-0 intertwiner `M → N`, if one exists.
/// Tries the members `Σ (t+1)^i T_i` of the solution space for
/// `t = 0, 1, ..., dim`, in that order.
pub fn graded_iso(m: &GradedModule, n: &GradedModule) -> Option<Matrix> {
    if m.graded_dim() != n.graded_dim() {
        return None;
    }
    if m.dim() == 0 {
        return Some(Matrix::zeros(m.field(), 0, 0));
    }
    let k = m.field();
    let basis = intertwiner_basis(m, n, 0);
    if basis.is_empty() {
        return None;
    }
    for t in 0..=basis.len() as i64 {
        let base = k.from_i64(t + 1);
        let mut coeff = k.one();
        let mut sum = Matrix::zeros(k, n.dim(), m.dim());
        for b in &basis {
            sum = sum.add_scaled(&coeff, b);
            coeff = k.mul(&coeff, &base);
        }
        if sum.is_invertible() {
            return Some(sum);
        }
    }
    None
}

/// Checks that `t` is an invertible degree-0 intertwiner `M → N`.
pub fn is_graded_iso(m: &GradedModule, n: &GradedModule, t: &Matrix) -> bool {
    let k = m.field();
    if t.rows() != n.dim() || t.cols() != m.dim() || !t.is_invertible() {
        return false;
    }
    for r in 0..n.dim() {
        for c in 0..m.dim() {
            if !k.is_zero(t.get(r, c)) && n.degree(r) != m.degree(c) {
                return false;
            }
        }
    }
    (0..m.algebra().dim()).all(|x| t.mul(m.action(x)) == n.action(x).mul(t))
}

/// The projective-injective part of `Λ` and the primed map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocularData {
    pub lambda0: Vec<usize>,
    /// `λ ↦ λ'` for `λ ∈ Λ₀`, where `soc(P^λ) ≅ L^{λ'}⟨d_λ'⟩`.
    pub primed: BTreeMap<usize, usize>,
    /// `'` maps `Λ₀` to itself and squares to the identity.
    pub is_involution: bool,
    /// `soc(P^λ) = P^λ_{d_λ}` for `λ ∈ Λ₀`.
    pub top_degree_socle: BTreeMap<usize, bool>,
    /// `d_λ` for every `λ ∈ Λ`.
    pub top_degrees: Vec<i32>,
    /// `(ν, s)` with `soc(P^λ) ≅ L^ν⟨s⟩` when the socle is simple.
    pub socle_types: Vec<Option<(usize, i32)>>,
    pub route: InjectiveRoute,
}

impl SocularData {
    pub fn contains(&self, lambda: usize) -> bool {
        self.lambda0.contains(&lambda)
    }

    pub fn all_top_degree_socle(&self) -> bool {
        self.top_degree_socle.values().all(|&b| b)
    }
}

/// Decides for every `λ` whether `P^λ` is injective: its socle must be a
/// simple `L^ν⟨s⟩` and `P^λ` must be isomorphic to `I^ν⟨s⟩`.
pub fn socular_set(a: &Arc<GradedAlgebra>) -> Result<SocularData> {
    let route = injective_route(a);
    let mut lambda0 = Vec::new();
    let mut primed = BTreeMap::new();
    let mut top_degree_socle = BTreeMap::new();
    let mut top_degrees = Vec::new();
    let mut socle_types = Vec::new();
    let mut injectives: BTreeMap<usize, GradedModule> = BTreeMap::new();
    for lambda in 0..a.lambda_count() {
        let p = projective(a, lambda)?;
        let d = p.top_degree().unwrap_or(0);
        top_degrees.push(d);
        let soc = socle(&p);
        let ty = soc.simple_type();
        socle_types.push(ty);
        let Some((nu, s)) = ty else { continue };
        if !injectives.contains_key(&nu) {
            injectives.insert(nu, injective(a, nu)?);
        }
        if graded_iso(&p, &shift(&injectives[&nu], s)).is_some() {
            lambda0.push(lambda);
            primed.insert(lambda, nu);
            top_degree_socle.insert(lambda, s == d && p.degree_indices(d).len() == 1);
        }
    }
    let is_involution = !lambda0.is_empty()
        && primed
            .iter()
            .all(|(l, p)| primed.get(p).is_some_and(|pp| pp == l));
    Ok(SocularData { lambda0, primed, is_involution, top_degree_socle, top_degrees, socle_types, route })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::AlgebraBuilder;
    use crate::quiver::{build_algebra, Arrow, QuiverPresentation};

    fn q() -> Field {
        Field::Rationals
    }

    fn two_cycle(relations: &[&str], maxdeg: u32, star: bool) -> Arc<GradedAlgebra> {
        let mut p = QuiverPresentation::new(q());
        p.vertices = vec!["v0".into(), "v1".into()];
        p.arrows = vec![
            Arrow { name: "a".into(), source: 0, target: 1, degree: 1 },
            Arrow { name: "b".into(), source: 1, target: 0, degree: 1 },
        ];
        for r in relations {
            let path = p.path(&r.split('.').collect::<Vec<_>>()).unwrap();
            p.relations.push(vec![(q().one(), path)]);
        }
        p.max_degree = maxdeg;
        if star {
            let a = p.path(&["a"]).unwrap();
            let b = p.path(&["b"]).unwrap();
            p.involution = vec![(0, vec![(q().one(), b)]), (1, vec![(q().one(), a)])];
        }
        Arc::new(build_algebra(&p).unwrap())
    }

    fn sl2() -> Arc<GradedAlgebra> {
        two_cycle(&["b.a"], 4, true)
    }

    fn nakayama() -> Arc<GradedAlgebra> {
        two_cycle(&["a.b", "b.a"], 3, true)
    }

    fn kx2() -> Arc<GradedAlgebra> {
        let k = q();
        let mut b = AlgebraBuilder::new(k);
        let e = b.basis("e", 0).unwrap();
        let x = b.basis("x", 1).unwrap();
        b.product(e, e, vec![(e, k.one())]).unwrap();
        b.product(e, x, vec![(x, k.one())]).unwrap();
        b.product(x, e, vec![(x, k.one())]).unwrap();
        b.idempotents(vec![e]).unwrap();
        b.involution(e, vec![(e, k.one())]).unwrap();
        b.involution(x, vec![(x, k.one())]).unwrap();
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn projectives_of_small_algebras() {
        let p = projective(&kx2(), 0).unwrap();
        assert_eq!(p.degrees(), &[0, 1]);
        assert_eq!(p.top_degree(), Some(1));
        p.check().unwrap();
        let p1 = projective(&sl2(), 1).unwrap();
        assert_eq!(p1.degrees(), &[0, 1, 2]);
        p1.check().unwrap();
        assert!(projective(&sl2(), 5).is_err());
    }

    #[test]
    fn filtrations_and_lengths() {
        let p1 = projective(&sl2(), 1).unwrap();
        let layers = radical_filtration(&p1);
        assert_eq!(layers.iter().map(LaurentPoly::eval_one).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(lengths(&p1).unwrap(), (3, 3));
        let l = simple(&sl2(), 0).unwrap();
        l.check().unwrap();
        assert_eq!(lengths(&l).unwrap(), (1, 1));
    }

    #[test]
    fn socles() {
        let p1 = projective(&sl2(), 1).unwrap();
        assert_eq!(socle(&p1).simple_type(), Some((1, 2)));
        let p0 = projective(&nakayama(), 0).unwrap();
        assert_eq!(socle(&p0).simple_type(), Some((1, 1)));
        let s = socle(&p1);
        s.module(&p1).unwrap().check().unwrap();
    }

    #[test]
    fn multiplicities() {
        let p1 = projective(&sl2(), 1).unwrap();
        assert_eq!(graded_multiplicity(&p1, 1), LaurentPoly::from_terms([(0, 1), (2, 1)]));
        let p0 = projective(&nakayama(), 0).unwrap();
        assert_eq!(graded_multiplicity(&p0, 1), LaurentPoly::monomial(1, 1));
    }

    #[test]
    fn duals_and_shifts() {
        let a = sl2();
        let p1 = projective(&a, 1).unwrap();
        let d = dual(&p1).unwrap();
        d.check().unwrap();
        let target = shift(&p1, -2);
        let t = graded_iso(&d, &target).expect("dual of P^v1 is a shift of itself");
        assert!(is_graded_iso(&d, &target, &t));
        assert!(graded_iso(&dual(&d).unwrap(), &p1).is_some());
        assert_eq!(shift(&shift(&p1, 2), -3), shift(&p1, -1));
    }

    #[test]
    fn non_isomorphic_simples() {
        let k = q();
        let mut b = AlgebraBuilder::new(k);
        let e1 = b.basis("e1", 0).unwrap();
        let e2 = b.basis("e2", 0).unwrap();
        b.product(e1, e1, vec![(e1, k.one())]).unwrap();
        b.product(e2, e2, vec![(e2, k.one())]).unwrap();
        b.idempotents(vec![e1, e2]).unwrap();
        let a = Arc::new(b.build().unwrap());
        assert!(graded_iso(&simple(&a, 0).unwrap(), &simple(&a, 1).unwrap()).is_none());
        assert!(graded_iso(&simple(&a, 0).unwrap(), &simple(&a, 0).unwrap()).is_some());
    }

    #[test]
    fn socular_sets() {
        let s = socular_set(&sl2()).unwrap();
        assert_eq!(s.lambda0, vec![1]);
        assert_eq!(s.primed[&1], 1);
        assert!(s.is_involution);

        let n = socular_set(&nakayama()).unwrap();
        assert_eq!(n.lambda0, vec![0, 1]);
        assert_eq!(n.primed[&0], 1);
        assert!(n.is_involution);

        // the same answer without the involution
        let plain = Arc::new(two_cycle(&["b.a"], 4, false).as_ref().clone());
        let s2 = socular_set(&plain).unwrap();
        assert_eq!(s2.route, InjectiveRoute::Opposite);
        assert_eq!(s2.lambda0, vec![1]);
    }
}
