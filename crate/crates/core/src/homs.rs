//! Homomorphisms between indecomposable projectives, the endomorphism
//! algebra `B` of the basic projective-injective module, and forms on it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algcore::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, Scalar};
use crate::gmod::{intertwiner_basis, projective, GradedModule, SocularData};

/// A homogeneous map `P^source → P^target` of the given degree, as a matrix
/// on the deterministic bases of the two projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    pub matrix: Matrix,
}

impl HomElement {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> HomElement {
        HomElement { matrix: self.matrix.scale(s), ..self.clone() }
    }

    /// `self + s * other`; both must live in the same slot.
    pub fn add_scaled(&self, s: &Scalar, other: &HomElement) -> Result<HomElement> {
        if self.slot() != other.slot() {
            return Err(Error::CompositionMismatch("adding maps from different Hom spaces".into()));
        }
        Ok(HomElement { matrix: self.matrix.add_scaled(s, &other.matrix), ..self.clone() })
    }

    pub fn slot(&self) -> (usize, usize, i32) {
        (self.source, self.target, self.degree)
    }

    /// Scaled so that the first nonzero entry in row-major order is 1.
    pub fn normalized(&self) -> HomElement {
        let k = self.matrix.field();
        match self.matrix.first_nonzero() {
            Some((r, c)) => self.scale(&k.inv(self.matrix.get(r, c)).expect("nonzero")),
            None => self.clone(),
        }
    }
}

/// `f ∘ g`: apply `g` first.
pub fn compose(f: &HomElement, g: &HomElement) -> Result<HomElement> {
    if f.source != g.target || f.matrix.cols() != g.matrix.rows() {
        return Err(Error::CompositionMismatch(format!(
            "cannot compose a map out of #{} with a map into #{}",
            f.source, g.target
        )));
    }
    Ok(HomElement { source: g.source, target: f.target, degree: f.degree + g.degree, matrix: f.matrix.mul(&g.matrix) })
}

/// `Hom_A(M, N)` as a basis per degree; empty degrees are omitted.
pub fn hom_space(m: &GradedModule, n: &GradedModule) -> BTreeMap<i32, Vec<Matrix>> {
    let mut out = BTreeMap::new();
    let (Some((mlo, mhi)), Some((nlo, nhi))) = (m.degree_range(), n.degree_range()) else {
        return out;
    };
    for j in (nlo - mhi)..=(nhi - mlo) {
        let basis = intertwiner_basis(m, n, j);
        if !basis.is_empty() {
            out.insert(j, basis);
        }
    }
    out
}

/// Basis of `Hom_A(P^λ, P^μ)_j`, checked against `dim (e_λ A e_μ)_j`.
pub fn projective_hom_basis(
    a: &GradedAlgebra,
    p_lambda: &GradedModule,
    p_mu: &GradedModule,
    lambda: usize,
    mu: usize,
    j: i32,
) -> Result<Vec<HomElement>> {
    let basis = intertwiner_basis(p_lambda, p_mu, j);
    let expected = a.corner_dim(lambda, mu, Some(j));
    if basis.len() != expected {
        return Err(Error::Internal(format!(
            "Hom(P^{}, P^{})_{} has dimension {} but the corner has {}",
            a.lambda_name(lambda),
            a.lambda_name(mu),
            j,
            basis.len(),
            expected
        )));
    }
    Ok(basis.into_iter().map(|matrix| HomElement { source: lambda, target: mu, degree: j, matrix }).collect())
}

/// Structure constants of a finite-dimensional algebra on a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    pub field: Field,
    pub dim: usize,
    /// `products[i * dim + j]` holds the coordinates of `b_i b_j`.
    pub products: Vec<Vec<Scalar>>,
}

impl MultTable {
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim + j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let k = self.field;
        let mut out = vec![k.zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                let ab = k.mul(a, b);
                for (t, c) in self.product(i, j).iter().enumerate() {
                    k.add_mul_assign(&mut out[t], &ab, c);
                }
            }
        }
        out
    }

    /// Coordinates of all commutators `b_i b_j - b_j b_i`, as matrix rows.
    pub fn commutators(&self) -> Matrix {
        let k = self.field;
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let row: Vec<Scalar> =
                    self.product(i, j).iter().zip(self.product(j, i)).map(|(x, y)| k.sub(x, y)).collect();
                if row.iter().any(|v| !k.is_zero(v)) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            Matrix::zeros(k, 0, self.dim)
        } else {
            Matrix::from_rows(k, rows)
        }
    }

    /// Gram matrix of `(x, y) ↦ t(xy)` for a functional given by its values
    /// on the basis.
    pub fn gram(&self, values: &[Scalar]) -> Gram {
        let k = self.field;
        let mut m = Matrix::zeros(k, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, k.dot(self.product(i, j), values));
            }
        }
        let rank = m.rank();
        Gram { nondegenerate: rank == self.dim, symmetric: m.is_symmetric(), rank, matrix: m }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    pub matrix: Matrix,
    pub rank: usize,
    pub nondegenerate: bool,
    pub symmetric: bool,
}

/// A linear functional given by its values on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    pub values: Vec<Scalar>,
    /// `Some(-d)` when the form vanishes outside degree `d`.
    pub homogeneity: Option<i32>,
}

impl TraceForm {
    /// Builds the form and detects its homogeneity degree from the basis
    /// degrees.
    pub fn new(field: Field, values: Vec<Scalar>, degrees: &[i32]) -> TraceForm {
        let mut support = values
            .iter()
            .zip(degrees)
            .filter(|(v, _)| !field.is_zero(v))
            .map(|(_, d)| *d);
        let homogeneity = match support.next() {
            Some(d) if support.all(|e| e == d) => Some(-d),
            _ => None,
        };
        TraceForm { values, homogeneity }
    }
}

/// `B = End_A(⊕_{λ ∈ members} P^λ)` on an appropriate basis: each basis
/// element lives in one `Hom(P^λ, P^μ)_j`, and `θ_λ` is the first element
/// of its slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndB {
    algebra: Arc<GradedAlgebra>,
    members: Vec<usize>,
    projectives: BTreeMap<usize, GradedModule>,
    top_degrees: BTreeMap<usize, i32>,
    primed: BTreeMap<usize, usize>,
    basis: Vec<HomElement>,
    slots: BTreeMap<(usize, usize, i32), Vec<usize>>,
    slot_coords: BTreeMap<(usize, usize, i32), Matrix>,
    thetas: BTreeMap<usize, usize>,
    identities: BTreeMap<usize, usize>,
    table: MultTable,
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

impl EndB {
    /// Builds `B` for the given members of `Λ₀` (all of `Λ₀` when `None`).
    /// `θ_λ` is recorded whenever `λ'` is also a member.
    pub fn build(a: &Arc<GradedAlgebra>, soc: &SocularData, members: Option<&[usize]>) -> Result<EndB> {
        let members: Vec<usize> = match members {
            Some(m) => {
                if let Some(bad) = m.iter().find(|l| !soc.contains(**l)) {
                    return Err(Error::Precondition(format!("{} is not in Λ₀", a.lambda_name(*bad))));
                }
                let mut m = m.to_vec();
                m.sort_unstable();
                m.dedup();
                m
            }
            None => soc.lambda0.clone(),
        };
        if members.is_empty() {
            return Err(Error::Precondition("no projective-injective module".into()));
        }
        let mut projectives = BTreeMap::new();
        for &l in &members {
            projectives.insert(l, projective(a, l)?);
        }
        let top_degrees: BTreeMap<usize, i32> = members.iter().map(|&l| (l, soc.top_degrees[l])).collect();
        let primed: BTreeMap<usize, usize> = members.iter().map(|&l| (l, soc.primed[&l])).collect();

        let mut basis = Vec::new();
        for &l in &members {
            for &m in &members {
                for j in 0..=top_degrees[&m] {
                    let slot = projective_hom_basis(a, &projectives[&l], &projectives[&m], l, m, j)?;
                    if slot.is_empty() {
                        continue;
                    }
                    let is_theta_slot = primed[&l] == m && j == top_degrees[&m];
                    if is_theta_slot {
                        basis.push(theta_in_slot(a, &slot, l)?);
                        // θ first; the rest of the slot stays a complement
                        let theta = basis.last().expect("just pushed").clone();
                        let mut chosen = vec![flatten(&theta.matrix)];
                        for h in slot {
                            chosen.push(flatten(&h.matrix));
                            let len = chosen[0].len();
                            if Matrix::from_columns(a.field(), len, &chosen).rank() == chosen.len() {
                                basis.push(h);
                            } else {
                                chosen.pop();
                            }
                        }
                    } else {
                        basis.extend(slot);
                    }
                }
            }
        }
        EndB::assemble(a.clone(), members, projectives, top_degrees, primed, basis)
    }

    /// Recomputes slots, coordinates and the multiplication table for a new
    /// basis of the same shape.
    fn assemble(
        algebra: Arc<GradedAlgebra>,
        members: Vec<usize>,
        projectives: BTreeMap<usize, GradedModule>,
        top_degrees: BTreeMap<usize, i32>,
        primed: BTreeMap<usize, usize>,
        basis: Vec<HomElement>,
    ) -> Result<EndB> {
        let k = algebra.field();
        let mut slots: BTreeMap<(usize, usize, i32), Vec<usize>> = BTreeMap::new();
        for (i, h) in basis.iter().enumerate() {
            slots.entry(h.slot()).or_default().push(i);
        }
        let mut slot_coords = BTreeMap::new();
        for (key, idx) in &slots {
            let cols: Vec<Vec<Scalar>> = idx.iter().map(|&i| flatten(&basis[i].matrix)).collect();
            let m = Matrix::from_columns(k, cols[0].len(), &cols);
            let l = m
                .left_inverse()
                .ok_or_else(|| Error::Internal("dependent Hom basis".into()))?;
            slot_coords.insert(*key, l);
        }
        let mut thetas = BTreeMap::new();
        for &l in &members {
            let key = (l, primed[&l], top_degrees.get(&primed[&l]).copied().unwrap_or(-1));
            if let Some(idx) = slots.get(&key) {
                thetas.insert(l, idx[0]);
            }
        }
        let identities = members.iter().map(|&l| (l, slots[&(l, l, 0)][0])).collect();

        let n = basis.len();
        let mut b = EndB {
            algebra,
            members,
            projectives,
            top_degrees,
            primed,
            basis,
            slots,
            slot_coords,
            thetas,
            identities,
            table: MultTable { field: k, dim: n, products: Vec::new() },
        };
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (f, g) = (&b.basis[i], &b.basis[j]);
                if f.source != g.target {
                    products.push(vec![k.zero(); n]);
                } else {
                    products.push(b.coordinates(&compose(f, g)?)?);
                }
            }
        }
        b.table.products = products;
        Ok(b)
    }

    /// Same `B` with `θ_λ` replaced by `scales[λ] · θ_λ`.
    pub fn with_rescaled_thetas(&self, scales: &BTreeMap<usize, Scalar>) -> Result<EndB> {
        let mut basis = self.basis.clone();
        for (l, s) in scales {
            let i = *self.thetas.get(l).ok_or(Error::PrimedNotInvolution)?;
            if self.field().is_zero(s) {
                return Err(Error::Precondition("rescaling by zero".into()));
            }
            basis[i] = basis[i].scale(s);
        }
        self.with_basis(basis)
    }

    /// Same `B` on another appropriate basis (same slot layout expected;
    /// `θ`s are taken to be the first element of their slots).
    pub fn with_basis(&self, basis: Vec<HomElement>) -> Result<EndB> {
        EndB::assemble(
            self.algebra.clone(),
            self.members.clone(),
            self.projectives.clone(),
            self.top_degrees.clone(),
            self.primed.clone(),
            basis,
        )
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn projective(&self, l: usize) -> &GradedModule {
        &self.projectives[&l]
    }

    pub fn top_degree(&self, l: usize) -> i32 {
        self.top_degrees[&l]
    }

    pub fn primed(&self, l: usize) -> usize {
        self.primed[&l]
    }

    /// `'` restricted to the members is an involution of the member set.
    pub fn primed_is_involution(&self) -> bool {
        self.members.iter().all(|l| {
            let p = self.primed[l];
            self.primed.get(&p) == Some(l)
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HomElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &HomElement {
        &self.basis[i]
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.basis.iter().map(|h| h.degree).collect()
    }

    pub fn slots(&self) -> &BTreeMap<(usize, usize, i32), Vec<usize>> {
        &self.slots
    }

    pub fn slot(&self, source: usize, target: usize, degree: i32) -> &[usize] {
        self.slots.get(&(source, target, degree)).map_or(&[], Vec::as_slice)
    }

    /// Basis index of `θ_λ`, when `λ'` is a member.
    pub fn theta_index(&self, l: usize) -> Option<usize> {
        self.thetas.get(&l).copied()
    }

    pub fn theta(&self, l: usize) -> Result<&HomElement> {
        self.theta_index(l).map(|i| &self.basis[i]).ok_or(Error::PrimedNotInvolution)
    }

    pub fn identity_index(&self, l: usize) -> usize {
        self.identities[&l]
    }

    pub fn identity(&self, l: usize) -> HomElement {
        let p = &self.projectives[&l];
        HomElement { source: l, target: l, degree: 0, matrix: Matrix::identity(self.field(), p.dim()) }
    }

    pub fn table(&self) -> &MultTable {
        &self.table
    }

    /// Coordinates of a homogeneous map in the basis of `B`.
    pub fn coordinates(&self, h: &HomElement) -> Result<Vec<Scalar>> {
        let k = self.field();
        let mut out = vec![k.zero(); self.dim()];
        if h.is_zero() {
            return Ok(out);
        }
        let key = h.slot();
        let (Some(idx), Some(l)) = (self.slots.get(&key), self.slot_coords.get(&key)) else {
            return Err(Error::Internal(format!("no basis for the Hom space of {key:?}")));
        };
        let v = flatten(&h.matrix);
        let c = l.mul_vec(&v);
        let back: Vec<Scalar> = {
            let mut acc = vec![k.zero(); v.len()];
            for (ci, &bi) in c.iter().zip(idx) {
                for (t, e) in self.basis[bi].matrix.entries().iter().enumerate() {
                    k.add_mul_assign(&mut acc[t], ci, e);
                }
            }
            acc
        };
        if back != v {
            return Err(Error::Internal("map is not in the span of its Hom basis".into()));
        }
        for (ci, &bi) in c.into_iter().zip(idx) {
            out[bi] = ci;
        }
        Ok(out)
    }

    /// The map with the given coordinates; all nonzero coordinates must lie
    /// in one slot.
    pub fn element_from(&self, coords: &[Scalar]) -> Result<HomElement> {
        let k = self.field();
        let mut acc: Option<HomElement> = None;
        for (i, c) in coords.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            acc = Some(match acc {
                None => self.basis[i].scale(c),
                Some(a) => a.add_scaled(c, &self.basis[i])?,
            });
        }
        acc.ok_or_else(|| Error::Precondition("zero element has no slot".into()))
    }

    /// The canonical form attached to the basis: 1 on each `θ_λ`, 0 on every
    /// other basis element.
    pub fn canonical_tr(&self) -> Result<TraceForm> {
        if !self.primed_is_involution() {
            return Err(Error::PrimedNotInvolution);
        }
        let k = self.field();
        let mut values = vec![k.zero(); self.dim()];
        for &i in self.thetas.values() {
            values[i] = k.one();
        }
        Ok(TraceForm::new(k, values, &self.degrees()))
    }

    pub fn gram(&self, t: &TraceForm) -> Gram {
        self.table.gram(&t.values)
    }

    /// Solves `Σ y_i (lhs(b_i)) = rhs` over the basis of one slot.
    fn solve_in_slot<F>(&self, slot: (usize, usize, i32), rhs: &HomElement, lhs: F) -> Result<Option<HomElement>>
    where
        F: Fn(&HomElement) -> Result<HomElement>,
    {
        let k = self.field();
        let idx = self.slot(slot.0, slot.1, slot.2);
        if idx.is_empty() {
            return Ok(None);
        }
        let target = flatten(&rhs.matrix);
        let cols = idx
            .iter()
            .map(|&i| lhs(&self.basis[i]).map(|h| flatten(&h.matrix)))
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(k, target.len(), &cols);
        let Some(y) = m.solve(&target)? else { return Ok(None) };
        let mut coords = vec![k.zero(); self.dim()];
        for (c, &i) in y.into_iter().zip(idx) {
            coords[i] = c;
        }
        if coords.iter().all(|c| k.is_zero(c)) {
            return Ok(None);
        }
        self.element_from(&coords).map(Some)
    }

    /// For `f: P^λ → P^μ` of degree `j`, finds `g` of degree `d_λ' - j` with
    /// `g ∘ f = θ_λ` and `h` of degree `d_μ - j` with `f ∘ h = θ_μ'`.
    pub fn socle_completion(&self, f: &HomElement) -> Result<(HomElement, HomElement)> {
        if !self.primed_is_involution() {
            return Err(Error::PrimedNotInvolution);
        }
        if f.is_zero() {
            return Err(Error::Precondition("socle completion of the zero map".into()));
        }
        let (l, m, j) = f.slot();
        let lp = self.primed(l);
        let mp = self.primed(m);
        let theta_l = self.theta(l)?.clone();
        let theta_mp = self.theta(mp)?.clone();
        let g = self
            .solve_in_slot((m, lp, self.top_degree(lp) - j), &theta_l, |g| compose(g, f))?
            .ok_or_else(|| Error::Internal("no left socle completion".into()))?;
        let h = self
            .solve_in_slot((mp, l, self.top_degree(m) - j), &theta_mp, |h| compose(f, h))?
            .ok_or_else(|| Error::Internal("no right socle completion".into()))?;
        Ok((g, h))
    }

    /// A `g: P^μ → P^λ` with `f ∘ g = θ_μ` and `g ∘ f = θ_λ` for
    /// `f: P^λ → P^μ`, searched over the whole of `Hom(P^μ, P^λ)`.
    pub fn partner(&self, f: &HomElement) -> Result<HomElement> {
        if f.is_zero() {
            return Err(Error::Precondition("partner of the zero map".into()));
        }
        let k = self.field();
        let (l, m, j) = f.slot();
        let theta_l = self.theta(l)?;
        let theta_m = self.theta(m)?;
        if self.primed(l) != l || self.primed(m) != m {
            return Err(Error::Precondition("partners need λ' = λ".into()));
        }
        // g must have degree d_λ - j for g ∘ f to hit θ_λ
        let deg = theta_l.degree - j;
        let idx = self.slot(m, l, deg);
        let mut cols = Vec::new();
        for &i in idx {
            let g = &self.basis[i];
            let mut col = flatten(&compose(f, g)?.matrix);
            col.extend(flatten(&compose(g, f)?.matrix));
            cols.push(col);
        }
        let mut rhs = flatten(&theta_m.matrix);
        rhs.extend(flatten(&theta_l.matrix));
        if cols.is_empty() {
            return Err(Error::Internal("no candidates for a partner".into()));
        }
        let y = Matrix::from_columns(k, rhs.len(), &cols)
            .solve(&rhs)?
            .ok_or_else(|| Error::Internal("partner system is inconsistent".into()))?;
        let mut coords = vec![k.zero(); self.dim()];
        for (c, &i) in y.into_iter().zip(idx) {
            coords[i] = c;
        }
        self.element_from(&coords)
    }
}

/// The unique-up-to-scalar map in `Hom(P^λ, P^λ')_{d_λ'}` whose image is the
/// socle, normalized to first nonzero entry 1.
fn theta_in_slot(a: &GradedAlgebra, slot: &[HomElement], l: usize) -> Result<HomElement> {
    if slot.len() != 1 {
        return Err(Error::Internal(format!(
            "the θ slot of {} has dimension {}, expected 1",
            a.lambda_name(l),
            slot.len()
        )));
    }
    Ok(slot[0].normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::AlgebraBuilder;
    use crate::gmod::socular_set;
    use crate::quiver::{build_algebra, Arrow, QuiverPresentation};

    fn q() -> Field {
        Field::Rationals
    }

    fn two_cycle(relations: &[&str], maxdeg: u32) -> Arc<GradedAlgebra> {
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
        Arc::new(build_algebra(&p).unwrap())
    }

    fn endb(a: &Arc<GradedAlgebra>) -> EndB {
        let soc = socular_set(a).unwrap();
        EndB::build(a, &soc, None).unwrap()
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
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn end_of_kx2() {
        let b = endb(&kx2());
        assert_eq!(b.dim(), 2);
        let theta = b.theta(0).unwrap();
        assert_eq!(theta.degree, 1);
        assert!(compose(theta, theta).unwrap().is_zero());
        let g = b.gram(&b.canonical_tr().unwrap());
        assert_eq!(g.matrix, Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]));
        assert!(g.nondegenerate && g.symmetric);
    }

    #[test]
    fn sl2_hom_dims() {
        let a = two_cycle(&["b.a"], 4);
        let p1 = projective(&a, 1).unwrap();
        let h = hom_space(&p1, &p1);
        let dims: Vec<(i32, usize)> = h.iter().map(|(d, v)| (*d, v.len())).collect();
        assert_eq!(dims, vec![(0, 1), (2, 1)]);
        let b = endb(&a);
        assert_eq!(b.degrees(), vec![0, 2]);
        let t = b.canonical_tr().unwrap();
        assert_eq!(t.homogeneity, Some(-2));
    }

    #[test]
    fn nakayama_is_frobenius_not_symmetric() {
        let b = endb(&two_cycle(&["a.b", "b.a"], 3));
        assert_eq!(b.dim(), 4);
        let th0 = b.theta(0).unwrap();
        assert_eq!((th0.source, th0.target, th0.degree), (0, 1, 1));
        let g = b.gram(&b.canonical_tr().unwrap());
        assert!(g.nondegenerate);
        assert!(!g.symmetric);
    }

    #[test]
    fn zigzag_completion() {
        let a = two_cycle(&["a.b.a", "b.a.b"], 4);
        let b = endb(&a);
        assert_eq!(b.dim(), 6);
        for f in b.basis() {
            let (g, h) = b.socle_completion(f).unwrap();
            let (l, m, j) = f.slot();
            assert_eq!(g.degree, b.top_degree(b.primed(l)) - j);
            assert_eq!(h.degree, b.top_degree(m) - j);
            assert_eq!(&compose(&g, f).unwrap(), b.theta(l).unwrap());
            assert_eq!(&compose(f, &h).unwrap(), b.theta(b.primed(m)).unwrap());
        }
    }

    #[test]
    fn composition_mismatch() {
        let b = endb(&two_cycle(&["a.b", "b.a"], 3));
        let th0 = b.theta(0).unwrap();
        assert!(compose(th0, th0).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let b = endb(&two_cycle(&["a.b.a", "b.a.b"], 4));
        for (i, h) in b.basis().iter().enumerate() {
            let c = b.coordinates(&h.scale(&q().from_i64(3))).unwrap();
            assert_eq!(c[i], q().from_i64(3));
        }
    }
}
