//! Quivers with homogeneous relations, compiled into structure constants by
//! degree-wise linear elimination of the two-sided ideal.
//!
//! Paths are written in function order: `p.q` means "apply `q`, then `p`",
//! so `p.q` is defined when `source(p) = target(q)`.

use std::collections::HashMap;

use crate::algcore::{AlgebraBuilder, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

/// A path; `arrows` are in written order, so the last one is applied first.
/// A trivial path has no arrows and sits at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub source: usize,
}

pub type PathCombination = Vec<(Scalar, Path)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<PathCombination>,
    pub max_degree: u32,
    /// `⋆` on arrows; vertices are fixed. Empty means no involution.
    pub involution: Vec<(usize, PathCombination)>,
}

impl QuiverPresentation {
    pub fn new(field: Field) -> Self {
        QuiverPresentation {
            field,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            max_degree: 0,
            involution: Vec::new(),
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path { arrows: Vec::new(), source: v }
    }

    pub fn target(&self, p: &Path) -> usize {
        p.arrows.first().map_or(p.source, |&a| self.arrows[a].target)
    }

    pub fn degree(&self, p: &Path) -> u32 {
        p.arrows.iter().map(|&a| self.arrows[a].degree).sum()
    }

    /// Path from arrow names in written order, checking that it composes.
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        if names.is_empty() {
            return Err(Error::InvalidQuiver("empty path".into()));
        }
        let arrows = names
            .iter()
            .map(|n| self.arrow_index(n).ok_or_else(|| Error::UnknownLabel(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].source != self.arrows[w[1]].target {
                return Err(Error::InvalidQuiver(format!(
                    "path {} does not compose at {}.{}",
                    names.join("."),
                    self.arrows[w[0]].name,
                    self.arrows[w[1]].name
                )));
            }
        }
        let source = self.arrows[*arrows.last().expect("nonempty")].source;
        Ok(Path { arrows, source })
    }

    /// `p.q` (apply `q` first), if defined.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.source != self.target(q) {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { arrows, source: q.source })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    fn compose_combinations(&self, x: &PathCombination, y: &PathCombination) -> PathCombination {
        let k = self.field;
        let mut out = Vec::new();
        for (c, p) in x {
            for (d, q) in y {
                if let Some(pq) = self.compose(p, q) {
                    out.push((k.mul(c, d), pq));
                }
            }
        }
        out
    }

    /// Structural checks: endpoints exist, degrees positive, relations
    /// homogeneous, involution reverses arrows.
    pub fn check(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        if self.max_degree == 0 {
            return Err(Error::InvalidQuiver("maxdeg must be positive".into()));
        }
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow {} has a dangling endpoint", a.name)));
            }
            if a.degree == 0 {
                return Err(Error::InvalidQuiver(format!("arrow {} must have degree >= 1", a.name)));
            }
        }
        for (index, rel) in self.relations.iter().enumerate() {
            let Some((_, first)) = rel.first() else {
                return Err(Error::InhomogeneousRelation { index, reason: "empty relation".into() });
            };
            let key = |p: &Path| (p.source, self.target(p), self.degree(p));
            for (_, p) in rel {
                if p.arrows.is_empty() {
                    return Err(Error::InhomogeneousRelation { index, reason: "trivial path in relation".into() });
                }
                if key(p) != key(first) {
                    return Err(Error::InhomogeneousRelation {
                        index,
                        reason: format!("{} and {} are not parallel of equal degree", self.path_label(first), self.path_label(p)),
                    });
                }
            }
        }
        for (a, img) in &self.involution {
            let arrow = &self.arrows[*a];
            for (_, p) in img {
                if p.source != arrow.target || self.target(p) != arrow.source || self.degree(p) != arrow.degree {
                    return Err(Error::InvalidQuiver(format!(
                        "involution image {} of arrow {} must be a reversed path of the same degree",
                        self.path_label(p),
                        arrow.name
                    )));
                }
            }
        }
        if !self.involution.is_empty() {
            for (i, a) in self.arrows.iter().enumerate() {
                if !self.involution.iter().any(|(j, _)| *j == i) {
                    return Err(Error::InvalidQuiver(format!("involution missing for arrow {}", a.name)));
                }
            }
        }
        Ok(())
    }
}

/// Normal forms of paths modulo the ideal, degree by degree.
struct Reduction {
    /// Kept degrees are `0..top`; everything of degree `>= top` is zero.
    top: u32,
    /// Per kept degree: path -> combination of basis indices.
    normal: HashMap<Path, Vec<(usize, Scalar)>>,
    basis: Vec<Path>,
}

impl Reduction {
    fn reduce(&self, q: &QuiverPresentation, p: &Path) -> Vec<(usize, Scalar)> {
        if q.degree(p) >= self.top {
            return Vec::new();
        }
        self.normal.get(p).cloned().unwrap_or_default()
    }

    fn reduce_combination(&self, q: &QuiverPresentation, x: &PathCombination, n: usize) -> Vec<Scalar> {
        let k = q.field;
        let mut v = vec![k.zero(); n];
        for (c, p) in x {
            for (i, d) in self.reduce(q, p) {
                k.add_mul_assign(&mut v[i], c, &d);
            }
        }
        v
    }
}

fn enumerate_paths(q: &QuiverPresentation) -> Vec<Vec<Path>> {
    let maxd = q.max_degree as usize;
    let mut by_degree: Vec<Vec<Path>> = vec![Vec::new(); maxd + 1];
    by_degree[0] = (0..q.vertices.len()).map(|v| q.trivial(v)).collect();
    for d in 0..=maxd {
        let current = by_degree[d].clone();
        for p in &current {
            let t = q.target(p);
            for (ai, a) in q.arrows.iter().enumerate() {
                let nd = d + a.degree as usize;
                if a.source == t && nd <= maxd {
                    let mut arrows = vec![ai];
                    arrows.extend_from_slice(&p.arrows);
                    by_degree[nd].push(Path { arrows, source: p.source });
                }
            }
        }
    }
    for level in &mut by_degree {
        level.sort();
        level.dedup();
    }
    by_degree
}

fn reduce_ideal(q: &QuiverPresentation, paths: &[Vec<Path>]) -> Result<Reduction> {
    let k = q.field;
    let maxd = q.max_degree;
    let window = q.arrows.iter().map(|a| a.degree).max().unwrap_or(1);
    let top = maxd.saturating_sub(window - 1).max(1).min(maxd);

    let mut normal = HashMap::new();
    let mut basis_by_degree: Vec<Vec<Path>> = Vec::new();
    for d in 0..=maxd {
        let level = &paths[d as usize];
        // Columns in descending lex order, so pivots land on the largest
        // paths and the lexicographically smallest ones survive as basis.
        let columns: Vec<&Path> = level.iter().rev().collect();
        let col_of: HashMap<&Path, usize> = columns.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for rel in &q.relations {
            let rd = q.degree(&rel[0].1);
            if rd > d {
                continue;
            }
            let (rs, rt) = (rel[0].1.source, q.target(&rel[0].1));
            for dw in 0..=(d - rd) {
                let du = d - rd - dw;
                for w in paths[dw as usize].iter().filter(|w| q.target(w) == rs) {
                    for u in paths[du as usize].iter().filter(|u| u.source == rt) {
                        let mut row = vec![k.zero(); columns.len()];
                        for (c, p) in rel {
                            let upw = q
                                .compose(u, p)
                                .and_then(|up| q.compose(&up, w))
                                .expect("endpoints were matched");
                            let col = col_of[&upw];
                            row[col] = k.add(&row[col], c);
                        }
                        rows.push(row);
                    }
                }
            }
        }

        let (pivot_rows, pivots) = if rows.is_empty() {
            (Matrix::zeros(k, 0, columns.len()), Vec::new())
        } else {
            let r = Matrix::from_rows(k, rows).rref();
            (r.matrix, r.pivots)
        };
        let mut kept: Vec<Path> = (0..columns.len())
            .filter(|c| !pivots.contains(c))
            .map(|c| columns[c].clone())
            .collect();
        kept.sort();

        if d >= top && !kept.is_empty() {
            return Err(Error::NotFiniteDimensional { degree: d, dim: kept.len() });
        }
        if d < top {
            basis_by_degree.push(kept);
            let offset: usize = basis_by_degree[..d as usize].iter().map(Vec::len).sum();
            let index_of: HashMap<&Path, usize> = basis_by_degree[d as usize]
                .iter()
                .enumerate()
                .map(|(i, p)| (p, offset + i))
                .collect();
            for (c, p) in columns.iter().enumerate() {
                if let Some(&i) = index_of.get(*p) {
                    normal.insert((*p).clone(), vec![(i, k.one())]);
                }
                let _ = c;
            }
            for (r, &pc) in pivots.iter().enumerate() {
                let mut nf = Vec::new();
                for c in 0..columns.len() {
                    if c == pc || pivots.contains(&c) {
                        continue;
                    }
                    let v = pivot_rows.get(r, c);
                    if !k.is_zero(v) {
                        nf.push((index_of[columns[c]], k.neg(v)));
                    }
                }
                normal.insert(columns[pc].clone(), nf);
            }
        }
    }
    Ok(Reduction { top, normal, basis: basis_by_degree.into_iter().flatten().collect() })
}

/// Compiles the presentation into a [`GradedAlgebra`]. The basis is ordered
/// by degree, then lexicographically by arrow sequence; vertices become `Λ`.
pub fn build_algebra(q: &QuiverPresentation) -> Result<GradedAlgebra> {
    q.check()?;
    let k = q.field;
    let paths = enumerate_paths(q);
    let red = reduce_ideal(q, &paths)?;
    let n = red.basis.len();

    let mut b = AlgebraBuilder::new(k);
    for p in &red.basis {
        b.basis(q.path_label(p), q.degree(p) as i32)?;
    }
    for (i, p) in red.basis.iter().enumerate() {
        for (j, r) in red.basis.iter().enumerate() {
            let Some(pr) = q.compose(p, r) else { continue };
            let nf = red.reduce(q, &pr);
            if !nf.is_empty() {
                b.product(i, j, nf)?;
            }
        }
    }
    let idempotents = (0..q.vertices.len())
        .map(|v| red.basis.iter().position(|p| *p == q.trivial(v)).expect("trivial paths are never reduced"))
        .collect();
    b.idempotents(idempotents)?;
    b.lambda_names(q.vertices.clone());

    if !q.involution.is_empty() {
        let star_arrow: HashMap<usize, &PathCombination> = q.involution.iter().map(|(a, c)| (*a, c)).collect();
        for (i, p) in red.basis.iter().enumerate() {
            let mut acc: PathCombination = vec![(k.one(), q.trivial(q.target(p)))];
            // (x1.x2...xm)^* = xm^* . ... . x1^*; x1 is applied last, so its
            // image is applied first.
            for a in &p.arrows {
                acc = q.compose_combinations(star_arrow[a], &acc);
            }
            if p.arrows.is_empty() {
                acc = vec![(k.one(), p.clone())];
            }
            let v = red.reduce_combination(q, &acc, n);
            let terms = v.into_iter().enumerate().filter(|(_, c)| !k.is_zero(c)).collect();
            b.involution(i, terms)?;
        }
    }
    b.build()
}
