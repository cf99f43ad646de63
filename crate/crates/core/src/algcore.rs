//! Finite-dimensional positively graded basic algebras given by structure
//! constants on a homogeneous basis.

use std::collections::{BTreeMap, HashMap};

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, Scalar};

/// A graded algebra `A` with an ordered list `Λ` of primitive orthogonal
/// idempotents and an optional degree-0 anti-involution `⋆`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<i32>,
    /// `products[i * n + j]` is `x_i x_j` in basis coordinates.
    products: Vec<Vec<Scalar>>,
    idempotents: Vec<usize>,
    lambda_names: Vec<String>,
    involution: Option<Vec<Vec<Scalar>>>,
}

/// Incremental construction of a [`GradedAlgebra`]; only structural sanity
/// (indices, duplicates) is checked here, the algebra axioms are checked by
/// [`validate`].
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<i32>,
    products: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    idempotents: Vec<usize>,
    lambda_names: Option<Vec<String>>,
    involution: BTreeMap<usize, Vec<(usize, Scalar)>>,
}

impl AlgebraBuilder {
    pub fn new(field: Field) -> Self {
        AlgebraBuilder {
            field,
            labels: Vec::new(),
            degrees: Vec::new(),
            products: BTreeMap::new(),
            idempotents: Vec::new(),
            lambda_names: None,
            involution: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&mut self, label: impl Into<String>, degree: i32) -> Result<usize> {
        let label = label.into();
        if self.labels.contains(&label) {
            return Err(Error::InvalidAlgebra(format!("duplicate basis label `{label}`")));
        }
        self.labels.push(label);
        self.degrees.push(degree);
        Ok(self.labels.len() - 1)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Declares `x_i x_j`. Declaring the same product twice is an error.
    pub fn product(&mut self, i: usize, j: usize, terms: Vec<(usize, Scalar)>) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        for (t, _) in &terms {
            self.check_index(*t)?;
        }
        if self.products.insert((i, j), terms).is_some() {
            return Err(Error::InvalidAlgebra(format!(
                "product {} * {} declared twice",
                self.labels[i], self.labels[j]
            )));
        }
        Ok(())
    }

    pub fn idempotents(&mut self, idx: Vec<usize>) -> Result<()> {
        for &i in &idx {
            self.check_index(i)?;
        }
        self.idempotents = idx;
        Ok(())
    }

    /// Names for the elements of `Λ`; defaults to the idempotent labels.
    pub fn lambda_names(&mut self, names: Vec<String>) {
        self.lambda_names = Some(names);
    }

    pub fn involution(&mut self, i: usize, terms: Vec<(usize, Scalar)>) -> Result<()> {
        self.check_index(i)?;
        for (t, _) in &terms {
            self.check_index(*t)?;
        }
        if self.involution.insert(i, terms).is_some() {
            return Err(Error::InvalidAlgebra(format!("involution of {} declared twice", self.labels[i])));
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.labels.len() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!("basis index {i} out of range")))
        }
    }

    pub fn build(self) -> Result<GradedAlgebra> {
        let n = self.labels.len();
        let k = self.field;
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        }
        if self.idempotents.is_empty() {
            return Err(Error::InvalidAlgebra("no idempotents declared".into()));
        }
        let mut seen = self.idempotents.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.idempotents.len() {
            return Err(Error::InvalidAlgebra("repeated idempotent".into()));
        }
        let dense = |terms: &[(usize, Scalar)]| {
            let mut v = vec![k.zero(); n];
            for (t, c) in terms {
                v[*t] = k.add(&v[*t], c);
            }
            v
        };
        let mut products = vec![vec![k.zero(); n]; n * n];
        for (&(i, j), terms) in &self.products {
            products[i * n + j] = dense(terms);
        }
        let involution = if self.involution.is_empty() {
            None
        } else {
            let mut star = Vec::with_capacity(n);
            for i in 0..n {
                let terms = self.involution.get(&i).ok_or_else(|| {
                    Error::InvalidAlgebra(format!("involution missing for basis element {}", self.labels[i]))
                })?;
                star.push(dense(terms));
            }
            Some(star)
        };
        let lambda_names = match self.lambda_names {
            Some(names) if names.len() == self.idempotents.len() => names,
            Some(_) => return Err(Error::InvalidAlgebra("wrong number of vertex names".into())),
            None => self.idempotents.iter().map(|&i| self.labels[i].clone()).collect(),
        };
        Ok(GradedAlgebra {
            field: k,
            labels: self.labels,
            degrees: self.degrees,
            products,
            idempotents: self.idempotents,
            lambda_names,
            involution,
        })
    }
}

impl GradedAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `x_i x_j` in basis coordinates.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim() + j]
    }

    /// Number of simples, `|Λ|`.
    pub fn lambda_count(&self) -> usize {
        self.idempotents.len()
    }

    /// Basis index of `e_λ`.
    pub fn idempotent(&self, lambda: usize) -> usize {
        self.idempotents[lambda]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn lambda_name(&self, lambda: usize) -> &str {
        &self.lambda_names[lambda]
    }

    pub fn lambda_names(&self) -> &[String] {
        &self.lambda_names
    }

    pub fn lambda_index(&self, name: &str) -> Option<usize> {
        self.lambda_names.iter().position(|l| l == name)
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    /// `x_i^⋆` in basis coordinates.
    pub fn star(&self, i: usize) -> Option<&[Scalar]> {
        self.involution.as_ref().map(|s| s[i].as_slice())
    }

    pub fn star_vec(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let star = self.involution.as_ref()?;
        let k = self.field;
        let mut out = vec![k.zero(); self.dim()];
        for (i, c) in x.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            for (t, v) in star[i].iter().enumerate() {
                k.add_mul_assign(&mut out[t], c, v);
            }
        }
        Some(out)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let k = self.field;
        let mut v = vec![k.zero(); self.dim()];
        v[i] = k.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let k = self.field;
        let n = self.dim();
        let mut out = vec![k.zero(); n];
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

    /// Matrix of `y ↦ x_i y`.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.product(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, n, &cols)
    }

    /// Matrix of `y ↦ y x_j`.
    pub fn right_matrix(&self, j: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| self.product(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, n, &cols)
    }

    /// Indices of basis elements of positive degree; they span `rad A`
    /// whenever `A₀` is spanned by the idempotents.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] > 0).collect()
    }

    pub fn max_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Basis dimension per degree, from degree 0 to the top degree.
    pub fn degree_dims(&self) -> Vec<usize> {
        let top = self.max_degree().max(0) as usize;
        let mut dims = vec![0; top + 1];
        for &d in &self.degrees {
            if d >= 0 {
                dims[d as usize] += 1;
            }
        }
        dims
    }

    /// `dim e_λ A e_μ` restricted to basis degree `d` (`None`: all degrees).
    pub fn corner_dim(&self, lambda: usize, mu: usize, degree: Option<i32>) -> usize {
        let el = self.basis_vector(self.idempotent(lambda));
        let em = self.basis_vector(self.idempotent(mu));
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .filter(|&i| degree.map_or(true, |d| self.degrees[i] == d))
            .map(|i| self.mul(&self.mul(&el, &self.basis_vector(i)), &em))
            .collect();
        if cols.is_empty() {
            return 0;
        }
        Matrix::from_columns(self.field, self.dim(), &cols).rank()
    }

    /// The opposite algebra: same basis, `x ·ₒₚ y = y x`.
    pub fn opposite(&self) -> GradedAlgebra {
        let n = self.dim();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(self.product(j, i).to_vec());
            }
        }
        GradedAlgebra { products, ..self.clone() }
    }

    /// Same algebra on a reordered basis: new element `k` is old element
    /// `perm[k]`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<GradedAlgebra> {
        let n = self.dim();
        check_permutation(perm, n)?;
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let remap = |v: &[Scalar]| -> Vec<Scalar> { (0..n).map(|new| v[perm[new]].clone()).collect() };
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(remap(self.product(perm[i], perm[j])));
            }
        }
        Ok(GradedAlgebra {
            field: self.field,
            labels: perm.iter().map(|&o| self.labels[o].clone()).collect(),
            degrees: perm.iter().map(|&o| self.degrees[o]).collect(),
            products,
            idempotents: self.idempotents.iter().map(|&o| inv[o]).collect(),
            lambda_names: self.lambda_names.clone(),
            involution: self.involution.as_ref().map(|s| perm.iter().map(|&o| remap(&s[o])).collect()),
        })
    }

    /// Same algebra with `Λ` reordered: new simple `k` is old simple `perm[k]`.
    pub fn permute_lambda(&self, perm: &[usize]) -> Result<GradedAlgebra> {
        check_permutation(perm, self.lambda_count())?;
        Ok(GradedAlgebra {
            idempotents: perm.iter().map(|&o| self.idempotents[o]).collect(),
            lambda_names: perm.iter().map(|&o| self.lambda_names[o].clone()).collect(),
            ..self.clone()
        })
    }

    fn fmt_vec(&self, v: &[Scalar]) -> String {
        let k = self.field;
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| if k.is_one(c) { self.labels[i].clone() } else { format!("{}*{}", k.format(c), self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidAlgebra("permutation has wrong length".into()));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidAlgebra("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// One invariant check with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub involution_present: bool,
    /// Permutation of `Λ` induced by `e_λ ↦ e_λ^⋆` when that is well defined.
    pub star_permutation: Option<Vec<usize>>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `⋆` fixes every simple: `e_λ^⋆ = e_λ`.
    pub fn star_fixes_simples(&self) -> bool {
        self.star_permutation
            .as_ref()
            .is_some_and(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, witness: Option<String>) -> Check {
    Check { name, passed: witness.is_none(), witness }
}

/// Checks grading, associativity, unit, idempotents, the degree-0 slice and
/// the anti-involution. Never fails; failures are report entries.
pub fn validate(a: &GradedAlgebra) -> ValidationReport {
    let k = a.field;
    let n = a.dim();
    let mut checks = Vec::new();

    checks.push(check(
        "nonnegative-degrees",
        (0..n).find(|&i| a.degrees[i] < 0).map(|i| format!("deg {} = {}", a.labels[i], a.degrees[i])),
    ));

    let homog = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let target = a.degrees[i] + a.degrees[j];
            a.product(i, j)
                .iter()
                .enumerate()
                .find(|(t, c)| !k.is_zero(c) && a.degrees[*t] != target)
                .map(|(t, _)| format!("{} * {} has a {} term", a.labels[i], a.labels[j], a.labels[t]))
        });
    checks.push(check("homogeneous-products", homog));

    let mut assoc = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let xy = a.product(i, j);
            for l in 0..n {
                let left = a.mul(xy, &a.basis_vector(l));
                let right = a.mul(&a.basis_vector(i), a.product(j, l));
                if left != right {
                    assoc = Some(format!("({}, {}, {})", a.labels[i], a.labels[j], a.labels[l]));
                    break 'outer;
                }
            }
        }
    }
    checks.push(check("associativity", assoc));

    let mut idem = None;
    'idem: for (li, &ei) in a.idempotents.iter().enumerate() {
        for (mi, &ej) in a.idempotents.iter().enumerate() {
            let expect = if li == mi { a.basis_vector(ei) } else { a.zero_vector() };
            if a.product(ei, ej) != expect.as_slice() {
                idem = Some(format!("{} * {} = {}", a.labels[ei], a.labels[ej], a.fmt_vec(a.product(ei, ej))));
                break 'idem;
            }
        }
    }
    checks.push(check("orthogonal-idempotents", idem));

    let mut unit_vec = a.zero_vector();
    for &e in &a.idempotents {
        unit_vec[e] = k.add(&unit_vec[e], &k.one());
    }
    let unit = (0..n).find_map(|i| {
        let x = a.basis_vector(i);
        if a.mul(&unit_vec, &x) != x {
            Some(format!("1 * {} = {}", a.labels[i], a.fmt_vec(&a.mul(&unit_vec, &x))))
        } else if a.mul(&x, &unit_vec) != x {
            Some(format!("{} * 1 = {}", a.labels[i], a.fmt_vec(&a.mul(&x, &unit_vec))))
        } else {
            None
        }
    });
    checks.push(check("unit", unit));

    let slice = a
        .idempotents
        .iter()
        .find(|&&e| a.degrees[e] != 0)
        .map(|&e| format!("idempotent {} has degree {}", a.labels[e], a.degrees[e]))
        .or_else(|| {
            (0..n)
                .find(|i| a.degrees[*i] == 0 && !a.idempotents.contains(i))
                .map(|i| format!("degree-0 element {} is not an idempotent of Λ", a.labels[i]))
        });
    checks.push(check("degree-zero-slice", slice));

    let mut star_permutation = None;
    if let Some(star) = &a.involution {
        let deg = (0..n).find_map(|i| {
            star[i]
                .iter()
                .enumerate()
                .find(|(t, c)| !k.is_zero(c) && a.degrees[*t] != a.degrees[i])
                .map(|(t, _)| format!("{}^* has a {} term", a.labels[i], a.labels[t]))
        });
        checks.push(check("involution-degree", deg));

        let invol = (0..n).find_map(|i| {
            let back = a.star_vec(&star[i]).expect("involution present");
            (back != a.basis_vector(i)).then(|| format!("({}^*)^* = {}", a.labels[i], a.fmt_vec(&back)))
        });
        checks.push(check("involution-involutive", invol));

        let mut anti = None;
        'anti: for i in 0..n {
            for j in 0..n {
                let lhs = a.star_vec(a.product(i, j)).expect("involution present");
                let rhs = a.mul(&star[j], &star[i]);
                if lhs != rhs {
                    anti = Some(format!("({} * {})^* != {}^* * {}^*", a.labels[i], a.labels[j], a.labels[j], a.labels[i]));
                    break 'anti;
                }
            }
        }
        checks.push(check("involution-anti-multiplicative", anti));

        let mut perm = Vec::new();
        let mut bad = None;
        for &e in &a.idempotents {
            let img = &star[e];
            match a.idempotents.iter().position(|&f| img.as_slice() == a.basis_vector(f).as_slice()) {
                Some(p) => perm.push(p),
                None => {
                    bad = Some(format!("{}^* = {} is not in Λ", a.labels[e], a.fmt_vec(img)));
                    break;
                }
            }
        }
        if bad.is_none() {
            star_permutation = Some(perm);
        }
        checks.push(check("involution-permutes-idempotents", bad));
    }

    ValidationReport { checks, involution_present: a.involution.is_some(), star_permutation }
}

/// Linkage classes of `Λ`: `λ ~ μ` when `e_λ A e_μ ≠ 0` or `e_μ A e_λ ≠ 0`.
/// Blocks are sorted internally and ordered by their least element.
pub fn blocks(a: &GradedAlgebra) -> Vec<Vec<usize>> {
    let m = a.lambda_count();
    let mut uf = UnionFind::<usize>::new(m);
    for l in 0..m {
        for u in 0..m {
            if l != u && a.corner_dim(l, u, None) > 0 {
                uf.union(l, u);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for l in 0..m {
        groups.entry(uf.find(l)).or_default().push(l);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}
