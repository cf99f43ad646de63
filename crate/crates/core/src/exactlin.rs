//! Dense exact matrices over a [`Field`]: echelon forms, kernels, solving and
//! congruent diagonalization of symmetric forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows whose entries already lie in `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    /// A `len × columns.len()` matrix with the given columns.
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let k = self.field;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if k.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape mismatch");
        let k = self.field;
        Matrix {
            field: k,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let k = self.field;
        Matrix {
            field: k,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| k.mul(a, s)).collect(),
        }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Scalar, other: &Matrix) -> Matrix {
        self.add(&other.scale(s))
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.transpose().vstack(&other.transpose()).transpose()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        let k = self.field;
        self.data.iter().position(|v| !k.is_zero(v)).map(|i| (i / self.cols, i % self.cols))
    }

    pub fn rref(&self) -> Rref {
        let k = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if k.is_zero(&f) {
                    continue;
                }
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), &k.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Kernel basis as the columns of the returned `cols × nullity` matrix.
    /// Column `i` has a 1 at the `i`-th free variable and zeros at the others.
    pub fn kernel(&self) -> Matrix {
        let k = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(k, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, k.one());
            for (r, &p) in pivots.iter().enumerate() {
                out.set(p, j, k.neg(matrix.get(r, f)));
            }
        }
        out
    }

    /// Some `x` with `self * x = b`, free variables pinned to zero; `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let k = self.field;
        let aug = self.hstack(&Matrix::from_columns(k, self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![k.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(matrix.select(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `L` with `L * self = I`, for a matrix of full column rank. `L * w`
    /// gives the coordinates of any `w` in the column space.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let rows = self.transpose().independent_columns();
        if rows.len() < self.cols {
            return None;
        }
        let all: Vec<usize> = (0..self.cols).collect();
        let inv = self.select(&rows, &all).inverse()?;
        let mut l = Matrix::zeros(self.field, self.cols, self.rows);
        for (j, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, r, inv.get(i, j).clone());
            }
        }
        Some(l)
    }

    /// Indices of a maximal independent subset of the columns, chosen greedily
    /// from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| self.field.format(v)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Congruent diagonalization of a symmetric matrix over a field of
/// characteristic other than two: returns an invertible `P` and the diagonal
/// of `Pᵀ S P`. No square roots are taken. `None` if `s` is not symmetric.
pub fn congruent_diagonalize(s: &Matrix) -> Option<(Matrix, Vec<Scalar>)> {
    if !s.is_symmetric() {
        return None;
    }
    let k = s.field();
    let n = s.rows();
    let mut cur = s.clone();
    let mut p = Matrix::identity(k, n);

    // Basis change e_dst <- e_dst + f * e_src, applied as a column operation on
    // `p` and a congruence on `cur`.
    let add_basis = |cur: &mut Matrix, p: &mut Matrix, dst: usize, src: usize, f: &Scalar| {
        for r in 0..n {
            let v = k.add(p.get(r, dst), &k.mul(f, p.get(r, src)));
            p.set(r, dst, v);
        }
        for r in 0..n {
            let v = k.add(cur.get(r, dst), &k.mul(f, cur.get(r, src)));
            cur.set(r, dst, v);
        }
        for c in 0..n {
            let v = k.add(cur.get(dst, c), &k.mul(f, cur.get(src, c)));
            cur.set(dst, c, v);
        }
    };

    for i in 0..n {
        if k.is_zero(cur.get(i, i)) {
            if let Some(j) = (i + 1..n).find(|&j| !k.is_zero(cur.get(j, j))) {
                // new S_ii = 2f S_ij + f^2 S_jj; f = 1 and f = -1 cannot both vanish
                let sum = k.add(&k.add(cur.get(i, j), cur.get(i, j)), cur.get(j, j));
                let f = if k.is_zero(&sum) { k.from_i64(-1) } else { k.one() };
                add_basis(&mut cur, &mut p, i, j, &f);
            } else if let Some(j) = (i + 1..n).find(|&j| !k.is_zero(cur.get(i, j))) {
                // S_ii = S_jj = 0, so the new S_ii is 2 S_ij.
                add_basis(&mut cur, &mut p, i, j, &k.one());
            } else {
                continue;
            }
        }
        let pivot = cur.get(i, i).clone();
        for j in i + 1..n {
            if k.is_zero(cur.get(i, j)) {
                continue;
            }
            let f = k.neg(&k.div(cur.get(i, j), &pivot).expect("nonzero pivot"));
            add_basis(&mut cur, &mut p, j, i, &f);
        }
    }
    let diag = (0..n).map(|i| cur.get(i, i).clone()).collect();
    Some((p, diag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn left_inverse_recovers_coordinates() {
        let b = Matrix::from_i64(q(), &[&[1, 0], &[2, 1], &[4, 2]]);
        let l = b.left_inverse().unwrap();
        assert_eq!(l.mul(&b), Matrix::identity(q(), 2));
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).left_inverse().is_none());
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(q(), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_permutation() {
        let m = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::identity(q(), 2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernels() {
        assert_eq!(Matrix::zeros(q(), 2, 2).kernel().cols(), 2);
        assert_eq!(Matrix::identity(q(), 3).kernel().cols(), 0);
        let k = Matrix::from_i64(q(), &[&[1, 1]]).kernel();
        assert_eq!(k, Matrix::from_i64(q(), &[&[-1], &[1]]));
    }

    #[test]
    fn solves() {
        let id = Matrix::identity(q(), 2);
        let b = vec![q().from_i64(3), q().from_i64(5)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[q().from_i64(1), q().from_i64(3)]).unwrap(), None);

        let m = Matrix::from_i64(q(), &[&[1, 1]]);
        assert_eq!(m.solve(&[q().from_i64(2)]).unwrap(), Some(vec![q().from_i64(2), q().zero()]));

        assert!(matches!(m.solve(&[]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_over_prime_field() {
        let k = Field::prime(5).unwrap();
        let m = Matrix::from_i64(k, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(k, 2));
        assert!(Matrix::from_i64(k, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn congruent_diagonalization_of_hyperbolic_plane() {
        let s = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        let (p, d) = congruent_diagonalize(&s).unwrap();
        assert!(p.is_invertible());
        let c = p.transpose().mul(&s).mul(&p);
        assert_eq!(c.get(0, 1), &q().zero());
        assert_eq!(c.get(0, 0), &d[0]);
        assert!(d.iter().all(|v| !q().is_zero(v)));
    }

    #[test]
    fn congruent_diagonalization_rejects_asymmetric() {
        let s = Matrix::from_i64(q(), &[&[0, 1], &[-1, 0]]);
        assert!(congruent_diagonalize(&s).is_none());
    }
}
