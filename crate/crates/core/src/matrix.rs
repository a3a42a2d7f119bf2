//! Dense matrices over the exact scalar tower.
//!
//! `Matrix<Rational>` supports reduced row echelon form and nullspaces;
//! `Matrix<DeltaPoly>` is the carrier for parametric systems (see
//! [`crate::bareiss`] for their elimination) and can be evaluated at a fixed
//! rational δ.

use serde::Serialize;

use crate::poly::DeltaPoly;
use crate::rational::Rational;

/// Row-major rectangular matrix. `entries.len() == rows * cols` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<Vec<T>>")]
pub struct Matrix<T: Clone> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> From<Matrix<T>> for Vec<Vec<T>> {
    fn from(m: Matrix<T>) -> Self {
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl Matrix<Rational> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, rhs: &Matrix<Rational>) -> Matrix<Rational> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() {
                    acc += &(self.at(i, k) * rhs.at(k, j));
                }
            }
            acc
        })
    }

    /// `m · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() {
                        acc += &(self.at(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Matrix<Rational> {
        self.map(|x| x * c)
    }

    pub fn add(&self, rhs: &Matrix<Rational>) -> Matrix<Rational> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &Matrix<Rational>) -> Matrix<Rational> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn trace(&self) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.at(i, i);
        }
        acc
    }

    /// Reduced row echelon form.
    ///
    /// Returns the RREF together with the strictly increasing pivot columns;
    /// the rank is their count. The RREF of a matrix is unique, so the output
    /// is canonical. Empty matrices are allowed and have rank 0.
    pub fn rref(&self) -> (Matrix<Rational>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).recip();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &(&f * m.at(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : m·v = 0}`, as rows of the returned matrix in canonical
    /// reduced echelon form. The dimension is `cols − rank`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut free = Vec::new();
        for c in 0..m.cols {
            if piv_iter.peek() == Some(&c) {
                piv_iter.next();
            } else {
                free.push(c);
            }
        }
        for &fc in &free {
            let mut v = vec![Rational::zero(); m.cols];
            v[fc] = Rational::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(ri, fc);
            }
            basis.push(v);
        }
        // canonicalize: basis rows in reduced echelon form
        if basis.is_empty() {
            return basis;
        }
        let (canon, _) = Matrix::from_rows(basis).rref();
        (0..canon.rows()).map(|i| canon.row(i).to_vec()).collect()
    }
}

impl Matrix<DeltaPoly> {
    /// Substitutes a fixed rational δ into every entry.
    pub fn eval(&self, delta: &Rational) -> Matrix<Rational> {
        self.map(|p| p.eval(delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = Matrix::identity(2);
        let (r, piv) = m.rref();
        assert_eq!(r, m);
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::zero(3, 3);
        let (r, piv) = m.rref();
        assert_eq!(r, m);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_dependent_rows() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let (r, piv) = m.rref();
        assert_eq!(r, mat(&[&[1, 2], &[0, 0]]));
        assert_eq!(piv, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_identity_is_trivial() {
        assert!(Matrix::identity(3).nullspace().is_empty());
    }

    #[test]
    fn nullspace_difference_row() {
        let ns = mat(&[&[1, -1]]).nullspace();
        assert_eq!(ns, vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = mat(&[&[2, 3, 5], &[0, 1, -1]]);
        for v in m.nullspace() {
            assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
        assert_eq!(m.nullspace().len(), 3 - m.rank());
    }

    #[test]
    fn empty_matrix_rank_zero() {
        let m = Matrix::<Rational>::from_rows(vec![]);
        assert_eq!(m.rank(), 0);
    }
}
