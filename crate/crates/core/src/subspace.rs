//! Canonical bases for subspaces of ℚ^d.
//!
//! A [`SubspaceBasis`] stores the unique reduced-echelon basis of the row
//! space of its generating vectors, so two subspaces are equal exactly when
//! their stored bases are. The empty basis is the zero subspace.

use serde::Serialize;

use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    /// Linearly independent vectors; as rows they form a matrix in RREF.
    pub vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    /// Canonical basis of the span of arbitrary generating vectors.
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        if vectors.is_empty() {
            return SubspaceBasis::zero(ambient_dim);
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let vectors = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut v = v.to_vec();
        for row in &self.vectors {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !v[pivot].is_zero() {
                let f = v[pivot].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = &*a - &(&f * b);
                }
            }
        }
        v.iter().all(Rational::is_zero)
    }

    /// True iff every vector of `self` lies in the span of `outer`, decided
    /// by one rank computation on the stacked matrix.
    pub fn is_subspace_of(&self, outer: &SubspaceBasis) -> Result<bool> {
        if self.ambient_dim != outer.ambient_dim {
            return Err(Error::AmbientDimensionMismatch(
                self.ambient_dim,
                outer.ambient_dim,
            ));
        }
        if self.is_zero() {
            return Ok(true);
        }
        let mut stacked = outer.vectors.clone();
        stacked.extend(self.vectors.iter().cloned());
        Ok(Matrix::from_rows(stacked).rank() == outer.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn span(dim: usize, vs: &[&[i64]]) -> SubspaceBasis {
        SubspaceBasis::from_spanning(
            dim,
            vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect(),
        )
    }

    #[test]
    fn zero_subspace_is_contained_in_anything() {
        let z = SubspaceBasis::zero(2);
        let s = span(2, &[&[0, 1]]);
        assert!(z.is_subspace_of(&s).unwrap());
        assert!(z.is_subspace_of(&z).unwrap());
    }

    #[test]
    fn axis_lines_are_incomparable() {
        let x = span(2, &[&[1, 0]]);
        let y = span(2, &[&[0, 1]]);
        assert!(!x.is_subspace_of(&y).unwrap());
        assert!(!y.is_subspace_of(&x).unwrap());
    }

    #[test]
    fn two_independent_vectors_span_the_plane() {
        let s = span(2, &[&[1, 1], &[1, -1]]);
        let full = span(2, &[&[1, 0], &[0, 1]]);
        assert!(s.is_subspace_of(&full).unwrap());
        assert!(full.is_subspace_of(&s).unwrap());
        assert_eq!(s, full); // canonical form makes equality literal
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = span(2, &[&[1, 0]]);
        let b = span(3, &[&[1, 0, 0]]);
        assert!(matches!(
            a.is_subspace_of(&b),
            Err(Error::AmbientDimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn membership() {
        let s = span(3, &[&[1, 0, 1], &[0, 1, 1]]);
        assert!(s.contains(&[q(2), q(3), q(5)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
    }

    #[test]
    fn spanning_set_with_dependencies_collapses() {
        let s = span(3, &[&[1, 2, 3], &[2, 4, 6], &[0, 0, 0]]);
        assert_eq!(s.dim(), 1);
    }
}
