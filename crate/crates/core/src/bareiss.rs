//! Fraction-free elimination of matrices of δ-polynomials.
//!
//! Bareiss' one-step algorithm keeps every intermediate entry a minor of the
//! (permuted) input matrix, so the divisions below are exact and entries stay
//! polynomial. Full pivoting is used, preferring the nonzero entry of lowest
//! polynomial degree in the active submatrix, ties broken by lowest column
//! index then lowest row index; this keeps pivot polynomials small.
//!
//! A rational δ₀ can only change the rank of the matrix if it is a root of
//! one of the returned pivot polynomials: the product of the pivots is (up to
//! sign) a maximal nonzero minor, which vanishes wherever the rank drops.
//! Roots of earlier pivots may be spurious, so callers confirm candidates by
//! evaluating the system at each of them.

use crate::matrix::Matrix;
use crate::poly::DeltaPoly;

/// Result of a parametric elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// Rank of the matrix over the rational-function field ℚ(δ).
    pub generic_rank: usize,
    /// The nonzero pivots encountered, in elimination order.
    pub pivot_polys: Vec<DeltaPoly>,
}

/// Fraction-free Gaussian elimination with full (degree, column, row)
/// pivoting. For every δ₀ that is not a root of any pivot polynomial, the
/// rank of `m` evaluated at δ₀ equals `generic_rank`.
pub fn parametric_eliminate(m: &Matrix<DeltaPoly>) -> Elimination {
    let mut m = m.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let steps = rows.min(cols);
    let mut pivots = Vec::new();
    let mut prev = DeltaPoly::one();
    for k in 0..steps {
        let Some((pi, pj)) = select_pivot(&m, k) else {
            break;
        };
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);
        let pivot = m.at(k, k).clone();
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(m.at(i, j) * &pivot) - &(m.at(i, k) * m.at(k, j));
                m.set(i, j, num.exact_div(&prev));
            }
            m.set(i, k, DeltaPoly::zero());
        }
        pivots.push(pivot.clone());
        prev = pivot;
    }
    Elimination {
        generic_rank: pivots.len(),
        pivot_polys: pivots,
    }
}

fn select_pivot(m: &Matrix<DeltaPoly>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None; // (degree, col, row)
    for j in k..m.cols() {
        for i in k..m.rows() {
            if let Some(deg) = m.at(i, j).degree() {
                let key = (deg, j, i);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    best.map(|(_, j, i)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn c(n: i64) -> DeltaPoly {
        DeltaPoly::constant(Rational::from(n))
    }

    #[test]
    fn single_delta_entry() {
        let m = Matrix::from_rows(vec![vec![DeltaPoly::delta()]]);
        let e = parametric_eliminate(&m);
        assert_eq!(e.generic_rank, 1);
        assert_eq!(e.pivot_polys, vec![DeltaPoly::delta()]);
    }

    #[test]
    fn diagonal_with_quadratic() {
        // [[1−δ², 0], [0, 1]]
        let p = DeltaPoly::from_coeffs(vec![
            Rational::one(),
            Rational::zero(),
            Rational::from(-1),
        ]);
        let m = Matrix::from_rows(vec![
            vec![p.clone(), DeltaPoly::zero()],
            vec![DeltaPoly::zero(), c(1)],
        ]);
        let e = parametric_eliminate(&m);
        assert_eq!(e.generic_rank, 2);
        // the constant pivot is preferred; the quadratic one must still appear
        assert!(e.pivot_polys.iter().any(|q| {
            q.squarefree_part().primitive() == p.squarefree_part().primitive()
        }));
        let roots: Vec<_> = e
            .pivot_polys
            .iter()
            .flat_map(|q| q.rational_roots().unwrap())
            .collect();
        assert!(roots.contains(&Rational::from(1)) && roots.contains(&Rational::from(-1)));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = Matrix::from_rows(vec![vec![DeltaPoly::zero(); 3]; 2]);
        let e = parametric_eliminate(&m);
        assert_eq!(e.generic_rank, 0);
        assert!(e.pivot_polys.is_empty());
    }

    #[test]
    fn rank_at_non_root_matches_generic_rank() {
        // rows: [δ, 1, 0], [1, δ, 0], [δ+1, δ+1, 0]  (third = first + second)
        let d = DeltaPoly::delta();
        let dp1 = &d + &c(1);
        let m = Matrix::from_rows(vec![
            vec![d.clone(), c(1), c(0)],
            vec![c(1), d.clone(), c(0)],
            vec![dp1.clone(), dp1, c(0)],
        ]);
        let e = parametric_eliminate(&m);
        assert_eq!(e.generic_rank, 2);
        let mut roots: Vec<Rational> = e
            .pivot_polys
            .iter()
            .filter(|p| p.degree() != Some(0))
            .flat_map(|p| p.rational_roots().unwrap())
            .collect();
        roots.sort();
        roots.dedup();
        for delta in [Rational::from(3), Rational::of(5, 7), Rational::from(-2)] {
            if !roots.contains(&delta) {
                assert_eq!(m.eval(&delta).rank(), e.generic_rank);
            }
        }
        // at δ = ±1 the evaluated rank actually drops
        assert_eq!(m.eval(&Rational::from(1)).rank(), 1);
    }
}
