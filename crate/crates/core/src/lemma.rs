//! Block profiles of derivation matrices for the catalog families.
//!
//! For each family the solution matrices have a rigid block shape: one
//! off-diagonal block vanishes, the diagonal entries of one block obey trace
//! relations, and the 2×2 tail block of the C-families has a closed form.
//! [`lemma_profile`] extracts the blocks and derived scalars of a map and
//! evaluates every clause that applies at the given δ, in denominator-free
//! form wherever the textbook closed form divides by `1−δ` or `1+δ`.

use serde::Serialize;

use crate::algebra::LinearMap;
use crate::catalog::{Family, FamilySpec};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::{Error, Result};

/// One named clause with its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub clause: String,
    pub passed: bool,
}

/// Block decomposition of a derivation matrix plus the family's clause
/// verdicts. Blocks are positional: `a` top-left, `b` bottom-right, `c`
/// top-right, `g` bottom-left, split after `split` rows/columns.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaProfile {
    pub family: String,
    pub delta: Rational,
    pub split: usize,
    pub a: Matrix<Rational>,
    pub b: Matrix<Rational>,
    pub c: Matrix<Rational>,
    pub g: Matrix<Rational>,
    /// `δ/(1−δ)` times the relevant diagonal sum, where the family defines
    /// it (B2, C1); absent at δ = 1.
    pub w: Option<Rational>,
    /// Head-block trace for the C2 relations.
    pub theta: Option<Rational>,
    pub trace_a: Rational,
    pub trace_b: Rational,
    /// Diagonal of the full matrix, in order, and its number of distinct
    /// values.
    pub diagonal: Vec<Rational>,
    pub distinct_diagonal: usize,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaProfile {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_clauses(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.clause.as_str())
            .collect()
    }
}

fn block(m: &Matrix<Rational>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix<Rational> {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        m.at(rows.start + i, cols.start + j).clone()
    })
}

/// Extracts the block profile of `map` for its family at δ and evaluates the
/// family's clauses. Families without a block shape (`A1`, `M8`) are
/// rejected.
pub fn lemma_profile(map: &LinearMap, spec: &FamilySpec, delta: &Rational) -> Result<LemmaProfile> {
    let n = spec.arity;
    let d = n + 1;
    let split = match &spec.family {
        Family::A1 | Family::M8 => {
            return Err(Error::NoLemmaProfile(spec.family.tag().to_string()))
        }
        Family::B1 | Family::B2 => 1,
        Family::C1 { .. } | Family::C2 { .. } => n - 1,
        Family::Dr { r } => *r,
    };
    if map.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: map.dim(),
        });
    }
    let m = &map.matrix;
    let a = block(m, 0..split, 0..split);
    let b = block(m, split..d, split..d);
    let c = block(m, 0..split, split..d);
    let g = block(m, split..d, 0..split);
    let trace_a = a.trace();
    let trace_b = b.trace();
    let diagonal: Vec<Rational> = (0..d).map(|i| m.at(i, i).clone()).collect();
    let mut distinct = diagonal.clone();
    distinct.sort();
    distinct.dedup();

    let one = Rational::one();
    let shear = if delta == &one {
        None
    } else {
        Some(delta / &(&one - delta)) // δ/(1−δ)
    };
    let mut w = None;
    let mut theta = None;
    let mut checks: Vec<LemmaCheck> = Vec::new();
    let mut check = |clause: &str, passed: bool| {
        checks.push(LemmaCheck {
            clause: clause.to_string(),
            passed,
        });
    };

    match &spec.family {
        Family::B1 => {
            check("first_row_zero_off_corner", c.is_zero());
            check(
                "corner_is_delta_times_tail_trace",
                m.at(0, 0) == &(delta * &trace_b),
            );
        }
        Family::B2 => {
            check("first_row_zero_off_corner", c.is_zero());
            let last_off = (0..d - 1).all(|j| m.at(d - 1, j).is_zero());
            check("last_row_zero_off_diagonal", last_off);
            // β₁₁ = δ·Σ_{k≤n} β_kk, the division-free form of the statement
            let head: Rational = (0..n).fold(Rational::zero(), |acc, k| acc + m.at(k, k));
            check("corner_diagonal_relation", m.at(0, 0) == &(delta * &head));
            w = shear.map(|s| {
                let mid: Rational = (1..n).fold(Rational::zero(), |acc, k| acc + m.at(k, k));
                &s * &mid
            });
        }
        Family::C1 { alpha } => {
            check("bottom_left_zero", g.is_zero());
            let (nn, n1n1) = (m.at(n - 1, n - 1), m.at(n, n));
            let (gamma, mirror) = (m.at(n - 1, n), m.at(n, n - 1));
            check(
                "tail_diag_forward",
                nn == &(delta * &(&trace_a + n1n1)),
            );
            check(
                "tail_diag_backward",
                n1n1 == &(delta * &(&trace_a + nn)),
            );
            check("tail_offdiag_forward", gamma == &(&(delta * alpha) * mirror));
            check("tail_offdiag_backward", (alpha * mirror) == (delta * gamma));
            if delta != &Rational::from(-1) && delta != &one {
                check("tail_offdiag_zero_at_generic_delta", gamma.is_zero());
                let wv = shear.clone().map(|s| &s * &trace_a).unwrap();
                check(
                    "tail_diagonal_is_w",
                    nn == &wv && n1n1 == &wv,
                );
            }
            w = shear.map(|s| &s * &trace_a);
        }
        Family::C2 { beta } => {
            check("bottom_left_zero", g.is_zero());
            let th = trace_a.clone();
            let (nn, n1n1) = (m.at(n - 1, n - 1).clone(), m.at(n, n).clone());
            let (gamma, mirror) = (m.at(n - 1, n).clone(), m.at(n, n - 1).clone());
            let dt = delta * &th;
            check(
                "tail_relation_1",
                nn == &(&dt + &(delta * &n1n1)) - &(beta * &mirror),
            );
            check(
                "tail_relation_2",
                gamma
                    == &(&(&dt * beta) + &(delta * &mirror))
                        + &(&(&(delta * beta) - beta) * &n1n1),
            );
            check("tail_relation_3", mirror == delta * &gamma);
            check(
                "tail_relation_4",
                n1n1 == &(&dt + &(delta * &nn)) + &(&(delta * beta) * &gamma),
            );
            if delta == &Rational::from(-1) {
                let half = Rational::of(-1, 2) * &th;
                check(
                    "tail_at_minus_one",
                    gamma.is_zero() && mirror.is_zero() && nn == half && n1n1 == half,
                );
            } else if delta != &one {
                // B = [[w − βδ/(1+δ)·γ, γ], [δγ, w + βδ/(1+δ)·γ]]
                let wv = shear.clone().map(|s| &s * &th).unwrap();
                let skew = &(&(beta * delta) / &(&one + delta)) * &gamma;
                check(
                    "tail_closed_form",
                    nn == &wv - &skew
                        && n1n1 == &wv + &skew
                        && mirror == delta * &gamma,
                );
            }
            theta = Some(th);
        }
        Family::Dr { r } => {
            check("top_right_zero", c.is_zero());
            let total = &trace_a + &trace_b;
            let diag_ok = (0..*r).all(|i| {
                (&(&one + delta) * m.at(i, i)) == (delta * &total)
            });
            check("head_diagonal_relation", diag_ok);
            let twist_ok = (0..*r).all(|i| {
                (0..*r).all(|j| {
                    if i == j {
                        return true;
                    }
                    let sign = if (i as i64 - j as i64).rem_euclid(2) == 0 {
                        Rational::from(-1)
                    } else {
                        Rational::one()
                    };
                    m.at(i, j) == &(&(&sign * delta) * m.at(j, i))
                })
            });
            check("head_offdiag_twist", twist_ok);
            let inv_r1 = Rational::new(1, *r as i64 - 1).expect("r ≥ 3");
            if delta == &Rational::from(-1) {
                let alt_ok = (0..*r).all(|i| {
                    (0..*r).all(|j| {
                        if i == j {
                            return true;
                        }
                        let sign = if (i as i64 - j as i64).rem_euclid(2) == 0 {
                            Rational::one()
                        } else {
                            Rational::from(-1)
                        };
                        m.at(i, j) == &(&sign * m.at(j, i))
                    })
                });
                check(
                    "alternating_symmetry_and_opposite_traces",
                    alt_ok && trace_a == -&trace_b,
                );
            } else if delta == &inv_r1 {
                let scalar = m.at(0, 0).clone();
                let zero = Rational::zero();
                let head_scalar = (0..*r).all(|i| {
                    (0..*r).all(|j| m.at(i, j) == if i == j { &scalar } else { &zero })
                });
                check(
                    "traceless_tail_and_scalar_head",
                    trace_b.is_zero() && head_scalar,
                );
            } else if delta != &one {
                // A = δ/(1+δ−rδ)·tr(B)·E
                let denom = &(&one + delta) - &(Rational::from(*r as i64) * delta);
                let value = &(delta * &trace_b) / &denom;
                let zero = Rational::zero();
                let head_ok = (0..*r).all(|i| {
                    (0..*r).all(|j| m.at(i, j) == if i == j { &value } else { &zero })
                });
                check("head_is_scalar_multiple_of_tail_trace", head_ok);
            }
        }
        Family::A1 | Family::M8 => unreachable!(),
    }

    Ok(LemmaProfile {
        family: spec.family.tag().to_string(),
        delta: delta.clone(),
        split,
        a,
        b,
        c,
        g,
        w,
        theta,
        trace_a,
        trace_b,
        diagonal,
        distinct_diagonal: distinct.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::FamilySpec;
    use crate::dsolve::derivation_space;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    fn profiles_pass(s: &str, delta: Rational) {
        let fs = spec(s);
        let alg = fs.build().unwrap();
        let space = derivation_space(&alg, &delta);
        assert!(space.dimension > 0, "{s} at {delta} has no solutions");
        for map in &space.basis {
            let p = lemma_profile(map, &fs, &delta).unwrap();
            assert!(
                p.all_passed(),
                "{s} at δ={delta}: failed {:?}\n{:?}",
                p.failed_clauses(),
                map.matrix
            );
        }
    }

    #[test]
    fn profiles_hold_for_every_family_at_assorted_delta() {
        for s in ["B1:n=3", "B2:n=3", "C1:n=3,alpha=2", "C2:n=3,beta=3/2", "Dr:n=3,r=3"] {
            for delta in [q(-1), q(2), Rational::of(1, 2), Rational::of(1, 3)] {
                profiles_pass(s, delta);
            }
        }
        profiles_pass("C2:n=3,beta=3/2", Rational::of(-1, 4));
        profiles_pass("C2:n=3,beta=3/2", q(-4));
        profiles_pass("Dr:n=3,r=4", q(-1));
    }

    #[test]
    fn b2_last_row_shape() {
        let fs = spec("B2:n=4");
        let alg = fs.build().unwrap();
        let space = derivation_space(&alg, &q(2));
        for map in &space.basis {
            let p = lemma_profile(map, &fs, &q(2)).unwrap();
            assert!(p.all_passed());
            for j in 0..4 {
                assert!(map.matrix.at(4, j).is_zero());
            }
        }
    }

    #[test]
    fn dr_head_is_scalar_away_from_special_delta() {
        let fs = spec("Dr:n=4,r=3");
        let alg = fs.build().unwrap();
        let delta = q(2);
        let space = derivation_space(&alg, &delta);
        for map in &space.basis {
            let p = lemma_profile(map, &fs, &delta).unwrap();
            assert!(p.all_passed());
            // head block is (δ/(1+δ−rδ))·tr(B)·E = −(2/3)·tr(B)·E here
            let expect = &(&q(2) * &p.trace_b) / &q(-3);
            assert_eq!(p.a.at(0, 0), &expect);
            assert_eq!(p.a.at(1, 1), &expect);
            assert!(p.a.at(0, 1).is_zero());
        }
    }

    #[test]
    fn c2_tail_block_closed_form_at_jump_value() {
        let fs = spec("C2:n=3,beta=3/2");
        let alg = fs.build().unwrap();
        let delta = Rational::of(-1, 4);
        let space = derivation_space(&alg, &delta);
        // some solution must have a nonzero tail off-diagonal entry here
        assert!(space.basis.iter().any(|m| !m.matrix.at(2, 3).is_zero()));
        for map in &space.basis {
            let p = lemma_profile(map, &fs, &delta).unwrap();
            assert!(p.all_passed(), "{:?}", p.failed_clauses());
        }
    }

    #[test]
    fn families_without_a_profile_are_rejected() {
        let id = LinearMap::identity(4);
        let e = lemma_profile(&id, &spec("A1:n=3"), &q(2)).unwrap_err();
        assert!(matches!(e, Error::NoLemmaProfile(_)));
        let id8 = LinearMap::identity(8);
        assert!(lemma_profile(&id8, &spec("M8"), &q(2)).is_err());
    }

    #[test]
    fn profile_records_blocks_and_diagonal() {
        let fs = spec("C1:n=3,alpha=2");
        let alg = fs.build().unwrap();
        let space = derivation_space(&alg, &q(-1));
        let p = lemma_profile(&space.basis[0], &fs, &q(-1)).unwrap();
        assert_eq!(p.split, 2);
        assert_eq!((p.a.rows(), p.a.cols()), (2, 2));
        assert_eq!((p.b.rows(), p.b.cols()), (2, 2));
        assert_eq!((p.c.rows(), p.c.cols()), (2, 2));
        assert_eq!((p.g.rows(), p.g.cols()), (2, 2));
        assert_eq!(p.diagonal.len(), 4);
        assert!(p.distinct_diagonal >= 1);
        assert!(p.w.is_some());
    }
}
