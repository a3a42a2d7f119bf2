//! The 8-dimensional composition algebra over ℚ and the ternary algebra on
//! top of it.
//!
//! The octonions are produced by three Cayley–Dickson doublings with doubling
//! parameter −1, using the pairing rule `(a,b)(c,d) = (ac − d̄b, da + bc̄)`
//! and conjugation `(a,b)̄ = (ā, −b)`. With that rule the natural coordinate
//! order is `{1, a, b, ab, c, ac, bc, abc}` (`ab = a·b`, `abc = (a·b)·c`),
//! the basis is orthonormal for the form `(x,y) = ½(x·ȳ + y·x̄)`, and every
//! product of two basis units is ± another basis unit.
//!
//! The ternary bracket `[x,y,z] = (x·ȳ)·z − (y,z)x + (x,z)y − (x,y)z` (left
//! association; the algebra is not associative) turns the space into the
//! ternary Malcev algebra exposed as [`build_m8`].

use std::collections::BTreeMap;

use crate::algebra::{basis_vector, zero_vector, NAryAlgebra, Vector};
use crate::matrix::Matrix;
use crate::rational::Rational;

pub const OCTONION_DIM: usize = 8;

pub const BASIS_NAMES: [&str; 8] = ["1", "a", "b", "ab", "c", "ac", "bc", "abc"];

/// Octonion multiplication on coordinate slices via recursive doubling.
fn cd_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    if n == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out = Vec::with_capacity(n);
    out.extend(ac.iter().zip(&db).map(|(p, q)| p - q));
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn cd_conj(x: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(x.len());
    out.push(x[0].clone());
    out.extend(x[1..].iter().map(|c| -c));
    out
}

/// The octonions: multiplication table, conjugation and the norm form.
#[derive(Clone, Debug)]
pub struct CompositionAlgebra {
    /// `table[i][j]` holds the coordinates of `e_i · e_j`.
    table: Vec<Vec<Vector>>,
    conjugation: Matrix<Rational>,
}

impl CompositionAlgebra {
    pub fn dim(&self) -> usize {
        OCTONION_DIM
    }

    pub fn basis_names(&self) -> Vec<String> {
        BASIS_NAMES.iter().map(|s| s.to_string()).collect()
    }

    pub fn unit(&self, i: usize) -> Vector {
        basis_vector(OCTONION_DIM, i)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vector(OCTONION_DIM);
        for i in 0..OCTONION_DIM {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..OCTONION_DIM {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Conjugation `x ↦ x̄`; negates the seven imaginary units.
    pub fn conj(&self, x: &[Rational]) -> Vector {
        let mut out = zero_vector(OCTONION_DIM);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                for (j, o) in out.iter_mut().enumerate() {
                    *o += &(xi * self.conjugation.at(i, j));
                }
            }
        }
        out
    }

    pub fn conjugation_matrix(&self) -> &Matrix<Rational> {
        &self.conjugation
    }

    /// Symmetric bilinear form `(x, y) = ½(x·ȳ + y·x̄)`; the combination is a
    /// multiple of the unit, whose coefficient is returned.
    pub fn bilinear_form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = self.mul(x, &self.conj(y));
        for (a, b) in s.iter_mut().zip(self.mul(y, &self.conj(x))) {
            *a += &b;
        }
        debug_assert!(s[1..].iter().all(Rational::is_zero), "form is not scalar");
        &s[0] * &Rational::of(1, 2)
    }

    /// The norm `n(x) = (x, x)`.
    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.bilinear_form(x, x)
    }

    /// The products of basis units as a bare signed table: entry `(i, j)` is
    /// `(k, s)` with `e_i · e_j = s · e_k`.
    pub fn signed_table(&self) -> [[(usize, i8); 8]; 8] {
        let mut out = [[(0usize, 0i8); 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let v = &self.table[i][j];
                let k = v.iter().position(|c| !c.is_zero()).expect("unit product");
                out[i][j] = (k, if v[k] == Rational::one() { 1 } else { -1 });
            }
        }
        out
    }

    /// Human-readable multiplication table (markdown).
    pub fn table_markdown(&self) -> String {
        let mut s = String::from("| · |");
        for name in BASIS_NAMES {
            s.push_str(&format!(" {name} |"));
        }
        s.push_str("\n|---|");
        s.push_str(&"---|".repeat(8));
        s.push('\n');
        let table = self.signed_table();
        for i in 0..8 {
            s.push_str(&format!("| **{}** |", BASIS_NAMES[i]));
            for j in 0..8 {
                let (k, sign) = table[i][j];
                let sig = if sign > 0 { "" } else { "-" };
                s.push_str(&format!(" {}{} |", sig, BASIS_NAMES[k]));
            }
            s.push('\n');
        }
        s
    }
}

/// Builds the octonions over ℚ in the fixed coordinate order.
pub fn build_octonions() -> CompositionAlgebra {
    let mut table = Vec::with_capacity(8);
    for i in 0..8 {
        let mut row = Vec::with_capacity(8);
        let ei = basis_vector(OCTONION_DIM, i);
        for j in 0..8 {
            let ej = basis_vector(OCTONION_DIM, j);
            row.push(cd_mul(&ei, &ej));
        }
        table.push(row);
    }
    let conjugation = Matrix::from_fn(8, 8, |i, j| {
        if i != j {
            Rational::zero()
        } else if i == 0 {
            Rational::one()
        } else {
            Rational::from(-1)
        }
    });
    CompositionAlgebra { table, conjugation }
}

/// The ternary bracket `[x,y,z] = (x·ȳ)·z − (y,z)x + (x,z)y − (x,y)z` on the
/// octonions.
pub fn ternary_bracket(o: &CompositionAlgebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    let mut out = o.mul(&o.mul(x, &o.conj(y)), z);
    let fyz = o.bilinear_form(y, z);
    let fxz = o.bilinear_form(x, z);
    let fxy = o.bilinear_form(x, y);
    for i in 0..OCTONION_DIM {
        out[i] -= &(&fyz * &x[i]);
        out[i] += &(&fxz * &y[i]);
        out[i] -= &(&fxy * &z[i]);
    }
    out
}

/// Builds the ternary Malcev algebra on the octonions as a structure-constant
/// algebra: the bracket is evaluated on every sorted basis triple. The
/// result is anticommutative, satisfies the ternary Malcev identity and
/// violates the Filippov identity.
pub fn build_m8() -> NAryAlgebra {
    let o = build_octonions();
    let mut products: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                let v = ternary_bracket(&o, &o.unit(i), &o.unit(j), &o.unit(k));
                if v.iter().any(|c| !c.is_zero()) {
                    products.insert(vec![i, j, k], v);
                }
            }
        }
    }
    NAryAlgebra::new(3, OCTONION_DIM, o.basis_names(), products)
        .expect("fixed construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        let o = build_octonions();
        for i in 1..8 {
            let sq = o.mul(&o.unit(i), &o.unit(i));
            let mut expect = zero_vector(8);
            expect[0] = q(-1);
            assert_eq!(sq, expect, "e{i}² ≠ -1");
        }
    }

    #[test]
    fn one_is_a_two_sided_unit() {
        let o = build_octonions();
        let x: Vector = (0..8).map(|i| Rational::of(i as i64 - 3, 2)).collect();
        assert_eq!(o.mul(&o.unit(0), &x), x);
        assert_eq!(o.mul(&x, &o.unit(0)), x);
    }

    #[test]
    fn distinct_imaginary_units_anticommute() {
        let o = build_octonions();
        // a·b = ab and b·a = -ab
        assert_eq!(o.mul(&o.unit(1), &o.unit(2)), o.unit(3));
        let ba = o.mul(&o.unit(2), &o.unit(1));
        assert_eq!(ba[3], q(-1));
        for i in 1..8 {
            for j in 1..8 {
                if i == j {
                    continue;
                }
                let ij = o.mul(&o.unit(i), &o.unit(j));
                let ji = o.mul(&o.unit(j), &o.unit(i));
                let sum: Vec<Rational> = ij.iter().zip(&ji).map(|(p, r)| p + r).collect();
                assert!(sum.iter().all(Rational::is_zero));
            }
        }
    }

    #[test]
    fn nonassociative() {
        let o = build_octonions();
        let (a, b, c) = (o.unit(1), o.unit(2), o.unit(4));
        let left = o.mul(&o.mul(&a, &b), &c);
        let right = o.mul(&a, &o.mul(&b, &c));
        assert_ne!(left, right);
        assert_eq!(left, o.unit(7)); // (a·b)·c is the last basis unit
    }

    #[test]
    fn basis_is_orthonormal() {
        let o = build_octonions();
        assert_eq!(o.bilinear_form(&o.unit(0), &o.unit(0)), q(1));
        assert_eq!(o.bilinear_form(&o.unit(1), &o.unit(2)), q(0));
        for i in 0..8 {
            for j in 0..8 {
                let f = o.bilinear_form(&o.unit(i), &o.unit(j));
                assert_eq!(f, if i == j { q(1) } else { q(0) });
            }
        }
    }

    fn random_vectors(count: usize) -> Vec<Vector> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(0x6e61_7279_6401);
        (0..count)
            .map(|_| {
                (0..8)
                    .map(|_| Rational::of(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn norm_is_the_coordinate_sum_of_squares() {
        let o = build_octonions();
        for x in random_vectors(50) {
            let expect = x.iter().map(|c| c * c).fold(q(0), |acc, t| acc + t);
            assert_eq!(o.norm(&x), expect);
            // x·x̄ lands in the span of 1 with that coefficient
            let xxbar = o.mul(&x, &o.conj(&x));
            assert_eq!(xxbar[0], expect);
            assert!(xxbar[1..].iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn conjugation_is_an_involutive_anti_automorphism() {
        let o = build_octonions();
        let vs = random_vectors(40);
        for pair in vs.chunks(2) {
            let (x, y) = (&pair[0], &pair[1]);
            assert_eq!(o.conj(&o.conj(x)), *x);
            assert_eq!(o.conj(&o.mul(x, y)), o.mul(&o.conj(y), &o.conj(x)));
        }
    }

    #[test]
    fn right_multiplication_columns_match_direct_brackets() {
        let m8 = build_m8();
        let o = build_octonions();
        for (x, y) in [(1usize, 2usize), (4, 7), (3, 5)] {
            let r = m8
                .right_mul(&[basis_vector(8, x), basis_vector(8, y)])
                .unwrap();
            for i in 0..8 {
                let direct = ternary_bracket(&o, &o.unit(i), &o.unit(x), &o.unit(y));
                assert_eq!(r.apply(&basis_vector(8, i)), direct, "R_(e{x},e{y}) on e{i}");
            }
        }
    }

    #[test]
    fn m8_bracket_kills_repeated_arguments() {
        let o = build_octonions();
        let x: Vector = (0..8).map(|i| Rational::of(i as i64 + 1, 2)).collect();
        let z: Vector = (0..8).map(|i| Rational::of(7 - 2 * i as i64, 3)).collect();
        let v = ternary_bracket(&o, &x, &x, &z);
        assert!(v.iter().all(Rational::is_zero));
        let v = ternary_bracket(&o, &x, &z, &z);
        assert!(v.iter().all(Rational::is_zero));
        let v = ternary_bracket(&o, &x, &z, &x);
        assert!(v.iter().all(Rational::is_zero));
    }

    #[test]
    fn m8_structure_is_deterministic_and_antisymmetric() {
        let m8 = build_m8();
        assert_eq!(m8, build_m8());
        assert_eq!(m8.products().len(), 56);
        // the structure-constant bracket agrees with the defining formula on
        // arbitrarily permuted triples
        let o = build_octonions();
        let triples = [[2usize, 0, 1], [5, 3, 1], [7, 6, 2], [4, 2, 6]];
        for t in triples {
            let direct = ternary_bracket(&o, &o.unit(t[0]), &o.unit(t[1]), &o.unit(t[2]));
            assert_eq!(m8.bracket_basis(&t), direct);
        }
    }
}
