//! The n-ary algebra data model.
//!
//! An algebra is given by its antisymmetric structure constants: products are
//! stored only on strictly increasing basis index tuples, and the bracket of
//! an arbitrary ordered tuple is the sorted entry times the permutation sign
//! (tuples with a repeated index are zero). Antisymmetry is therefore
//! structural, and the identity checkers genuinely exercise the evaluation
//! logic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::{Error, Result};

/// Coordinate vector relative to an algebra's basis.
pub type Vector = Vec<Rational>;

pub fn zero_vector(d: usize) -> Vector {
    vec![Rational::zero(); d]
}

pub fn basis_vector(d: usize, i: usize) -> Vector {
    let mut v = zero_vector(d);
    v[i] = Rational::one();
    v
}

/// A linear endomorphism in the row-vector convention `[φ(x)] = [x]·[φ]`:
/// row `i` of the matrix holds the coordinates of `φ(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LinearMap {
    pub matrix: Matrix<Rational>,
}

impl LinearMap {
    pub fn new(matrix: Matrix<Rational>) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "linear map must be square");
        LinearMap { matrix }
    }

    pub fn zero(d: usize) -> Self {
        LinearMap::new(Matrix::zero(d, d))
    }

    pub fn identity(d: usize) -> Self {
        LinearMap::new(Matrix::identity(d))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reassembles a map from the row-major flattening; column `i·d + j` of
    /// the solver systems corresponds to entry `(i, j)`.
    pub fn from_flat(d: usize, entries: &[Rational]) -> Self {
        assert_eq!(entries.len(), d * d);
        LinearMap::new(Matrix::from_fn(d, d, |i, j| entries[i * d + j].clone()))
    }

    pub fn flatten(&self) -> Vec<Rational> {
        self.matrix.entries().to_vec()
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        let d = self.dim();
        assert_eq!(x.len(), d);
        let mut out = zero_vector(d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += &(xi * self.matrix.at(i, j));
            }
        }
        out
    }

    /// Composition `x ↦ other(self(x))`; in the row convention this is the
    /// matrix product `self · other`.
    pub fn then(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&other.matrix))
    }

    pub fn commutator(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(
            self.matrix
                .mul(&other.matrix)
                .sub(&other.matrix.mul(&self.matrix)),
        )
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.add(&other.matrix))
    }
}

/// A nonzero value of the Filippov defect `J` at a basis tuple.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub defect: Vector,
}

/// A basis tuple where the n-ary Malcev identity fails; `defect` is
/// `lhs − rhs` of the identity.
#[derive(Clone, Debug, Serialize)]
pub struct MalcevViolation {
    pub z: usize,
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub defect: Vector,
}

/// Finite-dimensional algebra with one antisymmetric n-ary operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NAryAlgebra {
    arity: usize,
    dim: usize,
    basis_names: Vec<String>,
    /// Strictly increasing index tuple → product coordinates. Zero products
    /// are not stored.
    structure: BTreeMap<Vec<usize>, Vector>,
}

impl NAryAlgebra {
    pub fn new(
        arity: usize,
        dim: usize,
        basis_names: Vec<String>,
        products: BTreeMap<Vec<usize>, Vector>,
    ) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidAlgebra(format!("arity must be ≥ 2, got {arity}")));
        }
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be ≥ 1".into()));
        }
        if basis_names.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "{} basis names for dimension {dim}",
                basis_names.len()
            )));
        }
        let mut structure = BTreeMap::new();
        for (key, value) in products {
            if key.len() != arity {
                return Err(Error::InvalidAlgebra(format!(
                    "product key {key:?} does not have {arity} entries"
                )));
            }
            if !key.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidAlgebra(format!(
                    "product key {key:?} is not strictly increasing"
                )));
            }
            if key.iter().any(|&i| i >= dim) {
                return Err(Error::InvalidAlgebra(format!(
                    "product key {key:?} has an index out of range 0..{dim}"
                )));
            }
            if value.len() != dim {
                return Err(Error::InvalidAlgebra(format!(
                    "product value for {key:?} has length {}, expected {dim}",
                    value.len()
                )));
            }
            if value.iter().any(|c| !c.is_zero()) {
                structure.insert(key, value);
            }
        }
        Ok(NAryAlgebra {
            arity,
            dim,
            basis_names,
            structure,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn products(&self) -> &BTreeMap<Vec<usize>, Vector> {
        &self.structure
    }

    /// Bracket of a basis index tuple in any order; repeated indices give 0,
    /// others the sorted entry times the permutation sign.
    pub fn bracket_basis(&self, indices: &[usize]) -> Vector {
        debug_assert_eq!(indices.len(), self.arity);
        let mut sorted: Vec<usize> = indices.to_vec();
        let mut sign = 1i64;
        // insertion sort, counting inversions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return zero_vector(self.dim);
        }
        match self.structure.get(&sorted) {
            None => zero_vector(self.dim),
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.iter().map(|c| -c).collect(),
        }
    }

    /// Multilinear antisymmetric bracket of n coordinate vectors.
    pub fn bracket(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        for a in args {
            if a.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: a.len(),
                });
            }
        }
        // expand over the nonzero support of each argument
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..self.dim).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return Ok(zero_vector(self.dim));
        }
        let mut out = zero_vector(self.dim);
        let mut idx = vec![0usize; self.arity];
        'outer: loop {
            let tuple: Vec<usize> = idx
                .iter()
                .enumerate()
                .map(|(slot, &k)| supports[slot][k])
                .collect();
            let mut coeff = Rational::one();
            for (slot, &i) in tuple.iter().enumerate() {
                coeff *= &args[slot][i];
            }
            let b = self.bracket_basis(&tuple);
            for (o, c) in out.iter_mut().zip(&b) {
                if !c.is_zero() {
                    *o += &(&coeff * c);
                }
            }
            // advance the multi-index
            for slot in (0..self.arity).rev() {
                idx[slot] += 1;
                if idx[slot] < supports[slot].len() {
                    continue 'outer;
                }
                idx[slot] = 0;
            }
            break;
        }
        Ok(out)
    }

    /// Right-multiplication operator `z ↦ [z, fixed…]` as a matrix in the
    /// row convention; row `i` is the bracket of `e_i` with the fixed tail.
    pub fn right_mul(&self, fixed: &[Vector]) -> Result<LinearMap> {
        if fixed.len() != self.arity - 1 {
            return Err(Error::ArityMismatch {
                expected: self.arity - 1,
                got: fixed.len(),
            });
        }
        let mut rows = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut args = Vec::with_capacity(self.arity);
            args.push(basis_vector(self.dim, i));
            args.extend(fixed.iter().cloned());
            rows.push(self.bracket(&args)?);
        }
        Ok(LinearMap::new(Matrix::from_rows(rows)))
    }

    /// The defect `[[x₁,…,x_n], y₂,…,y_n] − Σᵢ [x₁,…,[xᵢ,y₂,…,y_n],…,x_n]`,
    /// identically zero exactly when the algebra satisfies the Filippov
    /// identity.
    pub fn jacobian(&self, xs: &[Vector], ys: &[Vector]) -> Result<Vector> {
        if xs.len() != self.arity || ys.len() != self.arity - 1 {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: xs.len(),
            });
        }
        let mut with_ys = vec![self.bracket(xs)?];
        with_ys.extend(ys.iter().cloned());
        let mut out = self.bracket(&with_ys)?;
        for i in 0..self.arity {
            let mut inner_args = vec![xs[i].clone()];
            inner_args.extend(ys.iter().cloned());
            let inner = self.bracket(&inner_args)?;
            let mut args = xs.to_vec();
            args[i] = inner;
            let term = self.bracket(&args)?;
            for (o, t) in out.iter_mut().zip(&term) {
                *o -= t;
            }
        }
        Ok(out)
    }

    /// Scans all sorted basis x-tuples (and y-tuples with repetition; by
    /// multilinearity this is exhaustive) and reports every nonzero defect,
    /// ordered by witness indices.
    pub fn check_filippov(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let basis: Vec<Vector> = (0..self.dim).map(|i| basis_vector(self.dim, i)).collect();
        for xs in sorted_tuples(self.dim, self.arity) {
            let xv: Vec<Vector> = xs.iter().map(|&i| basis[i].clone()).collect();
            for ys in sorted_multisets(self.dim, self.arity - 1) {
                let yv: Vec<Vector> = ys.iter().map(|&i| basis[i].clone()).collect();
                let defect = self.jacobian(&xv, &yv).expect("arities match");
                if defect.iter().any(|c| !c.is_zero()) {
                    violations.push(Violation { xs: xs.clone(), ys, defect });
                }
            }
        }
        violations
    }

    /// Checks `−J(z·R_x, x₂,…,x_n; y₂,…,y_n) = J(z, x₂,…,x_n; y₂,…,y_n)·R_x`
    /// on all basis choices, where `R_x` is right multiplication by the
    /// x-tail. Empty output means the algebra is an n-ary Malcev algebra.
    pub fn check_nary_malcev(&self) -> Vec<MalcevViolation> {
        let mut violations = Vec::new();
        let basis: Vec<Vector> = (0..self.dim).map(|i| basis_vector(self.dim, i)).collect();
        for xs in sorted_multisets(self.dim, self.arity - 1) {
            let xv: Vec<Vector> = xs.iter().map(|&i| basis[i].clone()).collect();
            let right = self.right_mul(&xv).expect("arities match");
            for z in 0..self.dim {
                let z_moved = right.apply(&basis[z]);
                for ys in sorted_multisets(self.dim, self.arity - 1) {
                    let yv: Vec<Vector> = ys.iter().map(|&i| basis[i].clone()).collect();
                    let lhs = self.jacobian_with_first(&z_moved, &xv, &yv);
                    let rhs = right.apply(&self.jacobian_with_first(&basis[z], &xv, &yv));
                    let defect: Vector = lhs.iter().zip(&rhs).map(|(l, r)| -(l) - r).collect();
                    if defect.iter().any(|c| !c.is_zero()) {
                        violations.push(MalcevViolation {
                            z,
                            xs: xs.clone(),
                            ys: ys.clone(),
                            defect,
                        });
                    }
                }
            }
        }
        violations
    }

    fn jacobian_with_first(&self, first: &Vector, x_tail: &[Vector], ys: &[Vector]) -> Vector {
        let mut xs = Vec::with_capacity(self.arity);
        xs.push(first.clone());
        xs.extend(x_tail.iter().cloned());
        self.jacobian(&xs, ys).expect("arities match")
    }

    /// Serializes to the algebra interchange format.
    pub fn to_json(&self) -> serde_json::Value {
        let products: Vec<ProductJson> = self
            .structure
            .iter()
            .map(|(args, value)| ProductJson {
                args: args.clone(),
                value: value
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j.to_string(), c.clone()))
                    .collect(),
            })
            .collect();
        serde_json::to_value(AlgebraJson {
            arity: self.arity,
            dim: self.dim,
            basis: self.basis_names.clone(),
            products,
        })
        .expect("algebra serialization cannot fail")
    }

    /// Loads the algebra interchange format, rejecting non-increasing keys,
    /// out-of-range indices and shape mismatches.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        let mut products = BTreeMap::new();
        for p in raw.products {
            let mut coords = zero_vector(raw.dim);
            for (k, c) in p.value {
                let j: usize = k
                    .parse()
                    .map_err(|_| Error::InvalidAlgebra(format!("bad coordinate key {k:?}")))?;
                if j >= raw.dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "coordinate index {j} out of range 0..{}",
                        raw.dim
                    )));
                }
                coords[j] = c;
            }
            if products.insert(p.args.clone(), coords).is_some() {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate product key {:?}",
                    p.args
                )));
            }
        }
        NAryAlgebra::new(raw.arity, raw.dim, raw.basis, products)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    arity: usize,
    dim: usize,
    basis: Vec<String>,
    products: Vec<ProductJson>,
}

#[derive(Serialize, Deserialize)]
struct ProductJson {
    args: Vec<usize>,
    value: BTreeMap<String, Rational>,
}

/// All strictly increasing `n`-tuples over `0..d`, lexicographically.
pub(crate) fn sorted_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > d {
        return out;
    }
    let mut t: Vec<usize> = (0..n).collect();
    loop {
        out.push(t.clone());
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] != i + d - n {
                break;
            }
        }
        t[i] += 1;
        for j in i + 1..n {
            t[j] = t[j - 1] + 1;
        }
    }
}

/// All weakly increasing `n`-tuples over `0..d`, lexicographically.
pub(crate) fn sorted_multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut t = vec![0usize; n];
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] != d - 1 {
                break;
            }
        }
        t[i] += 1;
        for j in i + 1..n {
            t[j] = t[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Family, FamilySpec};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn b1_n3() -> NAryAlgebra {
        FamilySpec::new(Family::B1, 3).build().unwrap()
    }

    #[test]
    fn bracket_on_basis_tuple() {
        let alg = b1_n3();
        let e = |i| basis_vector(4, i);
        // [e2, e3, e4] = e1 in 1-based labels
        let v = alg.bracket(&[e(1), e(2), e(3)]).unwrap();
        assert_eq!(v, basis_vector(4, 0));
        // odd permutation flips the sign
        let v = alg.bracket(&[e(2), e(1), e(3)]).unwrap();
        assert_eq!(v, vec![q(-1), q(0), q(0), q(0)]);
    }

    #[test]
    fn bracket_with_repeated_argument_is_zero() {
        let alg = b1_n3();
        let x = vec![q(1), q(2), q(-3), q(5)];
        let y = vec![q(0), q(1), q(1), q(7)];
        let v = alg.bracket(&[x.clone(), x, y]).unwrap();
        assert!(v.iter().all(Rational::is_zero));
    }

    #[test]
    fn bracket_arity_and_dimension_errors() {
        let alg = b1_n3();
        let e = |i| basis_vector(4, i);
        assert!(matches!(
            alg.bracket(&[e(0), e(1)]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            alg.bracket(&[e(0), e(1), vec![q(1)]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn simple_family_brackets_hit_each_basis_vector() {
        // in the r-indexed family, dropping e_i from the full tuple gives e_i
        let alg = FamilySpec::new(Family::Dr { r: 4 }, 3).build().unwrap();
        for i in 0..4 {
            let args: Vec<Vector> = (0..4).filter(|&j| j != i).map(|j| basis_vector(4, j)).collect();
            assert_eq!(alg.bracket(&args).unwrap(), basis_vector(4, i), "i = {i}");
        }
    }

    #[test]
    fn right_mul_matches_bracket_on_basis() {
        let alg = b1_n3();
        let fixed = vec![basis_vector(4, 2), basis_vector(4, 3)];
        let r = alg.right_mul(&fixed).unwrap();
        // e2 ↦ e1, every other basis vector ↦ 0
        assert_eq!(r.apply(&basis_vector(4, 1)), basis_vector(4, 0));
        for i in [0usize, 2, 3] {
            assert!(r.apply(&basis_vector(4, i)).iter().all(Rational::is_zero));
        }
        // repeated fixed argument forces the zero map
        let rr = alg
            .right_mul(&[basis_vector(4, 2), basis_vector(4, 2)])
            .unwrap();
        assert_eq!(rr, LinearMap::zero(4));
    }

    #[test]
    fn jacobian_vanishes_on_filippov_catalog() {
        let alg = FamilySpec::new(Family::Dr { r: 3 }, 3).build().unwrap();
        assert!(alg.check_filippov().is_empty());
    }

    #[test]
    fn jacobian_with_repeated_x_arguments_vanishes() {
        let alg = FamilySpec::new(Family::Dr { r: 4 }, 3).build().unwrap();
        let x = vec![q(1), q(-2), q(3), q(5)];
        let y = vec![q(0), q(1), q(4), q(-1)];
        let z = vec![q(2), q(2), q(0), q(7)];
        let j = alg
            .jacobian(&[x.clone(), x, y.clone()], &[y, z])
            .unwrap();
        assert!(j.iter().all(Rational::is_zero));
    }

    #[test]
    fn perturbed_structure_constant_is_detected() {
        let alg = FamilySpec::new(Family::Dr { r: 3 }, 3).build().unwrap();
        let mut products = alg.products().clone();
        let key = products.keys().next().unwrap().clone();
        products.get_mut(&key).unwrap()[0] += &Rational::one();
        let bad = NAryAlgebra::new(3, 4, alg.basis_names().to_vec(), products).unwrap();
        assert!(!bad.check_filippov().is_empty());
        assert!(!bad.check_nary_malcev().is_empty());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let alg = FamilySpec::new(Family::C2 { beta: Rational::of(3, 2) }, 3)
            .build()
            .unwrap();
        let json = alg.to_json();
        let back = NAryAlgebra::from_json(&json).unwrap();
        assert_eq!(alg, back);

        let mut bad = json.clone();
        bad["products"][0]["args"] = serde_json::json!([2, 1, 3]);
        assert!(NAryAlgebra::from_json(&bad).is_err());

        let mut bad = json.clone();
        bad["products"][0]["args"] = serde_json::json!([0, 1, 9]);
        assert!(NAryAlgebra::from_json(&bad).is_err());

        let mut bad = json;
        bad["products"][0]["value"] = serde_json::json!({"7": "1"});
        assert!(NAryAlgebra::from_json(&bad).is_err());
    }

    #[test]
    fn tuple_iterators() {
        assert_eq!(sorted_tuples(4, 3).len(), 4);
        assert_eq!(sorted_tuples(8, 3).len(), 56);
        assert_eq!(sorted_multisets(3, 2).len(), 6);
        assert!(sorted_tuples(2, 3).is_empty());
    }
}
