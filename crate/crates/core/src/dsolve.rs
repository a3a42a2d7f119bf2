//! δ-derivation spaces, centroids and nontriviality classification.
//!
//! A linear map φ is a δ-derivation when
//! `φ([x₁,…,x_n]) = δ·Σᵢ [x₁,…,φ(xᵢ),…,x_n]` holds for all arguments; by
//! multilinearity it is enough to impose the condition on every sorted basis
//! tuple. Flattening `[φ]` row-major (column `i·d + j` ↔ entry `(i,j)`)
//! turns the conditions into a linear system whose entries are degree ≤ 1
//! polynomials in δ. Solving at a fixed δ is a nullspace computation;
//! fraction-free elimination of the parametric system locates the candidate
//! δ values where the solution space can grow.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::algebra::{basis_vector, sorted_tuples, LinearMap, NAryAlgebra, Vector};
use crate::bareiss::parametric_eliminate;
use crate::matrix::Matrix;
use crate::poly::DeltaPoly;
use crate::rational::Rational;
use crate::subspace::SubspaceBasis;
use crate::{Error, Result};

/// Seed for the reproducible "generic δ" probe drawn by [`scan`].
pub const SCAN_PROBE_SEED: u64 = 0x6e61_7279_6404;

/// The assembled parametric system for one algebra.
#[derive(Clone, Debug)]
pub struct DerivationSystem {
    dim: usize,
    tuples: Vec<Vec<usize>>,
    matrix: Matrix<DeltaPoly>,
}

impl DerivationSystem {
    /// One row block per sorted basis tuple per output coordinate; columns
    /// indexed by the flattened unknown matrix.
    pub fn build(alg: &NAryAlgebra) -> Self {
        let d = alg.dim();
        let n = alg.arity();
        let tuples = sorted_tuples(d, n);
        let mut rows: Vec<Vec<DeltaPoly>> = Vec::with_capacity(tuples.len() * d);
        for tuple in &tuples {
            let product = alg.bracket_basis(tuple);
            for coord in 0..d {
                let mut constant = vec![Rational::zero(); d * d];
                let mut linear = vec![Rational::zero(); d * d];
                // φ(Σ_s product_s e_s) coordinate `coord` = Σ_s product_s β_{s,coord}
                for (s, c) in product.iter().enumerate() {
                    if !c.is_zero() {
                        constant[s * d + coord] += c;
                    }
                }
                // −δ · Σ_k Σ_j β_{T_k, j} [… e_j at slot k …]_coord
                for (k, &tk) in tuple.iter().enumerate() {
                    let mut replaced = tuple.clone();
                    for j in 0..d {
                        replaced[k] = j;
                        let b = alg.bracket_basis(&replaced);
                        if !b[coord].is_zero() {
                            linear[tk * d + j] -= &b[coord];
                        }
                    }
                    replaced[k] = tk;
                }
                rows.push(
                    constant
                        .into_iter()
                        .zip(linear)
                        .map(|(c0, c1)| DeltaPoly::linear(c0, c1))
                        .collect(),
                );
            }
        }
        let matrix = if rows.is_empty() {
            Matrix::from_fn(0, d * d, |_, _| DeltaPoly::zero())
        } else {
            Matrix::from_rows(rows)
        };
        DerivationSystem {
            dim: d,
            tuples,
            matrix,
        }
    }

    pub fn matrix(&self) -> &Matrix<DeltaPoly> {
        &self.matrix
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// The rational system at a fixed δ.
    pub fn at(&self, delta: &Rational) -> Matrix<Rational> {
        self.matrix.eval(delta)
    }

    pub fn unknowns(&self) -> usize {
        self.dim * self.dim
    }
}

/// Canonical basis of the δ-derivation space at a fixed δ.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationSpace {
    pub delta: Rational,
    pub dimension: usize,
    pub basis: Vec<LinearMap>,
}

impl DerivationSpace {
    pub fn as_subspace(&self, d: usize) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim: d * d,
            vectors: self.basis.iter().map(LinearMap::flatten).collect(),
        }
    }
}

/// Direct check of the defining condition on all sorted basis tuples, via
/// bracket evaluation rather than the assembled system.
pub fn satisfies_delta_derivation(alg: &NAryAlgebra, map: &LinearMap, delta: &Rational) -> bool {
    let d = alg.dim();
    let basis: Vec<Vector> = (0..d).map(|i| basis_vector(d, i)).collect();
    for tuple in sorted_tuples(d, alg.arity()) {
        let args: Vec<Vector> = tuple.iter().map(|&i| basis[i].clone()).collect();
        let lhs = map.apply(&alg.bracket(&args).expect("valid tuple"));
        let mut rhs = vec![Rational::zero(); d];
        for k in 0..args.len() {
            let mut moved = args.clone();
            moved[k] = map.apply(&args[k]);
            for (acc, t) in rhs.iter_mut().zip(alg.bracket(&moved).expect("valid tuple")) {
                *acc += &t;
            }
        }
        for (l, r) in lhs.iter().zip(&rhs) {
            if l != &(delta * r) {
                return false;
            }
        }
    }
    true
}

/// Solves for the δ-derivation space at a fixed δ. Every basis element is
/// re-verified against the defining condition by direct bracket evaluation.
pub fn derivation_space(alg: &NAryAlgebra, delta: &Rational) -> DerivationSpace {
    let system = DerivationSystem::build(alg);
    derivation_space_with(alg, &system, delta)
}

/// Same as [`derivation_space`] but reusing an already-built system.
pub fn derivation_space_with(
    alg: &NAryAlgebra,
    system: &DerivationSystem,
    delta: &Rational,
) -> DerivationSpace {
    let d = alg.dim();
    let kernel = system.at(delta).nullspace();
    let basis: Vec<LinearMap> = kernel
        .iter()
        .map(|flat| LinearMap::from_flat(d, flat))
        .collect();
    for map in &basis {
        assert!(
            satisfies_delta_derivation(alg, map, delta),
            "solver produced a map that fails the defining condition at δ = {delta}"
        );
    }
    DerivationSpace {
        delta: delta.clone(),
        dimension: basis.len(),
        basis,
    }
}

/// The centroid: all ψ with `ψ([x₁,…,x_n]) = [x₁,…,ψ(xᵢ),…,x_n]` for every
/// slot i and every basis tuple. Each element is checked to be a
/// 1/n-derivation before returning.
pub fn centroid(alg: &NAryAlgebra) -> SubspaceBasis {
    let d = alg.dim();
    let n = alg.arity();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for tuple in sorted_tuples(d, n) {
        let product = alg.bracket_basis(&tuple);
        for slot in 0..n {
            for coord in 0..d {
                let mut row = vec![Rational::zero(); d * d];
                for (s, c) in product.iter().enumerate() {
                    if !c.is_zero() {
                        row[s * d + coord] += c;
                    }
                }
                let mut replaced = tuple.clone();
                for j in 0..d {
                    replaced[slot] = j;
                    let b = alg.bracket_basis(&replaced);
                    if !b[coord].is_zero() {
                        row[tuple[slot] * d + j] -= &b[coord];
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::zero(1, d * d).nullspace()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let basis = SubspaceBasis::from_spanning(d * d, kernel);
    let one_over_n = Rational::new(1, n as i64).expect("arity ≥ 2");
    for v in &basis.vectors {
        assert!(
            satisfies_delta_derivation(alg, &LinearMap::from_flat(d, v), &one_over_n),
            "centroid element is not a 1/n-derivation"
        );
    }
    basis
}

/// Nontriviality verdict for one δ.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub delta: Rational,
    pub dimension: usize,
    pub centroid_dimension: usize,
    #[serde(rename = "nontrivial")]
    pub has_nontrivial: bool,
    /// First canonical basis element outside the centroid, when nontrivial.
    pub witness: Option<LinearMap>,
}

/// Classifies the δ-derivation space: nontrivial means δ ∉ {0, 1} and the
/// space is not contained in the centroid (one rank computation).
pub fn classify(alg: &NAryAlgebra, delta: &Rational) -> ClassifyReport {
    let system = DerivationSystem::build(alg);
    let gamma = centroid(alg);
    classify_with(alg, &system, &gamma, delta)
}

/// Same as [`classify`] but reusing a built system and centroid.
pub fn classify_with(
    alg: &NAryAlgebra,
    system: &DerivationSystem,
    gamma: &SubspaceBasis,
    delta: &Rational,
) -> ClassifyReport {
    let space = derivation_space_with(alg, system, delta);
    let subspace = space.as_subspace(alg.dim());
    let excluded = delta.is_zero() || delta.is_one();
    let contained = subspace.is_subspace_of(gamma).expect("same ambient");
    let has_nontrivial = !excluded && !contained;
    let witness = if has_nontrivial {
        space
            .basis
            .iter()
            .find(|m| !gamma.contains(&m.flatten()))
            .cloned()
    } else {
        None
    };
    ClassifyReport {
        delta: delta.clone(),
        dimension: space.dimension,
        centroid_dimension: gamma.dim(),
        has_nontrivial,
        witness,
    }
}

/// The reproducible random probe used by [`scan`].
#[derive(Clone, Debug, Serialize)]
pub struct GenericProbe {
    pub delta: Rational,
    pub seed: u64,
}

/// Parametric analysis of the δ-derivation system.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    /// Solution dimension away from all exceptional values: `d² − rank` over
    /// the rational-function field.
    pub generic_dimension: usize,
    /// Sorted, deduplicated candidate set: rational pivot roots, the
    /// structural values, caller extras and the generic probe.
    pub exceptional_candidates: Vec<Rational>,
    /// Candidates whose verified dimension strictly exceeds the generic one.
    pub confirmed_exceptional: Vec<Rational>,
    /// Squarefree pivot factors of degree ≥ 2 with no rational roots, as
    /// coefficient lists (lowest degree first).
    pub irrational_factors: Vec<DeltaPoly>,
    pub generic_probe: GenericProbe,
    /// One classification per candidate, ascending by δ.
    pub reports: Vec<ClassifyReport>,
}

/// Runs the parametric elimination, collects candidate exceptional δ values
/// (pivot roots ∪ structural set ∪ `extra_candidates` ∪ a seeded random
/// probe with denominator > 10⁶) and classifies each candidate.
pub fn scan(alg: &NAryAlgebra, extra_candidates: &[Rational]) -> ScanReport {
    let system = DerivationSystem::build(alg);
    let gamma = centroid(alg);
    let elimination = parametric_eliminate(system.matrix());
    let generic_dimension = system.unknowns() - elimination.generic_rank;

    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    let mut irrational: BTreeSet<DeltaPoly> = BTreeSet::new();
    for pivot in &elimination.pivot_polys {
        let roots = pivot.rational_roots().expect("pivots are nonzero");
        // peel the rational roots off the squarefree part; a degree ≥ 2
        // residual has only irrational or complex roots
        let mut residual = pivot.squarefree_part().primitive();
        for root in &roots {
            let lin = DeltaPoly::from_coeffs(vec![
                Rational::from(-root.numerator().clone()),
                Rational::from(root.denominator().clone()),
            ]);
            residual = residual.exact_div(&lin);
        }
        if residual.degree().unwrap_or(0) >= 2 {
            irrational.insert(residual.primitive());
        }
        candidates.extend(roots);
    }
    // structural candidates, always probed regardless of the pivot sequence
    candidates.extend([
        Rational::from(-1),
        Rational::of(1, 2),
        Rational::zero(),
        Rational::one(),
        Rational::new(1, alg.arity() as i64).expect("arity ≥ 2"),
    ]);
    candidates.extend(extra_candidates.iter().cloned());

    let probe = draw_generic_probe(&candidates);
    candidates.insert(probe.delta.clone());

    let reports: Vec<ClassifyReport> = candidates
        .iter()
        .map(|delta| classify_with(alg, &system, &gamma, delta))
        .collect();
    let confirmed = reports
        .iter()
        .filter(|r| r.dimension > generic_dimension)
        .map(|r| r.delta.clone())
        .collect();
    ScanReport {
        generic_dimension,
        exceptional_candidates: candidates.into_iter().collect(),
        confirmed_exceptional: confirmed,
        irrational_factors: irrational.into_iter().collect(),
        generic_probe: probe,
        reports,
    }
}

/// The fixed-seed probe value on its own, for callers outside [`scan`].
pub fn generic_probe() -> GenericProbe {
    draw_generic_probe(&BTreeSet::new())
}

/// Draws the fixed-seed probe: a rational with reduced denominator > 10⁶
/// avoiding 0, 1 and every already-known candidate.
fn draw_generic_probe(avoid: &BTreeSet<Rational>) -> GenericProbe {
    let mut rng = ChaCha20Rng::seed_from_u64(SCAN_PROBE_SEED);
    loop {
        let den = rng.gen_range(1_000_001i64..10_000_000);
        let num = rng.gen_range(1i64..1_000_000) * if rng.gen_range(0u8..2) == 0 { 1 } else { -1 };
        let delta = Rational::new(num, den).expect("den > 0");
        if delta.denominator() > &num_bigint::BigInt::from(1_000_000)
            && !delta.is_zero()
            && !delta.is_one()
            && !avoid.contains(&delta)
        {
            return GenericProbe {
                delta,
                seed: SCAN_PROBE_SEED,
            };
        }
    }
}

/// Span of the operators `[R_{x,y}, R_{x,z}] + R_{x,[y,x,z]}` over all basis
/// triples of a ternary algebra, as flattened maps in canonical form.
pub fn inner_derivations(alg: &NAryAlgebra) -> Result<SubspaceBasis> {
    if alg.arity() != 3 {
        return Err(Error::NotTernary(alg.arity()));
    }
    let d = alg.dim();
    let basis: Vec<Vector> = (0..d).map(|i| basis_vector(d, i)).collect();
    let mut generators = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let r_xy = alg.right_mul(&[basis[x].clone(), basis[y].clone()])?;
            for z in 0..d {
                let r_xz = alg.right_mul(&[basis[x].clone(), basis[z].clone()])?;
                let inner = alg.bracket_basis(&[y, x, z]);
                let r_xw = alg.right_mul(&[basis[x].clone(), inner])?;
                let generator = r_xy.commutator(&r_xz).add(&r_xw);
                let flat = generator.flatten();
                if flat.iter().any(|c| !c.is_zero()) {
                    generators.push(flat);
                }
            }
        }
    }
    Ok(SubspaceBasis::from_spanning(d * d, generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::FamilySpec;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn build(s: &str) -> NAryAlgebra {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn trivial_family_system_is_identically_zero() {
        let alg = build("A1:n=3");
        let system = DerivationSystem::build(&alg);
        assert!(system.matrix().entries().iter().all(DeltaPoly::is_zero));
        let space = derivation_space(&alg, &Rational::of(7, 5));
        assert_eq!(space.dimension, 16);
    }

    #[test]
    fn one_relator_family_dimensions() {
        let alg = build("B1:n=3");
        for delta in [q(2), q(-1), Rational::of(1, 3)] {
            let space = derivation_space(&alg, &delta);
            assert_eq!(space.dimension, 12, "δ = {delta}");
            // first row is zero off the corner and tied to the diagonal sum
            for map in &space.basis {
                let m = &map.matrix;
                for j in 1..4 {
                    assert!(m.at(0, j).is_zero());
                }
                let tail: Rational = (1..4).fold(q(0), |acc, k| acc + m.at(k, k));
                assert_eq!(m.at(0, 0), &(&delta * &tail));
            }
        }
    }

    #[test]
    fn simple_algebra_has_no_generic_derivations() {
        let alg = build("Dr:n=3,r=4");
        assert_eq!(derivation_space(&alg, &q(2)).dimension, 0);
        assert_eq!(derivation_space(&alg, &q(-1)).dimension, 9);
    }

    #[test]
    fn centroid_dimensions() {
        assert_eq!(centroid(&build("Dr:n=3,r=4")).dim(), 1);
        assert_eq!(centroid(&build("A1:n=3")).dim(), 16);
        assert_eq!(centroid(&build("B1:n=3")).dim(), 10);
    }

    #[test]
    fn centroid_of_simple_algebra_is_scalars() {
        let gamma = centroid(&build("Dr:n=2,r=3"));
        assert_eq!(gamma.dim(), 1);
        assert_eq!(gamma.vectors[0], LinearMap::identity(3).flatten());
    }

    #[test]
    fn classification_of_the_simple_algebra() {
        let alg = build("Dr:n=3,r=4");
        let anti = classify(&alg, &q(-1));
        assert!(anti.has_nontrivial);
        assert_eq!(anti.dimension, 9);
        assert!(anti.witness.is_some());
        let half = classify(&alg, &Rational::of(1, 2));
        assert!(!half.has_nontrivial);
        assert_eq!(half.dimension, 0);
        assert!(half.witness.is_none());
        // δ = 1/n solutions are exactly the centroid: trivial by definition
        let third = classify(&alg, &Rational::of(1, 3));
        assert_eq!(third.dimension, 1);
        assert!(!third.has_nontrivial);
    }

    #[test]
    fn delta_excluded_values_are_never_nontrivial() {
        let alg = build("B1:n=2");
        assert!(!classify(&alg, &q(0)).has_nontrivial);
        assert!(!classify(&alg, &q(1)).has_nontrivial);
        assert!(classify(&alg, &q(2)).has_nontrivial);
    }

    #[test]
    fn scan_finds_the_quadratic_jump_values() {
        let alg = build("C2:n=3,beta=3/2");
        let report = scan(&alg, &[]);
        assert_eq!(report.generic_dimension, 8);
        for v in [Rational::of(-1, 4), q(-4)] {
            assert!(report.exceptional_candidates.contains(&v), "missing {v}");
            assert!(report.confirmed_exceptional.contains(&v), "unconfirmed {v}");
        }
        // δ = −1 is a candidate but no jump happens there for this family
        assert!(report.exceptional_candidates.contains(&q(-1)));
        assert!(!report.confirmed_exceptional.contains(&q(-1)));
        let at = |v: &Rational| {
            report
                .reports
                .iter()
                .find(|r| &r.delta == v)
                .map(|r| r.dimension)
                .unwrap()
        };
        assert_eq!(at(&Rational::of(-1, 4)), 9);
        assert_eq!(at(&q(-4)), 9);
        assert_eq!(at(&report.generic_probe.delta), 8);
    }

    #[test]
    fn pivot_roots_of_the_quadratic_family_system() {
        // the jump values surface as rational roots of the elimination pivots,
        // not only through the structural candidate set
        let alg = build("C2:n=3,beta=3/2");
        let system = DerivationSystem::build(&alg);
        let elim = parametric_eliminate(system.matrix());
        let mut roots: Vec<Rational> = elim
            .pivot_polys
            .iter()
            .flat_map(|p| p.rational_roots().unwrap())
            .collect();
        roots.sort();
        roots.dedup();
        assert!(roots.contains(&Rational::of(-1, 4)), "roots: {roots:?}");
        assert!(roots.contains(&q(-4)), "roots: {roots:?}");
    }

    #[test]
    fn scan_reports_the_irrational_quadratic() {
        let alg = build("C2:n=3,beta=1");
        let report = scan(&alg, &[]);
        let expect = DeltaPoly::from_coeffs(vec![q(1), q(3), q(1)]);
        assert!(
            report.irrational_factors.contains(&expect),
            "factors: {:?}",
            report.irrational_factors
        );
        // the only rational jump for this β is the classical value δ = 1
        assert_eq!(report.confirmed_exceptional, vec![q(1)]);
    }

    #[test]
    fn scan_of_antisymmetric_pair_family_sees_minus_one() {
        let alg = build("C1:n=3,alpha=2");
        let report = scan(&alg, &[]);
        assert_eq!(report.generic_dimension, 8);
        assert!(report.confirmed_exceptional.contains(&q(-1)));
        let at_minus_one = report.reports.iter().find(|r| r.delta == q(-1)).unwrap();
        assert_eq!(at_minus_one.dimension, 10);
    }

    #[test]
    fn scan_of_trivial_family_has_no_jumps() {
        let report = scan(&build("A1:n=3"), &[]);
        assert_eq!(report.generic_dimension, 16);
        assert!(report.confirmed_exceptional.is_empty());
        assert!(report.reports.iter().all(|r| r.dimension == 16));
    }

    #[test]
    fn probe_is_reproducible_with_large_denominator() {
        let a = scan(&build("B2:n=2"), &[]);
        let b = scan(&build("B2:n=2"), &[]);
        assert_eq!(a.generic_probe.delta, b.generic_probe.delta);
        assert!(a.generic_probe.delta.denominator() > &num_bigint::BigInt::from(1_000_000));
    }

    #[test]
    fn inner_derivation_generators_with_equal_arguments_vanish() {
        let alg = build("M8");
        let d = alg.dim();
        let e = |i| basis_vector(d, i);
        let r_xx = alg.right_mul(&[e(1), e(1)]).unwrap();
        assert_eq!(r_xx, LinearMap::zero(d));
        let r_xz = alg.right_mul(&[e(1), e(2)]).unwrap();
        let w = alg.bracket_basis(&[1, 1, 2]);
        assert!(w.iter().all(Rational::is_zero));
        let generator = r_xx
            .commutator(&r_xz)
            .add(&alg.right_mul(&[e(1), w]).unwrap());
        assert_eq!(generator, LinearMap::zero(d));
    }

    #[test]
    fn inner_derivations_require_ternary() {
        let alg = build("B1:n=4");
        assert!(matches!(inner_derivations(&alg), Err(Error::NotTernary(4))));
    }
}
