//! Exact-arithmetic engine for finite-dimensional n-ary algebras given by
//! structure constants.
//!
//! The crate provides:
//!
//! * an exact scalar tower ([`Rational`], [`DeltaPoly`]) and dense linear
//!   algebra over it (`rref`, nullspaces, subspace comparison, fraction-free
//!   parametric elimination),
//! * the n-ary algebra data model with antisymmetric structure constants,
//!   bracket evaluation and identity checkers (Filippov, n-ary Malcev),
//! * constructors for the catalog of (n+1)-dimensional n-ary algebras, the
//!   octonions and the ternary Malcev algebra `M8`,
//! * solvers for δ-derivation spaces, centroids and inner derivations, with
//!   parametric detection of exceptional δ values,
//! * a claim-verification suite producing deterministic reports.
//!
//! Everything is computed over ℚ with arbitrary-precision integers; there is
//! no floating point anywhere and all results are bit-reproducible.

pub mod algebra;
pub mod bareiss;
pub mod catalog;
pub mod dsolve;
pub mod lemma;
pub mod matrix;
pub mod octonion;
pub mod poly;
pub mod rational;
pub mod subspace;
pub mod verify;

pub use algebra::{LinearMap, NAryAlgebra, Vector, Violation};
pub use catalog::{Family, FamilySpec};
pub use dsolve::{ClassifyReport, DerivationSpace, DerivationSystem, ScanReport};
pub use lemma::LemmaProfile;
pub use matrix::Matrix;
pub use octonion::CompositionAlgebra;
pub use poly::DeltaPoly;
pub use rational::Rational;
pub use subspace::SubspaceBasis;

/// Errors produced by loaders, constructors and solvers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientDimensionMismatch(usize, usize),
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial has all roots")]
    ZeroPolynomial,
    #[error("invalid family spec {spec:?}: {reason}")]
    InvalidFamilySpec { spec: String, reason: String },
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("no block profile is defined for family {0}")]
    NoLemmaProfile(String),
    #[error("inner derivations require a ternary algebra, got arity {0}")]
    NotTernary(usize),
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
