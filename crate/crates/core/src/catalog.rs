//! Constructors for the built-in catalog of algebras.
//!
//! The catalog covers the (n+1)-dimensional families `A1`, `B1`, `B2`,
//! `C1(α)`, `C2(β)` and `Dr` (with `r = n+1` the simple member), plus the
//! ternary algebra `M8` on the octonions. Family spec strings follow the
//! grammar `"C2:n=3,beta=3/2"`, `"Dr:n=5,r=3"`, `"M8"`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{NAryAlgebra, Vector};
use crate::octonion;
use crate::rational::Rational;
use crate::{Error, Result};

/// Family tag plus its parameter, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    A1,
    B1,
    B2,
    C1 { alpha: Rational },
    C2 { beta: Rational },
    Dr { r: usize },
    M8,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::A1 => "A1",
            Family::B1 => "B1",
            Family::B2 => "B2",
            Family::C1 { .. } => "C1",
            Family::C2 { .. } => "C2",
            Family::Dr { .. } => "Dr",
            Family::M8 => "M8",
        }
    }
}

/// A fully-determined catalog entry: family plus arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub arity: usize,
}

impl FamilySpec {
    pub fn new(family: Family, arity: usize) -> Self {
        FamilySpec { family, arity }
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::InvalidFamilySpec {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.arity;
        if matches!(self.family, Family::M8) {
            return Ok(()); // arity is fixed to 3 by construction
        }
        if n < 2 {
            return Err(self.err("arity must be ≥ 2"));
        }
        match &self.family {
            Family::C1 { alpha } if alpha.is_zero() => Err(self.err("alpha must be nonzero")),
            Family::C2 { beta } if beta.is_zero() => Err(self.err("beta must be nonzero")),
            Family::Dr { r } if !(3..=n + 1).contains(r) => {
                Err(self.err(format!("r must satisfy 3 ≤ r ≤ {}", n + 1)))
            }
            _ => Ok(()),
        }
    }

    /// True for the one simple member, `Dr` with `r = n+1`, and for `M8`.
    pub fn is_simple(&self) -> bool {
        match &self.family {
            Family::Dr { r } => *r == self.arity + 1,
            Family::M8 => true,
            _ => false,
        }
    }

    /// Builds the algebra. Every family except `M8` is (n+1)-dimensional and
    /// its only nonzero sorted products are the tabulated ones.
    pub fn build(&self) -> Result<NAryAlgebra> {
        self.validate()?;
        if matches!(self.family, Family::M8) {
            return Ok(octonion::build_m8());
        }
        let n = self.arity;
        let d = n + 1;
        let names = (1..=d).map(|i| format!("e{i}")).collect();
        let mut products: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
        let full: Vec<usize> = (0..d).collect();
        let omit = |i: usize| -> Vec<usize> { full.iter().copied().filter(|&j| j != i).collect() };
        let unit = |i: usize| -> Vector {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        match &self.family {
            Family::A1 => {}
            Family::B1 => {
                // [e_2, …, e_{n+1}] = e_1
                products.insert(omit(0), unit(0));
            }
            Family::B2 => {
                // [e_1, …, e_n] = e_1
                products.insert(omit(d - 1), unit(0));
            }
            Family::C1 { alpha } => {
                // [e_1, …, ê_n, e_{n+1}] = e_n and [e_1, …, e_n] = α·e_{n+1}
                products.insert(omit(n - 1), unit(n - 1));
                let mut v = vec![Rational::zero(); d];
                v[n] = alpha.clone();
                products.insert(omit(d - 1), v);
            }
            Family::C2 { beta } => {
                // [e_1, …, ê_n, e_{n+1}] = e_n + β·e_{n+1}, [e_1, …, e_n] = e_{n+1}
                let mut v = unit(n - 1);
                v[n] = beta.clone();
                products.insert(omit(n - 1), v);
                products.insert(omit(d - 1), unit(n));
            }
            Family::Dr { r } => {
                // [e_1, …, ê_i, …, e_{n+1}] = e_i for i ≤ r, zero above
                for i in 0..*r {
                    products.insert(omit(i), unit(i));
                }
            }
            Family::M8 => unreachable!(),
        }
        NAryAlgebra::new(n, d, names, products)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::M8 => write!(f, "M8"),
            Family::A1 | Family::B1 | Family::B2 => {
                write!(f, "{}:n={}", self.family.tag(), self.arity)
            }
            Family::C1 { alpha } => write!(f, "C1:n={},alpha={alpha}", self.arity),
            Family::C2 { beta } => write!(f, "C2:n={},beta={beta}", self.arity),
            Family::Dr { r } => write!(f, "Dr:n={},r={r}", self.arity),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidFamilySpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (tag, rest) = match s.split_once(':') {
            Some((t, r)) => (t.trim(), Some(r)),
            None => (s.trim(), None),
        };
        if tag == "M8" {
            if rest.is_some() {
                return Err(bad("M8 takes no parameters"));
            }
            return Ok(FamilySpec::new(Family::M8, 3));
        }
        let mut n: Option<usize> = None;
        let mut alpha: Option<Rational> = None;
        let mut beta: Option<Rational> = None;
        let mut r: Option<usize> = None;
        if let Some(rest) = rest {
            for part in rest.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| bad("expected key=value parameters"))?;
                match key.trim() {
                    "n" => n = Some(value.trim().parse().map_err(|_| bad("bad n"))?),
                    "alpha" => alpha = Some(value.trim().parse()?),
                    "beta" => beta = Some(value.trim().parse()?),
                    "r" => r = Some(value.trim().parse().map_err(|_| bad("bad r"))?),
                    other => return Err(bad(&format!("unknown parameter {other:?}"))),
                }
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        let family = match tag {
            "A1" => Family::A1,
            "B1" => Family::B1,
            "B2" => Family::B2,
            "C1" => Family::C1 {
                alpha: alpha.ok_or_else(|| bad("C1 requires alpha"))?,
            },
            "C2" => Family::C2 {
                beta: beta.ok_or_else(|| bad("C2 requires beta"))?,
            },
            "Dr" => Family::Dr {
                r: r.ok_or_else(|| bad("Dr requires r"))?,
            },
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        let spec = FamilySpec::new(family, n);
        spec.validate()?;
        Ok(spec)
    }
}
