//! Univariate polynomials in the parameter δ with rational coefficients.
//!
//! Linear-system entries produced by system assembly have degree ≤ 1; higher
//! degrees appear only as pivots of the fraction-free elimination. The wire
//! format is the coefficient list, lowest degree first: `["1", "0", "-1"]`
//! is 1 − δ².

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::{Error, Result};

/// Polynomial in δ over ℚ. Zero is the empty coefficient list; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaPoly {
    coeffs: Vec<Rational>,
}

impl DeltaPoly {
    pub fn zero() -> Self {
        DeltaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DeltaPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            DeltaPoly::zero()
        } else {
            DeltaPoly { coeffs: vec![c] }
        }
    }

    /// The monomial δ.
    pub fn delta() -> Self {
        DeltaPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// `c0 + c1·δ`, the shape of every assembled system entry.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        DeltaPoly::from_coeffs(vec![c0, c1])
    }

    /// Builds from a low-to-high coefficient list, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        DeltaPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> DeltaPoly {
        if self.coeffs.len() <= 1 {
            return DeltaPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from(k as i64) * c)
            .collect();
        DeltaPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &DeltaPoly) -> (DeltaPoly, DeltaPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let t = &factor * c;
                    rem[k + i] = &rem[k + i] - &t;
                }
                quot[k] = factor;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        (DeltaPoly::from_coeffs(quot), DeltaPoly::from_coeffs(rem))
    }

    /// Division that must be exact; used by fraction-free elimination where
    /// divisibility is guaranteed.
    pub fn exact_div(&self, divisor: &DeltaPoly) -> DeltaPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd, with gcd(0, 0) = 0.
    pub fn gcd(&self, other: &DeltaPoly) -> DeltaPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> DeltaPoly {
        match self.leading() {
            None => DeltaPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                DeltaPoly::from_coeffs(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// The squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> DeltaPoly {
        if self.is_zero() {
            return DeltaPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Clears denominators and content: the result has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> DeltaPoly {
        if self.is_zero() {
            return DeltaPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denominator());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numerator() * (&lcm / c.denominator()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        DeltaPoly::from_coeffs(
            ints.into_iter()
                .map(|v| Rational::from(v / &content))
                .collect(),
        )
    }

    /// All rational roots, each listed once, ascending.
    ///
    /// Works on the squarefree primitive part. Linear and quadratic factors
    /// are solved exactly; for higher degrees candidates come from the
    /// rational root theorem, with divisor sets obtained by trial division
    /// (factors above the trial bound are kept as single divisors, which
    /// covers every input arising from catalog-sized systems).
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        let mut p = self.squarefree_part().primitive();
        // strip δ^k
        if p.coeffs.first().is_some_and(Rational::is_zero) {
            roots.push(Rational::zero());
            let k = p.coeffs.iter().take_while(|c| c.is_zero()).count();
            p = DeltaPoly::from_coeffs(p.coeffs[k..].to_vec());
        }
        loop {
            match p.degree() {
                None | Some(0) => break,
                Some(1) => {
                    roots.push(-(&p.coeffs[0] / &p.coeffs[1]));
                    break;
                }
                Some(2) => {
                    let (a, b, c) = (&p.coeffs[2], &p.coeffs[1], &p.coeffs[0]);
                    let disc = b * b - Rational::of(4, 1) * a * c;
                    if let Some(s) = rational_sqrt(&disc) {
                        let two_a = Rational::of(2, 1) * a;
                        roots.push(&(-b - &s) / &two_a);
                        roots.push(&(-b + &s) / &two_a);
                    }
                    break;
                }
                Some(_) => {
                    let found = first_root_by_candidates(&p);
                    match found {
                        Some(r) => {
                            // divide out (q·δ − p)
                            let lin = DeltaPoly::from_coeffs(vec![
                                Rational::from(-r.numerator().clone()),
                                Rational::from(r.denominator().clone()),
                            ]);
                            p = p.exact_div(&lin);
                            roots.push(r);
                        }
                        None => break,
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

/// √x if x is the square of a rational, else `None`.
fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if x.numerator().is_negative() {
        return None;
    }
    let ns = x.numerator().sqrt();
    let ds = x.denominator().sqrt();
    if &(&ns * &ns) == x.numerator() && &(&ds * &ds) == x.denominator() {
        Some(Rational::new(ns, ds).unwrap())
    } else {
        None
    }
}

/// Rational-root-theorem scan over a primitive integer polynomial with
/// nonzero constant term. Returns the first root found, if any.
fn first_root_by_candidates(p: &DeltaPoly) -> Option<Rational> {
    let a0 = p.coeffs[0].numerator().abs();
    let an = p.leading().unwrap().numerator().abs();
    let nums = divisors(&a0);
    let dens = divisors(&an);
    for n in &nums {
        for d in &dens {
            for sign in [1i64, -1] {
                let cand = Rational::new(n * sign, d.clone()).unwrap();
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Positive divisors of `n` from a trial-division factorization (bound 2^20);
/// any remaining cofactor is treated as a single prime factor.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1u32 << 20);
    while &d * &d <= m && d <= bound {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < &Rational::zero() { "-" } else { "+" })?;
            } else if c < &Rational::zero() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "δ")?;
                    } else {
                        write!(f, "δ^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add<&DeltaPoly> for &DeltaPoly {
    type Output = DeltaPoly;
    fn add(self, rhs: &DeltaPoly) -> DeltaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl Sub<&DeltaPoly> for &DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: &DeltaPoly) -> DeltaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl Mul<&DeltaPoly> for &DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: &DeltaPoly) -> DeltaPoly {
        if self.is_zero() || rhs.is_zero() {
            return DeltaPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl Neg for &DeltaPoly {
    type Output = DeltaPoly;
    fn neg(self) -> DeltaPoly {
        DeltaPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}
