//! Hirzebruch–Jung (negative) continued fractions
//! `[a₁,…,aₖ] = a₁ − 1/(a₂ − 1/(⋯ − 1/aₖ))` with every `aᵢ ≥ 2`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::markov::odd_fibonacci;

/// A nonempty coefficient list with every entry at least 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HJExpansion(Vec<u64>);

impl HJExpansion {
    pub fn new(coefficients: Vec<u64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("continued fraction needs at least one coefficient"));
        }
        if let Some(a) = coefficients.iter().find(|&&a| a < 2) {
            return Err(Error::invalid(format!("coefficient {a} is below 2")));
        }
        Ok(HJExpansion(coefficients))
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficients as signed weights for lattice and plumbing code.
    pub fn weights(&self) -> Vec<i64> {
        self.0.iter().map(|&a| a as i64).collect()
    }
}

impl TryFrom<Vec<u64>> for HJExpansion {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        HJExpansion::new(v)
    }
}

impl From<HJExpansion> for Vec<u64> {
    fn from(e: HJExpansion) -> Self {
        e.0
    }
}

impl Serialize for HJExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::decimal::vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for HJExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<u64> = crate::decimal::vec::deserialize(d)?;
        HJExpansion::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// A positive fraction in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    #[serde(with = "crate::decimal")]
    numerator: BigUint,
    #[serde(with = "crate::decimal")]
    denominator: BigUint,
}

impl Fraction {
    /// Reduces `n/d`. The denominator must be nonzero.
    pub fn new(n: impl Into<BigUint>, d: impl Into<BigUint>) -> Result<Self> {
        let (n, d) = (n.into(), d.into());
        if d.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        let g = n.gcd(&d);
        if g.is_zero() {
            return Ok(Fraction { numerator: n, denominator: d });
        }
        Ok(Fraction { numerator: n / &g, denominator: d / &g })
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Evaluates the continued fraction from the innermost coefficient outwards.
pub fn hj_eval(e: &HJExpansion) -> Fraction {
    let mut coeffs = e.0.iter().rev();
    let mut num = BigUint::from(*coeffs.next().expect("expansion is nonempty"));
    let mut den = BigUint::one();
    for &a in coeffs {
        // a − den/num = (a·num − den)/num
        let next = BigUint::from(a) * &num - &den;
        den = std::mem::replace(&mut num, next);
    }
    // Continuants of coefficients ≥ 2 are already coprime; reduce anyway.
    Fraction::new(num, den).expect("denominator is positive")
}

/// The unique expansion of `p/q` with every coefficient at least 2.
///
/// Takes `a = ⌈p/q⌉` and continues with `q/(a·q − p)` until the remainder vanishes.
pub fn hj_expand(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Result<HJExpansion> {
    let (mut p, mut q) = (p.into(), q.into());
    if q.is_zero() || p <= q {
        return Err(Error::invalid(format!("hj_expand needs p > q ≥ 1, got {p}/{q}")));
    }
    if !p.gcd(&q).is_one() {
        return Err(Error::invalid(format!("hj_expand needs gcd(p,q) = 1, got {p}/{q}")));
    }
    let mut out = Vec::new();
    while !q.is_zero() {
        let a = p.div_ceil(&q);
        let r = &a * &q - &p;
        out.push(a.to_u64().ok_or_else(|| Error::invalid(format!("coefficient {a} does not fit in 64 bits")))?);
        p = std::mem::replace(&mut q, r);
    }
    HJExpansion::new(out)
}

/// Reverses the coefficient order; for `p/q` this yields `p/q*` with `q·q* ≡ 1 (mod p)`.
pub fn hj_reverse(e: &HJExpansion) -> HJExpansion {
    HJExpansion(e.0.iter().rev().copied().collect())
}

/// Plumbing weights for the lens space `L(p,q)`: the expansion of `p/(p−q)`.
pub fn lens_plumbing(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Result<HJExpansion> {
    let (p, q) = (p.into(), q.into());
    if q.is_zero() || p <= q {
        return Err(Error::invalid(format!("lens_plumbing needs p > q ≥ 1, got L({p},{q})")));
    }
    let dual = &p - &q;
    hj_expand(p, dual)
}

fn repeat3(k: u64) -> impl Iterator<Item = u64> {
    std::iter::repeat_n(3, k as usize)
}

/// The two odd-Fibonacci expansions `[3ⁿ⁻¹,2]` and `[3ⁿ⁻¹,5,3ⁿ⁻²,2]`.
///
/// Both are checked against `F(2n+1)/F(2n−1)` and
/// `F(2n+1)²/(F(2n+1)F(2n−1) − 1)` before being returned.
pub fn fibonacci_identities(n: u64) -> Result<(HJExpansion, HJExpansion)> {
    if n < 2 {
        return Err(Error::invalid(format!("fibonacci_identities needs n ≥ 2, got {n}")));
    }
    let short = HJExpansion(repeat3(n - 1).chain([2]).collect());
    let long = HJExpansion(repeat3(n - 1).chain([5]).chain(repeat3(n - 2)).chain([2]).collect());

    let big = odd_fibonacci(n + 1)?;
    let small = odd_fibonacci(n)?;
    if hj_eval(&short) != Fraction::new(big.clone(), small.clone())? {
        return Err(Error::internal(format!("{short} does not evaluate to F(2n+1)/F(2n-1) at n = {n}")));
    }
    let num = &big * &big;
    let den = &big * &small - 1u32;
    if hj_eval(&long) != Fraction::new(num, den)? {
        return Err(Error::internal(format!("{long} does not evaluate to the squared ratio at n = {n}")));
    }
    Ok((short, long))
}
