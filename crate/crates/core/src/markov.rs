//! Markov triples and the symplectic classification of the balls `B(p,q)`.
//!
//! A Markov triple is a positive solution of `a² + b² + c² = 3abc`. Every
//! triple is reached from `(1,1,1)` by Vieta moves `x ↦ 3yz − x`, and the
//! entries grow doubly exponentially along the tree, so everything here is
//! arbitrary precision.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, LimitKind, Result, SearchStats};

/// Default cap on the number of triples held by [`enumerate_triples`].
pub const DEFAULT_TRIPLE_LIMIT: usize = 1_000_000;

/// A Markov triple stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MarkovTriple {
    #[serde(with = "crate::decimal")]
    a: BigUint,
    #[serde(with = "crate::decimal")]
    b: BigUint,
    #[serde(with = "crate::decimal")]
    c: BigUint,
}

impl MarkovTriple {
    /// Sorts the entries and checks the Markov equation and pairwise coprimality.
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>, c: impl Into<BigUint>) -> Result<Self> {
        let mut v = [a.into(), b.into(), c.into()];
        if v.iter().any(Zero::is_zero) {
            return Err(Error::invalid("Markov triple entries must be positive"));
        }
        v.sort();
        let [a, b, c] = v;
        if !markov_holds(&a, &b, &c) {
            return Err(Error::invalid(format!("({a},{b},{c}) does not satisfy a²+b²+c² = 3abc")));
        }
        if !(a.gcd(&b).is_one() && a.gcd(&c).is_one() && b.gcd(&c).is_one()) {
            return Err(Error::internal(format!("Markov triple ({a},{b},{c}) is not pairwise coprime")));
        }
        Ok(MarkovTriple { a, b, c })
    }

    pub fn root() -> Self {
        MarkovTriple { a: BigUint::one(), b: BigUint::one(), c: BigUint::one() }
    }

    fn from_sorted_unchecked(mut v: [BigUint; 3]) -> Self {
        v.sort();
        let [a, b, c] = v;
        debug_assert!(markov_holds(&a, &b, &c));
        MarkovTriple { a, b, c }
    }

    pub fn entries(&self) -> [&BigUint; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// The largest entry.
    pub fn largest(&self) -> &BigUint {
        &self.c
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn markov_holds(a: &BigUint, b: &BigUint, c: &BigUint) -> bool {
    a * a + b * b + c * c == BigUint::from(3u32) * a * b * c
}

/// Tests the Markov equation. All three entries must be positive.
pub fn is_markov(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<bool> {
    let (a, b, c) = (a.into(), b.into(), c.into());
    if !(a.is_positive() && b.is_positive() && c.is_positive()) {
        return Err(Error::invalid("is_markov needs positive integers"));
    }
    Ok(&a * &a + &b * &b + &c * &c == BigInt::from(3) * &a * &b * &c)
}

/// Replaces the entry at `position` (1-based, in sorted order) by `3yz − x`.
pub fn vieta_neighbor(t: &MarkovTriple, position: usize) -> Result<MarkovTriple> {
    if !(1..=3).contains(&position) {
        return Err(Error::invalid(format!("position must be 1, 2 or 3, got {position}")));
    }
    let mut v = [t.a.clone(), t.b.clone(), t.c.clone()];
    let i = position - 1;
    let (y, z) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
    // x·x' = y² + z² > 0, so 3yz − x is positive for a valid triple.
    let replaced = BigUint::from(3u32) * y * z - &v[i];
    v[i] = replaced;
    Ok(MarkovTriple::from_sorted_unchecked(v))
}

/// All Markov triples with maximum at most `bound`, in lexicographic order.
pub fn enumerate_triples(bound: impl Into<BigUint>) -> Result<Vec<MarkovTriple>> {
    enumerate_triples_with_limit(bound, DEFAULT_TRIPLE_LIMIT)
}

/// Like [`enumerate_triples`] with an explicit cap on the number of triples kept.
pub fn enumerate_triples_with_limit(bound: impl Into<BigUint>, max_triples: usize) -> Result<Vec<MarkovTriple>> {
    let bound = bound.into();
    if bound.is_zero() {
        return Err(Error::invalid("enumeration bound must be at least 1"));
    }
    // Moving away from the parent never decreases the maximum, so pruning at
    // the bound keeps every triple whose path from the root stays in range.
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let root = MarkovTriple::root();
    seen.insert(root.clone());
    queue.push_back(root);
    while let Some(t) = queue.pop_front() {
        for pos in 1..=3 {
            let n = vieta_neighbor(&t, pos)?;
            if n.c <= bound && !seen.contains(&n) {
                if seen.len() >= max_triples {
                    return Err(Error::LimitExceeded {
                        kind: LimitKind::Triples,
                        stats: SearchStats { nodes: seen.len() as u64, leaves: 0 },
                    });
                }
                seen.insert(n.clone());
                queue.push_back(n);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The residue `0 < u < p/2` with `b ≡ ±u·a (mod p)`, where `p` is the maximum.
///
/// For `p ≤ 2` the residue is not well defined and an error is returned.
pub fn characteristic_number(t: &MarkovTriple) -> Result<BigUint> {
    let p = &t.c;
    if *p <= BigUint::from(2u32) {
        return Err(Error::invalid(format!("characteristic number is undefined for maximum {p} (need p ≥ 3)")));
    }
    let a_inv = t.a.modinv(p).ok_or_else(|| Error::internal(format!("{} not invertible mod {p}", t.a)))?;
    let u = (&t.b * a_inv) % p;
    Ok(min_residue(u, p))
}

fn min_residue(r: BigUint, p: &BigUint) -> BigUint {
    let other = p - &r;
    if other < r {
        other
    } else {
        r
    }
}

/// The odd-indexed Fibonacci number `F(2k−1)`: 1, 2, 5, 13, 34, …
pub fn odd_fibonacci(k: u64) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::invalid("odd_fibonacci needs k ≥ 1"));
    }
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    // prev = F(2j−3), cur = F(2j−1); F(−1) = 1 makes the recursion start cleanly.
    for _ in 1..k {
        let next = BigUint::from(3u32) * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// A rational homology ball `B(p,q)` in canonical form `q ≤ p − q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BallSpec {
    #[serde(with = "crate::decimal")]
    p: BigUint,
    #[serde(with = "crate::decimal")]
    q: BigUint,
}

impl BallSpec {
    pub fn new(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p < BigUint::from(2u32) {
            return Err(Error::invalid(format!("B(p,q) needs p ≥ 2, got p = {p}")));
        }
        if q.is_zero() || q >= p {
            return Err(Error::invalid(format!("B(p,q) needs 1 ≤ q < p, got ({p},{q})")));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::invalid(format!("B(p,q) needs gcd(p,q) = 1, got ({p},{q})")));
        }
        let q = min_residue(q, &p);
        Ok(BallSpec { p, q })
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `(p, q)` as machine integers, if they fit.
    pub fn to_u64(&self) -> Option<(u64, u64)> {
        Some((self.p.to_u64()?, self.q.to_u64()?))
    }
}

impl fmt::Display for BallSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{})", self.p, self.q)
    }
}

/// The balls `B(p_i, q_i)` with `q_i = ±3 p_j / p_k (mod p_i)`, one per entry `p_i ≥ 2`.
pub fn ball_params(t: &MarkovTriple) -> Result<Vec<BallSpec>> {
    let v = t.entries();
    let three = BigUint::from(3u32);
    let mut balls = Vec::new();
    for i in 0..3 {
        let p = v[i];
        if p.is_one() {
            continue;
        }
        let (pj, pk) = (v[(i + 1) % 3], v[(i + 2) % 3]);
        let inv = pk.modinv(p).ok_or_else(|| Error::internal(format!("{pk} not invertible mod {p}")))?;
        let q = (&three * pj * inv) % p;
        balls.push(BallSpec::new(p.clone(), q)?);
    }
    Ok(balls)
}

/// Result of the arithmetic symplectic-embeddability test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticVerdict {
    pub symplectic: bool,
    pub witness: Option<MarkovTriple>,
}

/// Decides whether `B(p,q)` embeds symplectically in CP².
///
/// That happens exactly when `p` is the maximum of some Markov triple whose
/// characteristic number `u` satisfies `q ≡ ±3u (mod p)`. Every triple with
/// maximum `p` is examined; uniqueness of Markov triples is not assumed.
pub fn classify_symplectic(ball: &BallSpec, search_bound: impl Into<BigUint>) -> Result<SymplecticVerdict> {
    let bound = search_bound.into();
    let p = &ball.p;
    if bound < *p {
        return Err(Error::invalid(format!("search bound {bound} is below p = {p}")));
    }
    if *p == BigUint::from(2u32) {
        // B(2,1) is the only ball with p = 2, realised by (1,1,2).
        return Ok(SymplecticVerdict {
            symplectic: true,
            witness: Some(MarkovTriple::from_sorted_unchecked([1u32.into(), 1u32.into(), 2u32.into()])),
        });
    }
    let three = BigUint::from(3u32);
    for t in enumerate_triples(bound)?.into_iter().filter(|t| t.c == *p) {
        let u = characteristic_number(&t)?;
        if min_residue((&three * u) % p, p) == ball.q {
            return Ok(SymplecticVerdict { symplectic: true, witness: Some(t) });
        }
    }
    Ok(SymplecticVerdict { symplectic: false, witness: None })
}

/// Verdicts for `B(F(2n+1), F(2n−1))`, `n = 1..=n_max`.
pub fn fibonacci_symplectic_table(n_max: u64) -> Result<Vec<(u64, SymplecticVerdict)>> {
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    (1..=n_max)
        .map(|n| {
            let p = odd_fibonacci(n + 1)?;
            let ball = BallSpec::new(p.clone(), odd_fibonacci(n)?)?;
            Ok((n, classify_symplectic(&ball, p)?))
        })
        .collect()
}
