//! Linear plumbings of disk bundles over spheres and their −1 blow-downs.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights of a linear plumbing graph, left to right. Any signs are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlumbingChain {
    #[serde(with = "crate::decimal::vec")]
    weights: Vec<i64>,
}

impl PlumbingChain {
    pub fn new(weights: Vec<i64>) -> Self {
        PlumbingChain { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl fmt::Display for PlumbingChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(ToString::to_string).collect();
        write!(f, "({})", w.join(","))
    }
}

/// The chain `(−3)ⁿ⁻¹, −2, −1, (−3)ⁿ⁻², −2` of the rational blow-up of CP².
pub fn rb_chain(n: usize) -> Result<PlumbingChain> {
    if n < 2 {
        return Err(Error::invalid(format!("rb_chain needs n ≥ 2, got {n}")));
    }
    let mut w = vec![-3; n - 1];
    w.extend([-2, -1]);
    w.extend(std::iter::repeat_n(-3, n - 2));
    w.push(-2);
    Ok(PlumbingChain::new(w))
}

/// Blows down the −1 vertex at 1-based `index`.
///
/// Its neighbours gain +1 and become adjacent; an end vertex only changes
/// its single neighbour, and an isolated vertex simply disappears.
pub fn blow_down(c: &PlumbingChain, index: usize) -> Result<PlumbingChain> {
    let w = &c.weights;
    if index == 0 || index > w.len() {
        return Err(Error::invalid(format!("index {index} is outside a chain of length {}", w.len())));
    }
    let i = index - 1;
    if w[i] != -1 {
        return Err(Error::invalid(format!("vertex {index} has weight {}, not -1", w[i])));
    }
    let mut out = w.clone();
    out.remove(i);
    if i > 0 {
        out[i - 1] += 1;
    }
    if i < out.len() {
        out[i] += 1;
    }
    Ok(PlumbingChain::new(out))
}

/// Blows down −1 vertices until none is left, always taking the rightmost.
/// Returns the final chain and the number of blow-downs.
pub fn reduce(c: &PlumbingChain) -> (PlumbingChain, usize) {
    let mut cur = c.clone();
    let mut count = 0;
    while let Some(i) = cur.weights.iter().rposition(|&x| x == -1) {
        cur = blow_down(&cur, i + 1).expect("position holds a -1");
        count += 1;
    }
    (cur, count)
}

/// Determinant of the intersection matrix, via the continuant
/// `dₖ = aₖ·dₖ₋₁ − dₖ₋₂`. The empty chain has determinant 1.
pub fn chain_determinant(c: &PlumbingChain) -> BigInt {
    let (mut prev, mut cur) = (BigInt::from(0), BigInt::from(1));
    for &a in &c.weights {
        let next = BigInt::from(a) * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Outcome of reducing the rational blow-up chain for a given `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleEmbeddingCertificate {
    #[serde(with = "crate::decimal")]
    pub n: usize,
    pub start: PlumbingChain,
    pub final_chain: PlumbingChain,
    #[serde(with = "crate::decimal")]
    pub blowdowns: usize,
    /// Second Betti number `1 + (2n − 1)` of the blown-up manifold.
    #[serde(with = "crate::decimal")]
    pub b2: usize,
}

/// Reduces the rational blow-up chain and checks it ends at `(−3, 0)` after
/// `2n − 2` blow-downs.
pub fn simple_embedding_certificate(n: usize) -> Result<SimpleEmbeddingCertificate> {
    let start = rb_chain(n)?;
    let (final_chain, blowdowns) = reduce(&start);
    if final_chain.weights != [-3, 0] || blowdowns != 2 * n - 2 {
        return Err(Error::internal(format!(
            "chain for n = {n} reduced to {final_chain} after {blowdowns} blow-downs"
        )));
    }
    if chain_determinant(&start).magnitude() != chain_determinant(&final_chain).magnitude() {
        return Err(Error::internal("blow-downs changed |det|"));
    }
    // The start chain has length 2n, i.e. b₂ of the blown-up manifold.
    Ok(SimpleEmbeddingCertificate { n, b2: start.len(), start, final_chain, blowdowns })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(w: &[i64]) -> PlumbingChain {
        PlumbingChain::new(w.to_vec())
    }

    #[test]
    fn rb_chains() {
        assert_eq!(rb_chain(2).unwrap(), chain(&[-3, -2, -1, -2]));
        assert_eq!(rb_chain(3).unwrap(), chain(&[-3, -3, -2, -1, -3, -2]));
        assert!(rb_chain(1).is_err());
    }

    #[test]
    fn single_blow_downs() {
        assert_eq!(blow_down(&chain(&[-3, -2, -1, -2]), 3).unwrap(), chain(&[-3, -1, -1]));
        assert_eq!(blow_down(&chain(&[-3, -1, -1]), 3).unwrap(), chain(&[-3, 0]));
        assert_eq!(blow_down(&chain(&[-1]), 1).unwrap(), chain(&[]));
        assert_eq!(blow_down(&chain(&[-1, -4]), 1).unwrap(), chain(&[-3]));
        assert!(blow_down(&chain(&[-3, -2]), 1).is_err());
        assert!(blow_down(&chain(&[-1]), 2).is_err());
        assert!(blow_down(&chain(&[-1]), 0).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce(&chain(&[-3, -2, -1, -2])), (chain(&[-3, 0]), 2));
        assert_eq!(reduce(&chain(&[-3, -3, -2, -1, -3, -2])), (chain(&[-3, 0]), 4));
        assert_eq!(reduce(&chain(&[-3, 0])), (chain(&[-3, 0]), 0));
    }

    #[test]
    fn determinants() {
        assert_eq!(chain_determinant(&chain(&[-3, 0])), BigInt::from(-1));
        assert_eq!(chain_determinant(&chain(&[-3, -2, -1, -2])), BigInt::from(-1));
        assert_eq!(chain_determinant(&chain(&[7])), BigInt::from(7));
        assert_eq!(chain_determinant(&chain(&[])), BigInt::from(1));
    }

    #[test]
    fn certificates() {
        let c = simple_embedding_certificate(2).unwrap();
        assert_eq!((c.final_chain, c.blowdowns, c.b2), (chain(&[-3, 0]), 2, 4));
        let c = simple_embedding_certificate(5).unwrap();
        assert_eq!((c.final_chain, c.blowdowns, c.b2), (chain(&[-3, 0]), 8, 10));
        assert!(simple_embedding_certificate(1).is_err());
    }
}
