//! Integer lattices given by Gram matrices, and their isometric embeddings
//! into the standard diagonal lattice ℤᵐ.

mod complement;
mod embedding;
mod search;

pub use complement::{orthogonal_complement, Complement};
pub use embedding::{
    canonical_form, is_isometric_embedding, is_primitive_vector, unit_pairing_profile, EmbeddingClass, EmbeddingMatrix,
    UnitPairing, UnitPairingProfile,
};
pub use search::{
    class_counts_by_ambient, enumerate_embedding_classes, search_embeddings, AmbientCount, ClassEnumeration,
    SearchLimits, SearchOutcome, DEFAULT_MAX_NODES,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite-rank lattice presented by the Gram matrix of an ordered basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramLattice {
    #[serde(with = "crate::decimal::matrix")]
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    /// Checks that `gram` is a nonempty symmetric square matrix.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let k = gram.len();
        if k == 0 {
            return Err(Error::invalid("lattice must have positive rank"));
        }
        if gram.iter().any(|row| row.len() != k) {
            return Err(Error::invalid("Gram matrix must be square"));
        }
        for (i, row) in gram.iter().enumerate() {
            for j in 0..i {
                if row[j] != gram[j][i] {
                    return Err(Error::invalid(format!("Gram matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(GramLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// The same lattice with its basis listed in reverse order.
    pub fn reversed(&self) -> GramLattice {
        let k = self.rank();
        let gram = (0..k).map(|i| (0..k).map(|j| self.gram[k - 1 - i][k - 1 - j]).collect()).collect();
        GramLattice { gram }
    }

    /// Sylvester's criterion: every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> bool {
        let minors = bareiss_leading_minors(&self.gram);
        minors.len() == self.rank() && minors.iter().all(Signed::is_positive)
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.gram.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The linear lattice `Λ(a₁,…,aₖ)`: weights on the diagonal, −1 between neighbours.
pub fn linear_lattice(weights: &[i64]) -> Result<GramLattice> {
    let k = weights.len();
    if k == 0 {
        return Err(Error::invalid("linear lattice needs at least one weight"));
    }
    let mut gram = vec![vec![0; k]; k];
    for (i, &w) in weights.iter().enumerate() {
        gram[i][i] = w;
        if i + 1 < k {
            gram[i][i + 1] = -1;
            gram[i + 1][i] = -1;
        }
    }
    GramLattice::new(gram)
}

/// Orthogonal direct sum with the basis of `a` listed first.
pub fn direct_sum(a: &GramLattice, b: &GramLattice) -> GramLattice {
    let (ka, kb) = (a.rank(), b.rank());
    let mut gram = vec![vec![0; ka + kb]; ka + kb];
    for (dst, src) in gram.iter_mut().zip(&a.gram) {
        dst[..ka].copy_from_slice(src);
    }
    for (dst, src) in gram[ka..].iter_mut().zip(&b.gram) {
        dst[ka..].copy_from_slice(src);
    }
    GramLattice { gram }
}

/// Direct sum of a list of lattices; the list must be nonempty.
pub fn direct_sum_all(parts: &[GramLattice]) -> Result<GramLattice> {
    let (first, rest) = parts.split_first().ok_or_else(|| Error::invalid("direct sum of an empty list"))?;
    Ok(rest.iter().fold(first.clone(), |acc, l| direct_sum(&acc, l)))
}

/// Exact determinant of the Gram matrix.
pub fn lattice_determinant(l: &GramLattice) -> BigInt {
    integer_determinant(&l.gram)
}

/// Exact determinant of a square integer matrix by fraction-free elimination.
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    bareiss(m).0
}

fn bareiss_leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    bareiss(m).1
}

/// Bareiss elimination. Returns the determinant and, when no pivoting was
/// needed, the leading principal minors (a zero minor stops the list there).
fn bareiss(m: &[Vec<i64>]) -> (BigInt, Vec<BigInt>) {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    let mut minors = Vec::with_capacity(n);
    let mut pivoted = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            if !pivoted {
                minors.push(BigInt::zero());
            }
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                    pivoted = true;
                }
                None => {
                    return (BigInt::zero(), minors);
                }
            }
        }
        if !pivoted {
            minors.push(a[k][k].clone());
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    (sign * &a[n - 1][n - 1], minors)
}
