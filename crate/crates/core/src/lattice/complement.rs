use serde::{Deserialize, Serialize};

use super::embedding::{dot, EmbeddingMatrix};
use crate::error::{Error, Result};

/// The saturated orthogonal complement `{x ∈ ℤᵐ : x·vᵢ = 0 for all rows vᵢ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complement {
    #[serde(with = "crate::decimal::matrix")]
    pub basis: Vec<Vec<i64>>,
    #[serde(with = "crate::decimal::matrix")]
    pub gram: Vec<Vec<i64>>,
}

impl Complement {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// For a rank-one complement, the primitive generator (first nonzero
    /// entry positive) and its norm.
    pub fn generator(&self) -> Option<(&[i64], i64)> {
        match self.basis.as_slice() {
            [w] => Some((w.as_slice(), self.gram[0][0])),
            _ => None,
        }
    }
}

/// Integer kernel of the rows of `a`, computed with unimodular column
/// operations so the result is automatically saturated.
pub fn orthogonal_complement(a: &EmbeddingMatrix) -> Result<Complement> {
    let m = a.ambient();
    let mut work: Vec<Vec<i128>> = a.rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // Columns of `u` track the accumulated unimodular transform.
    let mut u: Vec<Vec<i128>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i128).collect()).collect();
    let mut pivot = 0;
    for row in 0..work.len() {
        if pivot == m {
            break;
        }
        for j in pivot + 1..m {
            let b = work[row][j];
            if b == 0 {
                continue;
            }
            let a0 = work[row][pivot];
            let (g, s, t) = ext_gcd(a0, b);
            let (pa, pb) = (a0 / g, b / g);
            // [col_p, col_j] ← [s·col_p + t·col_j, −pb·col_p + pa·col_j], determinant 1.
            combine(&mut work, pivot, j, s, t, -pb, pa)?;
            combine(&mut u, pivot, j, s, t, -pb, pa)?;
        }
        if work[row][pivot] != 0 {
            pivot += 1;
        }
    }
    let mut basis = Vec::with_capacity(m - pivot);
    for j in pivot..m {
        let mut v = Vec::with_capacity(m);
        for row in &u {
            v.push(i64::try_from(row[j]).map_err(|_| Error::internal("complement entry overflows i64"))?);
        }
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        basis.push(v);
    }
    size_reduce(&mut basis);
    for v in &basis {
        if a.rows().iter().any(|r| dot(r, v) != 0) {
            return Err(Error::internal("complement vector is not orthogonal to the image"));
        }
    }
    let gram = basis.iter().map(|x| basis.iter().map(|y| dot(x, y)).collect()).collect();
    Ok(Complement { basis, gram })
}

fn combine(mat: &mut [Vec<i128>], p: usize, q: usize, s: i128, t: i128, x: i128, y: i128) -> Result<()> {
    let overflow = || Error::internal("overflow while computing a lattice complement");
    for row in mat.iter_mut() {
        let (cp, cq) = (row[p], row[q]);
        let np = s.checked_mul(cp).and_then(|l| t.checked_mul(cq).and_then(|r| l.checked_add(r)));
        let nq = x.checked_mul(cp).and_then(|l| y.checked_mul(cq).and_then(|r| l.checked_add(r)));
        row[p] = np.ok_or_else(overflow)?;
        row[q] = nq.ok_or_else(overflow)?;
    }
    Ok(())
}

/// Returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`; `b` is nonzero.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Pairwise size reduction: keeps the basis short without changing its span.
fn size_reduce(basis: &mut [Vec<i64>]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                let d = dot(&basis[i], &basis[j]);
                // Subtract the nearest integer multiple when it strictly shortens basis[i].
                let k = (2 * d + nj).div_euclid(2 * nj);
                if k != 0 && 2 * (k * d).abs() > k * k * nj {
                    let bj = basis[j].clone();
                    for (x, y) in basis[i].iter_mut().zip(&bj) {
                        *x -= k * y;
                    }
                    changed = true;
                }
            }
        }
    }
}
