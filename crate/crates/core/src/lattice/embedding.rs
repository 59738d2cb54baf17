use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::GramLattice;
use crate::error::{Error, Result};

/// Images of the basis vectors of a lattice in ℤᵐ, one row per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EmbeddingMatrix {
    #[serde(with = "crate::decimal")]
    ambient: usize,
    #[serde(with = "crate::decimal::matrix")]
    rows: Vec<Vec<i64>>,
}

impl EmbeddingMatrix {
    pub fn new(rows: Vec<Vec<i64>>, ambient: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::invalid(format!(
                "embedding row has length {} but the ambient rank is {ambient}",
                r.len()
            )));
        }
        Ok(EmbeddingMatrix { ambient, rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// `A·Aᵀ`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|a| self.rows.iter().map(|b| dot(a, b)).collect()).collect()
    }

    /// Indices of the nonzero columns.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&j| self.rows.iter().any(|r| r[j] != 0)).collect()
    }

    /// Keeps only the listed columns, in the given order.
    pub fn restrict_columns(&self, cols: &[usize]) -> EmbeddingMatrix {
        let rows = self.rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
        EmbeddingMatrix { ambient: cols.len(), rows }
    }

    /// Keeps the rows in `range`.
    pub fn slice_rows(&self, range: std::ops::Range<usize>) -> EmbeddingMatrix {
        EmbeddingMatrix { ambient: self.ambient, rows: self.rows[range].to_vec() }
    }

    /// Stacks `self` on top of `other`.
    pub fn stack(&self, other: &EmbeddingMatrix) -> Result<EmbeddingMatrix> {
        if self.ambient != other.ambient {
            return Err(Error::invalid("cannot stack embeddings with different ambient ranks"));
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(EmbeddingMatrix { ambient: self.ambient, rows })
    }

    /// Applies a signed permutation of the coordinates: column `j` moves to
    /// `perm[j]` and is multiplied by `signs[j]`.
    pub fn act(&self, perm: &[usize], signs: &[i64]) -> EmbeddingMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![0; self.ambient];
                for j in 0..self.ambient {
                    out[perm[j]] = signs[j] * r[j];
                }
                out
            })
            .collect();
        EmbeddingMatrix { ambient: self.ambient, rows }
    }
}

impl fmt::Display for EmbeddingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "v{:<2} ↦ {}", i + 1, format_vector(row))?;
        }
        Ok(())
    }
}

/// Writes a vector as a signed sum of basis vectors, e.g. `-e1+e2`.
pub(crate) fn format_vector(v: &[i64]) -> String {
    let mut s = String::new();
    for (j, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if x.abs() == 1 { String::new() } else { x.abs().to_string() };
        s.push_str(&format!("{sign}{mag}e{}", j + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An orbit of embeddings under signed coordinate permutations, stored by
/// its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EmbeddingClass {
    representative: EmbeddingMatrix,
}

impl EmbeddingClass {
    pub fn of(a: &EmbeddingMatrix) -> Self {
        EmbeddingClass { representative: canonical_form(a) }
    }

    pub fn representative(&self) -> &EmbeddingMatrix {
        &self.representative
    }

    /// Number of coordinates the image actually uses.
    pub fn support_size(&self) -> usize {
        self.representative.support().len()
    }
}

/// True iff `A·Aᵀ` equals the Gram matrix of `l`.
pub fn is_isometric_embedding(l: &GramLattice, a: &EmbeddingMatrix) -> Result<bool> {
    if a.rows.len() != l.rank() {
        return Err(Error::invalid(format!(
            "embedding has {} rows but the lattice has rank {}",
            a.rows.len(),
            l.rank()
        )));
    }
    Ok(a.gram() == l.gram())
}

/// Canonical representative under signed coordinate permutations.
///
/// Each column is negated if needed so its first nonzero entry is positive,
/// then the columns are sorted in descending lexicographic order (zero
/// columns last). Sign changes and permutations act on columns
/// independently, so two matrices share an orbit exactly when their
/// canonical forms agree.
pub fn canonical_form(a: &EmbeddingMatrix) -> EmbeddingMatrix {
    let mut cols: Vec<Vec<i64>> = (0..a.ambient)
        .map(|j| {
            let mut c = a.column(j);
            if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                c.iter_mut().for_each(|x| *x = -*x);
            }
            c
        })
        .collect();
    cols.sort_by(|x, y| y.cmp(x));
    let rows = (0..a.rows.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    EmbeddingMatrix { ambient: a.ambient, rows }
}

/// True iff the coordinates of `v` have no common divisor. `v` must be nonzero.
pub fn is_primitive_vector(v: &[i64]) -> Result<bool> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::invalid("primitivity is undefined for the zero vector"));
    }
    Ok(g == 1)
}

/// Whether one coordinate vector pairs nonzero with each of two images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPairing {
    pub with_m: bool,
    pub with_c: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPairingProfile {
    pub coordinates: Vec<UnitPairing>,
    pub pass: bool,
}

impl UnitPairingProfile {
    /// 1-based indices of coordinates that pair trivially with the first image.
    pub fn missing_m(&self) -> Vec<usize> {
        (0..self.coordinates.len()).filter(|&i| !self.coordinates[i].with_m).map(|i| i + 1).collect()
    }

    /// 1-based indices of coordinates that pair trivially with the second image.
    pub fn missing_c(&self) -> Vec<usize> {
        (0..self.coordinates.len()).filter(|&i| !self.coordinates[i].with_c).map(|i| i + 1).collect()
    }
}

/// For every `eᵢ`, records whether it pairs nonzero with the images `a_m`
/// and `a_c`. The two images must be mutually orthogonal.
pub fn unit_pairing_profile(a_m: &EmbeddingMatrix, a_c: &EmbeddingMatrix) -> Result<UnitPairingProfile> {
    if a_m.ambient != a_c.ambient {
        return Err(Error::invalid("images live in different ambient lattices"));
    }
    for x in &a_m.rows {
        for y in &a_c.rows {
            if dot(x, y) != 0 {
                return Err(Error::invalid("the two images are not orthogonal"));
            }
        }
    }
    let coordinates: Vec<UnitPairing> = (0..a_m.ambient)
        .map(|j| UnitPairing { with_m: a_m.rows.iter().any(|r| r[j] != 0), with_c: a_c.rows.iter().any(|r| r[j] != 0) })
        .collect();
    let pass = coordinates.iter().all(|u| u.with_m && u.with_c);
    Ok(UnitPairingProfile { coordinates, pass })
}
