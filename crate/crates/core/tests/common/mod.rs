#![allow(dead_code)]

use std::collections::BTreeSet;

use ratball::lattice::{canonical_form, EmbeddingMatrix, GramLattice};

/// Every vector of ℤᵐ with the given norm.
pub fn vectors_of_norm(norm: i64, m: usize) -> Vec<Vec<i64>> {
    fn go(norm: i64, m: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == m {
            if norm == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut x = 0;
        while x * x <= norm {
            x += 1;
        }
        for v in -(x - 1)..x {
            cur.push(v);
            go(norm - v * v, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(norm, m, &mut Vec::new(), &mut out);
    out
}

/// Plain backtracking over all norm-matching vectors with no symmetry
/// reduction beyond fixing the leading rows to `prefix`. That is legitimate
/// only when every valid choice of those rows lies in a single orbit.
pub fn brute_force_classes(l: &GramLattice, m: usize, prefix: &[Vec<i64>]) -> BTreeSet<EmbeddingMatrix> {
    let pools: Vec<Vec<Vec<i64>>> = (0..l.rank()).map(|i| vectors_of_norm(l.entry(i, i), m)).collect();
    let mut out = BTreeSet::new();
    let mut rows = prefix.to_vec();
    extend(l, &pools, &mut rows, m, &mut out);
    out
}

fn extend(
    l: &GramLattice,
    pools: &[Vec<Vec<i64>>],
    rows: &mut Vec<Vec<i64>>,
    m: usize,
    out: &mut BTreeSet<EmbeddingMatrix>,
) {
    let i = rows.len();
    if i == pools.len() {
        out.insert(canonical_form(&EmbeddingMatrix::new(rows.clone(), m).unwrap()));
        return;
    }
    for v in &pools[i] {
        let fits = (0..i).all(|j| rows[j].iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == l.entry(i, j));
        if fits {
            rows.push(v.clone());
            extend(l, pools, rows, m, out);
            rows.pop();
        }
    }
}

/// Builds an m-column matrix from rows written as (coordinate, coefficient)
/// lists with 1-based coordinates.
pub fn sparse(rows: &[&[(usize, i64)]], m: usize) -> EmbeddingMatrix {
    let rows = rows
        .iter()
        .map(|r| {
            let mut v = vec![0; m];
            for &(j, x) in r.iter() {
                v[j - 1] += x;
            }
            v
        })
        .collect();
    EmbeddingMatrix::new(rows, m).unwrap()
}
