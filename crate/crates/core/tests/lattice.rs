mod common;

use std::collections::BTreeSet;

use common::{brute_force_classes, sparse};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratball::lattice::*;
use ratball::obstruction::{ball_plumbing, cemb_weights, fibonacci_ball, lemma_cemb_report};

fn classes(l: &GramLattice, m: usize) -> BTreeSet<EmbeddingMatrix> {
    enumerate_embedding_classes(l, m, SearchLimits::default())
        .unwrap()
        .classes
        .iter()
        .map(|c| c.representative().clone())
        .collect()
}

fn e(j: usize, m: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[j] = 1;
    v
}

fn sum(vs: &[Vec<i64>]) -> Vec<i64> {
    vs.iter().fold(vec![0; vs[0].len()], |acc, v| acc.iter().zip(v).map(|(a, b)| a + b).collect())
}

#[test]
fn search_agrees_with_brute_force() {
    let cases: &[(&[i64], usize)] =
        &[(&[2, 2, 2], 4), (&[2, 2, 2], 5), (&[2, 2, 2, 3], 5), (&[2, 3, 2], 5), (&[3, 3], 5), (&[4, 2], 4)];
    for &(w, m) in cases {
        let l = linear_lattice(w).unwrap();
        assert_eq!(classes(&l, m), brute_force_classes(&l, m, &[]), "{w:?} in Z^{m}");
    }
}

#[test]
fn search_agrees_with_brute_force_from_a_fixed_first_row() {
    // Every norm-3 vector is ±eᵢ±eⱼ±eₖ, a single orbit, so the first row may be fixed.
    let cases: &[(&[i64], usize)] = &[(&[3, 2, 2, 3], 7), (&[3, 2, 2, 3, 2], 8), (&[3, 3, 2], 6)];
    for &(w, m) in cases {
        let l = linear_lattice(w).unwrap();
        let first = [sum(&[e(0, m), e(1, m), e(2, m)])];
        assert_eq!(classes(&l, m), brute_force_classes(&l, m, &first), "{w:?} in Z^{m}");
    }
}

#[test]
fn search_agrees_with_brute_force_on_direct_sums() {
    // Norm-2 vectors ±eᵢ±eⱼ form a single orbit, and so do the norm-2
    // vectors pairing −1 with e₁+e₂ under its stabiliser.
    let sums: &[(&[i64], &[i64], usize)] =
        &[(&[2, 2], &[2, 2, 2], 6), (&[2, 2, 2], &[2, 3, 2, 2, 3], 9), (&[2, 2, 2], &[2, 2, 2], 7)];
    for &(x, y, m) in sums {
        let l = direct_sum(&linear_lattice(x).unwrap(), &linear_lattice(y).unwrap());
        let first = [sum(&[e(0, m), e(1, m)]), sum(&[e(2, m), e(1, m).iter().map(|x| -x).collect()])];
        assert_eq!(classes(&l, m), brute_force_classes(&l, m, &first), "{x:?} ⊕ {y:?} in Z^{m}");
    }
}

#[test]
fn canonical_form_ignores_signed_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (w, m) in [(vec![3, 2, 2, 3, 2], 9), (vec![2, 2, 2, 3], 5), (vec![3, 3, 2, 2, 3, 3, 2], 12)] {
        for a in classes(&linear_lattice(&w).unwrap(), m) {
            for _ in 0..100 {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                let signs: Vec<i64> = (0..m).map(|_| if rng.gen() { 1 } else { -1 }).collect();
                let moved = a.act(&perm, &signs);
                assert_eq!(canonical_form(&moved), a);
            }
        }
    }
}

#[test]
fn class_counts_do_not_depend_on_vertex_order() {
    let mut lattices = vec![];
    for n in 2..=4 {
        lattices.push((linear_lattice(&cemb_weights(n).unwrap()).unwrap(), 4 * n));
    }
    for (k, n) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
        let parts: Vec<GramLattice> = [k, n]
            .iter()
            .map(|&j| linear_lattice(&ball_plumbing(&fibonacci_ball(j).unwrap()).unwrap().weights()).unwrap())
            .collect();
        let l = direct_sum_all(&parts).unwrap();
        let m = l.rank() + 1;
        lattices.push((l, m));
    }
    lattices.push((linear_lattice(&[2, 3, 4, 2]).unwrap(), 7));
    for (l, m) in lattices {
        assert_eq!(classes(&l, m).len(), classes(&l.reversed(), m).len(), "{l}");
    }
}

#[test]
fn three_two_two_three_contains_the_listed_embeddings() {
    let m = 8;
    let found = classes(&linear_lattice(&[3, 2, 2, 3]).unwrap(), m);
    let listed = [
        sparse(&[&[(2, -1), (3, -1), (4, -1)], &[(1, -1), (2, 1)], &[(2, -1), (3, 1)], &[(1, 1), (2, 1), (4, -1)]], m),
        sparse(&[&[(2, -1), (3, -1), (4, -1)], &[(1, -1), (2, 1)], &[(2, -1), (3, 1)], &[(3, -1), (4, 1), (5, 1)]], m),
        sparse(&[&[(1, 1), (4, 1), (5, 1)], &[(1, -1), (2, 1)], &[(2, -1), (3, 1)], &[(3, -1), (6, 1), (7, 1)]], m),
    ];
    for a in &listed {
        assert!(is_isometric_embedding(&linear_lattice(&[3, 2, 2, 3]).unwrap(), a).unwrap());
        assert!(found.contains(&canonical_form(a)), "missing\n{a}");
    }
    // Two more classes exist: the mirror image of the second under v₁..v₄ ↦ v₄..v₁,
    // and one where the weight-two pair is disjoint from the first vertex's support.
    assert_eq!(found.len(), 5);
    let mirror = EmbeddingMatrix::new(listed[1].rows().iter().rev().cloned().collect(), m).unwrap();
    assert!(found.contains(&canonical_form(&mirror)));
    assert_ne!(canonical_form(&mirror), canonical_form(&listed[1]));
    let extra =
        sparse(&[&[(1, 1), (2, 1), (3, 1)], &[(3, -1), (4, 1)], &[(4, -1), (5, 1)], &[(1, 1), (2, -1), (5, -1)]], m);
    assert!(found.contains(&canonical_form(&extra)));
    let supports: Vec<usize> = found.iter().map(|a| a.support().len()).collect();
    assert_eq!(supports.iter().filter(|&&s| s == 5).count(), 3);
}

#[test]
fn the_third_lemma_class_uses_every_coordinate() {
    for n in 2..=3 {
        let r = lemma_cemb_report(n, 4 * n + 1, SearchLimits::default()).unwrap();
        let wide: Vec<_> = r.classes.iter().filter(|c| c.support == 4 * n).collect();
        assert_eq!(wide.len(), 1, "n = {n}");
        assert!(!wide[0].complement_has_unit_vectors);
        assert_eq!(wide[0].complement_rank, 4 * n - (2 * n + 1));
    }
    let third = sparse(
        &[
            &[(1, 1), (2, 1), (3, 1)],
            &[(3, -1), (4, 1)],
            &[(4, -1), (5, 1)],
            &[(5, -1), (6, 1), (7, 1)],
            &[(7, -1), (8, 1)],
        ],
        8,
    );
    assert!(classes(&linear_lattice(&[3, 2, 2, 3, 2]).unwrap(), 8).contains(&canonical_form(&third)));
}

#[test]
fn second_lemma_class_complement_is_the_determinant() {
    for n in 2..=4 {
        let l = linear_lattice(&cemb_weights(n).unwrap()).unwrap();
        let r = lemma_cemb_report(n, 4 * n, SearchLimits::default()).unwrap();
        let second = r.classes.iter().find(|c| c.support == 2 * n + 2).unwrap();
        assert_eq!(BigInt::from(second.generator_norm.unwrap()), lattice_determinant(&l), "n = {n}");
    }
}

#[test]
fn lemma_weights_are_the_reversed_ball_plumbings() {
    for n in 2..=8 {
        let mut w = ball_plumbing(&fibonacci_ball(n).unwrap()).unwrap().weights();
        w.reverse();
        assert_eq!(w, cemb_weights(n as usize).unwrap());
        let p = ratball::markov::odd_fibonacci(n + 1).unwrap();
        assert_eq!(lattice_determinant(&linear_lattice(&w).unwrap()), BigInt::from(p.clone() * p));
    }
}

#[test]
fn complements_are_orthogonal_and_saturated() {
    for (w, m) in [(vec![2, 2, 2, 3], 5), (vec![3, 2, 2, 3, 2], 9), (vec![2, 3, 2, 2, 3], 6)] {
        for a in classes(&linear_lattice(&w).unwrap(), m) {
            let c = orthogonal_complement(&a).unwrap();
            assert_eq!(c.rank(), m - w.len());
            for v in &c.basis {
                assert!(a.rows().iter().all(|r| r.iter().zip(v).map(|(x, y)| x * y).sum::<i64>() == 0));
            }
            // Saturated with full rank: [A; basis] has |det|² = det(AAᵀ)·det(gram).
            let stacked: Vec<Vec<i64>> = a.rows().iter().chain(&c.basis).cloned().collect();
            let d = integer_determinant(&stacked);
            let expected = lattice_determinant(&linear_lattice(&w).unwrap()) * integer_determinant(&c.gram);
            assert_eq!(&d * &d, expected);
        }
    }
}

#[test]
fn limits_are_reported_not_swallowed() {
    let l = linear_lattice(&cemb_weights(3).unwrap()).unwrap();
    match enumerate_embedding_classes(&l, 12, SearchLimits::nodes(10)) {
        Err(ratball::Error::LimitExceeded { kind, .. }) => assert_eq!(kind, ratball::LimitKind::Nodes),
        other => panic!("expected a node limit, got {other:?}"),
    }
}
