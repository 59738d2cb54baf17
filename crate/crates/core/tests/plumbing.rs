use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratball::plumbing::*;

fn chain(w: &[i64]) -> PlumbingChain {
    PlumbingChain::new(w.to_vec())
}

/// Determinant by cofactor expansion of the tridiagonal intersection matrix.
fn det_oracle(w: &[i64]) -> i128 {
    let k = w.len();
    let m: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match i.abs_diff(j) {
                    0 => w[i] as i128,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    cofactor(&m)
}

fn cofactor(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor(&minor)
        })
        .sum()
}

/// Blows up the edge after 1-based position `i` (or an end, for `i = 0` or `len`).
fn blow_up(c: &PlumbingChain, i: usize) -> PlumbingChain {
    let mut w = c.weights().to_vec();
    if i > 0 {
        w[i - 1] -= 1;
    }
    if i < w.len() {
        w[i] -= 1;
    }
    w.insert(i, -1);
    PlumbingChain::new(w)
}

#[test]
fn continuant_matches_cofactor_expansion() {
    let mut words: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..5 {
        let next: Vec<Vec<i64>> =
            words.iter().flat_map(|w| (-4..=2).map(move |a| [w.clone(), vec![a]].concat())).collect();
        for w in &next {
            assert_eq!(chain_determinant(&chain(w)), BigInt::from(det_oracle(w)), "{w:?}");
        }
        words = next;
    }
}

#[test]
fn every_blow_down_preserves_the_determinant_up_to_sign() {
    let mut words: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..8 {
        words = words.iter().flat_map(|w| (-4..=-1).map(move |a| [w.clone(), vec![a]].concat())).collect();
        for w in &words {
            let c = chain(w);
            let d = chain_determinant(&c);
            for (i, _) in w.iter().enumerate().filter(|&(_, &x)| x == -1) {
                let down = blow_down(&c, i + 1).unwrap();
                assert_eq!(chain_determinant(&down).magnitude(), d.magnitude(), "{c} at {}", i + 1);
            }
        }
    }
}

#[test]
fn random_blow_ups_reduce_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=6);
        let base = chain(&(0..len).map(|_| rng.gen_range(-6..=-2)).collect::<Vec<_>>());
        let mut c = base.clone();
        let ups = rng.gen_range(1..=6);
        for _ in 0..ups {
            let i = rng.gen_range(0..=c.len());
            c = blow_up(&c, i);
            assert_eq!(chain_determinant(&c).magnitude(), chain_determinant(&base).magnitude());
        }
        let (r, n) = reduce(&c);
        assert_eq!(chain_determinant(&r).magnitude(), chain_determinant(&base).magnitude(), "{c}");
        // Weights ≤ −2 admit no −1 until one is created, so reduction undoes exactly the blow-ups.
        assert_eq!((r, n), (base.clone(), ups), "{c}");
    }
}

#[test]
fn certificates_for_n_2_through_12() {
    for n in 2..=12 {
        let cert = simple_embedding_certificate(n).unwrap();
        assert_eq!(cert.start, rb_chain(n).unwrap());
        assert_eq!(cert.final_chain, chain(&[-3, 0]));
        assert_eq!(cert.blowdowns, 2 * n - 2);
        assert_eq!(cert.b2, 2 * n);
    }
}

#[test]
fn display() {
    assert_eq!(chain(&[-3, 0]).to_string(), "(-3,0)");
    assert_eq!(chain(&[]).to_string(), "()");
}
