use num_bigint::BigUint;
use proptest::prelude::*;
use ratball::markov::*;

fn fib(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::from(0u32), BigUint::from(1u32));
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

#[test]
fn odd_fibonacci_matches_plain_recursion() {
    for k in 1..=60u64 {
        assert_eq!(odd_fibonacci(k).unwrap(), fib(2 * k as usize - 1), "k = {k}");
    }
}

#[test]
fn consecutive_odd_fibonacci_triples() {
    for k in 1..=40u64 {
        let (x, y) = (odd_fibonacci(k).unwrap(), odd_fibonacci(k + 1).unwrap());
        assert!(is_markov(1u32, x.clone(), y.clone()).unwrap(), "(1, {x}, {y})");
    }
}

#[test]
fn vieta_moves_are_involutions() {
    for t in enumerate_triples(5000u32).unwrap() {
        for pos in 1..=3 {
            let n = vieta_neighbor(&t, pos).unwrap();
            let [a, b, c] = n.entries();
            assert!(is_markov(a.clone(), b.clone(), c.clone()).unwrap());
            // The moved entry lands somewhere in the sorted neighbour; moving it back recovers t.
            let back = (1..=3).map(|p| vieta_neighbor(&n, p).unwrap()).any(|x| x == t);
            assert!(back, "{t} via position {pos}");
        }
    }
}

#[test]
fn enumeration_is_sorted_and_duplicate_free() {
    let ts = enumerate_triples(100_000u32).unwrap();
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
    assert!(ts.iter().all(|t| t.largest() <= &BigUint::from(100_000u32)));
}

#[test]
fn characteristic_numbers_square_to_minus_one() {
    for t in enumerate_triples(100_000u32).unwrap().into_iter().filter(|t| t.largest() > &BigUint::from(2u32)) {
        let p = t.largest().clone();
        let u = characteristic_number(&t).unwrap();
        assert_eq!((&u * &u + 1u32) % &p, BigUint::from(0u32), "{t}");
        assert!(&u * 2u32 < p);
    }
}

#[test]
fn ball_params_classify_as_symplectic() {
    for t in enumerate_triples(2000u32).unwrap() {
        for b in ball_params(&t).unwrap() {
            assert!(classify_symplectic(&b, 2000u32).unwrap().symplectic, "{b} from {t}");
        }
    }
}

#[test]
fn ball_spec_rejects_bad_input() {
    assert!(BallSpec::new(6u32, 3u32).is_err());
    assert!(BallSpec::new(5u32, 0u32).is_err());
    assert!(BallSpec::new(5u32, 5u32).is_err());
    assert!(enumerate_triples(0u32).is_err());
    assert!(MarkovTriple::new(1u32, 2u32, 3u32).is_err());
}

proptest! {
    #[test]
    fn classification_ignores_q_versus_p_minus_q(p in 3u32..400, q in 1u32..400) {
        prop_assume!(q < p && num_integer::gcd(p, q) == 1);
        let a = classify_symplectic(&BallSpec::new(p, q).unwrap(), p).unwrap();
        let b = classify_symplectic(&BallSpec::new(p, p - q).unwrap(), p).unwrap();
        prop_assert_eq!(a, b);
    }
}
