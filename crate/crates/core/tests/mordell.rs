use cubesq::mordell::{
    count_representations, min_with_reps, min_with_reps_with, representations, representations_with,
    to_u64_pairs,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// All `(x, y)` with `x^3 + y^2 = n` by a plain double loop.
fn oracle(n: u64, lo: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut x = lo;
    while x * x * x <= n {
        let mut y = lo;
        while x * x * x + y * y <= n {
            if x * x * x + y * y == n {
                out.push((x, y));
            }
            y += 1;
        }
        x += 1;
    }
    out
}

fn reps(n: u64) -> Vec<(u64, u64)> {
    to_u64_pairs(&representations(&BigUint::from(n)))
}

#[test]
fn small_fixtures() {
    assert_eq!(reps(17), vec![(1, 4), (2, 3)]);
    assert_eq!(reps(65), vec![(1, 8), (4, 1)]);
    assert_eq!(reps(89), vec![(2, 9), (4, 5)]);
    let r = reps(1025);
    for p in [(1, 32), (4, 31), (5, 30), (10, 5)] {
        assert!(r.contains(&p));
    }
}

#[test]
fn exhaustive_against_double_loop() {
    for n in 1..=10_000u64 {
        assert_eq!(reps(n), oracle(n, 1), "n = {n}");
    }
    for n in (0..=2_000u64).step_by(7) {
        let got = to_u64_pairs(&representations_with(&BigUint::from(n), true));
        assert_eq!(got, oracle(n, 0), "n = {n} with zero");
    }
}

#[test]
fn minima() {
    assert_eq!(min_with_reps(3, 2000), Some(1025));
    assert_eq!(min_with_reps(2, 100), Some(17));
    assert!((1..17).all(|n| count_representations(n) < 2));
    assert_eq!(min_with_reps(5, 100), None);
    assert_eq!(min_with_reps(3, 1024), None);
    // 1 = 1^3 + 0^2 = 0^3 + 1^2
    assert_eq!(min_with_reps_with(2, 100, true), Some(1));
}

#[test]
fn huge_inputs_stay_exact() {
    // (10^6)^3 + (10^9 + 7)^2
    let x = BigUint::from(1_000_000u64);
    let y = BigUint::from(1_000_000_007u64);
    let n = &x * &x * &x + &y * &y;
    let r = representations(&n);
    assert!(r.iter().any(|p| p.x == x && p.y == y));
    for p in &r {
        assert_eq!(&p.x * &p.x * &p.x + &p.y * &p.y, n);
    }
}

proptest! {
    #[test]
    fn every_pair_is_exact(n in 1u64..=100_000) {
        for p in representations(&BigUint::from(n)) {
            prop_assert_eq!(&p.x * &p.x * &p.x + &p.y * &p.y, BigUint::from(n));
        }
    }
}
