//! Integers written as `x^3 + y^2` in several ways.

use cubesq::mordell::{min_with_reps, representations, to_u64_pairs};
use num_bigint::BigUint;

fn main() {
    for n in [17u64, 65, 89, 1025] {
        println!("{n}: {:?}", to_u64_pairs(&representations(&BigUint::from(n))));
    }
    for k in 2..=3 {
        println!("least n with {k} representations: {:?}", min_with_reps(k, 50_000));
    }
    // 10^15 + 10^18 = (10^5)^3 + (10^9)^2
    let big: BigUint = BigUint::from(10u32).pow(15) + BigUint::from(10u32).pow(18);
    for r in representations(&big) {
        println!("{big} = {}^3 + {}^2", r.x, r.y);
    }
}
