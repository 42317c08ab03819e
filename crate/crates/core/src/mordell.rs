//! Writing integers as a cube plus a square, `n = x^3 + y^2`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub x: BigUint,
    pub y: BigUint,
    pub n: BigUint,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Representation", 3)?;
        st.serialize_field("x", &self.x.to_string())?;
        st.serialize_field("y", &self.y.to_string())?;
        st.serialize_field("n", &self.n.to_string())?;
        st.end()
    }
}

/// All `(x, y)` with `x^3 + y^2 = n` and `x, y >= 1`, sorted by `x`.
pub fn representations(n: &BigUint) -> Vec<Representation> {
    representations_with(n, false)
}

/// As [`representations`]; with `allow_zero`, `x = 0` and `y = 0` are admitted.
pub fn representations_with(n: &BigUint, allow_zero: bool) -> Vec<Representation> {
    let lo = if allow_zero { BigUint::zero() } else { BigUint::one() };
    let x_max = n.cbrt();
    let mut out = Vec::new();
    let mut x = lo.clone();
    while x <= x_max {
        let rest = n - &x * &x * &x;
        let y = rest.sqrt();
        if &y * &y == rest && y >= lo {
            out.push(Representation { x: x.clone(), y, n: n.clone() });
        }
        x += 1u32;
    }
    out
}

pub fn count_representations(n: u64) -> usize {
    representations(&BigUint::from(n)).len()
}

/// Smallest `n <= limit` with at least `k` representations.
pub fn min_with_reps(k: usize, limit: u64) -> Option<u64> {
    min_with_reps_with(k, limit, false)
}

pub fn min_with_reps_with(k: usize, limit: u64, allow_zero: bool) -> Option<u64> {
    (1..=limit)
        .into_par_iter()
        .find_first(|&n| representations_with(&BigUint::from(n), allow_zero).len() >= k)
}

pub fn to_u64_pairs(reps: &[Representation]) -> Vec<(u64, u64)> {
    reps.iter()
        .map(|r| (r.x.to_u64().unwrap(), r.y.to_u64().unwrap()))
        .collect()
}
