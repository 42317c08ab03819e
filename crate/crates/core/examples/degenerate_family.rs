//! The family `f = a w^8`, `g = w (z^11 + b w^11)`: exact identity for `h`,
//! the two roots `a', b'`, and the fiber configuration.

use cubesq::elliptic::{betti2, classify_fibers, euler_total, family, picard_bound_check, riemann_roch_chi, totient};
use cubesq::forms::parse_scalar;

fn main() {
    for (a, b) in [("1", "1"), ("-2", "3"), ("1/2", "zeta3")] {
        let m = family(&parse_scalar(a).unwrap(), &parse_scalar(b).unwrap());
        let fibers = classify_fibers(&m.aux_surface().unwrap()).unwrap();
        let e = euler_total(&fibers);
        println!("a = {a}, b = {b}: h = {}", m.h);
        println!("  identity {}, a' = {:.6}, b' = {:.6}", m.verified, m.a_prime, m.b_prime);
        let inf = fibers.iter().find(|f| f.location.is_infinity()).unwrap();
        println!("  {} fibers, {} at [1:0], euler {e}, b2 {}", fibers.len(), inf.kind, betti2(e as i64));
    }
    println!("chi = {}, phi(33) = {}, rank bound {}", riemann_roch_chi(-2, 0, 0, 48), totient(33), picard_bound_check());
}
