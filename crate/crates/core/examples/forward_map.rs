//! Builds `h = f^3 + g^2` exactly and checks that the six symmetric images of
//! `(f, g)` give the same `h`.

use cubesq::decompose::{forward, orbit, verify_exact};
use cubesq::forms::parse_form;

fn main() {
    let f = parse_form("z^8 - 2*z^5*w^3 + (1/2 + zeta3)*w^8", Some(8)).unwrap();
    let g = parse_form("z^12 + 3*z^6*w^6 - w^12", Some(12)).unwrap();
    let h = forward(&f, &g).unwrap();
    println!("f = {f}\ng = {g}\nh = {h}");

    for (k, (phi, psi)) in orbit(&f, &g).iter().enumerate() {
        let v = verify_exact(&h, phi, psi).unwrap();
        println!("member {k}: exact = {}", v.ok);
    }
    println!("z^8, w^12: {}", forward(&parse_form("z^8", None).unwrap(), &parse_form("w^12", None).unwrap()).unwrap());
}
