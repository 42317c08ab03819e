//! Singular fibers of `y^2 = x^3 + h` and of a Weierstrass K3 surface.

use cubesq::elliptic::{betti2, classify_fibers, euler_total, AuxSurface, KodairaFiber, WeierstrassK3};
use cubesq::forms::parse_form;

fn summary(label: &str, fibers: &[KodairaFiber]) {
    let e = euler_total(fibers);
    println!("{label}: {} singular fibers, euler {e}, b2 {}", fibers.len(), betti2(e as i64));
    for f in fibers.iter().filter(|f| f.kind.to_string() != "II" && f.kind.to_string() != "I1") {
        let p = f.location;
        println!("  {} at [{:.3} : {:.3}]: ord (A, B, D) = ({}, {}, {})", f.kind, p.z, p.w, f.ord_a, f.ord_b, f.ord_delta);
    }
}

fn main() {
    let h = parse_form("z^24 + w^24", Some(24)).unwrap();
    summary("y^2 = x^3 + z^24 + w^24", &classify_fibers(&AuxSurface::new(h).unwrap()).unwrap());

    // A double root of h collides two type II fibers into a type IV.
    let h = parse_form("z^2*w^22 + z^24 - 3*z^12*w^12", Some(24)).unwrap();
    summary("y^2 = x^3 + z^2 (...)", &classify_fibers(&AuxSurface::new(h).unwrap()).unwrap());

    let g8 = parse_form("z^8 + z^3*w^5 - 2*w^8", Some(8)).unwrap();
    let g12 = parse_form("z^12 - z*w^11 + 3*w^12", Some(12)).unwrap();
    summary("K3", &classify_fibers(&WeierstrassK3::new(g8, g12).unwrap()).unwrap());
}
