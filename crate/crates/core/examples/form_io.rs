//! Parsing, printing, JSON round trips and roots of binary forms.

use cubesq::forms::{parse_form, roots, AnyForm};

fn main() {
    let f = parse_form("z^6 - 2*zeta3*z^3*w^3 + (1/4 - zeta3)*w^6", None).unwrap();
    println!("{f}");
    let text = serde_json::to_string(&f.to_json()).unwrap();
    println!("{text}");
    assert_eq!(AnyForm::from_json_str(&text).unwrap(), AnyForm::Exact(f.clone()));
    assert_eq!(parse_form(&f.to_string(), None).unwrap(), f);

    let g = parse_form("z^2*(w^0)", None);
    println!("bad input: {:?}", g.err());

    // z (z - w)(z^2 + z w + w^2), plus a double root at infinity.
    let p = parse_form("z^4*w^2 - z*w^5", None).unwrap();
    for r in roots(&p.embed()).unwrap() {
        println!("root [{:.4} : {:.4}] multiplicity {}", r.point.z, r.point.w, r.multiplicity);
    }
}
