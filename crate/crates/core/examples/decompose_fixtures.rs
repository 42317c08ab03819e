//! Decomposes two special forms with more than one orbit of decompositions:
//! `w^24` and `(u v (u + v))^2`.

use cubesq::decompose::{solve, SolverConfig};
use cubesq::forms::{parse_form, AnyForm, ExactForm};

fn show(name: &str, h: ExactForm) {
    let report = solve(&AnyForm::Exact(h), &SolverConfig::default()).expect("degree 24, nonzero");
    println!("{name}: {} orbits, {} converged starts, {} suspect", report.orbits.len(), report.starts_converged, report.suspect.len());
    for o in &report.orbits {
        let r = &o.representative;
        println!("  size {} found {} residual {:.1e} max phi {:.3e}", o.orbit_size, o.members_found, r.residual, r.phi.max_abs());
        println!("    phi = {}", r.phi);
        println!("    psi = {}", r.psi);
    }
}

fn main() {
    show("w^24", parse_form("w^24", Some(24)).unwrap());
    let u = parse_form("z^4 - 2*z^3*w + 3*z*w^3 + w^4", Some(4)).unwrap();
    let v = parse_form("2*z^4 + z^2*w^2 - z*w^3 + 5*w^4", Some(4)).unwrap();
    let s = u.mul(&v).mul(&u.add(&v).unwrap());
    show("(uv(u+v))^2", s.pow(2));
}
