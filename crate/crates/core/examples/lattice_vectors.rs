//! Intersection numbers of the sections and short vectors of the lattice
//! spanned by `tau_1, tau_2`.

use cubesq::forms::rat;
use cubesq::lattice::{enumerate_norm_vectors, verify_relations, GramLattice};

fn main() {
    for c in verify_relations() {
        println!("{:<24} {:>3}  {}", c.label, c.value, if c.pass { "ok" } else { "FAIL" });
    }
    let m = GramLattice::tau_lattice();
    println!("gram {:?}, det {}", m.gram, m.determinant());
    for n in [-2, -6, -8, -24] {
        let vs = enumerate_norm_vectors(&m, &rat(n)).unwrap();
        let shown: Vec<String> = vs.iter().map(|v| format!("({}, {})", v[0], v[1])).collect();
        println!("norm {n}: {} vectors {}", vs.len(), shown.join(" "));
    }
    let third = rat(-8) / rat(3);
    println!("norm -8/3: {} vectors", enumerate_norm_vectors(&m, &third).unwrap().len());
}
