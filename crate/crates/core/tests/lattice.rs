//! Intersection table and short-vector enumeration against a brute-force search.

use cubesq::forms::{rat, Rational};
use cubesq::lattice::{
    cmp_rational_vectors, enumerate_norm_vectors, pair, tau, verify_relations, DivisorClass,
    GramLattice, LatticeError, PairingTable,
};
use num_traits::Zero;
use proptest::prelude::*;

/// Every `rho = p / det` in a box with `G rho` integral and `rho^T G rho = norm`.
/// The box comes from the smallest eigenvalue of `-G`, with slack.
fn oracle(lattice: &GramLattice, norm: &Rational) -> Vec<[Rational; 2]> {
    let [[a, b], [_, c]] = lattice.gram;
    let det = lattice.determinant();
    let tr = -(a + c) as f64;
    let lam_min = (tr - (tr * tr - 4.0 * det as f64).sqrt()) / 2.0;
    let n: f64 = -num_traits::ToPrimitive::to_f64(norm).unwrap();
    let bound = ((n / lam_min).sqrt() * det as f64).ceil() as i64 + 2;
    let mut out = Vec::new();
    for p1 in -bound..=bound {
        for p2 in -bound..=bound {
            let rho = [Rational::new(p1.into(), det.into()), Rational::new(p2.into(), det.into())];
            let g_rho = [
                &rho[0] * rat(a) + &rho[1] * rat(b),
                &rho[0] * rat(b) + &rho[1] * rat(c),
            ];
            if g_rho.iter().all(|x| x.is_integer()) && lattice.pair(&rho, &rho) == *norm {
                out.push(rho);
            }
        }
    }
    out.sort_by(cmp_rational_vectors);
    out
}

fn sorted(mut v: Vec<[Rational; 2]>) -> Vec<[Rational; 2]> {
    v.sort_by(cmp_rational_vectors);
    v
}

#[test]
fn norm_minus_eight_is_the_six_taus() {
    let m = GramLattice::tau_lattice();
    let got = sorted(enumerate_norm_vectors(&m, &rat(-8)).unwrap());
    let want = sorted(
        [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]
            .iter()
            .map(|&(x, y)| [rat(x), rat(y)])
            .collect(),
    );
    assert_eq!(got, want);
    assert_eq!(got, oracle(&m, &rat(-8)));
}

#[test]
fn matches_oracle_for_integer_norms() {
    let m = GramLattice::tau_lattice();
    for n in 2..=12 {
        let norm = rat(-n);
        assert_eq!(sorted(enumerate_norm_vectors(&m, &norm).unwrap()), oracle(&m, &norm), "norm -{n}");
    }
}

#[test]
fn fractional_norm() {
    let m = GramLattice::tau_lattice();
    let norm = rat(-8) / rat(3);
    let got = sorted(enumerate_norm_vectors(&m, &norm).unwrap());
    assert_eq!(got.len(), 6);
    assert_eq!(got, oracle(&m, &norm));
}

#[test]
fn rejects_bad_input() {
    let indefinite = GramLattice { gram: [[1, 0], [0, -1]] };
    assert_eq!(enumerate_norm_vectors(&indefinite, &rat(-1)), Err(LatticeError::InvalidLattice(indefinite.gram)));
    let m = GramLattice::tau_lattice();
    assert!(matches!(enumerate_norm_vectors(&m, &rat(0)), Err(LatticeError::NonNegativeNorm(_))));
    assert!(matches!(enumerate_norm_vectors(&m, &rat(4)), Err(LatticeError::NonNegativeNorm(_))));
    assert_eq!(tau(0), Err(LatticeError::SectionIndex(0)));
    assert_eq!(tau(7), Err(LatticeError::SectionIndex(7)));
}

#[test]
fn table_and_gram_agree() {
    let table = PairingTable::standard();
    assert!(table.is_symmetric());
    assert_eq!(GramLattice::from_table(&table), GramLattice::tau_lattice());
    assert_eq!(GramLattice::tau_lattice().determinant(), 48);
    assert!(verify_relations().iter().all(|c| c.pass));
}

#[test]
fn section_pairings() {
    let s = |i| DivisorClass::section(i).unwrap();
    let (e, s0) = (DivisorClass::fiber(), DivisorClass::zero_section());
    assert_eq!(pair(&e, &e), rat(0));
    assert_eq!(pair(&e, &s0), rat(1));
    assert_eq!(pair(&s0, &s0), rat(-4));
    assert_eq!(pair(&s(1), &s(4)), rat(12));
    assert_eq!(pair(&s(1), &s(2)), rat(8));
    assert_eq!(pair(&s(1), &s(5)), rat(0));
    for i in 1..=6 {
        let t = tau(i).unwrap();
        assert_eq!(pair(&t, &t), rat(-8));
        assert_eq!(pair(&t, &e), rat(0));
        assert_eq!(pair(&t, &s0), rat(0));
    }
    assert_eq!(pair(&tau(1).unwrap(), &tau(2).unwrap()), rat(4));
}

fn class() -> impl Strategy<Value = DivisorClass> {
    proptest::collection::vec((-20i64..=20, 1i64..=6), 8).prop_map(|cs| {
        (0..8).fold(DivisorClass::zero(), |acc, i| {
            acc.add(&DivisorClass::basis(i).scale(&Rational::new(cs[i].0.into(), cs[i].1.into())))
        })
    })
}

fn gram() -> impl Strategy<Value = GramLattice> {
    (1i64..=12, -6i64..=6, 1i64..=12)
        .prop_map(|(a, b, c)| GramLattice { gram: [[-a, b], [b, -c]] })
        .prop_filter("negative definite", |g| g.is_negative_definite())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(x in class(), y in class(), z in class()) {
        prop_assert_eq!(pair(&x, &y), pair(&y, &x));
        prop_assert_eq!(pair(&x.add(&y), &z), pair(&x, &z) + pair(&y, &z));
        prop_assert_eq!(pair(&x.sub(&x), &y), Rational::zero());
    }

    #[test]
    fn enumeration_is_closed_under_negation(g in gram(), n in 1i64..=30, d in 1i64..=3) {
        let norm = Rational::new((-n).into(), d.into());
        let vs = enumerate_norm_vectors(&g, &norm).unwrap();
        for v in &vs {
            let neg = [-v[0].clone(), -v[1].clone()];
            prop_assert!(vs.contains(&neg));
            prop_assert_eq!(g.pair(v, v), norm.clone());
        }
    }

    #[test]
    fn enumeration_matches_oracle_on_random_lattices(g in gram(), n in 1i64..=16) {
        let norm = rat(-n);
        prop_assert_eq!(sorted(enumerate_norm_vectors(&g, &norm).unwrap()), oracle(&g, &norm));
    }
}
