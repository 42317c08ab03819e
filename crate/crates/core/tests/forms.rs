use cubesq::forms::univariate::Poly;
use cubesq::forms::{
    exact_roots, parse_form, parse_scalar, roots, AnyForm, ComplexF, CycRat, Coeff, ExactForm, Field, FormError, Rational, ZETA3_F64,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn cyc() -> impl Strategy<Value = CycRat> {
    (rational(), rational()).prop_map(|(a, b)| CycRat::new(a, b))
}

fn exact_form(degree: usize) -> impl Strategy<Value = ExactForm> {
    proptest::collection::vec(cyc(), degree + 1).prop_map(ExactForm::from_coeffs)
}

fn close(a: &cubesq::forms::ComplexForm, b: &cubesq::forms::ComplexForm) -> bool {
    a.max_distance(b) <= 1e-9 * (1.0 + a.max_abs().max(b.max_abs()))
}

#[test]
fn zeta3_arithmetic() {
    let z = CycRat::zeta3();
    assert_eq!(z.pow(3), CycRat::one());
    assert_eq!(z.clone() * z.clone() + z + CycRat::one(), CycRat::zero());
    assert!((CycRat::zeta3().to_complex() - ZETA3_F64).norm() < 1e-15);
    assert_eq!(CycRat::zero().inv(), None);
}

#[test]
fn parse_examples() {
    let f = parse_form("z^2 - 3/2*z*w + zeta3*w^2", None).unwrap();
    assert_eq!(f.degree(), 2);
    assert_eq!(f.coeff(1), &CycRat::from_rational(Rational::new((-3).into(), 2.into())));
    assert_eq!(f.coeff(0), &CycRat::zeta3());
    assert_eq!(parse_form("(1 - 2 zeta3)*z", None).unwrap().coeff(1), &parse_scalar("(1 - 2*zeta3)").unwrap());
    assert!(matches!(parse_form("z^2 + w", None), Err(FormError::InhomogeneousInput { .. })));
    assert!(matches!(parse_form("z^8", Some(12)), Err(FormError::DegreeMismatch { expected: 12, found: 8 })));
    assert!(matches!(parse_form("z^2 +", None), Err(FormError::Syntax { .. })));
    assert!(matches!(parse_form("1/0*z", None), Err(FormError::Syntax { .. })));
    assert!(matches!(parse_form("", None), Err(FormError::Syntax { .. })));
}

#[test]
fn printing() {
    let f = parse_form("w^24 + z^24", None).unwrap();
    assert_eq!(f.to_string(), "z^24 + w^24");
    let g = parse_form("-1/2*z^3*w - zeta3*w^4", None).unwrap();
    assert_eq!(g.to_string(), "-1/2*z^3*w - zeta3*w^4");
}

#[test]
fn json_rejects_malformed() {
    assert!(AnyForm::from_json_str("{\"degree\": 1, \"coeffs\": [[\"1\",\"0\",\"0\",\"1\"], [\"1\",\"1\",\"0\",\"1\"]]}").is_err());
    assert!(AnyForm::from_json_str("{\"degree\": 2, \"coeffs\": [[1.0, 0.0]]}").is_err());
    assert!(AnyForm::from_json_str("not json").is_err());
    let c = AnyForm::from_json_str("{\"degree\": 1, \"coeffs\": [[1.5, -2.0], [0.0, 1.0]]}").unwrap();
    assert!(matches!(c, AnyForm::Complex(_)));
}

#[test]
fn roots_with_multiplicity() {
    // (z - w)^2 (z + 2w) (z^2 + w^2) w^2
    let f = parse_form("z - w", None).unwrap().pow(2)
        .mul(&parse_form("z + 2*w", None).unwrap())
        .mul(&parse_form("z^2 + w^2", None).unwrap())
        .mul(&parse_form("w^2", None).unwrap());
    let rs = roots(&f.embed()).unwrap();
    let mults: Vec<usize> = rs.iter().map(|r| r.multiplicity).collect();
    assert_eq!(mults, vec![1, 1, 1, 2, 2]);
    assert!((rs[0].point.z - ComplexF::new(-2.0, 0.0)).norm() < 1e-9);
    assert!(rs[4].point.is_infinity());

    // Higher multiplicities need the exact path.
    let g = f.mul(&parse_form("z - w", None).unwrap()).mul(&parse_form("z + 2*w", None).unwrap().pow(3));
    let rs = exact_roots(&g).unwrap();
    assert_eq!(rs.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![4, 1, 1, 3, 2]);
}

#[test]
fn exact_square_free_parts() {
    let p = parse_form("z - w", None).unwrap().pow(2).mul(&parse_form("z^3 + w^3", None).unwrap());
    let parts: Vec<usize> = p.dehomogenize().square_free_decomposition().iter().map(|(_, k)| *k).collect();
    assert!(parts.contains(&2));
    let total: usize = p.dehomogenize().square_free_decomposition().iter().map(|(f, k)| f.degree().unwrap() * k).sum();
    assert_eq!(total, 5);
    assert_eq!(Poly::<CycRat>::one().degree(), Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), CycRat::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a.clone() * inv, CycRat::one());
        }
    }

    #[test]
    fn form_ring_axioms(f in exact_form(3), g in exact_form(3), h in exact_form(2)) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&h), h.mul(&f));
        prop_assert_eq!(f.add(&g).unwrap().mul(&h), f.mul(&h).add(&g.mul(&h)).unwrap());
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.pow(3), f.mul(&f).mul(&f));
    }

    #[test]
    fn text_round_trip(f in exact_form(5)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse_form(&f.to_string(), Some(5)).unwrap(), f);
    }

    #[test]
    fn json_round_trip(f in exact_form(6)) {
        let text = serde_json::to_string(&f.to_json()).unwrap();
        prop_assert_eq!(AnyForm::from_json_str(&text).unwrap(), AnyForm::Exact(f.clone()));
        let c = f.embed();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        prop_assert_eq!(AnyForm::from_json_str(&text).unwrap(), AnyForm::Complex(c));
    }

    #[test]
    fn embedding_is_a_homomorphism(f in exact_form(4), g in exact_form(4), h in exact_form(3)) {
        prop_assert!(close(&f.add(&g).unwrap().embed(), &f.embed().add(&g.embed()).unwrap()));
        prop_assert!(close(&f.mul(&h).embed(), &f.embed().mul(&h.embed())));
        let (z, w) = (ComplexF::new(0.3, -1.1), ComplexF::new(0.7, 0.2));
        let lhs = f.mul(&h).embed().evaluate(z, w);
        let rhs = f.embed().evaluate(z, w) * h.embed().evaluate(z, w);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn roots_account_for_the_degree(f in exact_form(7)) {
        prop_assume!(!f.is_zero());
        let exact = exact_roots(&f).unwrap();
        prop_assert_eq!(exact.iter().map(|r| r.multiplicity).sum::<usize>(), 7);
        let rs = roots(&f.embed()).unwrap();
        prop_assert_eq!(rs.iter().map(|r| r.multiplicity).sum::<usize>(), 7);
        let scale = f.embed().max_abs();
        for r in rs.iter().filter(|r| r.multiplicity == 1 && !r.point.is_infinity() && r.point.z.norm() < 10.0) {
            prop_assert!(f.embed().evaluate(r.point.z, r.point.w).norm() <= 1e-6 * scale * (1.0 + r.point.z.norm()).powi(7));
        }
    }
}
