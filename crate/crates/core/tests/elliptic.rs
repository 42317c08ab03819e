use cubesq::elliptic::{
    betti2, classify_fibers, discriminant_aux, discriminant_k3, euler_total, family, picard_bound_check,
    riemann_roch_chi, totient, AuxSurface, EllipticError, KodairaType, VanishingOrder, WeierstrassK3,
};
use cubesq::forms::{parse_form, rat, ComplexF, CycRat, ExactForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn form(s: &str) -> ExactForm {
    parse_form(s, None).unwrap()
}

fn count(fibers: &[cubesq::elliptic::KodairaFiber], kind: KodairaType) -> usize {
    fibers.iter().filter(|f| f.kind == kind).count()
}

#[test]
fn aux_surface_of_z24_plus_w24() {
    let fibers = classify_fibers(&AuxSurface::new(form("z^24 + w^24")).unwrap()).unwrap();
    assert_eq!(fibers.len(), 24);
    assert!(fibers.iter().all(|f| f.kind == KodairaType::II && f.euler == 2));
    assert!(fibers.iter().all(|f| f.ord_a == VanishingOrder::Infinite));
    assert_eq!(euler_total(&fibers), 48);
}

#[test]
fn family_fibers() {
    for (a, b) in [(1, 1), (2, -3), (-1, 5)] {
        let m = family(&CycRat::from_int(a), &CycRat::from_int(b));
        let fibers = classify_fibers(&m.aux_surface().unwrap()).unwrap();
        let inf = fibers.iter().find(|f| f.location.is_infinity()).unwrap();
        assert_eq!((inf.kind, inf.ord_b, inf.ord_delta), (KodairaType::IV, VanishingOrder::Finite(2), 4));
        assert_eq!(count(&fibers, KodairaType::II), 22);
        assert_eq!(fibers.len(), 23);
        assert_eq!(euler_total(&fibers), 48);
        assert_eq!(betti2(48), 46);
    }
}

#[test]
fn generic_k3() {
    let m = WeierstrassK3::new(form("z^8 + z^3*w^5 - 2*w^8"), form("z^12 - z*w^11 + 3*w^12")).unwrap();
    let fibers = classify_fibers(&m).unwrap();
    assert_eq!(fibers.len(), 24);
    assert_eq!(count(&fibers, KodairaType::I(1)), 24);
    assert_eq!(euler_total(&fibers), 24);
}

#[test]
fn special_fibers() {
    // g8 = z^2 (..), g12 = z^3 (..): ord (2, 3, 6) at z = 0 is I0*.
    let m = WeierstrassK3::new(form("z^8 + z^2*w^6"), form("z^12 + z^3*w^9")).unwrap();
    let fibers = classify_fibers(&m).unwrap();
    let origin = fibers.iter().find(|f| !f.location.is_infinity() && f.location.z.norm() < 1e-12).unwrap();
    assert_eq!(origin.kind, KodairaType::IStar(0));
    assert_eq!(euler_total(&fibers), 24);

    // A double root of h at z = 0 gives type IV on y^2 = x^3 + h.
    let s = AuxSurface::new(form("z^2*w^22 + z^24 - 3*z^12*w^12")).unwrap();
    let fibers = classify_fibers(&s).unwrap();
    assert_eq!(count(&fibers, KodairaType::IV), 1);
    assert_eq!(euler_total(&fibers), 48);

    // ord (inf, 6, 12) at z = 0 is not minimal; one reduction makes the fiber smooth.
    let s = AuxSurface::new(form("z^6*w^18 + z^24")).unwrap();
    let f = classify_fibers(&s).unwrap();
    let origin = f.iter().find(|f| !f.location.is_infinity() && f.location.z.norm() < 1e-12).unwrap();
    assert_eq!(origin.raw_ord_delta(), 12);
    assert_eq!(origin.reductions, 1);
}

#[test]
fn discriminants() {
    let m = WeierstrassK3::new(form("z^8"), form("w^12")).unwrap();
    assert_eq!(discriminant_k3(&m), form("z^24 - 27*w^24"));
    let s = AuxSurface::new(form("z^24 + w^24")).unwrap();
    assert_eq!(discriminant_aux(&s), form("z^48 + 2*z^24*w^24 + w^48"));
    // 4 A^3 + 27 B^2 with A = 0, B = h is the same up to the constant 27.
    let h = s.h().clone();
    assert_eq!(discriminant_aux(&s).scalar_mul(&CycRat::from_int(27)), h.pow(2).scalar_mul(&CycRat::from_int(27)));
    let fam = family(&CycRat::from_int(1), &CycRat::from_int(0)).aux_surface().unwrap();
    assert_eq!(discriminant_aux(&fam), form("w^4").mul(&form("z^22 + w^22").pow(2)));
    assert!(AuxSurface::new(ExactForm::zero(24)).is_err());
    // g8 = 3 p^2, g12 = p^3 makes the discriminant vanish identically.
    let p = form("z^4 - z*w^3 + 2*w^4");
    let m = WeierstrassK3::new(p.pow(2).scalar_mul(&CycRat::from_int(3)), p.pow(3)).unwrap();
    assert_eq!(classify_fibers(&m), Err(EllipticError::NotAnEllipticFibration));
}

#[test]
fn invariants() {
    assert_eq!(riemann_roch_chi(-2, 0, 0, 48), rat(3));
    assert_eq!(totient(33), 20);
    assert_eq!(totient(1), 1);
    assert_eq!(totient(97), 96);
    assert_eq!(picard_bound_check(), 6);
}

#[test]
fn family_identity_on_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (a, b) = (rng.random_range(-9i64..=9), rng.random_range(-9i64..=9));
        let m = family(&CycRat::from_int(a), &CycRat::from_int(b));
        assert!(m.verified);
        let sum = m.a_prime + m.b_prime;
        let prod = m.a_prime * m.b_prime;
        let c = (a.pow(3) + b.pow(2)) as f64;
        assert!((sum - ComplexF::new(-2.0 * b as f64, 0.0)).norm() <= 1e-10 * (1.0 + b.abs() as f64));
        assert!((prod - ComplexF::new(c, 0.0)).norm() <= 1e-10 * (1.0 + c.abs()));
    }
}
