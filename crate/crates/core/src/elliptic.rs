//! Weierstrass data, discriminants and Kodaira fiber classification for the
//! two elliptic fibrations in play: the K3 surface `y^2 = 4x^3 - g8 x - g12`
//! and the auxiliary surface `y^2 = -x^3 + h`.
//!
//! Classification works from exact vanishing orders. For exact input the
//! discriminant is split by square-free decomposition, and each square-free
//! part is further split by the vanishing orders of the two Weierstrass
//! coefficients using GCDs with their derivatives. Floating point is only
//! used afterwards, to locate the (simple) roots of each part.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::forms::univariate::Poly;
use crate::forms::{
    aberth_roots, Coeff, ComplexF, CycRat, ExactForm, FormError, ProjectivePoint, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("discriminant vanishes identically: not an elliptic fibration")]
    NotAnEllipticFibration,
    #[error("vanishing orders (A: {ord_a}, B: {ord_b}, disc: {ord_delta}) fit no Kodaira type")]
    InconsistentOrders { ord_a: VanishingOrder, ord_b: VanishingOrder, ord_delta: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Order of vanishing of a form at a point; the zero form vanishes to
/// infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VanishingOrder {
    Finite(usize),
    Infinite,
}

impl VanishingOrder {
    fn at_least(self, n: usize) -> bool {
        self >= VanishingOrder::Finite(n)
    }

    fn minus(self, n: usize) -> Self {
        match self {
            VanishingOrder::Finite(k) => VanishingOrder::Finite(k - n),
            VanishingOrder::Infinite => VanishingOrder::Infinite,
        }
    }
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(k) => write!(f, "{k}"),
            VanishingOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for VanishingOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            VanishingOrder::Finite(k) => s.serialize_u64(*k as u64),
            VanishingOrder::Infinite => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaType {
    Smooth,
    I(usize),
    II,
    III,
    IV,
    IStar(usize),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Euler number of the fiber.
    pub fn euler(self) -> usize {
        match self {
            KodairaType::Smooth => 0,
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::Smooth => f.write_str("smooth"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IStar(n) => write!(f, "I*{n}"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

/// Kodaira type from the orders of `(A, B, disc)` of a minimal model
/// `y^2 = x^3 + A x + B` in characteristic zero.
pub fn kodaira_type(
    ord_a: VanishingOrder,
    ord_b: VanishingOrder,
    ord_delta: usize,
) -> Result<KodairaType, EllipticError> {
    use VanishingOrder::Finite;
    let bad = || EllipticError::InconsistentOrders { ord_a, ord_b, ord_delta };
    if ord_delta == 0 {
        return Ok(KodairaType::Smooth);
    }
    if ord_a == Finite(0) || ord_b == Finite(0) {
        return if ord_a == ord_b { Ok(KodairaType::I(ord_delta)) } else { Err(bad()) };
    }
    // 4A^3 + 27B^2 vanishes to order min(3a, 2b), or more when the two tie.
    let scaled = |o: VanishingOrder, k: usize| match o {
        Finite(n) => Finite(k * n),
        VanishingOrder::Infinite => VanishingOrder::Infinite,
    };
    let (ta, tb) = (scaled(ord_a, 3), scaled(ord_b, 2));
    let floor = ta.min(tb);
    let consistent = if ta == tb { floor <= Finite(ord_delta) } else { floor == Finite(ord_delta) };
    if !consistent {
        return Err(bad());
    }
    if ord_a == Finite(2) && ord_b == Finite(3) && ord_delta >= 6 {
        return Ok(KodairaType::IStar(ord_delta - 6));
    }
    let t = match ord_delta {
        2 if ord_b == Finite(1) => KodairaType::II,
        3 if ord_a == Finite(1) => KodairaType::III,
        4 if ord_b == Finite(2) => KodairaType::IV,
        6 if ord_a.at_least(2) && ord_b.at_least(3) => KodairaType::IStar(0),
        8 if ord_b == Finite(4) => KodairaType::IVStar,
        9 if ord_a == Finite(3) => KodairaType::IIIStar,
        10 if ord_b == Finite(5) => KodairaType::IIStar,
        _ => return Err(bad()),
    };
    Ok(t)
}

/// `y^2 = 4 x^3 - g8 x - g12`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassK3 {
    g8: ExactForm,
    g12: ExactForm,
}

impl WeierstrassK3 {
    pub fn new(g8: ExactForm, g12: ExactForm) -> Result<Self, FormError> {
        g8.expect_degree(8)?;
        g12.expect_degree(12)?;
        Ok(WeierstrassK3 { g8, g12 })
    }

    pub fn g8(&self) -> &ExactForm {
        &self.g8
    }

    pub fn g12(&self) -> &ExactForm {
        &self.g12
    }
}

/// `y^2 = -x^3 + h` with `deg h = 24`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxSurface {
    h: ExactForm,
}

impl AuxSurface {
    pub fn new(h: ExactForm) -> Result<Self, FormError> {
        h.expect_degree(24)?;
        if h.is_zero() {
            return Err(FormError::ZeroForm);
        }
        Ok(AuxSurface { h })
    }

    pub fn h(&self) -> &ExactForm {
        &self.h
    }
}

/// `g8^3 - 27 g12^2`, of degree 24.
pub fn discriminant_k3(m: &WeierstrassK3) -> ExactForm {
    let t = m.g12.pow(2).scalar_mul(&CycRat::from_int(27));
    m.g8.pow(3).sub(&t).unwrap()
}

/// `h^2`, of degree 48.
pub fn discriminant_aux(s: &AuxSurface) -> ExactForm {
    s.h.pow(2)
}

/// Data needed to classify the singular fibers of a Weierstrass fibration.
pub trait WeierstrassData {
    /// The coefficient of `x` up to a nonzero constant; `None` when it vanishes identically.
    fn a_coefficient(&self) -> Option<ExactForm>;
    /// The constant coefficient up to a nonzero constant.
    fn b_coefficient(&self) -> ExactForm;
    fn discriminant(&self) -> ExactForm;
}

impl WeierstrassData for WeierstrassK3 {
    fn a_coefficient(&self) -> Option<ExactForm> {
        Some(self.g8.clone())
    }
    fn b_coefficient(&self) -> ExactForm {
        self.g12.clone()
    }
    fn discriminant(&self) -> ExactForm {
        discriminant_k3(self)
    }
}

impl WeierstrassData for AuxSurface {
    fn a_coefficient(&self) -> Option<ExactForm> {
        None
    }
    fn b_coefficient(&self) -> ExactForm {
        self.h.clone()
    }
    fn discriminant(&self) -> ExactForm {
        discriminant_aux(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KodairaFiber {
    pub location: ProjectivePoint,
    /// Orders after minimal-model reduction.
    pub ord_a: VanishingOrder,
    pub ord_b: VanishingOrder,
    pub ord_delta: usize,
    /// Number of `(4, 6, 12)` reductions applied to reach a minimal model.
    pub reductions: usize,
    pub kind: KodairaType,
    pub euler: usize,
}

impl KodairaFiber {
    /// Order of the discriminant of the model as given.
    pub fn raw_ord_delta(&self) -> usize {
        self.ord_delta + 12 * self.reductions
    }
}

impl Serialize for KodairaFiber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let p = &self.location;
        let mut st = s.serialize_struct("KodairaFiber", 6)?;
        st.serialize_field("location", &[[p.z.re, p.z.im], [p.w.re, p.w.im]])?;
        st.serialize_field("ord_A", &self.ord_a)?;
        st.serialize_field("ord_B", &self.ord_b)?;
        st.serialize_field("ord_Delta", &self.ord_delta)?;
        st.serialize_field("type", &self.kind.to_string())?;
        st.serialize_field("euler", &self.euler)?;
        st.end()
    }
}

/// Splits a square-free `f` into parts on whose roots `a` vanishes to a
/// constant order.
fn split_by_order(f: &Poly<CycRat>, a: Option<&Poly<CycRat>>) -> Vec<(Poly<CycRat>, VanishingOrder)> {
    let Some(a) = a.filter(|a| !a.is_zero()) else {
        return vec![(f.clone(), VanishingOrder::Infinite)];
    };
    let mut out = Vec::new();
    let mut current = f.monic();
    let mut deriv = a.clone();
    let mut j = 0;
    while !current.is_constant() {
        let next = current.gcd(&deriv);
        let exact = current.div_exact(&next);
        if !exact.is_constant() {
            out.push((exact, VanishingOrder::Finite(j)));
        }
        current = next;
        deriv = deriv.derivative();
        j += 1;
    }
    out
}

fn order_at_infinity(f: Option<&ExactForm>) -> VanishingOrder {
    match f.and_then(ExactForm::ord_at_infinity) {
        Some(k) => VanishingOrder::Finite(k),
        None => VanishingOrder::Infinite,
    }
}

fn make_fiber(
    location: ProjectivePoint,
    mut ord_a: VanishingOrder,
    mut ord_b: VanishingOrder,
    mut ord_delta: usize,
) -> Result<KodairaFiber, EllipticError> {
    let mut reductions = 0;
    while ord_a.at_least(4) && ord_b.at_least(6) && ord_delta >= 12 {
        ord_a = ord_a.minus(4);
        ord_b = ord_b.minus(6);
        ord_delta -= 12;
        reductions += 1;
    }
    let kind = kodaira_type(ord_a, ord_b, ord_delta)?;
    Ok(KodairaFiber { location, ord_a, ord_b, ord_delta, reductions, kind, euler: kind.euler() })
}

/// One fiber per distinct root of the discriminant, in canonical order.
pub fn classify_fibers(model: &impl WeierstrassData) -> Result<Vec<KodairaFiber>, EllipticError> {
    let delta = model.discriminant();
    if delta.is_zero() {
        return Err(EllipticError::NotAnEllipticFibration);
    }
    let a_form = model.a_coefficient();
    let b_form = model.b_coefficient();
    let a_poly = a_form.as_ref().map(ExactForm::dehomogenize);
    let b_poly = b_form.dehomogenize();

    let mut fibers = Vec::new();
    for (part, ord_delta) in delta.dehomogenize().square_free_decomposition() {
        for (part_a, ord_a) in split_by_order(&part, a_poly.as_ref()) {
            for (piece, ord_b) in split_by_order(&part_a, Some(&b_poly)) {
                for r in aberth_roots(&piece.to_complex()) {
                    fibers.push(make_fiber(ProjectivePoint::finite(r), ord_a, ord_b, ord_delta)?);
                }
            }
        }
    }
    if let Some(k) = delta.ord_at_infinity().filter(|&k| k > 0) {
        fibers.push(make_fiber(
            ProjectivePoint::infinity(),
            order_at_infinity(a_form.as_ref()),
            order_at_infinity(Some(&b_form)),
            k,
        )?);
    }
    fibers.sort_by(|x, y| x.location.canonical_cmp(&y.location));
    Ok(fibers)
}

pub fn euler_total(fibers: &[KodairaFiber]) -> usize {
    fibers.iter().map(|f| f.euler).sum()
}

/// Second Betti number of a simply connected elliptic surface with the given
/// Euler number.
pub fn betti2(euler_total: i64) -> i64 {
    assert!(euler_total >= 2, "Euler number of an elliptic surface is at least 2");
    euler_total - 2
}

/// Holomorphic Euler characteristic of `O(d)`:
/// `d.(d - K)/2 + (K^2 + c2)/12`.
pub fn riemann_roch_chi(d_sq: i64, d_dot_k: i64, k_sq: i64, c2: i64) -> Rational {
    Rational::new((d_sq - d_dot_k).into(), 2.into()) + Rational::new((k_sq + c2).into(), 12.into())
}

/// Euler's totient function.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The Picard number bound for the degenerate family: `b2 - 2 * phi(33)`
/// with `b2 = 46`.
pub fn picard_bound_check() -> i64 {
    let b2 = betti2(48);
    b2 - 2 * totient(33) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub euler_total: i64,
    pub b2: i64,
    pub k_squared: i64,
    /// `(d^2, d.K)` for the divisor fed to Riemann–Roch.
    pub chi_inputs: (i64, i64),
}

impl SurfaceInvariants {
    pub fn from_fibers(fibers: &[KodairaFiber], k_squared: i64, chi_inputs: (i64, i64)) -> Self {
        let e = euler_total(fibers) as i64;
        SurfaceInvariants { euler_total: e, b2: betti2(e), k_squared, chi_inputs }
    }

    pub fn chi(&self) -> Rational {
        riemann_roch_chi(self.chi_inputs.0, self.chi_inputs.1, self.k_squared, self.euler_total)
    }
}

/// A member of the family `f = a w^8`, `g = w (z^11 + b w^11)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub f: ExactForm,
    pub g: ExactForm,
    pub h: ExactForm,
    /// Roots of `t^2 + 2 b t + (a^3 + b^2)`, so that
    /// `h = w^2 (z^11 - a' w^11)(z^11 - b' w^11)`.
    pub a_prime: ComplexF,
    pub b_prime: ComplexF,
    /// `h == w^2 (z^22 + 2b z^11 w^11 + (a^3 + b^2) w^22)` exactly.
    pub verified: bool,
}

pub fn family(a: &CycRat, b: &CycRat) -> FamilyMember {
    let f = ExactForm::monomial(8, 0, a.clone());
    let mut g = ExactForm::monomial(12, 11, CycRat::one());
    g = g.add(&ExactForm::monomial(12, 0, b.clone())).unwrap();
    let h = f.pow(3).add(&g.pow(2)).unwrap();

    let c = a.pow(3) + b.pow(2);
    let mut inner = vec![CycRat::zero(); 23];
    inner[22] = CycRat::one();
    inner[11] = CycRat::from_int(2) * b.clone();
    inner[0] = c;
    let expected = ExactForm::from_coeffs(inner).mul(&ExactForm::w_pow(2));
    let verified = expected == h;

    // t = -b +- sqrt(b^2 - (a^3 + b^2)) = -b +- sqrt(-a^3)
    let bc = b.to_complex();
    let s = (-a.to_complex().powi(3)).sqrt();
    FamilyMember { f, g, h, a_prime: -bc + s, b_prime: -bc - s, verified }
}

impl FamilyMember {
    pub fn aux_surface(&self) -> Result<AuxSurface, FormError> {
        AuxSurface::new(self.h.clone())
    }
}
