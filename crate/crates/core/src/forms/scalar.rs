//! Coefficient rings for binary forms.
//!
//! Three coefficient types are supported: exact rationals, exact elements
//! of the Eisenstein field `Q(zeta3)`, and double-precision complex numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;
pub type ComplexF = Complex64;

/// `exp(2 pi i / 3)` as a float pair.
pub const ZETA3_F64: ComplexF = ComplexF {
    re: -0.5,
    im: 0.866_025_403_784_438_6,
};

/// Ring operations needed by [`BinaryForm`](super::BinaryForm).
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Image in the complex numbers.
    fn to_complex(&self) -> ComplexF;

    fn from_int(n: i64) -> Self;

    /// Exact coefficients never lose information under arithmetic.
    const EXACT: bool;
}

/// Coefficient rings that are fields.
pub trait Field: Coeff {
    fn inv(&self) -> Option<Self>;
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

impl Coeff for Rational {
    fn to_complex(&self) -> ComplexF {
        ComplexF::new(rational_to_f64(self), 0.0)
    }
    fn from_int(n: i64) -> Self {
        rat(n)
    }
    const EXACT: bool = true;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coeff for ComplexF {
    fn to_complex(&self) -> ComplexF {
        *self
    }
    fn from_int(n: i64) -> Self {
        ComplexF::new(n as f64, 0.0)
    }
    const EXACT: bool = false;
}

impl Field for ComplexF {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

/// An element `a + b*zeta3` of `Q(zeta3)`, with `zeta3^2 = -1 - zeta3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycRat {
    pub a: Rational,
    pub b: Rational,
}

impl CycRat {
    pub fn new(a: Rational, b: Rational) -> Self {
        CycRat { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        CycRat { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn zeta3() -> Self {
        CycRat { a: Rational::zero(), b: Rational::one() }
    }

    /// `zeta3^k` for any integer `k`.
    pub fn zeta3_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::zeta3(),
            _ => CycRat { a: rat(-1), b: rat(-1) },
        }
    }

    /// Complex conjugate: `zeta3 -> zeta3^2`.
    pub fn conj(&self) -> Self {
        CycRat { a: &self.a - &self.b, b: -self.b.clone() }
    }

    /// Field norm `a^2 - ab + b^2`, always non-negative.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*zeta3", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}*zeta3)", self.a, sign, self.b.abs())
            }
        }
    }
}

impl Zero for CycRat {
    fn zero() -> Self {
        CycRat { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for CycRat {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Add for CycRat {
    type Output = CycRat;
    fn add(self, rhs: CycRat) -> CycRat {
        CycRat { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for CycRat {
    type Output = CycRat;
    fn sub(self, rhs: CycRat) -> CycRat {
        CycRat { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { a: -self.a, b: -self.b }
    }
}

impl Mul for CycRat {
    type Output = CycRat;
    // (a + b z)(c + d z) = ac - bd + (ad + bc - bd) z
    fn mul(self, rhs: CycRat) -> CycRat {
        let bd = &self.b * &rhs.b;
        CycRat {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bd,
        }
    }
}

impl Coeff for CycRat {
    fn to_complex(&self) -> ComplexF {
        rational_to_f64(&self.a) * ComplexF::one() + ZETA3_F64 * rational_to_f64(&self.b)
    }
    fn from_int(n: i64) -> Self {
        CycRat::from_int(n)
    }
    const EXACT: bool = true;
}

impl Field for CycRat {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(CycRat { a: c.a / &n, b: c.b / n })
    }
}

impl From<Rational> for CycRat {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl From<i64> for CycRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}
