//! Dense univariate polynomials, used for exact GCD and square-free
//! decomposition of dehomogenized forms.

use num_traits::{One, Zero};

use super::{Coeff, ComplexF, Field};

/// Ascending coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| C::from_int(i as i64) * c.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[C], i: usize| v.get(i).cloned().unwrap_or_else(C::zero);
        Poly::new((0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn to_complex(&self) -> Poly<ComplexF> {
        Poly::new(self.coeffs.iter().map(Coeff::to_complex).collect())
    }
}

impl<C: Field> Poly<C> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                Poly::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone() * lc_inv.clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; the remainder is discarded.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).0
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's square-free decomposition: `self = lc * prod f_k^k`, returned as
    /// `(f_k, k)` for each non-constant `f_k`. Characteristic zero only.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_exact(&a0);
        let c = d.div_exact(&a0);
        let mut dd = c.sub(&b.derivative());
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&dd);
            let b_next = b.div_exact(&a);
            let c_next = dd.div_exact(&a);
            dd = c_next.sub(&b_next.derivative());
            if !a.is_constant() {
                out.push((a.monic(), k));
            }
            b = b_next;
            k += 1;
        }
        out
    }
}

impl Poly<ComplexF> {
    pub fn eval(&self, x: ComplexF) -> ComplexF {
        self.coeffs.iter().rev().fold(ComplexF::zero(), |acc, c| acc * x + c)
    }

    /// Value and derivative at `x`.
    pub fn eval_with_derivative(&self, x: ComplexF) -> (ComplexF, ComplexF) {
        let mut p = ComplexF::zero();
        let mut dp = ComplexF::zero();
        for c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }
}

impl<C: Coeff> std::ops::Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Self {
        Poly::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{rat, CycRat, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -1, 4, 1, -5, 9]);
        let b = p(&[2, 0, -7]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).sub(&a.sub(&r)), Poly::zero());
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_products() {
        let g = p(&[1, 1]); // 1 + x
        let a = g.mul(&p(&[-2, 1]));
        let b = g.mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x - 1) (x + 2)^2 x^3
        let f = p(&[-1, 1]).mul(&p(&[2, 1]).pow_test(2)).mul(&p(&[0, 1]).pow_test(3));
        let sf = f.square_free_decomposition();
        let degs: Vec<_> = sf.iter().map(|(q, k)| (q.degree().unwrap(), *k)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(sf[0].0, p(&[-1, 1]));
    }

    #[test]
    fn yun_over_eisenstein_field() {
        // (x - zeta3)^2 (x - 1)
        let z = CycRat::zeta3();
        let lin = Poly::new(vec![-z.clone(), CycRat::one()]);
        let f = lin.mul(&lin).mul(&Poly::new(vec![-CycRat::one(), CycRat::one()]));
        let sf = f.square_free_decomposition();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[1], (lin, 2));
    }

    impl Poly<Rational> {
        fn pow_test(&self, e: usize) -> Self {
            (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
        }
    }
}
