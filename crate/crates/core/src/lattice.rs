//! Intersection calculus on the span of the fiber class `e`, the zero
//! section `s0` and the six sections `s1..s6` given by `(zeta3^k f, +-g)`,
//! together with the rank-2 lattice `M` spanned by `tau_i = s_i - s0 - 4e`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::forms::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("section index {0} out of range 1..=6")]
    SectionIndex(usize),
    #[error("Gram matrix {0:?} is not negative definite")]
    InvalidLattice([[i64; 2]; 2]),
    #[error("norm must be negative, got {0}")]
    NonNegativeNorm(Rational),
}

/// Position of each generator in a [`DivisorClass`] coordinate vector.
pub const E: usize = 0;
pub const SIGMA0: usize = 1;

/// A rational combination of `e, s0, s1, ..., s6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub coords: [Rational; 8],
}

impl DivisorClass {
    pub fn zero() -> Self {
        DivisorClass { coords: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn basis(i: usize) -> Self {
        let mut d = Self::zero();
        d.coords[i] = Rational::one();
        d
    }

    pub fn fiber() -> Self {
        Self::basis(E)
    }

    pub fn zero_section() -> Self {
        Self::basis(SIGMA0)
    }

    /// The section `s_i`, `1 <= i <= 6`.
    pub fn section(i: usize) -> Result<Self, LatticeError> {
        if !(1..=6).contains(&i) {
            return Err(LatticeError::SectionIndex(i));
        }
        Ok(Self::basis(SIGMA0 + i))
    }

    /// The canonical class `2e` of the auxiliary surface.
    pub fn canonical() -> Self {
        Self::fiber().scale(&rat(2))
    }

    pub fn add(&self, other: &Self) -> Self {
        DivisorClass { coords: std::array::from_fn(|i| &self.coords[i] + &other.coords[i]) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DivisorClass { coords: std::array::from_fn(|i| &self.coords[i] - &other.coords[i]) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivisorClass { coords: std::array::from_fn(|i| &self.coords[i] * c) }
    }
}

/// Which of the six sections: `(zeta3^k f, sign * g)`.
fn section_data(i: usize) -> (usize, bool) {
    ((i - 1) % 3, i <= 3)
}

/// The symmetric intersection matrix on `(e, s0, s1, ..., s6)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingTable {
    pub matrix: [[i64; 8]; 8],
}

impl PairingTable {
    /// `e^2 = 0`, `e.s = 1`, `s^2 = -4`, `s_i.s0 = 0`; for two of the six
    /// sections: 8 when they share the sign of `g` (they meet where `f = 0`),
    /// 12 when they share the cube-root factor (they meet where `g = 0`), and
    /// 0 otherwise.
    pub fn standard() -> Self {
        let mut m = [[0i64; 8]; 8];
        for i in 1..8 {
            m[E][i] = 1;
            m[i][E] = 1;
            m[i][i] = -4;
        }
        for i in 1..=6 {
            for j in 1..=6 {
                if i == j {
                    continue;
                }
                let ((ki, si), (kj, sj)) = (section_data(i), section_data(j));
                m[SIGMA0 + i][SIGMA0 + j] = match (ki == kj, si == sj) {
                    (false, true) => 8,
                    (true, false) => 12,
                    _ => 0,
                };
            }
        }
        PairingTable { matrix: m }
    }

    pub fn pair(&self, x: &DivisorClass, y: &DivisorClass) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..8 {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                let m = self.matrix[i][j];
                if m != 0 && !y.coords[j].is_zero() {
                    acc += &x.coords[i] * &y.coords[j] * rat(m);
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        (0..8).all(|i| (0..8).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }
}

impl Default for PairingTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// Intersection number with the standard table.
pub fn pair(x: &DivisorClass, y: &DivisorClass) -> Rational {
    PairingTable::standard().pair(x, y)
}

/// `tau(s_i) = s_i - s0 - 4e`.
pub fn tau(i: usize) -> Result<DivisorClass, LatticeError> {
    Ok(DivisorClass::section(i)?
        .sub(&DivisorClass::zero_section())
        .sub(&DivisorClass::fiber().scale(&rat(4))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub label: String,
    pub value: String,
    pub expected: String,
    pub pass: bool,
}

fn taus(ix: &[usize]) -> DivisorClass {
    ix.iter().fold(DivisorClass::zero(), |acc, &i| acc.add(&tau(i).unwrap()))
}

/// Checks the self-intersection relations that make `(tau1, tau2)` a basis
/// of `M`, plus the Gram entries themselves.
pub fn verify_relations_with(table: &PairingTable) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    let mut check = |label: String, value: Rational, expected: i64| {
        out.push(RelationCheck {
            label,
            pass: value == rat(expected),
            value: value.to_string(),
            expected: expected.to_string(),
        });
    };
    for i in 1..=6 {
        let t = taus(&[i]);
        check(format!("tau{i}^2"), table.pair(&t, &t), -8);
        check(format!("tau{i}.e"), table.pair(&t, &DivisorClass::fiber()), 0);
        check(format!("tau{i}.sigma0"), table.pair(&t, &DivisorClass::zero_section()), 0);
    }
    check("tau1.tau2".into(), table.pair(&taus(&[1]), &taus(&[2])), 4);
    for combo in [&[1, 4][..], &[1, 2, 3], &[2, 5], &[3, 6], &[4, 5, 6]] {
        let t = taus(combo);
        let label = combo.iter().map(|i| format!("tau{i}")).collect::<Vec<_>>().join(" + ");
        check(format!("({label})^2"), table.pair(&t, &t), 0);
    }
    out
}

pub fn verify_relations() -> Vec<RelationCheck> {
    verify_relations_with(&PairingTable::standard())
}

/// A rank-2 lattice given by its Gram matrix in an ordered basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    pub gram: [[i64; 2]; 2],
}

impl GramLattice {
    /// The lattice `M` in the basis `(tau1, tau2)`.
    pub fn tau_lattice() -> Self {
        GramLattice { gram: [[-8, 4], [4, -8]] }
    }

    /// The same Gram matrix computed from the pairing table.
    pub fn from_table(table: &PairingTable) -> Self {
        let (t1, t2) = (tau(1).unwrap(), tau(2).unwrap());
        let int = |r: Rational| r.to_integer().to_i64().expect("integral pairing");
        GramLattice {
            gram: [
                [int(table.pair(&t1, &t1)), int(table.pair(&t1, &t2))],
                [int(table.pair(&t2, &t1)), int(table.pair(&t2, &t2))],
            ],
        }
    }

    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.gram;
        a * d - b * c
    }

    pub fn is_negative_definite(&self) -> bool {
        let [[a, b], [c, _]] = self.gram;
        b == c && a < 0 && self.determinant() > 0
    }

    /// `x^T G y` for rational coordinate vectors.
    pub fn pair(&self, x: &[Rational; 2], y: &[Rational; 2]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..2 {
            for j in 0..2 {
                acc += &x[i] * &y[j] * rat(self.gram[i][j]);
            }
        }
        acc
    }
}

/// Lexicographic on `(numerator, denominator)` of each coordinate.
pub fn cmp_rational_vectors(x: &[Rational; 2], y: &[Rational; 2]) -> Ordering {
    let key = |v: &[Rational; 2]| {
        [(v[0].numer().clone(), v[0].denom().clone()), (v[1].numer().clone(), v[1].denom().clone())]
    };
    key(x).cmp(&key(y))
}

/// All `rho` in the dual lattice (`rho . M` integral) with `rho^2 = norm`,
/// in coordinates of the lattice basis.
///
/// Writing `rho = G^{-1} n` with `n` integral, the condition becomes the
/// positive definite equation `-adj(G)[n] = -norm * det G`, solved row by row
/// in `n2` with an exact discriminant test for `n1`.
pub fn enumerate_norm_vectors(
    lattice: &GramLattice,
    norm: &Rational,
) -> Result<Vec<[Rational; 2]>, LatticeError> {
    if !lattice.is_negative_definite() {
        return Err(LatticeError::InvalidLattice(lattice.gram));
    }
    if !norm.is_negative() {
        return Err(LatticeError::NonNegativeNorm(norm.clone()));
    }
    let [[a, b], [_, c]] = lattice.gram;
    let det = lattice.determinant();
    let target = -norm * rat(det);
    if !target.is_integer() {
        return Ok(Vec::new());
    }
    let target = target.to_integer();
    // P(n) = qa n1^2 + qb n1 n2 + qc n2^2 with qa, qc > 0 and qb^2 < 4 qa qc.
    let (qa, qb, qc) = (BigInt::from(-c), BigInt::from(2 * b), BigInt::from(-a));
    let disc_form = BigInt::from(4) * &qa * &qc - &qb * &qb;
    // Completing the square in n1: disc_form * n2^2 <= 4 qa target.
    let n2_max = (BigInt::from(4) * &qa * &target / &disc_form).sqrt();

    let mut ns = Vec::new();
    let mut n2 = -n2_max.clone();
    while n2 <= n2_max {
        // qa n1^2 + (qb n2) n1 + (qc n2^2 - target) = 0
        let lin = &qb * &n2;
        let cst = &qc * &n2 * &n2 - &target;
        let d = &lin * &lin - BigInt::from(4) * &qa * &cst;
        if !d.is_negative() {
            let s = d.sqrt();
            if &s * &s == d {
                let two_qa = BigInt::from(2) * &qa;
                for root in [-&lin + &s, -&lin - &s] {
                    if (&root % &two_qa).is_zero() {
                        let n1 = root / &two_qa;
                        if !ns.contains(&(n1.clone(), n2.clone())) {
                            ns.push((n1, n2.clone()));
                        }
                    }
                }
            }
        }
        n2 += 1;
    }

    let detq = Rational::from_integer(det.into());
    let mut out: Vec<[Rational; 2]> = ns
        .into_iter()
        .map(|(n1, n2)| {
            let (n1, n2) = (Rational::from_integer(n1), Rational::from_integer(n2));
            // G^{-1} = adj(G) / det
            [
                (&n1 * rat(c) - &n2 * rat(b)) / &detq,
                (&n2 * rat(a) - &n1 * rat(b)) / &detq,
            ]
        })
        .collect();
    out.sort_by(cmp_rational_vectors);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_pairings() {
        let e = DivisorClass::fiber();
        assert_eq!(pair(&e, &e), rat(0));
        let s = |i| DivisorClass::section(i).unwrap();
        assert_eq!(pair(&s(1), &s(4)), rat(12));
        assert_eq!(pair(&s(1), &s(2)), rat(8));
        assert_eq!(pair(&s(1), &s(5)), rat(0));
        assert_eq!(pair(&s(3), &DivisorClass::zero_section()), rat(0));
        assert!(PairingTable::standard().is_symmetric());
    }

    #[test]
    fn tau_values() {
        let t1 = tau(1).unwrap();
        assert_eq!(pair(&t1, &t1), rat(-8));
        assert_eq!(pair(&t1, &DivisorClass::fiber()), rat(0));
        assert_eq!(pair(&t1, &DivisorClass::zero_section()), rat(0));
        assert_eq!(pair(&t1, &tau(2).unwrap()), rat(4));
        assert_eq!(tau(0), Err(LatticeError::SectionIndex(0)));
        assert_eq!(tau(7), Err(LatticeError::SectionIndex(7)));
    }

    #[test]
    fn relations_hold() {
        let report = verify_relations();
        assert!(report.iter().all(|r| r.pass), "{report:#?}");
        let t12 = taus(&[1, 2]);
        assert_eq!(pair(&t12, &t12), rat(-8));
    }

    #[test]
    fn gram_from_table() {
        assert_eq!(GramLattice::from_table(&PairingTable::standard()), GramLattice::tau_lattice());
        assert_eq!(GramLattice::tau_lattice().determinant(), 48);
    }

    #[test]
    fn canonical_class_pairs_trivially_with_taus() {
        let k = DivisorClass::canonical();
        for i in 1..=6 {
            assert_eq!(pair(&k, &tau(i).unwrap()), rat(0));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad = GramLattice { gram: [[8, 4], [4, 8]] };
        assert!(matches!(
            enumerate_norm_vectors(&bad, &rat(-8)),
            Err(LatticeError::InvalidLattice(_))
        ));
        assert!(matches!(
            enumerate_norm_vectors(&GramLattice::tau_lattice(), &rat(0)),
            Err(LatticeError::NonNegativeNorm(_))
        ));
    }
}
