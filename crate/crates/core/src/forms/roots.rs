use std::f64::consts::TAU;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::univariate::Poly;
use super::{ComplexF, ComplexForm, ExactForm, FormError};

/// Relative distance under which two numerical roots are merged.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

const ABERTH_MAX_ITERS: usize = 2000;

/// A point `[z:w]` of the projective line, normalized to either `[r:1]` or `[1:0]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub z: ComplexF,
    pub w: ComplexF,
}

impl ProjectivePoint {
    pub fn finite(r: ComplexF) -> Self {
        ProjectivePoint { z: r, w: ComplexF::new(1.0, 0.0) }
    }

    pub fn infinity() -> Self {
        ProjectivePoint { z: ComplexF::new(1.0, 0.0), w: ComplexF::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.w.is_zero()
    }

    /// Total order used for canonical output: finite points by real then
    /// imaginary part, the point at infinity last.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            (false, false) => {
                let key = |p: &ProjectivePoint| (round_key(p.z.re), round_key(p.z.im));
                key(self).cmp(&key(other)).then(self.z.re.total_cmp(&other.z.re))
            }
        }
    }
}

fn round_key(x: f64) -> i64 {
    (x * 1e9).round() as i64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub point: ProjectivePoint,
    pub multiplicity: usize,
}

/// Roots of a complex binary form on the projective line, with multiplicities
/// obtained by clustering at [`CLUSTER_TOLERANCE`].
pub fn roots(p: &ComplexForm) -> Result<Vec<Root>, FormError> {
    roots_with_tolerance(p, CLUSTER_TOLERANCE)
}

pub fn roots_with_tolerance(p: &ComplexForm, tol: f64) -> Result<Vec<Root>, FormError> {
    let at_inf = p.ord_at_infinity().ok_or(FormError::ZeroForm)?;
    let at_origin = p.ord_at_origin().unwrap();
    let top = p.degree() - at_inf;
    let core = Poly::new(p.coeffs()[at_origin..=top].to_vec());

    let mut out: Vec<Root> = cluster(&aberth(&core), tol)
        .into_iter()
        .map(|(r, m)| Root { point: ProjectivePoint::finite(r), multiplicity: m })
        .collect();
    if at_origin > 0 {
        out.push(Root {
            point: ProjectivePoint::finite(ComplexF::zero()),
            multiplicity: at_origin,
        });
    }
    if at_inf > 0 {
        out.push(Root { point: ProjectivePoint::infinity(), multiplicity: at_inf });
    }
    out.sort_by(|a, b| a.point.canonical_cmp(&b.point));
    Ok(out)
}

/// Roots of an exact form. Multiplicities come from the exact square-free
/// decomposition, so they are right at any order; only the locations are
/// numerical.
pub fn exact_roots(p: &ExactForm) -> Result<Vec<Root>, FormError> {
    let at_inf = p.ord_at_infinity().ok_or(FormError::ZeroForm)?;
    let mut out = Vec::new();
    for (part, k) in p.dehomogenize().square_free_decomposition() {
        for r in aberth(&part.to_complex()) {
            out.push(Root { point: ProjectivePoint::finite(r), multiplicity: k });
        }
    }
    if at_inf > 0 {
        out.push(Root { point: ProjectivePoint::infinity(), multiplicity: at_inf });
    }
    out.sort_by(|a, b| a.point.canonical_cmp(&b.point));
    Ok(out)
}

/// All complex roots (with repetition) of a univariate polynomial via the
/// Aberth–Ehrlich iteration.
pub fn aberth(p: &Poly<ComplexF>) -> Vec<ComplexF> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let p = p.monic();
    if n == 1 {
        return vec![-p.coeffs()[0]];
    }
    let mut z = initial_guesses(&p, n);
    for _ in 0..ABERTH_MAX_ITERS {
        let mut max_rel = 0.0_f64;
        for i in 0..n {
            let (val, der) = p.eval_with_derivative(z[i]);
            if val.is_zero() {
                continue;
            }
            let ratio = val / der;
            let repulsion: ComplexF = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.is_zero() {
                        ComplexF::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (ComplexF::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            max_rel = max_rel.max(step.norm() / z[i].norm().max(f64::MIN_POSITIVE));
        }
        if max_rel < 4.0 * f64::EPSILON {
            break;
        }
    }
    z
}

fn initial_guesses(p: &Poly<ComplexF>, n: usize) -> Vec<ComplexF> {
    // Geometric mean of root magnitudes for a monic polynomial.
    let c0 = p.coeffs()[0].norm();
    let radius = if c0 > 0.0 { c0.powf(1.0 / n as f64) } else { 1.0 };
    (0..n)
        .map(|k| ComplexF::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Single-linkage clustering of roots; returns cluster means and sizes.
fn cluster(rs: &[ComplexF], tol: f64) -> Vec<(ComplexF, usize)> {
    let n = rs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1f64.max(rs[i].norm()).max(rs[j].norm());
            if (rs[i] - rs[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, ComplexF, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += rs[i];
                g.2 += 1;
            }
            None => groups.push((r, rs[i], 1)),
        }
    }
    groups.into_iter().map(|(_, s, m)| (s / m as f64, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(rs: &[Root]) -> usize {
        rs.iter().map(|r| r.multiplicity).sum()
    }

    #[test]
    fn roots_of_unity() {
        let p = ExactForm::z_pow(24).sub(&ExactForm::w_pow(24)).unwrap().embed();
        let rs = roots(&p).unwrap();
        assert_eq!(rs.len(), 24);
        assert_eq!(total(&rs), 24);
        for r in &rs {
            assert_eq!(r.multiplicity, 1);
            assert!((r.point.z.norm() - 1.0).abs() < 1e-12);
            assert!(p.evaluate(r.point.z, r.point.w).norm() < 1e-10);
        }
    }

    #[test]
    fn double_root_at_infinity() {
        // w^2 (z^22 + w^22)
        let p = ExactForm::z_pow(22)
            .add(&ExactForm::w_pow(22))
            .unwrap()
            .mul(&ExactForm::w_pow(2))
            .embed();
        let rs = roots(&p).unwrap();
        assert_eq!(rs.len(), 23);
        let inf = rs.last().unwrap();
        assert!(inf.point.is_infinity());
        assert_eq!(inf.multiplicity, 2);
        assert!(rs[..22].iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn pure_power_of_z() {
        let rs = roots(&ExactForm::z_pow(8).embed()).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicity, 8);
        assert!(rs[0].point.z.is_zero() && !rs[0].point.is_infinity());
    }

    #[test]
    fn clustered_double_roots() {
        // (z^11 + w^11)^2
        let p = ExactForm::z_pow(11).add(&ExactForm::w_pow(11)).unwrap().pow(2).embed();
        let rs = roots(&p).unwrap();
        assert_eq!(rs.len(), 11);
        assert!(rs.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn exact_triple_root() {
        // (z - w)^3 (z + 2w) w^2: clustering cannot see the triple root at 1e-6
        let p = ExactForm::from_coeffs(vec![(-1).into(), 1.into()])
            .pow(3)
            .mul(&ExactForm::from_coeffs(vec![2.into(), 1.into()]))
            .mul(&ExactForm::w_pow(2));
        let rs = exact_roots(&p).unwrap();
        assert_eq!(rs.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![1, 3, 2]);
        assert!((rs[1].point.z - ComplexF::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_form_is_rejected() {
        assert_eq!(roots(&ComplexForm::zero(5)), Err(FormError::ZeroForm));
    }
}
