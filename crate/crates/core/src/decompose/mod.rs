//! Decompositions `h = phi^3 + psi^2` of a degree-24 binary form.
//!
//! [`forward`] builds `h` exactly from `(f, g)`. [`solve`] goes the other way:
//! it searches numerically for every `(phi, psi)` with `phi^3 + psi^2 = h` and
//! groups the solutions into orbits of the order-6 group generated by
//! `phi -> zeta3 * phi` and `psi -> -psi`.

mod experiment;
mod solver;

pub use experiment::{experiment_six_to_one, run_trial, sample_pair, trial_seed, ExperimentReport, TrialOutcome, RECOVERY_TOLERANCE};
pub use solver::{solve, ResidualMap, SolveReport, SolveStatus, N_EQUATIONS, N_UNKNOWNS};

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::forms::{Coeff, ComplexF, ComplexForm, CycRat, ExactForm, FormError, ZETA3_F64};

pub const PHI_DEGREE: usize = 8;
pub const PSI_DEGREE: usize = 12;
pub const H_DEGREE: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("invalid solver configuration: {0}")]
    Config(String),
}

/// `f^3 + g^2`.
pub fn forward(f: &ExactForm, g: &ExactForm) -> Result<ExactForm, FormError> {
    f.expect_degree(PHI_DEGREE)?;
    g.expect_degree(PSI_DEGREE)?;
    f.pow(3).add(&g.pow(2))
}

/// Coefficient rings containing a primitive cube root of unity.
pub trait HasZeta3: Coeff {
    fn zeta3() -> Self;
}

impl HasZeta3 for CycRat {
    fn zeta3() -> Self {
        CycRat::zeta3()
    }
}

impl HasZeta3 for ComplexF {
    fn zeta3() -> Self {
        ZETA3_F64
    }
}

type Pair<C> = (crate::forms::BinaryForm<C>, crate::forms::BinaryForm<C>);

/// The pairs `(zeta3^k phi, +-psi)` in the order
/// `(phi, psi), (z phi, psi), (z^2 phi, psi), (phi, -psi), (z phi, -psi), (z^2 phi, -psi)`,
/// with repeats removed.
pub fn orbit<C: HasZeta3>(
    phi: &crate::forms::BinaryForm<C>,
    psi: &crate::forms::BinaryForm<C>,
) -> Vec<Pair<C>> {
    let z = C::zeta3();
    let z2 = z.clone() * z.clone();
    let mut out: Vec<Pair<C>> = Vec::with_capacity(6);
    for sign in [C::one(), -C::one()] {
        for k in [C::one(), z.clone(), z2.clone()] {
            let pair = (phi.scalar_mul(&k), psi.scalar_mul(&sign));
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out
}

/// Group element `(k, negate)` acting by `(zeta3^k phi, +-psi)`.
pub(crate) fn act(phi: &ComplexForm, psi: &ComplexForm, k: usize, negate: bool) -> (ComplexForm, ComplexForm) {
    let zk = ZETA3_F64.powu(k as u32);
    let s = if negate { -ComplexF::one() } else { ComplexF::one() };
    (phi.scalar_mul(&zk), psi.scalar_mul(&s))
}

/// Max-norm distance between two `(phi, psi)` pairs divided by the max-norm of `reference`.
pub fn relative_distance(candidate: (&ComplexForm, &ComplexForm), reference: (&ComplexForm, &ComplexForm)) -> f64 {
    let num = candidate.0.max_distance(reference.0).max(candidate.1.max_distance(reference.1));
    let den = reference.0.max_abs().max(reference.1.max_abs());
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Smallest [`relative_distance`] from any group image of `candidate` to
/// `reference`, with the aligned image.
pub fn align(
    candidate: (&ComplexForm, &ComplexForm),
    reference: (&ComplexForm, &ComplexForm),
) -> (f64, ComplexForm, ComplexForm) {
    let mut best: Option<(f64, ComplexForm, ComplexForm)> = None;
    for negate in [false, true] {
        for k in 0..3 {
            let (p, q) = act(candidate.0, candidate.1, k, negate);
            let d = relative_distance((&p, &q), reference);
            if best.as_ref().is_none_or(|b| d < b.0) {
                best = Some((d, p, q));
            }
        }
    }
    best.unwrap()
}

/// A numerical decomposition with its relative residual
/// `|phi^3 + psi^2 - h|_max / |h|_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionSolution {
    pub phi: ComplexForm,
    pub psi: ComplexForm,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionOrbit {
    pub representative: DecompositionSolution,
    /// Distinct group images actually reached by the solver.
    pub members_found: usize,
    /// 6, or 2 when `phi = 0`, or 3 when `psi = 0`, or 1 when both vanish.
    pub orbit_size: usize,
}

impl DecompositionOrbit {
    /// All group images of the representative, each with its own residual.
    pub fn members(&self, h: &ComplexForm) -> Vec<DecompositionSolution> {
        let r = &self.representative;
        let mut out: Vec<DecompositionSolution> = Vec::new();
        for negate in [false, true] {
            for k in 0..3 {
                let (phi, psi) = act(&r.phi, &r.psi, k, negate);
                let residual = relative_residual(h, &phi, &psi);
                out.push(DecompositionSolution { phi, psi, residual });
            }
        }
        let mut distinct: Vec<DecompositionSolution> = Vec::new();
        for s in out {
            let dup = distinct.iter().any(|d| {
                relative_distance((&s.phi, &s.psi), (&d.phi, &d.psi)) <= 1e-12
            });
            if !dup {
                distinct.push(s);
            }
        }
        distinct
    }
}

/// `|phi^3 + psi^2 - h|_max / |h|_max`.
pub fn relative_residual(h: &ComplexForm, phi: &ComplexForm, psi: &ComplexForm) -> f64 {
    let diff = phi.pow(3).add(&psi.pow(2)).and_then(|s| s.sub(h)).expect("degrees checked");
    let scale = h.max_abs();
    if scale == 0.0 {
        diff.max_abs()
    } else {
        diff.max_abs() / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub residual: f64,
}

fn check_degrees(h: usize, phi: usize, psi: usize) -> Result<(), FormError> {
    for (found, expected) in [(h, H_DEGREE), (phi, PHI_DEGREE), (psi, PSI_DEGREE)] {
        if found != expected {
            return Err(FormError::DegreeMismatch { expected, found });
        }
    }
    Ok(())
}

/// Floating check: passes iff the relative residual is at most `tol`.
pub fn verify(
    h: &ComplexForm,
    phi: &ComplexForm,
    psi: &ComplexForm,
    tol: f64,
) -> Result<Verification, FormError> {
    check_degrees(h.degree(), phi.degree(), psi.degree())?;
    let residual = relative_residual(h, phi, psi);
    Ok(Verification { ok: residual <= tol, residual })
}

/// Exact check: passes iff `phi^3 + psi^2 = h` as exact forms. The reported
/// residual is zero on success and the floating relative residual otherwise.
pub fn verify_exact(h: &ExactForm, phi: &ExactForm, psi: &ExactForm) -> Result<Verification, FormError> {
    check_degrees(h.degree(), phi.degree(), psi.degree())?;
    let diff = forward(phi, psi)?.sub(h)?;
    if diff.is_zero() {
        return Ok(Verification { ok: true, residual: 0.0 });
    }
    let scale = h.embed().max_abs();
    let r = diff.embed().max_abs();
    Ok(Verification { ok: false, residual: if scale == 0.0 { r } else { r / scale } })
}

/// Multi-start Levenberg–Marquardt settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Random complex-Gaussian starts.
    pub starts: usize,
    /// Extra starts restricted to `psi = 0` and to `phi = 0` (this many of each).
    pub axis_starts: usize,
    /// Starts per candidate common factor of `phi` and `psi`; only used when
    /// `h` has repeated roots.
    pub factor_starts: usize,
    pub max_iters: usize,
    /// Converged solutions have relative residual at most this.
    pub tol_accept: f64,
    /// Relative distance for merging solutions and for the suspect band.
    pub tol_orbit: f64,
    /// Iteration stops once the relative residual falls below this.
    pub tol_stop: f64,
    pub seed: u64,
    /// Initial Levenberg parameter.
    pub damping: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            starts: 200,
            axis_starts: 4,
            factor_starts: 2,
            max_iters: 200,
            tol_accept: 1e-8,
            tol_orbit: 1e-4,
            tol_stop: 1e-12,
            seed: 0,
            damping: 1e-3,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), DecomposeError> {
        if self.starts == 0 {
            return Err(DecomposeError::Config("starts must be at least 1".into()));
        }
        if !(0.0 < self.tol_accept && self.tol_accept < self.tol_orbit && self.tol_orbit < 1.0) {
            return Err(DecomposeError::Config(
                "tolerances must satisfy 0 < tol_accept < tol_orbit < 1".into(),
            ));
        }
        if !(self.damping > 0.0 && self.damping.is_finite()) {
            return Err(DecomposeError::Config("damping must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form;

    fn form(s: &str, d: usize) -> ExactForm {
        parse_form(s, Some(d)).unwrap()
    }

    #[test]
    fn forward_of_monomials() {
        let h = forward(&form("z^8", 8), &form("w^12", 12)).unwrap();
        assert_eq!(h, form("z^24 + w^24", 24));
        assert!(forward(&form("z^12", 12), &form("w^12", 12)).is_err());
    }

    #[test]
    fn forward_is_invariant_under_the_group() {
        let f = form("z^8 - 2*z^3*w^5 + 3*w^8", 8);
        let g = form("z^12 + 5*z^7*w^5 - w^12", 12);
        let h = forward(&f, &g).unwrap();
        for (p, q) in orbit(&f, &g) {
            assert_eq!(forward(&p, &q).unwrap(), h);
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&form("z^8", 8), &form("w^12", 12)).len(), 6);
        assert_eq!(orbit(&ExactForm::zero(8), &form("w^12", 12)).len(), 2);
        assert_eq!(orbit(&form("w^8", 8), &ExactForm::zero(12)).len(), 3);
        assert_eq!(orbit(&ExactForm::zero(8), &ExactForm::zero(12)).len(), 1);
    }

    #[test]
    fn verify_exact_and_float() {
        let (f, g) = (form("z^8", 8), form("w^12", 12));
        let h = forward(&f, &g).unwrap();
        assert_eq!(verify_exact(&h, &f, &g).unwrap(), Verification { ok: true, residual: 0.0 });
        let bad = verify_exact(&h, &f, &form("z^12", 12)).unwrap();
        assert!(!bad.ok && bad.residual > 0.0);
        let v = verify(&h.embed(), &f.embed(), &g.embed(), 1e-8).unwrap();
        assert!(v.ok && v.residual == 0.0);
        assert!(verify(&h.embed(), &g.embed(), &f.embed(), 1e-8).is_err());
    }

    #[test]
    fn alignment_undoes_group_action() {
        let f = form("z^8 + 2*w^8", 8).embed();
        let g = form("z^12 - z*w^11", 12).embed();
        let (p, q) = act(&f, &g, 2, true);
        let (d, pa, qa) = align((&p, &q), (&f, &g));
        assert!(d < 1e-15);
        assert!(relative_distance((&pa, &qa), (&f, &g)) < 1e-15);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let mut c = SolverConfig::default();
        c.starts = 0;
        assert!(c.validate().is_err());
        let mut c = SolverConfig::default();
        c.tol_accept = 1e-3;
        assert!(c.validate().is_err());
    }
}
