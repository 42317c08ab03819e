//! Forward–inverse round trips on random integer `(f, g)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{align, forward, solve, DecomposeError, SolverConfig, PHI_DEGREE, PSI_DEGREE};
use crate::forms::{AnyForm, CycRat, ExactForm};

/// Aligned representative must match the planted `(f, g)` this closely.
pub const RECOVERY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub orbits: usize,
    /// Members found in the orbit that matches `(f, g)`, or 0 if none does.
    pub members_found: usize,
    pub max_residual: f64,
    /// Aligned distance from the closest representative to `(f, g)`.
    pub distance: f64,
    pub recovered: bool,
    /// Exactly one orbit, six members, and it is the planted one.
    pub success: bool,
    /// Some orbit other than the planted one converged to residual `<= tol_accept`.
    pub spurious: bool,
    pub starts_converged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub trials: usize,
    pub coeff_bound: i64,
    pub successes: usize,
    pub success_rate: f64,
    pub spurious_trials: usize,
    pub max_residual: f64,
    pub outcomes: Vec<TrialOutcome>,
}

/// Runs `solve(forward(f, g))` and scores it against the planted `(f, g)`.
pub fn run_trial(f: &ExactForm, g: &ExactForm, cfg: &SolverConfig) -> Result<TrialOutcome, DecomposeError> {
    let h = forward(f, g)?;
    let report = solve(&AnyForm::Exact(h), cfg)?;
    let (fc, gc) = (f.embed(), g.embed());
    let mut best: Option<(f64, usize)> = None;
    for (i, o) in report.orbits.iter().enumerate() {
        let r = &o.representative;
        let d = align((&r.phi, &r.psi), (&fc, &gc)).0;
        if best.is_none_or(|b| d < b.0) {
            best = Some((d, i));
        }
    }
    let (distance, planted) = best.map_or((f64::INFINITY, None), |(d, i)| (d, Some(i)));
    let recovered = distance <= RECOVERY_TOLERANCE;
    let members_found = match planted {
        Some(i) if recovered => report.orbits[i].members_found,
        _ => 0,
    };
    let spurious = report.orbits.iter().enumerate().any(|(i, o)| {
        !(recovered && Some(i) == planted) && o.representative.residual <= cfg.tol_accept
    });
    let max_residual = report.orbits.iter().map(|o| o.representative.residual).fold(0.0, f64::max);
    Ok(TrialOutcome {
        orbits: report.orbits.len(),
        members_found,
        max_residual,
        distance,
        recovered,
        success: recovered && report.orbits.len() == 1 && members_found == 6,
        spurious,
        starts_converged: report.starts_converged,
    })
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> ExactForm {
    let coeffs = (0..=degree).map(|_| CycRat::from_int(rng.random_range(-bound..=bound))).collect();
    ExactForm::from_coeffs(coeffs)
}

/// Seed used for trial `t`; trials stay reproducible one at a time.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Planted `(f, g)` for trial `t`, coefficients uniform in `[-bound, bound]`.
/// Pairs with `f^3 + g^2 = 0` are redrawn.
pub fn sample_pair(seed: u64, t: usize, bound: i64) -> (ExactForm, ExactForm) {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
    loop {
        let f = random_form(&mut rng, PHI_DEGREE, bound);
        let g = random_form(&mut rng, PSI_DEGREE, bound);
        if !forward(&f, &g).unwrap().is_zero() {
            return (f, g);
        }
    }
}

pub fn experiment_six_to_one(
    trials: usize,
    coeff_bound: i64,
    cfg: &SolverConfig,
) -> Result<ExperimentReport, DecomposeError> {
    if trials == 0 {
        return Err(DecomposeError::Config("trials must be at least 1".into()));
    }
    if coeff_bound < 1 {
        return Err(DecomposeError::Config("coefficient bound must be at least 1".into()));
    }
    let mut outcomes = Vec::with_capacity(trials);
    for t in 0..trials {
        let (f, g) = sample_pair(cfg.seed, t, coeff_bound);
        outcomes.push(run_trial(&f, &g, cfg)?);
    }
    let successes = outcomes.iter().filter(|o| o.success).count();
    Ok(ExperimentReport {
        trials,
        coeff_bound,
        successes,
        success_rate: successes as f64 / trials as f64,
        spurious_trials: outcomes.iter().filter(|o| o.spurious).count(),
        max_residual: outcomes.iter().map(|o| o.max_residual).fold(0.0, f64::max),
        outcomes,
    })
}
