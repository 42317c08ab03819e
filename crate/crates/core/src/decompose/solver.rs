//! Damped Gauss–Newton over the 44 real unknowns of `(phi, psi)`.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    act, relative_distance, DecomposeError, DecompositionOrbit, DecompositionSolution, SolverConfig,
    H_DEGREE, PHI_DEGREE, PSI_DEGREE,
};
use crate::forms::{exact_roots, roots, AnyForm, ComplexF, ComplexForm, FormError, ProjectivePoint, Root};

/// Real unknowns: interleaved (re, im) of the 9 + 13 coefficients.
pub const N_UNKNOWNS: usize = 2 * (PHI_DEGREE + PSI_DEGREE + 2);
/// Real equations: interleaved (re, im) of the 25 coefficients of the residual.
pub const N_EQUATIONS: usize = 2 * (H_DEGREE + 1);

const DAMPING_CEILING: f64 = 1e16;
/// Upper bound on candidate common factors tried for one `h`.
const MAX_FACTOR_CANDIDATES: usize = 2000;

/// `R(phi, psi) = coeffs(c * phi^3 + psi^2 - target)` as a real map.
///
/// [`ResidualMap::new`] gives the decomposition problem itself (`c = 1`,
/// `R^44 -> R^50`). The cofactor `c` is used for the reduced problem after a
/// common factor of `phi` and `psi` has been divided out.
#[derive(Debug, Clone)]
pub struct ResidualMap {
    target: ComplexForm,
    cofactor: ComplexForm,
    phi_degree: usize,
    psi_degree: usize,
}

fn unpack_with(x: &[f64], phi_degree: usize, psi_degree: usize) -> (ComplexForm, ComplexForm) {
    assert_eq!(x.len(), 2 * (phi_degree + psi_degree + 2));
    let c = |i: usize| ComplexF::new(x[2 * i], x[2 * i + 1]);
    let phi = (0..=phi_degree).map(c).collect();
    let psi = (phi_degree + 1..phi_degree + psi_degree + 2).map(c).collect();
    (ComplexForm::from_coeffs(phi), ComplexForm::from_coeffs(psi))
}

fn unpack(x: &[f64]) -> (ComplexForm, ComplexForm) {
    unpack_with(x, PHI_DEGREE, PSI_DEGREE)
}

fn pack(phi: &ComplexForm, psi: &ComplexForm) -> Vec<f64> {
    phi.coeffs().iter().chain(psi.coeffs()).flat_map(|c| [c.re, c.im]).collect()
}

impl ResidualMap {
    pub fn new(target: ComplexForm) -> Result<Self, FormError> {
        target.expect_degree(H_DEGREE)?;
        Ok(ResidualMap {
            target,
            cofactor: ComplexForm::from_coeffs(vec![ComplexF::new(1.0, 0.0)]),
            phi_degree: PHI_DEGREE,
            psi_degree: PSI_DEGREE,
        })
    }

    fn reduced(target: ComplexForm, cofactor: ComplexForm) -> Self {
        let k = cofactor.degree();
        ResidualMap { target, cofactor, phi_degree: PHI_DEGREE - k, psi_degree: PSI_DEGREE - k }
    }

    pub fn target(&self) -> &ComplexForm {
        &self.target
    }

    pub fn unknowns(&self) -> usize {
        2 * (self.phi_degree + self.psi_degree + 2)
    }

    pub fn equations(&self) -> usize {
        2 * (self.target.degree() + 1)
    }

    fn split(&self, x: &[f64]) -> (ComplexForm, ComplexForm) {
        unpack_with(x, self.phi_degree, self.psi_degree)
    }

    fn complex_residual(&self, phi: &ComplexForm, psi: &ComplexForm) -> ComplexForm {
        self.cofactor.mul(&phi.pow(3)).add(&psi.pow(2)).unwrap().sub(&self.target).unwrap()
    }

    pub fn residual(&self, x: &[f64]) -> DVector<f64> {
        let (phi, psi) = self.split(x);
        let r = self.complex_residual(&phi, &psi);
        DVector::from_iterator(self.equations(), r.coeffs().iter().flat_map(|c| [c.re, c.im]))
    }

    /// Analytic Jacobian. The map is holomorphic in each coefficient, so a
    /// complex derivative `a + ib` fills the real 2x2 block `[[a, -b], [b, a]]`.
    pub fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let (phi, psi) = self.split(x);
        let dphi = self.cofactor.mul(&phi.pow(2)).scalar_mul(&ComplexF::new(3.0, 0.0));
        let dpsi = psi.scalar_mul(&ComplexF::new(2.0, 0.0));
        let mut j = DMatrix::zeros(self.equations(), self.unknowns());
        let mut fill = |col: usize, shift: usize, factor: &ComplexForm| {
            for (t, d) in factor.coeffs().iter().enumerate() {
                let row = t + shift;
                j[(2 * row, 2 * col)] = d.re;
                j[(2 * row, 2 * col + 1)] = -d.im;
                j[(2 * row + 1, 2 * col)] = d.im;
                j[(2 * row + 1, 2 * col + 1)] = d.re;
            }
        };
        for k in 0..=self.phi_degree {
            fill(k, k, &dphi);
        }
        for k in 0..=self.psi_degree {
            fill(self.phi_degree + 1 + k, k, &dpsi);
        }
        j
    }

    /// Max-norm of the residual relative to the max-norm of the target.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let (phi, psi) = self.split(x);
        let r = self.complex_residual(&phi, &psi).max_abs();
        let s = self.target.max_abs();
        if s == 0.0 {
            r
        } else {
            r / s
        }
    }
}

#[derive(Debug, Clone)]
struct StartOutcome {
    x: Vec<f64>,
    residual: f64,
}

/// Levenberg–Marquardt with damping multiplied by 10 on rejected steps and
/// divided by 3 on accepted ones.
fn levenberg_marquardt(map: &ResidualMap, mut x: Vec<f64>, cfg: &SolverConfig) -> StartOutcome {
    let n = map.unknowns();
    let mut lambda = cfg.damping;
    let mut r = map.residual(&x);
    let mut cost = r.norm_squared();
    let mut rel = map.relative_residual(&x);
    for _ in 0..cfg.max_iters {
        if rel <= cfg.tol_stop || lambda > DAMPING_CEILING {
            break;
        }
        let j = map.jacobian(&x);
        let mut normal = j.tr_mul(&j);
        for i in 0..n {
            normal[(i, i)] += lambda;
        }
        let rhs = -j.tr_mul(&r);
        let Some(chol) = normal.cholesky() else {
            lambda *= 10.0;
            continue;
        };
        let step = chol.solve(&rhs);
        let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
        let r_trial = map.residual(&trial);
        let cost_trial = r_trial.norm_squared();
        if cost_trial.is_finite() && cost_trial < cost {
            x = trial;
            r = r_trial;
            cost = cost_trial;
            rel = map.relative_residual(&x);
            lambda /= 3.0;
        } else {
            lambda *= 10.0;
        }
    }
    StartOutcome { x, residual: rel }
}

/// A zero of `phi` (or `psi`) is a singular point of the residual map, so
/// iterates creep towards it without reaching it. When one half is already
/// negligible, restart from it set to exactly zero; the iteration then stays
/// on that axis.
fn snap_to_axis(map: &ResidualMap, out: StartOutcome, cfg: &SolverConfig) -> StartOutcome {
    let (phi, psi) = unpack(&out.x);
    let candidates = [
        (phi.pow(3).max_abs() <= cfg.tol_orbit, ComplexForm::zero(PHI_DEGREE), psi.clone()),
        (psi.pow(2).max_abs() <= cfg.tol_orbit, phi.clone(), ComplexForm::zero(PSI_DEGREE)),
    ];
    for (small, p, q) in candidates {
        if small {
            let snapped = levenberg_marquardt(map, pack(&p, &q), cfg);
            if snapped.residual <= cfg.tol_accept {
                return snapped;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StartKind {
    Full,
    CubeOnly,
    SquareOnly,
}

fn gaussian_form(rng: &mut ChaCha8Rng, degree: usize) -> ComplexForm {
    let coeffs = (0..=degree)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            ComplexF::new(re, im)
        })
        .collect();
    ComplexForm::from_coeffs(coeffs)
}

fn scaled_to_unit(f: ComplexForm, power: u32) -> ComplexForm {
    let m = f.pow(power).max_abs();
    f.scalar_mul(&ComplexF::new(m.powf(-1.0 / power as f64), 0.0))
}

/// Complex-Gaussian start scaled so that `phi^3` and `psi^2` have max
/// coefficient magnitude 1.
fn initial_point(seed: u64, index: usize, kind: StartKind) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index as u64);
    let mut phi = scaled_to_unit(gaussian_form(&mut rng, PHI_DEGREE), 3);
    let mut psi = scaled_to_unit(gaussian_form(&mut rng, PSI_DEGREE), 2);
    match kind {
        StartKind::Full => {}
        StartKind::CubeOnly => psi = ComplexForm::zero(PSI_DEGREE),
        StartKind::SquareOnly => phi = ComplexForm::zero(PHI_DEGREE),
    }
    pack(&phi, &psi)
}

/// Roots of `h` counted `floor(m / 2)` times each, `m` the multiplicity: the
/// possible roots of a form `d` with `d^2 | h`.
fn square_part_roots(h: &AnyForm) -> Result<Vec<(ProjectivePoint, usize)>, FormError> {
    let mut out = Vec::new();
    let mut collect = |rs: Vec<Root>| {
        out.extend(rs.into_iter().filter(|r| r.multiplicity >= 2).map(|r| (r.point, r.multiplicity / 2)))
    };
    match h {
        AnyForm::Exact(e) => collect(exact_roots(e)?),
        AnyForm::Complex(c) => collect(roots(c)?),
    }
    Ok(out)
}

fn linear_form(p: &ProjectivePoint) -> ComplexForm {
    // vanishes at [z : w]: w0 * z - z0 * w
    ComplexForm::from_coeffs(vec![-p.z, p.w])
}

/// Degree-8 forms `d` with `d^2 | h`, as products of linear factors, in a
/// fixed enumeration order.
fn common_factor_candidates(square_roots: &[(ProjectivePoint, usize)]) -> Vec<ComplexForm> {
    fn go(
        roots: &[(ProjectivePoint, usize)],
        i: usize,
        left: usize,
        acc: &ComplexForm,
        out: &mut Vec<ComplexForm>,
    ) {
        if out.len() >= MAX_FACTOR_CANDIDATES {
            return;
        }
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        if i == roots.len() {
            return;
        }
        let (p, avail) = &roots[i];
        let mut f = acc.clone();
        for take in 0..=(*avail).min(left) {
            if take > 0 {
                f = f.mul(&linear_form(p));
            }
            go(roots, i + 1, left - take, &f, out);
        }
    }
    let mut out = Vec::new();
    let one = ComplexForm::from_coeffs(vec![ComplexF::new(1.0, 0.0)]);
    go(square_roots, 0, PHI_DEGREE, &one, &mut out);
    out
}

/// Least-squares quotient `h / d^2` with its relative remainder.
fn divide_by_square(h: &ComplexForm, d: &ComplexForm) -> (ComplexForm, f64) {
    let d2 = d.pow(2);
    let qdeg = h.degree() - d2.degree();
    let mut m = DMatrix::<ComplexF>::zeros(h.degree() + 1, qdeg + 1);
    for k in 0..=qdeg {
        for (t, c) in d2.coeffs().iter().enumerate() {
            m[(t + k, k)] = *c;
        }
    }
    let rhs = DVector::from_column_slice(h.coeffs());
    let q = m.clone().svd(true, true).solve(&rhs, 1e-14).unwrap();
    let rem = (&m * &q - &rhs).camax() / h.max_abs();
    (ComplexForm::from_coeffs(q.iter().copied().collect()), rem)
}

/// Decompositions with `phi = c d`, `psi = d b` for a degree-8 `d` whose square
/// divides `h`. Dividing out `d^2` leaves `h / d^2 = c^3 d + b^2`, a small
/// problem in `(c, b)` that is well conditioned even where the full one is
/// not (`phi` and `psi` sharing roots makes the full Jacobian rank deficient).
fn common_factor_solutions(
    h: &ComplexForm,
    factors: &[ComplexForm],
    cfg: &SolverConfig,
) -> Vec<StartOutcome> {
    let full = ResidualMap::new(h.clone()).unwrap();
    factors
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, d)| {
            let d = scaled_to_unit(d.clone(), 2);
            let (quot, rem) = divide_by_square(h, &d);
            let mut found = Vec::new();
            if rem > cfg.tol_accept || quot.max_abs() == 0.0 {
                return found.into_iter();
            }
            let map = ResidualMap::reduced(quot.clone(), d.clone());
            for j in 0..cfg.factor_starts {
                let index = cfg.starts + 2 * cfg.axis_starts + i * cfg.factor_starts + j;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ index as u64);
                let s = quot.max_abs();
                let c = gaussian_form(&mut rng, 0).scalar_mul(&ComplexF::new(s.cbrt(), 0.0));
                let b = scaled_to_unit(gaussian_form(&mut rng, map.psi_degree), 2)
                    .scalar_mul(&ComplexF::new(s.sqrt(), 0.0));
                let out = levenberg_marquardt(&map, pack(&c, &b), cfg);
                let (c, b) = map.split(&out.x);
                let x = pack(&d.mul(&c), &d.mul(&b));
                let residual = full.relative_residual(&x);
                if residual <= cfg.tol_accept {
                    found.push(StartOutcome { x, residual });
                }
            }
            found.into_iter()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Converged,
    NoConvergence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub orbits: Vec<DecompositionOrbit>,
    /// Solutions with residual in `(tol_accept, tol_orbit]`; never merged into orbits.
    pub suspect: Vec<DecompositionSolution>,
    pub starts_converged: usize,
    pub starts_total: usize,
    pub status: SolveStatus,
}

fn complex_json(f: &ComplexForm) -> Value {
    Value::Array(f.coeffs().iter().map(|c| json!([c.re, c.im])).collect())
}

fn solution_json(s: &DecompositionSolution) -> Value {
    json!({ "phi": complex_json(&s.phi), "psi": complex_json(&s.psi), "residual": s.residual })
}

impl SolveReport {
    pub fn to_json(&self) -> Value {
        let orbits: Vec<Value> = self
            .orbits
            .iter()
            .map(|o| {
                let mut v = solution_json(&o.representative);
                v["size"] = json!(o.orbit_size);
                v["members_found"] = json!(o.members_found);
                v
            })
            .collect();
        json!({
            "orbits": orbits,
            "suspect": self.suspect.iter().map(solution_json).collect::<Vec<_>>(),
            "starts_converged": self.starts_converged,
            "starts_total": self.starts_total,
            "status": self.status,
        })
    }
}

/// Picks the group image with `zeta3^k phi_p` in the sector `(-pi/3, pi/3]`
/// at the largest coefficient `p` of `phi`, and `Re psi_q > 0` at the largest
/// coefficient `q` of `psi`.
fn canonical_image(phi: &ComplexForm, psi: &ComplexForm, zero_tol: f64) -> (ComplexForm, ComplexForm) {
    let argmax = |f: &ComplexForm| {
        let mut best = 0;
        for (i, c) in f.coeffs().iter().enumerate() {
            if c.norm() > f.coeffs()[best].norm() {
                best = i;
            }
        }
        f.coeffs()[best]
    };
    let mut k = 0;
    if phi.max_abs() > zero_tol {
        let a = argmax(phi).arg();
        let third = std::f64::consts::TAU / 3.0;
        // zeta3^k rotates by k * third; choose the rotation landing nearest 0.
        k = (0..3)
            .min_by(|&i, &j| {
                let wrap = |t: f64| (t + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
                wrap(a + i as f64 * third).abs().total_cmp(&wrap(a + j as f64 * third).abs())
            })
            .unwrap();
    }
    let mut negate = false;
    if psi.max_abs() > zero_tol {
        let c = argmax(psi);
        negate = c.re < 0.0 || (c.re == 0.0 && c.im < 0.0);
    }
    act(phi, psi, k, negate)
}

fn orbit_size(phi: &ComplexForm, psi: &ComplexForm, zero_tol: f64) -> usize {
    match (phi.max_abs() <= zero_tol, psi.max_abs() <= zero_tol) {
        (false, false) => 6,
        (true, false) => 2,
        (false, true) => 3,
        (true, true) => 1,
    }
}

fn rounded_key(s: &DecompositionSolution) -> Vec<i64> {
    s.phi
        .coeffs()
        .iter()
        .chain(s.psi.coeffs())
        .flat_map(|c| [c.re, c.im])
        .map(|v| (v * 1e6).round() as i64)
        .collect()
}

struct OrbitBuilder {
    first: DecompositionSolution,
    found: Vec<DecompositionSolution>,
}

/// Finds the decompositions of `h` by multi-start Levenberg–Marquardt.
///
/// `h` is rescaled to unit max coefficient before solving; reported solutions
/// are mapped back to the scale of the input. Grouping and the zero tests
/// for `phi`, `psi` happen in the rescaled coordinates.
pub fn solve(h: &AnyForm, cfg: &SolverConfig) -> Result<SolveReport, DecomposeError> {
    cfg.validate()?;
    let h_in = h;
    let h = h.embed();
    h.expect_degree(H_DEGREE)?;
    if !h.is_finite() {
        return Err(FormError::Json("non-finite coefficient".into()).into());
    }
    if h.max_abs() == 0.0 {
        return Err(FormError::ZeroForm.into());
    }
    let scale = h.max_abs();
    let normalized = h.scalar_mul(&ComplexF::new(1.0 / scale, 0.0));
    let map = ResidualMap::new(normalized.clone())?;

    let mut kinds: Vec<StartKind> = vec![StartKind::Full; cfg.starts];
    kinds.extend(std::iter::repeat_n(StartKind::CubeOnly, cfg.axis_starts));
    kinds.extend(std::iter::repeat_n(StartKind::SquareOnly, cfg.axis_starts));

    let mut outcomes: Vec<StartOutcome> = kinds
        .par_iter()
        .enumerate()
        .map(|(i, &kind)| levenberg_marquardt(&map, initial_point(cfg.seed, i, kind), cfg))
        .collect();
    let factors = common_factor_candidates(&square_part_roots(&h_in)?);
    let structured_total = factors.len() * cfg.factor_starts;
    outcomes.extend(common_factor_solutions(&normalized, &factors, cfg));
    let outcomes: Vec<StartOutcome> = outcomes
        .into_par_iter()
        .map(|out| if out.residual <= cfg.tol_orbit { snap_to_axis(&map, out, cfg) } else { out })
        .collect();

    let mut builders: Vec<OrbitBuilder> = Vec::new();
    let mut suspect_norm = Vec::new();
    let mut converged = 0;
    for out in &outcomes {
        if !out.residual.is_finite() || out.residual > cfg.tol_orbit {
            continue;
        }
        let (phi, psi) = unpack(&out.x);
        let sol = DecompositionSolution { phi, psi, residual: out.residual };
        if out.residual > cfg.tol_accept {
            suspect_norm.push(sol);
            continue;
        }
        converged += 1;
        let home = builders.iter_mut().find(|b| {
            super::align((&sol.phi, &sol.psi), (&b.first.phi, &b.first.psi)).0 <= cfg.tol_orbit
        });
        match home {
            Some(b) => {
                let seen = b
                    .found
                    .iter()
                    .any(|f| relative_distance((&sol.phi, &sol.psi), (&f.phi, &f.psi)) <= cfg.tol_orbit);
                if !seen {
                    b.found.push(sol);
                }
            }
            None => builders.push(OrbitBuilder { first: sol.clone(), found: vec![sol] }),
        }
    }

    let phi_scale = ComplexF::new(scale.cbrt(), 0.0);
    let psi_scale = ComplexF::new(scale.sqrt(), 0.0);
    let rescale = |s: &DecompositionSolution| DecompositionSolution {
        phi: s.phi.scalar_mul(&phi_scale),
        psi: s.psi.scalar_mul(&psi_scale),
        residual: s.residual,
    };

    let mut orbits: Vec<(Vec<i64>, DecompositionOrbit)> = builders
        .into_iter()
        .map(|b| {
            let size = orbit_size(&b.first.phi, &b.first.psi, cfg.tol_orbit);
            let (phi, psi) = canonical_image(&b.first.phi, &b.first.psi, cfg.tol_orbit);
            let rep = DecompositionSolution { phi, psi, residual: b.first.residual };
            let key = rounded_key(&rep);
            let orbit = DecompositionOrbit {
                representative: rescale(&rep),
                members_found: b.found.len().min(size),
                orbit_size: size,
            };
            (key, orbit)
        })
        .collect();
    orbits.sort_by(|a, b| a.0.cmp(&b.0));

    let status = if converged == 0 { SolveStatus::NoConvergence } else { SolveStatus::Converged };
    Ok(SolveReport {
        orbits: orbits.into_iter().map(|(_, o)| o).collect(),
        suspect: suspect_norm.iter().map(rescale).collect(),
        starts_converged: converged,
        starts_total: kinds.len() + structured_total,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::forward;
    use crate::forms::parse_form;

    #[test]
    fn pack_roundtrip() {
        let x: Vec<f64> = (0..N_UNKNOWNS).map(|i| i as f64 * 0.5 - 3.0).collect();
        let (phi, psi) = unpack(&x);
        assert_eq!(pack(&phi, &psi), x);
    }

    #[test]
    fn residual_vanishes_at_a_decomposition() {
        let f = parse_form("z^8 - z^2*w^6", Some(8)).unwrap();
        let g = parse_form("2*z^5*w^7 + w^12", Some(12)).unwrap();
        let h = forward(&f, &g).unwrap().embed();
        let map = ResidualMap::new(h).unwrap();
        let x = pack(&f.embed(), &g.embed());
        assert_eq!(map.residual(&x).amax(), 0.0);
    }

    #[test]
    fn axis_starts_stay_on_their_axis() {
        let x = initial_point(7, 3, StartKind::CubeOnly);
        let (_, psi) = unpack(&x);
        assert!(psi.is_zero());
        let h = parse_form("w^24", Some(24)).unwrap().embed();
        let map = ResidualMap::new(h).unwrap();
        let out = levenberg_marquardt(&map, x, &SolverConfig::default());
        let (_, psi) = unpack(&out.x);
        assert!(psi.is_zero());
    }

    #[test]
    fn zero_target_rejected() {
        let h = AnyForm::Complex(ComplexForm::zero(24));
        assert_eq!(solve(&h, &SolverConfig::default()), Err(FormError::ZeroForm.into()));
    }

    #[test]
    fn canonical_image_is_a_group_invariant() {
        let f = parse_form("(1 + 2*zeta3)*z^8 - 3*w^8", Some(8)).unwrap().embed();
        let g = parse_form("z^12 - 4*z^6*w^6", Some(12)).unwrap().embed();
        let base = canonical_image(&f, &g, 1e-4);
        for negate in [false, true] {
            for k in 0..3 {
                let (p, q) = act(&f, &g, k, negate);
                let c = canonical_image(&p, &q, 1e-4);
                assert!(relative_distance((&c.0, &c.1), (&base.0, &base.1)) < 1e-14);
            }
        }
    }
}
