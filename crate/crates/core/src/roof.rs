//! Numerical convex roof of the three-tangle for low-rank three-qubit states.
//!
//! Every pure-state decomposition of a rank-`r` density matrix with `m`
//! elements is obtained from its eigendecomposition through an `m x r` matrix
//! `U` with orthonormal columns:
//!
//! ```text
//! sqrt(p_i) |phi_i> = sum_k U_ik sqrt(lambda_k) |v_k>
//! ```
//!
//! The roof of `f(tau3)` with `f(x) = x^beta` is estimated by minimising
//! `sum_i p_i f(tau3(phi_i))` over `U`. The objective has conical kinks
//! wherever a component reaches `tau3 = 0`, and optimal decompositions sit on
//! intersections of such kinks. Each restart therefore draws a random
//! isometry and minimises a smoothed objective, with `|q|` replaced by
//! `sqrt(|q|^2 + eps^2 p^4)` for the tangle polynomial `q`, by BFGS along a
//! decreasing `eps` schedule. `U` is the polar factor of an unconstrained
//! `m x r` matrix, so every iterate is a valid decomposition. The minimum over
//! restarts, and over the eigendecomposition itself, is an upper bound on the
//! true roof.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use argmin::core::{CostFunction, Executor, Gradient, State, TerminationReason, TerminationStatus};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::quasinewton::BFGS;
use finitediff::vec::central_diff;
use nalgebra::DMatrix;

use crate::comb::{tau3_poly, tau3_raw};
use crate::error::{Error, Result};
use crate::qstate::{DensityMatrix, PureState, QubitSubset, StateFile};
use crate::tol;

pub const DEFAULT_RESTARTS: usize = 64;
/// Largest numerical rank accepted by [`RoofProblem::new`].
pub const MAX_RANK: usize = 4;
pub const MAX_DECOMPOSITION: usize = 8;

/// Search parameters shared by every roof computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RoofOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Iteration cap of each BFGS stage; a restart whose last stage hits it counts as unconverged.
    pub max_iterations: u64,
    /// Smoothing schedule, applied in order.
    pub smoothing: Vec<f64>,
    /// Relative cost change below which a stage has stalled.
    pub stall_tolerance: f64,
    /// Overrides the default decomposition size.
    pub decomposition_size: Option<usize>,
    /// Run restarts on the rayon pool. Results do not depend on this flag.
    pub parallel: bool,
}

impl Default for RoofOptions {
    fn default() -> Self {
        RoofOptions {
            seed: 0,
            restarts: DEFAULT_RESTARTS,
            max_iterations: 2000,
            smoothing: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8],
            stall_tolerance: 1e-10,
            decomposition_size: None,
            parallel: true,
        }
    }
}

impl RoofOptions {
    pub fn with_seed(seed: u64, restarts: usize) -> Self {
        RoofOptions { seed, restarts, ..Default::default() }
    }
}

/// A three-qubit mixed state together with the transform `f(x) = x^beta`
/// and the decomposition size.
#[derive(Debug, Clone)]
pub struct RoofProblem {
    rho: DensityMatrix,
    rank: usize,
    transform_exponent: f64,
    decomposition_size: usize,
    // sqrt(lambda_k) v_k for the retained eigenpairs
    scaled_vectors: Vec<Vec<Complex64>>,
}

/// Default number of decomposition elements for a given rank.
pub fn default_decomposition_size(rank: usize) -> usize {
    (2 * rank).clamp(4, MAX_DECOMPOSITION)
}

impl RoofProblem {
    pub fn new(rho: DensityMatrix, transform_exponent: f64) -> Result<Self> {
        if rho.n_qubits() != 3 {
            return Err(Error::BadArity { expected: 3, got: rho.n_qubits() });
        }
        if !(transform_exponent > 0.0 && transform_exponent <= 4.0) {
            return Err(Error::BadParam(format!(
                "transform exponent {transform_exponent} outside (0, 4]"
            )));
        }
        let (values, vectors) = rho.eigen()?;
        let scaled_vectors: Vec<Vec<Complex64>> = values
            .iter()
            .zip(&vectors)
            .filter(|(v, _)| **v > tol::RANK)
            .map(|(v, vec)| vec.iter().map(|a| a * v.sqrt()).collect())
            .collect();
        let rank = scaled_vectors.len();
        if rank > MAX_RANK {
            return Err(Error::RankOverflow(rank));
        }
        Ok(RoofProblem {
            rho,
            rank,
            transform_exponent,
            decomposition_size: default_decomposition_size(rank),
            scaled_vectors,
        })
    }

    pub fn with_decomposition_size(mut self, m: usize) -> Result<Self> {
        if m < self.rank || m > MAX_DECOMPOSITION {
            return Err(Error::BadParam(format!(
                "decomposition size {m} outside {}..={MAX_DECOMPOSITION}",
                self.rank
            )));
        }
        self.decomposition_size = m;
        Ok(self)
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transform_exponent(&self) -> f64 {
        self.transform_exponent
    }

    pub fn decomposition_size(&self) -> usize {
        self.decomposition_size
    }

    fn element(&self, row: &[Complex64], out: &mut [Complex64; 8]) {
        out.fill(Complex64::new(0.0, 0.0));
        for (u, v) in row.iter().zip(&self.scaled_vectors) {
            for (o, a) in out.iter_mut().zip(v) {
                *o += u * a;
            }
        }
    }

    /// `p f(tau3(phi / |phi|))` for an unnormalised element `phi` with `p = |phi|^2`.
    fn term(&self, phi: &[Complex64; 8]) -> f64 {
        let p: f64 = phi.iter().map(|a| a.norm_sqr()).sum();
        if p < 1e-300 {
            return 0.0;
        }
        let t = tau3_raw(phi) / (p * p);
        if self.transform_exponent == 1.0 {
            p * t
        } else {
            p * t.powf(self.transform_exponent)
        }
    }

    /// [`Self::term`] with the tangle kink smoothed at scale `eps`.
    fn smoothed_term(&self, phi: &[Complex64; 8], eps: f64) -> f64 {
        let p: f64 = phi.iter().map(|a| a.norm_sqr()).sum();
        if p < 1e-300 {
            return 0.0;
        }
        let q = tau3_poly(phi).norm();
        let t = q.hypot(eps * p * p) / (p * p);
        if self.transform_exponent == 1.0 {
            p * t
        } else {
            p * t.powf(self.transform_exponent)
        }
    }

    /// Rows of the polar factor of the `m x r` matrix packed in `x` as (re, im) pairs.
    fn isometry_rows(&self, x: &[f64]) -> Option<Vec<Vec<Complex64>>> {
        let (m, r) = (self.decomposition_size, self.rank);
        let z = DMatrix::from_fn(m, r, |i, k| Complex64::new(x[2 * (i * r + k)], x[2 * (i * r + k) + 1]));
        let gram = z.adjoint() * &z;
        let eig = gram.symmetric_eigen();
        if eig.eigenvalues.iter().any(|&l| l < 1e-12) {
            return None;
        }
        let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(1.0 / l.sqrt(), 0.0)));
        let u = z * (&eig.eigenvectors * inv_sqrt * eig.eigenvectors.adjoint());
        Some((0..m).map(|i| (0..r).map(|k| u[(i, k)]).collect()).collect())
    }

    fn objective(&self, rows: &[Vec<Complex64>], eps: f64) -> f64 {
        let mut phi = [Complex64::new(0.0, 0.0); 8];
        rows.iter()
            .map(|row| {
                self.element(row, &mut phi);
                if eps > 0.0 {
                    self.smoothed_term(&phi, eps)
                } else {
                    self.term(&phi)
                }
            })
            .sum()
    }

    fn inverse_transform(&self, x: f64) -> f64 {
        if self.transform_exponent == 1.0 {
            x
        } else {
            x.max(0.0).powf(1.0 / self.transform_exponent)
        }
    }
}

/// One element of a pure-state decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub weight: f64,
    pub state: StateFile,
    pub tau3: f64,
}

/// Outcome of a roof estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoofResult {
    /// `f^-1` of the best objective; an upper bound on the transformed roof.
    pub value: f64,
    /// `sum_i p_i tau3(phi_i)` on the best decomposition. Equals `value` when beta = 1.
    pub average_tau3: f64,
    pub transform_exponent: f64,
    pub rank: usize,
    pub decomposition: Vec<Component>,
    pub restarts_used: usize,
    pub converged_restarts: usize,
    /// Running best objective after each restart.
    pub best_objective_history: Vec<f64>,
    /// Frobenius norm of `sum_i p_i |phi_i><phi_i| - rho`.
    pub reconstruction_residual: f64,
}

impl RoofResult {
    pub fn weights(&self) -> Vec<f64> {
        self.decomposition.iter().map(|c| c.weight).collect()
    }

    pub fn states(&self) -> Result<Vec<PureState>> {
        self.decomposition.iter().map(|c| Ok(c.state.load()?.state)).collect()
    }
}

struct RestartOutcome {
    objective: f64,
    rows: Vec<Vec<Complex64>>,
    converged: bool,
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Random `m x r` matrix with orthonormal columns, returned row by row.
fn random_isometry(m: usize, r: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    while cols.len() < r {
        let mut v: Vec<Complex64> = (0..m).map(|_| gaussian(rng)).collect();
        for c in &cols {
            let overlap: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

struct Smoothed<'a> {
    problem: &'a RoofProblem,
    eps: f64,
}

impl Smoothed<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        match self.problem.isometry_rows(x) {
            Some(rows) => self.problem.objective(&rows, self.eps),
            None => f64::INFINITY,
        }
    }
}

impl CostFunction for Smoothed<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.value(x))
    }
}

impl Gradient for Smoothed<'_> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;

    fn gradient(&self, x: &Self::Param) -> std::result::Result<Vec<f64>, argmin::core::Error> {
        central_diff(&|y: &Vec<f64>| Ok(self.value(y)))(x)
    }
}

/// One BFGS stage; `None` when the line search gives up before any progress.
fn bfgs_stage(
    problem: &RoofProblem,
    eps: f64,
    x0: Vec<f64>,
    opts: &RoofOptions,
) -> Option<(Vec<f64>, bool)> {
    let n = x0.len();
    let eye: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let solver = BFGS::new(MoreThuenteLineSearch::new())
        .with_tolerance_grad(1e-12)
        .ok()?
        .with_tolerance_cost(opts.stall_tolerance)
        .ok()?;
    let res = Executor::new(Smoothed { problem, eps }, solver)
        .configure(|s| s.param(x0).inv_hessian(eye).max_iters(opts.max_iterations))
        .run()
        .ok()?;
    let state = res.state();
    let hit_cap = matches!(
        state.get_termination_status(),
        TerminationStatus::Terminated(TerminationReason::MaxItersReached)
    );
    state.get_best_param().cloned().map(|x| (x, !hit_cap))
}

fn run_restart(problem: &RoofProblem, opts: &RoofOptions, index: usize) -> RestartOutcome {
    let (m, r) = (problem.decomposition_size, problem.rank);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(index as u64);
    let start = random_isometry(m, r, &mut rng);
    let mut x: Vec<f64> = start.iter().flatten().flat_map(|z| [z.re, z.im]).collect();
    // A stage whose line search fails has stalled at its starting point.
    let mut converged = true;
    for &eps in &opts.smoothing {
        if let Some((next, ok)) = bfgs_stage(problem, eps, x.clone(), opts) {
            if problem.isometry_rows(&next).is_some() {
                x = next;
                converged = ok;
            }
        }
    }
    let rows = problem.isometry_rows(&x).unwrap_or(start);
    let objective = problem.objective(&rows, 0.0);
    RestartOutcome { objective, rows, converged }
}

/// The eigendecomposition padded with empty rows.
fn eigen_rows(problem: &RoofProblem) -> Vec<Vec<Complex64>> {
    (0..problem.decomposition_size)
        .map(|i| {
            (0..problem.rank)
                .map(|k| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

/// Minimises the average transformed three-tangle over decompositions of
/// `problem.rho()`, keeping the best of `opts.restarts` local searches.
pub fn roof_tau3(problem: &RoofProblem, opts: &RoofOptions) -> Result<RoofResult> {
    if opts.restarts == 0 {
        return Err(Error::BadParam("restarts must be at least 1".into()));
    }
    if problem.rank == 1 {
        let v = &problem.scaled_vectors[0];
        let mut phi = [Complex64::new(0.0, 0.0); 8];
        phi.copy_from_slice(v);
        let state = PureState::normalize(v.clone())?;
        let t = tau3_raw(state.amplitudes());
        let reconstruction_residual = state.density_matrix().frobenius_distance(problem.rho());
        return Ok(RoofResult {
            value: t,
            average_tau3: t,
            transform_exponent: problem.transform_exponent,
            rank: 1,
            decomposition: vec![Component { weight: 1.0, state: state.to_json(), tau3: t }],
            restarts_used: 0,
            converged_restarts: 0,
            best_objective_history: vec![problem.term(&phi)],
            reconstruction_residual,
        });
    }

    let outcomes: Vec<RestartOutcome> = if opts.parallel {
        (0..opts.restarts).into_par_iter().map(|k| run_restart(problem, opts, k)).collect()
    } else {
        (0..opts.restarts).map(|k| run_restart(problem, opts, k)).collect()
    };

    let converged_restarts = outcomes.iter().filter(|o| o.converged).count();
    if converged_restarts == 0 {
        return Err(Error::NoConvergence);
    }
    let rows = eigen_rows(problem);
    let mut best = &RestartOutcome { objective: problem.objective(&rows, 0.0), rows, converged: true };
    let mut history = Vec::with_capacity(outcomes.len());
    for o in &outcomes {
        if o.objective < best.objective {
            best = o;
        }
        history.push(best.objective);
    }

    let mut decomposition = Vec::new();
    let mut tau_avg = 0.0;
    let mut phi = [Complex64::new(0.0, 0.0); 8];
    for row in &best.rows {
        problem.element(row, &mut phi);
        let p: f64 = phi.iter().map(|a| a.norm_sqr()).sum();
        if p < 1e-16 {
            continue;
        }
        let state = PureState::normalize(phi.to_vec())?;
        let t = tau3_raw(state.amplitudes());
        tau_avg += p * t;
        decomposition.push(Component { weight: p, state: state.to_json(), tau3: t });
    }
    let mixture: Vec<(f64, PureState)> = decomposition
        .iter()
        .map(|c| Ok((c.weight, c.state.load()?.state)))
        .collect::<Result<_>>()?;
    let reconstruction_residual = DensityMatrix::mixture(&mixture)?.frobenius_distance(problem.rho());

    Ok(RoofResult {
        value: problem.inverse_transform(best.objective),
        average_tau3: tau_avg,
        transform_exponent: problem.transform_exponent,
        rank: problem.rank,
        decomposition,
        restarts_used: opts.restarts,
        converged_restarts,
        best_objective_history: history,
        reconstruction_residual,
    })
}

/// Roof three-tangle (beta = 1) of each three-qubit marginal of a four-qubit state,
/// keyed `"123"`, `"124"`, `"134"`, `"234"`.
pub fn roof_three_tangles_all(
    state: &PureState,
    opts: &RoofOptions,
) -> Result<BTreeMap<String, RoofResult>> {
    roof_three_tangles_transformed(state, opts, 1.0)
}

pub fn roof_three_tangles_transformed(
    state: &PureState,
    opts: &RoofOptions,
    transform_exponent: f64,
) -> Result<BTreeMap<String, RoofResult>> {
    if state.n_qubits() != 4 {
        return Err(Error::BadArity { expected: 4, got: state.n_qubits() });
    }
    let mut out = BTreeMap::new();
    for triple in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
        let keep = QubitSubset::new(&triple, 4)?;
        let mut problem = RoofProblem::new(state.partial_trace(&keep)?, transform_exponent)?;
        if let Some(m) = opts.decomposition_size {
            let m = m.max(problem.rank());
            problem = problem.with_decomposition_size(m)?;
        }
        out.insert(keep.label(), roof_tau3(&problem, opts)?);
    }
    Ok(out)
}

const CURVE_PHASE_SAMPLES: usize = 256;

/// Phase-minimised three-tangle along `sqrt(p) psi1 + e^{i phi} sqrt(1-p) psi2`
/// on a uniform grid of `grid` weights `p` in `[0, 1]`.
pub fn characteristic_curve(
    pair: (&PureState, &PureState),
    grid: usize,
) -> Result<Vec<(f64, f64)>> {
    let (a, b) = pair;
    for s in [a, b] {
        if s.n_qubits() != 3 {
            return Err(Error::BadArity { expected: 3, got: s.n_qubits() });
        }
    }
    let overlap = a.inner(b).norm();
    if overlap > tol::SPECTRAL {
        return Err(Error::NotOrthonormal(overlap));
    }
    if grid < 2 {
        return Err(Error::BadParam("grid needs at least two points".into()));
    }
    let eval = |p: f64, phase: f64| {
        let (sp, sq) = (p.sqrt(), (1.0 - p).max(0.0).sqrt());
        let e = Complex64::from_polar(sq, phase);
        let v: Vec<Complex64> =
            a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x * sp + y * e).collect();
        tau3_raw(&v)
    };
    let step = std::f64::consts::TAU / CURVE_PHASE_SAMPLES as f64;
    Ok((0..grid)
        .map(|k| {
            let p = k as f64 / (grid - 1) as f64;
            let (best_k, best_v) = (0..CURVE_PHASE_SAMPLES)
                .map(|s| (s, eval(p, s as f64 * step)))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            let centre = best_k as f64 * step;
            let refined = golden_section(|x| eval(p, x), centre - step, centre + step, 1e-13);
            (p, best_v.min(refined))
        })
        .collect())
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ghz3() -> PureState {
        PureState::from_kets(&[("000", c(1.0, 0.0)), ("111", c(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn rank_one_is_pure_value() {
        let problem = RoofProblem::new(ghz3().density_matrix(), 1.0).unwrap();
        let r = roof_tau3(&problem, &RoofOptions::with_seed(0, 4)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(r.rank, 1);
        for beta in [0.5, 2.0] {
            let problem = RoofProblem::new(ghz3().density_matrix(), beta).unwrap();
            let r = roof_tau3(&problem, &RoofOptions::with_seed(0, 4)).unwrap();
            assert!((r.value - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let rho = ghz3().density_matrix();
        assert!(matches!(RoofProblem::new(rho.clone(), 0.0), Err(Error::BadParam(_))));
        assert!(matches!(RoofProblem::new(rho.clone(), 5.0), Err(Error::BadParam(_))));
        let p = RoofProblem::new(rho.clone(), 1.0).unwrap();
        assert!(matches!(roof_tau3(&p, &RoofOptions::with_seed(0, 0)), Err(Error::BadParam(_))));
        assert!(p.clone().with_decomposition_size(9).is_err());
        let four = PureState::basis(4, 0).unwrap().density_matrix();
        assert!(matches!(RoofProblem::new(four, 1.0), Err(Error::BadArity { .. })));
        // maximally mixed: rank 8
        let d = nalgebra::DMatrix::<Complex64>::identity(8, 8).scale(1.0 / 8.0);
        let mixed = DensityMatrix::new(d).unwrap();
        assert!(matches!(RoofProblem::new(mixed, 1.0), Err(Error::RankOverflow(8))));
    }

    #[test]
    fn default_sizes() {
        assert_eq!(default_decomposition_size(1), 4);
        assert_eq!(default_decomposition_size(2), 4);
        assert_eq!(default_decomposition_size(3), 6);
        assert_eq!(default_decomposition_size(4), 8);
    }

    #[test]
    fn isometry_columns_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rows = random_isometry(5, 3, &mut rng);
        for a in 0..3 {
            for b in 0..3 {
                let ip: Complex64 = rows.iter().map(|r| r[a].conj() * r[b]).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ip - c(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn parallel_and_serial_agree() {
        let psi = crate::qstate::random_pure_state(4, 5).unwrap();
        let rho = psi.reduce(&[1, 2, 3]).unwrap();
        let problem = RoofProblem::new(rho, 1.0).unwrap();
        let mut opts = RoofOptions::with_seed(9, 6);
        let a = roof_tau3(&problem, &opts).unwrap();
        opts.parallel = false;
        let b = roof_tau3(&problem, &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn curve_endpoints() {
        let product = PureState::from_kets(&[("100", c(1.0, 0.0))]).unwrap();
        let curve = characteristic_curve((&ghz3(), &product), 5).unwrap();
        assert_eq!(curve.len(), 5);
        assert!((curve[4].1 - 1.0).abs() < 1e-12);
        assert!(curve[0].1.abs() < 1e-12);
        assert!(matches!(
            characteristic_curve((&ghz3(), &ghz3()), 5),
            Err(Error::NotOrthonormal(_))
        ));
    }
}
