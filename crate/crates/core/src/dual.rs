//! The weighted character `k(tau) = sum c(b) e^<b,tau>`, its log-gradient (the
//! moment map onto the interior of `conv(S)`), and the inversion of that map.
//!
//! Inverting the moment map at `x` is the same as minimizing the strictly convex
//! function `log k(tau) - <x,tau>`. The minimum value is the growth exponent
//! `delta(x)`, and `log V(S) - delta(x)` is the large-deviations rate at `x`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lattice::{Location, WeightedStepSet};
use crate::numeric::{dot, dot_i64, ln_rational, norm, rational_to_f64};

/// `k`, `log k`, the moment map and its Jacobian at one point `tau`.
#[derive(Debug, Clone)]
pub struct CharacterEvaluation {
    pub tau: Vec<f64>,
    /// `k(tau)`; may be `+inf` when `log_value` exceeds the f64 range.
    pub value: f64,
    pub log_value: f64,
    /// `grad log k(tau)`, the moment map.
    pub gradient: Vec<f64>,
    /// Hessian of `log k`, i.e. the covariance of the tilted step distribution.
    pub hessian_log_k: DMatrix<f64>,
}

/// Solution of the dual problem at an interior point `x`.
#[derive(Debug, Clone)]
pub struct DualPoint {
    pub x: Vec<f64>,
    pub tau: Vec<f64>,
    pub delta: f64,
    pub hessian: DMatrix<f64>,
    pub hessian_det: f64,
    pub rate: f64,
    /// `max_i |mu(tau)_i - x_i|` at the returned `tau`.
    pub grad_residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub tau_cap: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-12,
            max_iter: 200,
            tau_cap: 1e4,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolverOptions {
            tol,
            ..Default::default()
        }
    }
}

fn check_finite(v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Evaluates the weighted character and its first two log-derivatives.
///
/// Uses a max-shifted log-sum-exp, so large `|tau|` never overflows `log_value`.
pub fn eval_character(s: &WeightedStepSet, tau: &[f64]) -> Result<CharacterEvaluation> {
    if tau.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: tau.len(),
        });
    }
    check_finite(tau)?;
    Ok(eval_unchecked(s, tau))
}

fn eval_unchecked(s: &WeightedStepSet, tau: &[f64]) -> CharacterEvaluation {
    let m = s.dim();
    let exps: Vec<f64> = s
        .steps()
        .iter()
        .zip(s.log_weights())
        .map(|(b, lw)| lw + dot_i64(b, tau))
        .collect();
    let shift = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = exps.iter().map(|e| (e - shift).exp()).collect();
    let z: f64 = w.iter().sum();
    let log_value = shift + z.ln();

    let mut mean = vec![0.0; m];
    for (b, wi) in s.steps().iter().zip(&w) {
        for k in 0..m {
            mean[k] += wi * b[k] as f64;
        }
    }
    for v in mean.iter_mut() {
        *v /= z;
    }
    let mut hess = DMatrix::zeros(m, m);
    for (b, wi) in s.steps().iter().zip(&w) {
        let p = wi / z;
        for i in 0..m {
            let di = b[i] as f64 - mean[i];
            for j in 0..m {
                hess[(i, j)] += p * di * (b[j] as f64 - mean[j]);
            }
        }
    }
    CharacterEvaluation {
        tau: tau.to_vec(),
        value: log_value.exp(),
        log_value,
        gradient: mean,
        hessian_log_k: hess,
    }
}

/// `f_x(tau) = log k(tau) - <x, tau>`, the function minimized by the dual solver.
pub fn dual_objective(s: &WeightedStepSet, x: &[f64], tau: &[f64]) -> Result<f64> {
    Ok(eval_character(s, tau)?.log_value - dot(x, tau))
}

/// Center of mass `m*_S`, equal to the moment map at `tau = 0`.
pub fn center_of_mass(s: &WeightedStepSet) -> Vec<f64> {
    s.center_of_mass_exact().iter().map(rational_to_f64).collect()
}

pub fn log_total_weight(s: &WeightedStepSet) -> f64 {
    ln_rational(&s.total_weight()).expect("positive total weight")
}

fn solve_newton(h: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    if let Some(ch) = h.clone().cholesky() {
        return Some(ch.solve(rhs));
    }
    h.clone().lu().solve(rhs)
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Finds `tau_P(x)` by damped Newton on the dual objective, starting from zero.
///
/// `x` must lie in the interior of the step polytope; the check is exact.
pub fn invert_moment_map(s: &WeightedStepSet, x: &[f64], opts: SolverOptions) -> Result<DualPoint> {
    if x.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: x.len(),
        });
    }
    check_finite(x)?;
    if s.classify_f64(x)?.location != Location::Interior {
        return Err(Error::NotInterior);
    }
    invert_interior(s, x, opts)
}

/// Newton iteration without the exact interiority check.
pub(crate) fn invert_interior(s: &WeightedStepSet, x: &[f64], opts: SolverOptions) -> Result<DualPoint> {
    let m = s.dim();
    let mut tau = vec![0.0; m];
    let mut ev = eval_unchecked(s, &tau);
    let mut best = (f64::INFINITY, tau.clone());
    for iter in 0..=opts.max_iter {
        let resid: Vec<f64> = ev.gradient.iter().zip(x).map(|(g, xi)| g - xi).collect();
        let r_inf = inf_norm(&resid);
        if r_inf < best.0 {
            best = (r_inf, tau.clone());
        }
        if r_inf <= opts.tol {
            let delta = ev.log_value - dot(x, &tau);
            let hessian_det = ev.hessian_log_k.determinant();
            return Ok(DualPoint {
                x: x.to_vec(),
                delta,
                rate: log_total_weight(s) - delta,
                hessian: ev.hessian_log_k,
                hessian_det,
                grad_residual: r_inf,
                iterations: iter,
                tau,
            });
        }
        if iter == opts.max_iter {
            break;
        }
        let rhs = -DVector::from_vec(resid.clone());
        let Some(step) = solve_newton(&ev.hessian_log_k, &rhs) else {
            break;
        };
        let step: Vec<f64> = step.iter().copied().collect();
        let slope = dot(&resid, &step);
        let f0 = ev.log_value - dot(x, &tau);
        let r0 = norm(&resid);
        let mut t = 1.0;
        let accepted = loop {
            let trial: Vec<f64> = tau.iter().zip(&step).map(|(a, d)| a + t * d).collect();
            let tev = eval_unchecked(s, &trial);
            let f1 = tev.log_value - dot(x, &trial);
            let r1: Vec<f64> = tev.gradient.iter().zip(x).map(|(g, xi)| g - xi).collect();
            // near the optimum f stalls at rounding level; the residual still drops
            if f1 <= f0 + 1e-4 * t * slope || norm(&r1) < r0 {
                break Some((trial, tev));
            }
            t *= 0.5;
            if t < 1e-20 {
                break None;
            }
        };
        let Some((trial, tev)) = accepted else { break };
        tau = trial;
        ev = tev;
        if norm(&tau) > opts.tau_cap {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: best.0,
        tau_norm: norm(&tau),
        best_tau: best.1,
    })
}

/// Large-deviations rate `I_S(x) = sup_tau <tau,x> - log(k(tau)/V(S))` at interior `x`.
pub fn rate_function(s: &WeightedStepSet, x: &[f64]) -> Result<f64> {
    rate_function_with(s, x, SolverOptions::default())
}

pub fn rate_function_with(s: &WeightedStepSet, x: &[f64], opts: SolverOptions) -> Result<f64> {
    if x.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: x.len(),
        });
    }
    check_finite(x)?;
    match s.classify_f64(x)?.location {
        Location::Interior => Ok(invert_interior(s, x, opts)?.rate),
        Location::Boundary => Err(Error::BoundaryUnsupported),
        Location::Outside => Err(Error::NotInterior),
    }
}
