//! Independent reference solvers used to validate [`crate::solver`].

mod banded;
mod collocation;
mod shooting;

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::solver::ProblemSpec;

pub use banded::{Banded, BandedLu};
pub use collocation::{collocation_solve, CollocationSolution};
pub use shooting::shooting_solve;

/// Sampled solution on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSolution {
    pub t: Vec<f64>,
    pub u: Vec<f64>,
}

impl GridSolution {
    /// Piecewise-linear interpolant; `None` outside the grid.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        let (first, last) = (*self.t.first()?, *self.t.last()?);
        if !(first <= t && t <= last) {
            return None;
        }
        let i = self.t.partition_point(|&x| x < t);
        if self.t[i] == t {
            return Some(self.u[i]);
        }
        let (t1, t2) = (self.t[i - 1], self.t[i]);
        let w = (t - t1) / (t2 - t1);
        Some(self.u[i - 1] * (1.0 - w) + self.u[i] * w)
    }
}

/// Pointwise residual `u'(t) + a u(-t) + b u(t) - h(t)` with a central
/// difference for `u'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    /// `t ± fd_step` straddles a breakpoint or singular point of `h`, so the
    /// difference quotient is unreliable.
    pub near_feature: bool,
}

pub fn residual<F>(u: F, problem: &ProblemSpec, t: f64, fd_step: f64) -> Result<Residual>
where
    F: Fn(f64) -> Result<f64>,
{
    ensure_finite("t", t)?;
    if !(fd_step.is_finite() && fd_step > 0.0) {
        return Err(Error::invalid(format!("fd_step must be positive, got {fd_step}")));
    }
    let coeffs = problem.coeffs;
    let du = (u(t + fd_step)? - u(t - fd_step)?) / (2.0 * fd_step);
    let value = du + coeffs.a * u(-t)? + coeffs.b * u(t)? - problem.h.eval(t);
    let features = problem.h.features().symmetrized();
    let near_feature = features.distance_to(t) <= fd_step || features.distance_to(-t) <= fd_step;
    Ok(Residual { value, near_feature })
}

/// Candidate solution checked against the shooting oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub grid: Vec<f64>,
    pub oracle_u: Vec<f64>,
    pub candidate_u: Vec<f64>,
    pub sup_error: f64,
    /// Max `|residual|` over the residual sample points away from features.
    pub residual_sup: f64,
}

/// Compare `candidate` with `shooting_solve(problem, t_max, step)` on every
/// `stride`-th shooting node, and measure residuals at `residual_points`
/// equispaced interior points.
pub fn compare<F>(
    candidate: F,
    problem: &ProblemSpec,
    t_max: f64,
    step: f64,
    stride: usize,
    residual_points: usize,
    fd_step: f64,
) -> Result<OracleResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let reference = shooting_solve(problem, t_max, step)?;
    let stride = stride.max(1);
    let mut grid = Vec::new();
    let mut oracle_u = Vec::new();
    let mut candidate_u = Vec::new();
    let mut sup_error: f64 = 0.0;
    let last = reference.t.len() - 1;
    for (i, (&t, &u)) in reference.t.iter().zip(&reference.u).enumerate() {
        if i % stride != 0 && i != last {
            continue;
        }
        let c = candidate(t)?;
        sup_error = if (c - u).abs() > sup_error || c.is_nan() { (c - u).abs() } else { sup_error };
        grid.push(t);
        oracle_u.push(u);
        candidate_u.push(c);
    }
    let mut residual_sup: f64 = 0.0;
    let inner = t_max - 2.0 * fd_step;
    for k in 0..residual_points {
        let t = if residual_points == 1 {
            0.0
        } else {
            -inner + 2.0 * inner * k as f64 / (residual_points - 1) as f64
        };
        let r = residual(&candidate, problem, t, fd_step)?;
        if !r.near_feature && (r.value.abs() > residual_sup || r.value.is_nan()) {
            residual_sup = r.value.abs();
        }
    }
    Ok(OracleResult {
        grid,
        oracle_u,
        candidate_u,
        sup_error,
        residual_sup,
    })
}
