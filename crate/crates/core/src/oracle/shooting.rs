//! Shooting oracle.
//!
//! For `t >= 0` put `x(t) = u(t)` and `y(t) = u(-t)`. Then
//!
//! ```text
//! x' = h(t)  - a y - b x
//! y' = -h(-t) + a x + b y,        x(0) = y(0) = u(0),
//! ```
//!
//! which is an ordinary system. It is integrated twice with classical RK4,
//! once with `u(0) = 0` and forcing, once with `u(0) = 1` and no forcing, and
//! the two runs are combined to meet `u(t0) = c`.

use crate::analysis::{degenerate_t0, uniqueness_threshold, DegenerateSet};
use crate::error::{Error, Result};
use crate::solver::ProblemSpec;

use super::GridSolution;

type State = [f64; 4];

fn field(problem: &ProblemSpec, tau: f64, s: &State) -> Result<State> {
    let (a, b) = (problem.coeffs.a, problem.coeffs.b);
    let (hp, hm) = (problem.h.eval(tau), problem.h.eval(-tau));
    if !hp.is_finite() || !hm.is_finite() {
        return Err(Error::invalid(format!(
            "forcing is not finite at t = ±{tau}; the shooting oracle needs bounded forcing"
        )));
    }
    Ok([
        hp - a * s[1] - b * s[0],
        -hm + a * s[0] + b * s[1],
        -a * s[3] - b * s[2],
        a * s[2] + b * s[3],
    ])
}

fn rk4_step(problem: &ProblemSpec, tau: f64, dt: f64, s: &State) -> Result<State> {
    let axpy = |k: &State, f: f64| -> State { std::array::from_fn(|i| s[i] + f * k[i]) };
    let k1 = field(problem, tau, s)?;
    let k2 = field(problem, tau + 0.5 * dt, &axpy(&k1, 0.5 * dt))?;
    let k3 = field(problem, tau + 0.5 * dt, &axpy(&k2, 0.5 * dt))?;
    let k4 = field(problem, tau + dt, &axpy(&k3, dt))?;
    Ok(std::array::from_fn(|i| {
        s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

/// Fixed-step RK4 solution on the symmetric grid `{k T/N : |k| <= N}`,
/// `N = ceil(T / step)`.
///
/// Integration also stops exactly at `|t0|` and at the mirrored breakpoints
/// of `h`, so a discontinuity never falls inside a step.
pub fn shooting_solve(problem: &ProblemSpec, t_max: f64, step: f64) -> Result<GridSolution> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::invalid(format!("T must be positive and finite, got {t_max}")));
    }
    if !(step.is_finite() && step > 0.0 && step <= t_max) {
        return Err(Error::invalid(format!("step must lie in (0, T], got {step}")));
    }
    let t0 = problem.t0;
    if t0.abs() > t_max {
        return Err(Error::invalid(format!("|t0| = {} exceeds T = {t_max}", t0.abs())));
    }

    let n = (t_max / step - 1e-9).ceil() as usize;
    let dt = t_max / n as f64;
    let node = |k: usize| if k == n { t_max } else { k as f64 * dt };

    // stops: grid nodes, |t0|, and |feature| for features inside (0, T)
    let mut stops: Vec<(f64, Option<usize>)> = (0..=n).map(|k| (node(k), Some(k))).collect();
    let features = problem.h.features();
    let extra = features
        .breakpoints
        .iter()
        .chain(&features.singular_points)
        .map(|p| p.abs())
        .chain([t0.abs()])
        .filter(|&p| p > 0.0 && p < t_max);
    stops.extend(extra.map(|p| (p, None)));
    stops.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.is_some().cmp(&x.1.is_some())));

    let mut state: State = [0.0, 0.0, 1.0, 1.0];
    let mut values = vec![[0.0f64; 4]; n + 1];
    values[0] = state;
    let mut at_t0 = if t0 == 0.0 { Some(state) } else { None };
    let mut tau = 0.0;
    for &(target, index) in &stops[1..] {
        let span = target - tau;
        if span > 0.0 {
            let pieces = (span / dt - 1e-9).ceil().max(1.0) as usize;
            let h = span / pieces as f64;
            for p in 0..pieces {
                let start = tau + p as f64 * h;
                let len = if p + 1 == pieces { target - start } else { h };
                state = rk4_step(problem, start, len, &state)?;
            }
            tau = target;
        }
        if let Some(k) = index {
            values[k] = state;
        }
        if target == t0.abs() {
            at_t0 = Some(state);
        }
    }
    let s0 = at_t0.expect("|t0| is a stop");
    // u(t0) is x(|t0|) for t0 >= 0 and y(|t0|) otherwise
    let (particular, homogeneous) = if t0 >= 0.0 { (s0[0], s0[2]) } else { (s0[1], s0[3]) };
    if homogeneous.abs() <= uniqueness_threshold(t0) {
        return Err(Error::NonUnique {
            t0,
            utilde_t0: homogeneous,
            degenerate: degenerate_t0(problem.coeffs.a, problem.coeffs.b).unwrap_or(DegenerateSet::Empty),
        });
    }
    let alpha = (problem.c - particular) / homogeneous;

    let mut t = Vec::with_capacity(2 * n + 1);
    let mut u = Vec::with_capacity(2 * n + 1);
    for k in (1..=n).rev() {
        t.push(-node(k));
        u.push(values[k][1] + alpha * values[k][3]);
    }
    for (k, v) in values.iter().enumerate() {
        t.push(node(k));
        u.push(v[0] + alpha * v[2]);
    }
    Ok(GridSolution { t, u })
}
