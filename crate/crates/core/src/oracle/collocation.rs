//! Finite-difference collocation oracle.
//!
//! On the symmetric grid `t_i = i d`, `|i| <= M`, the equation is collocated
//! at the `2M` cell midpoints with central differences:
//!
//! ```text
//! (u_{i+1} - u_i)/d + a (u_{-i} + u_{-i-1})/2 + b (u_i + u_{i+1})/2 = (h_i + h_{i+1})/2
//! ```
//!
//! The midpoint of cell `i` reflects onto the midpoint of cell `-i-1`, so
//! each mirrored pair of cells is one implicit trapezoidal step of the
//! system for `(u(t), u(-t))`. Node-centred differences would instead split
//! the grid into two decoupled even/odd chains. Together with the row
//! `u(t0) = c` the system is square of size `2M + 1`. Unknowns are ordered
//! `u_0, u_1, u_-1, u_2, u_-2, …` and rows by distance from the origin, so
//! the matrix is banded.

use crate::analysis::{degenerate_t0, uniqueness_threshold, DegenerateSet};
use crate::error::{Error, Result};
use crate::solver::ProblemSpec;

use super::banded::Banded;
use super::GridSolution;

/// Band half-width in the interleaved ordering.
const BAND: usize = 4;
/// Safety factor applied to the Richardson error estimate of `ũ(t0)`.
const RICHARDSON_FACTOR: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct CollocationSolution {
    pub solution: GridSolution,
    /// 1-norm condition estimate of the linear system.
    pub condition: f64,
}

fn position(i: i64) -> usize {
    match i {
        0 => 0,
        i if i > 0 => (2 * i - 1) as usize,
        i => (-2 * i) as usize,
    }
}

/// Row layout: the cells `j` and `-j-1` (`j >= 0`) share a level, and the
/// initial-condition row sits at level `|pin|`.
struct Rows {
    pin_level: i64,
}

impl Rows {
    fn pin(&self) -> usize {
        (2 * self.pin_level) as usize
    }

    /// Row of the cell `[t_i, t_{i+1}]`.
    fn cell(&self, i: i64) -> usize {
        let (level, second) = if i >= 0 { (i, 0) } else { (-i - 1, 1) };
        let base = if level < self.pin_level { 2 * level } else { 2 * level + 1 };
        (base + second) as usize
    }
}

/// Discrete operator on `M` nodes per side with spacing `d`, plus the row
/// selecting `u_pin`.
fn assemble(a: f64, b: f64, m: i64, d: f64, pin: i64) -> (Banded, Rows) {
    let n = (2 * m + 1) as usize;
    let rows = Rows { pin_level: pin.abs() };
    let mut mat = Banded::zeros(n, BAND, BAND);
    mat.add(rows.pin(), position(pin), 1.0);
    let inv = 1.0 / d;
    for i in -m..m {
        let row = rows.cell(i);
        mat.add(row, position(i + 1), inv + 0.5 * b);
        mat.add(row, position(i), -inv + 0.5 * b);
        mat.add(row, position(-i), 0.5 * a);
        mat.add(row, position(-i - 1), 0.5 * a);
    }
    (mat, rows)
}

fn homogeneous_at(a: f64, b: f64, m: i64, d: f64, k0: i64) -> Result<f64> {
    let (mat, rows) = assemble(a, b, m, d, 0);
    let lu = mat
        .factor()
        .ok_or_else(|| Error::invalid("collocation matrix for the homogeneous problem is singular"))?;
    let mut rhs = vec![0.0; (2 * m + 1) as usize];
    rhs[rows.pin()] = 1.0;
    Ok(lu.solve(&rhs)[position(k0)])
}

/// Second-order collocation solution on a symmetric grid covering `[-T, T]`.
///
/// With `M = (n_points - 1)/2` the nominal spacing is `T/M`. When `t0 ≠ 0`
/// the spacing is shrunk so that `t0` is a node with even index, and `M` is
/// raised so the grid still reaches `T`; the returned grid reflects this.
///
/// Nonuniqueness is decided from the discrete homogeneous solution `ũ_d`
/// (with `u(0) = 1`): `t0` is declared degenerate when `|ũ_d(t0)|` does not
/// exceed ten times its Richardson error estimate `|ũ_d(t0) - ũ_2d(t0)|`.
pub fn collocation_solve(problem: &ProblemSpec, t_max: f64, n_points: usize) -> Result<CollocationSolution> {
    if n_points < 11 || n_points % 2 == 0 {
        return Err(Error::invalid(format!("n_points must be odd and at least 11, got {n_points}")));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::invalid(format!("T must be positive and finite, got {t_max}")));
    }
    let t0 = problem.t0;
    if t0.abs() > t_max {
        return Err(Error::invalid(format!("|t0| = {} exceeds T = {t_max}", t0.abs())));
    }
    let (a, b) = (problem.coeffs.a, problem.coeffs.b);

    let m0 = ((n_points - 1) / 2) as i64;
    let nominal = t_max / m0 as f64;
    let (d, m, k0) = if t0 == 0.0 {
        (nominal, m0, 0)
    } else {
        let k = (2.0 * (t0.abs() / (2.0 * nominal)).round()).max(2.0) as i64;
        let d = t0.abs() / k as f64;
        let m = ((t_max / d) - 1e-9).ceil() as i64;
        (d, m, if t0 > 0.0 { k } else { -k })
    };
    let node = |i: i64| if i == k0 { t0 } else { i as f64 * d };

    let nonunique = |utilde_t0: f64| Error::NonUnique {
        t0,
        utilde_t0,
        degenerate: degenerate_t0(a, b).unwrap_or(DegenerateSet::Empty),
    };
    // degeneracy check on spacings d and 2d
    let fine = homogeneous_at(a, b, m, d, k0)?;
    let coarse = homogeneous_at(a, b, m / 2, 2.0 * d, k0 / 2)?;
    let noise = RICHARDSON_FACTOR * (fine - coarse).abs();
    if fine.abs() <= uniqueness_threshold(t0).max(noise) {
        return Err(nonunique(fine));
    }

    let (mat, rows) = assemble(a, b, m, d, k0);
    let norm = mat.norm1();
    let mut h = Vec::with_capacity((2 * m + 1) as usize);
    for i in -m..=m {
        let value = problem.h.eval(node(i));
        if !value.is_finite() {
            return Err(Error::invalid(format!("forcing is not finite at grid node t = {}", node(i))));
        }
        h.push(value);
    }
    let mut rhs = vec![0.0; h.len()];
    rhs[rows.pin()] = problem.c;
    for i in -m..m {
        let j = (i + m) as usize;
        rhs[rows.cell(i)] = 0.5 * (h[j] + h[j + 1]);
    }
    let lu = mat.factor().ok_or_else(|| nonunique(0.0))?;
    let x = lu.solve(&rhs);
    let condition = norm * lu.inverse_norm1_estimate();

    let t: Vec<f64> = (-m..=m).map(node).collect();
    let u = (-m..=m).map(|i| x[position(i)]).collect();
    Ok(CollocationSolution {
        solution: GridSolution { t, u },
        condition,
    })
}
