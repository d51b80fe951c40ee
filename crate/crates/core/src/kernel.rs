//! Green's function of the first-order problem with reflection.
//!
//! For fixed `t` the kernel `G(t, ·)` is supported on `[-|t|, |t|]` and is
//! assembled from two closed-form branches:
//!
//! * the *diagonal* branch, used on `0 <= s <= t` and (negated) on `t <= s <= 0`,
//! * the *cross* branch, used on `-t <= s <= 0` and (negated) on `0 <= s <= -t`.
//!
//! [`GreenKernel::eval`] resolves points on shared triangle edges by taking
//! the first matching row of that list, which keeps
//! `G_{a,b}(t,s) = -G_{-a,-b}(-t,-s)` exact on the edges as well.
//! [`GreenKernel::eval_general`] evaluates the same kernel from the
//! homogeneous pair and the oriented characteristic function; the two agree
//! away from the edges.

use crate::error::{ensure_finite, Error, Result};
use crate::regime::{homogeneous_pair, CaseClass, CaseTag, Coefficients, HomogeneousPair};

/// Oriented characteristic function: `1` on `t1 <= t <= t2`, `-1` on
/// `t2 <= t < t1`, `0` elsewhere.
pub fn chi(t1: f64, t2: f64, t: f64) -> i8 {
    if t1 <= t && t <= t2 {
        1
    } else if t2 <= t && t < t1 {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenKernel {
    coeffs: Coefficients,
    case: CaseClass,
    pair: HomogeneousPair,
}

impl GreenKernel {
    pub fn new(coeffs: Coefficients) -> Result<Self> {
        let case = coeffs.classify()?;
        Ok(Self::with_case(coeffs, case))
    }

    pub fn with_case(coeffs: Coefficients, case: CaseClass) -> Self {
        Self {
            coeffs,
            case,
            pair: homogeneous_pair(coeffs, case),
        }
    }

    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }

    pub fn case(&self) -> CaseClass {
        self.case
    }

    pub fn pair(&self) -> &HomogeneousPair {
        &self.pair
    }

    /// Closed form valid on `0 <= s <= t`.
    pub fn diagonal_branch(&self, t: f64, s: f64) -> f64 {
        let Coefficients { a, b } = self.coeffs;
        let w = self.case.omega;
        let x = s - t;
        match self.case.tag {
            CaseTag::C1 => (w * x).cos() + b / w * (w * x).sin(),
            CaseTag::C2 => (w * x).cosh() + b / w * (w * x).sinh(),
            CaseTag::C3plus => 1.0 + a * x,
            CaseTag::C3minus => 1.0 - a * x,
        }
    }

    /// Closed form valid on `-t <= s <= 0`.
    pub fn cross_branch(&self, t: f64, s: f64) -> f64 {
        let a = self.coeffs.a;
        let w = self.case.omega;
        let x = s + t;
        match self.case.tag {
            CaseTag::C1 => a / w * (w * x).sin(),
            CaseTag::C2 => a / w * (w * x).sinh(),
            CaseTag::C3plus | CaseTag::C3minus => a * x,
        }
    }

    /// Piecewise value of `G(t, s)`.
    pub fn eval(&self, t: f64, s: f64) -> f64 {
        if 0.0 <= s && s <= t {
            self.diagonal_branch(t, s)
        } else if t <= s && s <= 0.0 {
            -self.diagonal_branch(t, s)
        } else if -t <= s && s <= 0.0 {
            self.cross_branch(t, s)
        } else if 0.0 <= s && s <= -t {
            -self.cross_branch(t, s)
        } else {
            0.0
        }
    }

    /// `G(t, s)` assembled from `ũ`, `ṽ` and the oriented characteristic
    /// function, read literally.
    pub fn eval_general(&self, t: f64, s: f64) -> f64 {
        let p = &self.pair;
        let (um, vm, ut, vt) = (p.u(-s), p.v(-s), p.u(t), p.v(t));
        let diag = f64::from(chi(0.0, t, s));
        let cross = f64::from(chi(-t, 0.0, s));
        0.5 * ((um * vt + vm * ut) * diag + (um * vt - vm * ut) * cross)
    }
}

/// Checked evaluation of `G(t, s)`.
pub fn green_eval(kernel: &GreenKernel, t: f64, s: f64) -> Result<f64> {
    ensure_finite("t", t)?;
    ensure_finite("s", s)?;
    Ok(kernel.eval(t, s))
}

/// Kernel values on a uniform `n x n` lattice, row-major in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.s.len() + j]
    }
}

/// `n` equally spaced points from `lo` to `hi`, endpoints exact.
pub fn lattice(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

pub fn green_grid(
    kernel: &GreenKernel,
    t_range: (f64, f64),
    s_range: (f64, f64),
    n: usize,
) -> Result<Grid> {
    if n < 2 {
        return Err(Error::invalid(format!("grid size must be at least 2, got {n}")));
    }
    for (name, (lo, hi)) in [("t range", t_range), ("s range", s_range)] {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::invalid(format!("{name} [{lo}, {hi}] is not a finite interval")));
        }
    }
    let t = lattice(t_range.0, t_range.1, n);
    let s = lattice(s_range.0, s_range.1, n);
    let values = t
        .iter()
        .flat_map(|&ti| s.iter().map(move |&sj| kernel.eval(ti, sj)))
        .collect();
    Ok(Grid { t, s, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernel(a: f64, b: f64) -> GreenKernel {
        GreenKernel::new(Coefficients::new(a, b).unwrap()).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(0.0, 2.0, 1.0), 1);
        assert_eq!(chi(2.0, 0.0, 1.0), -1);
        assert_eq!(chi(0.0, 2.0, 3.0), 0);
        // closed at both ends when t1 <= t2, half-open otherwise
        assert_eq!(chi(0.0, 2.0, 2.0), 1);
        assert_eq!(chi(2.0, 0.0, 0.0), -1);
        assert_eq!(chi(2.0, 0.0, 2.0), 0);
        assert_eq!(chi(1.0, 1.0, 1.0), 1);
    }

    #[test]
    fn c3_value() {
        let g = kernel(1.0, 1.0);
        assert!((g.eval(0.5, 0.2) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn outside_support_is_zero() {
        for &(a, b) in &[(1.0, 1.0), (-5.0, 4.0), (1.0, 2.0), (2.0, -2.0)] {
            let g = kernel(a, b);
            assert_eq!(g.eval(1.0, 2.0), 0.0);
            assert_eq!(g.eval(-1.0, 1.5), 0.0);
            assert_eq!(g.eval(0.0, 0.1), 0.0);
        }
    }

    #[test]
    fn c1_cross_branch_value() {
        let g = kernel(-5.0, 4.0);
        let expected = -5.0 / 3.0 * 0.6f64.sin();
        assert!((g.eval(0.3, -0.1) - expected).abs() < 1e-15);
        assert!((g.eval_general(0.3, -0.1) - expected).abs() < 1e-14);
    }

    #[test]
    fn origin_value() {
        for &(a, b) in &[(1.0, 1.0), (-5.0, 4.0), (1.0, 2.0)] {
            let g = kernel(a, b);
            assert_eq!(g.eval(0.0, 0.0), 1.0);
            assert_eq!(g.eval_general(0.0, 0.0), 1.0);
        }
    }

    #[test]
    fn grid_corners() {
        let g = kernel(1.0, 1.0);
        let grid = green_grid(&g, (0.0, 1.0), (0.0, 1.0), 2).unwrap();
        assert_eq!(grid.t, vec![0.0, 1.0]);
        assert_eq!(grid.at(1, 1), 1.0);
        assert_eq!(grid.at(1, 0), 0.0);
        assert_eq!(grid.at(0, 0), 1.0);
        assert_eq!(grid.at(0, 1), 0.0);
        for (i, &t) in grid.t.iter().enumerate() {
            for (j, &s) in grid.s.iter().enumerate() {
                assert_eq!(grid.at(i, j), g.eval(t, s));
            }
        }
    }

    #[test]
    fn grid_reflection_pair() {
        let g = kernel(0.7, -1.9);
        let h = kernel(-0.7, 1.9);
        let n = 9;
        let grid = green_grid(&g, (-2.0, 2.0), (-2.0, 2.0), n).unwrap();
        let mirror = green_grid(&h, (-2.0, 2.0), (-2.0, 2.0), n).unwrap();
        for i in 0..n {
            for j in 0..n {
                // lattice is symmetric, so index n-1-i is -t exactly;
                // the origin is the one point where both kernels equal 1
                if grid.t[i] == 0.0 && grid.s[j] == 0.0 {
                    continue;
                }
                assert_eq!(grid.at(i, j), -mirror.at(n - 1 - i, n - 1 - j));
            }
        }
    }

    #[test]
    fn grid_rejects_bad_input() {
        let g = kernel(1.0, 0.0);
        assert!(green_grid(&g, (0.0, 1.0), (0.0, 1.0), 1).is_err());
        assert!(green_grid(&g, (1.0, 0.0), (0.0, 1.0), 3).is_err());
        assert!(green_grid(&g, (0.0, f64::NAN), (0.0, 1.0), 3).is_err());
        assert!(green_eval(&g, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn general_form_matches_tables_off_edges() {
        for &(a, b) in &[(-5.0, 4.0), (1.0, 2.0), (1.0, 1.0), (1.0, -1.0), (0.4, -3.0), (3.0, 0.5)] {
            let g = kernel(a, b);
            for &(t, s) in &[(0.8, 0.3), (0.8, -0.3), (-0.8, -0.3), (-0.8, 0.3), (1.3, 0.01)] {
                let d = (g.eval(t, s) - g.eval_general(t, s)).abs();
                assert!(d < 1e-12, "({a},{b}) at ({t},{s}): {d}");
            }
        }
    }
}
