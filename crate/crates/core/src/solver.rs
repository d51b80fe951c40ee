//! Unique solution of `u'(t) + a u(-t) + b u(t) = h(t)`, `u(t0) = c`.
//!
//! The solution is `u = ū + λ ũ`, where `ū(t) = ∫ G(t,s) h(s) ds` vanishes at
//! the origin and `λ = (c - ū(t0)) / ũ(t0)`. It exists and is unique exactly
//! when `ũ(t0) ≠ 0`.

use crate::analysis::{degenerate_t0, is_degenerate};
use crate::error::{ensure_finite, Error, Result};
use crate::kernel::GreenKernel;
use crate::quadrature::{integrate, iterated_kernel_integral, Features, Forcing};
use crate::regime::{CaseClass, CaseTag, Coefficients, HomogeneousPair};

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub coeffs: Coefficients,
    pub t0: f64,
    pub c: f64,
    pub h: Forcing,
}

impl ProblemSpec {
    pub fn new(coeffs: Coefficients, t0: f64, c: f64, h: Forcing) -> Result<Self> {
        ensure_finite("t0", t0)?;
        ensure_finite("c", c)?;
        Coefficients::new(coeffs.a, coeffs.b)?;
        Ok(Self { coeffs, t0, c, h })
    }
}

fn nonunique(problem: &ProblemSpec, utilde_t0: f64) -> Error {
    Error::NonUnique {
        t0: problem.t0,
        utilde_t0,
        degenerate: degenerate_t0(problem.coeffs.a, problem.coeffs.b)
            .unwrap_or(crate::analysis::DegenerateSet::Empty),
    }
}

/// `ū(t)` as a single oriented integral over `[0, t]`:
/// `∫_0^t [D(t,s) h(s) + X(t,-s) h(-s)] ds` with `D`, `X` the diagonal and
/// cross branches of the kernel.
fn ubar_with(kernel: &GreenKernel, h: &Forcing, features: &Features, t: f64, tol: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    integrate(
        |s| kernel.diagonal_branch(t, s) * h.eval(s) + kernel.cross_branch(t, -s) * h.eval(-s),
        0.0,
        t,
        features,
        tol,
    )
}

/// Particular solution with `ū(0) = 0`.
pub fn ubar(problem: &ProblemSpec, t: f64, tol: f64) -> Result<f64> {
    ensure_finite("t", t)?;
    let kernel = GreenKernel::new(problem.coeffs)?;
    ubar_with(&kernel, &problem.h, &problem.h.features().symmetrized(), t, tol)
}

/// How `ū` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Green,
    /// `a = b`: `ū = p - p(0) ũ` with `p = H - 2a 𝓗_o`, `H`, `𝓗` based at `t0`.
    ClosedFormC31 { p_at_origin: f64 },
    /// `a = -b`: `ū = H + 2a 𝓗_e`, `H`, `𝓗` based at the origin.
    ClosedFormC32,
}

/// Immutable solution evaluator.
#[derive(Debug, Clone)]
pub struct Solution {
    problem: ProblemSpec,
    kernel: GreenKernel,
    features: Features,
    lambda: f64,
    ubar_t0: f64,
    method: Method,
    tol: f64,
}

impl Solution {
    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn case(&self) -> CaseClass {
        self.kernel.case()
    }

    pub fn pair(&self) -> &HomogeneousPair {
        self.kernel.pair()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn ubar_t0(&self) -> f64 {
        self.ubar_t0
    }

    pub fn utilde(&self, t: f64) -> f64 {
        self.kernel.pair().u(t)
    }

    pub fn ubar(&self, t: f64) -> Result<f64> {
        ensure_finite("t", t)?;
        let a = self.problem.coeffs.a;
        match self.method {
            Method::Green => ubar_with(&self.kernel, &self.problem.h, &self.features, t, self.tol),
            Method::ClosedFormC31 { p_at_origin } => {
                let p = c31_particular(&self.problem, &self.features, a, t, self.tol)?;
                Ok(p - p_at_origin * self.utilde(t))
            }
            Method::ClosedFormC32 => c32_particular(&self.problem.h, &self.features, a, t, self.tol),
        }
    }

    pub fn u(&self, t: f64) -> Result<f64> {
        Ok(self.ubar(t)? + self.lambda * self.utilde(t))
    }

    pub fn eval_many(&self, ts: &[f64]) -> Result<Vec<f64>> {
        ts.iter().map(|&t| self.u(t)).collect()
    }
}

/// Solve the initial value problem through the Green's function.
pub fn solve(problem: &ProblemSpec, tol: f64) -> Result<Solution> {
    let kernel = GreenKernel::new(problem.coeffs)?;
    let pair = *kernel.pair();
    if is_degenerate(&pair, problem.t0) {
        return Err(nonunique(problem, pair.u(problem.t0)));
    }
    let features = problem.h.features().symmetrized();
    let ubar_t0 = ubar_with(&kernel, &problem.h, &features, problem.t0, tol)?;
    let lambda = (problem.c - ubar_t0) / pair.u(problem.t0);
    Ok(Solution {
        problem: problem.clone(),
        kernel,
        features,
        lambda,
        ubar_t0,
        method: Method::Green,
        tol,
    })
}

/// `H(t) - 2a 𝓗_o(t)` with `H(t) = ∫_{t0}^t h` and `𝓗(t) = ∫_{t0}^t H`.
fn c31_particular(problem: &ProblemSpec, features: &Features, a: f64, t: f64, tol: f64) -> Result<f64> {
    let h = &problem.h;
    let t0 = problem.t0;
    let big_h = integrate(|s| h.eval(s), t0, t, features, tol)?;
    let double = |x: f64| integrate(|s| (x - s) * h.eval(s), t0, x, features, tol);
    let odd = 0.5 * (double(t)? - double(-t)?);
    Ok(big_h - 2.0 * a * odd)
}

/// `H(t) + 2a 𝓗_e(t)` with `H(t) = ∫_0^t h` and `𝓗(t) = ∫_0^t H`.
fn c32_particular(h: &Forcing, features: &Features, a: f64, t: f64, tol: f64) -> Result<f64> {
    let big_h = iterated_kernel_integral(|s| h.eval(s), 1, t, features, tol)?;
    let even = 0.5
        * (iterated_kernel_integral(|s| h.eval(s), 2, t, features, tol)?
            + iterated_kernel_integral(|s| h.eval(s), 2, -t, features, tol)?);
    Ok(big_h + 2.0 * a * even)
}

/// Closed-form solution for `a = b`, avoiding the kernel.
///
/// With `p = H - 2a 𝓗_o` (antiderivatives based at `t0`) the solution is
/// `u(t) = p(t) + (c - p(t0)) (2at - 1)/(2a t0 - 1)`; `p(t0)` vanishes when
/// `t0 = 0`.
pub fn closed_form_c31(problem: &ProblemSpec, tol: f64) -> Result<Solution> {
    let kernel = GreenKernel::new(problem.coeffs)?;
    if kernel.case().tag != CaseTag::C3plus {
        return Err(Error::invalid(format!(
            "closed form for a = b does not apply to {} coefficients",
            kernel.case().tag
        )));
    }
    let a = problem.coeffs.a;
    if (2.0 * a * problem.t0 - 1.0).abs() <= 1e-12 {
        return Err(nonunique(problem, kernel.pair().u(problem.t0)));
    }
    let features = problem.h.features().symmetrized();
    let p_at_origin = c31_particular(problem, &features, a, 0.0, tol)?;
    let p_t0 = c31_particular(problem, &features, a, problem.t0, tol)?;
    let utilde_t0 = kernel.pair().u(problem.t0);
    let ubar_t0 = p_t0 - p_at_origin * utilde_t0;
    let lambda = (problem.c - ubar_t0) / utilde_t0;
    Ok(Solution {
        problem: problem.clone(),
        kernel,
        features,
        lambda,
        ubar_t0,
        method: Method::ClosedFormC31 { p_at_origin },
        tol,
    })
}

/// Closed-form solution for `a = -b`, valid for every `t0` since `ũ ≡ 1`:
/// `u(t) = H(t) - H(t0) + 2a (𝓗_e(t) - 𝓗_e(t0)) + c`.
pub fn closed_form_c32(problem: &ProblemSpec, tol: f64) -> Result<Solution> {
    let kernel = GreenKernel::new(problem.coeffs)?;
    if kernel.case().tag != CaseTag::C3minus {
        return Err(Error::invalid(format!(
            "closed form for a = -b does not apply to {} coefficients",
            kernel.case().tag
        )));
    }
    let features = problem.h.features().symmetrized();
    let ubar_t0 = c32_particular(&problem.h, &features, problem.coeffs.a, problem.t0, tol)?;
    Ok(Solution {
        problem: problem.clone(),
        kernel,
        features,
        lambda: problem.c - ubar_t0,
        ubar_t0,
        method: Method::ClosedFormC32,
        tol,
    })
}
