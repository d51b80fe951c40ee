//! Existence construction for the `n`-th order equation with reflection
//!
//! ```text
//! L u := Σ_{k=0}^{n} [ a_k (d/dt)^k (u(-t)) + b_k u^{(k)}(t) ] = h(t),   u(t0) = c,
//! ```
//!
//! with `a_n = 0`, `b_n = 1`. The reflected term is differentiated as a
//! function of `t`, so it contributes `a_k (-1)^k u^{(k)}(-t)`.
//!
//! Given an auxiliary pair `(ũ, ṽ)` satisfying the identity families checked by
//! [`verify_aux`] and with `D = ũ_e ṽ_e - ũ_o ṽ_o` nonvanishing, the function
//!
//! ```text
//! ū = φ̃ ũ + ψ̃ ṽ,   φ = (h_o ṽ_e - h_e ṽ_o) / D,   ψ = (h_e ũ_e - h_o ũ_o) / D,
//! ```
//!
//! where `f̃` is the `n`-fold integral of `f` from the origin, solves
//! `L ū = h` with `ū(0) = 0`. One of three hypotheses then adjusts `ū` to meet
//! the initial condition.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{iterated_kernel_integral, Features, Forcing};
use crate::regime::{Coefficients, HomogeneousPair};

/// Samples used by [`construct`] to check hypotheses.
const CHECK_SAMPLES: usize = 41;
const IDENTITY_TOL: f64 = 1e-8;
const DENOMINATOR_TOL: f64 = 1e-8;
const INITIAL_VALUE_TOL: f64 = 1e-10;
const H3_COEFF_TOL: f64 = 1e-12;
const H3_CONDITION_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct NthProblem {
    a: Vec<f64>,
    b: Vec<f64>,
    pub h: Forcing,
    pub t0: f64,
    pub c: f64,
}

impl NthProblem {
    /// `a` and `b` hold `a_0..=a_n` and `b_0..=b_n`.
    pub fn new(a: Vec<f64>, b: Vec<f64>, h: Forcing, t0: f64, c: f64) -> Result<Self> {
        if a.len() != b.len() || a.len() < 2 {
            return Err(Error::invalid(format!(
                "coefficient vectors must have equal length n+1 >= 2, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        for (k, &x) in a.iter().chain(&b).enumerate() {
            ensure_finite(&format!("coefficient #{k}"), x)?;
        }
        ensure_finite("t0", t0)?;
        ensure_finite("c", c)?;
        let n = a.len() - 1;
        if a[n] != 0.0 || b[n] != 1.0 {
            return Err(Error::invalid(format!(
                "leading coefficients must be a_n = 0 and b_n = 1, got a_n = {}, b_n = {}",
                a[n], b[n]
            )));
        }
        Ok(Self { a, b, h, t0, c })
    }

    /// The first-order problem `u' + a u(-t) + b u = h`.
    pub fn first_order(coeffs: Coefficients, h: Forcing, t0: f64, c: f64) -> Result<Self> {
        Self::new(vec![coeffs.a, 0.0], vec![coeffs.b, 1.0], h, t0, c)
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `(L f)(t)` for `f` given by its derivatives `f(k, x) = f^{(k)}(x)`.
    pub fn apply<F: Fn(usize, f64) -> f64>(&self, f: F, t: f64) -> f64 {
        (0..=self.order())
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                self.a[k] * sign * f(k, -t) + self.b[k] * f(k, t)
            })
            .sum()
    }

    /// Left-hand side of the `j`-th identity for `f`; `reflect_sign` is `-1`
    /// for the `ũ` family and `+1` for the `ṽ` family.
    fn identity<F: Fn(usize, f64) -> f64>(&self, f: &F, j: usize, t: f64, reflect_sign: f64) -> f64 {
        let n = self.order();
        (0..=n - j)
            .map(|i| {
                let parity = if (n + i) % 2 == 0 { 1.0 } else { -1.0 };
                let binom = binomial(i + j, j);
                binom * (reflect_sign * parity * self.a[i + j] * f(i, -t) + self.b[i + j] * f(i, t))
            })
            .sum()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Auxiliary functions `ũ`, `ṽ` with derivatives.
pub trait AuxPair: Send + Sync {
    /// Highest derivative order available.
    fn max_order(&self) -> usize;
    /// `ũ^{(k)}(t)`.
    fn u(&self, k: usize, t: f64) -> f64;
    /// `ṽ^{(k)}(t)`.
    fn v(&self, k: usize, t: f64) -> f64;
}

impl AuxPair for HomogeneousPair {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn u(&self, k: usize, t: f64) -> f64 {
        self.u_deriv(k, t)
    }

    fn v(&self, k: usize, t: f64) -> f64 {
        self.v_deriv(k, t)
    }
}

type DerivFn = dyn Fn(usize, f64) -> f64 + Send + Sync;

/// Auxiliary pair given by closures `(k, t) ↦ f^{(k)}(t)`.
#[derive(Clone)]
pub struct FnAuxPair {
    max_order: usize,
    u: Arc<DerivFn>,
    v: Arc<DerivFn>,
}

impl FnAuxPair {
    pub fn new<U, V>(max_order: usize, u: U, v: V) -> Self
    where
        U: Fn(usize, f64) -> f64 + Send + Sync + 'static,
        V: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            max_order,
            u: Arc::new(u),
            v: Arc::new(v),
        }
    }
}

impl fmt::Debug for FnAuxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnAuxPair")
            .field("max_order", &self.max_order)
            .finish_non_exhaustive()
    }
}

impl AuxPair for FnAuxPair {
    fn max_order(&self) -> usize {
        self.max_order
    }

    fn u(&self, k: usize, t: f64) -> f64 {
        (self.u)(k, t)
    }

    fn v(&self, k: usize, t: f64) -> f64 {
        (self.v)(k, t)
    }
}

fn denominator(pair: &dyn AuxPair, t: f64) -> f64 {
    let (up, um, vp, vm) = (pair.u(0, t), pair.u(0, -t), pair.v(0, t), pair.v(0, -t));
    let (ue, uo) = (0.5 * (up + um), 0.5 * (up - um));
    let (ve, vo) = (0.5 * (vp + vm), 0.5 * (vp - vm));
    ue * ve - uo * vo
}

/// Larger of the two, with NaN winning.
fn worst(acc: f64, r: f64) -> f64 {
    if r.is_nan() || r > acc {
        r
    } else {
        acc
    }
}

/// Residuals of the auxiliary-pair identities over a sample grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxReport {
    /// Max residual of the `ũ` identity for `j = 0..n`.
    pub u_residuals: Vec<f64>,
    /// Max residual of the `ṽ` identity for `j = 0..n`.
    pub v_residuals: Vec<f64>,
    /// `min |ũ_e ṽ_e - ũ_o ṽ_o|` over the samples.
    pub min_denominator: f64,
    pub pass: bool,
}

impl AuxReport {
    pub fn max_residual(&self) -> f64 {
        self.u_residuals
            .iter()
            .chain(&self.v_residuals)
            .fold(0.0, |m, &r| m.max(r))
    }
}

pub fn verify_aux(problem: &NthProblem, pair: &dyn AuxPair, window: (f64, f64), samples: usize) -> Result<AuxReport> {
    let n = problem.order();
    if samples < 2 {
        return Err(Error::invalid(format!("need at least 2 samples, got {samples}")));
    }
    if pair.max_order() < n {
        return Err(Error::invalid(format!(
            "auxiliary pair provides derivatives up to order {}, equation needs {n}",
            pair.max_order()
        )));
    }
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::invalid(format!("window [{lo}, {hi}] is not a finite interval")));
    }
    let u = |k: usize, t: f64| pair.u(k, t);
    let v = |k: usize, t: f64| pair.v(k, t);
    let mut u_res = vec![0.0f64; n];
    let mut v_res = vec![0.0f64; n];
    let mut min_d = f64::INFINITY;
    for i in 0..samples {
        let t = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        for j in 0..n {
            u_res[j] = worst(u_res[j], problem.identity(&u, j, t, -1.0).abs());
            v_res[j] = worst(v_res[j], problem.identity(&v, j, t, 1.0).abs());
        }
        min_d = -worst(-min_d, -denominator(pair, t).abs());
    }
    // NaN residuals must fail, hence the negated comparisons
    let pass = !u_res.iter().chain(&v_res).any(|r| !(*r <= IDENTITY_TOL)) && min_d >= DENOMINATOR_TOL;
    Ok(AuxReport {
        u_residuals: u_res,
        v_residuals: v_res,
        min_denominator: min_d,
        pass,
    })
}

/// How the particular solution is adjusted to meet `u(t0) = c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    /// `L ũ = 0` and `ũ(t0) ≠ 0`: correct with `ũ`.
    H1,
    /// `L ṽ = 0` and `ṽ(t0) ≠ 0`: correct with `ṽ`.
    H2,
    /// `a_0 + b_0 ≠ 0`: correct with `w₁ - 1/(a_0+b_0)`, where `L w₁ = 1`.
    H3,
}

impl std::str::FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h1" | "H1" => Ok(Hypothesis::H1),
            "h2" | "H2" => Ok(Hypothesis::H2),
            "h3" | "H3" => Ok(Hypothesis::H3),
            _ => Err(Error::invalid(format!("unknown hypothesis '{s}', expected h1, h2 or h3"))),
        }
    }
}

/// Evaluator for the function built by [`construct`].
#[derive(Clone)]
pub struct NthSolution {
    problem: NthProblem,
    pair: Arc<dyn AuxPair>,
    features: Features,
    hypothesis: Hypothesis,
    /// `1 / (a_0 + b_0)` for (h3).
    h3_shift: f64,
    coefficient: f64,
    tol: f64,
}

impl fmt::Debug for NthSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NthSolution")
            .field("order", &self.problem.order())
            .field("hypothesis", &self.hypothesis)
            .field("coefficient", &self.coefficient)
            .finish_non_exhaustive()
    }
}

impl NthSolution {
    pub fn problem(&self) -> &NthProblem {
        &self.problem
    }

    pub fn hypothesis(&self) -> Hypothesis {
        self.hypothesis
    }

    /// Multiplier of the correction term.
    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn phi(&self, t: f64) -> f64 {
        phi_psi(self.pair.as_ref(), &|s| self.problem.h.eval(s), t).0
    }

    pub fn psi(&self, t: f64) -> f64 {
        phi_psi(self.pair.as_ref(), &|s| self.problem.h.eval(s), t).1
    }

    /// `ū(t) = φ̃(t) ũ(t) + ψ̃(t) ṽ(t)`.
    pub fn ubar(&self, t: f64) -> Result<f64> {
        ensure_finite("t", t)?;
        let h = &self.problem.h;
        particular(self.pair.as_ref(), self.problem.order(), &|s| h.eval(s), &self.features, t, self.tol)
    }

    /// The function multiplied by [`coefficient`](Self::coefficient).
    pub fn correction(&self, t: f64) -> Result<f64> {
        ensure_finite("t", t)?;
        Ok(match self.hypothesis {
            Hypothesis::H1 => self.pair.u(0, t),
            Hypothesis::H2 => self.pair.v(0, t),
            Hypothesis::H3 => {
                let w1 = particular(self.pair.as_ref(), self.problem.order(), &|_| 1.0, &Features::none(), t, self.tol)?;
                w1 - self.h3_shift
            }
        })
    }

    pub fn u(&self, t: f64) -> Result<f64> {
        Ok(self.ubar(t)? + self.coefficient * self.correction(t)?)
    }
}

fn phi_psi(pair: &dyn AuxPair, h: &dyn Fn(f64) -> f64, t: f64) -> (f64, f64) {
    let (hp, hm) = (h(t), h(-t));
    let (he, ho) = (0.5 * (hp + hm), 0.5 * (hp - hm));
    let (up, um, vp, vm) = (pair.u(0, t), pair.u(0, -t), pair.v(0, t), pair.v(0, -t));
    let (ue, uo) = (0.5 * (up + um), 0.5 * (up - um));
    let (ve, vo) = (0.5 * (vp + vm), 0.5 * (vp - vm));
    let d = ue * ve - uo * vo;
    ((ho * ve - he * vo) / d, (he * ue - ho * uo) / d)
}

fn particular(
    pair: &dyn AuxPair,
    n: usize,
    h: &dyn Fn(f64) -> f64,
    features: &Features,
    t: f64,
    tol: f64,
) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let phi_t = iterated_kernel_integral(|s| phi_psi(pair, h, s).0, n, t, features, tol)?;
    let psi_t = iterated_kernel_integral(|s| phi_psi(pair, h, s).1, n, t, features, tol)?;
    Ok(phi_t * pair.u(0, t) + psi_t * pair.v(0, t))
}

fn check_window(t0: f64) -> (f64, f64) {
    let r = t0.abs().max(1.0);
    (-r, r)
}

fn homogeneous_residual(problem: &NthProblem, f: &dyn Fn(usize, f64) -> f64) -> f64 {
    let (lo, hi) = check_window(problem.t0);
    (0..CHECK_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / (CHECK_SAMPLES - 1) as f64)
        .map(|t| problem.apply(f, t).abs())
        .fold(0.0, f64::max)
}

/// Build `w` with `L w = h` and `w(t0) = c` under the chosen hypothesis.
pub fn construct<P>(problem: &NthProblem, pair: P, hypothesis: Hypothesis, tol: f64) -> Result<NthSolution>
where
    P: AuxPair + 'static,
{
    let report = verify_aux(problem, &pair, check_window(problem.t0), CHECK_SAMPLES)?;
    if !report.pass {
        return Err(Error::HypothesisViolated(format!(
            "auxiliary pair fails its identities: max residual {:e}, min |D| {:e}",
            report.max_residual(),
            report.min_denominator
        )));
    }
    let t0 = problem.t0;
    let pair: Arc<dyn AuxPair> = Arc::new(pair);
    let mut sol = NthSolution {
        problem: problem.clone(),
        pair: pair.clone(),
        features: problem.h.features().symmetrized(),
        hypothesis,
        h3_shift: 0.0,
        coefficient: 0.0,
        tol,
    };
    match hypothesis {
        Hypothesis::H1 | Hypothesis::H2 => {
            let (name, f): (&str, Box<dyn Fn(usize, f64) -> f64>) = match hypothesis {
                Hypothesis::H1 => ("ũ", Box::new(|k, t| pair.u(k, t))),
                _ => ("ṽ", Box::new(|k, t| pair.v(k, t))),
            };
            let residual = homogeneous_residual(problem, &f);
            if !(residual <= IDENTITY_TOL) {
                return Err(Error::HypothesisViolated(format!(
                    "L{name} = 0 fails: residual {residual:e}"
                )));
            }
            if !(f(0, t0).abs() > INITIAL_VALUE_TOL) {
                return Err(Error::HypothesisViolated(format!(
                    "{name}(t0) = {:e} vanishes at t0 = {t0}",
                    f(0, t0)
                )));
            }
        }
        Hypothesis::H3 => {
            let s = problem.a[0] + problem.b[0];
            if !(s.abs() > H3_COEFF_TOL) {
                return Err(Error::HypothesisViolated(format!("a_0 + b_0 = {s:e} vanishes")));
            }
            sol.h3_shift = 1.0 / s;
            let w1 = sol.correction(t0)? + sol.h3_shift;
            if !((s * w1 - 1.0).abs() > H3_CONDITION_TOL) {
                return Err(Error::HypothesisViolated(format!(
                    "(a_0 + b_0) w1(t0) = {} is 1 within {H3_CONDITION_TOL:e}",
                    s * w1
                )));
            }
        }
    }
    let ubar_t0 = sol.ubar(t0)?;
    sol.coefficient = (problem.c - ubar_t0) / sol.correction(t0)?;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_pair() -> FnAuxPair {
        // e^{-t}: k-th derivative (-1)^k e^{-t}
        let f = |k: usize, t: f64| if k % 2 == 0 { (-t).exp() } else { -(-t).exp() };
        FnAuxPair::new(usize::MAX, f, f)
    }

    #[test]
    fn rejects_bad_leading_coefficients() {
        assert!(NthProblem::new(vec![1.0, 0.5], vec![1.0, 1.0], Forcing::zero(), 0.0, 0.0).is_err());
        assert!(NthProblem::new(vec![1.0, 0.0], vec![1.0, 2.0], Forcing::zero(), 0.0, 0.0).is_err());
        assert!(NthProblem::new(vec![0.0], vec![1.0], Forcing::zero(), 0.0, 0.0).is_err());
        assert!(NthProblem::new(vec![0.0, 0.0], vec![1.0], Forcing::zero(), 0.0, 0.0).is_err());
    }

    #[test]
    fn first_order_pair_passes() {
        for &(a, b) in &[(-5.0, 4.0), (1.0, 2.0), (1.0, 1.0), (1.0, -1.0), (0.0, 0.7)] {
            let coeffs = Coefficients::new(a, b).unwrap();
            let problem = NthProblem::first_order(coeffs, Forcing::zero(), 0.0, 0.0).unwrap();
            let pair = HomogeneousPair::new(coeffs).unwrap();
            let report = verify_aux(&problem, &pair, (-2.0, 2.0), 101).unwrap();
            assert!(report.pass, "({a},{b}): {report:?}");
            assert!(report.max_residual() <= 1e-12, "({a},{b}): {report:?}");
            assert_eq!(report.u_residuals.len(), 1);
        }
    }

    #[test]
    fn constant_pair_fails() {
        let problem = NthProblem::new(vec![1.0, 0.0], vec![1.0, 1.0], Forcing::zero(), 0.0, 0.0).unwrap();
        let ones = FnAuxPair::new(5, |k, _| if k == 0 { 1.0 } else { 0.0 }, |k, _| if k == 0 { 1.0 } else { 0.0 });
        let report = verify_aux(&problem, &ones, (-1.0, 1.0), 3).unwrap();
        assert!(!report.pass);
        assert_eq!(report.u_residuals, vec![2.0]);
        assert_eq!(report.v_residuals, vec![0.0]);
    }

    #[test]
    fn insufficient_derivatives_rejected() {
        let problem = NthProblem::new(vec![0.0; 3], vec![1.0, 2.0, 1.0], Forcing::zero(), 0.0, 0.0).unwrap();
        let short = FnAuxPair::new(1, |_, t: f64| (-t).exp(), |_, t: f64| (-t).exp());
        let e = verify_aux(&problem, &short, (-1.0, 1.0), 5).unwrap_err();
        assert_eq!(e.kind(), "invalid-input");
        assert!(verify_aux(&problem, &exp_pair(), (-1.0, 1.0), 1).is_err());
    }

    #[test]
    fn double_root_second_order_passes() {
        let problem = NthProblem::new(vec![0.0; 3], vec![1.0, 2.0, 1.0], Forcing::zero(), 0.0, 0.0).unwrap();
        let report = verify_aux(&problem, &exp_pair(), (-2.0, 2.0), 51).unwrap();
        assert!(report.pass, "{report:?}");
        assert!((report.min_denominator - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distinct_roots_fail_second_identity() {
        // u'' - u = 0: e^{-t} solves it but the j = 1 identity needs 2u' + b_1 u = 0
        let problem = NthProblem::new(vec![0.0; 3], vec![-1.0, 0.0, 1.0], Forcing::zero(), 0.0, 0.0).unwrap();
        let report = verify_aux(&problem, &exp_pair(), (-1.0, 1.0), 11).unwrap();
        assert!(report.u_residuals[0] < 1e-12);
        assert!(report.u_residuals[1] > 0.1);
        assert!(!report.pass);
    }

    #[test]
    fn integrating_factor_example() {
        let h = Forcing::new(f64::exp);
        let problem = NthProblem::new(vec![0.0, 0.0], vec![1.0, 1.0], h, 0.0, 0.0).unwrap();
        let sol = construct(&problem, exp_pair(), Hypothesis::H1, 1e-12).unwrap();
        assert_eq!(sol.ubar(0.0).unwrap(), 0.0);
        for &t in &[-1.5f64, -0.3, 0.7, 2.0] {
            let exact = t.sinh();
            assert!((sol.u(t).unwrap() - exact).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn zero_forcing_gives_zero() {
        let coeffs = Coefficients::new(-5.0, 4.0).unwrap();
        let problem = NthProblem::first_order(coeffs, Forcing::zero(), 0.4, 0.0).unwrap();
        let pair = HomogeneousPair::new(coeffs).unwrap();
        let sol = construct(&problem, pair, Hypothesis::H1, 1e-10).unwrap();
        assert_eq!(sol.coefficient(), 0.0);
        for &t in &[-1.0, 0.0, 0.5] {
            assert_eq!(sol.u(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn second_order_under_each_hypothesis() {
        // u'' + 2u' + u = t; particular solution with zero data at 0 is t - 2 + (2+t)e^{-t}
        let problem = NthProblem::new(vec![0.0; 3], vec![1.0, 2.0, 1.0], Forcing::new(|t| t), 0.8, 1.5).unwrap();
        let ubar = |t: f64| t - 2.0 + (2.0 + t) * (-t).exp();
        for hyp in [Hypothesis::H1, Hypothesis::H2, Hypothesis::H3] {
            let sol = construct(&problem, exp_pair(), hyp, 1e-12).unwrap();
            assert!((sol.u(0.8).unwrap() - 1.5).abs() < 1e-10, "{hyp:?}");
            for &t in &[-1.0, 0.3, 1.7] {
                assert!((sol.ubar(t).unwrap() - ubar(t)).abs() < 1e-10, "{hyp:?} t={t}");
            }
        }
        // (h3) corrector: w1 = 1 - (1+t)e^{-t}, shifted by 1
        let sol = construct(&problem, exp_pair(), Hypothesis::H3, 1e-12).unwrap();
        let t: f64 = 0.6;
        assert!((sol.correction(t).unwrap() + (1.0 + t) * (-t).exp()).abs() < 1e-10);
    }

    #[test]
    fn hypothesis_failures_are_reported() {
        let coeffs = Coefficients::new(1.0, 1.0).unwrap();
        let pair = HomogeneousPair::new(coeffs).unwrap();
        // ũ(0.5) = 0 for a = b = 1
        let problem = NthProblem::first_order(coeffs, Forcing::constant(1.0), 0.5, 0.0).unwrap();
        let e = construct(&problem, pair, Hypothesis::H1, 1e-10).unwrap_err();
        assert_eq!(e.kind(), "hypothesis-violated");

        // a = -b = 1: a_0 + b_0 = 0
        let coeffs = Coefficients::new(1.0, -1.0).unwrap();
        let pair = HomogeneousPair::new(coeffs).unwrap();
        let problem = NthProblem::first_order(coeffs, Forcing::constant(1.0), 0.0, 0.0).unwrap();
        let e = construct(&problem, pair, Hypothesis::H3, 1e-10).unwrap_err();
        assert!(e.to_string().contains("a_0 + b_0"));

        // ṽ for (a, b) is not a solution of L ṽ = 0 when a ≠ 0
        let coeffs = Coefficients::new(-5.0, 4.0).unwrap();
        let pair = HomogeneousPair::new(coeffs).unwrap();
        let problem = NthProblem::first_order(coeffs, Forcing::constant(1.0), 0.0, 0.0).unwrap();
        let e = construct(&problem, pair, Hypothesis::H2, 1e-10).unwrap_err();
        assert!(e.to_string().contains("Lṽ"));
    }

    #[test]
    fn parity_and_decomposition() {
        let coeffs = Coefficients::new(-5.0, 4.0).unwrap();
        let h = Forcing::new(|t: f64| (3.0 * t).cos().powi(2) + t);
        let problem = NthProblem::first_order(coeffs, h.clone(), 0.0, 0.0).unwrap();
        let pair = HomogeneousPair::new(coeffs).unwrap();
        let sol = construct(&problem, pair, Hypothesis::H1, 1e-10).unwrap();
        for &t in &[0.1, 0.77, 1.9] {
            assert!((sol.phi(t) + sol.phi(-t)).abs() <= 1e-9);
            assert!((sol.psi(t) - sol.psi(-t)).abs() <= 1e-9);
            let recomposed = sol.phi(t) * pair.u(t) + sol.psi(t) * pair.v(t);
            assert!((recomposed - h.eval(t)).abs() <= 1e-9);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(6, 6), 1.0);
    }
}
