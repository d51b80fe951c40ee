//! Solvers and sign analysis for the first-order linear equation with
//! reflection
//!
//! ```text
//! u'(t) + a u(-t) + b u(t) = h(t),    u(t0) = c.
//! ```
//!
//! The crate is organised bottom-up:
//!
//! - [`regime`]: classification of `(a, b)` and the homogeneous pair `(ũ, ṽ)`.
//! - [`kernel`]: piecewise Green's function `G(t, s)`.
//! - [`quadrature`]: adaptive integration used for every `∫_0^t`.
//! - [`solver`]: the unique solution and the closed forms for `a = ±b`.
//! - [`analysis`]: thresholds, constant-sign strips, degenerate initial points.
//! - [`nthorder`]: construction for `n`-th order equations from an auxiliary pair.
//! - [`oracle`]: shooting and collocation reference solvers, residual checks.
//! - [`expr`]: the forcing-term expression language used by the CLI.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod expr;
pub mod kernel;
pub mod nthorder;
pub mod oracle;
pub mod quadrature;
pub mod regime;
pub mod solver;

pub use analysis::{degenerate_t0, eta, sigma, sign_report, DegenerateSet, SignReport};
pub use error::{Error, Result};
pub use expr::{parse_forcing, ForcingExpr, ParseError};
pub use kernel::{chi, green_eval, green_grid, GreenKernel, Grid};
pub use nthorder::{construct, verify_aux, AuxPair, AuxReport, FnAuxPair, Hypothesis, NthProblem, NthSolution};
pub use oracle::{collocation_solve, compare, residual, shooting_solve, GridSolution, OracleResult};
pub use quadrature::{integrate, iterated_kernel_integral, Features, Forcing, DEFAULT_TOL};
pub use regime::{classify, even_odd, homogeneous_pair, CaseClass, CaseTag, Coefficients, HomogeneousPair};
pub use solver::{closed_form_c31, closed_form_c32, solve, ubar, ProblemSpec, Solution};
