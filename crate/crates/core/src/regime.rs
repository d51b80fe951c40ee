//! Regime classification for `u'(t) + a u(-t) + b u(t) = h(t)` and the
//! normalized homogeneous pair.
//!
//! Differentiating the homogeneous equation once and substituting the
//! reflected equation gives `u'' + (a^2 - b^2) u = 0`, so the behaviour of
//! every kernel in this crate is decided by the sign of `a^2 - b^2`:
//!
//! | tag       | condition   | `ũ(t)`                                  |
//! |-----------|-------------|-----------------------------------------|
//! | `C1`      | `a^2 > b^2` | `cos ωt - (a+b)/ω sin ωt`               |
//! | `C2`      | `a^2 < b^2` | `cosh ωt - (a+b)/ω sinh ωt`             |
//! | `C3plus`  | `a = b`     | `1 - 2at`                               |
//! | `C3minus` | `a = -b`    | `1`                                     |
//!
//! with `ω = sqrt|a^2 - b^2|`. The companion `ṽ` is the same construction
//! with the sign of `a` flipped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Result};

/// Default relative tolerance for deciding `a^2 = b^2`.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-12;

/// Reflection coefficient `a` and identity coefficient `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
}

impl Coefficients {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        ensure_finite("a", a)?;
        ensure_finite("b", b)?;
        Ok(Self { a, b })
    }

    /// `(-a, -b)`, the partner in the kernel reflection identity.
    pub fn negated(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }

    pub fn classify(self) -> Result<CaseClass> {
        classify(self, DEFAULT_CLASSIFY_TOL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    C1,
    C2,
    C3plus,
    C3minus,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::C1 => "C1",
            CaseTag::C2 => "C2",
            CaseTag::C3plus => "C3plus",
            CaseTag::C3minus => "C3minus",
        }
    }

    pub fn is_c3(self) -> bool {
        matches!(self, CaseTag::C3plus | CaseTag::C3minus)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseClass {
    pub tag: CaseTag,
    /// `sqrt|a^2 - b^2|`; exactly zero for the `C3` tags.
    pub omega: f64,
}

/// Classify `(a, b)` into its regime.
///
/// `a^2 = b^2` is accepted when `|a^2 - b^2| <= tol * (a^2 + b^2 + 1)`. When
/// both `a` and `b` vanish (within `tol` on the coefficient scale) the
/// `C3minus` tag is returned, since `ũ ≡ 1` there.
pub fn classify(coeffs: Coefficients, tol: f64) -> Result<CaseClass> {
    let Coefficients { a, b } = coeffs;
    ensure_finite("a", a)?;
    ensure_finite("b", b)?;
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(crate::Error::invalid(format!(
            "classification tolerance must be finite and non-negative, got {tol}"
        )));
    }

    // (a-b)(a+b) keeps full relative precision near a = ±b.
    let diff = (a - b) * (a + b);
    if diff.abs() <= tol * (a * a + b * b + 1.0) {
        let scale = tol * (1.0 + a.abs() + b.abs());
        let minus = (a - b).abs();
        let plus = (a + b).abs();
        let tag = if minus <= scale && plus <= scale {
            CaseTag::C3minus
        } else if minus <= plus {
            CaseTag::C3plus
        } else {
            CaseTag::C3minus
        };
        return Ok(CaseClass { tag, omega: 0.0 });
    }

    let omega = diff.abs().sqrt();
    let tag = if diff > 0.0 { CaseTag::C1 } else { CaseTag::C2 };
    Ok(CaseClass { tag, omega })
}

/// One normalized homogeneous solution, `f(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    /// `cos ωt - p sin ωt`
    Trig { omega: f64, p: f64 },
    /// `cosh ωt - p sinh ωt`
    Hyp { omega: f64, p: f64 },
    /// `1 - slope t`
    Linear { slope: f64 },
}

impl Shape {
    fn for_reflection(reflect: f64, b: f64, case: CaseClass, c3_slope: f64) -> Self {
        let omega = case.omega;
        match case.tag {
            CaseTag::C1 => Shape::Trig {
                omega,
                p: (reflect + b) / omega,
            },
            CaseTag::C2 => Shape::Hyp {
                omega,
                p: (reflect + b) / omega,
            },
            CaseTag::C3plus | CaseTag::C3minus => Shape::Linear { slope: c3_slope },
        }
    }

    fn deriv(self, k: usize, t: f64) -> f64 {
        match self {
            Shape::Trig { omega, p } => {
                let (s, c) = (omega * t).sin_cos();
                let (dc, ds) = match k % 4 {
                    0 => (c, s),
                    1 => (-s, c),
                    2 => (-c, -s),
                    _ => (s, -c),
                };
                omega.powi(k as i32) * (dc - p * ds)
            }
            Shape::Hyp { omega, p } => {
                let x = omega * t;
                let (ch, sh) = (x.cosh(), x.sinh());
                let (dc, ds) = if k % 2 == 0 { (ch, sh) } else { (sh, ch) };
                omega.powi(k as i32) * (dc - p * ds)
            }
            Shape::Linear { slope } => match k {
                0 => 1.0 - slope * t,
                1 => -slope,
                _ => 0.0,
            },
        }
    }
}

/// The pair `(ũ, ṽ)` solving
/// `ũ' + a ũ(-t) + b ũ = 0` and `ṽ' - a ṽ(-t) + b ṽ = 0`, both equal to one
/// at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPair {
    coeffs: Coefficients,
    case: CaseClass,
    u: Shape,
    v: Shape,
}

/// Build the homogeneous pair for `coeffs` in the already classified regime.
pub fn homogeneous_pair(coeffs: Coefficients, case: CaseClass) -> HomogeneousPair {
    let Coefficients { a, b } = coeffs;
    // In C3 the flipped pair (-a, b) lands in the other C3 subcase.
    let (u_slope, v_slope) = match case.tag {
        CaseTag::C3plus => (2.0 * a, 0.0),
        CaseTag::C3minus => (0.0, -2.0 * a),
        _ => (0.0, 0.0),
    };
    HomogeneousPair {
        coeffs,
        case,
        u: Shape::for_reflection(a, b, case, u_slope),
        v: Shape::for_reflection(-a, b, case, v_slope),
    }
}

impl HomogeneousPair {
    pub fn new(coeffs: Coefficients) -> Result<Self> {
        Ok(homogeneous_pair(coeffs, coeffs.classify()?))
    }

    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }

    pub fn case(&self) -> CaseClass {
        self.case
    }

    pub fn u(&self, t: f64) -> f64 {
        self.u.deriv(0, t)
    }

    pub fn v(&self, t: f64) -> f64 {
        self.v.deriv(0, t)
    }

    pub fn du(&self, t: f64) -> f64 {
        self.u.deriv(1, t)
    }

    pub fn dv(&self, t: f64) -> f64 {
        self.v.deriv(1, t)
    }

    /// `k`-th derivative of `ũ`.
    pub fn u_deriv(&self, k: usize, t: f64) -> f64 {
        self.u.deriv(k, t)
    }

    /// `k`-th derivative of `ṽ`.
    pub fn v_deriv(&self, k: usize, t: f64) -> f64 {
        self.v.deriv(k, t)
    }

    pub fn u_even(&self, t: f64) -> f64 {
        even_odd(|x| self.u(x), t).0
    }

    pub fn u_odd(&self, t: f64) -> f64 {
        even_odd(|x| self.u(x), t).1
    }

    pub fn v_even(&self, t: f64) -> f64 {
        even_odd(|x| self.v(x), t).0
    }

    pub fn v_odd(&self, t: f64) -> f64 {
        even_odd(|x| self.v(x), t).1
    }

    /// `ũ_e ṽ_e - ũ_o ṽ_o`, identically one for every regime.
    pub fn wronskian_like(&self, t: f64) -> f64 {
        self.u_even(t) * self.v_even(t) - self.u_odd(t) * self.v_odd(t)
    }
}

/// Even and odd parts of `f` at `t`.
pub fn even_odd<F: Fn(f64) -> f64>(f: F, t: f64) -> (f64, f64) {
    let (p, m) = (f(t), f(-t));
    (0.5 * (p + m), 0.5 * (p - m))
}
