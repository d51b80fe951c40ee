//! Sign structure of the Green's function: threshold functions, the maximal
//! strips `[α, β] × ℝ` on which `G` keeps a constant sign (maximum and
//! anti-maximum principles), and the set of initial points that break
//! uniqueness.

use std::f64::consts::PI;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::regime::{CaseClass, CaseTag, Coefficients, HomogeneousPair};

/// `|ũ(t0)|` at or below this (scaled by `1 + |t0|`) counts as zero.
pub const UNIQUENESS_TOL: f64 = 1e-10;

pub fn uniqueness_threshold(t0: f64) -> f64 {
    UNIQUENESS_TOL * (1.0 + t0.abs())
}

/// `η(a, b) = atan2(ω, b) / ω` with `ω = sqrt(a^2 - b^2)`; the three branches
/// (`b > 0`, `b = 0`, `b < 0`) of the usual definition are the three
/// quadrants of `atan2`.
pub fn eta(a: f64, b: f64) -> Result<f64> {
    let d = (a - b) * (a + b);
    if !(d > 0.0) {
        return Err(Error::Domain(format!("eta({a}, {b}) requires a^2 > b^2")));
    }
    let w = d.sqrt();
    if b == 0.0 {
        return Ok(PI / (2.0 * a.abs()));
    }
    Ok(w.atan2(b) / w)
}

/// `σ(a, b) = artanh(ω / b) / ω` with `ω = sqrt(b^2 - a^2)`.
///
/// When `|ω / b|` rounds to one (that is `a ≈ 0`) the value is reported as
/// `±∞` with the sign of `b`.
pub fn sigma(a: f64, b: f64) -> Result<f64> {
    let d = (b - a) * (b + a);
    if !(d > 0.0) {
        return Err(Error::Domain(format!("sigma({a}, {b}) requires a^2 < b^2")));
    }
    let w = d.sqrt();
    let z = w / b;
    if z.abs() >= 1.0 - 1e-15 {
        return Ok(f64::INFINITY.copysign(b));
    }
    Ok(z.atanh() / w)
}

/// Zero set of `ũ`, i.e. the initial points where the problem is not
/// uniquely solvable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegenerateSet {
    Empty,
    Point(f64),
    /// `{offset + k * spacing : k ∈ ℤ}`
    Progression { offset: f64, spacing: f64 },
}

impl DegenerateSet {
    /// Distance from `t0` to the set (`∞` when empty).
    pub fn distance(&self, t0: f64) -> f64 {
        match *self {
            DegenerateSet::Empty => f64::INFINITY,
            DegenerateSet::Point(p) => (t0 - p).abs(),
            DegenerateSet::Progression { offset, spacing } => {
                let k = ((t0 - offset) / spacing).round();
                (t0 - (offset + k * spacing)).abs()
            }
        }
    }

    /// Members of the set inside `[lo, hi]`.
    pub fn members_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        match *self {
            DegenerateSet::Empty => vec![],
            DegenerateSet::Point(p) => {
                if (lo..=hi).contains(&p) {
                    vec![p]
                } else {
                    vec![]
                }
            }
            DegenerateSet::Progression { offset, spacing } => {
                let k0 = ((lo - offset) / spacing).ceil() as i64;
                let k1 = ((hi - offset) / spacing).floor() as i64;
                (k0..=k1).map(|k| offset + k as f64 * spacing).collect()
            }
        }
    }
}

impl fmt::Display for DegenerateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerateSet::Empty => f.write_str("empty"),
            DegenerateSet::Point(p) => write!(f, "{{{p}}}"),
            DegenerateSet::Progression { offset, spacing } => {
                write!(f, "{{{offset} + k*{spacing}, k in Z}}")
            }
        }
    }
}

impl Serialize for DegenerateSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match *self {
            DegenerateSet::Empty => map.serialize_entry("kind", "empty")?,
            DegenerateSet::Point(p) => {
                map.serialize_entry("kind", "point")?;
                map.serialize_entry("t0", &p)?;
            }
            DegenerateSet::Progression { offset, spacing } => {
                map.serialize_entry("kind", "progression")?;
                map.serialize_entry("offset", &offset)?;
                map.serialize_entry("spacing", &spacing)?;
            }
        }
        map.end()
    }
}

/// `{t0 : ũ(t0) = 0}` for the coefficients `(a, b)`.
pub fn degenerate_t0(a: f64, b: f64) -> Result<DegenerateSet> {
    let coeffs = Coefficients::new(a, b)?;
    let case = coeffs.classify()?;
    let w = case.omega;
    Ok(match case.tag {
        // ũ = cos ωt - (a+b)/ω sin ωt vanishes where tan ωt = ω/(a+b)
        CaseTag::C1 => DegenerateSet::Progression {
            offset: (w / (a + b)).atan() / w,
            spacing: PI / w,
        },
        // tanh ωt = ω/(a+b) has a root only when that ratio is below one,
        // which is exactly ab > 0
        CaseTag::C2 if a * b > 0.0 => DegenerateSet::Point((w / (a + b)).atanh() / w),
        CaseTag::C2 => DegenerateSet::Empty,
        CaseTag::C3plus if a != 0.0 => DegenerateSet::Point(1.0 / (2.0 * a)),
        CaseTag::C3plus | CaseTag::C3minus => DegenerateSet::Empty,
    })
}

/// Whether `ũ(t0)` is numerically zero.
pub fn is_degenerate(pair: &HomogeneousPair, t0: f64) -> bool {
    pair.u(t0).abs() <= uniqueness_threshold(t0)
}

/// Open `t`-interval, endpoints possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    fn mirrored(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

/// JSON-safe float: infinities become the strings `"inf"` / `"-inf"`.
pub(crate) fn serialize_extended<S: Serializer>(x: f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x == f64::INFINITY {
        s.serialize_str("inf")
    } else if x == f64::NEG_INFINITY {
        s.serialize_str("-inf")
    } else {
        s.serialize_f64(x)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Ext(f64);
        impl Serialize for Ext {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_extended(self.0, s)
            }
        }
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&Ext(self.lo))?;
        seq.serialize_element(&Ext(self.hi))?;
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn of(x: f64) -> Self {
        if x >= 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Sign of `G` on one of the four triangles of its support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TriangleSign {
    /// Constant sign on the whole triangle.
    Constant { sign: Sign },
    /// The sign holds on the triangle slice at `t` iff `t` lies in `when`.
    Conditional { sign: Sign, when: Interval },
    /// `G` vanishes there (`a = 0`).
    IdenticallyZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleSigns {
    /// `{0 < s < t}`
    pub t1: TriangleSign,
    /// `{t < s < 0}`
    pub t2: TriangleSign,
    /// `{-t < s < 0}`
    pub t3: TriangleSign,
    /// `{0 < s < -t}`
    pub t4: TriangleSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StripSign {
    Nonnegative,
    Nonpositive,
}

impl StripSign {
    fn flip(self) -> Self {
        match self {
            StripSign::Nonnegative => StripSign::Nonpositive,
            StripSign::Nonpositive => StripSign::Nonnegative,
        }
    }
}

/// Maximal `[lo, hi] × ℝ` on which `G` keeps the sign `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Strip {
    pub interval: Interval,
    pub sign: StripSign,
}

impl Strip {
    /// The strip of `G_{-a,-b}` predicted by `G_{a,b}(t,s) = -G_{-a,-b}(-t,-s)`.
    pub fn dual(self) -> Self {
        Strip {
            interval: self.interval.mirrored(),
            sign: self.sign.flip(),
        }
    }
}

/// Named thresholds relevant to the regime; absent ones are omitted.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Thresholds {
    pub eta: Option<f64>,
    pub eta_neg_b: Option<f64>,
    pub pi_over_omega: Option<f64>,
    pub sigma: Option<f64>,
    pub inv_a: Option<f64>,
}

impl Serialize for Thresholds {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Ext(f64);
        impl Serialize for Ext {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_extended(self.0, s)
            }
        }
        let mut map = serializer.serialize_map(None)?;
        let named = [
            ("eta", self.eta),
            ("eta_neg_b", self.eta_neg_b),
            ("pi_over_omega", self.pi_over_omega),
            ("sigma", self.sigma),
            ("inv_a", self.inv_a),
        ];
        for (name, value) in named {
            if let Some(v) = value {
                map.serialize_entry(name, &Ext(v))?;
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignReport {
    pub case: CaseClass,
    pub triangles: TriangleSigns,
    pub strip: Strip,
    pub thresholds: Thresholds,
}

pub fn thresholds(a: f64, b: f64) -> Result<Thresholds> {
    let case = Coefficients::new(a, b)?.classify()?;
    let mut th = Thresholds::default();
    match case.tag {
        CaseTag::C1 => {
            th.eta = Some(eta(a, b)?);
            th.eta_neg_b = Some(eta(a, -b)?);
            th.pi_over_omega = Some(PI / case.omega);
        }
        CaseTag::C2 => th.sigma = Some(sigma(a, b)?),
        CaseTag::C3plus | CaseTag::C3minus => {
            if a != 0.0 {
                th.inv_a = Some(1.0 / a);
            }
        }
    }
    Ok(th)
}

/// Triangle signs, maximal constant-sign strip and thresholds for `(a, b)`.
pub fn sign_report(a: f64, b: f64) -> Result<SignReport> {
    use TriangleSign::{Conditional, Constant, IdenticallyZero};

    let case = Coefficients::new(a, b)?.classify()?;
    let thresholds = thresholds(a, b)?;
    let inf = f64::INFINITY;
    let pos = Sign::Positive;
    let neg = Sign::Negative;
    let sign_a = Sign::of(a);
    let strip = |lo: f64, hi: f64, sign: StripSign| Strip {
        interval: Interval::new(lo, hi),
        sign,
    };

    let (triangles, strip) = match case.tag {
        CaseTag::C1 => {
            let eta_ab = thresholds.eta.unwrap_or_default();
            let eta_neg = thresholds.eta_neg_b.unwrap_or_default();
            let period = thresholds.pi_over_omega.unwrap_or_default();
            let tri = TriangleSigns {
                t1: Conditional { sign: pos, when: Interval::new(0.0, eta_ab) },
                t2: Conditional { sign: neg, when: Interval::new(-eta_neg, 0.0) },
                t3: Conditional { sign: sign_a, when: Interval::new(0.0, period) },
                t4: Conditional { sign: sign_a, when: Interval::new(-period, 0.0) },
            };
            let st = if a > 0.0 {
                strip(0.0, eta_ab, StripSign::Nonnegative)
            } else {
                strip(-eta_neg, 0.0, StripSign::Nonpositive)
            };
            (tri, st)
        }
        CaseTag::C2 => {
            let sig = thresholds.sigma.unwrap_or_default();
            let (t1, t2) = if b > 0.0 {
                (Conditional { sign: pos, when: Interval::new(0.0, sig) }, Constant { sign: neg })
            } else {
                (Constant { sign: pos }, Conditional { sign: neg, when: Interval::new(sig, 0.0) })
            };
            let cross = if a == 0.0 {
                IdenticallyZero
            } else {
                Constant { sign: sign_a }
            };
            let tri = TriangleSigns { t1, t2, t3: cross, t4: cross };
            let st = if a == 0.0 {
                if b > 0.0 {
                    strip(0.0, inf, StripSign::Nonnegative)
                } else {
                    strip(-inf, 0.0, StripSign::Nonpositive)
                }
            } else if a > 0.0 && b > 0.0 {
                strip(0.0, sig, StripSign::Nonnegative)
            } else if a > 0.0 {
                strip(0.0, inf, StripSign::Nonnegative)
            } else if b < 0.0 {
                strip(sig, 0.0, StripSign::Nonpositive)
            } else {
                strip(-inf, 0.0, StripSign::Nonpositive)
            };
            (tri, st)
        }
        CaseTag::C3plus => {
            // diagonal branch 1 - a(t - s)
            let (t1, t2) = if a > 0.0 {
                (Conditional { sign: pos, when: Interval::new(0.0, 1.0 / a) }, Constant { sign: neg })
            } else {
                (Constant { sign: pos }, Conditional { sign: neg, when: Interval::new(1.0 / a, 0.0) })
            };
            let tri = TriangleSigns {
                t1,
                t2,
                t3: Constant { sign: sign_a },
                t4: Constant { sign: sign_a },
            };
            let st = if a > 0.0 {
                strip(0.0, 1.0 / a, StripSign::Nonnegative)
            } else {
                strip(1.0 / a, 0.0, StripSign::Nonpositive)
            };
            (tri, st)
        }
        CaseTag::C3minus => {
            // diagonal branch 1 + a(t - s)
            let tri = if a == 0.0 {
                TriangleSigns {
                    t1: Constant { sign: pos },
                    t2: Constant { sign: neg },
                    t3: IdenticallyZero,
                    t4: IdenticallyZero,
                }
            } else if a > 0.0 {
                TriangleSigns {
                    t1: Constant { sign: pos },
                    t2: Conditional { sign: neg, when: Interval::new(-1.0 / a, 0.0) },
                    t3: Constant { sign: pos },
                    t4: Constant { sign: pos },
                }
            } else {
                TriangleSigns {
                    t1: Conditional { sign: pos, when: Interval::new(0.0, -1.0 / a) },
                    t2: Constant { sign: neg },
                    t3: Constant { sign: neg },
                    t4: Constant { sign: neg },
                }
            };
            let st = if a >= 0.0 {
                strip(0.0, inf, StripSign::Nonnegative)
            } else {
                strip(-inf, 0.0, StripSign::Nonpositive)
            };
            (tri, st)
        }
    };

    Ok(SignReport {
        case,
        triangles,
        strip,
        thresholds,
    })
}
