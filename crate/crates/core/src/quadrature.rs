//! Adaptive Gauss–Kronrod integration with breakpoint splitting and graded
//! meshes toward integrable endpoint singularities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
/// Deepest bisection level a subinterval may reach.
pub const MAX_DEPTH: u32 = 60;
const MAX_INTERVALS: usize = 20_000;
/// Pieces of a geometric mesh laid toward a singular endpoint.
const GRADING_LEVELS: i32 = 12;
const GRADING_RATIO: f64 = 0.25;

/// Points where an integrand is discontinuous or unbounded.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Features {
    pub breakpoints: Vec<f64>,
    pub singular_points: Vec<f64>,
}

impl Features {
    pub fn new(mut breakpoints: Vec<f64>, mut singular_points: Vec<f64>) -> Self {
        sort_dedup(&mut breakpoints);
        sort_dedup(&mut singular_points);
        Self {
            breakpoints,
            singular_points,
        }
    }

    pub fn none() -> Self {
        Self::default()
    }

    /// Features of `t ↦ f(-t)`.
    pub fn reflected(&self) -> Self {
        Self::new(
            self.breakpoints.iter().map(|x| -x).collect(),
            self.singular_points.iter().map(|x| -x).collect(),
        )
    }

    pub fn union(&self, other: &Features) -> Self {
        Self::new(
            self.breakpoints.iter().chain(&other.breakpoints).copied().collect(),
            self.singular_points
                .iter()
                .chain(&other.singular_points)
                .copied()
                .collect(),
        )
    }

    /// Features of both `f(t)` and `f(-t)`.
    pub fn symmetrized(&self) -> Self {
        self.union(&self.reflected())
    }

    pub fn is_singular(&self, x: f64) -> bool {
        self.singular_points.contains(&x)
    }

    /// Distance from `x` to the nearest listed point.
    pub fn distance_to(&self, x: f64) -> f64 {
        self.breakpoints
            .iter()
            .chain(&self.singular_points)
            .map(|p| (p - x).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.retain(|x| x.is_finite());
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
}

type ForcingFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Right-hand side `h` of the equation together with its breakpoints and
/// integrable singularities.
#[derive(Clone)]
pub struct Forcing {
    func: Arc<ForcingFn>,
    features: Features,
}

impl fmt::Debug for Forcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Forcing")
            .field("features", &self.features)
            .finish_non_exhaustive()
    }
}

impl Forcing {
    pub fn new<F>(func: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            func: Arc::new(func),
            features: Features::none(),
        }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
    }

    pub fn with_features(mut self, features: Features) -> Self {
        self.features = features;
        self
    }

    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.features = Features::new(breakpoints, self.features.singular_points);
        self
    }

    pub fn with_singular_points(mut self, singular: Vec<f64>) -> Self {
        self.features = Features::new(self.features.breakpoints, singular);
        self
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.func)(t)
    }

    pub fn features(&self) -> &Features {
        &self.features
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.features.breakpoints
    }

    pub fn singular_points(&self) -> &[f64] {
        &self.features.singular_points
    }

    /// `t ↦ self(t) + other(t)` with merged features.
    pub fn sum(&self, other: &Forcing) -> Forcing {
        let (f, g) = (self.func.clone(), other.func.clone());
        Forcing {
            func: Arc::new(move |t| f(t) + g(t)),
            features: self.features.union(&other.features),
        }
    }

    pub fn scaled(&self, k: f64) -> Forcing {
        let f = self.func.clone();
        Forcing {
            func: Arc::new(move |t| k * f(t)),
            features: self.features.clone(),
        }
    }
}

// Gauss–Kronrod 7/15 nodes and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !kronrod.is_finite() {
        return Err(Error::invalid(format!(
            "integrand is not finite on [{lo}, {hi}]; declare singular points or breakpoints"
        )));
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    let mut abs_sum = WGK[7] * fc.abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
        abs_sum += WGK[j] * (fv1[j].abs() + fv2[j].abs());
    }
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}

/// Initial pieces of `[lo, hi]`, graded geometrically toward singular ends.
fn graded_pieces(lo: f64, hi: f64, left_singular: bool, right_singular: bool, out: &mut Vec<(f64, f64)>) {
    match (left_singular, right_singular) {
        (false, false) => out.push((lo, hi)),
        (true, true) => {
            let mid = 0.5 * (lo + hi);
            graded_pieces(lo, mid, true, false, out);
            graded_pieces(mid, hi, false, true, out);
        }
        (true, false) => {
            let len = hi - lo;
            let mut right = hi;
            for k in 1..=GRADING_LEVELS {
                let left = lo + len * GRADING_RATIO.powi(k);
                out.push((left, right));
                right = left;
            }
            out.push((lo, right));
        }
        (false, true) => {
            let len = hi - lo;
            let mut left = lo;
            for k in 1..=GRADING_LEVELS {
                let right = hi - len * GRADING_RATIO.powi(k);
                out.push((left, right));
                left = right;
            }
            out.push((left, hi));
        }
    }
}

/// Oriented integral of `f` from `t1` to `t2`.
///
/// The interval is split at every interior breakpoint and singular point,
/// and pieces adjacent to a singular point are graded geometrically toward
/// it. The Kronrod rule is open, so singular points are never evaluated.
/// The target accuracy is `tol * (1 + |result|)`.
pub fn integrate<F>(f: F, t1: f64, t2: f64, features: &Features, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !t1.is_finite() || !t2.is_finite() {
        return Err(Error::invalid(format!("integration limits must be finite, got [{t1}, {t2}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if t1 == t2 {
        return Ok(0.0);
    }
    if t1 > t2 {
        return integrate(f, t2, t1, features, tol).map(|v| -v);
    }

    let mut cuts = vec![t1];
    cuts.extend(
        features
            .breakpoints
            .iter()
            .chain(&features.singular_points)
            .copied()
            .filter(|&x| x > t1 && x < t2),
    );
    cuts.push(t2);
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup();

    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        graded_pieces(w[0], w[1], features.is_singular(w[0]), features.is_singular(w[1]), &mut pieces);
    }

    let mut heap = BinaryHeap::with_capacity(pieces.len() * 4);
    let mut settled_value = 0.0;
    let mut settled_error = 0.0;
    let mut total = 0.0;
    let mut total_err = 0.0;
    for (lo, hi) in pieces {
        if hi <= lo {
            continue;
        }
        let (value, error) = gk15(&f, lo, hi)?;
        total += value;
        total_err += error;
        heap.push(Panel { lo, hi, value, error, depth: 0 });
    }

    let mut count = heap.len();
    while total_err > tol * (1.0 + total.abs()) {
        let Some(panel) = heap.pop() else { break };
        let mid = 0.5 * (panel.lo + panel.hi);
        if panel.depth >= MAX_DEPTH || count >= MAX_INTERVALS || mid <= panel.lo || mid >= panel.hi {
            settled_value += panel.value;
            settled_error += panel.error;
            continue;
        }
        let (lv, le) = gk15(&f, panel.lo, mid)?;
        let (rv, re) = gk15(&f, mid, panel.hi)?;
        total += lv + rv - panel.value;
        total_err += le + re - panel.error;
        count += 1;
        heap.push(Panel { lo: panel.lo, hi: mid, value: lv, error: le, depth: panel.depth + 1 });
        heap.push(Panel { lo: mid, hi: panel.hi, value: rv, error: re, depth: panel.depth + 1 });
    }

    // recompute the sum to shed accumulated update drift
    let value = settled_value + heap.iter().map(|p| p.value).sum::<f64>();
    let error = settled_error + heap.iter().map(|p| p.error).sum::<f64>();
    if error > tol * (1.0 + value.abs()) {
        return Err(Error::Quadrature {
            estimate: value,
            error_bound: error,
        });
    }
    Ok(value)
}

/// `(1/(n-1)!) ∫_0^t (t-s)^(n-1) φ(s) ds`, the `n`-fold iterated integral of
/// `φ` from the origin.
pub fn iterated_kernel_integral<F>(phi: F, n: usize, t: f64, features: &Features, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if n == 0 {
        return Err(Error::invalid("iterated integral order must be at least 1"));
    }
    let factorial: f64 = (1..n).map(|k| k as f64).product();
    let power = (n - 1) as i32;
    let value = integrate(|s| (t - s).powi(power) * phi(s), 0.0, t, features, tol)?;
    Ok(value / factorial)
}
