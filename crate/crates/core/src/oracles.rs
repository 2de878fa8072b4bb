//! Brute-force checks that back the closed-form certificates: the expansion of
//! `|B|² - |A|²`, exact and sampled nonnegativity of a real quadratic, a
//! minimizer over `s ∈ (0, ∞)`, and the `As^α + B + Cs^{-α} <= K(s + 1/s)` bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `|B|² - |A|²` from the definitions `A = w(w + c - 1)`, `B = (w + a)(w + b)`.
pub fn ab_difference_direct(w: Complex64, a: Complex64, b: Complex64, c: Complex64) -> f64 {
    ((w + a) * (w + b)).norm_sqr() - (w * (w + c - 1.0)).norm_sqr()
}

/// `|B|² - |A|²` in expanded form:
/// `|w|²(2Re[p w̄] + |a|² + |b|² - |c-1|²) + (2Re[a w̄] + |a|²)(2Re[b w̄] + |b|²)`.
pub fn ab_difference_expanded(w: Complex64, a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let p = a + b + 1.0 - c;
    let wc = w.conj();
    let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
    w.norm_sqr() * (2.0 * (p * wc).re + a2 + b2 - (c - 1.0).norm_sqr())
        + (2.0 * (a * wc).re + a2) * (2.0 * (b * wc).re + b2)
}

pub fn ab_identity_residual(w: Complex64, a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (ab_difference_direct(w, a, b, c) - ab_difference_expanded(w, a, b, c)).abs()
}

/// `Ls² - 2Ms + N >= 0` for all real `s`.
pub fn quadratic_nonneg_exact(l: f64, m: f64, n: f64) -> bool {
    l >= 0.0 && n >= 0.0 && l * n - m * m >= 0.0
}

/// Sampled counterpart of [`quadratic_nonneg_exact`].
///
/// With `s = tan u`, `cos²u·(Ls² - 2Ms + N) = L sin²u - 2M sin u cos u + N cos²u`,
/// which is bounded on `u ∈ [-π/2, π/2]`; the endpoints give the `s → ±∞`
/// coefficient `L`. The minimum over `n_points` samples is polished by golden
/// section around the best sample.
pub fn quadratic_nonneg_sampled(l: f64, m: f64, n: f64, n_points: usize) -> bool {
    let n_points = n_points.max(8);
    let g = |u: f64| {
        let (sin, cos) = u.sin_cos();
        l * sin * sin - 2.0 * m * sin * cos + n * cos * cos
    };
    let half = std::f64::consts::FRAC_PI_2;
    let step = 2.0 * half / (n_points - 1) as f64;
    let (mut best_u, mut best) = (-half, g(-half));
    for k in 1..n_points {
        let u = -half + k as f64 * step;
        let v = g(u);
        if v < best {
            best = v;
            best_u = u;
        }
    }
    let (_, refined) = golden_section_min(g, best_u - step, best_u + step, 80);
    let min = best.min(refined);
    let scale = 1f64.max(l.abs()).max(m.abs()).max(n.abs());
    min >= -1e-9 * scale
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LineSearchSettings {
    pub s_min: f64,
    pub s_max: f64,
    pub n_log_points: usize,
    pub refine_iters: usize,
    pub min_margin: f64,
}

impl Default for LineSearchSettings {
    fn default() -> Self {
        Self {
            s_min: 1e-8,
            s_max: 1e8,
            n_log_points: 2000,
            refine_iters: 60,
            min_margin: 1e-9,
        }
    }
}

impl LineSearchSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_min > 0.0 && self.s_min < self.s_max && self.s_max.is_finite()) {
            return Err(Error::InvalidSettings("need 0 < s_min < s_max < ∞".into()));
        }
        if self.n_log_points < 16 {
            return Err(Error::InvalidSettings("n_log_points must be >= 16".into()));
        }
        if !(self.min_margin >= 0.0) {
            return Err(Error::InvalidSettings("min_margin must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointVerdict {
    SafeBothEnds,
    DivergesAtZero,
    DivergesAtInfinity,
}

/// One term `coeff·s^exponent` of a residual's power expansion, used to decide
/// the sign of the residual beyond the sampled range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub exponent: f64,
    pub coeff: f64,
}

impl PowerTerm {
    pub fn new(exponent: f64, coeff: f64) -> Self {
        Self { exponent, coeff }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimizerResult {
    pub min_value: f64,
    pub argmin_s: f64,
    pub endpoint_verdict: EndpointVerdict,
    pub conclusive: bool,
}

impl MinimizerResult {
    /// Residual strictly positive on the sampled range and at both tails.
    pub fn certifies_positive(&self, margin: f64) -> bool {
        self.conclusive && self.min_value > margin && self.endpoint_verdict == EndpointVerdict::SafeBothEnds
    }
}

/// Merges terms with equal exponents and drops coefficients that are rounding
/// noise relative to the largest one.
fn significant_terms(tails: &[PowerTerm]) -> Vec<PowerTerm> {
    let mut merged: Vec<PowerTerm> = Vec::new();
    for t in tails {
        match merged.iter_mut().find(|m| (m.exponent - t.exponent).abs() <= 1e-12) {
            Some(m) => m.coeff += t.coeff,
            None => merged.push(*t),
        }
    }
    let scale = merged.iter().map(|t| t.coeff.abs()).fold(0.0, f64::max);
    merged.retain(|t| t.coeff.abs() > 1e-12 * scale);
    merged
}

/// Sign of the residual as `s → 0⁺` and `s → ∞` from its dominant power terms.
pub fn tail_verdict(tails: &[PowerTerm]) -> EndpointVerdict {
    let terms = significant_terms(tails);
    let at_zero = terms.iter().min_by(|x, y| x.exponent.total_cmp(&y.exponent));
    let at_inf = terms.iter().max_by(|x, y| x.exponent.total_cmp(&y.exponent));
    match (at_zero, at_inf) {
        (Some(t), _) if t.coeff < 0.0 => EndpointVerdict::DivergesAtZero,
        (_, Some(t)) if t.coeff < 0.0 => EndpointVerdict::DivergesAtInfinity,
        _ => EndpointVerdict::SafeBothEnds,
    }
}

/// Minimizes `residual` over `[s_min, s_max]` on a log-spaced grid, then runs
/// golden-section refinement (in `ln s`) around the three smallest samples.
///
/// `tails` describes the residual's power expansion and decides the verdict
/// beyond the sampled range; with no tails the verdict falls back to the sign
/// of the residual at the two ends of the range.
pub fn minimize_on_positive_line(
    residual: impl Fn(f64) -> f64,
    settings: &LineSearchSettings,
    tails: &[PowerTerm],
) -> Result<MinimizerResult> {
    settings.validate()?;
    let n = settings.n_log_points;
    let (x_lo, x_hi) = (settings.s_min.ln(), settings.s_max.ln());
    let dx = (x_hi - x_lo) / (n - 1) as f64;
    let at = |k: usize| if k + 1 == n { x_hi } else { x_lo + k as f64 * dx };

    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let s = at(k).exp();
        let v = residual(s);
        if !v.is_finite() {
            return Err(Error::NonFinite { s });
        }
        samples.push(v);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| samples[i].total_cmp(&samples[j]).then(i.cmp(&j)));

    let mut best_s = at(order[0]).exp();
    let mut best = samples[order[0]];
    for &k in order.iter().take(3) {
        let lo = at(k.saturating_sub(1));
        let hi = at((k + 1).min(n - 1));
        let (x, v) = golden_section_min(|x| residual(x.exp()), lo, hi, settings.refine_iters);
        if !v.is_finite() {
            return Err(Error::NonFinite { s: x.exp() });
        }
        let s = x.exp();
        if v < best || (v == best && s < best_s) {
            best = v;
            best_s = s;
        }
    }

    let endpoint_verdict = if tails.is_empty() {
        if samples[0] < -settings.min_margin {
            EndpointVerdict::DivergesAtZero
        } else if samples[n - 1] < -settings.min_margin {
            EndpointVerdict::DivergesAtInfinity
        } else {
            EndpointVerdict::SafeBothEnds
        }
    } else {
        tail_verdict(tails)
    };

    Ok(MinimizerResult {
        min_value: best,
        argmin_s: best_s,
        endpoint_verdict,
        conclusive: best.abs() > settings.min_margin,
    })
}

/// The bound as literally stated: `B/2 + max{A, C} <= K`.
///
/// On its own it does not imply `As^α + B + Cs^{-α} <= K(s + 1/s)`: with
/// `A = C = 2, B = -2, K = 1, α = 0.9` the left side exceeds the right at `s = 4`.
pub fn half_plane_bound_stated(a: f64, b: f64, c: f64, k: f64) -> bool {
    b / 2.0 + a.max(c) <= k
}

/// Sufficient condition for `As^α + B + Cs^{-α} <= K(s + 1/s)` on `s > 0`:
/// `B/2 + max{A, C} <= K` together with `max{A, C} <= K`.
///
/// With `m = max{A, C}` and `t = s + 1/s >= 2`, since `2 <= s^α + s^{-α} <= t`
/// the left side is at most `B + m t` when `m >= 0` and at most `B + 2m` when
/// `m < 0`. `B + m t <= K t` for every `t >= 2` exactly when `B <= 2(K - m)`
/// and `m <= K`. Returns `false` outside the
/// lemma's hypotheses `K > 0`, `0 < α < 1`.
pub fn half_plane_bound_check(a: f64, b: f64, c: f64, k: f64, alpha: f64) -> bool {
    if !(k > 0.0 && alpha > 0.0 && alpha < 1.0) {
        return false;
    }
    half_plane_bound_stated(a, b, c, k) && a.max(c) <= k
}
