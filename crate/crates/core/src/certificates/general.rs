//! The general boundary criterion for an arbitrary admissible `Q`, checked on a
//! sampled boundary grid, and the convexity counterpart obtained by shifting the
//! parameters by one.
//!
//! With `D(ζ) = -2Re[(pQ(ζ) + ab)·conj(ζQ'(ζ))]` the criterion asks for
//! `D(ζ) > 0` and `|B(ζ)|² - |A(ζ)|² <= D(ζ)` on the whole circle minus the
//! exceptional points. A finite grid can only produce evidence, so a passing
//! certificate from here is labelled grid-consistent.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    certify_spirallike, certify_starlike_order, certify_strong_starlike, is_real, num, Builder, Certificate,
    CertificateKind, REAL_TOL,
};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomParams;
use crate::oracles::{ab_difference_expanded, LineSearchSettings};
use crate::shape::{admissibility_vi, boundary_q, boundary_zq_prime, BoundaryPoint, ShapeClass};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundaryGridSettings {
    /// Samples of `θ` (per sign of `θ` for strong starlikeness).
    pub n_theta: usize,
    /// Half-width of the excluded neighbourhood around each exceptional point.
    pub theta_min: f64,
    /// Tolerance on the normalized inequalities.
    pub tol: f64,
}

impl Default for BoundaryGridSettings {
    fn default() -> Self {
        Self {
            n_theta: 4096,
            theta_min: 1e-4,
            tol: 1e-9,
        }
    }
}

impl BoundaryGridSettings {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 2 {
            return Err(Error::InvalidSettings("n_theta must be >= 2".into()));
        }
        if !(self.theta_min > 0.0 && self.theta_min < PI / 4.0) {
            return Err(Error::InvalidSettings("theta_min must lie in (0, pi/4)".into()));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidSettings("tol must be >= 0".into()));
        }
        Ok(())
    }

    fn points(&self, class: &ShapeClass) -> Vec<BoundaryPoint> {
        let n = self.n_theta;
        let lerp = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
        if class.is_spiral_type() {
            // exceptional point ζ = 1
            (0..n)
                .filter_map(|k| BoundaryPoint::spiral(lerp(self.theta_min, 2.0 * PI - self.theta_min, k)).ok())
                .collect()
        } else {
            // exceptional points ζ = ±1
            let mut out = Vec::with_capacity(2 * n);
            for sign in [1.0, -1.0] {
                out.extend((0..n).filter_map(|k| {
                    BoundaryPoint::strong(sign * lerp(self.theta_min, PI - self.theta_min, k)).ok()
                }));
            }
            out
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub theta: f64,
    pub s: f64,
    pub eps: f64,
    /// `D(ζ) = -2Re[(pQ + ab)·conj(ζQ')]`.
    pub d: f64,
    /// `|B(ζ)|² - |A(ζ)|²`.
    pub ab_diff: f64,
    /// `|B - A| = |pQ + ab|`.
    pub a_b_gap: f64,
    /// `D / (1 + |pQ + ab|·|ζQ'|)`.
    pub d_normalized: f64,
    /// `(D - (|B|² - |A|²)) / (1 + |D| + ||B|² - |A|²|)`.
    pub margin_normalized: f64,
}

/// Evaluates both sides of the boundary criterion on the grid.
pub fn boundary_profile(class: &ShapeClass, params: &HypergeomParams, grid: &BoundaryGridSettings) -> Vec<BoundarySample> {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let p = params.p();
    let ab = a * b;
    grid.points(class)
        .into_iter()
        .map(|pt| {
            let w = boundary_q(class, &pt);
            let zq = boundary_zq_prime(class, &pt);
            let gap = p * w + ab;
            let d = -2.0 * (gap * zq.conj()).re;
            let ab_diff = ab_difference_expanded(w, a, b, c);
            BoundarySample {
                theta: pt.theta,
                s: pt.s,
                eps: pt.eps,
                d,
                ab_diff,
                a_b_gap: gap.norm(),
                d_normalized: d / (1.0 + gap.norm() * zq.norm()),
                margin_normalized: (d - ab_diff) / (1.0 + d.abs() + ab_diff.abs()),
            }
        })
        .collect()
}

fn locate(sample: &BoundarySample) -> String {
    format!("theta = {}, s = {}, eps = {}", num(sample.theta), num(sample.s), sample.eps)
}

/// The general criterion checked on a boundary grid. `relaxed` replaces
/// `D > 0` by `D >= 0` at points where `A(ζ) != B(ζ)`.
pub fn certify_general(
    class: &ShapeClass,
    params: &HypergeomParams,
    grid: &BoundaryGridSettings,
    relaxed: bool,
) -> Result<Certificate> {
    grid.validate()?;
    let profile = boundary_profile(class, params, grid);
    let mut cert = Builder::new(CertificateKind::GeneralMain, *params, *class);

    let adm = admissibility_vi(class);
    cert.check(
        "(vi) admissibility at zeta = 1",
        adm.value.map(super::cnum).unwrap_or_else(|| "n/a".into()),
        "outside [0, 1]",
        adm.ok,
    );
    if let Some(note) = adm.note {
        cert.note(note);
    }

    let tol = grid.tol;
    let d_ok = |x: &BoundarySample| {
        if relaxed {
            x.d_normalized >= -tol && (x.d_normalized > tol || x.a_b_gap > tol)
        } else {
            x.d_normalized > tol
        }
    };
    let worst_d = profile
        .iter()
        .min_by(|x, y| x.d_normalized.total_cmp(&y.d_normalized))
        .expect("grid is non-empty");
    let bad_d = profile.iter().filter(|x| !d_ok(x)).count();
    cert.check(
        if relaxed {
            "D(zeta) >= 0 with A != B where D = 0"
        } else {
            "D(zeta) > 0"
        },
        format!("min normalized D = {} at {}", num(worst_d.d_normalized), locate(worst_d)),
        format!("{} on every grid point ({bad_d} of {} fail)", if relaxed { ">= 0" } else { "> 0" }, profile.len()),
        bad_d == 0,
    );

    let worst_m = profile
        .iter()
        .min_by(|x, y| x.margin_normalized.total_cmp(&y.margin_normalized))
        .expect("grid is non-empty");
    let bad_m = profile.iter().filter(|x| x.margin_normalized < -tol).count();
    cert.check(
        "|B|^2 - |A|^2 <= D(zeta)",
        format!("min normalized D - (|B|^2 - |A|^2) = {} at {}", num(worst_m.margin_normalized), locate(worst_m)),
        format!(">= 0 on every grid point ({bad_m} of {} fail)", profile.len()),
        bad_m == 0,
    );

    let p = params.p();
    if let Some(mu) = class.mu() {
        if !is_real(p) {
            cert.note("p is not real: D(zeta) carries a term linear in s with no matching quadratic term, so D changes sign for large |s|");
        } else if (p.re * mu.im).abs() > REAL_TOL * (1.0 + mu.norm()) {
            cert.note(format!(
                "p Im(mu) = {} != 0: |B|^2 - |A|^2 has the cubic term -2p Im(mu)|mu|^2 s^3 while D is quadratic in s; the criterion can only hold for lambda = 0 or p = 0",
                num(p.re * mu.im)
            ));
        }
    }
    cert.note(format!(
        "grid-consistent check on {} boundary points (theta_min = {}); sampled evidence, not a proof",
        profile.len(),
        num(grid.theta_min)
    ));
    Ok(cert.finish())
}

/// Convexity counterpart: `g(z) = (c/(ab))(₂F₁(a,b;c;z) - 1)` belongs to the
/// convex class of `φ` when `z·₂F₁(a+1,b+1;c+1;z)` belongs to `S*(φ)`; the
/// latter is delegated to the matching starlike-type checker.
pub fn certify_convexity(class: &ShapeClass, params: &HypergeomParams) -> Result<Certificate> {
    let ab = params.a() * params.b();
    if ab == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParams("ab = 0".into()));
    }
    let up = params.shifted();
    let inner = match *class {
        ShapeClass::StarlikeOrder { alpha } => certify_starlike_order(&up, alpha),
        ShapeClass::StronglyStarlike { alpha } => {
            certify_strong_starlike(&up, alpha, &LineSearchSettings::default())
        }
        ShapeClass::SpirallikeOrder { lambda, alpha } => {
            if lambda == 0.0 {
                certify_starlike_order(&up, alpha)
            } else if up.p().norm() <= REAL_TOL * (1.0 + up.c().norm()) {
                certify_spirallike(up.a(), up.b(), lambda, alpha)
            } else {
                certify_general(class, &up, &BoundaryGridSettings::default(), false)
            }
        }
    };
    match inner {
        Ok(inner) => Ok(wrap_convexity(class, params, inner)),
        Err(Error::OracleInconclusive {
            min_value,
            argmin_s,
            certificate,
        }) => Err(Error::OracleInconclusive {
            min_value,
            argmin_s,
            certificate: Box::new(wrap_convexity(class, params, *certificate)),
        }),
        Err(e) => Err(e),
    }
}

fn wrap_convexity(class: &ShapeClass, params: &HypergeomParams, inner: Certificate) -> Certificate {
    let mut cert = Builder::new(CertificateKind::ConvexityWrapper, *params, *class);
    for c in &inner.conditions {
        cert.check(&format!("[{:?}] {}", inner.kind, c.name), c.value.clone(), c.threshold.clone(), c.pass);
    }
    cert.note(format!(
        "delegated to {:?} with (a+1, b+1, c+1); certifies (c/(ab))(F(z) - 1) in the convex class of phi",
        inner.kind
    ));
    for n in inner.notes {
        cert.note(n);
    }
    cert.finish()
}
