//! The starlike-type classes `S*(φ)` handled by the crate, described by their
//! generating functions `φ = 1 + Q` on the unit disk.
//!
//! Starlike of order `α` is the spirallike family with `λ = 0`; both tags go
//! through the same arithmetic so they agree bit for bit.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance of the real-interval test in [`admissibility_vi`].
const INTERVAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawClass")]
pub enum ShapeClass {
    /// `Re q > α`, `α ∈ [0,1)`.
    StarlikeOrder { alpha: f64 },
    /// `|arg q| < πα/2`, `α ∈ (0,1)`.
    StronglyStarlike { alpha: f64 },
    /// `Re[e^{-iλ} q] > α cos λ`, `|λ| < π/2`, `α ∈ [0,1)`.
    SpirallikeOrder { lambda: f64, alpha: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawClass {
    StarlikeOrder { alpha: f64 },
    StronglyStarlike { alpha: f64 },
    SpirallikeOrder { lambda: f64, alpha: f64 },
}

impl TryFrom<RawClass> for ShapeClass {
    type Error = Error;

    fn try_from(raw: RawClass) -> Result<Self> {
        match raw {
            RawClass::StarlikeOrder { alpha } => ShapeClass::starlike(alpha),
            RawClass::StronglyStarlike { alpha } => ShapeClass::strongly_starlike(alpha),
            RawClass::SpirallikeOrder { lambda, alpha } => ShapeClass::spirallike(lambda, alpha),
        }
    }
}

fn check_order(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("order α = {alpha} is outside [0, 1)")))
    }
}

impl ShapeClass {
    pub fn starlike(alpha: f64) -> Result<Self> {
        check_order(alpha)?;
        Ok(Self::StarlikeOrder { alpha })
    }

    pub fn strongly_starlike(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self::StronglyStarlike { alpha })
        } else {
            Err(Error::InvalidParams(format!("order α = {alpha} is outside (0, 1)")))
        }
    }

    pub fn spirallike(lambda: f64, alpha: f64) -> Result<Self> {
        check_order(alpha)?;
        if !(lambda.abs() < FRAC_PI_2) {
            return Err(Error::InvalidParams(format!(
                "λ = {lambda} is outside (-π/2, π/2)"
            )));
        }
        Ok(Self::SpirallikeOrder { lambda, alpha })
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            Self::StarlikeOrder { alpha }
            | Self::StronglyStarlike { alpha }
            | Self::SpirallikeOrder { alpha, .. } => alpha,
        }
    }

    /// `(λ, α)` for the spirallike-type families, `None` for strong starlikeness.
    pub fn spiral_params(&self) -> Option<(f64, f64)> {
        match *self {
            Self::StarlikeOrder { alpha } => Some((0.0, alpha)),
            Self::SpirallikeOrder { lambda, alpha } => Some((lambda, alpha)),
            Self::StronglyStarlike { .. } => None,
        }
    }

    /// `μ = (1-α) e^{iλ} cos λ` for the spirallike-type families.
    pub fn mu(&self) -> Option<Complex64> {
        self.spiral_params().map(|(lambda, alpha)| spiral_mu(lambda, alpha))
    }

    pub fn is_spiral_type(&self) -> bool {
        self.spiral_params().is_some()
    }

    pub fn label(&self) -> String {
        match *self {
            Self::StarlikeOrder { alpha } => format!("starlike of order {alpha}"),
            Self::StronglyStarlike { alpha } => format!("strongly starlike of order {alpha}"),
            Self::SpirallikeOrder { lambda, alpha } => {
                format!("{lambda}-spirallike of order {alpha}")
            }
        }
    }
}

pub(crate) fn spiral_mu(lambda: f64, alpha: f64) -> Complex64 {
    (1.0 - alpha) * Complex64::from_polar(1.0, lambda) * lambda.cos()
}

/// A point `ζ = e^{iθ}` of the unit circle with the cotangent coordinate used by
/// the boundary formulas.
///
/// Spirallike type: `θ ∈ (0, 2π)`, `s = cot(θ/2) ∈ ℝ`, `ε = +1`.
/// Strongly starlike: `θ ∈ (-π, π) \ {0}`, `s = cot(|θ|/2) > 0`, `ε = sgn θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub zeta: Complex64,
    pub s: f64,
    pub eps: f64,
}

impl BoundaryPoint {
    /// Parametrization for the spirallike-type families.
    pub fn spiral(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 2.0 * PI) {
            return Err(Error::InvalidParams(format!(
                "θ = {theta} is outside (0, 2π)"
            )));
        }
        Ok(Self {
            theta,
            zeta: Complex64::from_polar(1.0, theta),
            s: 1.0 / (theta / 2.0).tan(),
            eps: 1.0,
        })
    }

    /// Parametrization for strong starlikeness.
    pub fn strong(theta: f64) -> Result<Self> {
        if !(theta.abs() < PI && theta != 0.0) {
            return Err(Error::InvalidParams(format!(
                "θ = {theta} is outside (-π, π) \\ {{0}}"
            )));
        }
        Ok(Self {
            theta,
            zeta: Complex64::from_polar(1.0, theta),
            s: 1.0 / (theta.abs() / 2.0).tan(),
            eps: theta.signum(),
        })
    }

    /// Parametrization appropriate to `class`.
    pub fn for_class(class: &ShapeClass, theta: f64) -> Result<Self> {
        if class.is_spiral_type() {
            Self::spiral(theta)
        } else {
            Self::strong(theta)
        }
    }

    /// Inverse map for the spirallike-type families: `θ = 2·arccot s`.
    pub fn spiral_from_s(s: f64) -> Self {
        let theta = 2.0 * 1.0f64.atan2(s);
        Self {
            theta,
            zeta: Complex64::from_polar(1.0, theta),
            s,
            eps: 1.0,
        }
    }

    /// Inverse map for strong starlikeness, `s > 0`, `ε = ±1`.
    pub fn strong_from_s(s: f64, eps: f64) -> Self {
        let theta = eps.signum() * 2.0 * (1.0 / s).atan();
        Self {
            theta,
            zeta: Complex64::from_polar(1.0, theta),
            s,
            eps: eps.signum(),
        }
    }
}

/// The generating function `φ(z)`, `|z| < 1`.
pub fn phi(class: &ShapeClass, z: Complex64) -> Complex64 {
    1.0 + q_class(class, z)
}

/// `Q = φ - 1`.
pub fn q_class(class: &ShapeClass, z: Complex64) -> Complex64 {
    match class.mu() {
        Some(mu) => 2.0 * mu * z / (1.0 - z),
        None => ((1.0 + z) / (1.0 - z)).powf(class.alpha()) - 1.0,
    }
}

/// Boundary value `Q(ζ)` in closed form.
pub fn boundary_q(class: &ShapeClass, point: &BoundaryPoint) -> Complex64 {
    match class.mu() {
        Some(mu) => mu * Complex64::new(-1.0, point.s),
        None => {
            let alpha = class.alpha();
            let beta = point.eps * PI * alpha / 2.0;
            Complex64::from_polar(point.s.powf(alpha), beta) - 1.0
        }
    }
}

/// Boundary value `ζQ'(ζ)` in closed form.
pub fn boundary_zq_prime(class: &ShapeClass, point: &BoundaryPoint) -> Complex64 {
    let s = point.s;
    match class.mu() {
        Some(mu) => -mu * (1.0 + s * s) / 2.0,
        None => {
            let alpha = class.alpha();
            let gamma = point.eps * PI * (1.0 - alpha) / 2.0;
            -(alpha / 2.0) * Complex64::from_polar(s.powf(alpha) * (s + 1.0 / s), -gamma)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Membership {
    pub passes: bool,
    pub slack: f64,
}

/// Pointwise defining inequality of the class applied to `w = z f'/f`.
pub fn membership_predicate(class: &ShapeClass, w: Complex64) -> Membership {
    let slack = match *class {
        ShapeClass::StronglyStarlike { alpha } => {
            let half_opening = PI * alpha / 2.0;
            if w == Complex64::new(0.0, 0.0) {
                -half_opening
            } else {
                half_opening - w.arg().abs()
            }
        }
        _ => {
            let (lambda, alpha) = class.spiral_params().expect("spiral type");
            (Complex64::from_polar(1.0, -lambda) * w).re - alpha * lambda.cos()
        }
    };
    Membership {
        passes: slack > 0.0,
        slack,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Admissibility {
    pub ok: bool,
    /// `ζ₁P'(ζ₁)` for `P = 1/Q` at `ζ₁ = 1`, when that condition applies.
    pub value: Option<Complex64>,
    pub note: Option<String>,
}

/// Condition (vi) of the admissible class at the pole `ζ₁ = 1`.
///
/// For the spirallike-type families `P = 1/Q = (1-z)/(2μz)`, so
/// `P'(1) = -1/(2μ) = -1/[(1-α)(1+e^{2iλ})]`, which must avoid `[0,1]`.
pub fn admissibility_vi(class: &ShapeClass) -> Admissibility {
    match class.mu() {
        Some(mu) => {
            let value = -1.0 / (2.0 * mu);
            let in_interval = value.im.abs() <= INTERVAL_TOL
                && value.re >= -INTERVAL_TOL
                && value.re <= 1.0 + INTERVAL_TOL;
            Admissibility {
                ok: !in_interval,
                value: Some(value),
                note: None,
            }
        }
        None => Admissibility {
            ok: true,
            value: None,
            note: Some("β_1 = 1/α > 1, condition (vi) vacuous".into()),
        },
    }
}
