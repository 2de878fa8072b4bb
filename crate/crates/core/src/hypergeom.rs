//! Power-series evaluation of the Gauss hypergeometric function
//! `₂F₁(a,b;c;z)` with complex parameters on the unit disk, together with the
//! shifted function `f(z) = z·₂F₁(a,b;c;z)` and its logarithmic derivative.
//!
//! Only the direct series is used. There is no analytic continuation, so every
//! evaluation point must satisfy `|z| <= radius_cap < 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from a nonpositive integer below which `c` is rejected.
pub const POLE_TOL: f64 = 1e-12;

/// Absolute threshold on `|F(z)|` below which `F` is treated as vanishing.
pub const ZERO_TOL: f64 = 1e-12;

/// Number of consecutive negligible terms required before the series is cut.
const QUIET_TERMS: usize = 3;

/// The parameter triple `(a, b, c)` of `₂F₁(a,b;c;z)`.
///
/// `c` is never within [`POLE_TOL`] of `0, -1, -2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct HypergeomParams {
    a: Complex64,
    b: Complex64,
    c: Complex64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: [f64; 2],
    b: [f64; 2],
    c: [f64; 2],
}

impl TryFrom<RawParams> for HypergeomParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        HypergeomParams::new(
            Complex64::new(raw.a[0], raw.a[1]),
            Complex64::new(raw.b[0], raw.b[1]),
            Complex64::new(raw.c[0], raw.c[1]),
        )
    }
}

impl From<HypergeomParams> for RawParams {
    fn from(p: HypergeomParams) -> Self {
        RawParams {
            a: [p.a.re, p.a.im],
            b: [p.b.re, p.b.im],
            c: [p.c.re, p.c.im],
        }
    }
}

/// True when `x` lies within [`POLE_TOL`] of a nonpositive integer.
pub fn is_nonpositive_integer(x: Complex64) -> bool {
    if x.im.abs() > POLE_TOL || !x.re.is_finite() {
        return false;
    }
    let nearest = x.re.round();
    nearest <= 0.0 && (x.re - nearest).abs() <= POLE_TOL
}

impl HypergeomParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if is_nonpositive_integer(c) {
            return Err(Error::InvalidC { c });
        }
        Ok(Self { a, b, c })
    }

    /// Real-parameter shorthand.
    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    /// The `p = a + b + 1 - c = 0` family, `c = a + b + 1`.
    pub fn with_p_zero(a: Complex64, b: Complex64) -> Result<Self> {
        let c = a + b + 1.0;
        if is_nonpositive_integer(c) {
            return Err(Error::InvalidParams(format!(
                "a + b = {} is a negative integer",
                a + b
            )));
        }
        Self::new(a, b, c)
    }

    /// Builds the triple without checking `c`; only used to record the inputs
    /// of a certificate whose conditions already fail.
    pub(crate) fn unchecked(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    /// `(a+1, b+1, c+1)`, the parameters of `F'` up to the factor `ab/c`.
    pub fn shifted(&self) -> Self {
        Self {
            a: self.a + 1.0,
            b: self.b + 1.0,
            c: self.c + 1.0,
        }
    }

    pub fn derived(&self) -> DerivedScalars {
        DerivedScalars::of(self)
    }

    pub fn p(&self) -> Complex64 {
        self.derived().p
    }
}

/// Scalars derived from the parameter triple. Always recomputed from the
/// triple, never cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScalars {
    pub p: Complex64,
}

impl DerivedScalars {
    pub fn of(params: &HypergeomParams) -> Self {
        Self {
            p: params.a + params.b + 1.0 - params.c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesSettings {
    /// Relative truncation tolerance.
    pub tol: f64,
    pub max_terms: usize,
    pub radius_cap: f64,
    /// Absolute threshold for detecting `F(z) = 0`.
    pub zero_tol: f64,
}

impl Default for SeriesSettings {
    fn default() -> Self {
        Self {
            tol: 1e-16,
            max_terms: 200_000,
            radius_cap: 0.995,
            zero_tol: ZERO_TOL,
        }
    }
}

impl SeriesSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidSettings("series tol must be > 0".into()));
        }
        if !(self.radius_cap > 0.0 && self.radius_cap < 1.0) {
            return Err(Error::InvalidSettings(
                "radius_cap must lie in (0, 1)".into(),
            ));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidSettings("max_terms must be positive".into()));
        }
        if !(self.zero_tol >= 0.0) {
            return Err(Error::InvalidSettings("zero_tol must be >= 0".into()));
        }
        Ok(())
    }

    fn check_radius(&self, z: Complex64, cap: f64) -> Result<()> {
        let modulus = z.norm();
        // a few ulps of slack so that `r e^{iθ}` with `r = cap` is accepted
        if !(modulus <= cap * (1.0 + 4.0 * f64::EPSILON)) {
            return Err(Error::RadiusExceeded { modulus, cap });
        }
        Ok(())
    }
}

/// Sums `Σ (a)_n (b)_n / ((c)_n n!) z^n` using the term ratio
/// `(a+n)(b+n) / ((c+n)(n+1)) · z`.
///
/// The sum is cut once [`QUIET_TERMS`] consecutive terms are below
/// `tol·|partial sum|` while the term ratio is below one, so a run of tiny
/// terms ahead of a growing stretch (e.g. `a` close to a negative integer)
/// does not stop it early. A terminating series (exact zero term) stops at once.
fn series_sum(a: Complex64, b: Complex64, c: Complex64, z: Complex64, s: &SeriesSettings) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0usize;
    for n in 0..s.max_terms {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        if term.norm_sqr() == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.norm() <= s.tol * sum.norm() && ratio.norm() < 1.0 {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NoConvergence {
        z,
        max_terms: s.max_terms,
    })
}

/// `₂F₁(a,b;c;z)` by direct power series, `|z| <= radius_cap`.
pub fn gauss_2f1(params: &HypergeomParams, z: Complex64, settings: &SeriesSettings) -> Result<Complex64> {
    settings.check_radius(z, settings.radius_cap)?;
    series_sum(params.a, params.b, params.c, z, settings)
}

/// `d/dz ₂F₁(a,b;c;z) = (ab/c)·₂F₁(a+1,b+1;c+1;z)`.
pub fn gauss_2f1_derivative(params: &HypergeomParams, z: Complex64, settings: &SeriesSettings) -> Result<Complex64> {
    settings.check_radius(z, settings.radius_cap)?;
    let factor = params.a * params.b / params.c;
    if factor == Complex64::new(0.0, 0.0) {
        return Ok(factor);
    }
    let up = params.shifted();
    Ok(factor * series_sum(up.a, up.b, up.c, z, settings)?)
}

/// The shifted function `f(z) = z·₂F₁(a,b;c;z)`.
pub fn shifted_f(params: &HypergeomParams, z: Complex64, settings: &SeriesSettings) -> Result<Complex64> {
    Ok(z * gauss_2f1(params, z, settings)?)
}

/// `q(z) = z f'(z) / f(z) = 1 + z F'(z) / F(z)`, exactly `1` at the origin.
pub fn log_derivative_q(params: &HypergeomParams, z: Complex64, settings: &SeriesSettings) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let f = gauss_2f1(params, z, settings)?;
    let modulus = f.norm();
    if !(modulus > settings.zero_tol) {
        return Err(Error::ZeroOfF { z, modulus });
    }
    let df = gauss_2f1_derivative(params, z, settings)?;
    Ok(1.0 + z * df / f)
}

/// Residual of the hypergeometric equation
/// `z(1-z)F'' + [c - (a+b+1)z]F' - abF`, with `F''` from applying the
/// derivative formula twice. Requires `|z| <= 0.9·radius_cap`.
pub fn ode_residual(params: &HypergeomParams, z: Complex64, settings: &SeriesSettings) -> Result<Complex64> {
    settings.check_radius(z, 0.9 * settings.radius_cap)?;
    let (a, b, c) = (params.a, params.b, params.c);
    let f = series_sum(a, b, c, z, settings)?;
    let df = gauss_2f1_derivative(params, z, settings)?;
    let second_factor = a * b / c * (a + 1.0) * (b + 1.0) / (c + 1.0);
    let d2f = if second_factor == Complex64::new(0.0, 0.0) {
        second_factor
    } else {
        second_factor * series_sum(a + 2.0, b + 2.0, c + 2.0, z, settings)?
    };
    Ok((1.0 - z) * z * d2f + (c - (a + b + 1.0) * z) * df - a * b * f)
}
