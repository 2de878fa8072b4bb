//! Closed-form sufficient conditions for `f(z) = z·₂F₁(a,b;c;z)` to belong to
//! a starlike-type class.
//!
//! Every checker evaluates all of its conditions, even after one fails, and
//! returns the full trace in a [`Certificate`]. A passing certificate is a
//! proof modulo floating point; a failing one says nothing about the function.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hypergeom::HypergeomParams;
use crate::shape::ShapeClass;

mod dispatch;
mod general;
mod spirallike;
mod starlike;
mod strong;

pub use dispatch::{certify, verification_target, CertifyInputs, TheoremKind};
pub use general::{boundary_profile, certify_convexity, certify_general, BoundaryGridSettings, BoundarySample};
pub use spirallike::{certify_spirallike, certify_spirallike_cor1, certify_spirallike_cor2, spirallike_lmn};
pub use starlike::{certify_cor_a2, certify_starlike_order, starlike_lmn};
pub use strong::{
    certify_sst_cor_final, certify_sst_cor_max, certify_sst_cor_p0, certify_strong_starlike, certify_theorem_a,
    p_zero_cubic, strong_cubic, CubicCoefficients,
};

/// `|Im x| <= REAL_TOL·(1 + |x|)` counts as real.
pub const REAL_TOL: f64 = 1e-12;
/// Strict inequalities `x > y` are tested as `x - y > STRICT_TOL`.
pub const STRICT_TOL: f64 = 1e-12;
/// Non-strict inequalities `x >= y` are tested as `x - y >= -NONSTRICT_TOL·scale`.
pub const NONSTRICT_TOL: f64 = 1e-12;
/// Imaginary residue allowed in combinations that are real in exact arithmetic.
pub const RESIDUE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    GeneralMain,
    StarlikeOrderThm,
    CorA2,
    SpirallikeThm,
    SpirallikeCor1,
    SpirallikeCor2,
    StrongStarlikeThm,
    StrongStarlikeCorP0,
    StrongStarlikeCorMax,
    StrongStarlikeCorFinal,
    TheoremA,
    ConvexityWrapper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub value: String,
    pub threshold: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub passed: bool,
    pub params: HypergeomParams,
    pub class: ShapeClass,
    pub conditions: Vec<Condition>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn condition(&self, name_prefix: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name.starts_with(name_prefix))
    }

    /// Name of the first failing condition, if any.
    pub fn first_failure(&self) -> Option<&str> {
        self.conditions.iter().find(|c| !c.pass).map(|c| c.name.as_str())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:?}: {} ({})",
            self.kind,
            if self.passed { "PASSED" } else { "not passed" },
            self.class.label()
        )?;
        for c in &self.conditions {
            writeln!(
                f,
                "  [{}] {} = {}  (need {})",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.value,
                c.threshold
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Accumulates conditions and notes; `passed` is derived, never set.
pub(crate) struct Builder {
    kind: CertificateKind,
    params: HypergeomParams,
    class: ShapeClass,
    conditions: Vec<Condition>,
    notes: Vec<String>,
}

impl Builder {
    pub(crate) fn new(kind: CertificateKind, params: HypergeomParams, class: ShapeClass) -> Self {
        Self {
            kind,
            params,
            class,
            conditions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn check(&mut self, name: &str, value: impl Into<String>, threshold: impl Into<String>, pass: bool) -> bool {
        self.conditions.push(Condition {
            name: name.to_string(),
            value: value.into(),
            threshold: threshold.into(),
            pass,
        });
        pass
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub(crate) fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub(crate) fn finish(self) -> Certificate {
        debug_assert!(!self.conditions.is_empty());
        let passed = !self.conditions.is_empty() && self.conditions.iter().all(|c| c.pass);
        Certificate {
            kind: self.kind,
            passed,
            params: self.params,
            class: self.class,
            conditions: self.conditions,
            notes: self.notes,
        }
    }
}

pub(crate) fn num(x: f64) -> String {
    format!("{x}")
}

pub(crate) fn cnum(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

pub(crate) fn is_real(x: Complex64) -> bool {
    x.im.abs() <= REAL_TOL * (1.0 + x.norm())
}

pub(crate) fn strictly_positive(x: f64) -> bool {
    x > STRICT_TOL
}

/// `x >= 0` up to rounding relative to `scale`.
pub(crate) fn nonnegative(x: f64, scale: f64) -> bool {
    x >= -NONSTRICT_TOL * (1.0 + scale.abs())
}

/// `lhs <= rhs` up to rounding relative to the operands.
pub(crate) fn at_most(lhs: f64, rhs: f64) -> bool {
    lhs - rhs <= NONSTRICT_TOL * (1.0 + lhs.abs() + rhs.abs())
}
