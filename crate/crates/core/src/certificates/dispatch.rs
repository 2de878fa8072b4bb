use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    certify_convexity, certify_cor_a2, certify_general, certify_spirallike, certify_spirallike_cor1,
    certify_spirallike_cor2, certify_sst_cor_final, certify_sst_cor_max, certify_sst_cor_p0, certify_starlike_order,
    certify_strong_starlike, certify_theorem_a, BoundaryGridSettings, Certificate,
};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomParams;
use crate::oracles::LineSearchSettings;
use crate::shape::ShapeClass;

/// Which checker to run. The string form is the kebab-case name used on the
/// command line and in scan specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremKind {
    General,
    StarlikeOrder,
    CorA2,
    Spirallike,
    SpirallikeCor1,
    SpirallikeCor2,
    StrongStarlike,
    SstCorP0,
    SstCorMax,
    SstCorFinal,
    TheoremA,
    Convexity,
}

impl TheoremKind {
    pub const ALL: [TheoremKind; 12] = [
        Self::General,
        Self::StarlikeOrder,
        Self::CorA2,
        Self::Spirallike,
        Self::SpirallikeCor1,
        Self::SpirallikeCor2,
        Self::StrongStarlike,
        Self::SstCorP0,
        Self::SstCorMax,
        Self::SstCorFinal,
        Self::TheoremA,
        Self::Convexity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::General => "general",
            Self::StarlikeOrder => "starlike-order",
            Self::CorA2 => "cor-a2",
            Self::Spirallike => "spirallike",
            Self::SpirallikeCor1 => "spirallike-cor1",
            Self::SpirallikeCor2 => "spirallike-cor2",
            Self::StrongStarlike => "strong-starlike",
            Self::SstCorP0 => "sst-cor-p0",
            Self::SstCorMax => "sst-cor-max",
            Self::SstCorFinal => "sst-cor-final",
            Self::TheoremA => "theorem-a",
            Self::Convexity => "convexity",
        }
    }

    /// Checkers that take only `(a, b)` and set `c = a + b + 1`.
    pub fn forces_p_zero(self) -> bool {
        matches!(
            self,
            Self::Spirallike
                | Self::SpirallikeCor1
                | Self::SpirallikeCor2
                | Self::SstCorP0
                | Self::SstCorMax
                | Self::SstCorFinal
                | Self::TheoremA
        )
    }

    /// Checkers that need an explicit class.
    pub fn needs_class(self) -> bool {
        matches!(self, Self::General | Self::Convexity)
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown theorem kind `{s}`")))
    }
}

/// Everything any checker might read. Unused fields are ignored: `c` by the
/// `c = a + b + 1` checkers, `s` by all but `cor-a2`, `class` by all but
/// `general` and `convexity`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyInputs {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub alpha: f64,
    pub lambda: f64,
    /// Common imaginary shift of `b` and `c` for `cor-a2`.
    pub s: f64,
    pub class: Option<ShapeClass>,
    pub line_search: LineSearchSettings,
    pub boundary_grid: BoundaryGridSettings,
    pub relaxed: bool,
}

impl CertifyInputs {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, alpha: f64) -> Self {
        Self {
            a,
            b,
            c,
            alpha,
            lambda: 0.0,
            s: 0.0,
            class: None,
            line_search: LineSearchSettings::default(),
            boundary_grid: BoundaryGridSettings::default(),
            relaxed: false,
        }
    }

    fn params(&self) -> Result<HypergeomParams> {
        HypergeomParams::new(self.a, self.b, self.c)
    }

    fn class(&self, kind: TheoremKind) -> Result<ShapeClass> {
        self.class
            .ok_or_else(|| Error::InvalidParams(format!("theorem `{kind}` needs a class")))
    }

    fn real_abc(&self) -> Result<(f64, f64, f64)> {
        if self.a.im != 0.0 || self.b.im != 0.0 || self.c.im != 0.0 {
            return Err(Error::InvalidParams(
                "cor-a2 takes real a, b, c; pass the imaginary shift as s".into(),
            ));
        }
        Ok((self.a.re, self.b.re, self.c.re))
    }
}

pub fn certify(kind: TheoremKind, inputs: &CertifyInputs) -> Result<Certificate> {
    let (a, b, alpha, lambda) = (inputs.a, inputs.b, inputs.alpha, inputs.lambda);
    match kind {
        TheoremKind::General => certify_general(
            &inputs.class(kind)?,
            &inputs.params()?,
            &inputs.boundary_grid,
            inputs.relaxed,
        ),
        TheoremKind::StarlikeOrder => certify_starlike_order(&inputs.params()?, alpha),
        TheoremKind::CorA2 => {
            let (ar, br, cr) = inputs.real_abc()?;
            Ok(certify_cor_a2(ar, br, cr, inputs.s))
        }
        TheoremKind::Spirallike => certify_spirallike(a, b, lambda, alpha),
        TheoremKind::SpirallikeCor1 => certify_spirallike_cor1(a, b, lambda, alpha),
        TheoremKind::SpirallikeCor2 => certify_spirallike_cor2(a, b, lambda, alpha),
        TheoremKind::StrongStarlike => certify_strong_starlike(&inputs.params()?, alpha, &inputs.line_search),
        TheoremKind::SstCorP0 => certify_sst_cor_p0(a, b, alpha, &inputs.line_search),
        TheoremKind::SstCorMax => certify_sst_cor_max(a, b, alpha),
        TheoremKind::SstCorFinal => certify_sst_cor_final(a, b, alpha),
        TheoremKind::TheoremA => certify_theorem_a(a, b, alpha),
        TheoremKind::Convexity => certify_convexity(&inputs.class(kind)?, &inputs.params()?),
    }
}

/// The `(class, params)` whose disk behaviour a passing certificate of `kind`
/// asserts. For `convexity` this is the shifted function `z·₂F₁(a+1,b+1;c+1;z)`,
/// whose starlikeness is equivalent to the convexity claim.
pub fn verification_target(kind: TheoremKind, inputs: &CertifyInputs) -> Result<(ShapeClass, HypergeomParams)> {
    let (a, b, alpha, lambda) = (inputs.a, inputs.b, inputs.alpha, inputs.lambda);
    match kind {
        TheoremKind::General => Ok((inputs.class(kind)?, inputs.params()?)),
        TheoremKind::Convexity => Ok((inputs.class(kind)?, inputs.params()?.shifted())),
        TheoremKind::StarlikeOrder => Ok((ShapeClass::starlike(alpha)?, inputs.params()?)),
        TheoremKind::StrongStarlike => Ok((ShapeClass::strongly_starlike(alpha)?, inputs.params()?)),
        TheoremKind::CorA2 => {
            let (ar, br, cr) = inputs.real_abc()?;
            let params = HypergeomParams::new(ar.into(), Complex64::new(br, inputs.s), Complex64::new(cr, inputs.s))?;
            Ok((ShapeClass::starlike(1.0 - ar / 2.0)?, params))
        }
        TheoremKind::Spirallike | TheoremKind::SpirallikeCor1 | TheoremKind::SpirallikeCor2 => {
            Ok((ShapeClass::spirallike(lambda, alpha)?, HypergeomParams::with_p_zero(a, b)?))
        }
        TheoremKind::SstCorP0 | TheoremKind::SstCorMax | TheoremKind::SstCorFinal | TheoremKind::TheoremA => {
            Ok((ShapeClass::strongly_starlike(alpha)?, HypergeomParams::with_p_zero(a, b)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn names_round_trip() {
        for k in TheoremKind::ALL {
            assert_eq!(k.name().parse::<TheoremKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
        assert!("theorem-b".parse::<TheoremKind>().is_err());
    }

    #[test]
    fn dispatch_matches_direct_calls() {
        let inputs = CertifyInputs::new(c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0), 0.5);
        for k in [
            TheoremKind::StrongStarlike,
            TheoremKind::SstCorP0,
            TheoremKind::SstCorMax,
            TheoremKind::SstCorFinal,
            TheoremKind::TheoremA,
        ] {
            let cert = certify(k, &inputs).unwrap();
            assert!(cert.passed, "{k}: {cert}");
            let (class, params) = verification_target(k, &inputs).unwrap();
            assert_eq!(class, ShapeClass::StronglyStarlike { alpha: 0.5 });
            assert_eq!(params, HypergeomParams::real(1.0, 1.0, 3.0).unwrap());
        }
    }

    #[test]
    fn class_required_where_needed() {
        let inputs = CertifyInputs::new(c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0), 0.0);
        assert!(matches!(certify(TheoremKind::General, &inputs), Err(Error::InvalidParams(_))));
        let with = CertifyInputs {
            class: Some(ShapeClass::starlike(0.0).unwrap()),
            ..inputs
        };
        assert!(certify(TheoremKind::General, &with).unwrap().passed);
    }

    #[test]
    fn cor_a2_target_applies_shift() {
        let mut inputs = CertifyInputs::new(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), 0.0);
        inputs.s = -1.0;
        let (class, params) = verification_target(TheoremKind::CorA2, &inputs).unwrap();
        assert_eq!(class, ShapeClass::StarlikeOrder { alpha: 0.5 });
        assert_eq!(params.b(), c(2.0, -1.0));
        assert_eq!(params.c(), c(3.0, -1.0));
        inputs.a = c(1.0, 0.1);
        assert!(certify(TheoremKind::CorA2, &inputs).is_err());
    }
}
