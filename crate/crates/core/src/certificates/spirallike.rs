use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{at_most, cnum, is_real, nonnegative, num, strictly_positive, Builder, Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomParams;
use crate::shape::ShapeClass;

fn p_zero_params(a: Complex64, b: Complex64) -> Result<HypergeomParams> {
    HypergeomParams::with_p_zero(a, b)
}

/// `(L, M, N)` of the `c = a + b + 1` spirallike quadratic `Ls² - 2Ms + N`.
pub fn spirallike_lmn(a: Complex64, b: Complex64, lambda: f64, alpha: f64) -> (f64, f64, f64) {
    let k = 1.0 - alpha;
    let rot = Complex64::from_polar(1.0, -lambda);
    let rot2 = rot * rot;
    let m = rot * a * b;
    let sum_conj = a.conj() + b.conj();
    let l = (m * (2.0 - alpha + k * rot2)).re;
    let mm = (m * (sum_conj - k * (1.0 + rot2))).im;
    let n = (m * (2.0 * sum_conj + alpha - k * rot2)).re - a.norm_sqr() * b.norm_sqr() / (k * lambda.cos());
    (l, mm, n)
}

/// `λ`-spirallikeness of order `α` for `z·₂F₁(a, b; a+b+1; z)`.
pub fn certify_spirallike(a: Complex64, b: Complex64, lambda: f64, alpha: f64) -> Result<Certificate> {
    let class = ShapeClass::spirallike(lambda, alpha)?;
    let params = p_zero_params(a, b)?;
    let mut cert = Builder::new(CertificateKind::SpirallikeThm, params, class);

    let m = (Complex64::from_polar(1.0, -lambda) * a * b).re;
    cert.check("(i) Re[e^{-i lambda} ab]", num(m), "> 0", strictly_positive(m));
    if m < 0.0 {
        cert.note("Re[e^{-i lambda} ab] >= 0 is necessary for lambda-spirallikeness, so f is not in this class");
    }
    let (l, mm, n) = spirallike_lmn(a, b, lambda, alpha);
    let disc = l * n - mm * mm;
    cert.check("(ii) L", num(l), ">= 0", nonnegative(l, l));
    cert.check("(ii) M", num(mm), "any", true);
    cert.check("(ii) N", num(n), ">= 0", nonnegative(n, n));
    cert.check("(ii) LN - M^2", num(disc), ">= 0", nonnegative(disc, (l * n).abs() + mm * mm));
    Ok(cert.finish())
}

fn positive_real(m: Complex64, what: &str) -> Result<f64> {
    if is_real(m) && m.re > 0.0 {
        Ok(m.re)
    } else {
        Err(Error::PrecondFailed(format!("{what} = {} is not a positive real number", cnum(m))))
    }
}

/// Special case `m = e^{-iλ}ab > 0`, `0 < |λ| < π/2`.
pub fn certify_spirallike_cor1(a: Complex64, b: Complex64, lambda: f64, alpha: f64) -> Result<Certificate> {
    let class = ShapeClass::spirallike(lambda, alpha)?;
    if !(lambda != 0.0 && lambda.abs() < FRAC_PI_2) {
        return Err(Error::PrecondFailed("requires 0 < |lambda| < pi/2".into()));
    }
    let params = p_zero_params(a, b)?;
    let m = positive_real(Complex64::from_polar(1.0, -lambda) * a * b, "e^{-i lambda} ab")?;
    let k = 1.0 - alpha;
    let (sin2, cos2) = (2.0 * lambda).sin_cos();
    let sum = a + b;
    let lhs = (sum.im - k * sin2).powi(2);
    let rhs = (2.0 - alpha + k * cos2) * (2.0 * sum.re + alpha - k * cos2 - m / (k * lambda.cos()));

    let mut cert = Builder::new(CertificateKind::SpirallikeCor1, params, class);
    cert.check(
        "(Im[a+b] - (1-alpha) sin 2lambda)^2 <= (2-alpha+(1-alpha)cos 2lambda){...}",
        num(lhs),
        format!("<= {}", num(rhs)),
        at_most(lhs, rhs),
    );
    cert.note(format!("m = e^{{-i lambda}} ab = {}", num(m)));
    Ok(cert.finish())
}

/// Special case `m = ab > 0` with `(1-2α)/(4(1-α)) < cos²λ < 1`.
pub fn certify_spirallike_cor2(a: Complex64, b: Complex64, lambda: f64, alpha: f64) -> Result<Certificate> {
    let class = ShapeClass::spirallike(lambda, alpha)?;
    let k = 1.0 - alpha;
    let cos = lambda.cos();
    let cos_sq = cos * cos;
    let lower = (1.0 - 2.0 * alpha) / (4.0 * k);
    if !(cos_sq > lower && cos_sq < 1.0) {
        return Err(Error::PrecondFailed(format!(
            "requires {} < cos^2 lambda < 1, got {}",
            num(lower),
            num(cos_sq)
        )));
    }
    let params = p_zero_params(a, b)?;
    let m = positive_real(a * b, "ab")?;
    let turned = Complex64::from_polar(1.0, lambda) * (a + b);
    let lhs = (turned.im / cos - 2.0 * k * (2.0 * lambda).sin()).powi(2);
    let rhs = (4.0 * k * cos_sq + 2.0 * alpha - 1.0)
        * (2.0 * turned.re / cos - 4.0 * k * cos_sq + (3.0 - 2.0 * alpha) - m / (k * cos_sq));

    let mut cert = Builder::new(CertificateKind::SpirallikeCor2, params, class);
    cert.check(
        "(Im[e^{i lambda}(a+b)]/cos lambda - 2(1-alpha) sin 2lambda)^2 <= (...)(...)",
        num(lhs),
        format!("<= {}", num(rhs)),
        at_most(lhs, rhs),
    );
    cert.note(format!("m = ab = {}", num(m)));
    Ok(cert.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::certify_starlike_order;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_zero_instance() {
        let one = c(1.0, 0.0);
        let (l, m, n) = spirallike_lmn(one, one, 0.0, 0.0);
        assert_relative_eq!(l, 3.0);
        assert_relative_eq!(m, 0.0);
        assert_relative_eq!(n, 2.0);
        assert!(certify_spirallike(one, one, 0.0, 0.0).unwrap().passed);
        let p = HypergeomParams::real(1.0, 1.0, 3.0).unwrap();
        assert!(certify_starlike_order(&p, 0.0).unwrap().passed);
    }

    #[test]
    fn quarter_turn_instance() {
        let one = c(1.0, 0.0);
        let cert = certify_spirallike(one, one, FRAC_PI_4, 0.0).unwrap();
        let first = cert.condition("(i)").unwrap();
        assert!(first.pass);
        assert_relative_eq!(first.value.parse::<f64>().unwrap(), 2f64.sqrt() / 2.0, epsilon = 1e-15);
        // L = Re[e^{-iπ/4}(2 - i)] = (2 - 1)/√2
        let (l, _, _) = spirallike_lmn(one, one, FRAC_PI_4, 0.0);
        assert_relative_eq!(l, 1.0 / 2f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn negative_product_fails_with_necessity_note() {
        let cert = certify_spirallike(c(1.0, 0.0), c(-1.0, 0.0), 0.0, 0.0).unwrap();
        assert!(!cert.passed);
        assert_eq!(cert.first_failure(), Some("(i) Re[e^{-i lambda} ab]"));
        assert!(cert.notes.iter().any(|n| n.contains("necessary")));
    }

    #[test]
    fn cor1_examples() {
        let lambda = FRAC_PI_6;
        let a = Complex64::from_polar(1.0, lambda / 2.0);
        let cert = certify_spirallike_cor1(a, a, lambda, 0.0).unwrap();
        let lhs: f64 = (2.0 * (PI / 12.0).sin() - (PI / 3.0).sin()).powi(2);
        let rhs = (2.0 + (PI / 3.0).cos()) * (4.0 * (PI / 12.0).cos() - (PI / 3.0).cos() - 1.0 / (PI / 6.0).cos());
        assert_relative_eq!(cert.conditions[0].value.parse::<f64>().unwrap(), lhs, epsilon = 1e-14);
        assert_eq!(cert.passed, lhs <= rhs);
        assert!(cert.passed);
        assert!(certify_spirallike(a, a, lambda, 0.0).unwrap().passed);

        let one = c(1.0, 0.0);
        assert!(matches!(certify_spirallike_cor1(one, one, 0.0, 0.0), Err(Error::PrecondFailed(_))));
        assert!(matches!(
            certify_spirallike_cor1(c(0.0, 1.0), one, FRAC_PI_2 - 0.1, 0.0),
            Err(Error::PrecondFailed(_))
        ));
    }

    #[test]
    fn cor1_coefficients_match_theorem() {
        let lambda = -0.7;
        let alpha = 0.3;
        // choose ab = m e^{iλ}
        let a = c(0.8, 0.9);
        let m = 1.7;
        let b = m * Complex64::from_polar(1.0, lambda) / a;
        let (l, mm, n) = spirallike_lmn(a, b, lambda, alpha);
        let k = 1.0 - alpha;
        let sum = a + b;
        assert_relative_eq!(l, m * (2.0 - alpha + k * (2.0 * lambda).cos()), epsilon = 1e-12);
        assert_relative_eq!(mm, -m * (sum.im - k * (2.0 * lambda).sin()), epsilon = 1e-12);
        let expect_n = m * (2.0 * sum.re + alpha - k * (2.0 * lambda).cos() - m / (k * lambda.cos()));
        assert_relative_eq!(n, expect_n, epsilon = 1e-12);
    }

    #[test]
    fn cor2_examples() {
        let one = c(1.0, 0.0);
        let cert = certify_spirallike_cor2(one, one, FRAC_PI_6, 0.0).unwrap();
        let thm = certify_spirallike(one, one, FRAC_PI_6, 0.0).unwrap();
        assert_eq!(cert.passed, thm.passed);
        assert!(matches!(
            certify_spirallike_cor2(one, one, FRAC_PI_2 - 1e-3, 0.0),
            Err(Error::PrecondFailed(_))
        ));
        // α = 1/2 zeroes the lower bound
        assert!(certify_spirallike_cor2(one, one, 1.5, 0.5).is_ok());
        assert!(matches!(certify_spirallike_cor2(one, one, 0.0, 0.5), Err(Error::PrecondFailed(_))));
        assert!(matches!(
            certify_spirallike_cor2(c(0.0, 1.0), one, 0.3, 0.0),
            Err(Error::PrecondFailed(_))
        ));
    }

    #[test]
    fn cor2_coefficients_match_theorem() {
        let (lambda, alpha) = (0.5, 0.2);
        let a = c(1.2, 0.7);
        let b = 0.9 / a;
        let (l, mm, n) = spirallike_lmn(a, b, lambda, alpha);
        let m = 0.9;
        let k = 1.0 - alpha;
        let cos = lambda.cos();
        let turned = Complex64::from_polar(1.0, lambda) * (a + b);
        assert_relative_eq!(l, m * cos * (4.0 * k * cos * cos - (1.0 - 2.0 * alpha)), epsilon = 1e-12);
        assert_relative_eq!(mm, -m * (turned.im - 2.0 * k * (2.0 * lambda).sin() * cos), epsilon = 1e-12);
        let expect_n = m * (2.0 * turned.re + alpha * cos - k * (3.0 * lambda).cos() - m / (k * cos));
        assert_relative_eq!(n, expect_n, epsilon = 1e-12);
    }

    #[test]
    fn rejects_negative_integer_sum() {
        assert!(matches!(
            certify_spirallike(c(-1.0, 0.0), c(-1.0, 0.0), 0.0, 0.0),
            Err(Error::InvalidParams(_))
        ));
    }
}
