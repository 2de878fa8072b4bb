use num_complex::Complex64;

use super::{at_most, is_real, nonnegative, num, strictly_positive, Builder, Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomParams;
use crate::shape::ShapeClass;

/// Coefficients of the boundary quadratic `Ls² - 2Ms + N` for starlikeness
/// of order `α`, with `p` taken as its real part.
pub fn starlike_lmn(params: &HypergeomParams, alpha: f64) -> (f64, f64, f64) {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let p = params.p().re;
    let ab = a * b;
    let k = 1.0 - alpha;
    let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
    let common = ab.re / k + p * (1.0 - 2.0 * alpha) - a2 - b2 + (c - 1.0).norm_sqr();
    let l = common - 4.0 * a.im * b.im;
    let m = (ab * (a.conj() + b.conj() - 2.0 + 2.0 * alpha)).im / k;
    let n = common - (2.0 * a.re - a2 / k) * (2.0 * b.re - b2 / k);
    (l, m, n)
}

/// Starlikeness of order `α`: `p` real, `Re[ab] > p(1-α)`, and the boundary
/// quadratic `Ls² - 2Ms + N` nonnegative on the real line.
pub fn certify_starlike_order(params: &HypergeomParams, alpha: f64) -> Result<Certificate> {
    let class = ShapeClass::starlike(alpha)?;
    let ab = params.a() * params.b();
    if ab == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParams("ab = 0".into()));
    }
    let p = params.p();
    let mut cert = Builder::new(CertificateKind::StarlikeOrderThm, *params, class);

    cert.check("(i) p real", num(p.im), "|Im p| <= 1e-12(1+|p|)", is_real(p));
    if !is_real(p) {
        cert.note("p is not real; remaining conditions evaluated with Re p");
    }
    let pr = p.re;
    let margin = ab.re - pr * (1.0 - alpha);
    let ok = cert.check("(ii) Re[ab] - p(1-alpha)", num(margin), "> 0", strictly_positive(margin));
    if !ok && margin.abs() <= 1e-12 * (1.0 + ab.norm()) {
        cert.note(
            "boundary case Re[ab] = p(1-alpha); for real a <= 2 with Im b = Im c and b + c = 3 the cor-a2 checker covers it",
        );
    }

    let (l, m, n) = starlike_lmn(params, alpha);
    let disc = l * n - m * m;
    cert.check("(iii) L", num(l), ">= 0", nonnegative(l, l));
    cert.check("(iii) M", num(m), "any", true);
    cert.check("(iii) N", num(n), ">= 0", nonnegative(n, n));
    cert.check("(iii) LN - M^2", num(disc), ">= 0", nonnegative(disc, (l * n).abs() + m * m));
    Ok(cert.finish())
}

/// Real-parameter family `z·₂F₁(a, b+is; c+is; z)`, starlike of order `1 - a/2`
/// when `0 < a <= 2`, `b + c >= 3` and `b <= c`. The equality `b + c = 3` is
/// accepted; it is the limit of the strict case.
pub fn certify_cor_a2(a: f64, b: f64, c: f64, s: f64) -> Certificate {
    let order = 1.0 - a / 2.0;
    let (class, order_ok) = match ShapeClass::starlike(order) {
        Ok(class) => (class, true),
        Err(_) => (ShapeClass::StarlikeOrder { alpha: 0.0 }, false),
    };
    let params = HypergeomParams::unchecked(a.into(), Complex64::new(b, s), Complex64::new(c, s));
    let mut cert = Builder::new(CertificateKind::CorA2, params, class);
    cert.check("0 < a", num(a), "> 0", a > 0.0);
    cert.check("a <= 2", num(a), "<= 2", a <= 2.0);
    cert.check("b + c", num(b + c), ">= 3", at_most(3.0, b + c));
    cert.check("c - b", num(c - b), ">= 0", nonnegative(c - b, c.abs() + b.abs()));
    if order_ok {
        cert.note(format!("certified order 1 - a/2 = {order}"));
    } else {
        cert.note(format!("order 1 - a/2 = {order} is outside [0, 1); class shown as order 0"));
    }
    if (b + c - 3.0).abs() <= 1e-12 {
        cert.note("b + c = 3 accepted as the limit of b + c > 3 (the class is compact)");
    }
    cert.finish()
}
