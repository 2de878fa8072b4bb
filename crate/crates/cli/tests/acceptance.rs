//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use hyperstar::oracles::{
    ab_difference_direct, ab_difference_expanded, golden_section_min, half_plane_bound_check,
    half_plane_bound_stated, quadratic_nonneg_exact, quadratic_nonneg_sampled,
};
use hyperstar::shape::{boundary_q, boundary_zq_prime};
use hyperstar::*;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cx(rng: &mut StdRng, lo: f64, hi: f64) -> Complex64 {
    Complex64::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi))
}

fn random_params(rng: &mut StdRng) -> HypergeomParams {
    loop {
        let c = Complex64::new(rng.gen_range(0.2..4.0), rng.gen_range(-2.0..2.0));
        if let Ok(p) = HypergeomParams::new(cx(rng, -3.0, 3.0), cx(rng, -3.0, 3.0), c) {
            return p;
        }
    }
}

fn real_p_params(rng: &mut StdRng) -> HypergeomParams {
    loop {
        let (a, b) = (cx(rng, -1.5, 3.0), cx(rng, -1.5, 3.0));
        let p = rng.gen_range(-2.0..2.0);
        if let Ok(params) = HypergeomParams::new(a, b, a + b + 1.0 - p) {
            return params;
        }
    }
}

fn disk_point(rng: &mut StdRng, r_max: f64) -> Complex64 {
    Complex64::from_polar(r_max * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

fn relative(x: f64, y: f64) -> f64 {
    (x - y).abs() / (1.0 + x.abs().max(y.abs()))
}

/// Identity suite: expanded `|B|² - |A|²`, the hypergeometric equation,
/// symmetry in `a, b`, and the derivative formula.
fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let series = SeriesSettings::default();
    let mut worst_ab: f64 = 0.0;
    for _ in 0..10_000 {
        let (w, a, b, c) = (cx(&mut rng, -5.0, 5.0), cx(&mut rng, -5.0, 5.0), cx(&mut rng, -5.0, 5.0), cx(&mut rng, -5.0, 5.0));
        let scale = [w, a, b, c].iter().map(|x| x.norm()).fold(1.0, f64::max);
        let r = (ab_difference_direct(w, a, b, c) - ab_difference_expanded(w, a, b, c)).abs() / (1.0 + scale.powi(4));
        worst_ab = worst_ab.max(r);
    }
    let (mut worst_ode, mut worst_sym, mut worst_fd): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1_000 {
        let p = random_params(&mut rng);
        let z = disk_point(&mut rng, 0.8);
        let f = gauss_2f1(&p, z, &series).unwrap();
        let df = gauss_2f1_derivative(&p, z, &series).unwrap();
        let ddf = gauss_2f1_derivative(&p.shifted(), z, &series).unwrap() * p.a() * p.b() / p.c();
        let res = ode_residual(&p, z, &series).unwrap();
        let scale = 1.0 + (z * (1.0 - z) * ddf).norm() + (p.c() * df).norm() + (p.a() * p.b() * f).norm();
        worst_ode = worst_ode.max(res.norm() / scale);
        let g = gauss_2f1(&p.swapped(), z, &series).unwrap();
        worst_sym = worst_sym.max((f - g).norm() / f.norm().max(g.norm()).max(f64::MIN_POSITIVE));
        let h = 1e-5;
        let fd = (gauss_2f1(&p, z + h, &series).unwrap() - gauss_2f1(&p, z - h, &series).unwrap()) / (2.0 * h);
        worst_fd = worst_fd.max((df - fd).norm() / df.norm().max(fd.norm()).max(1.0));
    }
    outcome(
        worst_ab < 1e-10 && worst_ode < 1e-8 && worst_sym < 1e-12 && worst_fd < 1e-5,
        format!(
            "max AB residual/(1+scale^4) {worst_ab:.2e} (<1e-10), ODE {worst_ode:.2e} (<1e-8), symmetry {worst_sym:.2e} (<1e-12), derivative vs FD {worst_fd:.2e} (<1e-5)"
        ),
    )
}

/// Both closed-form routes agree with a direct boundary evaluation.
fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let (mut worst_q, mut worst_g): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let p = real_p_params(&mut rng);
        let (a, b, c) = (p.a(), p.b(), p.c());

        let alpha = rng.gen_range(0.0..0.95);
        let class = ShapeClass::starlike(alpha).unwrap();
        let (l, m, n) = starlike_lmn(&p, alpha);
        let s = rng.gen_range(-30.0..30.0);
        let pt = BoundaryPoint::spiral_from_s(s);
        let w = boundary_q(&class, &pt);
        let zq = boundary_zq_prime(&class, &pt);
        let d = -2.0 * ((p.p() * w + a * b) * zq.conj()).re;
        let direct = d - ab_difference_direct(w, a, b, c);
        let quad = (1.0 - alpha).powi(2) * (l * s * s - 2.0 * m * s + n);
        worst_q = worst_q.max(relative(direct, quad));

        let alpha = rng.gen_range(0.05..0.95);
        let class = ShapeClass::strongly_starlike(alpha).unwrap();
        let eps = if rng.gen() { 1.0 } else { -1.0 };
        let s = rng.gen_range(0.01..30.0f64);
        let w = boundary_q(&class, &BoundaryPoint::strong_from_s(s, eps));
        let direct = ab_difference_direct(w, a, b, c);
        let cubic = strong_cubic(&p, alpha).g(eps, s.powf(alpha));
        worst_g = worst_g.max(relative(direct, cubic));
    }
    outcome(
        worst_q < 1e-8 && worst_g < 1e-8,
        format!("max relative gap: quadratic route {worst_q:.2e}, cubic route {worst_g:.2e} (<1e-8) over 100 draws"),
    )
}

fn passed(r: Result<Certificate>) -> bool {
    r.map(|c| c.passed).unwrap_or(false)
}

/// Hand-derived instances pass their checkers and the full disk grid.
fn criterion_3() -> Outcome {
    let c = |re, im| Complex64::new(re, im);
    let one = c(1.0, 0.0);
    let ls = LineSearchSettings::default();
    let grid = DiskGridSettings::default();
    let series = SeriesSettings::default();
    let mut notes = Vec::new();
    let mut ok = true;

    let p1 = HypergeomParams::new(c(2.0, 0.0), c(2.0, 5.0), c(3.0, 5.0)).unwrap();
    ok &= passed(certify_starlike_order(&p1, 0.0));
    let p2 = HypergeomParams::real(2.0, 1.0, 2.0).unwrap();
    ok &= certify_cor_a2(2.0, 1.0, 2.0, 0.0).passed;
    let p3 = HypergeomParams::real(1.0, 1.0, 3.0).unwrap();
    let strong = [
        ("thm", passed(certify_strong_starlike(&p3, 0.5, &ls))),
        ("cor-p0", passed(certify_sst_cor_p0(one, one, 0.5, &ls))),
        ("cor-max", passed(certify_sst_cor_max(one, one, 0.5))),
        ("cor-final", passed(certify_sst_cor_final(one, one, 0.5))),
        ("theorem-a", passed(certify_theorem_a(one, one, 0.5))),
    ];
    for (name, pass) in strong {
        if !pass {
            notes.push(format!("{name} failed"));
        }
        ok &= pass;
    }

    let star = ShapeClass::starlike(0.0).unwrap();
    let sst = ShapeClass::strongly_starlike(0.5).unwrap();
    for (label, class, params) in [("(2,2+5i,3+5i)", star, p1), ("(2,1,2)", star, p2), ("(1,1,3)", sst, p3)] {
        let rep = verify_on_disk(&class, &params, &grid, &series).unwrap();
        ok &= rep.status == VerificationStatus::Consistent && rep.min_slack > 0.0;
        notes.push(format!("{label} {:?} min_slack {:.6}", rep.status, rep.min_slack));
        if label == "(2,1,2)" {
            // min Re q over |z| <= 0.995 is 1/(1 + 0.995)
            let gap = (rep.min_slack - 1.0 / 1.995).abs();
            ok &= gap < 1e-9;
            notes.push(format!("|min Re q - 1/1.995| = {gap:.1e}"));
        }
        if label == "(1,1,3)" {
            // slack = π/4 - |arg q| >= 0 means max |arg q| <= π/4
            notes.push(format!("max |arg q| = {:.6} <= pi/4", PI / 4.0 - rep.min_slack));
        }
    }
    outcome(ok, notes.join("; "))
}

/// A random draw for one of the closed-form checkers.
fn draw_certified(rng: &mut StdRng, which: usize) -> (TheoremKind, CertifyInputs) {
    let c = |re, im| Complex64::new(re, im);
    match which % 6 {
        0 => {
            let (a, b) = (cx(rng, 0.0, 2.0), cx(rng, -0.5, 1.5));
            let p = rng.gen_range(-0.5..1.0);
            (TheoremKind::StarlikeOrder, CertifyInputs::new(a, b, a + b + 1.0 - p, rng.gen_range(0.0..0.6)))
        }
        1 => {
            let a = rng.gen_range(0.05..2.0);
            let b: f64 = rng.gen_range(-0.5..2.5);
            let cc = rng.gen_range(b.max(3.0 - b)..b.max(3.0 - b) + 2.0);
            let mut inputs = CertifyInputs::new(c(a, 0.0), c(b, 0.0), c(cc, 0.0), 0.0);
            inputs.s = rng.gen_range(-4.0..4.0);
            (TheoremKind::CorA2, inputs)
        }
        2 => {
            let (a, b) = (cx(rng, 0.0, 1.5), cx(rng, -0.5, 1.0));
            let mut inputs = CertifyInputs::new(a, b, a + b + 1.0, rng.gen_range(0.0..0.6));
            inputs.lambda = rng.gen_range(-1.2..1.2);
            (TheoremKind::Spirallike, inputs)
        }
        3 => {
            let (a, b) = (cx(rng, 0.0, 1.5), cx(rng, -0.3, 0.3));
            let p = rng.gen_range(-0.3..0.3);
            (TheoremKind::StrongStarlike, CertifyInputs::new(a, b, a + b + 1.0 - p, rng.gen_range(0.3..0.95)))
        }
        4 => {
            let (a, b) = (cx(rng, 0.0, 1.5), cx(rng, -0.3, 1.0));
            (TheoremKind::SstCorP0, CertifyInputs::new(a, b, a + b + 1.0, rng.gen_range(0.2..0.95)))
        }
        _ => {
            // real pair or conjugate pair for the explicit corollaries
            let (a, b) = if rng.gen() {
                (c(rng.gen_range(0.05..2.5), 0.0), c(rng.gen_range(0.05..2.5), 0.0))
            } else {
                let z = c(rng.gen_range(0.05..1.5), rng.gen_range(-1.0..1.0));
                (z, z.conj())
            };
            let kind = [TheoremKind::SstCorMax, TheoremKind::SstCorFinal, TheoremKind::TheoremA][rng.gen_range(0..3)];
            let alpha = rng.gen_range(0.34..0.95);
            (kind, CertifyInputs::new(a, b, a + b + 1.0, alpha))
        }
    }
}

/// Random draws that pass a closed-form checker are never contradicted on the
/// disk grid.
fn criterion_4() -> Outcome {
    const TARGET: usize = 200;
    let mut rng = StdRng::seed_from_u64(4);
    let grid = DiskGridSettings {
        n_radii: 24,
        n_angles: 360,
        ..DiskGridSettings::default()
    };
    let series = SeriesSettings::default();
    let (mut certified, mut violated, mut zeros, mut degenerate, mut attempts) = (0, 0, 0, 0, 0);
    let mut per_kind = std::collections::BTreeMap::<String, usize>::new();
    let mut worst = f64::INFINITY;
    while certified < TARGET && attempts < 50_000 {
        attempts += 1;
        let (kind, inputs) = draw_certified(&mut rng, attempts);
        if !passed(certify(kind, &inputs)) {
            continue;
        }
        let Ok((class, params)) = verification_target(kind, &inputs) else { continue };
        certified += 1;
        *per_kind.entry(kind.to_string()).or_default() += 1;
        let rep = verify_on_disk(&class, &params, &grid, &series).unwrap();
        worst = worst.min(rep.min_slack);
        match rep.status {
            VerificationStatus::Violated => violated += 1,
            VerificationStatus::Degenerate if rep.n_f_zeros > 0 => zeros += 1,
            VerificationStatus::Degenerate => degenerate += 1,
            VerificationStatus::Consistent => {}
        }
    }
    outcome(
        certified >= TARGET && violated == 0 && zeros == 0,
        format!(
            "{certified} certified draws ({attempts} attempts) {per_kind:?}: {violated} Violated, {zeros} with a zero of F, {degenerate} other degenerate; min slack {worst:.3e} (grid 24x360, r_max 0.995)"
        ),
    )
}

/// cor-max ⟹ cor-p0 ⟹ general strong theorem, and the λ = 0 spirallike
/// checker agrees with the starlike one for `c = a + b + 1`.
fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let ls = LineSearchSettings::default();
    let (mut chain_bad, mut max_pass, mut p0_pass, mut inconclusive) = (0, 0, 0, 0);
    for _ in 0..500 {
        let (a, b) = if rng.gen() {
            (Complex64::new(rng.gen_range(0.05..2.5), 0.0), Complex64::new(rng.gen_range(0.05..2.5), 0.0))
        } else {
            (cx(&mut rng, -0.2, 2.0), cx(&mut rng, -0.5, 1.0))
        };
        let alpha = rng.gen_range(0.05..0.95);
        let Ok(params) = HypergeomParams::with_p_zero(a, b) else { continue };
        let verdict = |r: Result<Certificate>| match r {
            Ok(c) => Some(c.passed),
            Err(Error::OracleInconclusive { .. }) => None,
            Err(_) => Some(false),
        };
        let max = verdict(certify_sst_cor_max(a, b, alpha)) == Some(true);
        let p0 = verdict(certify_sst_cor_p0(a, b, alpha, &ls));
        let thm = verdict(certify_strong_starlike(&params, alpha, &ls));
        if p0.is_none() || thm.is_none() {
            inconclusive += 1;
        }
        max_pass += usize::from(max);
        p0_pass += usize::from(p0 == Some(true));
        if (max && p0 != Some(true)) || (p0 == Some(true) && thm != Some(true)) {
            chain_bad += 1;
        }
    }
    let mut reduction_bad = 0;
    let mut star_pass = 0;
    for _ in 0..500 {
        let (a, b) = (cx(&mut rng, -0.5, 2.0), cx(&mut rng, -0.5, 2.0));
        let alpha = rng.gen_range(0.0..0.95);
        let Ok(params) = HypergeomParams::with_p_zero(a, b) else { continue };
        let (Ok(sp), Ok(st)) = (certify_spirallike(a, b, 0.0, alpha), certify_starlike_order(&params, alpha)) else {
            continue;
        };
        let (l1, m1, n1) = spirallike_lmn(a, b, 0.0, alpha);
        let (l2, m2, n2) = starlike_lmn(&params, alpha);
        let k = 1.0 - alpha;
        let coeff_gap = [(l1, k * l2), (m1, k * m2), (n1, k * n2)].iter().map(|&(x, y)| relative(x, y)).fold(0.0, f64::max);
        star_pass += usize::from(st.passed);
        if sp.passed != st.passed || coeff_gap > 1e-10 {
            reduction_bad += 1;
        }
    }
    outcome(
        chain_bad == 0 && reduction_bad == 0 && max_pass > 0,
        format!(
            "chain: {chain_bad} counterexamples in 500 draws (cor-max passed {max_pass}, cor-p0 passed {p0_pass}, {inconclusive} inconclusive); lambda=0 reduction: {reduction_bad} mismatches in 500 draws ({star_pass} passing)"
        ),
    )
}

/// Exact vs sampled quadratic test, and the corrected half-plane lemma.
fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut checked, mut disagree) = (0, 0);
    while checked < 10_000 {
        let (l, m, n) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        if [l, n, l * n - m * m].iter().any(|x: &f64| x.abs() <= 1e-7) {
            continue;
        }
        checked += 1;
        disagree += usize::from(quadratic_nonneg_exact(l, m, n) != quadratic_nonneg_sampled(l, m, n, 2000));
    }
    let (mut lemma_cases, mut lemma_bad, mut stated_only_bad) = (0, 0, 0);
    let mut stated_cases = 0;
    while lemma_cases < 1_000 {
        let (a, b, c) = (rng.gen_range(-3.0..3.0), rng.gen_range(-6.0..6.0), rng.gen_range(-3.0..3.0));
        let (k, alpha) = (rng.gen_range(0.01..3.0), rng.gen_range(0.01..0.99));
        let excess = |s: f64| a * s.powf(alpha) + b + c * s.powf(-alpha) - k * (s + 1.0 / s);
        let worst = |f: &dyn Fn(f64) -> f64| {
            let (mut best_u, mut best) = (0.0, f64::NEG_INFINITY);
            for i in 0..=2000 {
                let u = -12.0 + 24.0 * i as f64 / 2000.0;
                let v = f(u.exp());
                if v > best {
                    best = v;
                    best_u = u;
                }
            }
            let (_, refined) = golden_section_min(|u| -f(u.exp()), best_u - 0.012, best_u + 0.012, 60);
            best.max(-refined)
        };
        let max_excess = worst(&excess);
        if half_plane_bound_stated(a, b, c, k) {
            stated_cases += 1;
            stated_only_bad += usize::from(max_excess > 1e-9);
        }
        if half_plane_bound_check(a, b, c, k, alpha) {
            lemma_cases += 1;
            lemma_bad += usize::from(max_excess > 1e-9 * (1.0 + k));
        }
    }
    outcome(
        disagree == 0 && lemma_bad == 0,
        format!(
            "quadratic: {disagree} disagreements in {checked} draws; lemma with max{{A,C}} <= K: {lemma_bad} failures in {lemma_cases} draws (stated form alone fails {stated_only_bad} of {stated_cases})"
        ),
    )
}

/// The general checker fails for λ ≠ 0 and p ≠ 0, at large |s|.
fn criterion_7() -> Outcome {
    let class = ShapeClass::spirallike(0.3, 0.0).unwrap();
    let params = HypergeomParams::real(1.0, 1.0, 2.5).unwrap();
    let grid = BoundaryGridSettings::default();
    let cert = certify_general(&class, &params, &grid, false).unwrap();
    let profile = boundary_profile(&class, &params, &grid);
    let failing: Vec<_> = profile.iter().filter(|x| x.margin_normalized < -grid.tol || x.d_normalized <= grid.tol).collect();
    let max_s = failing.iter().map(|x| x.s.abs()).fold(0.0, f64::max);
    let small_s_fail = failing.iter().filter(|x| x.s.abs() < 1.0).count();
    outcome(
        !cert.passed && max_s > 100.0,
        format!(
            "certificate passed = {}, {} of {} boundary points fail, largest failing |s| = {max_s:.3e} ({small_s_fail} failures with |s| < 1)",
            cert.passed,
            failing.len(),
            profile.len()
        ),
    )
}

/// Scans produce the same bytes for every thread count.
fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("region.json");
    std::fs::write(
        &spec_path,
        r#"{
  "varying": [
    {"symbol": "b_re", "from": 0.5, "to": 3.0, "steps": 11},
    {"symbol": "c_re", "from": 1.0, "to": 4.0, "steps": 13}
  ],
  "fixed": {"a_re": 2.0},
  "class": "starlike",
  "theorem": "starlike-order",
  "verify": true,
  "disk_grid": {"n_radii": 6, "n_angles": 48}
}"#,
    )
    .unwrap();
    let run = |threads: usize, tag: &str| -> Vec<u8> {
        let out = dir.path().join(format!("out-{tag}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_hyperstar"))
            .args(["--threads", &threads.to_string(), "scan", "--spec"])
            .arg(&spec_path)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        std::fs::read(out).unwrap()
    };
    let reference = run(1, "1a");
    let others = [run(1, "1b"), run(2, "2"), run(4, "4"), run(8, "8")];
    let same = others.iter().all(|o| *o == reference);
    let rows = reference.iter().filter(|&&b| b == b'\n').count() - 1;
    outcome(
        same && rows == 143,
        format!("{rows} rows; byte-identical across runs with --threads 1, 1, 2, 4, 8: {same}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("identity suite", criterion_1, Duration::from_secs(10)),
        ("reduction equalities", criterion_2, Duration::from_secs(5)),
        ("certified-instance soundness", criterion_3, Duration::from_secs(60)),
        ("random soundness sweep", criterion_4, Duration::from_secs(600)),
        ("checker coherence chain and lambda=0 reduction", criterion_5, Duration::from_secs(600)),
        ("oracle equivalence", criterion_6, Duration::from_secs(600)),
        ("structural obstruction", criterion_7, Duration::from_secs(600)),
        ("scan determinism", criterion_8, Duration::from_secs(600)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *budget;
        failures += usize::from(!pass);
        println!(
            "ACCEPTANCE {} {}: {} [{:.1}s of {}s] {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
