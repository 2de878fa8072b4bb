//! Direct check of the class inequality for `q = z f'/f` on a polar grid inside
//! the disk. Independent of the certificates: it only uses the series and the
//! membership predicate.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificates::Certificate;
use crate::error::{Error, Result};
use crate::hypergeom::{log_derivative_q, HypergeomParams, SeriesSettings};
use crate::shape::{membership_predicate, ShapeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RadialSpacing {
    Uniform,
    /// `1 - r_k = (1 - r_max)^{k/n}`, denser toward the rim.
    #[default]
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DiskGridSettings {
    pub n_radii: usize,
    pub r_max: f64,
    pub n_angles: usize,
    pub radial_spacing: RadialSpacing,
    /// A point counts as a violation when its slack is below `-violation_tol`.
    pub violation_tol: f64,
}

impl Default for DiskGridSettings {
    fn default() -> Self {
        Self {
            n_radii: 40,
            r_max: 0.995,
            n_angles: 720,
            radial_spacing: RadialSpacing::Geometric,
            violation_tol: 1e-9,
        }
    }
}

impl DiskGridSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::InvalidSettings("r_max must lie in (0, 1)".into()));
        }
        if self.n_angles < 8 {
            return Err(Error::InvalidSettings("n_angles must be >= 8".into()));
        }
        if self.n_radii == 0 {
            return Err(Error::InvalidSettings("n_radii must be >= 1".into()));
        }
        if !(self.violation_tol >= 0.0) {
            return Err(Error::InvalidSettings("violation_tol must be >= 0".into()));
        }
        Ok(())
    }

    /// Radii in increasing order, the last one equal to `r_max`.
    pub fn radii(&self) -> Vec<f64> {
        let n = self.n_radii as f64;
        (1..=self.n_radii)
            .map(|k| {
                if k == self.n_radii {
                    return self.r_max;
                }
                let t = k as f64 / n;
                match self.radial_spacing {
                    RadialSpacing::Uniform => self.r_max * t,
                    RadialSpacing::Geometric => 1.0 - (1.0 - self.r_max).powf(t),
                }
            })
            .collect()
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_angles as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerificationStatus {
    Consistent,
    Violated,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub class: ShapeClass,
    pub params: HypergeomParams,
    pub grid: DiskGridSettings,
    pub min_slack: f64,
    pub argmin_z: Complex64,
    pub n_points: usize,
    pub n_violations: usize,
    pub n_f_zeros: usize,
    /// Points where the series itself failed (no convergence and the like).
    pub n_errors: usize,
    pub status: VerificationStatus,
    /// Minimum slack on each ring, innermost first; `None` when no point on
    /// the ring could be evaluated.
    pub ring_min_slack: Vec<Option<f64>>,
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, Default)]
struct RingStats {
    min: Option<(f64, usize)>,
    violations: usize,
    zeros: usize,
    errors: usize,
    first_error: Option<String>,
}

fn scan_ring(
    class: &ShapeClass,
    params: &HypergeomParams,
    grid: &DiskGridSettings,
    series: &SeriesSettings,
    r: f64,
) -> RingStats {
    let mut st = RingStats::default();
    for j in 0..grid.n_angles {
        let z = Complex64::from_polar(r, grid.angle(j));
        match log_derivative_q(params, z, series) {
            Ok(w) => {
                let slack = membership_predicate(class, w).slack;
                if !slack.is_finite() {
                    st.errors += 1;
                    st.first_error.get_or_insert_with(|| format!("non-finite slack at z = {z}"));
                    continue;
                }
                if slack < -grid.violation_tol {
                    st.violations += 1;
                }
                if st.min.map_or(true, |(m, _)| slack < m) {
                    st.min = Some((slack, j));
                }
            }
            Err(e) => {
                if matches!(e, Error::ZeroOfF { .. }) {
                    st.zeros += 1;
                } else {
                    st.errors += 1;
                }
                st.first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    st
}

/// Evaluates `q` at `r_k e^{iθ_j}` for every grid point and aggregates the
/// slack of the class inequality. The origin contributes the slack of `q(0) = 1`
/// without touching the series. Rings are scanned in parallel; the reduction
/// runs in ring order so ties go to the smaller `(r, θ)` index.
pub fn verify_on_disk(
    class: &ShapeClass,
    params: &HypergeomParams,
    grid: &DiskGridSettings,
    series: &SeriesSettings,
) -> Result<VerificationReport> {
    grid.validate()?;
    series.validate()?;
    if grid.r_max > series.radius_cap {
        return Err(Error::InvalidSettings(format!(
            "r_max = {} exceeds the series radius cap {}",
            grid.r_max, series.radius_cap
        )));
    }
    let radii = grid.radii();
    let rings: Vec<RingStats> = radii
        .par_iter()
        .map(|&r| scan_ring(class, params, grid, series, r))
        .collect();

    let origin = membership_predicate(class, Complex64::new(1.0, 0.0)).slack;
    let mut min_slack = origin;
    let mut argmin_z = Complex64::new(0.0, 0.0);
    let mut n_violations = usize::from(origin < -grid.violation_tol);
    let (mut n_f_zeros, mut n_errors) = (0, 0);
    let mut first_error = None;
    let mut ring_min_slack = Vec::with_capacity(rings.len());
    for (ring, &r) in rings.into_iter().zip(&radii) {
        n_violations += ring.violations;
        n_f_zeros += ring.zeros;
        n_errors += ring.errors;
        if first_error.is_none() {
            first_error = ring.first_error;
        }
        ring_min_slack.push(ring.min.map(|(m, _)| m));
        if let Some((m, j)) = ring.min {
            if m < min_slack {
                min_slack = m;
                argmin_z = Complex64::from_polar(r, grid.angle(j));
            }
        }
    }
    let status = if n_f_zeros > 0 || n_errors > 0 {
        VerificationStatus::Degenerate
    } else if n_violations > 0 {
        VerificationStatus::Violated
    } else {
        VerificationStatus::Consistent
    };
    Ok(VerificationReport {
        class: *class,
        params: *params,
        grid: *grid,
        min_slack,
        argmin_z,
        n_points: 1 + radii.len() * grid.n_angles,
        n_violations,
        n_f_zeros,
        n_errors,
        status,
        ring_min_slack,
        first_error,
    })
}

/// A ring whose minimum slack drops below that of some outer ring by more
/// than the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneFinding {
    pub inner_r: f64,
    pub inner_slack: f64,
    pub outer_r: f64,
    pub outer_slack: f64,
}

/// Heuristic diagnostic: for a harmonic `Re q` the ring minimum should not
/// increase outward. Each inner ring is compared with the largest slack found
/// on any ring outside it. Findings are reported, not treated as errors.
pub fn monotone_slack_findings(report: &VerificationReport, tol: f64) -> Vec<MonotoneFinding> {
    let radii = report.grid.radii();
    let rings: Vec<(f64, f64)> = radii
        .iter()
        .zip(&report.ring_min_slack)
        .filter_map(|(&r, s)| s.map(|s| (r, s)))
        .collect();
    let mut out = Vec::new();
    for (i, &(r_in, s_in)) in rings.iter().enumerate() {
        let best_outer = rings[i + 1..].iter().max_by(|x, y| x.1.total_cmp(&y.1));
        if let Some(&(r_out, s_out)) = best_outer {
            if s_in < s_out - tol {
                out.push(MonotoneFinding {
                    inner_r: r_in,
                    inner_slack: s_in,
                    outer_r: r_out,
                    outer_slack: s_out,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossCheckVerdict {
    /// The certificate passed and the grid agrees.
    Sound,
    /// Nothing to contradict: the certificate failed, or the grid could not be
    /// evaluated everywhere for reasons other than a zero of `F`.
    Info,
    /// The certificate passed but the grid shows a violation or a zero of `F`.
    Unsound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckResult {
    pub certificate_passed: bool,
    pub status: VerificationStatus,
    pub min_slack: f64,
    pub verdict: CrossCheckVerdict,
    pub message: String,
    pub report: VerificationReport,
}

pub fn cross_check(
    class: &ShapeClass,
    params: &HypergeomParams,
    certificate: &Certificate,
    grid: &DiskGridSettings,
    series: &SeriesSettings,
) -> Result<CrossCheckResult> {
    let report = verify_on_disk(class, params, grid, series)?;
    Ok(judge(certificate.passed, report))
}

/// The verdict for a given `(passed, report)` pair.
pub fn judge(certificate_passed: bool, report: VerificationReport) -> CrossCheckResult {
    use CrossCheckVerdict::*;
    use VerificationStatus::*;
    let (verdict, message) = match (certificate_passed, report.status) {
        (true, Consistent) => (Sound, "certificate passed and the grid is consistent".to_string()),
        (true, Violated) => (
            Unsound,
            format!("certificate passed but {} grid points violate the class", report.n_violations),
        ),
        (true, Degenerate) if report.n_f_zeros > 0 => (
            Unsound,
            format!("certificate passed but F vanishes at {} grid points", report.n_f_zeros),
        ),
        (true, Degenerate) => (
            Info,
            format!("certificate passed; {} grid points could not be evaluated", report.n_errors),
        ),
        (false, Consistent) => (
            Info,
            "certificate failed but the grid is consistent; the condition is sufficient, not necessary".to_string(),
        ),
        (false, _) => (Info, "certificate failed and the grid does not show membership".to_string()),
    };
    CrossCheckResult {
        certificate_passed,
        status: report.status,
        min_slack: report.min_slack,
        verdict,
        message,
        report,
    }
}
