//! Sufficient-condition certificates for `f(z) = z·₂F₁(a,b;c;z)` to be
//! starlike of order `α`, `λ`-spirallike of order `α`, or strongly starlike
//! of order `α`, together with a direct numerical verifier on disk grids.
//!
//! ```
//! use hyperstar::{certify_starlike_order, verify_on_disk, DiskGridSettings, HypergeomParams, SeriesSettings, ShapeClass};
//! use num_complex::Complex64;
//!
//! let params = HypergeomParams::new(
//!     Complex64::new(2.0, 0.0),
//!     Complex64::new(2.0, 5.0),
//!     Complex64::new(3.0, 5.0),
//! ).unwrap();
//! let cert = certify_starlike_order(&params, 0.0).unwrap();
//! assert!(cert.passed);
//!
//! let class = ShapeClass::starlike(0.0).unwrap();
//! let grid = DiskGridSettings { n_radii: 8, n_angles: 64, ..Default::default() };
//! let report = verify_on_disk(&class, &params, &grid, &SeriesSettings::default()).unwrap();
//! assert!(report.min_slack > 0.0);
//! ```

pub mod certificates;
pub mod error;
pub mod hypergeom;
pub mod oracles;
pub mod shape;
pub mod verifier;

pub use certificates::*;
pub use error::{Error, Result};
pub use hypergeom::{
    gauss_2f1, gauss_2f1_derivative, log_derivative_q, ode_residual, shifted_f, HypergeomParams, SeriesSettings,
};
pub use oracles::LineSearchSettings;
pub use shape::{membership_predicate, phi, BoundaryPoint, ShapeClass};
pub use verifier::{
    cross_check, judge, monotone_slack_findings, verify_on_disk, CrossCheckResult, CrossCheckVerdict, DiskGridSettings,
    RadialSpacing, VerificationReport, VerificationStatus,
};
