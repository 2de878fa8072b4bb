//! Parameter-region sweeps. Rows are computed on the rayon pool and written
//! in row-major order of the varying axes, so the CSV does not depend on the
//! number of threads.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use hyperstar::{
    certify, verification_target, verify_on_disk, BoundaryGridSettings, CertifyInputs, DiskGridSettings, Error,
    LineSearchSettings, SeriesSettings, ShapeClass, TheoremKind,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{sci, ScanArgs};

const MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symbol {
    ARe,
    AIm,
    BRe,
    BIm,
    CRe,
    CIm,
    Alpha,
    Lambda,
    /// Imaginary shift used by `cor-a2`.
    S,
}

impl Symbol {
    fn name(self) -> &'static str {
        match self {
            Symbol::ARe => "a_re",
            Symbol::AIm => "a_im",
            Symbol::BRe => "b_re",
            Symbol::BIm => "b_im",
            Symbol::CRe => "c_re",
            Symbol::CIm => "c_im",
            Symbol::Alpha => "alpha",
            Symbol::Lambda => "lambda",
            Symbol::S => "s",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub symbol: Symbol,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl Axis {
    fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            return self.to;
        }
        self.from + (self.to - self.from) * i as f64 / (self.steps - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    Starlike,
    StronglyStarlike,
    Spirallike,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub varying: Vec<Axis>,
    #[serde(default)]
    pub fixed: BTreeMap<Symbol, f64>,
    /// Needed by the `general` and `convexity` checkers only; `alpha` and
    /// `lambda` come from the symbols.
    #[serde(default)]
    pub class: Option<ClassKind>,
    pub theorem: TheoremKind,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub disk_grid: DiskGridSettings,
    #[serde(default)]
    pub series: Option<SeriesSettings>,
    #[serde(default)]
    pub line_search: LineSearchSettings,
    #[serde(default)]
    pub boundary_grid: BoundaryGridSettings,
    #[serde(default)]
    pub relaxed: bool,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<usize, String> {
        if self.varying.is_empty() || self.varying.len() > 3 {
            return Err(format!("between 1 and 3 varying axes required, got {}", self.varying.len()));
        }
        let mut total = 1usize;
        for (i, ax) in self.varying.iter().enumerate() {
            if ax.steps < 2 {
                return Err(format!("axis {} needs steps >= 2", ax.symbol.name()));
            }
            if !(ax.from.is_finite() && ax.to.is_finite()) {
                return Err(format!("axis {} has a non-finite bound", ax.symbol.name()));
            }
            if self.varying[..i].iter().any(|o| o.symbol == ax.symbol) || self.fixed.contains_key(&ax.symbol) {
                return Err(format!("symbol {} given twice", ax.symbol.name()));
            }
            total = total
                .checked_mul(ax.steps)
                .filter(|&t| t <= MAX_POINTS)
                .ok_or_else(|| format!("more than {MAX_POINTS} points"))?;
        }
        if self.theorem.needs_class() && self.class.is_none() {
            return Err(format!("theorem `{}` needs a class", self.theorem));
        }
        self.line_search.validate().map_err(|e| e.to_string())?;
        self.boundary_grid.validate().map_err(|e| e.to_string())?;
        if self.verify {
            self.disk_grid.validate().map_err(|e| e.to_string())?;
        }
        Ok(total)
    }

    fn point(&self, mut index: usize) -> Vec<f64> {
        let mut coords = vec![0.0; self.varying.len()];
        for (k, ax) in self.varying.iter().enumerate().rev() {
            coords[k] = ax.value(index % ax.steps);
            index /= ax.steps;
        }
        coords
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub coords: Vec<f64>,
    pub certificate_passed: bool,
    pub failed_condition: String,
    pub min_slack: Option<f64>,
    pub status: String,
}

fn lookup(spec: &ScanSpec, coords: &[f64], sym: Symbol) -> f64 {
    spec.varying
        .iter()
        .position(|ax| ax.symbol == sym)
        .map(|i| coords[i])
        .or_else(|| spec.fixed.get(&sym).copied())
        .unwrap_or(0.0)
}

fn class_for(kind: ClassKind, alpha: f64, lambda: f64) -> Result<ShapeClass, Error> {
    match kind {
        ClassKind::Starlike => ShapeClass::starlike(alpha),
        ClassKind::StronglyStarlike => ShapeClass::strongly_starlike(alpha),
        ClassKind::Spirallike => ShapeClass::spirallike(lambda, alpha),
    }
}

fn evaluate(spec: &ScanSpec, series: &SeriesSettings, coords: Vec<f64>) -> ScanRow {
    let get = |s| lookup(spec, &coords, s);
    let a = Complex64::new(get(Symbol::ARe), get(Symbol::AIm));
    let b = Complex64::new(get(Symbol::BRe), get(Symbol::BIm));
    let c = if spec.theorem.forces_p_zero() {
        a + b + 1.0
    } else {
        Complex64::new(get(Symbol::CRe), get(Symbol::CIm))
    };
    let (alpha, lambda) = (get(Symbol::Alpha), get(Symbol::Lambda));
    let mut row = ScanRow {
        coords: coords.clone(),
        certificate_passed: false,
        failed_condition: String::new(),
        min_slack: None,
        status: String::new(),
    };
    let class = match spec.class.map(|k| class_for(k, alpha, lambda)).transpose() {
        Ok(c) => c,
        Err(e) => {
            row.failed_condition = format!("error: {e}");
            return row;
        }
    };
    let inputs = CertifyInputs {
        lambda,
        s: get(Symbol::S),
        class,
        line_search: spec.line_search,
        boundary_grid: spec.boundary_grid,
        relaxed: spec.relaxed,
        ..CertifyInputs::new(a, b, c, alpha)
    };
    match certify(spec.theorem, &inputs) {
        Ok(cert) => {
            row.certificate_passed = cert.passed;
            row.failed_condition = cert.first_failure().unwrap_or("").to_string();
        }
        Err(Error::OracleInconclusive { .. }) => row.failed_condition = "inconclusive".into(),
        Err(e) => row.failed_condition = format!("error: {e}"),
    }
    if spec.verify {
        match verification_target(spec.theorem, &inputs)
            .and_then(|(class, params)| verify_on_disk(&class, &params, &spec.disk_grid, series))
        {
            Ok(rep) => {
                row.min_slack = Some(rep.min_slack);
                row.status = format!("{:?}", rep.status);
            }
            Err(e) => row.status = format!("error: {e}"),
        }
    }
    row
}

/// All rows in row-major order; the first varying axis is the outermost.
pub fn run_scan(spec: &ScanSpec, series: &SeriesSettings) -> Result<Vec<ScanRow>, String> {
    let total = spec.validate()?;
    let series = spec.series.unwrap_or(*series);
    series.validate().map_err(|e| e.to_string())?;
    Ok((0..total)
        .into_par_iter()
        .map(|i| evaluate(spec, &series, spec.point(i)))
        .collect())
}

pub fn write_csv(spec: &ScanSpec, rows: &[ScanRow], out: impl std::io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = spec.varying.iter().map(|a| a.symbol.name()).collect();
    header.extend(["certificate_passed", "failed_condition", "min_slack", "status"]);
    w.write_record(&header)?;
    for row in rows {
        let mut rec: Vec<String> = row.coords.iter().map(|&x| sci(x)).collect();
        rec.push(row.certificate_passed.to_string());
        rec.push(row.failed_condition.clone());
        rec.push(row.min_slack.map(sci).unwrap_or_default());
        rec.push(row.status.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_scan(series: &SeriesSettings, json: bool, args: &ScanArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => return crate::fail(2, format!("{}: {e}", args.spec.display())),
    };
    let spec: ScanSpec = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => return crate::fail(2, format!("invalid scan spec: {e}")),
    };
    let rows = match run_scan(&spec, series) {
        Ok(r) => r,
        Err(e) => return crate::fail(2, format!("invalid scan spec: {e}")),
    };
    let file = match fs::File::create(&args.out) {
        Ok(f) => f,
        Err(e) => return crate::fail(2, format!("{}: {e}", args.out.display())),
    };
    if let Err(e) = write_csv(&spec, &rows, std::io::BufWriter::new(file)) {
        return crate::fail(3, e);
    }
    let passed = rows.iter().filter(|r| r.certificate_passed).count();
    let violated = rows.iter().filter(|r| r.status == "Violated").count();
    if json {
        crate::print_json(&serde_json::json!({
            "points": rows.len(), "certificates_passed": passed, "violated": violated,
            "out": args.out.display().to_string(),
        }));
    } else {
        println!(
            "{} points, {passed} certificates passed, {violated} violated; wrote {}",
            rows.len(),
            args.out.display()
        );
    }
    ExitCode::SUCCESS
}
