use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperstar::{
    certify, gauss_2f1, gauss_2f1_derivative, judge, log_derivative_q, shifted_f, verification_target,
    verify_on_disk, BoundaryGridSettings, Certificate, CertifyInputs, CrossCheckVerdict, DiskGridSettings, Error,
    HypergeomParams, LineSearchSettings, RadialSpacing, SeriesSettings, ShapeClass, TheoremKind,
    VerificationStatus,
};
use num_complex::Complex64;
use serde_json::json;

mod scan;

#[derive(Parser)]
#[command(name = "hyperstar", version, about = "Starlikeness certificates for z·2F1(a,b;c;z) and a disk-grid verifier")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Relative truncation tolerance of the series.
    #[arg(long, global = true, default_value_t = 1e-16)]
    series_tol: f64,
    #[arg(long, global = true, default_value_t = 200_000)]
    max_terms: usize,
    /// Largest |z| at which the series is evaluated.
    #[arg(long, global = true, default_value_t = 0.995)]
    radius_cap: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,
}

impl GlobalOpts {
    fn series(&self) -> SeriesSettings {
        SeriesSettings {
            tol: self.series_tol,
            max_terms: self.max_terms,
            radius_cap: self.radius_cap,
            ..SeriesSettings::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F, F', f and q = zf'/f at one point.
    Eval(EvalArgs),
    /// Run one sufficient-condition checker and print its certificate.
    Certify(CertifyArgs),
    /// Check the class inequality on a disk grid.
    Verify(VerifyArgs),
    /// Certify, then verify the claimed class on a disk grid.
    Crosscheck(CrosscheckArgs),
    /// Sweep a parameter region and write one CSV row per point.
    Scan(ScanArgs),
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',');
    let re = parts.next().unwrap_or("").trim();
    let im = parts.next().unwrap_or("0").trim();
    if parts.next().is_some() {
        return Err(format!("expected `re,im`, got `{s}`"));
    }
    let re: f64 = re.parse().map_err(|_| format!("bad real part in `{s}`"))?;
    let im: f64 = im.parse().map_err(|_| format!("bad imaginary part in `{s}`"))?;
    Ok(Complex64::new(re, im))
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b: Complex64,
    /// Ignored by the checkers that set c = a + b + 1.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Option<Complex64>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    Starlike,
    StronglyStarlike,
    Spirallike,
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long, value_enum)]
    class: Option<ClassKind>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
}

impl ClassArgs {
    fn class(&self) -> Result<Option<ShapeClass>, Error> {
        self.class.map(|k| class_of(k, self.alpha, self.lambda)).transpose()
    }
}

fn class_of(kind: ClassKind, alpha: f64, lambda: f64) -> Result<ShapeClass, Error> {
    match kind {
        ClassKind::Starlike => ShapeClass::starlike(alpha),
        ClassKind::StronglyStarlike => ShapeClass::strongly_starlike(alpha),
        ClassKind::Spirallike => ShapeClass::spirallike(lambda, alpha),
    }
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    class: ClassArgs,
    /// Common imaginary shift of b and c (cor-a2).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s: f64,
    /// D >= 0 instead of D > 0 where A != B (general).
    #[arg(long)]
    relaxed: bool,
    /// Boundary samples for the general checker.
    #[arg(long)]
    n_theta: Option<usize>,
    /// Log-grid size of the positive-line minimizer.
    #[arg(long)]
    ls_points: Option<usize>,
    /// Margin below which a line-search minimum is inconclusive.
    #[arg(long)]
    ls_margin: Option<f64>,
}

impl CertifyArgs {
    fn inputs(&self) -> Result<(TheoremKind, CertifyInputs), Error> {
        let kind: TheoremKind = self.theorem.parse()?;
        let c = match self.params.c {
            Some(c) => c,
            None if kind.forces_p_zero() => self.params.a + self.params.b + 1.0,
            None => return Err(Error::InvalidParams(format!("theorem `{kind}` needs --c"))),
        };
        let mut line_search = LineSearchSettings::default();
        if let Some(n) = self.ls_points {
            line_search.n_log_points = n;
        }
        if let Some(m) = self.ls_margin {
            line_search.min_margin = m;
        }
        let mut boundary_grid = BoundaryGridSettings::default();
        if let Some(n) = self.n_theta {
            boundary_grid.n_theta = n;
        }
        let inputs = CertifyInputs {
            lambda: self.class.lambda,
            s: self.s,
            class: self.class.class()?,
            line_search,
            boundary_grid,
            relaxed: self.relaxed,
            ..CertifyInputs::new(self.params.a, self.params.b, c, self.class.alpha)
        };
        Ok((kind, inputs))
    }
}

#[derive(Args, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 40)]
    n_radii: usize,
    #[arg(long, default_value_t = 0.995)]
    r_max: f64,
    #[arg(long, default_value_t = 720)]
    n_angles: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Geometric)]
    spacing: Spacing,
    #[arg(long, default_value_t = 1e-9)]
    violation_tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Spacing {
    Uniform,
    Geometric,
}

impl GridArgs {
    fn grid(&self) -> DiskGridSettings {
        DiskGridSettings {
            n_radii: self.n_radii,
            r_max: self.r_max,
            n_angles: self.n_angles,
            radial_spacing: match self.spacing {
                Spacing::Uniform => RadialSpacing::Uniform,
                Spacing::Geometric => RadialSpacing::Geometric,
            },
            violation_tol: self.violation_tol,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    certify: CertifyArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
pub(crate) struct ScanArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

pub(crate) fn sci(x: f64) -> String {
    format!("{x:.14e}")
}

fn csci(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", sci(z.re), sci(z.im.abs()))
}

pub(crate) fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

pub(crate) fn fail(code: u8, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(code)
}

fn cmd_eval(g: &GlobalOpts, args: &EvalArgs) -> ExitCode {
    let Some(c) = args.params.c else {
        return fail(2, "eval needs --c");
    };
    let params = match HypergeomParams::new(args.params.a, args.params.b, c) {
        Ok(p) => p,
        Err(e) => return fail(2, e),
    };
    let series = g.series();
    if let Err(e) = series.validate() {
        return fail(2, e);
    }
    let z = args.z;
    let values = (|| -> Result<_, Error> {
        Ok((
            gauss_2f1(&params, z, &series)?,
            gauss_2f1_derivative(&params, z, &series)?,
            shifted_f(&params, z, &series)?,
        ))
    })();
    let (f, df, sf) = match values {
        Ok(v) => v,
        Err(e) => return fail(3, e),
    };
    let q = log_derivative_q(&params, z, &series);
    if g.json {
        print_json(&json!({
            "z": z, "F": f, "dF": df, "f": sf,
            "q": q.as_ref().ok(),
        }));
    } else {
        println!("F  = {}", csci(f));
        println!("F' = {}", csci(df));
        println!("f  = {}", csci(sf));
        match &q {
            Ok(q) => println!("q  = {}", csci(*q)),
            Err(_) => println!("q  = undefined"),
        }
    }
    match q {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => fail(3, e),
    }
}

/// Runs the checker; an inconclusive line search still yields its trace.
fn run_certify(kind: TheoremKind, inputs: &CertifyInputs) -> Result<Certificate, Error> {
    match certify(kind, inputs) {
        Err(Error::OracleInconclusive { certificate, min_value, argmin_s }) => {
            eprintln!("warning: line search inconclusive (min {min_value:e} at s = {argmin_s:e}); reported as not passed");
            Ok(*certificate)
        }
        other => other,
    }
}

fn cmd_certify(args: &CertifyArgs) -> ExitCode {
    let cert = match args.inputs().and_then(|(kind, inputs)| run_certify(kind, &inputs)) {
        Ok(c) => c,
        Err(e) => return fail(2, e),
    };
    print_json(&cert);
    if cert.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(g: &GlobalOpts, args: &VerifyArgs) -> ExitCode {
    let class = match args.class.class() {
        Ok(Some(c)) => c,
        Ok(None) => return fail(2, "verify needs --class"),
        Err(e) => return fail(2, e),
    };
    let Some(c) = args.params.c else {
        return fail(2, "verify needs --c");
    };
    let report = HypergeomParams::new(args.params.a, args.params.b, c)
        .and_then(|p| verify_on_disk(&class, &p, &args.grid.grid(), &g.series()));
    let report = match report {
        Ok(r) => r,
        Err(e) => return fail(2, e),
    };
    print_json(&report);
    match report.status {
        VerificationStatus::Consistent => ExitCode::SUCCESS,
        VerificationStatus::Violated => ExitCode::from(1),
        VerificationStatus::Degenerate => ExitCode::from(2),
    }
}

fn cmd_crosscheck(g: &GlobalOpts, args: &CrosscheckArgs) -> ExitCode {
    let run = || -> Result<_, Error> {
        let (kind, inputs) = args.certify.inputs()?;
        let cert = run_certify(kind, &inputs)?;
        let (class, params) = verification_target(kind, &inputs)?;
        let report = verify_on_disk(&class, &params, &args.grid.grid(), &g.series())?;
        let check = judge(cert.passed, report);
        Ok((cert, check))
    };
    let (cert, check) = match run() {
        Ok(v) => v,
        Err(e) => return fail(2, e),
    };
    print_json(&json!({ "certificate": cert, "cross_check": check }));
    match check.verdict {
        CrossCheckVerdict::Unsound => ExitCode::from(4),
        _ => ExitCode::SUCCESS,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return fail(2, "--threads must be >= 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(2, e);
        }
    }
    match &cli.command {
        Command::Eval(a) => cmd_eval(&cli.global, a),
        Command::Certify(a) => cmd_certify(a),
        Command::Verify(a) => cmd_verify(&cli.global, a),
        Command::Crosscheck(a) => cmd_crosscheck(&cli.global, a),
        Command::Scan(a) => scan::cmd_scan(&cli.global.series(), cli.global.json, a),
    }
}
