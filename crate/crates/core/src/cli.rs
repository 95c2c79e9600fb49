//! Command-line front end. The binary only forwards to [`main_with_args`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::certificates::{
    certify_braid_mixed, certify_l1, certify_qubit_qudit_mds, certify_three_qubit_svd, certify_two_param,
    certify_w_mixed, verify_certificate, SeparableDecomposition,
};
use crate::criteria::{noise_threshold, Detector, ThresholdOptions, ThresholdResult, CERTIFICATE_TOL};
use crate::error::{Error, ErrorCategory, Result};
use crate::hs::{decompose, svd_reduce_3q_slices, svd_reduce_qubit_qudit};
use crate::io::{certificate_to_json, load_certificate, load_density, parse_tolerance, tolerance_from_env, StateExpr, StateSpec};
use crate::kernel::DensityMatrix;
use crate::report::{analyze, render_table, to_stable_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "sepscope", version, about = "Separability analysis of qubit and qubit-qudit density matrices")]
pub struct Cli {
    /// Numerical tolerance; overrides SEPSCOPE_TOL.
    #[arg(long, global = true, value_parser = tol_arg)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Input {
    /// State expression: ghz:<1-8>, w, braid:<n>:<i>, ghzdiag:p1,...,p8, two_param:R1,R3, four_qubit_xyz.
    #[arg(long, conflicts_with = "file")]
    pub state: Option<String>,
    /// JSON matrix file with `shape` and `matrix`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Signal weight p of the white-noise mixture p·ρ + (1−p)·I/D.
    #[arg(long)]
    pub noise: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Method {
    L1,
    Svd,
    TwoParam,
    BraidMixed,
    WMixed,
    QubitQudit,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every applicable criterion and report the verdicts.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Re-verify a stored certificate instead of analyzing.
        #[arg(long, requires = "against")]
        certificate: Option<PathBuf>,
        /// State the certificate should reconstruct.
        #[arg(long)]
        against: Option<String>,
    },
    /// White-noise threshold of a detector, with the scan table.
    Threshold {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "ppt", value_parser = detector_arg)]
        detector: Detector,
        #[arg(long, default_value_t = 1e-6)]
        tol_p: f64,
        #[arg(long, default_value_t = 64)]
        scan_points: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Build a separable decomposition and verify it.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        method: Method,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a state to a matrix file.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        output: PathBuf,
    },
}

fn tol_arg(s: &str) -> std::result::Result<f64, String> {
    parse_tolerance(s).map_err(|e| e.to_string())
}

fn detector_arg(s: &str) -> std::result::Result<Detector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn exit_code(err: &Error) -> i32 {
    match err.category() {
        ErrorCategory::Parse => EXIT_PARSE,
        ErrorCategory::Validation => EXIT_VALIDATION,
        ErrorCategory::Precondition => EXIT_PRECONDITION,
        ErrorCategory::Internal => EXIT_FAILED,
    }
}

/// What a command produced: text for stdout and an exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

struct Loaded {
    rho: DensityMatrix,
    label: String,
    spec: Option<StateSpec>,
}

fn load(input: &Input, tol: f64) -> Result<Loaded> {
    match (&input.state, &input.file) {
        (Some(expr), _) => {
            let spec = StateSpec::parse(expr, input.noise)?;
            Ok(Loaded {
                rho: spec.build()?,
                label: spec.to_string(),
                spec: Some(spec),
            })
        }
        (None, Some(path)) => {
            let rho = crate::io::apply_noise(load_density(path, tol)?, input.noise)?;
            let label = match input.noise {
                Some(p) => format!("{} --noise {p}", path.display()),
                None => path.display().to_string(),
            };
            Ok(Loaded { rho, label, spec: None })
        }
        (None, None) => Err(Error::Parse("either --state or --file is required".into())),
    }
}

fn cmd_analyze(input: &Input, format: Format, tol: f64) -> Result<Outcome> {
    let start = Instant::now();
    let loaded = load(input, tol)?;
    let report = analyze(&loaded.rho, &loaded.label, loaded.spec.as_ref(), tol)?;
    match format {
        Format::Json => Ok(Outcome::ok(to_stable_json(&report)? + "\n")),
        Format::Table => {
            let mut out = render_table(&report);
            let _ = writeln!(out, "time      {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
            Ok(Outcome::ok(out))
        }
        Format::Csv => Err(Error::Parse("csv output is only available for threshold".into())),
    }
}

fn cmd_reverify(path: &Path, against: &str, noise: Option<f64>) -> Result<Outcome> {
    let cert = load_certificate(path)?;
    let rho = StateSpec::parse(against, noise)?.build()?;
    let check = verify_certificate(&rho, &cert, CERTIFICATE_TOL)?;
    let code = if check.valid { EXIT_OK } else { EXIT_FAILED };
    Ok(Outcome {
        stdout: to_stable_json(&check)? + "\n",
        code,
    })
}

fn threshold_csv(r: &ThresholdResult) -> String {
    let sites = r.scan.first().map_or(0, |s| s.min_pt_eigenvalues.len());
    let mut out = String::from("p");
    for k in 0..sites {
        let _ = write!(out, ",min_ptu_eigenvalue_site_{k}");
    }
    out.push('\n');
    for s in &r.scan {
        let _ = write!(out, "{}", s.p);
        for m in &s.min_pt_eigenvalues {
            let _ = write!(out, ",{m}");
        }
        out.push('\n');
    }
    out
}

fn threshold_table(r: &ThresholdResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "detector   {}", r.detector);
    match r.threshold {
        Some(t) => {
            let _ = writeln!(out, "threshold  {t:.9}  (tol_p {:e})", r.tol_p);
        }
        None => {
            let _ = writeln!(out, "threshold  none: the detector never fires on [0, 1]");
        }
    }
    out
}

fn cmd_threshold(input: &Input, detector: Detector, tol_p: f64, scan_points: usize, format: Format, tol: f64) -> Result<Outcome> {
    if input.noise.is_some() {
        return Err(Error::Parse("threshold scans the noise weight itself; drop --noise".into()));
    }
    let loaded = load(input, tol)?;
    let opts = ThresholdOptions {
        tol_p,
        tol,
        scan_points,
    };
    let r = noise_threshold(&loaded.rho, detector, opts)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_stable_json(&r)? + "\n",
        Format::Csv => threshold_csv(&r),
        Format::Table => threshold_table(&r),
    }))
}

fn family_needed(spec: Option<&StateSpec>, what: &str) -> Error {
    let got = spec.map_or_else(|| "a matrix file".to_string(), |s| s.expr.to_string());
    Error::Precondition(format!("method needs a {what} state expression, got {got}"))
}

fn build_certificate(method: Method, loaded: &Loaded) -> Result<SeparableDecomposition> {
    let spec = loaded.spec.as_ref();
    let p = spec.map_or(1.0, StateSpec::signal_weight);
    match method {
        Method::L1 => certify_l1(&decompose(&loaded.rho)?),
        Method::QubitQudit => {
            let hs = decompose(&loaded.rho)?;
            certify_qubit_qudit_mds(&hs, &svd_reduce_qubit_qudit(&hs)?)
        }
        Method::Svd => {
            let hs = decompose(&loaded.rho)?;
            if hs.shape().dims() != [2, 2, 2] {
                return certify_qubit_qudit_mds(&hs, &svd_reduce_qubit_qudit(&hs)?);
            }
            let reductions = (0..3).map(|p| svd_reduce_3q_slices(&hs, p)).collect::<Result<Vec<_>>>()?;
            let best = reductions
                .iter()
                .min_by(|a, b| a.total_singular_sum().total_cmp(&b.total_singular_sum()))
                .expect("three pivots");
            certify_three_qubit_svd(&hs, best)
        }
        Method::TwoParam => match spec.map(|s| &s.expr) {
            Some(&StateExpr::TwoParam { r1, r3 }) => certify_two_param(p * r1, p * r3),
            _ => Err(family_needed(spec, "two_param")),
        },
        Method::BraidMixed => match spec.map(|s| &s.expr) {
            Some(StateExpr::Braid { n: 3, index: 1 }) => certify_braid_mixed(p),
            _ => Err(family_needed(spec, "braid:3:1")),
        },
        Method::WMixed => match spec.map(|s| &s.expr) {
            Some(StateExpr::W) => certify_w_mixed(p),
            _ => Err(family_needed(spec, "w")),
        },
    }
}

fn cmd_certify(input: &Input, method: Method, output: Option<&Path>, tol: f64) -> Result<Outcome> {
    let loaded = load(input, tol)?;
    let cert = build_certificate(method, &loaded)?;
    let check = verify_certificate(&loaded.rho, &cert, CERTIFICATE_TOL)?;
    if !check.valid {
        return Ok(Outcome {
            stdout: format!(
                "certificate failed verification: {}\n",
                check.issue.unwrap_or_else(|| format!("deviation {:.3e}", check.max_deviation))
            ),
            code: EXIT_FAILED,
        });
    }
    let json = certificate_to_json(&cert)?;
    match output {
        Some(path) => {
            std::fs::write(path, &json)?;
            Ok(Outcome::ok(format!(
                "verified: {} product terms, max deviation {:.3e}, written to {}\n",
                cert.len(),
                check.max_deviation,
                path.display()
            )))
        }
        None => Ok(Outcome::ok(json + "\n")),
    }
}

fn cmd_export(input: &Input, output: &Path, tol: f64) -> Result<Outcome> {
    let loaded = load(input, tol)?;
    crate::io::save_density(output, &loaded.rho)?;
    Ok(Outcome::ok(format!("wrote {}\n", output.display())))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let tol = match cli.tol {
        Some(t) => t,
        None => tolerance_from_env()?,
    };
    match &cli.command {
        Command::Analyze {
            input,
            certificate: Some(path),
            against: Some(against),
            ..
        } => cmd_reverify(path, against, input.noise),
        Command::Analyze { input, format, .. } => cmd_analyze(input, *format, tol),
        Command::Threshold {
            input,
            detector,
            tol_p,
            scan_points,
            format,
        } => cmd_threshold(input, *detector, *tol_p, *scan_points, *format, tol),
        Command::Certify { input, method, output } => cmd_certify(input, *method, output.as_deref(), tol),
        Command::Export { input, output } => cmd_export(input, output, tol),
    }
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
