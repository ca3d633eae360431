//! Command-line front end: `verify`, `phi`, `classify`, `transform`.
//!
//! Exit codes: 0 success, 1 verification failed, 2 I/O failure, 64 usage
//! error, 65 bad input data.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::frames::classify_frame;
use crate::numerics::{Mat2C, MatrixJson, Tolerance};
use crate::sl2c::{metric, phi, SL2Element};
use crate::spintensor::{transform, FrameTransition, SpinTensor, SpinTensorJson, TransitionJson};
use crate::verify::{run_suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Parser)]
#[command(
    name = "dirac-pin",
    version,
    about = "Pin(1,3), the Lorentz group and Dirac spin-tensors"
)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Draws per randomized check (default: each check's standard size).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Also write the JSON result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Tolerance for identities involving sampled elements.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full self-check suite.
    Verify,
    /// Map a 2x2 SL(2,C) matrix to its Lorentz matrix.
    Phi { input: PathBuf },
    /// Classify the frame reached by a 4x4 spinor transition matrix.
    Classify { input: PathBuf },
    /// Transform spin-tensor components under a frame transition.
    Transform { tensor: PathBuf, transition: PathBuf },
}

enum Failure {
    Usage(String),
    Data(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

#[derive(Serialize)]
struct PhiOutput {
    matrix: MatrixJson,
    residuals: PhiResiduals,
}

#[derive(Serialize)]
struct PhiResiduals {
    metric: f64,
    det: f64,
    time_time: f64,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_DATA
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "I/O error: {msg}");
            EXIT_IO
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if cli.samples == Some(0) {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let tol = match cli.tol {
        None => Tolerance::default(),
        Some(t) if t > 0.0 && t.is_finite() => Tolerance::with_float(t).map_err(|e| Failure::Usage(e.to_string()))?,
        Some(t) => return Err(Failure::Usage(format!("--tol must be a positive number, got {t}"))),
    };
    match &cli.command {
        Command::Verify => cmd_verify(cli, tol, out, err),
        Command::Phi { input } => {
            let json: MatrixJson = read_json(input)?;
            let m = Mat2C::from_json(&json)?;
            let s = SL2Element::new(m, tol)?;
            let big = phi(&s)?;
            let g = metric();
            let output = PhiOutput {
                matrix: big.to_json(),
                residuals: PhiResiduals {
                    metric: (big.transpose() * g * big).max_abs_diff(&g),
                    det: (big.det() - 1.0).abs(),
                    time_time: big[(0, 0)],
                },
            };
            emit(cli, &output, out)
        }
        Command::Classify { input } => {
            let json: MatrixJson = read_json(input)?;
            let f = FrameTransition::from_json(
                &TransitionJson {
                    s_hat: json,
                    t_hat: None,
                    s: None,
                    t: None,
                },
                tol,
            )?;
            emit(cli, &classify_frame(&f, tol)?, out)
        }
        Command::Transform { tensor, transition } => {
            let x = SpinTensor::from_json(&read_json::<SpinTensorJson>(tensor)?)?;
            let f = FrameTransition::from_json(&read_json::<TransitionJson>(transition)?, tol)?;
            emit(cli, &transform(&x, &f).to_json(), out)
        }
    }
}

fn cmd_verify(cli: &Cli, tol: Tolerance, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let report = run_suite(&VerifyConfig {
        seed: cli.seed,
        samples: cli.samples,
        tol,
    });
    for check in &report.checks {
        writeln!(
            out,
            "{:<26} {:<4}  max residual {:>10.3e}  samples {:>5}",
            check.name, check.status, check.max_residual, check.samples
        )
        .map_err(io_failure)?;
    }
    let total: std::time::Duration = report.checks.iter().map(|c| c.elapsed).sum();
    let _ = writeln!(err, "elapsed {total:.2?}");
    if let Some(path) = &cli.json {
        write_json(path, &report)?;
    }
    let passed = report.checks.iter().filter(|c| c.passed()).count();
    writeln!(out, "{passed}/{} checks passed", report.checks.len()).map_err(io_failure)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Io(e.to_string())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Data(format!("format error: {}: {e}", path.display())))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    fs::write(path, to_pretty(value)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(cli: &Cli, value: &T, out: &mut dyn Write) -> Result<i32, Failure> {
    let line = serde_json::to_string(value).expect("plain data serializes");
    writeln!(out, "{line}").map_err(io_failure)?;
    if let Some(path) = &cli.json {
        write_json(path, value)?;
    }
    Ok(EXIT_OK)
}
