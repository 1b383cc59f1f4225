//! Batch front-end for the lattice spectra solvers.
//!
//! Exit status: 0 on success, 2 for parse/configuration errors, 3 for
//! violated preconditions, 4 for numerical failures. Errors emit a
//! structured JSON record on stderr.

mod config;
mod report;
mod run;

use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use config::{CommandConfig, OutputFormat, RunConfig};

/// Structured failure: exit status plus a machine-readable record.
#[derive(Debug)]
pub struct CliError {
    pub status: u8,
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            status: 2,
            kind: "parse-error".into(),
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        CliError {
            status: 4,
            kind: "io-error".into(),
            message: message.into(),
        }
    }
}

impl From<lattice_spectra::Error> for CliError {
    fn from(err: lattice_spectra::Error) -> Self {
        use lattice_spectra::Error as E;
        let (status, kind) = match &err {
            E::ConvergenceFailure { .. } => (4, "convergence-failure"),
            E::BandNotFound { .. } => (4, "band-not-found"),
            E::UnsupportedDispersion => (3, "unsupported-dispersion"),
            E::DualityNotApplicable => (3, "duality-not-applicable"),
            E::OutsideDiscreteWindow { .. } => (3, "outside-discrete-window"),
            E::ThresholdCollision { .. } => (3, "threshold-collision"),
            E::NotAnEigenvalue { .. } => (3, "not-an-eigenvalue"),
            E::WindowTooSmall { .. } => (3, "window-too-small"),
            E::SizeLimit { .. } => (3, "size-limit"),
            E::StrengthOutOfRange { .. } => (3, "strength-out-of-range"),
            E::InvalidParameter { .. } => (3, "invalid-parameter"),
        };
        CliError {
            status,
            kind: kind.into(),
            message: err.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "lattice-spectra",
    version,
    about = "Energy spectra of a quantum particle on a 1D lattice",
    long_about = "Computes bound states of hard-wall step potentials on a tight-binding \
                  chain, verifies the attractive/repulsive spectral duality, cross-checks \
                  against exact diagonalization, and solves the Kronig-Penney band-tuning \
                  construction. All lattice energies are in units of K0."
)]
struct Cli {
    /// Run from a flat key-value JSON config file instead of a subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,

    /// Write the report to a file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Annotation: the kinetic scale K0 in physical units (labels only)
    #[arg(long, global = true)]
    k0: Option<f64>,

    /// Annotation: the lattice spacing in physical units (labels only)
    #[arg(long, global = true)]
    ell: Option<f64>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discrete energies of the hard-wall + step problem
    Bound {
        /// Step width in sites
        #[arg(long)]
        n0: usize,
        /// Signed step height U/K0 (negative = well, positive = barrier)
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        /// Absolute bisection tolerance on energies
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Full spectral report: continuous band, discrete energies, and
    /// optional per-state localization metadata
    Spectrum {
        #[arg(long)]
        n0: usize,
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Include wavefunction metadata (IPR, interior weight, decay rate)
        #[arg(long)]
        states: bool,
    },
    /// Verify the attractive/repulsive duality end to end: analytic
    /// spectrum mirroring plus the matrix conjugation identity
    DualityCheck {
        #[arg(long)]
        n0: usize,
        /// Step magnitude; both signs are solved and compared
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Window size for the matrix identity check
        #[arg(long, default_value_t = 256)]
        nsites: usize,
    },
    /// Exact diagonalization of the truncated step Hamiltonian with
    /// bound/band classification and the positivity check
    Oracle {
        #[arg(long)]
        n0: usize,
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        /// Truncation window size
        #[arg(long, default_value_t = 2000)]
        nsites: usize,
        /// Localization threshold (default 10/nsites)
        #[arg(long)]
        ipr_threshold: Option<f64>,
    },
    /// Kronig-Penney band edges, width, and gaps at a given coupling
    KpBands {
        /// Dimensionless delta strength
        #[arg(long)]
        upsilon: f64,
        /// Sample the lowest band on this many Bloch phases (0 = edges only)
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Tune V0 and V_r so the lowest band becomes a lattice dispersion of
    /// the requested width
    KpTune {
        /// Target band width W (absolute units)
        #[arg(long)]
        width: f64,
        #[arg(long)]
        upsilon: f64,
        /// Bloch-phase samples of the tuned band
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
}

impl Command {
    fn into_config(self) -> CommandConfig {
        match self {
            Command::Bound { n0, u, tol } => CommandConfig::Bound { n0, u, tol },
            Command::Spectrum { n0, u, tol, states } => {
                CommandConfig::Spectrum { n0, u, tol, states }
            }
            Command::DualityCheck { n0, u, tol, nsites } => {
                CommandConfig::DualityCheck { n0, u, tol, nsites }
            }
            Command::Oracle {
                n0,
                u,
                nsites,
                ipr_threshold,
            } => CommandConfig::Oracle {
                n0,
                u,
                nsites,
                ipr_threshold,
            },
            Command::KpBands { upsilon, samples } => CommandConfig::KpBands { upsilon, samples },
            Command::KpTune {
                width,
                upsilon,
                samples,
            } => CommandConfig::KpTune {
                width,
                upsilon,
                samples,
            },
        }
    }
}

fn resolve(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let output = cli.output.clone();
    if cli.config.is_some() && cli.command.is_some() {
        return Err(CliError::parse(
            "--config and a subcommand are mutually exclusive",
        ));
    }
    let run_config = if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read config {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::parse(format!("config is not valid JSON: {e}")))?;
        let map = value
            .as_object()
            .ok_or_else(|| CliError::parse("config must be a flat JSON object"))?;
        RunConfig::from_flat_map(map)?
    } else if let Some(command) = cli.command {
        RunConfig {
            command: command.into_config(),
            format: cli.format.into(),
            k0: cli.k0,
            ell: cli.ell,
        }
    } else {
        return Err(CliError::parse(
            "nothing to do: provide a subcommand or --config (see --help)",
        ));
    };
    Ok((run_config, output))
}

/// Resolves the output path, honoring the optional output-directory
/// override LATTICE_SPECTRA_OUTDIR for relative paths.
fn output_path(path: PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("LATTICE_SPECTRA_OUTDIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path
}

fn emit(report: &report::Report, format: OutputFormat, output: Option<PathBuf>) -> Result<(), CliError> {
    let mut buffer: Vec<u8> = Vec::new();
    match format {
        OutputFormat::Json => report.write_json(&mut buffer),
        OutputFormat::Csv => report.write_csv(&mut buffer),
    }
    .map_err(|e| CliError::io(format!("cannot serialize report: {e}")))?;

    match output {
        Some(path) => {
            let path = output_path(path);
            fs::write(&path, &buffer)
                .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&buffer)
                .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = resolve(cli).and_then(|(config, output)| {
        let report = run::execute(&config)?;
        emit(&report, config.format, output)
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let record = serde_json::json!({
                "error": {
                    "status": err.status,
                    "kind": err.kind,
                    "message": err.message,
                }
            });
            eprintln!("{record}");
            ExitCode::from(err.status)
        }
    }
}
