//! Command-line front end: decompose, reconstruct and analyze signals, and
//! encode/decode images, with plot-ready text output.
//!
//! Exit codes: 0 success, 2 usage, 3 file parse, 4 numerical/domain,
//! 5 aliasing or rank deficiency.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use sinlets::transform::BasisKind;
use sinlets::PhaseKind;

use sinlets_cli::commands::{self, BasisArgs, CountSpec, ImageBasisArgs, NoiseArgs};
use sinlets_cli::{parse_members, CliError, GridSpec};

fn parse_family(s: &str) -> Result<PhaseKind, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn parse_kind(s: &str) -> Result<BasisKind, CliError> {
    s.parse().map_err(CliError::Usage)
}

#[derive(Args)]
struct BasisParams {
    /// Phase family: erf | logistic
    #[arg(long, default_value = "logistic")]
    family: String,
    /// Basis center (estimated from the signal energy centroid if omitted)
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<f64>,
    /// Basis width (estimated from the energy spread if omitted)
    #[arg(long)]
    sigma: Option<f64>,
    /// Spread multiplier for the width estimate, in [1, 2]
    #[arg(long, default_value_t = 1.5)]
    c: f64,
}

impl BasisParams {
    fn to_args(&self) -> Result<BasisArgs, CliError> {
        Ok(BasisArgs {
            family: parse_family(&self.family)?,
            t0: self.t0,
            sigma: self.sigma,
            c: self.c,
        })
    }
}

#[derive(Args)]
struct NoiseParams {
    /// Add seeded white Gaussian noise of this level to the input samples
    #[arg(long)]
    noise_sigma: Option<f64>,
    /// Noise generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl NoiseParams {
    fn to_args(&self) -> NoiseArgs {
        NoiseArgs {
            sigma: self.noise_sigma,
            seed: self.seed,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sinlets",
    about = "Localized orthonormal basis transforms for signals and images",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write basis-member traces (sinlet, coslet, frequency, potential,
    /// amplitude) on a grid, one CSV per quantity
    Basis {
        #[arg(long, default_value = "logistic")]
        family: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,
        /// Member indices, `0..7` or `0,1,2`
        #[arg(long)]
        n: String,
        /// Evaluation grid START:STOP:COUNT
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Output prefix; files become PREFIX.sinlet.csv etc.
        #[arg(long)]
        out: PathBuf,
    },
    /// Project a signal file onto the first N basis members
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        basis: BasisParams,
        /// Number of coefficients
        #[arg(long)]
        count: Option<usize>,
        /// Highest frequency to capture (Hz); pairs with --t-max
        #[arg(long)]
        nu_max: Option<f64>,
        /// Last instant where the signal is non-negligible
        #[arg(long)]
        t_max: Option<f64>,
        /// Coefficient kind: sin | cos
        #[arg(long, default_value = "sin")]
        kind: String,
        #[command(flatten)]
        noise: NoiseParams,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a coefficient file on a grid
    Reconstruct {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Keep the leading basis content of a noisy signal
    Denoise {
        input: PathBuf,
        #[command(flatten)]
        basis: BasisParams,
        /// Number of coefficients (energy criterion when omitted)
        #[arg(long)]
        count: Option<usize>,
        /// Energy fraction the automatic count may discard
        #[arg(long, default_value_t = 1e-3)]
        energy_loss: f64,
        #[command(flatten)]
        noise: NoiseParams,
        #[arg(long)]
        out: PathBuf,
    },
    /// Signal envelope from a coefficient file
    Envelope {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Signal derivative from a sinlet coefficient file
    Differentiate {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Least-squares signal recovery from non-uniform samples
    Resample {
        input: PathBuf,
        #[command(flatten)]
        basis: BasisParams,
        /// Number of basis members to fit (must be below the sample count)
        #[arg(long)]
        count: usize,
        /// Dense output grid START:STOP:COUNT
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[command(flatten)]
        noise: NoiseParams,
        #[arg(long)]
        out: PathBuf,
        /// Also write the fitted coefficients
        #[arg(long)]
        coeffs_out: Option<PathBuf>,
    },
    /// Doppler-scaled, delayed echo of a stored waveform
    Doppler {
        input: PathBuf,
        /// Propagation speed (m/s)
        #[arg(long)]
        speed: f64,
        /// Radial target velocity (m/s), |v| < speed
        #[arg(long, allow_hyphen_values = true)]
        velocity: f64,
        /// Target range (m)
        #[arg(long)]
        distance: f64,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Transform a PGM image into a coefficient matrix file
    ImgEncode {
        input: PathBuf,
        /// Horizontal coefficient count
        #[arg(long)]
        k1: usize,
        /// Vertical coefficient count
        #[arg(long)]
        k2: usize,
        #[arg(long, default_value = "logistic")]
        family: String,
        /// Axis center in physical units
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        center: f64,
        /// Axis width in physical units
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct a PGM image from a coefficient matrix file
    ImgDecode {
        input: PathBuf,
        /// Output width (source width when omitted)
        #[arg(long)]
        width: Option<usize>,
        /// Output height (source height when omitted)
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Basis {
            family,
            t0,
            sigma,
            n,
            grid,
            out,
        } => commands::basis_traces(
            parse_family(&family)?,
            t0,
            sigma,
            &parse_members(&n)?,
            &GridSpec::parse(&grid)?,
            &out,
        ),
        Command::Decompose {
            input,
            basis,
            count,
            nu_max,
            t_max,
            kind,
            noise,
            out,
        } => {
            let count = match (count, nu_max, t_max) {
                (Some(n), None, None) => CountSpec::Fixed(n),
                (None, Some(nu_max), Some(t_max)) => CountSpec::FrequencyLimit { nu_max, t_max },
                _ => {
                    return Err(CliError::Usage(
                        "pass either --count or both --nu-max and --t-max".into(),
                    ))
                }
            };
            commands::decompose(
                &input,
                &basis.to_args()?,
                &count,
                parse_kind(&kind)?,
                &noise.to_args(),
                &out,
            )
        }
        Command::Reconstruct { input, grid, out } => {
            commands::reconstruct(&input, &GridSpec::parse(&grid)?, &out)
        }
        Command::Denoise {
            input,
            basis,
            count,
            energy_loss,
            noise,
            out,
        } => {
            let count = match count {
                Some(n) => CountSpec::Fixed(n),
                None => CountSpec::EnergyCriterion { loss: energy_loss },
            };
            commands::denoise(&input, &basis.to_args()?, &count, &noise.to_args(), &out)
        }
        Command::Envelope { input, grid, out } => {
            commands::envelope(&input, &GridSpec::parse(&grid)?, &out)
        }
        Command::Differentiate { input, grid, out } => {
            commands::differentiate(&input, &GridSpec::parse(&grid)?, &out)
        }
        Command::Resample {
            input,
            basis,
            count,
            grid,
            noise,
            out,
            coeffs_out,
        } => commands::resample(
            &input,
            &basis.to_args()?,
            count,
            &GridSpec::parse(&grid)?,
            &noise.to_args(),
            &out,
            coeffs_out.as_deref(),
        ),
        Command::Doppler {
            input,
            speed,
            velocity,
            distance,
            grid,
            out,
        } => commands::doppler(
            &input,
            speed,
            velocity,
            distance,
            &GridSpec::parse(&grid)?,
            &out,
        ),
        Command::ImgEncode {
            input,
            k1,
            k2,
            family,
            center,
            sigma,
            out,
        } => {
            let basis = ImageBasisArgs {
                family: parse_family(&family)?,
                center,
                sigma,
            };
            commands::img_encode(&input, &basis, k1, k2, &out)
        }
        Command::ImgDecode {
            input,
            width,
            height,
            out,
        } => commands::img_decode(&input, width, height, &out),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => println!("{summary}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
