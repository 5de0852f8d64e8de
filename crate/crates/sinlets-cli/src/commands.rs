//! Implementations behind the subcommands. Each returns the one-line
//! machine-parseable summary printed on success.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};

use sinlets::analysis;
use sinlets::image::{dcr, dcr_bytes, image_decompose, image_reconstruct};
use sinlets::transform::{self, BasisKind};
use sinlets::{
    Basis2D64, PhaseKind, SampledSignal64, SinletBasis64,
};

use crate::formats::{
    fmt_float, read_coefficients, read_image_coefficients, read_pgm, read_signal,
    write_coefficients, write_image_coefficients, write_pgm, write_signal,
};
use crate::{CliError, GridSpec};

/// Basis parameters as they arrive from the command line; center and width
/// fall back to the energy-moment estimates when omitted.
pub struct BasisArgs {
    pub family: PhaseKind,
    pub t0: Option<f64>,
    pub sigma: Option<f64>,
    pub c: f64,
}

impl BasisArgs {
    fn resolve(&self, signal: Option<&SampledSignal64>) -> Result<SinletBasis64, CliError> {
        let (t0, sigma) = match (self.t0, self.sigma) {
            (Some(t0), Some(sigma)) => (t0, sigma),
            _ => {
                let signal = signal.ok_or_else(|| {
                    CliError::Usage(
                        "--t0 and --sigma are required when no input signal is given".into(),
                    )
                })?;
                let t0 = match self.t0 {
                    Some(t0) => t0,
                    None => transform::estimate_center(signal).map_err(CliError::Numeric)?,
                };
                let sigma = match self.sigma {
                    Some(s) => s,
                    None => transform::estimate_width(signal, self.c).map_err(CliError::Numeric)?,
                };
                (t0, sigma)
            }
        };
        SinletBasis64::from_params(self.family, t0, sigma).map_err(CliError::Numeric)
    }
}

/// How many coefficients to use: a fixed count, or the frequency heuristic.
pub enum CountSpec {
    Fixed(usize),
    FrequencyLimit { nu_max: f64, t_max: f64 },
    /// Denoising default: smallest count keeping all but `loss` of the
    /// candidate coefficient energy.
    EnergyCriterion { loss: f64 },
}

impl CountSpec {
    fn resolve(
        &self,
        signal: &SampledSignal64,
        basis: &SinletBasis64,
    ) -> Result<usize, CliError> {
        match *self {
            CountSpec::Fixed(n) => Ok(n),
            CountSpec::FrequencyLimit { nu_max, t_max } => {
                let n_max =
                    transform::estimate_nmax(basis, nu_max, t_max).map_err(CliError::Numeric)?;
                Ok(n_max + 1)
            }
            CountSpec::EnergyCriterion { loss } => {
                let cap = transform::max_safe_count(signal, basis).min(256).max(1);
                let candidate = transform::decompose(signal, basis, cap, BasisKind::Sin)
                    .map_err(CliError::Numeric)?;
                Ok(candidate.count_for_energy_fraction(loss))
            }
        }
    }
}

pub struct NoiseArgs {
    pub sigma: Option<f64>,
    pub seed: u64,
}

impl NoiseArgs {
    /// Seeded additive white Gaussian noise for reproducible experiments.
    fn apply(&self, signal: SampledSignal64) -> Result<SampledSignal64, CliError> {
        let Some(noise_sigma) = self.sigma else {
            return Ok(signal);
        };
        if noise_sigma < 0.0 {
            return Err(CliError::Usage("--noise-sigma must be non-negative".into()));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        let normal = Normal::new(0.0, noise_sigma)
            .map_err(|e| CliError::Usage(format!("bad noise level: {e}")))?;
        let values = signal
            .values()
            .iter()
            .map(|&v| v + normal.sample(&mut rng))
            .collect();
        SampledSignal64::new(signal.times().to_vec(), values).map_err(CliError::Numeric)
    }
}

pub fn basis_traces(
    family: PhaseKind,
    t0: f64,
    sigma: f64,
    members: &[usize],
    grid: &GridSpec,
    out_prefix: &Path,
) -> Result<String, CliError> {
    if members.is_empty() {
        return Err(CliError::Usage("member list is empty; pass --n".into()));
    }
    let basis = SinletBasis64::from_params(family, t0, sigma).map_err(CliError::Numeric)?;
    let times = grid.points()?;

    type Trace<'a> = Box<dyn Fn(usize, f64) -> f64 + 'a>;
    let quantities: [(&str, Trace); 5] = [
        ("sinlet", Box::new(|n, t| basis.sinlet(n, t))),
        ("coslet", Box::new(|n, t| basis.coslet(n, t))),
        ("nu", Box::new(|n, t| basis.inst_frequency(n, t))),
        (
            "omega2",
            Box::new(|n, t| basis.omega_squared(n, t).unwrap_or(f64::NAN)),
        ),
        ("psi-abs", Box::new(|n, t| basis.psi(n, t).norm())),
    ];

    for (name, eval) in &quantities {
        let mut out = String::new();
        out.push_str("# t");
        for n in members {
            out.push_str(&format!(",n{n}"));
        }
        out.push('\n');
        for &t in &times {
            out.push_str(&fmt_float(t));
            for &n in members {
                out.push(',');
                out.push_str(&fmt_float(eval(n, t)));
            }
            out.push('\n');
        }
        let path = trace_path(out_prefix, name);
        std::fs::write(&path, out).map_err(|e| CliError::io(&path, e))?;
    }

    Ok(format!(
        "op=basis family={family} t0={t0} sigma={sigma} members={} grid={} files=5",
        members.len(),
        times.len()
    ))
}

fn trace_path(prefix: &Path, quantity: &str) -> PathBuf {
    let mut name = prefix.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{quantity}.csv"));
    prefix.with_file_name(name)
}

#[allow(clippy::too_many_arguments)]
pub fn decompose(
    input: &Path,
    basis_args: &BasisArgs,
    count: &CountSpec,
    kind: BasisKind,
    noise: &NoiseArgs,
    out: &Path,
) -> Result<String, CliError> {
    let signal = noise.apply(read_signal(input)?)?;
    let basis = basis_args.resolve(Some(&signal))?;
    let n = count.resolve(&signal, &basis)?;
    let coeffs = transform::decompose(&signal, &basis, n, kind).map_err(CliError::Numeric)?;
    write_coefficients(out, &coeffs)?;

    let recon = transform::reconstruct(&coeffs, signal.times()).map_err(CliError::Numeric)?;
    let residual = signal.rms_difference(&recon).map_err(CliError::Numeric)?;
    Ok(format!(
        "op=decompose kind={kind} n={n} energy={} residual={}",
        fmt_float(coeffs.energy()),
        fmt_float(residual)
    ))
}

pub fn reconstruct(input: &Path, grid: &GridSpec, out: &Path) -> Result<String, CliError> {
    let coeffs = read_coefficients(input)?;
    let signal =
        transform::reconstruct(&coeffs, &grid.points()?).map_err(CliError::Numeric)?;
    write_signal(out, &signal)?;
    Ok(format!(
        "op=reconstruct kind={} n={} energy={}",
        coeffs.kind(),
        coeffs.len(),
        fmt_float(signal.energy())
    ))
}

pub fn denoise(
    input: &Path,
    basis_args: &BasisArgs,
    count: &CountSpec,
    noise: &NoiseArgs,
    out: &Path,
) -> Result<String, CliError> {
    let signal = noise.apply(read_signal(input)?)?;
    let basis = basis_args.resolve(Some(&signal))?;
    let n = count.resolve(&signal, &basis)?;
    let cleaned = analysis::denoise(&signal, &basis, n).map_err(CliError::Numeric)?;
    let residual = signal.rms_difference(&cleaned).map_err(CliError::Numeric)?;
    write_signal(out, &cleaned)?;
    Ok(format!(
        "op=denoise n={n} energy={} residual={}",
        fmt_float(cleaned.energy()),
        fmt_float(residual)
    ))
}

pub fn envelope(input: &Path, grid: &GridSpec, out: &Path) -> Result<String, CliError> {
    let coeffs = read_coefficients(input)?;
    let env = analysis::envelope(&coeffs, &grid.points()?).map_err(CliError::Numeric)?;
    write_signal(out, &env)?;
    Ok(format!(
        "op=envelope n={} energy={}",
        coeffs.len(),
        fmt_float(env.energy())
    ))
}

pub fn differentiate(input: &Path, grid: &GridSpec, out: &Path) -> Result<String, CliError> {
    let coeffs = read_coefficients(input)?;
    let deriv = analysis::differentiate(&coeffs, &grid.points()?).map_err(CliError::Numeric)?;
    write_signal(out, &deriv)?;
    Ok(format!(
        "op=differentiate n={} energy={}",
        coeffs.len(),
        fmt_float(deriv.energy())
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn resample(
    input: &Path,
    basis_args: &BasisArgs,
    unknowns: usize,
    grid: &GridSpec,
    noise: &NoiseArgs,
    out: &Path,
    coeffs_out: Option<&Path>,
) -> Result<String, CliError> {
    let samples = noise.apply(read_signal(input)?)?;
    let basis = basis_args.resolve(Some(&samples))?;
    let fit = analysis::fit_nonuniform(&samples, &basis, unknowns).map_err(CliError::Numeric)?;

    // residual at the sample times
    let at_samples = transform::reconstruct(&fit, samples.times()).map_err(CliError::Numeric)?;
    let residual = samples.rms_difference(&at_samples).map_err(CliError::Numeric)?;

    let dense = transform::reconstruct(&fit, &grid.points()?).map_err(CliError::Numeric)?;
    write_signal(out, &dense)?;
    if let Some(path) = coeffs_out {
        write_coefficients(path, &fit)?;
    }
    Ok(format!(
        "op=resample k={unknowns} samples={} energy={} residual={}",
        samples.len(),
        fmt_float(fit.energy()),
        fmt_float(residual)
    ))
}

pub fn doppler(
    input: &Path,
    speed: f64,
    velocity: f64,
    distance: f64,
    grid: &GridSpec,
    out: &Path,
) -> Result<String, CliError> {
    let coeffs = read_coefficients(input)?;
    let params =
        analysis::DopplerParams::new(speed, velocity, distance).map_err(CliError::Numeric)?;
    let echo =
        analysis::doppler_echo(&coeffs, &params, &grid.points()?).map_err(CliError::Numeric)?;
    write_signal(out, &echo)?;
    Ok(format!(
        "op=doppler n={} alpha={} tau={} energy={}",
        coeffs.len(),
        fmt_float(params.alpha()),
        fmt_float(params.delay()),
        fmt_float(coeffs.energy())
    ))
}

pub struct ImageBasisArgs {
    pub family: PhaseKind,
    pub center: f64,
    pub sigma: f64,
}

impl ImageBasisArgs {
    fn resolve(&self) -> Result<Basis2D64, CliError> {
        let axis = SinletBasis64::from_params(self.family, self.center, self.sigma)
            .map_err(CliError::Numeric)?;
        Basis2D64::new(axis, axis).map_err(CliError::Numeric)
    }
}

pub fn img_encode(
    input: &Path,
    basis_args: &ImageBasisArgs,
    k1: usize,
    k2: usize,
    out: &Path,
) -> Result<String, CliError> {
    let img = read_pgm(input)?;
    let basis = basis_args.resolve()?;
    let coeffs = image_decompose(&img, &basis, k1, k2).map_err(CliError::Numeric)?;
    write_image_coefficients(out, &coeffs)?;
    Ok(format!(
        "op=img-encode k1={k1} k2={k2} width={} height={} dcr={:.4} dcr_bytes={:.4}",
        img.width(),
        img.height(),
        dcr(k1, k2, img.width(), img.height()),
        dcr_bytes(k1, k2, img.width(), img.height())
    ))
}

pub fn img_decode(
    input: &Path,
    width: Option<usize>,
    height: Option<usize>,
    out: &Path,
) -> Result<String, CliError> {
    let coeffs = read_image_coefficients(input)?;
    let width = width.unwrap_or_else(|| coeffs.source_width());
    let height = height.unwrap_or_else(|| coeffs.source_height());
    let pixels = image_reconstruct(&coeffs, width, height).map_err(CliError::Numeric)?;
    write_pgm(out, width, height, &pixels)?;
    Ok(format!(
        "op=img-decode k1={} k2={} width={width} height={height}",
        coeffs.k1(),
        coeffs.k2()
    ))
}

