//! Signal analysis built on the transform layer: denoising by projection,
//! least-squares reconstruction from non-uniform samples, envelope
//! detection, smooth differentiation, and Doppler distortion of stored
//! waveforms.

use num_complex::Complex;

use crate::basis::SinletBasis;
use crate::error::{Error, Result};
use crate::linalg::{solve_least_squares, DenseMatrix};
use crate::phase::PhaseKind;
use crate::scalar::Real;
use crate::signal::SampledSignal;
use crate::transform::{decompose, BasisKind, CoefficientVector};

/// Project a noisy signal onto its first `count` sinlets and resample on
/// the input grid. White noise spreads evenly over all dimensions of the
/// sample space, so keeping only the first few basis directions keeps the
/// signal and sheds most of the noise.
pub fn denoise<T: Real>(
    signal: &SampledSignal<T>,
    basis: &SinletBasis<T>,
    count: usize,
) -> Result<SampledSignal<T>> {
    let coeffs = decompose(signal, basis, count, BasisKind::Sin)?;
    let values = signal.times().iter().map(|&t| coeffs.eval(t)).collect();
    SampledSignal::new(signal.times().to_vec(), values)
}

/// The design matrix of a non-uniform fit: row i, column k holds
/// Sl_k(t_i) for sample time t_i. Overdetermined by construction (more
/// samples than unknowns).
#[derive(Debug, Clone)]
pub struct DesignMatrix<T> {
    matrix: DenseMatrix<T>,
}

impl<T: Real> DesignMatrix<T> {
    /// Assemble for `unknowns` sinlet coefficients; requires strictly more
    /// samples than unknowns.
    pub fn build(
        samples: &SampledSignal<T>,
        basis: &SinletBasis<T>,
        unknowns: usize,
    ) -> Result<Self> {
        if unknowns == 0 {
            return Err(Error::Parameter("fit needs at least one unknown".into()));
        }
        if unknowns >= samples.len() {
            return Err(Error::Parameter(format!(
                "fit needs more samples than unknowns ({} samples for {} unknowns)",
                samples.len(),
                unknowns
            )));
        }
        let times = samples.times();
        let matrix = DenseMatrix::from_fn(times.len(), unknowns, |r, c| basis.sinlet(c, times[r]));
        Ok(DesignMatrix { matrix })
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }
}

/// Least-squares sinlet coefficients from samples taken at arbitrary
/// (strictly increasing) times.
///
/// Solves min ||F a - x|| through a rank-revealing QR of the design matrix
/// F; samples clumped where the basis has no amplitude surface as an
/// ill-posed-fit error carrying the effective rank.
pub fn fit_nonuniform<T: Real>(
    samples: &SampledSignal<T>,
    basis: &SinletBasis<T>,
    unknowns: usize,
) -> Result<CoefficientVector<T>> {
    let design = DesignMatrix::build(samples, basis, unknowns)?;
    let fit = solve_least_squares(design.matrix(), samples.values())?;
    CoefficientVector::new(BasisKind::Sin, *basis, fit.solution)
}

/// Signal envelope: the modulus of the complex sum of coefficients against
/// the joint functions, |sum c_n Psi_n(t)|, evaluated on `grid`.
///
/// Works for either coefficient kind; the two give nearly identical curves
/// when both represent the signal well.
pub fn envelope<T: Real>(coeffs: &CoefficientVector<T>, grid: &[T]) -> Result<SampledSignal<T>> {
    let basis = coeffs.basis();
    let values = grid
        .iter()
        .map(|&t| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (n, &c) in coeffs.coeffs().iter().enumerate() {
                if c != T::zero() {
                    acc += basis.psi(n, t) * c;
                }
            }
            acc.norm()
        })
        .collect();
    SampledSignal::new(grid.to_vec(), values)
}

/// Derivative of the represented signal, term by term:
///
/// u'(t) = sum a_n [ theta''/(2 theta') Sl_n + pi (n+1) theta' Cl_n ]
///
/// Requires sinlet-kind coefficients; route coslet coefficients through
/// [`crate::transform::cos_to_sin`] first.
pub fn differentiate<T: Real>(
    coeffs: &CoefficientVector<T>,
    grid: &[T],
) -> Result<SampledSignal<T>> {
    if coeffs.kind() != BasisKind::Sin {
        return Err(Error::UnsupportedKind {
            expected: "sin",
            found: coeffs.kind().name(),
        });
    }
    let basis = coeffs.basis();
    let values = grid
        .iter()
        .map(|&t| {
            let jet = basis.phase().jet(t);
            let sin_weight = if jet.d1.is_normal() {
                jet.d2 / (T::of(2.0) * jet.d1)
            } else {
                T::zero()
            };
            let mut acc = T::zero();
            for (n, &c) in coeffs.coeffs().iter().enumerate() {
                if c != T::zero() {
                    let cos_weight = T::PI() * T::of_usize(n + 1) * jet.d1;
                    acc += c * (sin_weight * basis.sinlet(n, t) + cos_weight * basis.coslet(n, t));
                }
            }
            acc
        })
        .collect();
    SampledSignal::new(grid.to_vec(), values)
}

/// Erf-family specialization of [`differentiate`], with the phase-jet
/// weights replaced by their Gaussian closed forms:
///
/// u'(t) = sum a_n [ (t0-t)/(2 sigma^2) Sl_n
///                   + sqrt(pi/2) (n+1) sigma^{-1} e^{-(t-t0)^2/(2 sigma^2)} Cl_n ]
///
/// Kept as an independent algebraic route; it must agree with the generic
/// formula to near machine precision.
pub fn differentiate_closed_form<T: Real>(
    coeffs: &CoefficientVector<T>,
    grid: &[T],
) -> Result<SampledSignal<T>> {
    if coeffs.kind() != BasisKind::Sin {
        return Err(Error::UnsupportedKind {
            expected: "sin",
            found: coeffs.kind().name(),
        });
    }
    let basis = coeffs.basis();
    if basis.phase().kind() != PhaseKind::Erf {
        return Err(Error::domain(
            "the closed-form derivative exists for the erf family only",
        ));
    }
    let t0 = basis.center();
    let sigma = basis.width();
    let values = grid
        .iter()
        .map(|&t| {
            let y = (t - t0) / sigma;
            let sin_weight = (t0 - t) / (T::of(2.0) * sigma * sigma);
            let gauss = (-T::of(0.5) * y * y).exp();
            let mut acc = T::zero();
            for (n, &c) in coeffs.coeffs().iter().enumerate() {
                if c != T::zero() {
                    let cos_weight =
                        (T::PI() / T::of(2.0)).sqrt() * T::of_usize(n + 1) / sigma * gauss;
                    acc += c * (sin_weight * basis.sinlet(n, t) + cos_weight * basis.coslet(n, t));
                }
            }
            acc
        })
        .collect();
    SampledSignal::new(grid.to_vec(), values)
}

/// Geometry of a constant-velocity point-target echo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerParams<T> {
    propagation_speed: T,
    radial_velocity: T,
    range: T,
}

impl<T: Real> DopplerParams<T> {
    /// `propagation_speed` and `range` in consistent units; the radial
    /// velocity must stay below the propagation speed in magnitude.
    pub fn new(propagation_speed: T, radial_velocity: T, range: T) -> Result<Self> {
        if !(propagation_speed > T::zero()) || !propagation_speed.is_finite() {
            return Err(Error::domain("propagation speed must be positive and finite"));
        }
        if !(radial_velocity.abs() < propagation_speed) {
            return Err(Error::domain(
                "radial velocity magnitude must be below the propagation speed",
            ));
        }
        if !(range >= T::zero()) || !range.is_finite() {
            return Err(Error::domain("target range must be non-negative and finite"));
        }
        Ok(DopplerParams {
            propagation_speed,
            radial_velocity,
            range,
        })
    }

    /// Doppler time-compression factor (c - v) / (c + v).
    pub fn alpha(&self) -> T {
        (self.propagation_speed - self.radial_velocity)
            / (self.propagation_speed + self.radial_velocity)
    }

    /// Round-trip delay 2 D / c.
    pub fn delay(&self) -> T {
        T::of(2.0) * self.range / self.propagation_speed
    }
}

/// Doppler-distorted, delayed echo of a stored waveform: the same
/// coefficients re-read against a basis delayed by the round trip and
/// scaled in width by 1/alpha,
///
/// w_r(t) = sum a_n Sl_n(t - t0 - tau; sigma / alpha),
///
/// which by the scaling identity equals sqrt(alpha) w_tr(alpha (t - tau))
/// for a waveform centered at t0 = 0. Energy is preserved exactly because
/// the scaled family is again orthonormal.
pub fn doppler_echo<T: Real>(
    coeffs: &CoefficientVector<T>,
    params: &DopplerParams<T>,
    grid: &[T],
) -> Result<SampledSignal<T>> {
    if coeffs.kind() != BasisKind::Sin {
        return Err(Error::UnsupportedKind {
            expected: "sin",
            found: coeffs.kind().name(),
        });
    }
    let basis = coeffs.basis();
    let alpha = params.alpha();
    let echo_basis = SinletBasis::from_params(
        basis.phase().kind(),
        basis.center() + params.delay(),
        basis.width() / alpha,
    )?;
    let echo = CoefficientVector::new(BasisKind::Sin, echo_basis, coeffs.coeffs().to_vec())?;
    let values = grid.iter().map(|&t| echo.eval(t)).collect();
    SampledSignal::new(grid.to_vec(), values)
}
