//! Forward and inverse transforms between sampled signals and basis
//! coefficients, plus the rule-of-thumb parameter estimators and the
//! sinlet/coslet coefficient coupling.

use crate::basis::SinletBasis;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::signal::SampledSignal;

/// Whether coefficients project onto sinlets or coslets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Sin,
    Cos,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Sin => "sin",
            BasisKind::Cos => "cos",
        }
    }
}

impl core::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for BasisKind {
    type Err = String;
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sin" => Ok(BasisKind::Sin),
            "cos" => Ok(BasisKind::Cos),
            other => Err(format!("unknown coefficient kind `{other}` (sin | cos)")),
        }
    }
}

/// Generalized Fourier coefficients together with the basis that produced
/// them, so downstream operations never have to guess parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T> {
    kind: BasisKind,
    basis: SinletBasis<T>,
    coeffs: Vec<T>,
}

impl<T: Real> CoefficientVector<T> {
    pub fn new(kind: BasisKind, basis: SinletBasis<T>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("coefficient count must be at least 1".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("coefficients must be finite"));
        }
        Ok(CoefficientVector { kind, basis, coeffs })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn basis(&self) -> &SinletBasis<T> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor requires at least one coefficient
    }

    /// Sum of squared coefficients; equals the signal energy for a signal
    /// the basis represents well (Parseval).
    pub fn energy(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    /// Evaluate the weighted sum at one instant.
    pub fn eval(&self, t: T) -> T {
        let mut acc = T::zero();
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c != T::zero() {
                acc += c * match self.kind {
                    BasisKind::Sin => self.basis.sinlet(n, t),
                    BasisKind::Cos => self.basis.coslet(n, t),
                };
            }
        }
        acc
    }

    /// Smallest count N whose leading coefficients capture at least
    /// (1 - loss_fraction) of the total squared-coefficient energy.
    /// The denoising helper; default loss is 1e-3.
    pub fn count_for_energy_fraction(&self, loss_fraction: T) -> usize {
        let total = self.energy();
        if total == T::zero() {
            return 1;
        }
        let target = (T::one() - loss_fraction) * total;
        let mut acc = T::zero();
        for (n, &c) in self.coeffs.iter().enumerate() {
            acc += c * c;
            if acc >= target {
                return n + 1;
            }
        }
        self.coeffs.len()
    }
}

/// Energy centroid of the signal: the integral of t u^2 over the integral
/// of u^2, by trapezoids on the sample grid. The natural basis center.
pub fn estimate_center<T: Real>(signal: &SampledSignal<T>) -> Result<T> {
    let energy = signal.energy();
    if energy <= T::zero() {
        return Err(Error::Degenerate(
            "cannot place a basis center on a zero-energy signal".into(),
        ));
    }
    Ok(signal.trapezoid(|t, u| t * u * u) / energy)
}

/// Energy-weighted RMS spread about the centroid, times `c` (in [1, 2]).
/// The natural basis width.
pub fn estimate_width<T: Real>(signal: &SampledSignal<T>, c: T) -> Result<T> {
    if !(c >= T::one() && c <= T::of(2.0)) {
        return Err(Error::Parameter(format!(
            "width constant c must lie in [1, 2], got {c}"
        )));
    }
    let center = estimate_center(signal)?;
    let energy = signal.energy();
    let second = signal.trapezoid(|t, u| (t - center) * (t - center) * u * u);
    Ok(c * (second / energy).sqrt())
}

/// Largest basis index needed so the instantaneous frequency of the last
/// member still reaches `nu_max` at `t_max`, the far edge of the signal:
/// ceil(2 nu_max / theta'(t_max)) - 1.
pub fn estimate_nmax<T: Real>(basis: &SinletBasis<T>, nu_max: T, t_max: T) -> Result<usize> {
    if !(nu_max > T::zero()) {
        return Err(Error::Parameter("nu_max must be positive".into()));
    }
    let d1 = basis.phase().eval_jet(t_max)?.d1;
    if !d1.is_normal() {
        return Err(Error::Overflow(format!(
            "phase derivative underflows at t_max = {t_max}; reduce t_max or increase sigma"
        )));
    }
    let ratio = T::of(2.0) * nu_max / d1;
    let ceil = ratio.ceil();
    let n = ceil
        .to_usize()
        .ok_or_else(|| Error::Overflow(format!("basis count {ceil} is not representable")))?;
    Ok(n.saturating_sub(1))
}

/// Largest coefficient count the sample grid supports at four samples per
/// period of the fastest member's peak frequency.
pub fn max_safe_count<T: Real>(signal: &SampledSignal<T>, basis: &SinletBasis<T>) -> usize {
    let d1 = basis.phase().jet(basis.center()).d1;
    let h = signal.median_spacing();
    // h <= 1 / (4 nu_{N-1}(t0)) = 1 / (2 N theta'(t0))  =>  N <= 1/(2 h theta')
    let bound = T::one() / (T::of(2.0) * h * d1);
    bound.to_usize().unwrap_or(usize::MAX)
}

/// Project a signal onto the first `count` basis functions by trapezoidal
/// quadrature of u * Sl_n (or u * Cl_n) over the sample grid, truncated to
/// the intersection of the samples with the basis support window.
pub fn decompose<T: Real>(
    signal: &SampledSignal<T>,
    basis: &SinletBasis<T>,
    count: usize,
    kind: BasisKind,
) -> Result<CoefficientVector<T>> {
    if count == 0 {
        return Err(Error::Parameter("coefficient count must be at least 1".into()));
    }
    let ten_sigma = T::of(10.0) * basis.width();
    let lo = basis.center() - ten_sigma;
    let hi = basis.center() + ten_sigma;
    let times = signal.times();
    if times[times.len() - 1] < lo || times[0] > hi {
        return Err(Error::domain(
            "signal support does not overlap the basis window [t0 - 10 sigma, t0 + 10 sigma]",
        ));
    }
    let max_safe = max_safe_count(signal, basis);
    if count > max_safe {
        return Err(Error::Aliasing {
            requested: count,
            max_safe,
        });
    }
    let coeffs = (0..count)
        .map(|n| {
            signal.trapezoid_windowed(lo, hi, |t, u| {
                u * match kind {
                    BasisKind::Sin => basis.sinlet(n, t),
                    BasisKind::Cos => basis.coslet(n, t),
                }
            })
        })
        .collect();
    CoefficientVector::new(kind, *basis, coeffs)
}

/// Evaluate a coefficient vector on a grid (strictly increasing, at least
/// two points).
pub fn reconstruct<T: Real>(coeffs: &CoefficientVector<T>, grid: &[T]) -> Result<SampledSignal<T>> {
    let values: Vec<T> = grid.iter().map(|&t| coeffs.eval(t)).collect();
    SampledSignal::new(grid.to_vec(), values)
}

/// Inner products of sinlets against coslets, in closed form.
///
/// `D[k][m]` is 0 when k + m is even (including the diagonal); otherwise
/// 2/(pi (k+m+2)) + 2/(pi (k-m)). Independent of the phase family and of
/// (t0, sigma).
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix<T> {
    order: usize,
    entries: Vec<T>, // row-major, order x order
}

impl<T: Real> CouplingMatrix<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, k: usize, m: usize) -> T {
        self.entries[k * self.order + m]
    }

    /// y = D x
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.order);
        (0..self.order)
            .map(|k| {
                let row = &self.entries[k * self.order..(k + 1) * self.order];
                row.iter()
                    .zip(x.iter())
                    .fold(T::zero(), |acc, (&d, &v)| acc + d * v)
            })
            .collect()
    }

    /// y = D^T x
    pub fn apply_transpose(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.order);
        (0..self.order)
            .map(|m| {
                (0..self.order).fold(T::zero(), |acc, k| acc + self.get(k, m) * x[k])
            })
            .collect()
    }
}

/// Build the order-N coupling matrix from its closed form.
pub fn coupling_matrix<T: Real>(order: usize) -> Result<CouplingMatrix<T>> {
    if order == 0 {
        return Err(Error::Parameter("coupling matrix order must be at least 1".into()));
    }
    let two_over_pi = T::of(2.0) / T::PI();
    let mut entries = vec![T::zero(); order * order];
    for k in 0..order {
        for m in 0..order {
            if (k + m) % 2 == 1 {
                let sum = T::of_usize(k + m + 2);
                let diff = T::of_usize(k.max(m) - k.min(m));
                let diff = if k >= m { diff } else { -diff };
                entries[k * order + m] = two_over_pi * (T::one() / sum + T::one() / diff);
            }
        }
    }
    Ok(CouplingMatrix { order, entries })
}

/// Map sinlet coefficients to coslet coefficients: b = D^T a.
///
/// The transpose stands in for the inverse deliberately: D is exactly
/// singular for odd orders and det(D) -> 0 as the order grows, so no code
/// path ever forms D^{-1}.
pub fn sin_to_cos<T: Real>(a: &CoefficientVector<T>) -> Result<CoefficientVector<T>> {
    if a.kind() != BasisKind::Sin {
        return Err(Error::UnsupportedKind {
            expected: "sin",
            found: a.kind().name(),
        });
    }
    let d = coupling_matrix(a.len())?;
    CoefficientVector::new(BasisKind::Cos, *a.basis(), d.apply_transpose(a.coeffs()))
}

/// Map coslet coefficients to sinlet coefficients: a = D b.
pub fn cos_to_sin<T: Real>(b: &CoefficientVector<T>) -> Result<CoefficientVector<T>> {
    if b.kind() != BasisKind::Cos {
        return Err(Error::UnsupportedKind {
            expected: "cos",
            found: b.kind().name(),
        });
    }
    let d = coupling_matrix(b.len())?;
    CoefficientVector::new(BasisKind::Sin, *b.basis(), d.apply(b.coeffs()))
}
