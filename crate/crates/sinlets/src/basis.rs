//! Sinlet and coslet evaluation.
//!
//! Member `n` of the family is
//!
//! ```text
//! Sl_n(t) = sqrt(2 theta'(t)) * sin(pi (n+1) theta(t))
//! Cl_n(t) = sqrt(2 theta'(t)) * cos(pi (n+1) theta(t))
//! ```
//!
//! an orthonormal set on the real line for any admissible phase. The shared
//! amplitude sqrt(2 theta') localizes every member inside the phase window;
//! the index fixes the oscillation count (`n` zero crossings for `Sl_n`).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::phase::{PhaseFamily, PhaseJet, PhaseKind};
use crate::scalar::Real;

/// A sinlet/coslet basis: a phase family with center and width fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinletBasis<T> {
    phase: PhaseFamily<T>,
}

impl<T: Real> SinletBasis<T> {
    pub fn new(phase: PhaseFamily<T>) -> Self {
        SinletBasis { phase }
    }

    /// Convenience constructor from raw parameters.
    pub fn from_params(kind: PhaseKind, center: T, width: T) -> Result<Self> {
        Ok(Self::new(PhaseFamily::new(kind, center, width)?))
    }

    pub fn phase(&self) -> &PhaseFamily<T> {
        &self.phase
    }

    pub fn center(&self) -> T {
        self.phase.center()
    }

    pub fn width(&self) -> T {
        self.phase.width()
    }

    fn angle(n: usize, jet: &PhaseJet<T>) -> T {
        T::PI() * T::of_usize(n + 1) * jet.theta
    }

    /// Shared amplitude sqrt(2 theta'); exact 0 once theta' underflows, so
    /// tails produce clean zeros instead of subnormal noise.
    fn amplitude(jet: &PhaseJet<T>) -> T {
        if jet.d1.is_normal() {
            (T::of(2.0) * jet.d1).sqrt()
        } else if jet.d1.is_nan() {
            T::nan()
        } else {
            T::zero()
        }
    }

    /// Sl_n at `t`.
    pub fn sinlet(&self, n: usize, t: T) -> T {
        let jet = self.phase.jet(t);
        let a = Self::amplitude(&jet);
        if a == T::zero() {
            return T::zero();
        }
        a * Self::angle(n, &jet).sin()
    }

    /// Cl_n at `t`.
    pub fn coslet(&self, n: usize, t: T) -> T {
        let jet = self.phase.jet(t);
        let a = Self::amplitude(&jet);
        if a == T::zero() {
            return T::zero();
        }
        a * Self::angle(n, &jet).cos()
    }

    /// Joint value Cl_n + i Sl_n = sqrt(2 theta') e^{i pi (n+1) theta}.
    ///
    /// Its modulus is the shared amplitude, independent of `n`.
    pub fn psi(&self, n: usize, t: T) -> Complex<T> {
        let jet = self.phase.jet(t);
        let a = Self::amplitude(&jet);
        if a == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let angle = Self::angle(n, &jet);
        Complex::new(a * angle.cos(), a * angle.sin())
    }

    /// Instantaneous frequency nu_n(t) = (n+1) theta'(t) / 2, in Hz.
    /// Peaks at the center and is proportional to n + 1 at every instant.
    pub fn inst_frequency(&self, n: usize, t: T) -> T {
        let jet = self.phase.jet(t);
        T::of(0.5) * T::of_usize(n + 1) * jet.d1
    }

    /// Oscillator potential Omega_n^2(t) = (pi (n+1) theta')^2 + S(theta)/2,
    /// the coefficient for which x_n(t) = cos(theta_n)/sqrt(theta_n') solves
    /// x'' + Omega_n^2 x = 0 exactly.
    pub fn omega_squared(&self, n: usize, t: T) -> Result<T> {
        let jet = self.phase.eval_jet(t)?;
        if !jet.d1.is_normal() {
            return Err(Error::PrecisionLoss {
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        let dn = T::PI() * T::of_usize(n + 1) * jet.d1;
        let r2 = jet.d2 / jet.d1;
        let schwarzian = jet.d3 / jet.d1 - T::of(1.5) * r2 * r2;
        Ok(dn * dn + T::of(0.5) * schwarzian)
    }

    /// Family-specific closed form of the potential, the independent
    /// algebraic route against which [`Self::omega_squared`] is verified.
    ///
    /// erf:      (1/2 sigma^2) [ pi (n+1)^2 e^{-y^2} - y^2/2 - 1 ],  y = (t-t0)/sigma
    /// logistic: (1/4 sigma^2) [ pi^2 (n+1)^2 / (4 cosh^4(y/2)) - 1 ]
    pub fn omega_squared_closed_form(&self, n: usize, t: T) -> T {
        let sigma = self.width();
        let y = (t - self.center()) / sigma;
        let np1 = T::of_usize(n + 1);
        match self.phase.kind() {
            PhaseKind::Erf => {
                let half = T::of(0.5);
                half / (sigma * sigma)
                    * (T::PI() * np1 * np1 * (-y * y).exp() - half * y * y - T::one())
            }
            PhaseKind::Logistic => {
                let cosh2 = (T::of(0.5) * y).cosh().powi(2);
                T::of(0.25) / (sigma * sigma)
                    * (T::PI() * T::PI() * np1 * np1 / (T::of(4.0) * cosh2 * cosh2) - T::one())
            }
        }
    }

    /// Time-scale the basis: compressing the axis by `alpha` is the same
    /// basis with width sigma / alpha, i.e.
    /// sqrt(alpha) Sl_n(alpha (t - t0); sigma) = Sl_n(t - t0; sigma / alpha).
    pub fn scale(&self, alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::domain("scale factor alpha must be positive and finite"));
        }
        Self::from_params(self.phase.kind(), self.center(), self.width() / alpha)
    }
}
