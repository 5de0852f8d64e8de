//! Mother-Phase families.
//!
//! A phase function rises monotonically from 0 to 1, centered at `t0` with
//! characteristic width `sigma`, and must keep a non-positive Schwarzian
//! derivative. Two families are built in:
//!
//! * erf:      theta(t) = (1/2)(1 + erf((t - t0) / (sigma sqrt(2))))
//! * logistic: theta(t) = 1 / (1 + exp(-(t - t0) / sigma))
//!
//! Every basis function, frequency profile and oscillator potential in this
//! crate is derived from the phase and its first three derivatives.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which built-in phase family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseKind {
    Erf,
    Logistic,
}

impl PhaseKind {
    pub fn name(self) -> &'static str {
        match self {
            PhaseKind::Erf => "erf",
            PhaseKind::Logistic => "logistic",
        }
    }
}

impl core::fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for PhaseKind {
    type Err = String;
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "erf" => Ok(PhaseKind::Erf),
            "logistic" => Ok(PhaseKind::Logistic),
            other => Err(format!("unknown phase family `{other}` (erf | logistic)")),
        }
    }
}

/// A phase function with its center and width pinned down.
///
/// Immutable after construction; every method is a pure function of the
/// fields, so values can be shared freely across threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFamily<T> {
    kind: PhaseKind,
    center: T,
    width: T,
}

/// theta and its first three time derivatives at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseJet<T> {
    /// theta(t), dimensionless, in (0, 1).
    pub theta: T,
    /// d theta / dt, strictly positive (1/time).
    pub d1: T,
    /// second derivative (1/time^2).
    pub d2: T,
    /// third derivative (1/time^3).
    pub d3: T,
}

/// Outcome of one numeric admissibility check on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    /// The grid did not sample the region the check needs.
    Indeterminate,
}

impl Check {
    pub fn passed(self) -> bool {
        self == Check::Pass
    }
}

/// Report of the three admissibility conditions checked on a grid:
/// positive bounded derivative, tails that settle at 0 and 1, and a
/// non-positive Schwarzian derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityReport {
    pub derivative_positive: Check,
    pub tails_settle: Check,
    pub schwarzian_nonpositive: Check,
}

impl ValidityReport {
    pub fn all_passed(&self) -> bool {
        self.derivative_positive.passed()
            && self.tails_settle.passed()
            && self.schwarzian_nonpositive.passed()
    }
}

/// Tail magnitude required of theta at the grid extremes, once they are at
/// least [`TAIL_CHECK_WIDTHS`] widths out.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;
/// How many widths from the center the tail check becomes decidable.
pub const TAIL_CHECK_WIDTHS: f64 = 8.0;

impl<T: Real> PhaseFamily<T> {
    /// Build a family; `width` must be positive and both parameters finite.
    pub fn new(kind: PhaseKind, center: T, width: T) -> Result<Self> {
        if !center.is_finite() || !width.is_finite() {
            return Err(Error::domain("phase center and width must be finite"));
        }
        if width <= T::zero() {
            return Err(Error::domain("phase width sigma must be positive"));
        }
        Ok(PhaseFamily { kind, center, width })
    }

    pub fn kind(&self) -> PhaseKind {
        self.kind
    }

    pub fn center(&self) -> T {
        self.center
    }

    pub fn width(&self) -> T {
        self.width
    }

    /// Same family, new placement.
    pub fn with_params(&self, center: T, width: T) -> Result<Self> {
        Self::new(self.kind, center, width)
    }

    /// theta and its first three derivatives at `t`.
    pub fn eval_jet(&self, t: T) -> Result<PhaseJet<T>> {
        if !t.is_finite() {
            return Err(Error::domain("phase evaluation needs finite t"));
        }
        Ok(self.jet(t))
    }

    /// Infallible jet evaluation; non-finite input propagates as NaN.
    pub(crate) fn jet(&self, t: T) -> PhaseJet<T> {
        match self.kind {
            PhaseKind::Erf => self.erf_jet(t),
            PhaseKind::Logistic => self.logistic_jet(t),
        }
    }

    fn erf_jet(&self, t: T) -> PhaseJet<T> {
        let half = T::of(0.5);
        let y = (t - self.center) / self.width;
        // erfc form stays accurate in the left tail where 1 + erf cancels
        let theta = half * (-y / T::SQRT_2()).erfc();
        let d1 = (-half * y * y).exp() / (self.width * (T::TAU()).sqrt());
        let d2 = -y / self.width * d1;
        let d3 = (y * y - T::one()) / (self.width * self.width) * d1;
        PhaseJet { theta, d1, d2, d3 }
    }

    fn logistic_jet(&self, t: T) -> PhaseJet<T> {
        let x = (t - self.center) / self.width;
        let theta = stable_logistic(x);
        let complement = stable_logistic(-x);
        // Closed forms in theta avoid the cancellation the raw exp
        // expressions hit far from the center.
        let d1 = theta * complement / self.width;
        let d2 = d1 * (complement - theta) / self.width;
        let d3 = (d2 * (complement - theta) - T::of(2.0) * d1 * d1) / self.width;
        PhaseJet { theta, d1, d2, d3 }
    }

    /// 1 - theta(t), computed without cancellation in the right tail.
    pub(crate) fn theta_complement(&self, t: T) -> T {
        match self.kind {
            PhaseKind::Erf => {
                let y = (t - self.center) / self.width;
                T::of(0.5) * (y / T::SQRT_2()).erfc()
            }
            PhaseKind::Logistic => stable_logistic(-(t - self.center) / self.width),
        }
    }

    /// Schwarzian derivative d3/d1 - (3/2)(d2/d1)^2 at `t`.
    ///
    /// Non-positive everywhere for both built-in families. Deep in the
    /// tails the phase derivative underflows and the ratios lose meaning;
    /// that case reports [`Error::PrecisionLoss`] rather than NaN.
    pub fn schwarzian(&self, t: T) -> Result<T> {
        let jet = self.eval_jet(t)?;
        if !jet.d1.is_normal() {
            return Err(Error::PrecisionLoss {
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(schwarzian_of_jet(&jet))
    }

    /// Distance from the center, in widths, past which basis integrands are
    /// below roughly 1e-14 and integrals may be truncated.
    ///
    /// The erf family decays like exp(-t^2 / 2 sigma^2) (below 1e-14 by
    /// 8 widths); the logistic family only like exp(-|t| / sigma), which
    /// needs about 35 widths for the same headroom.
    pub fn support_radius_widths(&self) -> T {
        match self.kind {
            PhaseKind::Erf => T::of(10.0),
            PhaseKind::Logistic => T::of(35.0),
        }
    }

    /// Integration window [t0 - R sigma, t0 + R sigma] wide enough that the
    /// truncated basis inner products match the infinite ones to ~1e-14.
    pub fn support_interval(&self) -> (T, T) {
        let r = self.support_radius_widths() * self.width;
        (self.center - r, self.center + r)
    }

    /// Check the three admissibility conditions on `grid` (non-empty,
    /// sorted ascending). Failures are reported, never thrown.
    /// Boundedness of the derivative is decidable only at the sampled
    /// points; the report says nothing about the gaps between them.
    ///
    /// The tail condition is decidable only when the grid extremes sit at
    /// least [`TAIL_CHECK_WIDTHS`] widths from the center on both sides;
    /// `tail_tol` is the magnitude theta (left) and 1 - theta (right) must
    /// stay under there. [`DEFAULT_TAIL_TOL`] suits the erf family's
    /// Gaussian decay; the logistic family reaches ~3.4e-4 at 8 widths, so
    /// pass a tolerance matched to its exp(-|t|/sigma) rate when checking it.
    pub fn validate(&self, grid: &[T], tail_tol: T) -> ValidityReport {
        assert!(!grid.is_empty(), "validation grid must be non-empty");

        let mut derivative_positive = Check::Pass;
        let mut schwarzian_nonpositive = Check::Pass;
        let schwarzian_slack = T::of(1e-9);
        let mut monotone = true;
        let mut prev_theta = T::neg_infinity();

        for &t in grid {
            let jet = self.jet(t);
            if !(jet.d1 > T::zero()) || !jet.d1.is_finite() {
                derivative_positive = Check::Fail;
            }
            if jet.theta < prev_theta {
                monotone = false;
            }
            prev_theta = jet.theta;
            if jet.d1.is_normal() && schwarzian_of_jet(&jet) > schwarzian_slack {
                schwarzian_nonpositive = Check::Fail;
            }
            // Underflowed points cannot support a Schwarzian value either
            // way; they neither pass nor fail condition 3.
        }

        let first = grid[0];
        let last = grid[grid.len() - 1];
        let reach = T::of(TAIL_CHECK_WIDTHS) * self.width;
        let tails_settle = if self.center - first >= reach && last - self.center >= reach {
            let left = self.jet(first).theta;
            let right = self.theta_complement(last);
            if monotone && left <= tail_tol && right <= tail_tol {
                Check::Pass
            } else {
                Check::Fail
            }
        } else {
            Check::Indeterminate
        };

        ValidityReport {
            derivative_positive,
            tails_settle,
            schwarzian_nonpositive,
        }
    }
}

fn schwarzian_of_jet<T: Real>(jet: &PhaseJet<T>) -> T {
    let r2 = jet.d2 / jet.d1;
    jet.d3 / jet.d1 - T::of(1.5) * r2 * r2
}

/// Logistic function 1/(1+exp(-x)) without overflow on either side.
fn stable_logistic<T: Real>(x: T) -> T {
    if x >= T::zero() {
        T::one() / (T::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::one() + e)
    }
}
