//! Sampled signals on uniform or non-uniform time grids.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ordered (time, value) samples of a real signal.
///
/// Times are strictly increasing and everything is finite; the constructor
/// enforces both so the rest of the crate can assume them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal<T> {
    times: Vec<T>,
    values: Vec<T>,
    uniform: bool,
}

impl<T: Real> SampledSignal<T> {
    pub fn new(times: Vec<T>, values: Vec<T>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::domain(format!(
                "times ({}) and values ({}) differ in length",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::domain("a signal needs at least two samples"));
        }
        for (i, w) in times.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::domain(format!(
                    "sample times must be strictly increasing (violated at index {})",
                    i + 1
                )));
            }
        }
        if times.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::domain("sample times and values must be finite"));
        }
        let uniform = Self::detect_uniform(&times);
        Ok(SampledSignal {
            times,
            values,
            uniform,
        })
    }

    /// Evaluate `f` on a uniform grid of `count >= 2` points over [lo, hi].
    pub fn from_fn(lo: T, hi: T, count: usize, mut f: impl FnMut(T) -> T) -> Result<Self> {
        if count < 2 {
            return Err(Error::domain("a signal needs at least two samples"));
        }
        let step = (hi - lo) / T::of_usize(count - 1);
        let times: Vec<T> = (0..count).map(|i| lo + step * T::of_usize(i)).collect();
        let values = times.iter().map(|&t| f(t)).collect();
        Self::new(times, values)
    }

    fn detect_uniform(times: &[T]) -> bool {
        let span = times[times.len() - 1] - times[0];
        let nominal = span / T::of_usize(times.len() - 1);
        let tol = T::of(1e-9) * nominal;
        times
            .windows(2)
            .all(|w| ((w[1] - w[0]) - nominal).abs() <= tol)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction: at least two samples
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Median spacing between consecutive samples.
    pub fn median_spacing(&self) -> T {
        let mut gaps: Vec<T> = self.times.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_by(|a, b| a.partial_cmp(b).expect("finite gaps"));
        gaps[gaps.len() / 2]
    }

    /// Trapezoidal integral of `f(t_i) * weight_i` over the sample grid,
    /// restricted to samples with t in [lo, hi].
    pub(crate) fn trapezoid_windowed(&self, lo: T, hi: T, f: impl Fn(T, T) -> T) -> T {
        let first = self.times.partition_point(|&t| t < lo);
        let last = self.times.partition_point(|&t| t <= hi);
        if last - first < 2 {
            return T::zero();
        }
        let times = &self.times[first..last];
        let values = &self.values[first..last];
        let half = T::of(0.5);
        let mut acc = T::zero();
        for i in 0..times.len() - 1 {
            let fa = f(times[i], values[i]);
            let fb = f(times[i + 1], values[i + 1]);
            acc += half * (fa + fb) * (times[i + 1] - times[i]);
        }
        acc
    }

    /// Trapezoidal integral across the whole grid.
    pub(crate) fn trapezoid(&self, f: impl Fn(T, T) -> T) -> T {
        let lo = self.times[0];
        let hi = self.times[self.times.len() - 1];
        self.trapezoid_windowed(lo, hi, f)
    }

    /// Signal energy, the trapezoidal integral of u^2.
    pub fn energy(&self) -> T {
        self.trapezoid(|_, u| u * u)
    }

    /// Root-mean-square difference against another signal on the same grid.
    pub fn rms_difference(&self, other: &Self) -> Result<T> {
        if self.times != other.times {
            return Err(Error::domain("rms difference needs identical sample grids"));
        }
        let n = T::of_usize(self.len());
        let sum = self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b));
        Ok((sum / n).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_short_inputs() {
        assert!(SampledSignal::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(SampledSignal::new(vec![1.0, 0.5], vec![1.0, 2.0]).is_err());
        assert!(SampledSignal::new(vec![1.0], vec![1.0]).is_err());
        assert!(SampledSignal::new(vec![0.0, 1.0], vec![f64::NAN, 2.0]).is_err());
        assert!(SampledSignal::new(vec![0.0, 1.0, 2.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn uniformity_detection() {
        let s = SampledSignal::from_fn(0.0, 1.0, 11, |t| t).unwrap();
        assert!(s.is_uniform());
        let s = SampledSignal::new(vec![0.0, 0.1, 0.35, 0.9], vec![0.0; 4]).unwrap();
        assert!(!s.is_uniform());
    }

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let s = SampledSignal::from_fn(0.0, 2.0, 21, |t: f64| 3.0 * t).unwrap();
        let integral = s.trapezoid(|_, u| u);
        assert!((integral - 6.0).abs() < 1e-12);
        // window [0,1]: integral of 3t = 1.5
        let windowed = s.trapezoid_windowed(0.0, 1.0, |_, u| u);
        assert!((windowed - 1.5).abs() < 1e-12);
    }

    #[test]
    fn energy_of_unit_box() {
        let s = SampledSignal::from_fn(0.0, 1.0, 101, |_: f64| 1.0).unwrap();
        assert!((s.energy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn median_spacing_on_irregular_grid() {
        let s = SampledSignal::new(vec![0.0, 1.0, 1.5, 4.0, 4.2], vec![0.0; 5]).unwrap();
        assert_eq!(s.median_spacing(), 1.0);
    }
}
