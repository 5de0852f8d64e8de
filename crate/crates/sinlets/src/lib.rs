//! Localized orthonormal bases built from monotone phase functions.
//!
//! A phase function `theta` rises from 0 to 1 around a center `t0` within a
//! window of width `sigma`. Each basis member
//!
//! ```text
//! Sl_n(t) = sqrt(2 theta'(t)) * sin(pi (n+1) theta(t))
//! ```
//!
//! is infinitely differentiable, has `n` zero crossings, a known
//! instantaneous frequency `(n+1) theta' / 2`, and the whole family is
//! orthonormal on the real line. Transient signals decompose into a short
//! real coefficient vector; the same coefficients then drive denoising,
//! reconstruction from non-uniform samples, envelope detection, smooth
//! differentiation, and Doppler-scaled echo synthesis. Separable products
//! of two members form orthonormal 2D bases for lossy image representation.
//!
//! All numerics are generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the `*64` aliases at the crate root pick the double
//! precision instantiations the command-line tools use.

pub mod analysis;
pub mod basis;
pub mod error;
pub mod image;
pub mod linalg;
pub mod phase;
pub mod quad;
pub mod scalar;
pub mod signal;
pub mod transform;

pub use crate::analysis::{DesignMatrix, DopplerParams};
pub use crate::basis::SinletBasis;
pub use crate::error::{Error, Result};
pub use crate::image::{Basis2D, GrayImage, ImageCoefficients};
pub use crate::phase::{PhaseFamily, PhaseJet, PhaseKind, ValidityReport};
pub use crate::scalar::Real;
pub use crate::signal::SampledSignal;
pub use crate::transform::{BasisKind, CoefficientVector, CouplingMatrix};

/// Double-precision instantiations.
pub type PhaseFamily64 = PhaseFamily<f64>;
pub type SinletBasis64 = SinletBasis<f64>;
pub type SampledSignal64 = SampledSignal<f64>;
pub type CoefficientVector64 = CoefficientVector<f64>;
pub type Basis2D64 = Basis2D<f64>;
pub type GrayImage64 = GrayImage<f64>;
pub type ImageCoefficients64 = ImageCoefficients<f64>;
