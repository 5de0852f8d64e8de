//! Separable 2D bases and lossy image representation.
//!
//! A 2D basis member is the product of two 1D members,
//! `Phi[k1,k2](x, y) = Sl_k1(x) * Sl_k2(y)`, orthonormal because each factor
//! is. Images live on a uniform pixel grid mapped onto physical coordinates
//! spanning four widths either side of each axis center, which keeps every
//! member's amplitude significant across the frame while still decaying
//! toward the edges.

use crate::basis::SinletBasis;
use crate::error::{Error, Result};
use crate::linalg::{CpQr, DenseMatrix};
use crate::scalar::Real;

/// How many widths either side of the center the pixel grid spans.
pub const FRAME_HALF_SPAN_WIDTHS: f64 = 4.0;

/// Separable 2D basis: independent center/width per axis, one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basis2D<T> {
    horizontal: SinletBasis<T>,
    vertical: SinletBasis<T>,
}

impl<T: Real> Basis2D<T> {
    /// Both axes must use the same phase family.
    pub fn new(horizontal: SinletBasis<T>, vertical: SinletBasis<T>) -> Result<Self> {
        if horizontal.phase().kind() != vertical.phase().kind() {
            return Err(Error::domain("both axes must use the same phase family"));
        }
        Ok(Basis2D { horizontal, vertical })
    }

    pub fn horizontal(&self) -> &SinletBasis<T> {
        &self.horizontal
    }

    pub fn vertical(&self) -> &SinletBasis<T> {
        &self.vertical
    }

    /// `Phi[k1,k2]` at a point in physical coordinates.
    pub fn eval(&self, k1: usize, k2: usize, x: T, y: T) -> T {
        self.horizontal.sinlet(k1, x) * self.vertical.sinlet(k2, y)
    }

    /// Physical x of pixel column `i` of `width` (spans +/- 4 widths).
    pub fn pixel_x(&self, i: usize, width: usize) -> T {
        Self::map_index(self.horizontal, i, width)
    }

    /// Physical y of pixel row `j` of `height`.
    pub fn pixel_y(&self, j: usize, height: usize) -> T {
        Self::map_index(self.vertical, j, height)
    }

    fn map_index(axis: SinletBasis<T>, i: usize, count: usize) -> T {
        let span = T::of(FRAME_HALF_SPAN_WIDTHS);
        let frac = T::of_usize(i) / T::of_usize(count - 1);
        axis.center() + axis.width() * (T::of(2.0) * span * frac - span)
    }
}

/// A grayscale image: `height x width` intensities in [0, 1], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage<T> {
    width: usize,
    height: usize,
    pixels: Vec<T>,
}

impl<T: Real> GrayImage<T> {
    /// Pixels are clamped into [0, 1] on construction; non-finite values
    /// are rejected.
    pub fn new(width: usize, height: usize, mut pixels: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::domain("image dimensions must be positive"));
        }
        if pixels.len() != width * height {
            return Err(Error::domain(format!(
                "pixel buffer holds {} values, expected {}",
                pixels.len(),
                width * height
            )));
        }
        if pixels.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("pixel values must be finite"));
        }
        for p in pixels.iter_mut() {
            *p = p.max(T::zero()).min(T::one());
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                pixels.push(f(i, j));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[T] {
        &self.pixels
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.pixels[j * self.width + i]
    }
}

/// Truncated 2D coefficient matrix with the basis that produced it;
/// `k2` varies fastest in the row-major layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageCoefficients<T> {
    basis: Basis2D<T>,
    k1: usize,
    k2: usize,
    /// Dimensions of the source image, kept for reconstruction defaults
    /// and compression accounting.
    source_width: usize,
    source_height: usize,
    coeffs: Vec<T>,
}

impl<T: Real> ImageCoefficients<T> {
    pub fn new(
        basis: Basis2D<T>,
        k1: usize,
        k2: usize,
        source_width: usize,
        source_height: usize,
        coeffs: Vec<T>,
    ) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::Parameter("coefficient counts must be positive".into()));
        }
        if coeffs.len() != k1 * k2 {
            return Err(Error::domain(format!(
                "coefficient buffer holds {} values, expected {}",
                coeffs.len(),
                k1 * k2
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("coefficients must be finite"));
        }
        Ok(ImageCoefficients {
            basis,
            k1,
            k2,
            source_width,
            source_height,
            coeffs,
        })
    }

    pub fn basis(&self) -> &Basis2D<T> {
        &self.basis
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn source_width(&self) -> usize {
        self.source_width
    }

    pub fn source_height(&self) -> usize {
        self.source_height
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn get(&self, k1: usize, k2: usize) -> T {
        self.coeffs[k1 * self.k2 + k2]
    }

    pub fn energy(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    /// Count-based compression ratio of this representation.
    pub fn dcr(&self) -> f64 {
        dcr(self.k1, self.k2, self.source_width, self.source_height)
    }
}

/// Data compression ratio: stored coefficient count over source pixel
/// count, (K1 * K2) / (W * H).
pub fn dcr(k1: usize, k2: usize, width: usize, height: usize) -> f64 {
    assert!(k1 > 0 && k2 > 0 && width > 0 && height > 0);
    (k1 as f64 * k2 as f64) / (width as f64 * height as f64)
}

/// Byte-honest variant (an extension of the plain count ratio): coefficient
/// storage at 8 bytes each against 8-bit source pixels.
pub fn dcr_bytes(k1: usize, k2: usize, width: usize, height: usize) -> f64 {
    8.0 * dcr(k1, k2, width, height)
}

/// Forward 2D transform: the coefficient matrix that best reproduces the
/// image in the separable model `img[j][i] ~ sum c[a][b] Sl_a(x_i) Sl_b(y_j)`,
/// computed as a row fit followed by a column fit (pseudo-inverses factor
/// over the separable design), O(W H (K1 + K2)) past the two small
/// per-axis factorizations.
///
/// For counts the pixel grid resolves, the sampled members are orthonormal
/// under the grid weight and this coincides with midpoint quadrature of
/// `img * Phi[k1,k2] dx dy`; the fitted form stays exact all the way to
/// `K = W`, where plain quadrature would let unresolvable members alias
/// onto smooth content.
///
/// Requires `K1 <= W` and `K2 <= H` (the per-axis systems must be
/// overdetermined or square); members the image cannot pin down are
/// dropped by the rank-truncated solve rather than amplified.
pub fn image_decompose<T: Real>(
    img: &GrayImage<T>,
    basis: &Basis2D<T>,
    k1: usize,
    k2: usize,
) -> Result<ImageCoefficients<T>> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::Parameter("coefficient counts must be positive".into()));
    }
    let w = img.width();
    let h = img.height();
    if w < 2 || h < 2 {
        return Err(Error::domain("image must be at least 2x2 to carry a grid spacing"));
    }
    if k1 > w || k2 > h {
        return Err(Error::Parameter(format!(
            "coefficient counts ({k1} x {k2}) cannot exceed the pixel grid ({w} x {h})"
        )));
    }

    let design_x = DenseMatrix::from_fn(w, k1, |i, a| basis.horizontal().sinlet(a, basis.pixel_x(i, w)));
    let design_y = DenseMatrix::from_fn(h, k2, |j, b| basis.vertical().sinlet(b, basis.pixel_y(j, h)));
    // sqrt(eps) rank cut: the two chained per-axis solves must not amplify
    // roundoff through near-dependent aliased members
    let clip = T::epsilon().sqrt();
    let qx = CpQr::with_threshold_factor(&design_x, clip)?;
    let qy = CpQr::with_threshold_factor(&design_y, clip)?;

    // row pass: fit each pixel row against the horizontal members
    let mut g = vec![T::zero(); h * k1];
    let mut row = vec![T::zero(); w];
    for j in 0..h {
        for i in 0..w {
            row[i] = img.get(i, j);
        }
        let fit = qx.solve_truncated(&row);
        g[j * k1..(j + 1) * k1].copy_from_slice(&fit);
    }
    // column pass: fit each horizontal-coefficient track down the rows
    let mut coeffs = vec![T::zero(); k1 * k2];
    let mut col = vec![T::zero(); h];
    for a in 0..k1 {
        for j in 0..h {
            col[j] = g[j * k1 + a];
        }
        let fit = qy.solve_truncated(&col);
        coeffs[a * k2..(a + 1) * k2].copy_from_slice(&fit);
    }
    ImageCoefficients::new(*basis, k1, k2, w, h, coeffs)
}

/// Inverse 2D transform onto a `width x height` pixel grid. Raw sums are
/// kept as-is; clamping to [0, 1] happens only when an image file is
/// written.
pub fn image_reconstruct<T: Real>(
    coeffs: &ImageCoefficients<T>,
    width: usize,
    height: usize,
) -> Result<Vec<T>> {
    if width < 2 || height < 2 {
        return Err(Error::domain("target image must be at least 2x2"));
    }
    let basis = coeffs.basis();
    let k1 = coeffs.k1();
    let k2 = coeffs.k2();
    let bx = sample_axis(basis.horizontal(), k1, (0..width).map(|i| basis.pixel_x(i, width)));
    let by = sample_axis(basis.vertical(), k2, (0..height).map(|j| basis.pixel_y(j, height)));

    // column pass first: partial[b][i] = sum_a c[a][b] bx[a][i]
    let mut partial = vec![T::zero(); k2 * width];
    for b in 0..k2 {
        for i in 0..width {
            let mut acc = T::zero();
            for a in 0..k1 {
                acc += coeffs.get(a, b) * bx[a * width + i];
            }
            partial[b * width + i] = acc;
        }
    }
    let mut pixels = vec![T::zero(); width * height];
    for j in 0..height {
        for i in 0..width {
            let mut acc = T::zero();
            for b in 0..k2 {
                acc += partial[b * width + i] * by[b * height + j];
            }
            pixels[j * width + i] = acc;
        }
    }
    Ok(pixels)
}

fn sample_axis<T: Real>(
    axis: &SinletBasis<T>,
    members: usize,
    points: impl Iterator<Item = T> + Clone,
) -> Vec<T> {
    let mut table = Vec::new();
    for k in 0..members {
        for t in points.clone() {
            table.push(axis.sinlet(k, t));
        }
    }
    table
}

/// Peak signal-to-noise ratio in dB between two equal-length pixel buffers
/// on the unit intensity range.
pub fn psnr<T: Real>(reference: &[T], candidate: &[T]) -> f64 {
    assert_eq!(reference.len(), candidate.len());
    let n = T::of_usize(reference.len());
    let mse = reference
        .iter()
        .zip(candidate.iter())
        .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
        / n;
    let mse = mse.to_f64().unwrap_or(f64::NAN);
    if mse == 0.0 {
        f64::INFINITY
    } else {
        -10.0 * mse.log10()
    }
}
