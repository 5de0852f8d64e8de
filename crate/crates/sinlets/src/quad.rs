//! Adaptive Gauss-Kronrod quadrature.
//!
//! Basis-function inner products (Gram matrices, the sinlet/coslet coupling
//! integrals) run through this routine at tight absolute tolerance. Signal
//! projections use trapezoids on the sample grid instead, see
//! [`crate::transform`].

use crate::scalar::Real;

// 15-point Kronrod abscissae on [-1, 1] (positive half, descending) with the
// embedded 7-point Gauss rule. Values from the QUADPACK tables.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// One Gauss-Kronrod pass over [a, b]. Returns the Kronrod estimate and the
/// |K15 - G7| error estimate.
fn kronrod_15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = T::of(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * T::of(WGK[7]);
    let mut gauss = f_center * T::of(WG[3]);

    for j in 0..7 {
        let x = half_len * T::of(XGK[j]);
        let fsum = f(center - x) + f(center + x);
        kronrod += T::of(WGK[j]) * fsum;
        if j % 2 == 1 {
            gauss += T::of(WG[j / 2]) * fsum;
        }
    }

    let result = kronrod * half_len;
    let err = ((kronrod - gauss) * half_len).abs();
    (result, err)
}

/// Integrate `f` over [a, b] by adaptive bisection of the 15-point
/// Gauss-Kronrod rule, to absolute tolerance `tol`.
///
/// Recursion depth is capped; intervals that refuse to converge contribute
/// their best estimate, which keeps the routine total on the smooth decaying
/// integrands this crate feeds it.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> T {
    integrate_rec(&f, a, b, tol, 32)
}

fn integrate_rec<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T, depth: u32) -> T {
    let (value, err) = kronrod_15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let mid = T::of(0.5) * (a + b);
    let half_tol = T::of(0.5) * tol;
    integrate_rec(f, a, mid, half_tol, depth - 1) + integrate_rec(f, mid, b, half_tol, depth - 1)
}

/// Default absolute tolerance for basis inner products.
pub fn default_tol<T: Real>() -> T {
    T::of(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // K15 integrates degree <= 22 exactly; no subdivision needed.
        let v = integrate(|x: f64| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12);
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (1.0 / 4.0 - 1.0 - 1.0);
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn oscillatory_converges() {
        let v = integrate(|x: f64| (20.0 * x).sin(), 0.0, 1.0, 1e-12);
        let exact = (1.0 - (20.0_f64).cos()) / 20.0;
        assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn gaussian_tail_mass() {
        let inv_sqrt_2pi = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        let v = integrate(|x: f64| inv_sqrt_2pi * (-0.5 * x * x).exp(), -10.0, 10.0, 1e-12);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn works_in_f32() {
        let v = integrate(|x: f32| x.exp(), 0.0_f32, 1.0, 1e-5);
        assert!((v - (std::f32::consts::E - 1.0)).abs() < 1e-5);
    }
}
