//! Bessel kernels of the radial Fourier transform in two and four dimensions.

use crate::grid::Dimension;

/// `J_{d/2−1}(x)`: order 0 in two dimensions, order 1 in four.
#[inline]
pub fn kernel(dim: Dimension, x: f64) -> f64 {
    match dim {
        Dimension::Two => libm::j0(x),
        Dimension::Four => libm::j1(x),
    }
}

/// Order `α = d/2 − 1` of the kernel.
pub fn order(dim: Dimension) -> f64 {
    match dim {
        Dimension::Two => 0.0,
        Dimension::Four => 1.0,
    }
}

/// Generalized Laguerre polynomials `L_k^{(α)}(x)` for `k = 0..n`.
pub fn laguerre_all(n: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(1.0);
    if n == 1 {
        return out;
    }
    out.push(1.0 + alpha - x);
    for k in 1..n - 1 {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}
