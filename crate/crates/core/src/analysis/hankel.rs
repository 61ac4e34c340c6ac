//! Unitary radial Fourier transform in two and four dimensions,
//!
//! ```text
//! F(ρ) = ρ^{1−d/2} ∫₀^∞ f(r) J_{d/2−1}(ρ r) r^{d/2} dr,
//! ```
//!
//! which is its own inverse and preserves `‖·‖_{L²(ℝ^d)}`.
//!
//! The Bessel integrals are computed by endpoint-corrected quadrature on the
//! cell-centred nodes after subtracting a Laguerre–Gaussian reference that
//! matches the field to eighth order at the origin. The reference is
//! transformed exactly: `L_k^{(α)}(r²) e^{−r²/2} ↦ (−1)^k L_k^{(α)}(ρ²) e^{−ρ²/2}`.
//! Wavenumbers are cell-centred on `[0, π/dr]` with twice as many nodes as
//! the spatial grid.

use rayon::prelude::*;

use super::bessel::{kernel, laguerre_all, order};
use crate::error::Result;
use crate::grid::{Dimension, RadialGrid};
use crate::quadrature::{odd_corrected_midpoint_weights, ORIGIN_FIT_NODES};

const FIT: usize = ORIGIN_FIT_NODES;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub wavenumbers: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub dim: Dimension,
    /// Quadrature weights on the wavenumber grid for integrands odd in `ρ`.
    pub weights: Vec<f64>,
    /// Largest `|f|` over the outer 5% of the domain relative to `sup |f|`.
    pub tail_ratio: f64,
}

impl SpectralField {
    pub fn spacing(&self) -> f64 {
        self.wavenumbers[1] - self.wavenumbers[0]
    }

    /// True when the input field had decayed at the outer edge.
    pub fn decayed(&self, tol: f64) -> bool {
        self.tail_ratio <= tol
    }
}

/// Wavenumber grid paired with a radial grid.
pub fn wavenumber_grid(grid: &RadialGrid) -> (Vec<f64>, f64) {
    let n = 2 * grid.n_cells();
    let d_rho = std::f64::consts::PI / (2.0 * grid.r_max());
    ((0..n).map(|k| (k as f64 + 0.5) * d_rho).collect(), d_rho)
}

fn solve4(mut a: [[f64; FIT]; FIT], mut b: [f64; FIT]) -> [f64; FIT] {
    for col in 0..FIT {
        let piv = (col..FIT).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..FIT {
            let m = a[row][col] / a[col][col];
            let pivot = a[col];
            for (x, p) in a[row][col..].iter_mut().zip(&pivot[col..]) {
                *x -= m * p;
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [0.0; FIT];
    for row in (0..FIT).rev() {
        let s: f64 = (row + 1..FIT).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Laguerre coefficients `c_k` of `e^{−x²/2} Σ c_k L_k^{(α)}(x²)`, matching
/// the even fit of `f` through the first nodes.
fn reference_coefficients(f: &[f64], nodes: &[f64], alpha: f64) -> [f64; FIT] {
    let mut vander = [[0.0; FIT]; FIT];
    let mut rhs = [0.0; FIT];
    for i in 0..FIT {
        let s = nodes[i] * nodes[i];
        for (p, v) in vander[i].iter_mut().enumerate() {
            *v = s.powi(p as i32);
        }
        rhs[i] = f[i];
    }
    let a = solve4(vander, rhs);
    // e^{s/2} Σ a_i s^i truncated at degree FIT − 1
    let mut p = [0.0; FIT];
    for (m, pm) in p.iter_mut().enumerate() {
        *pm = (0..=m).map(|i| a[i] * 0.5f64.powi((m - i) as i32) / factorial(m - i)).sum();
    }
    // s^m = Σ_k (−1)^k m! Γ(m+α+1) / ((m−k)! Γ(k+α+1)) L_k^{(α)}(s), α integer
    let gamma = |x: usize| factorial(x);
    let a_int = alpha as usize;
    let mut lag = [0.0; FIT];
    for (m, pm) in p.iter().enumerate() {
        for (k, lk) in lag.iter_mut().enumerate().take(m + 1) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *lk += pm * sign * factorial(m) * gamma(m + a_int) / (factorial(m - k) * gamma(k + a_int));
        }
    }
    lag
}

fn reference_value(lag: &[f64; FIT], alpha: f64, x: f64, sign_flip: bool) -> f64 {
    let l = laguerre_all(FIT, alpha, x * x);
    let mut s = 0.0;
    for k in 0..FIT {
        let sign = if sign_flip && k % 2 == 1 { -1.0 } else { 1.0 };
        s += sign * lag[k] * l[k];
    }
    s * (-0.5 * x * x).exp()
}

fn transform(values: &[f64], nodes: &[f64], weights: &[f64], targets: &[f64], dim: Dimension) -> Vec<f64> {
    let alpha = order(dim);
    let lag = reference_coefficients(values, nodes, alpha);
    let rem: Vec<f64> = values
        .iter()
        .zip(nodes)
        .zip(weights)
        .map(|((f, &x), w)| {
            let g = f - reference_value(&lag, alpha, x, false);
            w * g * match dim {
                Dimension::Two => x,
                Dimension::Four => x * x,
            }
        })
        .collect();
    targets
        .par_iter()
        .with_min_len(32)
        .map(|&k| {
            let mut s = 0.0;
            for (g, &x) in rem.iter().zip(nodes) {
                s += g * kernel(dim, k * x);
            }
            let s = match dim {
                Dimension::Two => s,
                Dimension::Four => s / k,
            };
            s + reference_value(&lag, alpha, k, true)
        })
        .collect()
}

/// Forward transform of an even radial field.
pub fn hankel_forward(f: &[f64], grid: &RadialGrid, dim: Dimension) -> Result<SpectralField> {
    grid.check_len(f)?;
    let (rho, d_rho) = wavenumber_grid(grid);
    let coefficients = transform(f, grid.radii(), grid.weights(), &rho, dim);
    let sup = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tail_start = f.len() - f.len() / 20;
    let tail = f[tail_start..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(SpectralField {
        weights: odd_corrected_midpoint_weights(rho.len(), d_rho),
        wavenumbers: rho,
        coefficients,
        dim,
        tail_ratio: if sup > 0.0 { tail / sup } else { 0.0 },
    })
}

/// Inverse transform back onto the grid nodes.
pub fn hankel_inverse(spec: &SpectralField, grid: &RadialGrid) -> Result<Vec<f64>> {
    Ok(transform(&spec.coefficients, &spec.wavenumbers, &spec.weights, grid.radii(), spec.dim))
}
