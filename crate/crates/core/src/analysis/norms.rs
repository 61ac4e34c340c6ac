//! Sobolev norms of radial fields through the radial Fourier transform.

use serde::{Deserialize, Serialize};

use super::hankel::{hankel_forward, SpectralField};
use crate::error::{Error, Result};
use crate::grid::{Dimension, RadialGrid};
use crate::quadrature::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    pub sigma: f64,
    pub dim: Dimension,
    pub homogeneous: bool,
    /// Integrability exponent; only 2 is supported.
    pub p: f64,
}

impl NormSpec {
    pub fn homogeneous(sigma: f64, dim: Dimension) -> Self {
        Self { sigma, dim, homogeneous: true, p: 2.0 }
    }

    pub fn inhomogeneous(sigma: f64, dim: Dimension) -> Self {
        Self { sigma, dim, homogeneous: false, p: 2.0 }
    }
}

fn is_odd_integer(x: f64) -> bool {
    x.fract() == 0.0 && (x as i64) % 2 != 0
}

/// `(|S^{d−1}| ∫ |F(ρ)|² w(ρ) ρ^{d−1} dρ)^{1/2}` with `w = ρ^{2σ}` or
/// `(1 + ρ²)^σ`.
pub fn spectral_norm(spec: &SpectralField, norm: &NormSpec) -> Result<f64> {
    if norm.p != 2.0 {
        return Err(Error::InvalidParameter { name: "p", reason: format!("{} unsupported, only p = 2", norm.p) });
    }
    if norm.dim != spec.dim {
        return Err(Error::InvalidParameter { name: "dim", reason: "spectrum computed in another dimension".into() });
    }
    let d = norm.dim.value() as f64;
    // The integrand is odd in ρ exactly when its power of ρ is an odd
    // integer; then the endpoint-corrected weights apply. Otherwise it is
    // even or has a fractional power at 0 and the midpoint rule is used.
    let power = if norm.homogeneous { d - 1.0 + 2.0 * norm.sigma } else { d - 1.0 };
    let h = spec.spacing();
    let corrected = is_odd_integer(power);
    let terms = spec.coefficients.iter().zip(&spec.wavenumbers).zip(&spec.weights).map(|((c, &k), w)| {
        let weight = if norm.homogeneous { k.powf(power) } else { (1.0 + k * k).powf(norm.sigma) * k.powf(power) };
        let q = if corrected { *w } else { h };
        q * c * c * weight
    });
    Ok((norm.dim.sphere_area() * compensated_sum(terms)).sqrt())
}

/// `‖f‖_{Ḣ^σ(ℝ^d)}` or `‖f‖_{H^σ(ℝ^d)}` of an even radial field.
pub fn sobolev_norm(f: &[f64], norm: &NormSpec, grid: &RadialGrid) -> Result<f64> {
    let spec = hankel_forward(f, grid, norm.dim)?;
    spectral_norm(&spec, norm)
}
