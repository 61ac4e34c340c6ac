//! Cell-centred radial mesh with parity ghost cells at the axis.
//!
//! Nodes sit at `r_j = (j + ½) dr`, so the axis is never a node. Inner ghost
//! values come from the parity of the field about `r = 0`; outer ghost
//! values from quartic extrapolation through the last five nodes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quadrature::{compensated_sum, fornberg_weights, odd_corrected_midpoint_weights};

/// Ghost layers on each side; the widest stencil used is five points.
pub const N_GHOST: usize = 2;
const EXTRAPOLATION_NODES: usize = 5;
const AXIS_NODES: usize = 6;

/// Behaviour of a field under `r → −r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Spatial dimension of a radial measure `r^{d-1} dr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Two,
    Four,
}

impl Dimension {
    pub fn value(self) -> usize {
        match self {
            Dimension::Two => 2,
            Dimension::Four => 4,
        }
    }

    /// Area of the unit sphere S^{d-1}.
    pub fn sphere_area(self) -> f64 {
        use std::f64::consts::PI;
        match self {
            Dimension::Two => 2.0 * PI,
            Dimension::Four => 2.0 * PI * PI,
        }
    }

    pub(crate) fn measure(self, r: f64) -> f64 {
        match self {
            Dimension::Two => r,
            Dimension::Four => r * r * r,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    n_cells: usize,
    dr: f64,
    radii: Vec<f64>,
    weights: Vec<f64>,
    // ghost k (k = 0, 1) beyond the outer edge, weights over the last nodes
    outer_ghost: [[f64; EXTRAPOLATION_NODES]; N_GHOST],
    edge: [f64; EXTRAPOLATION_NODES],
    axis: [f64; AXIS_NODES],
}

impl RadialGrid {
    pub fn new(r_max: f64, n_cells: usize) -> Result<Self> {
        if !(r_max >= 4.0) {
            return Err(Error::DomainTooSmall(r_max));
        }
        if n_cells < 64 {
            return Err(Error::GridTooCoarse(n_cells));
        }
        let dr = r_max / n_cells as f64;
        let radii: Vec<f64> = (0..n_cells).map(|j| (j as f64 + 0.5) * dr).collect();
        let weights = odd_corrected_midpoint_weights(n_cells, dr);

        let last: Vec<f64> = (n_cells - EXTRAPOLATION_NODES..n_cells).map(|j| j as f64 + 0.5).collect();
        let mut outer_ghost = [[0.0; EXTRAPOLATION_NODES]; N_GHOST];
        for (k, row) in outer_ghost.iter_mut().enumerate() {
            let c = fornberg_weights((n_cells + k) as f64 + 0.5, &last, 0);
            for (dst, ci) in row.iter_mut().zip(&c) {
                *dst = ci[0];
            }
        }
        let mut edge = [0.0; EXTRAPOLATION_NODES];
        let c = fornberg_weights(n_cells as f64, &last, 0);
        for (dst, ci) in edge.iter_mut().zip(&c) {
            *dst = ci[0];
        }
        let first: Vec<f64> = (0..AXIS_NODES).map(|j| j as f64 + 0.5).collect();
        let mut axis = [0.0; AXIS_NODES];
        for (dst, ci) in axis.iter_mut().zip(&fornberg_weights(0.0, &first, 0)) {
            *dst = ci[0];
        }
        Ok(Self { r_max, n_cells, dr, radii, weights, outer_ghost, edge, axis })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn n_ghost(&self) -> usize {
        N_GHOST
    }

    /// Radii of the cell centres.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Quadrature weights for integrands that are odd about the axis.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn check_len(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.n_cells {
            return Err(Error::ShapeMismatch { expected: self.n_cells, got: f.len() });
        }
        Ok(())
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.radii.iter().map(|&r| f(r)).collect()
    }

    /// Copies `f` into `ext` with `N_GHOST` ghost cells on each side.
    pub fn fill_extended(&self, f: &[f64], parity: Parity, ext: &mut Vec<f64>) {
        let n = self.n_cells;
        ext.clear();
        ext.resize(n + 2 * N_GHOST, 0.0);
        let s = parity.sign();
        for k in 0..N_GHOST {
            ext[N_GHOST - 1 - k] = s * f[k];
        }
        ext[N_GHOST..N_GHOST + n].copy_from_slice(f);
        let tail = &f[n - EXTRAPOLATION_NODES..];
        for (k, w) in self.outer_ghost.iter().enumerate() {
            ext[N_GHOST + n + k] = w.iter().zip(tail).map(|(a, b)| a * b).sum();
        }
    }

    /// Fourth-order first and second derivatives from an extended array.
    pub(crate) fn derivatives_from_extended(&self, ext: &[f64], d1: &mut [f64], d2: &mut [f64]) {
        let inv = 1.0 / (12.0 * self.dr);
        let inv2 = 1.0 / (12.0 * self.dr * self.dr);
        for j in 0..self.n_cells {
            let c = j + N_GHOST;
            let (m2, m1, z, p1, p2) = (ext[c - 2], ext[c - 1], ext[c], ext[c + 1], ext[c + 2]);
            d1[j] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) * inv;
            d2[j] = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) * inv2;
        }
    }

    /// Value at the axis from the even quartic `a + b r² + c r⁴` through
    /// the first three nodes.
    pub fn axis_trace(&self, f: &[f64]) -> f64 {
        f[0] * 1.171875 - f[1] * 0.1953125 + f[2] * 0.0234375
    }

    /// Value at the axis by quintic extrapolation through the first six
    /// nodes, with no parity assumption.
    pub fn axis_extrapolation(&self, f: &[f64]) -> f64 {
        self.axis.iter().zip(f).map(|(a, b)| a * b).sum()
    }

    /// Value at `r_max` by quartic extrapolation.
    pub fn edge_trace(&self, f: &[f64]) -> f64 {
        let tail = &f[self.n_cells - EXTRAPOLATION_NODES..];
        self.edge.iter().zip(tail).map(|(a, b)| a * b).sum()
    }
}

/// Builds the grid described by the model parameters.
pub fn make_grid(params: &ModelParams) -> Result<RadialGrid> {
    params.validate()?;
    RadialGrid::new(params.r_max, params.n_cells)
}

/// Fourth-order centred `∂_r f` with parity ghost cells at the axis.
pub fn radial_derivative(f: &[f64], grid: &RadialGrid, parity: Parity) -> Result<Vec<f64>> {
    grid.check_len(f)?;
    let mut ext = Vec::new();
    grid.fill_extended(f, parity, &mut ext);
    let mut d1 = vec![0.0; f.len()];
    let mut d2 = vec![0.0; f.len()];
    grid.derivatives_from_extended(&ext, &mut d1, &mut d2);
    Ok(d1)
}

/// Fourth-order centred `∂_rr f`.
pub fn radial_second_derivative(f: &[f64], grid: &RadialGrid, parity: Parity) -> Result<Vec<f64>> {
    grid.check_len(f)?;
    let mut ext = Vec::new();
    grid.fill_extended(f, parity, &mut ext);
    let mut d1 = vec![0.0; f.len()];
    let mut d2 = vec![0.0; f.len()];
    grid.derivatives_from_extended(&ext, &mut d1, &mut d2);
    Ok(d2)
}

/// Radial Laplacian `f'' + (d−1) f'/r` in dimension `d`.
pub fn radial_laplacian(f: &[f64], grid: &RadialGrid, dim: Dimension, parity: Parity) -> Result<Vec<f64>> {
    grid.check_len(f)?;
    let mut ext = Vec::new();
    grid.fill_extended(f, parity, &mut ext);
    let mut d1 = vec![0.0; f.len()];
    let mut d2 = vec![0.0; f.len()];
    grid.derivatives_from_extended(&ext, &mut d1, &mut d2);
    let k = (dim.value() - 1) as f64;
    Ok(d2.iter().zip(&d1).zip(grid.radii()).map(|((a, b), r)| a + k * b / r).collect())
}

/// `∫₀^{r_max} f(r) r^{d−1} dr` for an even field `f`.
pub fn radial_integral(f: &[f64], grid: &RadialGrid, dim: Dimension) -> Result<f64> {
    grid.check_len(f)?;
    Ok(compensated_sum(
        f.iter().zip(grid.radii()).zip(grid.weights()).map(|((f, &r), w)| w * f * dim.measure(r)),
    ))
}

/// `‖f‖_{L²(ℝ^d)}` including the sphere area.
pub fn l2_norm(f: &[f64], grid: &RadialGrid, dim: Dimension) -> Result<f64> {
    let sq: Vec<f64> = f.iter().map(|x| x * x).collect();
    Ok((dim.sphere_area() * radial_integral(&sq, grid, dim)?).sqrt())
}
