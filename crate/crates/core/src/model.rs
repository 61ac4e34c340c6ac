//! Closed-form model expressions: the nonlinearity, the `u ↔ v` lift, the
//! kernel `Ã`, the auxiliary field `Φ` and its wave-equation right-hand side.
//!
//! Conventions: `□ = ∂_tt − Δ`, `Δ₄ = ∂_rr + (3/r)∂_r`. The lifted field obeys
//! `□₄₊₁ v = rhs_v(v)` and the auxiliary field `□₄₊₁ Φ = rhs_phi(v)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cutoff::{CutoffPoint, CutoffProfile};
use crate::error::{Error, Result};
use crate::fields::{PhiState, UState, VState};
use crate::grid::{radial_derivative, radial_integral, Dimension, Parity, RadialGrid};
use crate::params::Tolerances;
use crate::quadrature::{adaptive_gauss_legendre, Integral};
use crate::special::{cubic_defect, double_angle_defect, sinc};

/// Largest allowed mismatch between the axis trace of `u` and `N₁π` when
/// lifting to `v`, relative to `max(1, N₁π)`. Grids too coarse to resolve
/// this get `dr⁴` instead, the order of the trace extrapolation.
pub const AXIS_TOLERANCE: f64 = 1e-6;

fn pi_multiple(n1: u32) -> f64 {
    n1 as f64 * std::f64::consts::PI
}

/// `(sin u, sin 2u)` after reducing `u` by the nearest multiple of `π`, so
/// both stay accurate relative to the distance from that multiple.
#[inline]
fn reduced_sines(u: f64) -> (f64, f64) {
    let k = (u / std::f64::consts::PI).round();
    let x = u - k * std::f64::consts::PI;
    let sign = if k.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
    (sign * x.sin(), (2.0 * x).sin())
}

/// `u = r v + φ`, `u_t = r v_t`.
pub fn u_from_v(v: &VState, cut: &CutoffProfile, grid: &RadialGrid) -> Result<UState> {
    grid.check_len(&v.v)?;
    grid.check_len(&v.v_t)?;
    let r = grid.radii();
    let u = v.v.iter().zip(r).zip(&cut.phi_cut.value).map(|((v, r), p)| r * v + p).collect();
    let u_t = v.v_t.iter().zip(r).map(|(v, r)| r * v).collect();
    Ok(UState { u, u_t, t: v.t, n1: cut.n1 })
}

/// `v = (u − φ)/r`, `v_t = u_t / r`. Fails when `u` does not reach `N₁π`
/// at the axis.
pub fn v_from_u(u: &UState, cut: &CutoffProfile, grid: &RadialGrid) -> Result<VState> {
    grid.check_len(&u.u)?;
    grid.check_len(&u.u_t)?;
    let expected = cut.axis_value();
    let trace = grid.axis_extrapolation(&u.u);
    let tol = AXIS_TOLERANCE.max(grid.dr().powi(4)) * expected.abs().max(1.0);
    if !((trace - expected).abs() <= tol) {
        return Err(Error::SingularAxis { trace, expected });
    }
    let r = grid.radii();
    let v = u.u.iter().zip(r).zip(&cut.phi_cut.value).map(|((u, r), p)| (u - p) / r).collect();
    let v_t = u.u_t.iter().zip(r).map(|(u, r)| u / r).collect();
    Ok(VState { v, v_t, t: u.t })
}

/// `N(r, u, ∇u)` from `sin u`, `sin 2u` and the derivatives of `u`.
#[inline]
pub fn nonlinearity_point(r: f64, sin_u: f64, sin_2u: f64, u_r: f64, u_t: f64) -> f64 {
    let r2 = r * r;
    let s2 = sin_u * sin_u;
    let num = -sin_2u / (2.0 * r2) * (1.0 + u_t * u_t - u_r * u_r) - 2.0 * s2 * u_r / (r2 * r);
    num / (1.0 + s2 / r2)
}

/// `N(r, u, ∇u)` on the grid.
pub fn nonlinearity_u(u: &UState, grid: &RadialGrid) -> Result<Vec<f64>> {
    grid.check_len(&u.u)?;
    grid.check_len(&u.u_t)?;
    let axis = pi_multiple(u.n1);
    let w: Vec<f64> = u.u.iter().map(|x| x - axis).collect();
    let w_r = radial_derivative(&w, grid, Parity::Odd)?;
    Ok(grid
        .radii()
        .iter()
        .zip(&u.u)
        .zip(&w_r)
        .zip(&u.u_t)
        .map(|(((&r, &x), &xr), &ut)| {
            let (s1, s2) = reduced_sines(x);
            nonlinearity_point(r, s1, s2, xr, ut)
        })
        .collect())
}

/// `(1/r) N(r, r v + N₁π, ∇(r v)) + v/r²` in variables free of removable
/// singularities, valid where `φ ≡ N₁π`. With `x = r v`, `S = sin x/x`,
/// `T = (x cos x − sin x)/x³`, `P = (2x − sin 2x)/(2x³)`:
///
/// ```text
/// [P v³ + S T v⁵ + S(2x) v (v_r² − v_t²) + 2 S T r v⁴ v_r] / (1 + S² v²)
/// ```
#[inline]
pub fn axis_bracket(r: f64, v: f64, v_r: f64, v_t: f64) -> f64 {
    let x = r * v;
    let s = sinc(x);
    let st = s * cubic_defect(x);
    let v2 = v * v;
    let v3 = v2 * v;
    let num = double_angle_defect(x) * v3
        + st * v3 * v2
        + sinc(2.0 * x) * v * (v_r * v_r - v_t * v_t)
        + 2.0 * st * r * v2 * v2 * v_r;
    num / (1.0 + s * s * v2)
}

/// Right-hand side of the lifted equation at one node.
pub fn rhs_v_point(r: f64, v: f64, v_r: f64, v_t: f64, c: &CutoffPoint) -> f64 {
    let mut out = c.laplacian2_phi(r) / r;
    let gt = c.gt1();
    if gt > 0.0 {
        let u = r * v + c.phi;
        let u_r = v + r * v_r + c.phi_r;
        let u_t = r * v_t;
        let (s1, s2) = reduced_sines(u);
        let n = nonlinearity_point(r, s1, s2, u_r, u_t);
        out += gt * (n / r + v / (r * r));
    }
    if c.lt1 > 0.0 {
        out += c.lt1 * axis_bracket(r, v, v_r, v_t);
    }
    out
}

impl CutoffProfile {
    /// Tabulated cutoff values at node `j`.
    pub fn point(&self, j: usize) -> CutoffPoint {
        CutoffPoint {
            phi: self.phi_cut.value[j],
            phi_r: self.phi_cut.d1[j],
            phi_rr: self.phi_cut.d2[j],
            lt1: self.phi_lt1.value[j],
            lt1_r: self.phi_lt1.d1[j],
            lt1_rr: self.phi_lt1.d2[j],
        }
    }
}

pub(crate) fn rhs_v_from_parts(
    v: &[f64],
    v_r: &[f64],
    v_t: &[f64],
    cut: &CutoffProfile,
    grid: &RadialGrid,
    out: &mut [f64],
) {
    let r = grid.radii();
    out.par_iter_mut().enumerate().with_min_len(256).for_each(|(j, o)| {
        *o = rhs_v_point(r[j], v[j], v_r[j], v_t[j], &cut.point(j));
    });
}

/// Full right-hand side of `□₄₊₁ v = rhs_v(v)`.
pub fn rhs_v(v: &VState, cut: &CutoffProfile, grid: &RadialGrid) -> Result<Vec<f64>> {
    grid.check_len(&v.v)?;
    grid.check_len(&v.v_t)?;
    let v_r = radial_derivative(&v.v, grid, Parity::Even)?;
    let mut out = vec![0.0; v.v.len()];
    rhs_v_from_parts(&v.v, &v_r, &v.v_t, cut, grid, &mut out);
    Ok(out)
}

/// `Ã(r, y)` with its partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxKernelPoint {
    pub a_tilde: f64,
    pub a_tilde_r: f64,
    pub a_tilde_y: f64,
}

/// `Ã(r, y) = 1 + sin²(r y + φ(r))/r²` from tabulated cutoff values.
#[inline]
pub fn aux_kernel(r: f64, y: f64, c: &CutoffPoint) -> AuxKernelPoint {
    if r <= 1.0 {
        // φ ≡ N₁π and φ' = 0 here
        let x = r * y;
        let s = sinc(x);
        AuxKernelPoint {
            a_tilde: 1.0 + y * y * s * s,
            a_tilde_r: 2.0 * r * y.powi(4) * s * cubic_defect(x),
            a_tilde_y: 2.0 * y * sinc(2.0 * x),
        }
    } else {
        let x = r * y + c.phi;
        let r2 = r * r;
        let s2 = x.sin().powi(2);
        let sin_2x = (2.0 * x).sin();
        AuxKernelPoint {
            a_tilde: 1.0 + s2 / r2,
            a_tilde_r: -2.0 * s2 / (r2 * r) + sin_2x * (y + c.phi_r) / r2,
            a_tilde_y: sin_2x / r,
        }
    }
}

/// `Ã(r, y)` for the winding number of `cut`.
pub fn a_tilde(r: f64, y: f64, cut: &CutoffProfile) -> AuxKernelPoint {
    aux_kernel(r, y, &CutoffPoint::at(r, cut.n1))
}

fn node_integral<F: Fn(f64) -> f64>(f: F, v: f64, tol: &Tolerances) -> Integral {
    adaptive_gauss_legendre(f, 0.0, v, tol.quadrature, tol.quadrature_depth)
}

fn worst_failure(results: &[Integral], grid: &RadialGrid) -> Option<Error> {
    results
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.converged)
        .max_by(|a, b| a.1.error_estimate.total_cmp(&b.1.error_estimate))
        .map(|(j, q)| Error::Quadrature { node: j, r: grid.radii()[j], estimate: q.error_estimate })
}

fn integrate_nodes<F>(v: &[f64], cut: &CutoffProfile, grid: &RadialGrid, tol: &Tolerances, f: F) -> Result<Vec<f64>>
where
    F: Fn(AuxKernelPoint) -> f64 + Sync,
{
    let r = grid.radii();
    let out: Vec<Integral> = (0..v.len())
        .into_par_iter()
        .with_min_len(64)
        .map(|j| {
            let c = cut.point(j);
            node_integral(|y| f(aux_kernel(r[j], y, &c)), v[j], tol)
        })
        .collect();
    match worst_failure(&out, grid) {
        Some(e) => Err(e),
        None => Ok(out.iter().map(|q| q.value).collect()),
    }
}

/// `Φ = ∫₀^v Ã^{1/2} dy + G(r)` and `Φ_t = Ã^{1/2}(r, v) v_t`.
pub fn build_phi(v: &VState, cut: &CutoffProfile, grid: &RadialGrid, tol: &Tolerances) -> Result<PhiState> {
    grid.check_len(&v.v)?;
    grid.check_len(&v.v_t)?;
    let body = integrate_nodes(&v.v, cut, grid, tol, |k| k.a_tilde.sqrt())?;
    let phi = body.iter().zip(&cut.static_term).map(|(b, g)| b + g).collect();
    let r = grid.radii();
    let phi_t = (0..v.v.len())
        .map(|j| aux_kernel(r[j], v.v[j], &cut.point(j)).a_tilde.sqrt() * v.v_t[j])
        .collect();
    Ok(PhiState { phi, phi_t, t: v.t })
}

/// `□₄₊₁Φ = Φ − ∫₀^v Ã^{−3/2} dy + K(r)`.
pub fn rhs_phi(v: &VState, cut: &CutoffProfile, grid: &RadialGrid, tol: &Tolerances) -> Result<Vec<f64>> {
    grid.check_len(&v.v)?;
    let diff = integrate_nodes(&v.v, cut, grid, tol, |k| k.a_tilde.sqrt() - k.a_tilde.powf(-1.5))?;
    Ok(diff
        .iter()
        .zip(&cut.static_term)
        .zip(&cut.static_source)
        .map(|((d, g), k)| d + g + k)
        .collect())
}

/// `Φ_tt = Ã^{1/2} v_tt + Ã^{−1/2} (Ã_y/2) v_t²`.
pub fn phi_second_time_derivative(
    v: &VState,
    v_tt: &[f64],
    cut: &CutoffProfile,
    grid: &RadialGrid,
) -> Result<Vec<f64>> {
    grid.check_len(&v.v)?;
    grid.check_len(v_tt)?;
    let r = grid.radii();
    Ok((0..v.v.len())
        .map(|j| {
            let k = aux_kernel(r[j], v.v[j], &cut.point(j));
            let s = k.a_tilde.sqrt();
            s * v_tt[j] + 0.5 * k.a_tilde_y * v.v_t[j] * v.v_t[j] / s
        })
        .collect())
}

/// Recovers `(v_t, v_r)` from `Φ`:
/// `v_t = Ã^{−1/2} Φ_t`, `v_r = Ã^{−1/2}(Φ_r − ½∫₀^v Ã^{−1/2} Ã_r dy − G')`.
pub fn recover_grad_v(
    phi: &PhiState,
    v: &VState,
    cut: &CutoffProfile,
    grid: &RadialGrid,
    tol: &Tolerances,
) -> Result<(Vec<f64>, Vec<f64>)> {
    grid.check_len(&phi.phi)?;
    grid.check_len(&v.v)?;
    let phi_r = radial_derivative(&phi.phi, grid, Parity::Even)?;
    let drift = integrate_nodes(&v.v, cut, grid, tol, |k| k.a_tilde_r / k.a_tilde.sqrt())?;
    let r = grid.radii();
    let mut v_t = Vec::with_capacity(v.v.len());
    let mut v_r = Vec::with_capacity(v.v.len());
    for j in 0..v.v.len() {
        let inv = 1.0 / aux_kernel(r[j], v.v[j], &cut.point(j)).a_tilde.sqrt();
        v_t.push(inv * phi.phi_t[j]);
        v_r.push(inv * (phi_r[j] - 0.5 * drift[j] - cut.static_term_r[j]));
    }
    Ok((v_t, v_r))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub gradient: f64,
    pub potential: f64,
    pub total: f64,
    /// Estimate of the energy beyond `r_max`, assuming the density decays
    /// like `r⁻⁴` from its value at the outer edge.
    pub tail_estimate: f64,
}

/// Energy density split `(kinetic, gradient, potential)` per node.
pub fn energy_densities(u: &UState, grid: &RadialGrid) -> Result<[Vec<f64>; 3]> {
    grid.check_len(&u.u)?;
    grid.check_len(&u.u_t)?;
    let axis = pi_multiple(u.n1);
    let w: Vec<f64> = u.u.iter().map(|x| x - axis).collect();
    let u_r = radial_derivative(&w, grid, Parity::Odd)?;
    let n = w.len();
    let (mut kin, mut grad, mut pot) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for (j, &r) in grid.radii().iter().enumerate() {
        let q = reduced_sines(u.u[j]).0.powi(2) / (r * r);
        kin[j] = 0.5 * (1.0 + q) * u.u_t[j] * u.u_t[j];
        grad[j] = 0.5 * (1.0 + q) * u_r[j] * u_r[j];
        pot[j] = 0.5 * q;
    }
    Ok([kin, grad, pot])
}

/// `E[u] = ∫ {(1 + sin²u/r²)(u_t² + u_r²)/2 + sin²u/(2r²)} r dr`.
pub fn energy(u: &UState, grid: &RadialGrid) -> Result<EnergyBreakdown> {
    let [kin, grad, pot] = energy_densities(u, grid)?;
    let kinetic = radial_integral(&kin, grid, Dimension::Two)?;
    let gradient = radial_integral(&grad, grid, Dimension::Two)?;
    let potential = radial_integral(&pot, grid, Dimension::Two)?;
    let n = kin.len();
    let edge = kin[n - 1] + grad[n - 1] + pot[n - 1];
    let rm = grid.r_max();
    Ok(EnergyBreakdown {
        kinetic,
        gradient,
        potential,
        total: kinetic + gradient + potential,
        tail_estimate: 0.5 * edge * rm * rm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeReport {
    pub charge: i64,
    /// `(u(r_max) − u(0))/π` before rounding.
    pub raw: f64,
}

/// `(u(r_max) − u(0))/π` from the extrapolated traces.
pub fn charge_ratio(u: &[f64], grid: &RadialGrid) -> f64 {
    (grid.edge_trace(u) - grid.axis_extrapolation(u)) / std::f64::consts::PI
}

/// Nearest integer to `(u(r_max) − u(0))/π` from the extrapolated traces.
pub fn topological_charge(u: &UState, grid: &RadialGrid, tol: &Tolerances) -> Result<ChargeReport> {
    grid.check_len(&u.u)?;
    let raw = charge_ratio(&u.u, grid);
    let charge = raw.round();
    if !((raw - charge).abs() <= tol.charge) {
        return Err(Error::NonIntegralCharge { raw });
    }
    Ok(ChargeReport { charge: charge as i64, raw })
}
