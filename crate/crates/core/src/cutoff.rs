//! Smooth cutoff family and the static terms of the auxiliary field.
//!
//! Every cutoff is a rescaled copy of the mollifier bridge
//! `b(x) = σ(x) / (σ(x) + σ(1 − x))`, `σ(x) = exp(−1/x)` for `x > 0`:
//!
//! * `φ(r) = N₁π · b(2 − r)`, equal to `N₁π` on `[0, 1]` and `0` on `[2, ∞)`;
//! * `φ_{<1}(r) = b(2 − 2r)`, equal to `1` on `[0, ½]` and `0` on `[1, ∞)`;
//! * `φ_{>1} = 1 − φ_{<1}`.
//!
//! The auxiliary field carries a static term `G(r)` supported in `r ≥ ½`,
//!
//! ```text
//! G(r) = φ_{>1}(r) J(r) / r − L_{1/2}(r) / r,
//! J(r)   = ∫_0^{N₁π}   A^{−3/2}(r, w) dw,
//! L_a(r) = ∫_{φ(r)}^{N₁π} A^{a}(r, w) dw,   A(r, w) = 1 + sin²w / r²,
//! ```
//!
//! chosen so that the field decays at infinity. Its wave operator leaves the
//! source `K = L_{−3/2}/r − H − Δ₄H` with `H = φ_{>1} J / r`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::params::Tolerances;
use crate::quadrature::adaptive_gauss_legendre;

fn sigma(x: f64) -> (f64, f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let s = (-1.0 / x).exp();
    let x2 = x * x;
    (s, s / x2, s * (1.0 / (x2 * x2) - 2.0 / (x2 * x)))
}

/// Mollifier bridge `b` and its first two derivatives: `b = 0` for `x ≤ 0`,
/// `b = 1` for `x ≥ 1`, smooth and strictly increasing in between.
pub fn bridge(x: f64) -> (f64, f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if x >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let (p, p1, p2) = sigma(x);
    let (q, q1m, q2m) = sigma(1.0 - x);
    let (q1, q2) = (-q1m, q2m);
    let d = p + q;
    let d1 = p1 + q1;
    let num = p1 * q - p * q1;
    let b1 = num / (d * d);
    let b2 = (p2 * q - p * q2) / (d * d) - 2.0 * num * d1 / (d * d * d);
    (p / d, b1, b2)
}

/// Cutoff values and derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffPoint {
    pub phi: f64,
    pub phi_r: f64,
    pub phi_rr: f64,
    pub lt1: f64,
    pub lt1_r: f64,
    pub lt1_rr: f64,
}

impl CutoffPoint {
    pub fn at(r: f64, n1: u32) -> Self {
        let amp = n1 as f64 * std::f64::consts::PI;
        let (b, b1, b2) = bridge(2.0 - r);
        let (c, c1, c2) = bridge(2.0 - 2.0 * r);
        Self {
            phi: amp * b,
            phi_r: -amp * b1,
            phi_rr: amp * b2,
            lt1: c,
            lt1_r: -2.0 * c1,
            lt1_rr: 4.0 * c2,
        }
    }

    pub fn gt1(&self) -> f64 {
        1.0 - self.lt1
    }

    /// `Δ₂φ = φ'' + φ'/r`.
    pub fn laplacian2_phi(&self, r: f64) -> f64 {
        self.phi_rr + self.phi_r / r
    }
}

/// Static part `G` of the auxiliary field with its radial derivatives and
/// the source `K` it leaves in the wave equation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StaticPoint {
    pub g: f64,
    pub g_r: f64,
    pub g_rr: f64,
    pub k: f64,
}

fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerances, node: usize, r: f64) -> Result<f64> {
    let out = adaptive_gauss_legendre(f, a, b, tol.quadrature, tol.quadrature_depth);
    if !out.converged {
        return Err(Error::Quadrature { node, r, estimate: out.error_estimate });
    }
    Ok(out.value)
}

impl StaticPoint {
    /// Evaluates the static terms at radius `r`; `node` only labels errors.
    pub fn at(r: f64, n1: u32, tol: &Tolerances, node: usize) -> Result<Self> {
        let cut = CutoffPoint::at(r, n1);
        let gt1 = cut.gt1();
        if n1 == 0 || gt1 == 0.0 {
            return Ok(Self::default());
        }
        let top = n1 as f64 * std::f64::consts::PI;
        let r2 = r * r;
        let a = |w: f64| {
            let s = w.sin().powi(2);
            (1.0 + s / r2, -2.0 * s / (r2 * r), 6.0 * s / (r2 * r2))
        };

        let j = integrate(|w| a(w).0.powf(-1.5), 0.0, top, tol, node, r)?;
        let j1 = integrate(|w| { let (a, ar, _) = a(w); -1.5 * a.powf(-2.5) * ar }, 0.0, top, tol, node, r)?;
        let j2 = integrate(
            |w| {
                let (a, ar, arr) = a(w);
                3.75 * a.powf(-3.5) * ar * ar - 1.5 * a.powf(-2.5) * arr
            },
            0.0,
            top,
            tol,
            node,
            r,
        )?;

        let m = j / r;
        let m1 = j1 / r - j / r2;
        let m2 = j2 / r - 2.0 * j1 / r2 + 2.0 * j / (r2 * r);
        let (d1, d2) = (-cut.lt1_r, -cut.lt1_rr);
        let h = gt1 * m;
        let h1 = d1 * m + gt1 * m1;
        let h2 = d2 * m + 2.0 * d1 * m1 + gt1 * m2;

        // L terms vanish on the plateau φ = N₁π.
        let (mut l, mut l1, mut l2, mut lm) = (0.0, 0.0, 0.0, 0.0);
        if cut.phi < top {
            let lo = cut.phi;
            l = integrate(|w| a(w).0.sqrt(), lo, top, tol, node, r)?;
            lm = integrate(|w| a(w).0.powf(-1.5), lo, top, tol, node, r)?;
            let f_r = |w: f64| {
                let (a, ar, _) = a(w);
                0.5 * ar / a.sqrt()
            };
            let int_fr = integrate(f_r, lo, top, tol, node, r)?;
            let int_frr = integrate(
                |w| {
                    let (a, ar, arr) = a(w);
                    -0.25 * a.powf(-1.5) * ar * ar + 0.5 * arr / a.sqrt()
                },
                lo,
                top,
                tol,
                node,
                r,
            )?;
            let (a0, _, _) = a(lo);
            let f0 = a0.sqrt();
            let fr0 = f_r(lo);
            let fw0 = 0.5 * (2.0 * lo).sin() / (r2 * f0);
            l1 = -f0 * cut.phi_r + int_fr;
            l2 = -(fr0 + fw0 * cut.phi_r) * cut.phi_r - f0 * cut.phi_rr - fr0 * cut.phi_r + int_frr;
        }

        let g = h - l / r;
        let g_r = h1 - (l1 / r - l / r2);
        let g_rr = h2 - (l2 / r - 2.0 * l1 / r2 + 2.0 * l / (r2 * r));
        let k = lm / r - h - (h2 + 3.0 * h1 / r);
        Ok(Self { g, g_r, g_rr, k })
    }
}

/// A tabulated function with its first two radial derivatives.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Tabulated {
    pub value: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

impl Tabulated {
    fn with_len(n: usize) -> Self {
        Self { value: vec![0.0; n], d1: vec![0.0; n], d2: vec![0.0; n] }
    }
}

/// The cutoff family tabulated on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffProfile {
    pub n1: u32,
    pub phi_cut: Tabulated,
    pub phi_lt1: Tabulated,
    pub phi_gt1: Tabulated,
    /// `r³ G(r)`, supported in `r ≥ ½`.
    pub phi_ge_half: Tabulated,
    /// `G` and `G'`.
    pub static_term: Vec<f64>,
    pub static_term_r: Vec<f64>,
    /// `K`, the static source of the auxiliary wave equation.
    pub static_source: Vec<f64>,
    /// `Δ₂φ`.
    pub laplacian2_phi: Vec<f64>,
}

impl CutoffProfile {
    pub fn new(n1: u32, grid: &RadialGrid, tol: &Tolerances) -> Result<Self> {
        let n = grid.n_cells();
        let radii = grid.radii();
        let mut phi_cut = Tabulated::with_len(n);
        let mut phi_lt1 = Tabulated::with_len(n);
        let mut phi_gt1 = Tabulated::with_len(n);
        let mut laplacian2_phi = vec![0.0; n];
        for (j, &r) in radii.iter().enumerate() {
            let c = CutoffPoint::at(r, n1);
            phi_cut.value[j] = c.phi;
            phi_cut.d1[j] = c.phi_r;
            phi_cut.d2[j] = c.phi_rr;
            phi_lt1.value[j] = c.lt1;
            phi_lt1.d1[j] = c.lt1_r;
            phi_lt1.d2[j] = c.lt1_rr;
            phi_gt1.value[j] = c.gt1();
            phi_gt1.d1[j] = -c.lt1_r;
            phi_gt1.d2[j] = -c.lt1_rr;
            laplacian2_phi[j] = c.laplacian2_phi(r);
        }

        let statics: Vec<StaticPoint> = radii
            .par_iter()
            .enumerate()
            .map(|(j, &r)| StaticPoint::at(r, n1, tol, j))
            .collect::<Result<_>>()?;

        let mut phi_ge_half = Tabulated::with_len(n);
        for (j, (s, &r)) in statics.iter().zip(radii).enumerate() {
            let r2 = r * r;
            phi_ge_half.value[j] = r2 * r * s.g;
            phi_ge_half.d1[j] = 3.0 * r2 * s.g + r2 * r * s.g_r;
            phi_ge_half.d2[j] = 6.0 * r * s.g + 6.0 * r2 * s.g_r + r2 * r * s.g_rr;
        }
        Ok(Self {
            n1,
            phi_cut,
            phi_lt1,
            phi_gt1,
            phi_ge_half,
            static_term: statics.iter().map(|s| s.g).collect(),
            static_term_r: statics.iter().map(|s| s.g_r).collect(),
            static_source: statics.iter().map(|s| s.k).collect(),
            laplacian2_phi,
        })
    }

    pub fn len(&self) -> usize {
        self.phi_cut.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn axis_value(&self) -> f64 {
        self.n1 as f64 * std::f64::consts::PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bridge_plateaus_and_midpoint() {
        assert_eq!(bridge(-0.3), (0.0, 0.0, 0.0));
        assert_eq!(bridge(1.2), (1.0, 0.0, 0.0));
        let (b, b1, b2) = bridge(0.5);
        assert!((b - 0.5).abs() < 1e-15);
        assert!(b1 > 0.0);
        assert!(b2.abs() < 1e-12);
    }

    #[test]
    fn bridge_derivatives_match_finite_differences() {
        let h = 1e-5;
        for x in [0.1, 0.27, 0.5, 0.73, 0.9] {
            let (_, b1, b2) = bridge(x);
            let fd1 = (bridge(x + h).0 - bridge(x - h).0) / (2.0 * h);
            let fd2 = (bridge(x + h).1 - bridge(x - h).1) / (2.0 * h);
            assert!((b1 - fd1).abs() < 1e-8 * b1.abs().max(1.0));
            assert!((b2 - fd2).abs() < 1e-7 * b2.abs().max(1.0));
        }
    }

    #[test]
    fn static_terms_vanish_inside_half() {
        let tol = Tolerances::default();
        assert_eq!(StaticPoint::at(0.3, 2, &tol, 0).unwrap(), StaticPoint::default());
        assert_eq!(StaticPoint::at(5.0, 0, &tol, 0).unwrap(), StaticPoint::default());
    }

    #[test]
    fn static_derivatives_match_finite_differences() {
        let tol = Tolerances::default();
        let h = 1e-5;
        for r in [0.7, 1.3, 1.8, 2.5, 6.0] {
            let s = StaticPoint::at(r, 1, &tol, 0).unwrap();
            let p = StaticPoint::at(r + h, 1, &tol, 0).unwrap();
            let m = StaticPoint::at(r - h, 1, &tol, 0).unwrap();
            assert!((s.g_r - (p.g - m.g) / (2.0 * h)).abs() < 1e-7, "r = {r}");
            assert!((s.g_rr - (p.g_r - m.g_r) / (2.0 * h)).abs() < 1e-6, "r = {r}");
        }
    }

    #[test]
    fn static_term_decays_like_inverse_cube() {
        let tol = Tolerances::default();
        let a = StaticPoint::at(8.0, 1, &tol, 0).unwrap().g * 512.0;
        let b = StaticPoint::at(16.0, 1, &tol, 0).unwrap().g * 4096.0;
        assert!(a.abs() > 0.1 && ((a - b) / b).abs() < 0.05, "{a} {b}");
        // far field: (1/r)∫(A^{−3/2} − A^{1/2}) ≈ −2∫sin²w dw / r³ = −π / r³
        assert!((b + PI).abs() < 0.05);
    }

    #[test]
    fn profile_plateaus_hold_exactly() {
        let grid = RadialGrid::new(8.0, 256).unwrap();
        let cut = CutoffProfile::new(2, &grid, &Tolerances::default()).unwrap();
        for (j, &r) in grid.radii().iter().enumerate() {
            if r <= 1.0 {
                assert_eq!(cut.phi_cut.value[j], 2.0 * PI);
            }
            if r >= 2.0 {
                assert_eq!(cut.phi_cut.value[j], 0.0);
            }
            if r <= 0.5 {
                assert_eq!(cut.phi_lt1.value[j], 1.0);
                assert_eq!(cut.phi_ge_half.value[j], 0.0);
            }
            if r >= 1.0 {
                assert_eq!(cut.phi_lt1.value[j], 0.0);
            }
            assert_eq!(cut.phi_lt1.value[j] + cut.phi_gt1.value[j], 1.0);
        }
        assert!(cut.phi_cut.value.windows(2).all(|w| w[1] <= w[0]));
        assert!(cut.phi_lt1.value.windows(2).all(|w| w[1] <= w[0]));
    }
}
