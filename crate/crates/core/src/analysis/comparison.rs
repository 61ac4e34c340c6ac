//! The comparison function `I(w) = ∫₀^w |sin z| dz` and the pointwise chain
//! it controls.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fields::UState;
use crate::grid::{radial_derivative, Parity, RadialGrid};
use crate::model::energy;

/// `I(w) = 2⌊w/π⌋ + 1 − cos(w mod π)` for `w ≥ 0`, extended as an odd function.
pub fn comparison_i(w: f64) -> f64 {
    use std::f64::consts::PI;
    if w < 0.0 {
        return -comparison_i(-w);
    }
    let k = (w / PI).floor();
    let rem = w - k * PI;
    2.0 * k + 1.0 - rem.cos()
}

/// Node values of the chain
/// `I(|u(r) − u(0)|) ≤ ∫₀^r |sin u||u_r| ds ≤ min{E, E^{1/2} r}`. With the
/// energy normalized as in [`energy`], Cauchy–Schwarz gives constant 1 in
/// both branches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainProfile {
    pub lhs: Vec<f64>,
    pub middle: Vec<f64>,
    pub energy: f64,
}

impl ChainProfile {
    /// `sup_r lhs / min{E, E^{1/2} r}`: the constant the chain needs.
    pub fn fitted_constant(&self, radii: &[f64]) -> f64 {
        let e = self.energy;
        self.lhs
            .iter()
            .zip(radii)
            .map(|(l, &r)| {
                let bound = e.min(e.sqrt() * r);
                if bound > 0.0 {
                    l / bound
                } else if *l == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }

    /// Largest violation of `lhs ≤ middle` (non-positive when it holds).
    pub fn first_step_excess(&self) -> f64 {
        self.lhs.iter().zip(&self.middle).map(|(a, b)| a - b).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Evaluates the chain at every node. The running integral is fourth order:
/// cubic interpolation through four nodes on each cell, with the even
/// reflection of the integrand supplying values across the axis.
pub fn comparison_chain(u: &UState, grid: &RadialGrid) -> Result<ChainProfile> {
    let axis = u.n1 as f64 * std::f64::consts::PI;
    let w: Vec<f64> = u.u.iter().map(|x| x - axis).collect();
    let w_r = radial_derivative(&w, grid, Parity::Odd)?;
    let g: Vec<f64> = w.iter().zip(&w_r).map(|(a, b)| a.sin().abs() * b.abs()).collect();
    let mut ext = Vec::new();
    grid.fill_extended(&g, Parity::Even, &mut ext);
    let o = grid.n_ghost();
    let h = grid.dr();
    let trace = grid.axis_extrapolation(&u.u);
    let mut middle = Vec::with_capacity(g.len());
    let mut running = h * (13.0 * g[0] - g[1]) / 24.0;
    middle.push(running);
    for j in 1..g.len() {
        let e = j + o;
        running += h * (-ext[e - 2] + 13.0 * ext[e - 1] + 13.0 * ext[e] - ext[e + 1]) / 24.0;
        middle.push(running);
    }
    let lhs = u.u.iter().map(|x| comparison_i((x - trace).abs())).collect();
    Ok(ChainProfile { lhs, middle, energy: energy(u, grid)?.total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_values() {
        assert_eq!(comparison_i(PI), 2.0);
        assert_eq!(comparison_i(0.0), 0.0);
        assert!((comparison_i(PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((comparison_i(2.5 * PI) - 5.0).abs() < 1e-14);
    }

    #[test]
    fn running_integral_is_fourth_order() {
        // u = π e^{−r²} is monotone, so the first step holds with equality
        let err = |n: usize| {
            let grid = RadialGrid::new(8.0, n).unwrap();
            let u = UState { u: grid.sample(|r| PI * (-r * r).exp()), u_t: vec![0.0; n], t: 0.0, n1: 1 };
            let c = comparison_chain(&u, &grid).unwrap();
            c.lhs.iter().zip(&c.middle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        let (a, b) = (err(256), err(512));
        assert!(b < 1e-6 && a / b > 12.0, "{a} {b}");
    }

    #[test]
    fn oddness_and_monotonicity() {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..10_000 {
            let w = -10.0 * PI + 20.0 * PI * i as f64 / 9_999.0;
            let v = comparison_i(w);
            assert_eq!(v, -comparison_i(-w));
            assert!(v > prev);
            prev = v;
        }
    }
}
