//! Weighted suprema tracking the pointwise decay of the fields.

use serde::{Deserialize, Serialize};

use crate::cutoff::CutoffProfile;
use crate::error::Result;
use crate::fields::{PhiState, UState, VState};
use crate::grid::{radial_derivative, Parity, RadialGrid};
use crate::model::aux_kernel;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DecayMonitors {
    /// `sup |u − N₁π| / min{1, r^{1/2}}`.
    pub u_axis: f64,
    /// `sup (1 + r^{3/2}) |v|`.
    pub v_weighted: f64,
    /// `sup (1 + r^{3/2}) |Φ|`.
    pub phi_weighted: f64,
    /// `sup (1 + r³) |Ã(r, v) − 1|`.
    pub a_tilde_weighted: f64,
    /// `sup |sin u| / min{r^{1/2}, r^{−1/2}}`.
    pub sin_u: f64,
    /// `‖(1 + r)(|v| + |∇_{t,x} v|)‖_∞`.
    pub continuation: f64,
}

impl DecayMonitors {
    pub fn all_finite(&self) -> bool {
        [self.u_axis, self.v_weighted, self.phi_weighted, self.a_tilde_weighted, self.sin_u, self.continuation]
            .iter()
            .all(|x| x.is_finite())
    }

    pub fn max_with(&self, other: &Self) -> Self {
        Self {
            u_axis: self.u_axis.max(other.u_axis),
            v_weighted: self.v_weighted.max(other.v_weighted),
            phi_weighted: self.phi_weighted.max(other.phi_weighted),
            a_tilde_weighted: self.a_tilde_weighted.max(other.a_tilde_weighted),
            sin_u: self.sin_u.max(other.sin_u),
            continuation: self.continuation.max(other.continuation),
        }
    }
}

pub fn decay_monitors(
    u: &UState,
    v: &VState,
    phi: &PhiState,
    cut: &CutoffProfile,
    grid: &RadialGrid,
) -> Result<DecayMonitors> {
    grid.check_len(&u.u)?;
    grid.check_len(&v.v)?;
    grid.check_len(&phi.phi)?;
    let v_r = radial_derivative(&v.v, grid, Parity::Even)?;
    let axis = cut.axis_value();
    let mut m = DecayMonitors::default();
    for (j, &r) in grid.radii().iter().enumerate() {
        let sq = r.sqrt();
        let r32 = r * sq;
        let w = u.u[j] - axis;
        m.u_axis = m.u_axis.max(w.abs() / sq.min(1.0));
        m.v_weighted = m.v_weighted.max((1.0 + r32) * v.v[j].abs());
        m.phi_weighted = m.phi_weighted.max((1.0 + r32) * phi.phi[j].abs());
        let k = aux_kernel(r, v.v[j], &cut.point(j));
        m.a_tilde_weighted = m.a_tilde_weighted.max((1.0 + r * r * r) * (k.a_tilde - 1.0).abs());
        m.sin_u = m.sin_u.max(w.sin().abs() / sq.min(1.0 / sq));
        m.continuation = m.continuation.max((1.0 + r) * (v.v[j].abs() + v.v_t[j].hypot(v_r[j])));
    }
    Ok(m)
}
