use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named tolerances shared by the monitors and validators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Allowed deviation of boundary traces from the prescribed values.
    pub boundary: f64,
    /// Allowed distance of the charge ratio from an integer.
    pub charge: f64,
    /// Absolute tolerance of the adaptive quadratures in `y`.
    pub quadrature: f64,
    /// Recursion cap for the adaptive quadratures.
    pub quadrature_depth: u32,
    /// Tail-to-peak ratio above which a field counts as not decayed.
    pub tail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { boundary: 1e-6, charge: 0.05, quadrature: 1e-11, quadrature_depth: 30, tail: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    /// Winding number N₁: u(t, 0) = N₁π.
    pub n1: u32,
    pub r_max: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_final: f64,
    /// Sobolev index of the data, s > 3.
    pub s_reg: f64,
    pub tolerances: Tolerances,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            n1: 1,
            r_max: 16.0,
            n_cells: 1024,
            cfl: 0.4,
            t_final: 1.0,
            s_reg: 3.1,
            tolerances: Tolerances::default(),
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::InvalidParameter { name: "cfl", reason: format!("{} not in (0, 1)", self.cfl) });
        }
        if !(self.t_final > 0.0) {
            return Err(Error::InvalidParameter { name: "t_final", reason: format!("{} must be positive", self.t_final) });
        }
        if !(self.s_reg > 3.0) {
            return Err(Error::InvalidParameter { name: "s_reg", reason: format!("{} must exceed 3", self.s_reg) });
        }
        if !(self.r_max.is_finite()) {
            return Err(Error::InvalidParameter { name: "r_max", reason: "not finite".into() });
        }
        Ok(())
    }

    /// Winding angle N₁π.
    pub fn axis_value(&self) -> f64 {
        self.n1 as f64 * std::f64::consts::PI
    }
}
