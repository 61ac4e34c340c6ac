use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain too small: r_max = {0} must be at least 4")]
    DomainTooSmall(f64),

    #[error("grid too coarse: {0} cells, need at least 64")]
    GridTooCoarse(usize),

    #[error("array length {got} does not match grid size {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("quadrature did not converge at node {node} (r = {r}): error estimate {estimate:e}")]
    Quadrature { node: usize, r: f64, estimate: f64 },

    #[error("u − φ does not vanish at the axis (trace {trace}, expected {expected}); v would be singular")]
    SingularAxis { trace: f64, expected: f64 },

    #[error("topological charge ratio {raw} is not within 0.05 of an integer")]
    NonIntegralCharge { raw: f64 },

    #[error("evolution stopped early: {status}")]
    Diverged { status: String },
}

pub type Result<T> = std::result::Result<T, Error>;
