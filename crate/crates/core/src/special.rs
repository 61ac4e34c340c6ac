//! Cancellation-free kernels for the removable singularities at the axis.
//!
//! With `x = r v` the axis terms of the model contain quotients such as
//! `(x cos x − sin x)/x³`; each is evaluated by its Maclaurin series below
//! [`SERIES_CUTOFF`] and by the closed form above it.

/// Below this |x| the Maclaurin forms are used. At the cutoff the closed
/// forms lose fewer than two digits to cancellation and the series
/// truncation error is far below machine precision.
pub const SERIES_CUTOFF: f64 = 0.5;

const SERIES_TERMS: usize = 12;

/// `sin x / x`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// `(x cos x − sin x) / x³`, tending to `−1/3`.
pub fn cubic_defect(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        // Σ_{k≥1} (−1)^k 2k x^{2k−2} / (2k+1)!
        let x2 = x * x;
        let mut term_pow = 1.0;
        let mut fact = 6.0; // (2k+1)! at k = 1
        let mut sum = 0.0;
        for k in 1..=SERIES_TERMS {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (2 * k) as f64 * term_pow / fact;
            term_pow *= x2;
            fact *= ((2 * k + 2) * (2 * k + 3)) as f64;
        }
        sum
    } else {
        (x * x.cos() - x.sin()) / (x * x * x)
    }
}

/// `(2x − sin 2x) / (2x³)`, tending to `2/3`.
pub fn double_angle_defect(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        // −Σ_{k≥1} (−1)^k 4^k x^{2k−2} / (2k+1)!
        let x2 = x * x;
        let mut pow = 4.0;
        let mut fact = 6.0;
        let mut sum = 0.0;
        for k in 1..=SERIES_TERMS {
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            sum += sign * pow / fact;
            pow *= 4.0 * x2;
            fact *= ((2 * k + 2) * (2 * k + 3)) as f64;
        }
        sum
    } else {
        (2.0 * x - (2.0 * x).sin()) / (2.0 * x * x * x)
    }
}
