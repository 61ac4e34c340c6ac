//! Executable radial Sobolev and Hardy inequality suites in four dimensions.
//!
//! Each sample is an analytic even profile. Pointwise suprema are taken on
//! the closed form (dense scan plus golden-section refinement) and norms
//! through the grid, so dilation identities hold to quadrature accuracy
//! rather than to sampling accuracy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::hankel::hankel_forward;
use super::norms::{spectral_norm, NormSpec};
use crate::cutoff::bridge;
use crate::error::Result;
use crate::grid::{radial_integral, Dimension, RadialGrid};

pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct RadialSample {
    pub label: String,
    pub f: Profile,
}

impl std::fmt::Debug for RadialSample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialSample").field("label", &self.label).finish()
    }
}

impl RadialSample {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { label: label.into(), f: Arc::new(f) }
    }

    /// `f_λ(r) = f(λ r)`.
    pub fn dilate(&self, lambda: f64) -> Self {
        let f = self.f.clone();
        Self { label: format!("{}@{lambda}", self.label), f: Arc::new(move |r| f(lambda * r)) }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.f)(r)
    }
}

/// Gaussians `e^{−a r²}` over a spread of widths.
pub fn gaussian_family() -> Vec<RadialSample> {
    [0.25, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&a| RadialSample::new(format!("gauss a={a}"), move |r| (-a * r * r).exp()))
        .collect()
}

/// Profiles equal to 1 near the origin, cut off smoothly on `[2, 4]`.
pub fn plateau_family() -> Vec<RadialSample> {
    [(1.0, 2.0), (2.0, 2.0), (1.5, 3.0)]
        .iter()
        .map(|&(start, width)| {
            RadialSample::new(format!("plateau {start}+{width}"), move |r| bridge((start + width - r) / width).0)
        })
        .collect()
}

/// Seeded random mixtures of Gaussians, rings and weighted Gaussians.
pub fn random_bump_family(seed: u64, count: usize) -> Vec<RadialSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let terms: Vec<(u8, f64, f64, f64)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    (
                        rng.gen_range(0..3u8),
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(0.3..3.0),
                        rng.gen_range(0.5..3.0),
                    )
                })
                .collect();
            RadialSample::new(format!("bump {seed}/{i}"), move |r| {
                let s = r * r;
                terms
                    .iter()
                    .map(|&(kind, c, a, b)| match kind {
                        0 => c * (-a * s).exp(),
                        1 => c * (-a * (s - b * b).powi(2) / (b * b)).exp(),
                        _ => c * s * (-a * s).exp(),
                    })
                    .sum()
            })
        })
        .collect()
}

/// `sup_{0 < r ≤ r_max} r^p |f(r)|`.
pub fn weighted_sup(sample: &RadialSample, p: f64, r_max: f64) -> f64 {
    let g = |r: f64| r.powf(p) * sample.eval(r).abs();
    let n = 20_000;
    let h = r_max / n as f64;
    let (mut best, mut arg) = (0.0, 0.0);
    for i in 1..=n {
        let r = i as f64 * h;
        let v = g(r);
        if v > best {
            best = v;
            arg = r;
        }
    }
    // golden-section refinement on the bracket around the best node
    let (mut a, mut b) = ((arg - h).max(0.0), (arg + h).min(r_max));
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - phi * (b - a), a + phi * (b - a));
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..80 {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d);
        }
    }
    best.max(gc).max(gd)
}

/// Ratios for one inequality over a family, with the fitted constant on the
/// base part and on the whole enriched family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioFamily {
    pub name: String,
    pub labels: Vec<String>,
    pub ratios: Vec<f64>,
    pub base_constant: f64,
    pub fitted_constant: f64,
}

impl RatioFamily {
    fn new(name: &str, labels: Vec<String>, ratios: Vec<f64>, base_len: usize) -> Self {
        let max = |xs: &[f64]| xs.iter().fold(0.0f64, |m, x| m.max(*x));
        Self {
            name: name.to_string(),
            base_constant: max(&ratios[..base_len]),
            fitted_constant: max(&ratios),
            labels,
            ratios,
        }
    }

    /// Enrichment moved the constant by at most a factor 2.
    pub fn stable(&self) -> bool {
        self.ratios.iter().all(|r| r.is_finite()) && self.fitted_constant <= 2.0 * self.base_constant
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolevSuiteReport {
    /// `sup r |f| / ‖f‖_{Ḣ¹}`.
    pub sigma_one: RatioFamily,
    /// `sup r^{1/2} |f| / ‖f‖_{Ḣ^{3/2}}`.
    pub sigma_three_halves: RatioFamily,
    /// `sup r^{3/2} |f| / ‖f‖_{H¹}`.
    pub weighted_h1: RatioFamily,
    /// Largest relative change of a homogeneous ratio under dilation.
    pub dilation_defect: f64,
}

impl SobolevSuiteReport {
    pub fn passed(&self, dilation_tol: f64) -> bool {
        self.sigma_one.stable()
            && self.sigma_three_halves.stable()
            && self.weighted_h1.stable()
            && self.dilation_defect <= dilation_tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardySuiteReport {
    /// `‖g/r‖_{L²(ℝ⁴)} / ‖∇g‖_{L²(ℝ⁴)}`.
    pub ratios: RatioFamily,
    pub dilation_defect: f64,
}

impl HardySuiteReport {
    /// Stable fit, sharp constant 1 respected, dilation identity held.
    pub fn passed(&self, dilation_tol: f64) -> bool {
        self.ratios.stable() && self.ratios.fitted_constant <= 1.0 + 1e-3 && self.dilation_defect <= dilation_tol
    }
}

const DILATIONS: [f64; 2] = [0.5, 2.0];

struct SobolevRatios {
    one: f64,
    three_halves: f64,
    weighted: f64,
}

fn sobolev_ratios(s: &RadialSample, grid: &RadialGrid) -> Result<SobolevRatios> {
    let f = grid.sample(|r| s.eval(r));
    let spec = hankel_forward(&f, grid, Dimension::Four)?;
    let h1 = spectral_norm(&spec, &NormSpec::homogeneous(1.0, Dimension::Four))?;
    let h32 = spectral_norm(&spec, &NormSpec::homogeneous(1.5, Dimension::Four))?;
    let full = spectral_norm(&spec, &NormSpec::inhomogeneous(1.0, Dimension::Four))?;
    let rm = grid.r_max();
    Ok(SobolevRatios {
        one: weighted_sup(s, 1.0, rm) / h1,
        three_halves: weighted_sup(s, 0.5, rm) / h32,
        weighted: weighted_sup(s, 1.5, rm) / full,
    })
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Radial Sobolev ratios in ℝ⁴ over `base` followed by `enrichment`.
pub fn inequality_suite_radial_sobolev(
    base: &[RadialSample],
    enrichment: &[RadialSample],
    grid: &RadialGrid,
) -> Result<SobolevSuiteReport> {
    let all: Vec<&RadialSample> = base.iter().chain(enrichment).collect();
    let mut one = Vec::new();
    let mut th = Vec::new();
    let mut w = Vec::new();
    let mut defect = 0.0f64;
    for (i, s) in all.iter().enumerate() {
        let r = sobolev_ratios(s, grid)?;
        if i < base.len() {
            for lambda in DILATIONS {
                let d = sobolev_ratios(&s.dilate(lambda), grid)?;
                defect = defect.max(relative(d.one, r.one)).max(relative(d.three_halves, r.three_halves));
            }
        }
        one.push(r.one);
        th.push(r.three_halves);
        w.push(r.weighted);
    }
    let labels: Vec<String> = all.iter().map(|s| s.label.clone()).collect();
    Ok(SobolevSuiteReport {
        sigma_one: RatioFamily::new("sup r|f| / |f|_H1", labels.clone(), one, base.len()),
        sigma_three_halves: RatioFamily::new("sup r^1/2|f| / |f|_H3/2", labels.clone(), th, base.len()),
        weighted_h1: RatioFamily::new("sup r^3/2|f| / |f|_H1(inhom)", labels, w, base.len()),
        dilation_defect: defect,
    })
}

fn hardy_ratio(s: &RadialSample, grid: &RadialGrid) -> Result<f64> {
    let f = grid.sample(|r| s.eval(r));
    let spec = hankel_forward(&f, grid, Dimension::Four)?;
    let grad = spectral_norm(&spec, &NormSpec::homogeneous(1.0, Dimension::Four))?;
    let q: Vec<f64> = f.iter().zip(grid.radii()).map(|(g, r)| (g / r).powi(2)).collect();
    let lhs = (Dimension::Four.sphere_area() * radial_integral(&q, grid, Dimension::Four)?).sqrt();
    Ok(lhs / grad)
}

/// Hardy ratios in ℝ⁴ over `base` followed by `enrichment`.
pub fn inequality_suite_hardy(
    base: &[RadialSample],
    enrichment: &[RadialSample],
    grid: &RadialGrid,
) -> Result<HardySuiteReport> {
    let all: Vec<&RadialSample> = base.iter().chain(enrichment).collect();
    let mut ratios = Vec::new();
    let mut defect = 0.0f64;
    for (i, s) in all.iter().enumerate() {
        let r = hardy_ratio(s, grid)?;
        if i < base.len() {
            for lambda in DILATIONS {
                defect = defect.max(relative(hardy_ratio(&s.dilate(lambda), grid)?, r));
            }
        }
        ratios.push(r);
    }
    let labels = all.iter().map(|s| s.label.clone()).collect();
    Ok(HardySuiteReport { ratios: RatioFamily::new("|g/r|_L2 / |grad g|_L2", labels, ratios, base.len()), dilation_defect: defect })
}
