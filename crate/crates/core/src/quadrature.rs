//! Quadrature building blocks: compensated summation, finite-difference
//! weights on arbitrary nodes, endpoint-corrected midpoint rules for the
//! cell-centred half line, and adaptive Gauss–Legendre integration.

use std::sync::OnceLock;

/// Neumaier-compensated sum. Order of accumulation is the iteration order,
/// so results are reproducible bit for bit.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Fornberg's algorithm: weights `c[i][k]` such that
/// `f^{(k)}(z) ≈ Σ_i c[i][k] f(x[i])` for `k = 0..=max_order`.
pub fn fornberg_weights(z: f64, x: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; max_order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c
}

// B_{2k}(1/2) for k = 1..4.
const BERNOULLI_HALF: [f64; 4] = [-1.0 / 12.0, 7.0 / 240.0, -31.0 / 1344.0, 127.0 / 3840.0];

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Nodes fitted at the origin when correcting for the odd-parity kink.
pub const ORIGIN_FIT_NODES: usize = 4;
const OUTER_FIT_NODES: usize = 7;

/// Weights for `∫₀^{n h} g(r) dr` from samples `g((j+½)h)`, where `g`
/// extends to an odd smooth function about `r = 0` (every radial measure
/// `f r^{d-1}` with even `f` and even `d`). Euler–Maclaurin corrections use
/// odd derivatives at the origin from the parity extension and one-sided
/// derivatives at the outer edge.
pub fn odd_corrected_midpoint_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 2 * OUTER_FIT_NODES, "need at least {} nodes", 2 * OUTER_FIT_NODES);
    let mut w = vec![h; n];

    let k_fit = ORIGIN_FIT_NODES;
    let mut nodes = Vec::with_capacity(2 * k_fit);
    for j in (0..k_fit).rev() {
        nodes.push(-(j as f64 + 0.5));
    }
    for j in 0..k_fit {
        nodes.push(j as f64 + 0.5);
    }
    let c = fornberg_weights(0.0, &nodes, 2 * k_fit - 1);
    for (k, b) in BERNOULLI_HALF.iter().enumerate().take(k_fit) {
        let order = 2 * k + 1;
        let scale = b / factorial(2 * k + 2);
        for j in 0..k_fit {
            // g(-s_j) = -g(s_j)
            let dj = c[k_fit + j][order] - c[k_fit - 1 - j][order];
            w[j] += h * scale * dj;
        }
    }

    let p = OUTER_FIT_NODES;
    let x: Vec<f64> = (n - p..n).map(|j| j as f64 + 0.5).collect();
    let c = fornberg_weights(n as f64, &x, p - 1);
    for (k, b) in BERNOULLI_HALF.iter().enumerate().take(3) {
        let order = 2 * k + 1;
        let scale = b / factorial(2 * k + 2);
        for i in 0..p {
            w[n - p + i] -= h * scale * c[i][order];
        }
    }
    w
}

/// Result of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

const GL_ORDER: usize = 10;

fn gauss_legendre_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_nodes(GL_ORDER))
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (x, w) = gauss_legendre_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    for (xi, wi) in x.iter().zip(w) {
        s += wi * f(mid + half * xi);
    }
    s * half
}

/// Adaptive bisection on a 10-point Gauss–Legendre panel. `tol` is an
/// absolute tolerance on the whole interval; recursion stops at `max_depth`.
pub fn adaptive_gauss_legendre<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Integral {
    if a == b {
        return Integral { value: 0.0, error_estimate: 0.0, converged: true };
    }
    let whole = gl_panel(&f, a, b);
    let mut out = Integral { value: 0.0, error_estimate: 0.0, converged: true };
    refine(&f, a, b, whole, tol, max_depth, &mut out);
    out
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth_left: u32,
    out: &mut Integral,
) {
    let m = 0.5 * (a + b);
    let left = gl_panel(f, a, m);
    let right = gl_panel(f, m, b);
    let diff = (left + right - whole).abs();
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if diff <= tol.max(floor) {
        out.value += left + right;
        out.error_estimate += diff;
        return;
    }
    if depth_left == 0 {
        out.value += left + right;
        out.error_estimate += diff;
        out.converged = false;
        return;
    }
    refine(f, a, m, left, 0.5 * tol, depth_left - 1, out);
    refine(f, m, b, right, 0.5 * tol, depth_left - 1, out);
}
