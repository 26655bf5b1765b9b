//! Classical special functions: associated Laguerre and Jacobi polynomials
//! by three-term recurrence, log-Gamma, and Gauss quadrature rules.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `L_k^{(a)}(z)`
pub fn laguerre_assoc(k: usize, a: f64, z: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut curr = a + 1.0 - z;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + a + 1.0 - z) * curr - (jf + a) * prev) / (jf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// `P_k^{(a,b)}(x)`
pub fn jacobi_poly(k: usize, a: f64, b: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut curr = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for j in 2..=k {
        let n = j as f64;
        let s = 2.0 * n + a + b;
        let c0 = 2.0 * n * (n + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
        let next = (c1 * curr - c2 * prev) / c0;
        prev = curr;
        curr = next;
    }
    curr
}

/// Bernoulli-number coefficients of the Stirling series for ln Γ.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Below this argument the recurrence shifts upward before applying the
/// asymptotic series.
const STIRLING_MIN: f64 = 15.0;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    let mut shift = 0.0;
    let mut z = x;
    let mut prod = 1.0;
    while z < STIRLING_MIN {
        prod *= z;
        z += 1.0;
        if prod > 1e280 {
            shift += prod.ln();
            prod = 1.0;
        }
    }
    shift += prod.ln();
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    Ok((z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureKind {
    /// `∫_{-1}^{1} f(x) dx`
    GaussLegendre,
    /// `∫_0^∞ f(r) dr` for integrands decaying like `exp(−scale·r)`;
    /// see [`QuadratureRule::integrate_half_line`].
    GaussLaguerreScaled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    /// For `GaussLaguerreScaled` these already include the `e^{t}` factor,
    /// so the rule integrates `f` itself rather than `f·e^{-t}`.
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Legendre rule mapped to `[lo, hi]`.
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.integrate(|x| f(mid + half * x))
    }

    /// Composite Legendre rule on `panels` equal panels of `[lo, hi]`, with
    /// the two end panels split geometrically toward the endpoints so that
    /// algebraic endpoint behaviour like `(x − lo)^a` stays accurate.
    pub fn integrate_graded<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, panels: usize, f: F) -> f64 {
        const RATIO: f64 = 0.15;
        const LEVELS: i32 = 24;
        let panels = panels.max(2);
        let width = (hi - lo) / panels as f64;
        let mut total = 0.0;
        for i in 1..panels - 1 {
            let a = lo + i as f64 * width;
            total += self.integrate_on(a, a + width, &f);
        }
        let mut inner = width;
        for _ in 0..LEVELS {
            let next = inner * RATIO;
            total += self.integrate_on(lo + next, lo + inner, &f);
            total += self.integrate_on(hi - inner, hi - next, &f);
            inner = next;
        }
        total + self.integrate_on(lo, lo + inner, &f) + self.integrate_on(hi - inner, hi, &f)
    }

    /// Laguerre rule for `∫_0^∞ f(r) dr` with the decay rate `scale`.
    pub fn integrate_half_line<F: Fn(f64) -> f64>(&self, scale: f64, f: F) -> f64 {
        self.integrate(|t| f(t / scale)) / scale
    }
}

const MAX_NEWTON: usize = 100;

pub fn quadrature(kind: QuadratureKind, order: usize) -> Result<QuadratureRule> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!("quadrature order {order} < 2")));
    }
    let (nodes, weights) = match kind {
        QuadratureKind::GaussLegendre => gauss_legendre(order)?,
        QuadratureKind::GaussLaguerreScaled => gauss_laguerre(order)?,
    };
    Ok(QuadratureRule { kind, nodes, weights, order })
}

/// `(P_n(x), P_n'(x))`
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { iterations: MAX_NEWTON, residual: f64::NAN, energy: x });
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// `(L_n(x), L_{n-1}(x))`
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = 1.0 - x;
    if n == 0 {
        return (p0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn gauss_laguerre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let nf = n as f64;
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Stroud-Secrest initial guesses
        let mut x = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => nodes[0] + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let fi = (i - 1) as f64;
                let r1 = (1.0 + 2.55 * fi) / (1.9 * fi);
                nodes[i - 1] + r1 * (nodes[i - 1] - nodes[i - 2])
            }
        };
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, pm1) = laguerre_pair(n, x);
            let dp = nf * (p - pm1) / x;
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-14 * x.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged || !x.is_finite() {
            return Err(Error::NoConvergence { iterations: MAX_NEWTON, residual: f64::NAN, energy: x });
        }
        let (_, pm1) = laguerre_pair(n, x);
        // w = x / (n² L_{n-1}(x)²), times e^{x} so the rule integrates f directly
        let log_w = x.ln() - 2.0 * (nf * pm1.abs()).ln() + x;
        nodes.push(x);
        weights.push(log_w.exp());
    }
    Ok((nodes, weights))
}
