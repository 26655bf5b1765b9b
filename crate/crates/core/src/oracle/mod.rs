//! Finite-difference Sturm-Liouville oracle.
//!
//! Solves the separated radial and polar equations directly on grids, with
//! Richardson extrapolation over successive halvings. Nothing here uses the
//! closed-form spectrum or the orthogonal polynomials of the solution.

mod tridiag;

pub use tridiag::SymTridiagonal;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::PotentialParams;

/// Discretization controls for the oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Interior points of the coarsest radial grid, or cells of the
    /// coarsest angular grid.
    pub points: usize,
    /// Radial cutoff; `None` derives it from the Coulomb length scale.
    pub r_max: Option<f64>,
    /// Number of grid halvings beyond the coarsest grid.
    pub refinement: u32,
    /// Target accuracy. Extrapolated values whose error estimate exceeds
    /// ten times this are rejected as [`Error::GridTooCoarse`].
    pub tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { points: 4000, r_max: None, refinement: 2, tol: 1e-5 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 100 {
            return Err(Error::InvalidParameter(format!("grid needs ≥ 100 points, got {}", self.points)));
        }
        if let Some(r_max) = self.r_max {
            if !(r_max > 0.0) {
                return Err(Error::InvalidParameter(format!("r_max must be positive, got {r_max}")));
            }
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// An extrapolated oracle value with its error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub error_estimate: f64,
    /// Raw values, coarsest grid first.
    pub levels: Vec<f64>,
}

/// Romberg table over grids with step ratio 2 and an `h²` leading error.
fn richardson(levels: &[f64]) -> (f64, f64) {
    let mut row = levels.to_vec();
    let mut prev_best = row[row.len() - 1];
    let mut factor = 4.0;
    while row.len() > 1 {
        prev_best = row[row.len() - 1];
        row = row.windows(2).map(|w| w[1] + (w[1] - w[0]) / (factor - 1.0)).collect();
        factor *= 4.0;
    }
    (row[0], (row[0] - prev_best).abs())
}

fn extrapolate<F: Fn(usize) -> Result<f64>>(
    grid: &GridSpec,
    level_points: impl Fn(u32) -> usize,
    coarse_points: usize,
    solve: F,
    scale: f64,
) -> Result<Extrapolated> {
    let levels: Vec<f64> = (0..=grid.refinement).map(|k| solve(level_points(k))).collect::<Result<_>>()?;
    let (value, error_estimate) = if levels.len() == 1 {
        // single grid: estimate from one coarser solve
        let coarse = solve(coarse_points)?;
        (levels[0], (levels[0] - coarse).abs() / 3.0)
    } else {
        richardson(&levels)
    };
    let limit = 10.0 * grid.tol * scale;
    if !(error_estimate <= limit) {
        return Err(Error::GridTooCoarse { estimate: error_estimate / scale, limit: limit / scale });
    }
    Ok(Extrapolated { value, error_estimate, levels })
}

/// Panels used to bracket the energy before bisection.
const SCAN_PANELS: usize = 64;

/// Radial equation `−u'' + [λ/r² + c(ε+M)V_C(r)] u = (ε² − M²) u` with the
/// attractive Coulomb term `V_C = −|α|/r`, Dirichlet at `0` and `r_max`.
struct RadialGrid {
    lambda: f64,
    coulomb: f64,
    mass: f64,
    r_max: f64,
    points: usize,
}

impl RadialGrid {
    fn matrix(&self, eps: f64) -> SymTridiagonal {
        let h = self.r_max / (self.points + 1) as f64;
        let inv_h2 = 1.0 / (h * h);
        let strength = self.coulomb * (eps + self.mass);
        let diag = (1..=self.points)
            .map(|i| {
                let r = i as f64 * h;
                2.0 * inv_h2 + self.lambda / (r * r) - strength / r
            })
            .collect();
        SymTridiagonal::new(diag, vec![-inv_h2; self.points - 1])
    }

    /// Whether `μ_N(ε) > ε² − M²`, from a single Sturm count.
    fn above(&self, eps: f64, radial: usize) -> bool {
        let target = -(self.mass - eps) * (self.mass + eps);
        self.matrix(eps).sturm_count(target) <= radial
    }

    fn energy(&self, radial: usize) -> Result<f64> {
        if radial >= self.points {
            return Err(Error::NoBoundState);
        }
        let m = self.mass;
        let nodes: Vec<f64> = (0..=SCAN_PANELS).map(|j| -m + 2.0 * m * j as f64 / SCAN_PANELS as f64).collect();
        let signs: Vec<bool> = nodes.iter().map(|&e| self.above(e, radial)).collect();
        // highest-energy sign change
        let Some(j) = (0..SCAN_PANELS).rev().find(|&j| signs[j] != signs[j + 1]) else {
            return Err(Error::NoBoundState);
        };
        let (mut lo, mut hi) = (nodes[j], nodes[j + 1]);
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.above(mid, radial) == signs[j] {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        if root >= m {
            return Err(Error::NoBoundState);
        }
        Ok(root)
    }
}

/// Default radial cutoff `80 n'²/(2M|α|)` from the Coulomb length scale.
fn default_r_max(p: &PotentialParams, lambda: f64, radial: u32) -> f64 {
    let l = 0.5 * ((1.0 + 4.0 * lambda).sqrt() - 1.0);
    let principal = radial as f64 + l + 1.0;
    let coulomb = p.coupling.factor() as f64 * p.alpha.abs();
    80.0 * principal * principal / (2.0 * p.mass * coulomb)
}

/// Energy whose `N`-th radial eigenvalue matches `ε² − M²`.
pub fn radial_numeric_energy(p: &PotentialParams, lambda: f64, radial: u32, grid: &GridSpec) -> Result<f64> {
    radial_numeric_estimate(p, lambda, radial, grid).map(|e| e.value)
}

pub fn radial_numeric_estimate(p: &PotentialParams, lambda: f64, radial: u32, grid: &GridSpec) -> Result<Extrapolated> {
    grid.validate()?;
    if !(lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be ≥ 0, got {lambda}")));
    }
    let coulomb = p.coupling.factor() as f64 * p.alpha.abs();
    if coulomb == 0.0 {
        return Err(Error::NoBoundState);
    }
    let r_max = grid.r_max.unwrap_or_else(|| default_r_max(p, lambda, radial));
    let base = grid.points + 1;
    let solve = |points: usize| RadialGrid { lambda, coulomb, mass: p.mass, r_max, points }.energy(radial as usize);
    extrapolate(grid, |k| base * (1 << k) - 1, base / 2 - 1, solve, p.mass)
}

/// Polar equation in `θ`, on a cell-centred grid over `[0, π]`:
/// `−(sinθ Θ')' + (m² + β + γ cosθ)/sinθ · Θ = λ sinθ Θ`.
///
/// The Frobenius behaviour at the poles, `Θ ~ (1 − cosθ)^p (1 + cosθ)^q` with
/// `4p² = m² + β + γ` and `4q² = m² + β − γ`, is factored out as `Θ = f v`.
/// That leaves a smooth `v` solving
/// `−(sinθ f² v')' + sinθ f² V v = λ sinθ f² v` with the bounded potential
/// `V = (m² + β + γ cosθ)/sin²θ − (sinθ f')'/(sinθ f)`, so the scheme keeps
/// its `h²` error even when `p` or `q` is small. The end faces carry a zero
/// coefficient, so no boundary data is imposed.
fn angular_matrix(shifted: f64, gamma_eff: f64, cells: usize) -> SymTridiagonal {
    let p = 0.5 * (shifted + gamma_eff).max(0.0).sqrt();
    let q = 0.5 * (shifted - gamma_eff).max(0.0).sqrt();
    let h = PI / cells as f64;
    let inv_h2 = 1.0 / (h * h);
    // sinθ f², written with half angles to keep accuracy near the poles
    let weight = |theta: f64| {
        let (s, c) = (0.5 * theta).sin_cos();
        2.0 * s * c * (2.0 * s * s).powf(2.0 * p) * (2.0 * c * c).powf(2.0 * q)
    };
    let potential = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let (below, above) = (1.0 - c, 1.0 + c);
        let g = p * s / below - q * s / above;
        let dg = -p / below - q / above;
        (shifted + gamma_eff * c) / (s * s) - (dg + g * g + g * c / s)
    };
    let centre = |i: usize| (i as f64 + 0.5) * h;
    let face = |i: usize| weight(i as f64 * h);
    let w: Vec<f64> = (0..cells).map(|i| weight(centre(i))).collect();
    let diag = (0..cells).map(|i| (face(i) + face(i + 1)) * inv_h2 / w[i] + potential(centre(i))).collect();
    let off = (0..cells - 1).map(|i| -face(i + 1) * inv_h2 / (w[i] * w[i + 1]).sqrt()).collect();
    SymTridiagonal::new(diag, off)
}

/// `n`-th separation constant `λ` of the polar equation.
pub fn angular_numeric_lambda(beta_eff: f64, gamma_eff: f64, m: i32, n: u32, grid: &GridSpec) -> Result<f64> {
    angular_numeric_estimate(beta_eff, gamma_eff, m, n, grid).map(|e| e.value)
}

pub fn angular_numeric_estimate(
    beta_eff: f64,
    gamma_eff: f64,
    m: i32,
    n: u32,
    grid: &GridSpec,
) -> Result<Extrapolated> {
    grid.validate()?;
    let shifted = (m as f64).powi(2) + beta_eff;
    if !(shifted >= gamma_eff.abs()) {
        return Err(Error::ComplexU { shifted, gamma_abs: gamma_eff.abs() });
    }
    let solve = |cells: usize| {
        angular_matrix(shifted, gamma_eff, cells)
            .eigenvalue(n as usize)
            .ok_or_else(|| Error::InvalidParameter(format!("grid has fewer than {} cells", n + 1)))
    };
    extrapolate(grid, |k| grid.points << k, grid.points / 2, solve, 1.0)
}

/// Values of a function on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn sample<F: Fn(f64) -> f64>(start: f64, end: f64, points: usize, f: F) -> Self {
        let step = (end - start) / (points - 1) as f64;
        let values = (0..points).map(|i| f(start + i as f64 * step)).collect();
        SampledFunction { start, step, values }
    }

    pub fn abscissa(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }
}

/// Normalized residual of `f'' + p(x) f' + q(x) f = 0` with central
/// differences: `max |residual| · L² / max |f|`, where `coeff(x) = (p, q)`
/// and `L` is the problem's characteristic length.
pub fn ode_residual<F>(f: &SampledFunction, coeff: F, length_scale: f64) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let v = &f.values;
    if v.len() < 5 {
        return Err(Error::InvalidParameter(format!("need ≥ 5 samples, got {}", v.len())));
    }
    let scale = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let h = f.step;
    let worst = (1..v.len() - 1)
        .map(|i| {
            let (p, q) = coeff(f.abscissa(i));
            let d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
            let d1 = (v[i + 1] - v[i - 1]) / (2.0 * h);
            (d2 + p * d1 + q * v[i]).abs()
        })
        .fold(0.0f64, f64::max);
    Ok(worst * length_scale * length_scale / scale)
}
