//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; errors become JS exceptions.

use kg_nu::model::solve_bound_state;
use kg_nu::{BoundState, PotentialParams, QuantumNumbers, SolveOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn params(alpha: f64, beta: f64, gamma: f64, mass: f64) -> Result<PotentialParams, String> {
    PotentialParams::new(alpha, beta, gamma, mass).map_err(|e| e.to_string())
}

fn state(p: &PotentialParams, radial: u32, polar: u32, m: i32) -> Result<BoundState, String> {
    solve_bound_state(p, QuantumNumbers::new(radial, polar, m), SolveOptions::default()).map_err(|e| e.to_string())
}

/// Levels with `N + n + |m| <= shells - 1`, lowest energy first. Failed
/// tuples are listed with their error instead of an energy.
pub fn levels(alpha: f64, beta: f64, gamma: f64, mass: f64, shells: u32) -> Result<String, String> {
    let p = params(alpha, beta, gamma, mass)?;
    let top = shells.clamp(1, 8) as i32 - 1;
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for radial in 0..=top {
        for polar in 0..=top - radial {
            let span = top - radial - polar;
            for m in -span..=span {
                match state(&p, radial as u32, polar as u32, m) {
                    Ok(s) => ok.push(s),
                    Err(e) => failed.push(json!({"N": radial, "n": polar, "m": m, "error": e})),
                }
            }
        }
    }
    ok.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let levels: Vec<Value> = ok
        .iter()
        .map(|s| {
            json!({
                "N": s.qn.radial, "n": s.qn.polar, "m": s.qn.m,
                "l_eff": s.angular.l_eff, "energy": s.energy, "binding": s.binding(),
            })
        })
        .collect();
    Ok(json!({"levels": levels, "failed": failed}).to_string())
}

/// `r` and the radial probability density `R(r)²` on `samples` points.
#[allow(clippy::too_many_arguments)]
pub fn radial_density(
    alpha: f64,
    beta: f64,
    gamma: f64,
    mass: f64,
    radial: u32,
    polar: u32,
    m: i32,
    samples: usize,
) -> Result<String, String> {
    let s = state(&params(alpha, beta, gamma, mass)?, radial, polar, m)?;
    let samples = samples.max(2);
    let r_max = (4.0 * s.principal() + 20.0) / s.radial_scale;
    let r: Vec<f64> = (0..samples).map(|i| r_max * i as f64 / (samples - 1) as f64).collect();
    let density: Vec<f64> = r.iter().map(|&x| s.radial(x).powi(2)).collect();
    Ok(json!({"energy": s.energy, "l_eff": s.angular.l_eff, "r": r, "density": density}).to_string())
}

/// `θ` on `[0, π]` and `Θ(cosθ)²`, for a polar plot.
#[allow(clippy::too_many_arguments)]
pub fn polar_density(
    alpha: f64,
    beta: f64,
    gamma: f64,
    mass: f64,
    radial: u32,
    polar: u32,
    m: i32,
    samples: usize,
) -> Result<String, String> {
    let s = state(&params(alpha, beta, gamma, mass)?, radial, polar, m)?;
    let samples = samples.max(2);
    let theta: Vec<f64> = (0..samples).map(|i| std::f64::consts::PI * i as f64 / (samples - 1) as f64).collect();
    let density: Vec<f64> = theta.iter().map(|&t| s.angular(t.cos()).powi(2)).collect();
    Ok(json!({"l_eff": s.angular.l_eff, "theta": theta, "density": density}).to_string())
}

#[wasm_bindgen(js_name = levels)]
pub fn levels_js(alpha: f64, beta: f64, gamma: f64, mass: f64, shells: u32) -> Result<String, JsError> {
    levels(alpha, beta, gamma, mass, shells).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = radialDensity)]
#[allow(clippy::too_many_arguments)]
pub fn radial_density_js(
    alpha: f64,
    beta: f64,
    gamma: f64,
    mass: f64,
    radial: u32,
    polar: u32,
    m: i32,
    samples: usize,
) -> Result<String, JsError> {
    radial_density(alpha, beta, gamma, mass, radial, polar, m, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = polarDensity)]
#[allow(clippy::too_many_arguments)]
pub fn polar_density_js(
    alpha: f64,
    beta: f64,
    gamma: f64,
    mass: f64,
    radial: u32,
    polar: u32,
    m: i32,
    samples: usize,
) -> Result<String, JsError> {
    polar_density(alpha, beta, gamma, mass, radial, polar, m, samples).map_err(|e| JsError::new(&e))
}
