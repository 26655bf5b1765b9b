//! Command implementations behind the `kgnu` binary.
//!
//! [`run`] parses arguments and returns everything the process would print
//! together with its exit code: 0 when every record succeeded, 1 for usage
//! errors, 2 for computational failures.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod nu_report;
pub mod records;

use std::fmt::Write as _;

use clap::Parser;
use kg_nu::diagnostics::verify_state;
use kg_nu::model::solve_bound_state;
use kg_nu::{GridSpec, QuantumNumbers};
use rayon::prelude::*;

use args::{Cli, Command, Format, NuArgs, NuFormat, RangeArgs, SpectrumArgs, VerifyArgs, WavefunctionArgs};
use records::{
    error_text, to_csv, to_json, SpectrumRecord, VerifyRecord, Wavefunction, WavefunctionMeta, WavefunctionSample,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { stdout: String::new(), stderr, code: EXIT_USAGE }
    }

    fn failure(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_FAILURE, ..Outcome::usage(message) }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome { stdout: text, ..Outcome::default() } };
        }
    };
    match cli.command {
        Command::Spectrum(a) => spectrum(&a),
        Command::Wavefunction(a) => wavefunction(&a),
        Command::Verify(a) => verify(&a),
        Command::Nu(a) => nu(&a),
    }
}

/// Worker pool sized by `KG_THREADS`, or the machine's parallelism when unset.
fn pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("KG_THREADS") {
        match value.trim().parse::<usize>() {
            Ok(n) if n > 0 => builder = builder.num_threads(n),
            _ => return Err(format!("KG_THREADS must be a positive integer, got {value:?}")),
        }
    }
    builder.build().map_err(|e| e.to_string())
}

/// Tuples in `(N, n, m)` lexicographic order.
pub fn tuples(range: &RangeArgs) -> Vec<QuantumNumbers> {
    let m_max = range.m_max as i32;
    let mut out = Vec::new();
    for radial in 0..=range.radial_max {
        for polar in 0..=range.polar_max {
            for m in -m_max..=m_max {
                out.push(QuantumNumbers::new(radial, polar, m));
            }
        }
    }
    out
}

/// Evaluates `f` over `items` on the pool; results keep the input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>, String> {
    Ok(pool()?.install(|| items.par_iter().map(f).collect()))
}

fn check_solver(tol: f64, max_iter: usize) -> Result<(), String> {
    if !(tol > 0.0) {
        return Err(format!("--tol must be positive, got {tol}"));
    }
    if max_iter == 0 {
        return Err("--max-iter must be positive".into());
    }
    Ok(())
}

fn spectrum(a: &SpectrumArgs) -> Outcome {
    let params = match a.potential.params() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    if let Err(e) = check_solver(a.solver.tol, a.solver.max_iter) {
        return Outcome::usage(e);
    }
    let opts = a.solver.options();
    let qns = tuples(&a.range);
    let records = match par_map(&qns, |&qn| SpectrumRecord::new(qn, &solve_bound_state(&params, qn, opts))) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let stdout = match a.format {
        Format::Json => to_json(&records),
        Format::Csv => to_csv(&records),
    };
    let failed = records.iter().filter(|r| !r.ok()).count();
    let mut stderr = String::new();
    if failed > 0 {
        let _ = writeln!(stderr, "{failed} of {} states failed", records.len());
    }
    Outcome { stdout, stderr, code: if failed == 0 { EXIT_OK } else { EXIT_FAILURE } }
}

/// Default sampling radius `(4n' + 40)/(2η)`.
pub fn default_rmax(state: &kg_nu::BoundState) -> f64 {
    (4.0 * state.principal() + 40.0) / state.radial_scale
}

fn wavefunction(a: &WavefunctionArgs) -> Outcome {
    let params = match a.potential.params() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    if let Err(e) = check_solver(a.solver.tol, a.solver.max_iter) {
        return Outcome::usage(e);
    }
    if a.samples < 2 {
        return Outcome::usage(format!("--samples must be at least 2, got {}", a.samples));
    }
    if let Some(r) = a.rmax {
        if !(r > 0.0 && r.is_finite()) {
            return Outcome::usage(format!("--rmax must be positive, got {r}"));
        }
    }
    let qn = QuantumNumbers::new(a.radial, a.polar, a.m);
    let state = match solve_bound_state(&params, qn, a.solver.options()) {
        Ok(s) => s,
        Err(e) => return Outcome::failure(error_text(&e)),
    };
    let rmax = a.rmax.unwrap_or_else(|| default_rmax(&state));
    let last = (a.samples - 1) as f64;
    let samples = (0..a.samples)
        .map(|i| {
            let t = i as f64 / last;
            let r = rmax * t;
            let x = -1.0 + 2.0 * t;
            WavefunctionSample {
                r: records::round15(r),
                radial: records::round15(state.radial(r)),
                x: records::round15(x),
                angular: records::round15(state.angular(x)),
            }
        })
        .collect();
    let out = Wavefunction { meta: WavefunctionMeta::new(&state, rmax, a.samples), samples };
    let stdout = match a.format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut text = String::new();
            for (k, v) in out.meta.pairs() {
                let _ = writeln!(text, "# {k}={v}");
            }
            text + &to_csv(&out.samples)
        }
    };
    Outcome { stdout, ..Outcome::default() }
}

fn verify(a: &VerifyArgs) -> Outcome {
    let params = match a.potential.params() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    if let Err(e) = check_solver(a.solver.tol, a.solver.max_iter) {
        return Outcome::usage(e);
    }
    let grid = GridSpec { points: a.points, r_max: None, refinement: a.refine, tol: a.vtol };
    if let Err(e) = grid.validate() {
        return Outcome::usage(e.to_string());
    }
    let opts = a.solver.options();
    let qns = tuples(&a.range);
    let records = match par_map(&qns, |&qn| VerifyRecord::new(qn, &verify_state(&params, qn, opts, &grid))) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let stdout = match a.format {
        Format::Json => to_json(&records),
        Format::Csv => to_csv(&records),
    };

    let worst = |f: fn(&VerifyRecord) -> Option<f64>| records.iter().filter_map(f).fold(0.0f64, f64::max);
    let passed = records.iter().filter(|r| r.pass).count();
    let mut stderr = String::new();
    let _ = writeln!(
        stderr,
        "{passed}/{} passed; worst |de|/M = {:e}, worst |dlambda| = {:e}",
        records.len(),
        worst(|r| r.energy_error),
        worst(|r| r.lambda_error),
    );
    for r in records.iter().filter(|r| !r.pass) {
        let reason = r.error.clone().unwrap_or_else(|| {
            format!(
                "energy error {:e}, lambda error {:e}, residual ratios {:?}/{:?}",
                r.energy_error.unwrap_or(f64::NAN),
                r.lambda_error.unwrap_or(f64::NAN),
                r.radial_order,
                r.angular_order,
            )
        });
        let _ = writeln!(stderr, "FAIL (N={}, n={}, m={}): {reason}", r.radial, r.n, r.m);
    }
    let code = if passed == records.len() { EXIT_OK } else { EXIT_FAILURE };
    Outcome { stdout, stderr, code }
}

fn nu(a: &NuArgs) -> Outcome {
    let params = match a.potential.params() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    match nu_report::reduce(a, &params) {
        Ok(report) => {
            let stdout = match a.format {
                NuFormat::Json => to_json(&report),
                NuFormat::Text => nu_report::to_text(&report),
            };
            Outcome { stdout, ..Outcome::default() }
        }
        Err(e) => Outcome::failure(error_text(&e)),
    }
}
