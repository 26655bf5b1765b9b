//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p kgnu-cli --test acceptance`. Exits nonzero when
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{golden_text, kgnu, GOLDENS};
use kg_nu::diagnostics::{angular_nodes, angular_overlap, radial_nodes, radial_overlap, residual_orders, ORDER_SLACK};
use kg_nu::model::{angular_nu_problem, effective_l, nonrel_limit_check, radial_nu_problem, solve_bound_state};
use kg_nu::oracle::{angular_numeric_lambda, radial_numeric_energy};
use kg_nu::{
    BoundState, Coupling, Family, GridSpec, Poly, PotentialParams, QuantumNumbers, Rational, Scalar, SolveOptions,
};
use kgnu_cli::records::{to_json, SpectrumRecord};

const ENERGY_TOL: f64 = 1e-5;
const LAMBDA_TOL: f64 = 1e-5;
const NORM_TOL: f64 = 1e-8;
const NONREL_TOL: [(f64, f64); 2] = [(1e-2, 2e-4), (1e-3, 2e-6)];
const DEGENERACY_TOL: f64 = 1e-14;
const RESIDUAL_RATIO: f64 = 4.0;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_i64(n) / Rational::from_i64(d)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn radial_chain(
    mass: &Rational,
    t: &Rational,
    l: &Rational,
    alpha: &Rational,
    coupling: Coupling,
) -> Result<(), String> {
    let c = Rational::from_i64(coupling.factor());
    let p = PotentialParams::new(alpha.clone(), q(0, 1), q(0, 1), mass.clone())
        .map_err(|e| e.to_string())?
        .with_coupling(coupling);
    // ε = M(1 − t²)/(1 + t²) keeps η = √(M² − ε²) rational
    let t2 = t.clone() * t.clone();
    let eps = mass.clone() * (q(1, 1) - t2.clone()) / (q(1, 1) + t2.clone());
    let eta = q(2, 1) * mass.clone() * t.clone() / (q(1, 1) + t2);
    let lambda = l.clone() * (l.clone() + q(1, 1));
    let problem = radial_nu_problem(&p, &eps, &lambda).map_err(|e| e.to_string())?;
    let xa = c * (eps + mass.clone()) * alpha.clone();
    let spread = q(2, 1) * eta.clone() * (l.clone() + q(1, 2));
    let k = vec![-xa.clone() - spread.clone(), -xa.clone() + spread];
    let here = || format!("radial M={mass} t={t} l={l} alpha={alpha}");
    ensure(problem.candidate_k().map_err(|e| e.to_string())? == k, || format!("{}: k", here()))?;
    let sol = problem.solve().map_err(|e| e.to_string())?;
    let b = &sol.selected;
    ensure(sol.family == Family::LaguerreType, || format!("{}: family", here()))?;
    ensure(b.k == k[0], || format!("{}: selected k", here()))?;
    ensure(b.tau == Poly::linear(q(2, 1) * (l.clone() + q(1, 1)), q(-2, 1) * eta.clone()), || {
        format!("{}: tau", here())
    })?;
    ensure(b.lambda_bar == -xa - eta.clone() * (q(2, 1) * l.clone() + q(2, 1)), || format!("{}: lambda_bar", here()))?;
    for n in 0..4 {
        ensure(problem.quantize(b, n) == Rational::from_i64(2 * n as i64) * eta.clone(), || {
            format!("{}: lambda_bar_{n}", here())
        })?;
    }
    Ok(())
}

fn angular_chain(b: &Rational, c: &Rational, sign: i64, m: i64, lambda: &Rational) -> Result<(), String> {
    let shifted = b.clone() * b.clone() + c.clone() * c.clone();
    let beta = shifted.clone() - Rational::from_i64(m * m);
    let gamma = Rational::from_i64(2 * sign) * b.clone() * c.clone();
    let (mass, eps) = (q(1, 1), q(1, 2));
    let xi2 = eps.clone() + mass.clone();
    let p = PotentialParams::new(q(-1, 5), beta / xi2.clone(), gamma / xi2, mass).map_err(|e| e.to_string())?;
    let problem = angular_nu_problem(&p, &eps, m, lambda).map_err(|e| e.to_string())?;
    let u = b.clone() * b.clone() - c.clone() * c.clone();
    let base = (q(2, 1) * lambda.clone() - shifted) / q(2, 1);
    let mut k = vec![base.clone() - u.clone() / q(2, 1), base + u / q(2, 1)];
    k.dedup();
    let here = || format!("angular B={b} C={c} s={sign} m={m} lambda={lambda}");
    ensure(problem.candidate_k().map_err(|e| e.to_string())? == k, || format!("{}: k", here()))?;
    let sol = problem.solve().map_err(|e| e.to_string())?;
    let br = &sol.selected;
    let sc = Rational::from_i64(sign) * c.clone();
    ensure(sol.family == Family::JacobiType, || format!("{}: family", here()))?;
    ensure(br.k == k[0], || format!("{}: selected k", here()))?;
    ensure(br.pi == Poly::linear(-sc.clone(), -b.clone()), || format!("{}: pi", here()))?;
    ensure(br.tau == Poly::linear(q(-2, 1) * sc, q(-2, 1) * (q(1, 1) + b.clone())), || format!("{}: tau", here()))?;
    ensure(br.lambda_bar == k[0].clone() - b.clone(), || format!("{}: lambda_bar", here()))?;
    for n in 0..4i64 {
        let expect = Rational::from_i64(2 * n) * (q(1, 1) + b.clone()) + Rational::from_i64(n * (n - 1));
        ensure(problem.quantize(br, n as u32) == expect, || format!("{}: lambda_bar_{n}", here()))?;
    }
    Ok(())
}

fn symbolic() -> Outcome {
    let mut cases = 0;
    for (mass, t) in [(q(1, 1), q(1, 2)), (q(3, 2), q(2, 7)), (q(5, 1), q(1, 9))] {
        for l in [q(0, 1), q(1, 1), q(5, 3), q(7, 2)] {
            for alpha in [q(-1, 5), q(1, 10), q(-3, 7)] {
                for coupling in [Coupling::Halved, Coupling::Full] {
                    radial_chain(&mass, &t, &l, &alpha, coupling)?;
                    cases += 1;
                }
            }
        }
    }
    for (b, c) in [(q(3, 2), q(1, 2)), (q(2, 1), q(1, 3)), (q(1, 1), q(1, 1)), (q(5, 4), q(0, 1))] {
        for sign in [1, -1] {
            for m in 0..3 {
                if b.clone() * b.clone() + c.clone() * c.clone() < Rational::from_i64(m * m) {
                    continue;
                }
                for lambda in [q(7, 3), q(11, 4), q(6, 1)] {
                    angular_chain(&b, &c, sign, m, &lambda)?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} exact chains"))
}

fn grid_states() -> Result<Vec<(PotentialParams, BoundState)>, String> {
    let mut out = Vec::new();
    for alpha in [0.1, 0.2] {
        for (beta, gamma) in [(0.0, 0.0), (0.05, 0.0), (0.05, 0.02)] {
            let p = PotentialParams::new(alpha, beta, gamma, 1.0).map_err(|e| e.to_string())?;
            for (radial, polar, m) in [(0, 0, 1), (1, 0, 1), (0, 1, 1)] {
                let qn = QuantumNumbers::new(radial, polar, m);
                let s = solve_bound_state(&p, qn, SolveOptions::default()).map_err(|e| format!("{qn:?}: {e}"))?;
                out.push((p.clone(), s));
            }
        }
    }
    Ok(out)
}

fn energies() -> Outcome {
    let grid = GridSpec::default();
    let mut worst = 0.0f64;
    for (p, s) in grid_states()? {
        let numeric = radial_numeric_energy(&p, s.angular.separation_lambda, s.qn.radial, &grid)
            .map_err(|e| format!("{:?}: {e}", s.qn))?;
        let err = (s.energy - numeric).abs() / p.mass;
        ensure(err <= ENERGY_TOL, || format!("α={} β={} γ={} {:?}: |Δε|/M = {err:e}", p.alpha, p.beta, p.gamma, s.qn))?;
        worst = worst.max(err);
    }
    Ok(format!("worst |Δε|/M = {worst:.1e} over 18 states"))
}

fn lambdas() -> Outcome {
    let grid = GridSpec::default();
    let mut cases: Vec<(f64, f64, i32, u32, f64)> = grid_states()?
        .iter()
        .map(|(_, s)| {
            let a = &s.angular;
            (a.beta_eff, a.gamma_eff, s.qn.m, s.qn.polar, a.separation_lambda)
        })
        .collect();
    for (m, n, exact) in [(0, 1, 2.0), (1, 0, 2.0), (1, 1, 6.0), (0, 2, 6.0), (2, 1, 12.0), (0, 3, 12.0)] {
        let closed = effective_l(m, 0.0, 0.0, n).map_err(|e| e.to_string())?.separation_lambda;
        ensure(closed == exact, || format!("closed-form λ for m={m} n={n} is {closed}, not {exact}"))?;
        cases.push((0.0, 0.0, m, n, exact));
    }
    let mut worst = 0.0f64;
    for (beta, gamma, m, n, expect) in cases {
        let numeric = angular_numeric_lambda(beta, gamma, m, n, &grid).map_err(|e| e.to_string())?;
        let err = (numeric - expect).abs();
        ensure(err <= LAMBDA_TOL, || format!("β_eff={beta} γ_eff={gamma} m={m} n={n}: |Δλ| = {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("worst |Δλ| = {worst:.1e}, Legendre 2, 6, 12 included"))
}

fn small_states() -> Result<Vec<BoundState>, String> {
    let mut out = Vec::new();
    for (alpha, beta, gamma) in [(0.2, 0.0, 0.0), (0.1, 0.05, 0.02)] {
        let p = PotentialParams::new(alpha, beta, gamma, 1.0).map_err(|e| e.to_string())?;
        for radial in 0..=3 {
            for polar in 0..=3 {
                for m in -2..=2 {
                    let qn = QuantumNumbers::new(radial, polar, m);
                    out.push(solve_bound_state(&p, qn, SolveOptions::default()).map_err(|e| format!("{qn:?}: {e}"))?);
                }
            }
        }
    }
    Ok(out)
}

fn orthonormal() -> Outcome {
    let states = small_states()?;
    let mut worst = 0.0f64;
    let mut track = |v: f64, what: &dyn Fn() -> String| -> Result<(), String> {
        worst = worst.max(v.abs());
        ensure(v.abs() <= NORM_TOL, || format!("{}: {v:e}", what()))
    };
    for s in &states {
        track(radial_overlap(s, s) - 1.0, &|| format!("∫R² − 1 for {:?}", s.qn))?;
        track(angular_overlap(s, s) - 1.0, &|| format!("∫Θ² − 1 for {:?}", s.qn))?;
    }
    for s in states.iter().filter(|s| s.qn.radial == 0 && s.qn.polar == 0) {
        let radial: Vec<BoundState> =
            (0..=3).map(|n| s.with_fixed_coupling(n)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let polar: Vec<BoundState> =
            (0..=3).map(|n| s.with_polar(n)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for i in 0..4 {
            for j in i + 1..4 {
                track(radial_overlap(&radial[i], &radial[j]), &|| format!("∫R_{i}R_{j} at m={}", s.qn.m))?;
                track(angular_overlap(&polar[i], &polar[j]), &|| format!("∫Θ_{i}Θ_{j} at m={}", s.qn.m))?;
            }
        }
    }
    Ok(format!("worst deviation {worst:.1e} over {} states", states.len()))
}

fn nonrelativistic() -> Outcome {
    let mut parts = Vec::new();
    for (alpha, tol) in NONREL_TOL {
        let p = PotentialParams::new(alpha, 0.0, 0.0, 1.0).map_err(|e| e.to_string())?;
        let mut worst = 0.0f64;
        for (radial, polar, m) in [(0, 0, 0), (1, 0, 0), (0, 1, 1), (2, 1, -1), (1, 2, 2)] {
            let ratio = nonrel_limit_check(&p, QuantumNumbers::new(radial, polar, m), SolveOptions::default())
                .map_err(|e| e.to_string())?;
            worst = worst.max((ratio - 1.0).abs());
        }
        ensure(worst <= tol, || format!("α={alpha}: deviation {worst:e} > {tol:e}"))?;
        parts.push(format!("α={alpha}: {worst:.1e}"));
    }
    Ok(parts.join(", "))
}

fn nodes_and_residuals() -> Outcome {
    let mut ratios = 0;
    let mut floored = 0;
    let mut worst = 0.0f64;
    for s in small_states()? {
        let (r, a) = (radial_nodes(&s, 4000), angular_nodes(&s, 4000));
        ensure(r == s.qn.radial as usize && a == s.qn.polar as usize, || {
            format!("{:?}: {r} radial and {a} angular nodes", s.qn)
        })?;
        let (radial, angular) = residual_orders(&s).map_err(|e| e.to_string())?;
        for order in [radial, angular] {
            match order {
                Some(x) => {
                    ensure((x - RESIDUAL_RATIO).abs() <= ORDER_SLACK, || format!("{:?}: residual ratio {x}", s.qn))?;
                    worst = worst.max((x - RESIDUAL_RATIO).abs());
                    ratios += 1;
                }
                None => floored += 1,
            }
        }
    }
    Ok(format!(
        "node counts exact; {ratios} residual ratios within {:.2} of 4, {floored} already at rounding level",
        worst
    ))
}

fn degeneracy() -> Outcome {
    let mut worst = 0.0f64;
    let mut shells = 0;
    for alpha in [0.1, 0.2] {
        let p = PotentialParams::new(alpha, 0.0, 0.0, 1.0).map_err(|e| e.to_string())?;
        let mut levels: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
        for radial in 0..6u32 {
            for polar in 0..6u32 {
                for m in -5i32..=5 {
                    let qn = QuantumNumbers::new(radial, polar, m);
                    if qn.free_principal() > 6 {
                        continue;
                    }
                    let s = solve_bound_state(&p, qn, SolveOptions::default()).map_err(|e| e.to_string())?;
                    levels.entry(qn.free_principal()).or_default().push(s.energy);
                }
            }
        }
        for (principal, energies) in levels {
            let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let spread = (hi - lo) / lo.abs();
            ensure(spread <= DEGENERACY_TOL, || format!("α={alpha} n'={principal}: relative spread {spread:e}"))?;
            worst = worst.max(spread);
            shells += 1;
        }
    }
    Ok(format!("{shells} shells, worst relative spread {worst:.1e}"))
}

fn cli_contract() -> Outcome {
    for g in GOLDENS {
        let out = kgnu(g.args, &[]);
        ensure(out.stdout == golden_text(g.file), || format!("{} differs", g.file))?;
        ensure(out.code == g.code, || format!("{}: exit {} instead of {}", g.file, out.code, g.code))?;
    }
    let out = kgnu(
        &[
            "spectrum", "--alpha", "0.1", "--beta", "0.05", "--gamma", "0.02", "--mass", "1", "--Nmax", "2", "--nmax",
            "2", "--mmax", "2",
        ],
        &[],
    );
    let records: Vec<SpectrumRecord> = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    ensure(to_json(&records) == out.stdout, || "spectrum JSON does not round-trip".into())?;
    ensure(out.code == 0, || format!("spectrum exit {}", out.code))?;
    let usage = kgnu(&["spectrum", "--alpha", "0.2"], &[]);
    ensure(usage.code == 1, || format!("missing flags exit {}", usage.code))?;
    let failure = kgnu(&["wavefunction", "--alpha", "0", "--beta", "0", "--gamma", "0", "--mass", "1"], &[]);
    ensure(failure.code == 2, || format!("no bound state exit {}", failure.code))?;
    Ok(format!("{} goldens identical, JSON round-trips, exit codes 0/1/2", GOLDENS.len()))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { name: "symbolic reduction", budget: Some(Duration::from_secs(1)), check: symbolic },
    Criterion { name: "energies vs oracle", budget: Some(Duration::from_secs(60)), check: energies },
    Criterion { name: "separation constants vs oracle", budget: Some(Duration::from_secs(30)), check: lambdas },
    Criterion { name: "normalization and orthogonality", budget: None, check: orthonormal },
    Criterion { name: "nonrelativistic limit", budget: None, check: nonrelativistic },
    Criterion { name: "nodes and residuals", budget: None, check: nodes_and_residuals },
    Criterion { name: "degeneracy", budget: None, check: degeneracy },
    Criterion { name: "CLI contract", budget: None, check: cli_contract },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let mut result = (c.check)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(budget)) = (&result, c.budget) {
            if elapsed > budget {
                result = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS {} {}: {detail} ({elapsed:.2?})", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {}: {why} ({elapsed:.2?})", i + 1, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
