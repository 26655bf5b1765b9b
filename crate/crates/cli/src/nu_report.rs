use std::fmt::Write as _;

use kg_nu::model::{angular_nu_problem, radial_nu_problem};
use kg_nu::poly::parse_rational;
use kg_nu::{Coupling, NuBranch, NuProblem, Poly, PotentialParams, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::args::{NuArgs, Target};
use crate::records::round15;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub k: String,
    pub sign: String,
    pub pi: String,
    pub tau: String,
    pub tau_prime: String,
    pub lambda_bar: String,
    pub physical: bool,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuReport {
    pub target: String,
    /// `rational` when every coefficient is exact, `float` otherwise.
    pub mode: String,
    pub sigma: String,
    pub tau_tilde: String,
    pub sigma_tilde: String,
    pub family: String,
    pub k_candidates: Vec<String>,
    pub branches: Vec<BranchReport>,
    /// Index into `branches`.
    pub selected: usize,
    pub degeneracy_warning: bool,
    /// `λ̄_n` as a polynomial in `n`.
    pub lambda_bar_n: String,
}

/// Renders scalars and polynomials; floats are rounded to 15 digits.
trait Render: Scalar {
    fn render(&self) -> String;

    fn render_poly(p: &Poly<Self>, var: &str) -> String;
}

impl Render for Rational {
    fn render(&self) -> String {
        self.to_string()
    }

    fn render_poly(p: &Poly<Self>, var: &str) -> String {
        p.display_in(var)
    }
}

impl Render for f64 {
    fn render(&self) -> String {
        round15(*self).to_string()
    }

    fn render_poly(p: &Poly<Self>, var: &str) -> String {
        Poly::new(p.coeffs().iter().map(|&c| round15(c)).collect()).display_in(var)
    }
}

fn problem<S: Scalar>(
    target: Target,
    p: &PotentialParams<S>,
    epsilon: &S,
    m: i64,
    lambda: &S,
) -> kg_nu::Result<NuProblem<S>> {
    match target {
        Target::Radial => radial_nu_problem(p, epsilon, lambda),
        Target::Angular => angular_nu_problem(p, epsilon, m, lambda),
    }
}

fn report<S: Render>(target: Target, mode: &str, prob: &NuProblem<S>) -> kg_nu::Result<NuReport> {
    let var = match target {
        Target::Radial => "r",
        Target::Angular => "x",
    };
    let sol = prob.solve()?;
    let branch = |b: &NuBranch<S>| BranchReport {
        k: b.k.render(),
        sign: if b.sign > 0 { "+" } else { "-" }.to_string(),
        pi: S::render_poly(&b.pi, var),
        tau: S::render_poly(&b.tau, var),
        tau_prime: b.tau_prime.render(),
        lambda_bar: b.lambda_bar.render(),
        physical: b.physical,
        admissible: prob.is_admissible(b),
    };
    let selected = sol.branches.iter().position(|b| b.k == sol.selected.k && b.sign == sol.selected.sign).unwrap_or(0);
    let q = &sol.quantization;
    let lambda_bar_n = S::render_poly(&Poly::quadratic(q.constant.clone(), q.linear.clone(), q.quadratic.clone()), "n");
    Ok(NuReport {
        target: format!("{target:?}").to_lowercase(),
        mode: mode.to_string(),
        sigma: S::render_poly(prob.sigma(), var),
        tau_tilde: S::render_poly(prob.tau_tilde(), var),
        sigma_tilde: S::render_poly(prob.sigma_tilde(), var),
        family: sol.family.name().to_string(),
        k_candidates: sol.candidates.iter().map(Render::render).collect(),
        branches: sol.branches.iter().map(branch).collect(),
        selected,
        degeneracy_warning: sol.degeneracy_warning,
        lambda_bar_n,
    })
}

fn rational_inputs(args: &NuArgs) -> Option<(PotentialParams<Rational>, Rational, Rational)> {
    let p = &args.potential;
    let params = PotentialParams::new(
        parse_rational(&p.alpha.text)?,
        parse_rational(&p.beta.text)?,
        parse_rational(&p.gamma.text)?,
        parse_rational(&p.mass.text)?,
    )
    .ok()?
    .with_coupling(Coupling::from(p.coupling));
    Some((params, parse_rational(&args.epsilon.text)?, parse_rational(&args.lambda.text)?))
}

/// Exact reduction when all inputs are rational and every square root is
/// exact; otherwise the floating-point reduction.
pub fn reduce(args: &NuArgs, params: &PotentialParams) -> kg_nu::Result<NuReport> {
    if let Some((p, eps, lambda)) = rational_inputs(args) {
        let exact =
            problem(args.target, &p, &eps, args.m, &lambda).and_then(|prob| report(args.target, "rational", &prob));
        if exact.is_ok() {
            return exact;
        }
    }
    let prob = problem(args.target, params, &args.epsilon.value, args.m, &args.lambda.value)?;
    report(args.target, "float", &prob)
}

pub fn to_text(r: &NuReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "target: {}", r.target);
    let _ = writeln!(out, "mode: {}", r.mode);
    let _ = writeln!(out, "family: {}", r.family);
    let _ = writeln!(out, "sigma: {}", r.sigma);
    let _ = writeln!(out, "tau_tilde: {}", r.tau_tilde);
    let _ = writeln!(out, "sigma_tilde: {}", r.sigma_tilde);
    let _ = writeln!(out, "k: {}", r.k_candidates.join(", "));
    for (i, b) in r.branches.iter().enumerate() {
        let mark = if i == r.selected { "*" } else { " " };
        let _ = writeln!(
            out,
            "{mark} k = {}, sign {}: pi = {}, tau = {}, tau' = {}, lambda_bar = {}{}{}",
            b.k,
            b.sign,
            b.pi,
            b.tau,
            b.tau_prime,
            b.lambda_bar,
            if b.physical { ", physical" } else { "" },
            if b.admissible { ", admissible" } else { "" },
        );
    }
    let _ = writeln!(out, "lambda_bar_n: {}", r.lambda_bar_n);
    if r.degeneracy_warning {
        let _ = writeln!(out, "warning: several branches have tau' < 0");
    }
    out
}
