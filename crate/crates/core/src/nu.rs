//! Nikiforov-Uvarov reduction.
//!
//! An equation of generalized hypergeometric type
//!
//! ```text
//! ψ''(s) + τ̃(s)/σ(s) ψ'(s) + σ̃(s)/σ²(s) ψ(s) = 0
//! ```
//!
//! is factored as `ψ = φ·y` with `φ'/φ = π/σ`, where
//! `π = (σ' − τ̃)/2 ± √((σ' − τ̃)²/4 − σ̃ + kσ)` and `k` is fixed by requiring
//! the radicand to be a perfect square. `y` then solves
//! `σy'' + τy' + λ̄y = 0` with `τ = τ̃ + 2π`, `λ̄ = k + π'`, and polynomial
//! solutions exist for `λ̄ = −nτ' − n(n−1)σ''/2`.

use crate::error::{Error, Result};
use crate::poly::{Poly, Scalar};

/// Default tolerance for floating-point perfect-square and root tests.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Classical polynomial family realized by the Rodrigues formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    LaguerreType,
    JacobiType,
    HermiteType,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::LaguerreType => "LaguerreType",
            Family::JacobiType => "JacobiType",
            Family::HermiteType => "HermiteType",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NuProblem<S> {
    sigma: Poly<S>,
    tau_tilde: Poly<S>,
    sigma_tilde: Poly<S>,
    tol: f64,
}

/// One sign choice of `π` at a given `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NuBranch<S> {
    pub k: S,
    /// +1 or −1: the sign in front of the square root.
    pub sign: i8,
    pub pi: Poly<S>,
    pub tau: Poly<S>,
    pub lambda_bar: S,
    pub tau_prime: S,
    pub physical: bool,
}

/// `λ̄_n = quadratic·n² + linear·n + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct NuQuantization<S> {
    pub family: Family,
    pub constant: S,
    pub linear: S,
    pub quadratic: S,
}

impl<S: Scalar> NuQuantization<S> {
    pub fn eval(&self, n: u32) -> S {
        let n = S::from_i64(n as i64);
        self.quadratic.clone() * n.clone() * n.clone() + self.linear.clone() * n + self.constant.clone()
    }
}

/// Result of [`select_physical`].
#[derive(Clone, Debug, PartialEq)]
pub struct Selection<S> {
    pub branch: NuBranch<S>,
    /// Set when two distinct branches both had `τ' < 0`.
    pub degeneracy_warning: bool,
}

/// Closed form of a function `f` defined by `f'/f = p(s)/σ(s)` with `p` of
/// degree ≤ 1. Used for both `φ` (with `p = π`) and the Rodrigues weight `ρ`
/// (with `p = τ − σ'`).
#[derive(Clone, Debug, PartialEq)]
pub enum LogDerivFactor {
    /// `|s − root|^power · exp(rate·s)`
    Laguerre { root: f64, power: f64, rate: f64 },
    /// `|s − lower|^lower_power · |upper − s|^upper_power`
    Jacobi { lower: f64, upper: f64, lower_power: f64, upper_power: f64 },
    /// `exp(linear·s + quadratic·s²)`
    Hermite { linear: f64, quadratic: f64 },
}

impl LogDerivFactor {
    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            LogDerivFactor::Laguerre { root, power, rate } => (s - root).abs().powf(power) * (rate * s).exp(),
            LogDerivFactor::Jacobi { lower, upper, lower_power, upper_power } => {
                (s - lower).abs().powf(lower_power) * (upper - s).abs().powf(upper_power)
            }
            LogDerivFactor::Hermite { linear, quadratic } => (linear * s + quadratic * s * s).exp(),
        }
    }

    /// Exponents at the finite singular points of σ.
    fn finite_powers(&self) -> Vec<f64> {
        match *self {
            LogDerivFactor::Laguerre { power, .. } => vec![power],
            LogDerivFactor::Jacobi { lower_power, upper_power, .. } => vec![lower_power, upper_power],
            LogDerivFactor::Hermite { .. } => Vec::new(),
        }
    }
}

/// Everything the reduction produces for one problem.
#[derive(Clone, Debug, PartialEq)]
pub struct NuSolution<S> {
    pub family: Family,
    pub candidates: Vec<S>,
    /// Both branches for every candidate, in candidate order (+ then −).
    pub branches: Vec<NuBranch<S>>,
    pub selected: NuBranch<S>,
    pub degeneracy_warning: bool,
    pub quantization: NuQuantization<S>,
    pub phi: LogDerivFactor,
    pub weight: LogDerivFactor,
}

impl<S: Scalar> NuProblem<S> {
    pub fn new(sigma: Poly<S>, tau_tilde: Poly<S>, sigma_tilde: Poly<S>) -> Result<Self> {
        sigma.ensure_degree_at_most(2)?;
        tau_tilde.ensure_degree_at_most(1)?;
        sigma_tilde.ensure_degree_at_most(2)?;
        if sigma.is_zero() {
            return Err(Error::InvalidParameter("sigma must be nonzero".into()));
        }
        Ok(NuProblem { sigma, tau_tilde, sigma_tilde, tol: DEFAULT_TOL })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn sigma(&self) -> &Poly<S> {
        &self.sigma
    }

    pub fn tau_tilde(&self) -> &Poly<S> {
        &self.tau_tilde
    }

    pub fn sigma_tilde(&self) -> &Poly<S> {
        &self.sigma_tilde
    }

    /// `(σ' − τ̃)/2`
    pub fn pi_center(&self) -> Poly<S> {
        (&self.sigma.derivative() - &self.tau_tilde).scale(&S::half())
    }

    /// `((σ' − τ̃)/2)² − σ̃ + kσ`
    pub fn radicand(&self, k: &S) -> Poly<S> {
        let center = self.pi_center();
        let base = &(&center * &center) - &self.sigma_tilde;
        &base + &self.sigma.scale(k)
    }

    /// All real `k` that make the radicand a perfect square, ascending.
    pub fn candidate_k(&self) -> Result<Vec<S>> {
        let center = self.pi_center();
        let base = &(&center * &center) - &self.sigma_tilde;
        let (a0, b0, c0) = (base.coeff(2), base.coeff(1), base.coeff(0));
        let (a1, b1, c1) = (self.sigma.coeff(2), self.sigma.coeff(1), self.sigma.coeff(0));
        let two = S::from_i64(2);
        let four = S::from_i64(4);

        // discriminant of the radicand as a quadratic in k
        let q2 = b1.clone() * b1.clone() - four.clone() * a1.clone() * c1.clone();
        let q1 = two.clone() * b0.clone() * b1 - four.clone() * (a0.clone() * c1 + a1 * c0.clone());
        let q0 = b0.clone() * b0 - four.clone() * a0 * c0;
        let scale = [&q2, &q1, &q0].iter().map(|q| q.to_f64().abs()).fold(0.0, f64::max);

        let mut roots = Vec::new();
        if !q2.is_negligible(scale, self.tol) {
            let disc = q1.clone() * q1.clone() - four * q2.clone() * q0;
            let disc_scale = scale * scale;
            let root = match disc.sqrt_checked(self.tol * disc_scale.max(1.0)) {
                Some(root) => root,
                None if disc < S::zero() => return Err(Error::NoRealK),
                None => return Err(Error::InexactRational(disc.to_string())),
            };
            let denom = two * q2;
            roots.push((-q1.clone() - root.clone()) / denom.clone());
            roots.push((-q1 + root) / denom);
        } else if !q1.is_negligible(scale, self.tol) {
            roots.push(-q0 / q1);
        } else {
            return Err(Error::NoRealK);
        }

        let mut candidates: Vec<S> =
            roots.into_iter().filter(|k| self.radicand(k).perfect_square_root(self.tol).is_ok()).collect();
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        candidates.dedup_by(|a, b| {
            let diff = a.clone() - b.clone();
            diff.is_negligible(a.to_f64().abs().max(b.to_f64().abs()), self.tol)
        });
        if candidates.is_empty() {
            return Err(Error::NoRealK);
        }
        Ok(candidates)
    }

    /// Both sign branches at `k`, `+` first.
    pub fn branches(&self, k: &S) -> Result<[NuBranch<S>; 2]> {
        let root = self.radicand(k).perfect_square_root(self.tol)?;
        let center = self.pi_center();
        let make = |sign: i8| {
            let pi = if sign > 0 { &center + &root } else { &center - &root };
            let tau = &self.tau_tilde + &pi.scale(&S::from_i64(2));
            let tau_prime = tau.coeff(1);
            NuBranch {
                k: k.clone(),
                sign,
                lambda_bar: k.clone() + pi.coeff(1),
                physical: tau_prime < S::zero(),
                tau_prime,
                pi,
                tau,
            }
        };
        Ok([make(1), make(-1)])
    }

    /// `λ̄_n = −nτ' − n(n−1)σ''/2`
    pub fn quantize(&self, branch: &NuBranch<S>, n: u32) -> S {
        self.quantization(branch).eval(n)
    }

    pub fn quantization(&self, branch: &NuBranch<S>) -> NuQuantization<S> {
        // σ''/2 is the leading coefficient of σ
        let half_sigma_pp = self.sigma.coeff(2);
        NuQuantization {
            family: self.classify().unwrap_or(Family::HermiteType),
            constant: S::zero(),
            linear: -branch.tau_prime.clone() + half_sigma_pp.clone(),
            quadratic: -half_sigma_pp,
        }
    }

    pub fn classify(&self) -> Result<Family> {
        match self.sigma.degree() {
            0 => Ok(Family::HermiteType),
            1 => Ok(Family::LaguerreType),
            _ => {
                let disc = self.sigma.discriminant()?;
                if disc > S::zero() && !disc.is_negligible(self.sigma.norm().powi(2), self.tol) {
                    Ok(Family::JacobiType)
                } else {
                    Err(Error::UnclassifiedSigma)
                }
            }
        }
    }

    /// Solves `f'/f = numer/σ` in closed form.
    pub fn log_deriv_factor(&self, numer: &Poly<S>) -> Result<LogDerivFactor> {
        numer.ensure_degree_at_most(1)?;
        let sigma = self.sigma.to_f64();
        let numer = numer.to_f64();
        match self.classify()? {
            Family::HermiteType => {
                let c = sigma.coeff(0);
                Ok(LogDerivFactor::Hermite { linear: numer.coeff(0) / c, quadratic: numer.coeff(1) / (2.0 * c) })
            }
            Family::LaguerreType => {
                // σ = a(s − root), numer = numer(root) + numer'·(s − root)
                let a = sigma.coeff(1);
                let root = -sigma.coeff(0) / a;
                Ok(LogDerivFactor::Laguerre { root, power: numer.eval_f64(root) / a, rate: numer.coeff(1) / a })
            }
            Family::JacobiType => {
                let (a, b, c) = (sigma.coeff(2), sigma.coeff(1), sigma.coeff(0));
                let disc = (b * b - 4.0 * a * c).sqrt();
                let (r1, r2) = ((-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a));
                let (lower, upper) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                // σ = a(s − lower)(s − upper); partial fractions of numer/σ
                let lower_power = numer.eval_f64(lower) / (a * (lower - upper));
                let upper_coeff = numer.eval_f64(upper) / (a * (upper - lower));
                // d/ds ln|upper − s| = 1/(s − upper)
                Ok(LogDerivFactor::Jacobi { lower, upper, lower_power, upper_power: upper_coeff })
            }
        }
    }

    /// `φ` for a branch: `φ'/φ = π/σ`.
    pub fn phi(&self, branch: &NuBranch<S>) -> Result<LogDerivFactor> {
        self.log_deriv_factor(&branch.pi)
    }

    /// Rodrigues weight for a branch: `(σρ)' = τρ`.
    pub fn weight(&self, branch: &NuBranch<S>) -> Result<LogDerivFactor> {
        self.log_deriv_factor(&(&branch.tau - &self.sigma.derivative()))
    }

    /// Open interval on which `σ > 0` bounds the problem.
    pub fn domain(&self) -> Result<(f64, f64)> {
        let sigma = self.sigma.to_f64();
        match self.classify()? {
            Family::HermiteType => Ok((f64::NEG_INFINITY, f64::INFINITY)),
            Family::LaguerreType => {
                let root = -sigma.coeff(0) / sigma.coeff(1);
                if sigma.coeff(1) > 0.0 {
                    Ok((root, f64::INFINITY))
                } else {
                    Ok((f64::NEG_INFINITY, root))
                }
            }
            Family::JacobiType => match self.log_deriv_factor(&Poly::zero())? {
                LogDerivFactor::Jacobi { lower, upper, .. } => Ok((lower, upper)),
                _ => unreachable!("Jacobi sigma yields a Jacobi factor"),
            },
        }
    }

    /// A branch yields a regular polynomial family when `τ' < 0`, `τ`
    /// vanishes inside the domain, and `φ` stays bounded at finite ends.
    pub fn is_admissible(&self, branch: &NuBranch<S>) -> bool {
        if !branch.physical {
            return false;
        }
        let Ok((lo, hi)) = self.domain() else { return false };
        let tau = branch.tau.to_f64();
        let zero = -tau.coeff(0) / tau.coeff(1);
        if !(zero > lo && zero < hi) {
            return false;
        }
        match self.phi(branch) {
            Ok(phi) => phi.finite_powers().iter().all(|&p| p >= -self.tol),
            Err(_) => false,
        }
    }

    /// Full reduction: candidates, branches, and the selected branch.
    ///
    /// Among all branches, those passing [`Self::is_admissible`] are
    /// preferred; [`select_physical`] breaks any remaining tie.
    pub fn solve(&self) -> Result<NuSolution<S>> {
        let family = self.classify()?;
        let candidates = self.candidate_k()?;
        let mut branches = Vec::with_capacity(2 * candidates.len());
        for k in &candidates {
            branches.extend(self.branches(k)?);
        }
        let admissible: Vec<NuBranch<S>> = branches.iter().filter(|b| self.is_admissible(b)).cloned().collect();
        let selection = if admissible.is_empty() { select_physical(&branches)? } else { select_physical(&admissible)? };
        let quantization = self.quantization(&selection.branch);
        let phi = self.phi(&selection.branch)?;
        let weight = self.weight(&selection.branch)?;
        Ok(NuSolution {
            family,
            candidates,
            branches,
            selected: selection.branch,
            degeneracy_warning: selection.degeneracy_warning,
            quantization,
            phi,
            weight,
        })
    }

    /// `(1/ρ) dⁿ/dsⁿ [σⁿ ρ]` at `s`, by Taylor-jet differentiation.
    ///
    /// Slow reference for the Rodrigues formula; multiply by the family's
    /// normalizing constant to obtain a classical polynomial.
    pub fn rodrigues_reference(&self, branch: &NuBranch<S>, n: usize, s: f64) -> Result<f64> {
        let weight = self.weight(branch)?;
        let sigma = self.sigma.to_f64();
        let order = n + 1;
        let nf = n as f64;
        let jet = match weight {
            LogDerivFactor::Laguerre { root, power, rate } => {
                // σⁿρ/ρ(s) = aⁿ dⁿ (1 + t/d)^{n+power} e^{rate·t}, d = s − root
                let a = sigma.coeff(1);
                let d = s - root;
                Jet::binomial(d, nf + power, order)
                    .mul(&Jet::exp_poly(&[0.0, rate], order))
                    .scale((a * d).powi(n as i32))
            }
            LogDerivFactor::Jacobi { lower, upper, lower_power, upper_power } => {
                // σ = (−a)(s − lower)(upper − s)
                let a = sigma.coeff(2);
                let dl = s - lower;
                let du = upper - s;
                Jet::binomial(dl, nf + lower_power, order)
                    .mul(&Jet::binomial(-du, nf + upper_power, order))
                    .scale((-a * dl * du).powi(n as i32))
            }
            LogDerivFactor::Hermite { linear, quadratic } => {
                // e^{g(s+t) − g(s)} with g = linear·s + quadratic·s²
                let c = sigma.coeff(0);
                let g1 = linear + 2.0 * quadratic * s;
                Jet::exp_poly(&[0.0, g1, quadratic], order).scale(c.powi(n as i32))
            }
        };
        Ok(jet.derivative(n))
    }
}

/// Picks the branch with `τ' < 0`. If several qualify, the one with the
/// larger `λ̄` wins and the selection is flagged.
pub fn select_physical<S: Scalar>(branches: &[NuBranch<S>]) -> Result<Selection<S>> {
    let physical: Vec<&NuBranch<S>> = branches.iter().filter(|b| b.physical).collect();
    let Some(first) = physical.first() else {
        return Err(Error::NoPhysicalBranch { tau_primes: branches.iter().map(|b| b.tau_prime.to_f64()).collect() });
    };
    let mut best = *first;
    for b in &physical[1..] {
        if b.lambda_bar > best.lambda_bar {
            best = b;
        }
    }
    let distinct = physical.iter().any(|b| b.pi != best.pi || b.k != best.k);
    Ok(Selection { branch: best.clone(), degeneracy_warning: distinct })
}

/// Truncated Taylor series `Σ c_j t^j` about a point.
#[derive(Clone, Debug)]
struct Jet(Vec<f64>);

impl Jet {
    /// `(1 + t/d)^p`
    fn binomial(d: f64, p: f64, order: usize) -> Jet {
        let mut c = Vec::with_capacity(order);
        let mut term = 1.0;
        for j in 0..order {
            c.push(term);
            term *= (p - j as f64) / ((j as f64 + 1.0) * d);
        }
        Jet(c)
    }

    /// `exp(g(t))` for a polynomial `g` with `g(0) = 0`.
    fn exp_poly(g: &[f64], order: usize) -> Jet {
        let gc = |i: usize| g.get(i).copied().unwrap_or(0.0);
        let mut h = vec![0.0; order];
        h[0] = 1.0;
        for j in 1..order {
            let mut acc = 0.0;
            for i in 1..=j {
                acc += i as f64 * gc(i) * h[j - i];
            }
            h[j] = acc / j as f64;
        }
        Jet(h)
    }

    fn scale(mut self, f: f64) -> Jet {
        self.0.iter_mut().for_each(|c| *c *= f);
        self
    }

    fn mul(&self, other: &Jet) -> Jet {
        let order = self.0.len().min(other.0.len());
        let mut out = vec![0.0; order];
        for i in 0..order {
            for j in 0..order - i {
                out[i + j] += self.0[i] * other.0[j];
            }
        }
        Jet(out)
    }

    /// `n`-th derivative at the expansion point.
    fn derivative(&self, n: usize) -> f64 {
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        self.0.get(n).copied().unwrap_or(0.0) * fact
    }
}
