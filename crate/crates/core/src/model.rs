//! Physics layer: the ring-shaped potential, its separation into radial,
//! polar and azimuthal equations, the closed-form spectrum, the
//! self-consistent energy solve, and normalized wavefunctions.
//!
//! Natural units (ħ = c = 1). With `S = +V` and the halved coupling the
//! stationary equation reads `[∇² − (ε + M)V + ε² − M²]ψ = 0`, which
//! separates as `ψ = R(r)/r · Θ(θ) · Φ(φ)` into
//!
//! ```text
//! R'' + [−λ/r² − (ε+M)α/r + ε² − M²] R = 0
//! (1−x²)Θ'' − 2xΘ' + [λ − (m² + (ε+M)(β + γx))/(1−x²)] Θ = 0,   x = cosθ
//! Φ'' + m²Φ = 0
//! ```
//!
//! The closed-form energies depend on `α` only through `α²`. The Coulomb
//! term is taken as attractive with strength `|α|` (the physical sign is
//! `α = −Ze² < 0`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nu::NuProblem;
use crate::poly::{Poly, Scalar};
use crate::special::{jacobi_poly, laguerre_assoc, log_gamma};

/// How the potential enters the Klein-Gordon equation with `S = +V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Coupling {
    /// `−(ε + M)V`: the rescaled scalar/vector potentials.
    #[default]
    Halved,
    /// `−2(ε + M)V`: unscaled potentials.
    Full,
}

impl Coupling {
    pub fn factor(self) -> i64 {
        match self {
            Coupling::Halved => 1,
            Coupling::Full => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coupling::Halved => "halved",
            Coupling::Full => "full",
        }
    }
}

/// Couplings of `V = α/r + β/(r² sin²θ) + γ cosθ/(r² sin²θ)` and the mass.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialParams<S = f64> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
    pub mass: S,
    pub coupling: Coupling,
}

impl<S: Scalar> PotentialParams<S> {
    pub fn new(alpha: S, beta: S, gamma: S, mass: S) -> Result<Self> {
        if mass <= S::zero() || !mass.to_f64().is_finite() {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
            if !v.to_f64().is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        Ok(PotentialParams { alpha, beta, gamma, mass, coupling: Coupling::Halved })
    }

    pub fn with_coupling(mut self, coupling: Coupling) -> Self {
        self.coupling = coupling;
        self
    }

    fn factor(&self) -> S {
        S::from_i64(self.coupling.factor())
    }
}

impl PotentialParams<f64> {
    /// `V(r, θ)`
    pub fn potential_value(&self, r: f64, theta: f64) -> Result<f64> {
        potential_value(self, r, theta)
    }
}

pub fn potential_value(p: &PotentialParams, r: f64, theta: f64) -> Result<f64> {
    let sin = theta.sin();
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    if sin.abs() < f64::EPSILON || !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!("theta must lie in (0, π), got {theta}")));
    }
    let ring = r * r * sin * sin;
    Ok(p.alpha / r + p.beta / ring + p.gamma * theta.cos() / ring)
}

/// Radial, polar and azimuthal quantum numbers `(N, n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub radial: u32,
    pub polar: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(radial: u32, polar: u32, m: i32) -> Self {
        QuantumNumbers { radial, polar, m }
    }

    /// `N + |m| + n + 1`: the principal number when `β = γ = 0`.
    pub fn free_principal(&self) -> u32 {
        self.radial + self.m.unsigned_abs() + self.polar + 1
    }
}

/// `σ = r`, `τ̃ = 0`, `σ̃ = −η²r² − c(ε+M)α r − λ` with `η² = M² − ε²`.
pub fn radial_nu_problem<S: Scalar>(p: &PotentialParams<S>, epsilon: &S, lambda: &S) -> Result<NuProblem<S>> {
    let below = p.mass.clone() - epsilon.clone();
    let above = p.mass.clone() + epsilon.clone();
    if below <= S::zero() || above <= S::zero() {
        return Err(Error::UnboundEnergy { epsilon: epsilon.to_f64(), mass: p.mass.to_f64() });
    }
    let eta_sq = below * above.clone();
    let coulomb = p.factor() * above * p.alpha.clone();
    NuProblem::new(Poly::linear(S::zero(), S::one()), Poly::zero(), Poly::quadratic(-lambda.clone(), -coulomb, -eta_sq))
}

/// `σ = 1 − x²`, `τ̃ = −2x`, `σ̃ = −λx² − γ_eff x + (λ − m² − β_eff)`.
pub fn angular_nu_problem<S: Scalar>(p: &PotentialParams<S>, epsilon: &S, m: i64, lambda: &S) -> Result<NuProblem<S>> {
    let xi_sq = p.factor() * (epsilon.clone() + p.mass.clone());
    let beta_eff = xi_sq.clone() * p.beta.clone();
    let gamma_eff = xi_sq * p.gamma.clone();
    let m_sq = S::from_i64(m * m);
    NuProblem::new(
        Poly::quadratic(S::one(), S::zero(), -S::one()),
        Poly::linear(S::zero(), S::from_i64(-2)),
        Poly::quadratic(lambda.clone() - m_sq - beta_eff, -gamma_eff, -lambda.clone()),
    )
}

/// Effective angular quantities for fixed `(m, β_eff, γ_eff, n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularSolution {
    pub polar: u32,
    pub beta_eff: f64,
    pub gamma_eff: f64,
    /// `√((m² + β_eff)² − γ_eff²)`
    pub u: f64,
    /// `√((m² + β_eff + u)/2)`
    pub b: f64,
    /// `√((m² + β_eff − u)/2)`
    pub c: f64,
    /// `B + n`
    pub l_eff: f64,
    /// `ℓ(ℓ + 1)`
    pub separation_lambda: f64,
}

impl AngularSolution {
    /// Jacobi parameters `(B + sC, B − sC)` with `s = sign(γ_eff)`.
    ///
    /// The first is twice the exponent of `(1 − x)` in Θ, the second of
    /// `(1 + x)`.
    pub fn jacobi_params(&self) -> (f64, f64) {
        let c = if self.gamma_eff < 0.0 { -self.c } else { self.c };
        (self.b + c, self.b - c)
    }
}

pub fn effective_l(m: i32, beta_eff: f64, gamma_eff: f64, n: u32) -> Result<AngularSolution> {
    let shifted = (m as f64).powi(2) + beta_eff;
    let gamma_abs = gamma_eff.abs();
    if !(shifted >= gamma_abs) {
        return Err(Error::ComplexU { shifted, gamma_abs });
    }
    let u = ((shifted - gamma_abs) * (shifted + gamma_abs)).sqrt();
    let b = (0.5 * (shifted + u)).sqrt();
    // B·C = |γ|/2 avoids the cancellation in (m² + β − u)
    let c = if b > 0.0 { gamma_abs / (2.0 * b) } else { 0.0 };
    let l_eff = b + n as f64;
    Ok(AngularSolution { polar: n, beta_eff, gamma_eff, u, b, c, l_eff, separation_lambda: l_eff * (l_eff + 1.0) })
}

/// `M (n'² − α²/4) / (n'² + α²/4)` with `n' = N + ℓ + 1`.
pub fn radial_energy(radial: u32, l_eff: f64, alpha: f64, mass: f64) -> f64 {
    let principal = radial as f64 + l_eff + 1.0;
    let p2 = principal * principal;
    let a = 0.25 * alpha * alpha;
    mass * (p2 - a) / (p2 + a)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Converged when `|ε − g(ε)| ≤ tol · M`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-12, max_iter: 200 }
    }
}

/// A converged bound state with its normalization data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundState {
    pub qn: QuantumNumbers,
    pub mass: f64,
    pub energy: f64,
    pub angular: AngularSolution,
    /// `z/r` in the Laguerre argument, `2√(M² − ε²)`.
    pub radial_scale: f64,
    pub norm_radial: f64,
    pub norm_angular: f64,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
}

impl BoundState {
    /// `ε − M`
    pub fn binding(&self) -> f64 {
        self.energy - self.mass
    }

    /// `n' = N + ℓ + 1`
    pub fn principal(&self) -> f64 {
        self.qn.radial as f64 + self.angular.l_eff + 1.0
    }

    /// `√(M² − ε²)`
    pub fn eta(&self) -> f64 {
        0.5 * self.radial_scale
    }

    /// Coulomb coupling `2ηn'`, equal to `c(ε + M)|α|` at the fixed point.
    pub fn coulomb_coupling(&self) -> f64 {
        2.0 * self.eta() * self.principal()
    }

    /// The state with radial number `radial` in the Coulomb problem of the
    /// same coupling and `ℓ`, so that `η = g/(2n')`. Radial functions of
    /// this family are mutually orthogonal; the energy is left unchanged.
    pub fn with_fixed_coupling(&self, radial: u32) -> Result<BoundState> {
        let g = self.coulomb_coupling();
        let principal = radial as f64 + self.angular.l_eff + 1.0;
        let eta = g / (2.0 * principal);
        Ok(BoundState {
            qn: QuantumNumbers { radial, ..self.qn },
            radial_scale: 2.0 * eta,
            norm_radial: radial_norm(radial, self.angular.l_eff, eta)?,
            ..*self
        })
    }

    /// The angular state with polar number `polar` at the same `β_eff`, `γ_eff`.
    /// Only the angular factor of the result is meaningful.
    pub fn with_polar(&self, polar: u32) -> Result<BoundState> {
        let angular = effective_l(self.qn.m, self.angular.beta_eff, self.angular.gamma_eff, polar)?;
        Ok(BoundState {
            qn: QuantumNumbers { polar, ..self.qn },
            angular,
            norm_angular: angular_norm(&angular)?,
            ..*self
        })
    }

    pub fn radial(&self, r: f64) -> f64 {
        radial_wavefunction(self, r)
    }

    pub fn angular(&self, x: f64) -> f64 {
        angular_wavefunction(self, x)
    }
}

/// Solves `ε = g(ε)` where `g` composes the radial energy with the effective
/// `ℓ` of the angular equation at `β_eff = c(ε+M)β`, `γ_eff = c(ε+M)γ`.
///
/// Fixed-point iteration (undamped, switching to `ω = 0.5` once the residual
/// stops decreasing) runs for at most `max_iter/2` steps; bisection on
/// `ε − g(ε)` over the feasible part of `(−M, M)` takes over after that.
pub fn solve_bound_state(p: &PotentialParams, qn: QuantumNumbers, opts: SolveOptions) -> Result<BoundState> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {}", opts.tol)));
    }
    if opts.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be positive".into()));
    }
    let mass = p.mass;
    let c = p.coupling.factor() as f64;
    let (alpha, beta, gamma) = (c * p.alpha, c * p.beta, c * p.gamma);
    let g = |eps: f64| -> Result<(f64, AngularSolution)> {
        let xi_sq = eps + mass;
        let ang = effective_l(qn.m, xi_sq * beta, xi_sq * gamma, qn.polar)?;
        Ok((radial_energy(qn.radial, ang.l_eff, alpha, mass), ang))
    };

    // u is real for ε + M ≤ m²/(|γ| − β) when |γ| > β
    let m_sq = (qn.m as f64).powi(2);
    let mut upper = mass;
    if gamma.abs() > beta {
        upper = upper.min(m_sq / (gamma.abs() - beta) - mass);
    }
    if upper <= -mass {
        return Err(Error::ComplexU { shifted: m_sq + 2.0 * mass * beta, gamma_abs: 2.0 * mass * gamma.abs() });
    }
    let threshold = opts.tol * mass;

    let principal0 = qn.free_principal() as f64;
    let mut eps = (mass * (1.0 - alpha * alpha / (2.0 * principal0 * principal0))).clamp(-mass, upper);
    let mut omega = 1.0;
    let mut prev_residual = f64::INFINITY;
    let mut iterations = 0;
    let mut fixed = None;
    while iterations <= opts.max_iter / 2 {
        let Ok((geps, ang)) = g(eps) else { break };
        let residual = (eps - geps).abs();
        if residual <= threshold {
            fixed = Some((eps, ang, residual));
            break;
        }
        if residual >= prev_residual {
            if omega < 1.0 {
                break;
            }
            omega = 0.5;
        }
        prev_residual = residual;
        eps = ((1.0 - omega) * eps + omega * geps).clamp(-mass, upper);
        iterations += 1;
    }

    let (eps, ang, residual) = match fixed {
        Some(found) => found,
        None => bisect_fixed_point(&g, -mass, upper, threshold, opts.max_iter, &mut iterations)?,
    };
    if eps >= mass || eps <= -mass {
        return Err(Error::NoBoundState);
    }
    assemble_state(qn, mass, eps, ang, iterations, residual)
}

fn bisect_fixed_point<G>(
    g: &G,
    lower: f64,
    upper: f64,
    threshold: f64,
    max_iter: usize,
    iterations: &mut usize,
) -> Result<(f64, AngularSolution, f64)>
where
    G: Fn(f64) -> Result<(f64, AngularSolution)>,
{
    let h = |e: f64| g(e).map(|(ge, ang)| (e - ge, ang));
    let (mut lo, mut hi) = (lower, upper);
    let (h_lo, _) = h(lo)?;
    let (h_hi, ang_hi) = h(hi)?;
    if h_lo > 0.0 {
        return Err(Error::NoBoundState);
    }
    if h_hi < 0.0 {
        // the root lies where u is complex
        let shifted = ang_hi.b * ang_hi.b + ang_hi.c * ang_hi.c;
        return Err(Error::ComplexU { shifted, gamma_abs: ang_hi.gamma_eff.abs() });
    }
    if h_hi.abs() <= threshold {
        return Ok((hi, ang_hi, h_hi.abs()));
    }
    let mut last = (hi, h_hi);
    while *iterations < max_iter {
        *iterations += 1;
        let mid = 0.5 * (lo + hi);
        let (h_mid, ang) = h(mid)?;
        if h_mid.abs() <= threshold || (hi - lo) <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
            if h_mid.abs() <= threshold {
                return Ok((mid, ang, h_mid.abs()));
            }
            last = (mid, h_mid);
            break;
        }
        if h_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        last = (mid, h_mid);
    }
    Err(Error::NoConvergence { iterations: *iterations, residual: last.1.abs(), energy: last.0 })
}

fn assemble_state(
    qn: QuantumNumbers,
    mass: f64,
    energy: f64,
    angular: AngularSolution,
    iterations: usize,
    residual: f64,
) -> Result<BoundState> {
    let eta = ((mass - energy) * (mass + energy)).sqrt();
    let norm_radial = radial_norm(qn.radial, angular.l_eff, eta)?;
    let norm_angular = angular_norm(&angular)?;
    Ok(BoundState {
        qn,
        mass,
        energy,
        angular,
        radial_scale: 2.0 * eta,
        norm_radial,
        norm_angular,
        iterations,
        converged: true,
        residual,
    })
}

/// `C = √(η N! / (n' Γ(N + 2ℓ + 2)))`
pub fn radial_norm(radial: u32, l: f64, eta: f64) -> Result<f64> {
    let nr = radial as f64;
    let principal = nr + l + 1.0;
    let ln = 0.5 * (eta.ln() + log_gamma(nr + 1.0)? - principal.ln() - log_gamma(nr + 2.0 * l + 2.0)?);
    Ok(ln.exp())
}

/// `N_n = √((2n + 2B + 1) n! Γ(n + 2B + 1) / (2^{2B+1} Γ(n + a + 1) Γ(n + b + 1)))`
pub fn angular_norm(angular: &AngularSolution) -> Result<f64> {
    let (ja, jb) = angular.jacobi_params();
    let n = angular.polar as f64;
    let b = angular.b;
    let ln = 0.5
        * ((2.0 * n + 2.0 * b + 1.0).ln() + log_gamma(n + 1.0)? + log_gamma(n + 2.0 * b + 1.0)?
            - (2.0 * b + 1.0) * std::f64::consts::LN_2
            - log_gamma(n + ja + 1.0)?
            - log_gamma(n + jb + 1.0)?);
    Ok(ln.exp())
}

/// `R(r) = C z^{ℓ+1} e^{−z/2} L_N^{(2ℓ+1)}(z)` with `z = 2ηr`,
/// normalized to `∫_0^∞ R² dr = 1`.
pub fn radial_wavefunction(state: &BoundState, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let l = state.angular.l_eff;
    let z = state.radial_scale * r;
    // combine the power and exponential in log space to survive large n'
    let envelope = ((l + 1.0) * z.ln() - 0.5 * z).exp();
    state.norm_radial * envelope * laguerre_assoc(state.qn.radial as usize, 2.0 * l + 1.0, z)
}

/// `Θ(x) = N_n (1−x)^{a/2} (1+x)^{b/2} P_n^{(a,b)}(x)`, `x = cosθ`.
pub fn angular_wavefunction(state: &BoundState, x: f64) -> f64 {
    let (a, b) = state.angular.jacobi_params();
    let x = x.clamp(-1.0, 1.0);
    let envelope = (1.0 - x).powf(0.5 * a) * (1.0 + x).powf(0.5 * b);
    state.norm_angular * envelope * jacobi_poly(state.angular.polar as usize, a, b, x)
}

/// `Φ_m(φ) = e^{imφ}/√(2π)`
pub fn azimuthal_wavefunction(m: i32, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * std::f64::consts::PI).sqrt(), m as f64 * phi)
}

/// `(ε − M) / (−Mα²/(2n'²))`, which tends to 1 as `α → 0`.
pub fn nonrel_limit_check(p: &PotentialParams, qn: QuantumNumbers, opts: SolveOptions) -> Result<f64> {
    let alpha = p.coupling.factor() as f64 * p.alpha;
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let state = solve_bound_state(p, qn, opts)?;
    let principal = state.principal();
    let reference = -p.mass * alpha * alpha / (2.0 * principal * principal);
    Ok(state.binding() / reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn params(alpha: f64, beta: f64, gamma: f64) -> PotentialParams {
        PotentialParams::new(alpha, beta, gamma, 1.0).unwrap()
    }

    #[test]
    fn potential_examples() {
        assert_relative_eq!(params(1.0, 0.0, 0.0).potential_value(2.0, FRAC_PI_2).unwrap(), 0.5);
        assert_relative_eq!(params(0.0, 1.0, 0.0).potential_value(1.0, FRAC_PI_2).unwrap(), 1.0);
        assert!(params(0.0, 0.0, 1.0).potential_value(1.0, FRAC_PI_2).unwrap().abs() < 1e-15);
        assert!(params(1.0, 0.0, 0.0).potential_value(0.0, 1.0).is_err());
        assert!(params(1.0, 0.0, 0.0).potential_value(1.0, 0.0).is_err());
        assert!(params(1.0, 0.0, 0.0).potential_value(1.0, PI).is_err());
    }

    #[test]
    fn invalid_params() {
        assert!(PotentialParams::new(0.1, 0.0, 0.0, 0.0).is_err());
        assert!(PotentialParams::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn effective_l_examples() {
        let a = effective_l(2, 0.0, 0.0, 1).unwrap();
        assert_eq!((a.u, a.b, a.c, a.l_eff), (4.0, 2.0, 0.0, 3.0));
        let a = effective_l(0, 2.0, 2.0, 0).unwrap();
        assert_relative_eq!(a.u, 0.0);
        assert_relative_eq!(a.b, 1.0);
        assert_relative_eq!(a.c, 1.0);
        assert_relative_eq!(a.l_eff, 1.0);
        let a = effective_l(1, 3.0, 0.0, 2).unwrap();
        assert_eq!((a.u, a.b, a.c, a.l_eff), (4.0, 2.0, 0.0, 4.0));
        assert_eq!(a.separation_lambda, 20.0);
        assert!(matches!(effective_l(0, 0.0, 5.0, 0), Err(Error::ComplexU { .. })));
    }

    #[test]
    fn jacobi_params_follow_gamma_sign() {
        let pos = effective_l(0, 2.0, 2.0, 0).unwrap().jacobi_params();
        let neg = effective_l(0, 2.0, -2.0, 0).unwrap().jacobi_params();
        assert_relative_eq!(pos.0, 2.0);
        assert_relative_eq!(pos.1, 0.0);
        assert_relative_eq!(neg.0, 0.0);
        assert_relative_eq!(neg.1, 2.0);
    }

    #[test]
    fn radial_energy_examples() {
        assert_eq!(radial_energy(0, 0.0, 2.0, 1.0), 0.0);
        assert_eq!(radial_energy(0, 0.0, 0.0, 1.0), 1.0);
        assert_relative_eq!(radial_energy(0, 1.0, 0.2, 1.0), 3.99 / 4.01, max_relative = 1e-15);
        assert_relative_eq!(radial_energy(0, 1.0, 0.2, 1.0), 0.99501246882793, max_relative = 1e-13);
    }

    #[test]
    fn solve_examples() {
        let opts = SolveOptions::default();
        let s = solve_bound_state(&params(0.2, 0.0, 0.0), QuantumNumbers::new(0, 0, 1), opts).unwrap();
        assert_eq!(s.iterations, 1);
        assert!(s.converged);
        assert_relative_eq!(s.energy, 3.99 / 4.01, max_relative = 1e-14);

        let s = solve_bound_state(&params(0.2, 0.0, 0.0), QuantumNumbers::new(2, 1, 1), opts).unwrap();
        assert_relative_eq!(s.angular.l_eff, 2.0);
        assert_relative_eq!(s.energy, 24.99 / 25.01, max_relative = 1e-14);

        let s = solve_bound_state(&params(0.1, 0.05, 0.02), QuantumNumbers::new(0, 0, 1), opts).unwrap();
        assert!(s.converged && s.residual <= opts.tol);
        assert!(s.energy < 1.0 && s.energy > 0.99);
    }

    #[test]
    fn solve_failures() {
        let opts = SolveOptions::default();
        let qn = QuantumNumbers::new(0, 0, 0);
        assert_eq!(solve_bound_state(&params(0.0, 0.0, 0.0), qn, opts), Err(Error::NoBoundState));
        assert!(matches!(solve_bound_state(&params(0.2, 0.0, 5.0), qn, opts), Err(Error::ComplexU { .. })));
        let bad = SolveOptions { tol: 0.0, max_iter: 10 };
        assert!(matches!(solve_bound_state(&params(0.2, 0.0, 0.0), qn, bad), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn nu_problem_reductions() {
        let p = params(0.0, 0.0, 0.0);
        let radial = radial_nu_problem(&p, &0.6, &0.0).unwrap();
        let st = radial.sigma_tilde();
        assert_eq!(st.degree(), 2);
        assert_relative_eq!(st.coeff(2), -0.64, max_relative = 1e-15);
        assert_eq!((st.coeff(0), st.coeff(1)), (0.0, 0.0));
        let angular = angular_nu_problem(&p, &0.6, 0, &6.0).unwrap();
        assert_eq!(angular.sigma_tilde(), &Poly::quadratic(6.0, 0.0, -6.0));
        assert!(matches!(radial_nu_problem(&p, &1.0, &0.0), Err(Error::UnboundEnergy { .. })));
    }

    #[test]
    fn wavefunction_boundaries() {
        let opts = SolveOptions::default();
        let s = solve_bound_state(&params(0.2, 0.0, 0.0), QuantumNumbers::new(0, 0, 0), opts).unwrap();
        assert_eq!(s.radial(0.0), 0.0);
        for x in [-0.9, 0.0, 0.5] {
            assert_relative_eq!(s.angular(x), std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-14);
        }
        let s = solve_bound_state(&params(0.2, 0.3, 0.1), QuantumNumbers::new(0, 1, 1), opts).unwrap();
        assert!(s.angular(1.0).abs() < 1e-300 && s.angular(-1.0).abs() < 1e-300);
    }

    #[test]
    fn azimuthal() {
        let a = 1.0 / (2.0 * PI).sqrt();
        for phi in [0.0, 1.0, 4.0] {
            assert_relative_eq!(azimuthal_wavefunction(0, phi).re, a, max_relative = 1e-15);
            assert_relative_eq!(azimuthal_wavefunction(3, phi).norm(), a, max_relative = 1e-15);
        }
        assert_relative_eq!(azimuthal_wavefunction(2, FRAC_PI_2).re, -a, max_relative = 1e-14);
    }

    #[test]
    fn nonrelativistic_limit() {
        let opts = SolveOptions::default();
        let qn = QuantumNumbers::new(0, 0, 1);
        let r = nonrel_limit_check(&params(1e-2, 0.0, 0.0), qn, opts).unwrap();
        assert!((r - 1.0).abs() <= 1e-4, "{r}");
        let r = nonrel_limit_check(&params(1e-3, 0.0, 0.0), qn, opts).unwrap();
        assert!((r - 1.0).abs() <= 1e-6, "{r}");
        assert_eq!(nonrel_limit_check(&params(0.0, 0.0, 0.0), qn, opts).unwrap(), 1.0);
    }

    #[test]
    fn degeneracy_in_free_principal() {
        // with β = γ = 0 the energy depends on N + |m| + n only
        let opts = SolveOptions::default();
        let p = params(0.3, 0.0, 0.0);
        let e = |n, l, m| solve_bound_state(&p, QuantumNumbers::new(n, l, m), opts).unwrap().energy;
        assert!((e(2, 0, 0) - e(0, 1, 1)).abs() <= 1e-14);
        assert!((e(1, 1, 0) - e(0, 0, -2)).abs() <= 1e-14);
    }
}
