use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kg_nu::poly::parse_rational;
use kg_nu::{Coupling, PotentialParams, Scalar, SolveOptions};

/// Klein-Gordon bound states in a ring-shaped non-central potential
/// V = α/r + β/(r² sin²θ) + γ cosθ/(r² sin²θ).
///
/// Natural units ħ = c = 1; the mass sets the energy scale.
#[derive(Debug, Parser)]
#[command(name = "kgnu", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies over ranges of (N, n, m).
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Sampled radial and angular wavefunctions of one state.
    #[command(allow_negative_numbers = true)]
    Wavefunction(WavefunctionArgs),
    /// Compare closed-form results with the finite-difference oracle.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Print the Nikiforov-Uvarov reduction of the radial or angular equation.
    #[command(allow_negative_numbers = true)]
    Nu(NuArgs),
}

/// A number given on the command line, kept with its spelling so exact
/// rational input survives (`0.2`, `3/5`, `1e-3`).
#[derive(Clone, Debug, PartialEq)]
pub struct Number {
    pub text: String,
    pub value: f64,
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = match s.trim().parse::<f64>() {
            Ok(v) => v,
            Err(_) => parse_rational(s).map(|r| r.to_f64()).ok_or_else(|| format!("not a number: {s}"))?,
        };
        if !value.is_finite() {
            return Err(format!("not a finite number: {s}"));
        }
        Ok(Number { text: s.trim().to_string(), value })
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CouplingArg {
    Halved,
    Full,
}

impl From<CouplingArg> for Coupling {
    fn from(c: CouplingArg) -> Self {
        match c {
            CouplingArg::Halved => Coupling::Halved,
            CouplingArg::Full => Coupling::Full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NuFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Radial,
    Angular,
}

#[derive(Clone, Debug, Args)]
pub struct PotentialArgs {
    /// Coulomb strength α.
    #[arg(long)]
    pub alpha: Number,
    /// Ring strength β.
    #[arg(long)]
    pub beta: Number,
    /// Dipole-ring strength γ.
    #[arg(long)]
    pub gamma: Number,
    /// Particle mass M > 0.
    #[arg(long)]
    pub mass: Number,
    /// Whether the potential enters the Klein-Gordon equation with factor (ε+M) or 2(ε+M).
    #[arg(long, value_enum, default_value = "halved")]
    pub coupling: CouplingArg,
}

impl PotentialArgs {
    pub fn params(&self) -> kg_nu::Result<PotentialParams> {
        Ok(PotentialParams::new(self.alpha.value, self.beta.value, self.gamma.value, self.mass.value)?
            .with_coupling(self.coupling.into()))
    }
}

#[derive(Clone, Copy, Debug, Args)]
pub struct SolverArgs {
    /// Convergence threshold on |ε − g(ε)|/M.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = 200)]
    pub max_iter: usize,
}

impl SolverArgs {
    pub fn options(&self) -> SolveOptions {
        SolveOptions { tol: self.tol, max_iter: self.max_iter }
    }
}

#[derive(Clone, Copy, Debug, Args)]
pub struct RangeArgs {
    /// Largest radial quantum number N.
    #[arg(long = "Nmax", default_value_t = 1)]
    pub radial_max: u32,
    /// Largest polar quantum number n.
    #[arg(long = "nmax", default_value_t = 1)]
    pub polar_max: u32,
    /// Largest |m|.
    #[arg(long = "mmax", default_value_t = 1)]
    pub m_max: u32,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Radial quantum number.
    #[arg(long = "N", default_value_t = 0)]
    pub radial: u32,
    /// Polar quantum number.
    #[arg(long = "n", default_value_t = 0)]
    pub polar: u32,
    /// Azimuthal quantum number.
    #[arg(long = "m", default_value_t = 0)]
    pub m: i32,
    /// Samples per function, at least 2.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Largest radius sampled [default: (4n' + 40)/(2η), far into the exponential tail].
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    /// Points on the coarsest oracle grid.
    #[arg(long, default_value_t = 4000)]
    pub points: usize,
    /// Grid halvings used for Richardson extrapolation.
    #[arg(long, default_value_t = 2)]
    pub refine: u32,
    /// Accepted |Δε|/M and |Δλ|.
    #[arg(long, default_value_t = 1e-5)]
    pub vtol: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct NuArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Trial energy ε with |ε| < M.
    #[arg(long)]
    pub epsilon: Number,
    /// Azimuthal quantum number (angular target).
    #[arg(long, default_value_t = 0)]
    pub m: i64,
    /// Separation constant λ.
    #[arg(long)]
    pub lambda: Number,
    #[arg(long, value_enum, default_value = "json")]
    pub format: NuFormat,
}
