use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial of degree {degree} exceeds the allowed degree {max}")]
    Degree { degree: usize, max: usize },

    #[error("polynomial is not a perfect square (discriminant {discriminant:e})")]
    NotAPerfectSquare { discriminant: f64 },

    #[error("value {0} has no exact rational square root")]
    InexactRational(String),

    #[error("no real k renders the radicand a perfect square")]
    NoRealK,

    #[error("no branch with negative tau' (tau' values: {tau_primes:?})")]
    NoPhysicalBranch { tau_primes: Vec<f64> },

    #[error("sigma has a double or complex root and matches no classical family")]
    UnclassifiedSigma,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("energy {epsilon} is not below the mass {mass} in magnitude")]
    UnboundEnergy { epsilon: f64, mass: f64 },

    #[error("complex u: m² + β_eff = {shifted} is below |γ_eff| = {gamma_abs}")]
    ComplexU { shifted: f64, gamma_abs: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e}, last energy {energy})")]
    NoConvergence { iterations: usize, residual: f64, energy: f64 },

    #[error("no bound state in (-M, M)")]
    NoBoundState,

    #[error("grid too coarse: error estimate {estimate:e} exceeds {limit:e}")]
    GridTooCoarse { estimate: f64, limit: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Short stable tag used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Degree { .. } => "DegreeError",
            Error::NotAPerfectSquare { .. } => "NotAPerfectSquare",
            Error::InexactRational(_) => "InexactRational",
            Error::NoRealK => "NoRealK",
            Error::NoPhysicalBranch { .. } => "NoPhysicalBranch",
            Error::UnclassifiedSigma => "UnclassifiedSigma",
            Error::Domain(_) => "DomainError",
            Error::UnboundEnergy { .. } => "UnboundEnergy",
            Error::ComplexU { .. } => "ComplexU",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NoBoundState => "NoBoundState",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
