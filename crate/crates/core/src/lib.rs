//! Exact bound states of the Klein-Gordon equation with equal scalar and
//! vector ring-shaped non-central potentials
//!
//! ```text
//! V(r, θ) = α/r + β/(r² sin²θ) + γ cosθ/(r² sin²θ)
//! ```
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`]: low-degree polynomials over an exact ([`Rational`]) or
//!   floating-point scalar.
//! - [`nu`]: the Nikiforov-Uvarov reduction of
//!   `ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0`.
//! - [`special`]: Laguerre/Jacobi recurrences, log-Gamma and Gauss rules.
//! - [`model`]: the physics layer (separation of variables, closed-form
//!   spectrum, self-consistent energies, normalized wavefunctions).
//! - [`oracle`]: finite-difference Sturm-Liouville solvers used to check the
//!   closed forms. It shares no solution formulas with [`model`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod poly;
pub mod special;

pub use error::{Error, Result};
pub use model::{AngularSolution, BoundState, Coupling, PotentialParams, QuantumNumbers, SolveOptions};
pub use nu::{Family, NuBranch, NuProblem, NuQuantization, NuSolution};
pub use oracle::GridSpec;
pub use poly::{Poly, Rational, Scalar};
