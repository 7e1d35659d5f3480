//! Exact computation and verification of character series for principal
//! subspaces of affine sl2 and sl3.
//!
//! The crate is organized in four layers:
//!
//! - [`qcore`]: exact rationals, factored q-Pochhammer expressions, and
//!   deterministic expansion to truncated bivariate series with windowed
//!   q-Laurent coefficients;
//! - [`sl2`]: characters of sl2 principal subspaces — enumeration oracle,
//!   fermionic and bosonic sums, their recursion, and the combinatorial
//!   apparatus behind the bosonic formula;
//! - [`sl3`]: sl3 small principal subspaces, the bosonic series for the
//!   two-parameter module families, their recursions and boundary
//!   identities, fermionic sums, and the six-term vacuum-character
//!   formulas;
//! - [`toda`]: the coefficient functions of the quantum Toda eigenfunction,
//!   their recursions and decomposition, and the quantum-group
//!   Gelfand-Tsetlin/Whittaker layer (exact where rational, high-precision
//!   numeric where square roots enter).
//!
//! All series identities are certified on explicit truncation windows
//! (total z-degree plus a q-exponent range); everything is deterministic
//! and immutable, so callers may freely parallelize over parameter sweeps.

pub mod qcore;
pub mod rat;
pub mod sl2;
pub mod sl3;
pub mod toda;

pub use qcore::{Orientation, Series2, ZqMonomial};
pub use rat::Rat;

use thiserror::Error;

/// Errors from construction, expansion, and verification entry points.
#[derive(Debug, Error)]
pub enum QError {
    #[error("infinite product over pure q power with non-positive exponent: ({base})_inf")]
    IllFormedInfiniteProduct { base: ZqMonomial },
    #[error("cannot expand factor with mixed-sign oriented base {base}")]
    MixedSignBase { base: ZqMonomial },
    #[error("no expansion for infinite factor with base {base} in this orientation")]
    NoExpansion { base: ZqMonomial },
    #[error("base reduces to 1; factor cannot be expanded")]
    UnitBase,
    #[error("orientation mismatch between series operands")]
    OrientationMismatch,
    #[error("expression contains an infinite or inverted factor where a Laurent polynomial is required")]
    NotPolynomial,
    #[error("invalid parameters: {0}")]
    Param(String),
}
