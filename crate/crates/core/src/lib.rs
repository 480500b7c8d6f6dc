//! Numerical laboratory for diagonal C0-semigroups.
//!
//! Every semigroup handled here is a multiplication semigroup
//! `T(t)x = (e^{λ_n t} x_n)_n` on a sequence space. For such operators the
//! semigroup, resolvent, Weiss and admissibility constants reduce to
//! suprema over modes, which are computed in closed form and cross-checked
//! against independent quadrature and grid oracles.
//!
//! Modules:
//! - [`spectra`]: eigenvalue sequences, operator symbols, truncation-aware suprema
//! - [`calculus`]: semigroup and resolvent norms, Weiss constants
//! - [`admissibility`]: infinite- and finite-time admissibility constants, Plancherel checks
//! - [`rates`]: decay-law fitting, integral-bound constants, decay/resolvent consistency
//! - [`carleson`]: operator Carleson measure scans
//! - [`certificates`]: explicit constant chains for admissibility and decay statements
//! - [`harness`]: quadrature, sup search, reports and the command-line front end

pub mod admissibility;
pub mod calculus;
pub mod carleson;
pub mod certificates;
mod error;
pub mod harness;
pub mod rates;
pub mod spectra;

pub use error::{Error, Result};
pub use spectra::{ModeSup, OperatorSymbol, Spectrum, WeightedIndexSpace};

pub use num_complex::Complex64;
