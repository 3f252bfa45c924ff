//! Exact q-series machinery for radial Fourier eigenfunctions that vanish on
//! the lattice radii `sqrt(2m)`, built from quasimodular and logarithmic
//! modular forms.

pub mod arith;
pub mod error;
pub mod qseries;

pub use error::{Error, Result};
pub use qseries::{Exp, QSeries, Unit, Valuation};
pub mod diff;
pub mod forms;
pub mod linalg;
pub mod poly;
pub mod plus;
pub mod psi;
pub mod minus;
pub mod recurrence;
pub mod positivity;
pub mod evaluator;
pub mod cli;
