//! Exact arithmetic on truncated power-series windows, built around one
//! discipline: every value knows the window it is valid on, and no
//! operation ever claims a coefficient it cannot see.
//!
//! The pieces fit together in one pipeline. [`series`] holds the truncated
//! series types over the rings in [`ring`]; [`construction`] builds the
//! lacunary generating series, enumerations, and certificate families that
//! feed everything else; [`linalg`] and [`rank`] provide exact kernels,
//! Smith forms, and finite-rank detection; [`sieve`] searches rows of a
//! bivariate window for the pillar-and-gap patterns that witness
//! infinite rank; [`homology`] presents the second-homology windows the
//! series map into. [`report`] is the JSON envelope the command-line
//! front end prints.
//!
//! No floating point appears anywhere: coefficients are exact integers,
//! residues, or rational functions, and results are reproducible
//! bit-for-bit from seeds and window sizes.

pub mod acceptance;
pub mod cli;
pub mod construction;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod rank;
pub mod report;
pub mod ring;
pub mod series;
pub mod sieve;
pub mod textform;

pub use error::{Error, Result};
