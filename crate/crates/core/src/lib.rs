//! Means of symmetric positive definite matrices and numerical checks of
//! complementary operator inequalities under unital positive linear maps.
//!
//! The crate is organised bottom-up:
//!
//! - [`symmat`]: dense symmetric matrices, Jacobi eigensolver, functional
//!   calculus, Loewner order, plain-text matrix files.
//! - [`thompson`]: relative spectral bounds and the Thompson metric.
//! - [`kantorovich`]: the generalized Kantorovich constant `K(h, ν)`.
//! - [`means`]: weighted geometric, arithmetic, harmonic, power, Karcher and
//!   Ando-Li-Mathias means.
//! - [`posmaps`]: a closed catalog of unital positive linear maps.
//! - [`verify`]: seeded instance generation, per-inequality checkers, worked
//!   examples and the trial-suite runner.
//! - [`cli`]: the `spdmeans` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod kantorovich;
pub mod means;
pub mod posmaps;
pub mod symmat;
pub mod thompson;
pub mod verify;

pub use config::NumericConfig;
pub use error::{Error, Result};
pub use symmat::{Matrix, SpdMatrix, SymMatrix};
