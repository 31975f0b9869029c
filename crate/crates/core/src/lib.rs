//! Chern-class calculus, Riemann–Roch and the classification of vector
//! bundles without intermediate cohomology (ACM bundles) on the index-two
//! Fano threefolds `V_3`, `V_4`, `V_5`.
//!
//! All arithmetic is exact. The modules are layered:
//!
//! - [`chow`]: Chern data on `V_d`, twists, Whitney sums, duals, Euler
//!   characteristics.
//! - [`catalog`]: the named building-block bundles and the small-rank table.
//! - [`rank2`]: which rank-two ACM bundle, if any, has given `(c1, c2)`.
//! - [`acm`]: admissible `(r, c1)` in higher rank, forced `(c2, c3)`,
//!   direct-sum witnesses and a brute-force oracle.
//! - [`cli`]: the `fano-acm` command-line front end.

pub mod acm;
pub mod catalog;
pub mod chow;
pub mod cli;
mod error;
mod json;
pub mod rank2;
pub mod rational;

pub use error::{Error, Result};
