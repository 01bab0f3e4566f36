//! Exact machinery for certifying algebraic independence of Mahler values at
//! pairwise multiplicatively independent points.
//!
//! The crate is organized bottom-up:
//!
//! * [`numbers`]: rationals, cyclotomic elements, roots of unity, radical reals.
//! * [`multlat`]: factorization, multiplicative relation lattices, base classes and
//!   the decomposition of points into powers of independent generators.
//! * [`cones`]: an exact simplex solver and rational cone computations.
//! * [`mahler`]: Mahler systems, expansion, iteration, twisting and block assembly.
//! * [`analysis`]: regularity, admissibility, evaluation and truncation oracles.
//! * [`certify`]: the end-to-end pipeline producing an independence certificate.

pub mod analysis;
pub mod certify;
pub mod cones;
pub mod error;
pub mod mahler;
pub mod multlat;
pub mod numbers;
pub mod selfcheck;

pub use error::{Error, Result};
pub use numbers::{CycloElem, RadicalReal, Rat, RootOfUnity};
