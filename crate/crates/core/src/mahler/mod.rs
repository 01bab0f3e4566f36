//! Mahler systems: parsing, expansion, iteration, twists and multivariate
//! block systems.

pub mod multi;
pub mod ratfunc;
pub mod system;

pub use multi::{
    build_block_system, fiber_decompose, fiber_reconstruct, substitute_monomial, Block, MPoly, MultiMahlerSystem,
    MultiRatFunc,
};
pub use ratfunc::{parse_constant, poly_to_expr, Poly, RatFunc};
pub use system::{Expansion, MahlerSystem, SplitMatrix};
