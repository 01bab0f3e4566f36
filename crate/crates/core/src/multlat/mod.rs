//! Multiplicative lattices over the primes: factorization, relation lattices,
//! base classes and the decomposition of points into independent generators.

pub mod factor;
pub mod lattice;
pub mod lvdp;
pub mod partition;
pub mod relations;

pub use factor::{factorize, MultiplicativeCoordinates};
pub use lvdp::{lvdp_decompose, LvdPDecomposition};
pub use partition::{partition_bases, BaseClass};
pub use relations::{mult_kernel, pairwise_independent, KernelRelation, PairwiseReport};
