use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed here")]
    ZeroInput,
    #[error("point {0} does not satisfy 0 < |x| < 1")]
    NotInUnitDisk(String),
    #[error("could not factor {0}")]
    Unfactorable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient seeds: coefficient {index} is not determined by the recurrence")]
    InsufficientSeeds { index: usize },
    #[error("inconsistent seeds: residual is nonzero at coefficient {index}")]
    InconsistentSeeds { index: usize },
    #[error("matrix entries have a pole at z = 0")]
    PoleAtOrigin,
    #[error("determinant of the system matrix is identically zero")]
    SingularSystem,
    #[error("radix mismatch: {0} vs {1}")]
    RadixMismatch(u64, u64),
    #[error("radix overflow")]
    RadixOverflow,
    #[error("exponent vectors {i} and {j} are linearly dependent")]
    DependentExponents { i: usize, j: usize },
    #[error("intersection is unbounded along the line (direction lies in the cone)")]
    UnboundedIntersection,
    #[error("truncation order {got} too short, need at least {needed}")]
    TruncationTooShort { needed: usize, got: usize },
    #[error("only scalar transformations q^l * I are supported")]
    UnsupportedTransformation,
    #[error("no cutoff reached within {k_max} orbit steps")]
    InconclusiveBeyondCutoff { k_max: usize },
    #[error("point is not regular: orbit step {k} hits a zero or pole")]
    NotRegular { k: usize },
    #[error("regularity could not be decided at orbit step {k}")]
    RegularityUndecided { k: usize },
    #[error("precision {got} digits too low, need at least {needed}")]
    PrecisionTooLow { needed: u32, got: u32 },
    #[error("half-space condition fails for generator {0}")]
    NotInHalfSpace(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
