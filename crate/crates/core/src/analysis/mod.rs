//! Semantic checks and oracles: regularity, admissibility, evaluation,
//! truncation-based independence, purity instances and value relations.

pub mod admissible;
pub mod eval;
pub mod linindep;
pub mod point;
pub mod purity;
pub mod regular;
pub mod relations;

pub use admissible::{admissibility_check, AdmissibilityReport};
pub use eval::{eval_value, EvalOptions, EvalResult};
pub use linindep::{linear_independence_qz, IndependenceUpTo};
pub use point::Point;
pub use purity::{purity_check, PurityInstance, PurityReport};
pub use regular::{regular_point_check, RegularityReport, RegularityVerdict, Vanishing};
pub use relations::{parse_decimal, value_relation_search, RelationSearchReport};
