//! Exact arithmetic substrate: rationals, cyclotomic fields, roots of unity and
//! radical reals.

pub mod cyclo;
pub mod field;
pub mod hp;
pub mod poly;
pub mod radical;
pub mod rat;
pub mod root;

pub use cyclo::CycloElem;
pub use field::Field;
pub use poly::DensePoly;
pub use radical::{radical_less_than_one, radical_refine, RadicalReal};
pub use rat::{int, parse_rat, rat, rat_to_string, Rat};
pub use root::{orbit_of_root, RootOfUnity};
