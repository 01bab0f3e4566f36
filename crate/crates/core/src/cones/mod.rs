//! Exact rational polyhedral cones: a simplex solver, membership with
//! certificates, basis extraction, simplicial enclosures and line/cone
//! intersections.

pub mod cone;
pub mod intersect;
pub mod lp;

pub use cone::{
    cone_basis, cone_member, enclosing_simplicial_cone, primitive_integer, ConeBasis, LogWeights, Membership,
    NegativeFunctional, RationalCone, RationalFunctional,
};
pub use intersect::{bound_bd_check, line_cone_intersection, BoundReport, LineConeInstance};
pub use lp::{lp_solve, verify_lp, LpResult, LpStatus};
