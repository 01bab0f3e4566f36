//! The set `{k in N : lambda + k mu - gamma in C for some gamma in Gamma}` and
//! the distance bound on its elements.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cone::{cone_member, dot, ints, RationalCone};
use super::lp::{lp_solve, LpStatus};
use crate::error::{Error, Result};
use crate::numbers::rat::{serde_rat, serde_rat_vec};
use crate::numbers::Rat;

/// Input of a line/cone intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineConeInstance {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub gammas: Vec<Vec<i64>>,
    pub cone: RationalCone,
}

impl LineConeInstance {
    fn check(&self) -> Result<()> {
        let t = self.cone.dim;
        if self.lambda.len() != t || self.mu.len() != t || self.gammas.iter().any(|g| g.len() != t) {
            return Err(Error::DimensionMismatch(format!("all vectors must have length {t}")));
        }
        Ok(())
    }
}

/// Real interval `[lo, hi]` of feasible `k` for one `gamma` (`None` if empty).
fn k_interval(inst: &LineConeInstance, gamma: &[i64]) -> Result<Option<(Rat, Rat)>> {
    let t = inst.cone.dim;
    let s = inst.cone.generators.len();
    // variables (k, a_1..a_s): k mu - sum a_j nu_j = gamma - lambda
    let a: Vec<Vec<Rat>> = (0..t)
        .map(|d| {
            let mut row = vec![Rat::from_integer(inst.mu[d].into())];
            row.extend(inst.cone.generators.iter().map(|g| -g[d].clone()));
            row
        })
        .collect();
    let b: Vec<Rat> = (0..t)
        .map(|d| Rat::from_integer((gamma[d] - inst.lambda[d]).into()))
        .collect();
    let flags = vec![true; s + 1];
    let mut obj = vec![Rat::zero(); s + 1];
    obj[0] = Rat::from_integer(1.into());
    let hi = lp_solve(&obj, &a, &b, &flags)?;
    match hi.status {
        LpStatus::Infeasible => return Ok(None),
        LpStatus::Unbounded => return Err(Error::UnboundedIntersection),
        LpStatus::Optimal => {}
    }
    obj[0] = Rat::from_integer((-1).into());
    let lo = lp_solve(&obj, &a, &b, &flags)?;
    let lo = -lo.optimum.expect("k >= 0 bounds the minimum");
    Ok(Some((lo, hi.optimum.unwrap())))
}

/// Exact sorted set of `k`, computed per `gamma` as the integer points of the
/// interval between the minimal and maximal feasible `k`.
pub fn line_cone_intersection(inst: &LineConeInstance) -> Result<Vec<u64>> {
    inst.check()?;
    let mut ks = std::collections::BTreeSet::new();
    for gamma in &inst.gammas {
        if let Some((lo, hi)) = k_interval(inst, gamma)? {
            let from = lo.ceil().to_integer().to_u64().unwrap_or(0);
            let to = hi.floor().to_integer().to_u64().ok_or(Error::UnboundedIntersection)?;
            ks.extend(from..=to);
        }
    }
    Ok(ks.into_iter().collect())
}

/// Evidence for `k <= B / d_lo` on every element of the intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub holds: bool,
    /// Separating functional `phi` (phi >= 0 on the cone, phi(mu) < 0).
    #[serde(with = "serde_rat_vec")]
    pub functional: Vec<Rat>,
    /// `d_lo^2 = phi(mu)^2 / |phi|^2`.
    #[serde(with = "serde_rat")]
    pub d_lo_squared: Rat,
    pub ks: Vec<u64>,
}

/// Verifies `k * |phi(mu)| / |phi| <= max_gamma (|gamma| + |lambda|)` for all
/// enumerated `k`, using only rational arithmetic.
pub fn bound_bd_check(inst: &LineConeInstance) -> Result<BoundReport> {
    inst.check()?;
    let mu = ints(&inst.mu);
    let membership = cone_member(&mu, &inst.cone)?;
    if membership.member {
        return Err(Error::Invalid("direction lies in the cone".into()));
    }
    let phi = membership.functional;
    let ks = line_cone_intersection(inst)?;
    let f = dot(&phi, &phi);
    let pm = dot(&phi, &mu).abs();
    let norm2 = |v: &[i64]| Rat::from_integer(v.iter().map(|x| x * x).sum::<i64>().into());
    let lam2 = norm2(&inst.lambda);
    let holds = ks.iter().all(|&k| {
        // (k |phi(mu)|)^2 / f compared against (|gamma| + |lambda|)^2
        let x2 = Rat::from_integer((k as i64).into()) * &pm;
        let x2 = &x2 * &x2 / &f;
        inst.gammas.iter().any(|g| {
            let g2 = norm2(g);
            at_least_squared(&g2, &lam2, &x2)
        })
    });
    let d_lo_squared = &pm * &pm / &f;
    Ok(BoundReport {
        holds,
        functional: phi,
        d_lo_squared,
        ks,
    })
}

/// `x2 <= (sqrt(s) + sqrt(t))^2`, exactly.
fn at_least_squared(s: &Rat, t: &Rat, x2: &Rat) -> bool {
    let lhs = x2 - s - t;
    if !lhs.is_positive() {
        return true;
    }
    &lhs * &lhs <= Rat::from_integer(4.into()) * s * t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(lambda: &[i64], mu: &[i64], gammas: &[&[i64]], gens: &[Vec<i64>]) -> LineConeInstance {
        LineConeInstance {
            lambda: lambda.to_vec(),
            mu: mu.to_vec(),
            gammas: gammas.iter().map(|g| g.to_vec()).collect(),
            cone: RationalCone::from_ints(lambda.len(), gens).unwrap(),
        }
    }

    #[test]
    fn examples() {
        let i1 = inst(&[0, 0], &[1, 0], &[&[3, 0]], &[vec![0, 1]]);
        assert_eq!(line_cone_intersection(&i1).unwrap(), vec![3]);
        assert!(bound_bd_check(&i1).unwrap().holds);
        let i2 = inst(&[0, 0], &[1, 0], &[&[0, 0]], &[vec![0, 1]]);
        assert_eq!(line_cone_intersection(&i2).unwrap(), vec![0]);
        let i3 = inst(&[0, 0], &[1, 0], &[&[0, 0]], &[vec![1, 0]]);
        assert_eq!(line_cone_intersection(&i3), Err(Error::UnboundedIntersection));
    }

    #[test]
    fn square_root_comparison() {
        let r = |n: i64| Rat::from_integer(n.into());
        assert!(at_least_squared(&r(4), &r(9), &r(25)));
        assert!(!at_least_squared(&r(4), &r(9), &Rat::new(2601.into(), 100.into())));
        assert!(at_least_squared(&r(2), &r(2), &r(8)));
        assert!(!at_least_squared(&r(2), &r(2), &Rat::new(81.into(), 10.into())));
    }
}
