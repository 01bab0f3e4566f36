//! Search for relations `sum h_i g_i(z^{mu_1}) = 0` with coefficients in the
//! ring of power series in `z^{mu_2}, ..., z^{mu_r}` with polynomial support
//! in `z`, truncated at a total degree.

use serde::{Deserialize, Serialize};

use crate::cones::{cone_member, line_cone_intersection, LineConeInstance, RationalCone};
use crate::error::{Error, Result};
use crate::mahler::multi::{compositions, dependent};
use crate::mahler::{substitute_monomial, MPoly, Poly};
use crate::numbers::field::nullspace;
use crate::numbers::{CycloElem, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityInstance {
    /// Univariate series `g_i`.
    pub series: Vec<Vec<CycloElem>>,
    /// `mu_1, ..., mu_r`.
    pub mus: Vec<Vec<u32>>,
    /// Total-degree truncation `N`.
    pub truncation: u64,
    /// Bound on the total degree of the polynomial part.
    pub support: u64,
    pub check_preconditions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PurityRelation {
    /// Class representative `lambda` carrying the relation.
    pub fiber: Vec<u32>,
    /// The coefficients `h_i`.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PurityReport {
    pub truncation: u64,
    pub support: u64,
    pub fibers_checked: usize,
    /// Fibers too short to carry an overdetermined system.
    pub fibers_skipped: usize,
    /// Fibers whose support was cut to the largest overdetermined degree.
    pub fibers_capped: usize,
    /// Fibers along which the intersection with the cone is unbounded.
    pub unbounded_fibers: usize,
    pub relation: Option<PurityRelation>,
    pub verified: bool,
    pub verdict: String,
}

fn to_i64(v: &[u32]) -> Vec<i64> {
    v.iter().map(|&x| i64::from(x)).collect()
}

fn check_preconditions(mus: &[Vec<u32>]) -> Result<()> {
    for i in 0..mus.len() {
        for j in i + 1..mus.len() {
            if dependent(&mus[i], &mus[j]) {
                return Err(Error::DependentExponents { i, j });
            }
        }
    }
    if mus.len() > 1 {
        let t = mus[0].len();
        let cone = RationalCone::from_ints(t, &mus[1..].iter().map(|m| to_i64(m)).collect::<Vec<_>>())?;
        let x: Vec<Rat> = mus[0].iter().map(|&m| Rat::from_integer(m.into())).collect();
        if cone_member(&x, &cone)?.member {
            return Err(Error::Invalid(
                "first exponent vector lies in the cone of the others".into(),
            ));
        }
    }
    Ok(())
}

/// Scans every class `lambda + Z mu_1`; within a class the admissible powers
/// of `z^{mu_1}` come from the line/cone intersection, and the class is
/// searched exactly for a relation among the `g_i`.
pub fn purity_check(inst: &PurityInstance) -> Result<PurityReport> {
    let m = inst.series.len();
    let Some(mu1) = inst.mus.first() else {
        return Err(Error::Invalid("no exponent vectors".into()));
    };
    let t = mu1.len();
    if m == 0 || t == 0 || inst.mus.iter().any(|v| v.len() != t) {
        return Err(Error::DimensionMismatch("exponent vectors and series".into()));
    }
    if mu1.iter().all(|&x| x == 0) {
        return Err(Error::Invalid("exponent vector must be nonzero".into()));
    }
    if inst.check_preconditions {
        check_preconditions(&inst.mus)?;
    }
    let step: u64 = mu1.iter().map(|&x| u64::from(x)).sum();
    let needed = (inst.truncation / step) as usize;
    let have = inst.series.iter().map(|g| g.len()).min().unwrap_or(0);
    if have <= needed {
        return Err(Error::TruncationTooShort {
            needed,
            got: have.saturating_sub(1),
        });
    }
    let cone = RationalCone::from_ints(t, &inst.mus[1..].iter().map(|v| to_i64(v)).collect::<Vec<_>>())?;
    let gammas: Vec<Vec<i64>> = (0..=inst.support as u32)
        .flat_map(|d| compositions(d, t))
        .map(|g| to_i64(&g))
        .collect();
    let mut report = PurityReport {
        truncation: inst.truncation,
        support: inst.support,
        fibers_checked: 0,
        fibers_skipped: 0,
        fibers_capped: 0,
        unbounded_fibers: 0,
        relation: None,
        verified: false,
        verdict: String::new(),
    };
    'fibers: for d in 0..=inst.truncation as u32 {
        for lambda in compositions(d, t) {
            if lambda.iter().zip(mu1).all(|(l, m)| l >= m) {
                continue;
            }
            let n_l = ((inst.truncation - u64::from(d)) / step) as usize;
            let li = LineConeInstance {
                lambda: to_i64(&lambda),
                mu: to_i64(mu1),
                gammas: gammas.clone(),
                cone: cone.clone(),
            };
            let support: Vec<usize> = match line_cone_intersection(&li) {
                Ok(ks) => {
                    let ks: Vec<usize> = ks.into_iter().map(|k| k as usize).filter(|&k| k <= n_l).collect();
                    if ks.is_empty() {
                        continue;
                    }
                    if n_l < m {
                        report.fibers_skipped += 1;
                        continue;
                    }
                    let cap = (n_l - m) / (m + 1);
                    if ks.iter().any(|&k| k > cap) {
                        report.fibers_capped += 1;
                    }
                    ks.into_iter().filter(|&k| k <= cap).collect()
                }
                Err(Error::UnboundedIntersection) => {
                    report.unbounded_fibers += 1;
                    (0..=n_l).collect()
                }
                Err(e) => return Err(e),
            };
            if support.is_empty() {
                continue;
            }
            report.fibers_checked += 1;
            let cols = m * support.len();
            let zero = CycloElem::from_int(0);
            let rows: Vec<Vec<CycloElem>> = (0..=n_l)
                .map(|n| {
                    (0..cols)
                        .map(|c| {
                            let (i, k) = (c / support.len(), support[c % support.len()]);
                            if n >= k {
                                inst.series[i][n - k].clone()
                            } else {
                                zero.clone()
                            }
                        })
                        .collect()
                })
                .collect();
            if let Some(v) = nullspace(&rows, cols).into_iter().next() {
                let hs: Vec<MPoly> = v
                    .chunks(support.len())
                    .map(|chunk| {
                        let mut coeffs = vec![zero.clone(); support.last().map_or(0, |k| k + 1)];
                        for (c, &k) in chunk.iter().zip(&support) {
                            coeffs[k] = c.clone();
                        }
                        MPoly::from_univariate(&Poly::new(coeffs), mu1, &lambda)
                    })
                    .collect();
                report.verified = verify_relation(&hs, inst)?;
                report.relation = Some(PurityRelation {
                    fiber: lambda,
                    coefficients: hs.iter().map(|h| h.to_expr()).collect(),
                });
                break 'fibers;
            }
        }
    }
    report.verdict = match (&report.relation, report.verified) {
        (None, _) => format!(
            "no relation up to (N = {}, support = {})",
            inst.truncation, inst.support
        ),
        (Some(_), true) => "relation found and verified".into(),
        (Some(_), false) => "relation found but failed verification".into(),
    };
    Ok(report)
}

/// `sum h_i g_i(z^{mu_1}) = 0` up to total degree `N`, by direct expansion.
pub fn verify_relation(hs: &[MPoly], inst: &PurityInstance) -> Result<bool> {
    let mu1 = &inst.mus[0];
    let mut acc = MPoly::zero(mu1.len());
    for (h, g) in hs.iter().zip(&inst.series) {
        let sub = substitute_monomial(g, mu1, inst.truncation)?;
        acc = acc.add(&h.mul(&sub).truncate(inst.truncation));
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::MahlerSystem;

    fn fredholm(n: usize) -> Vec<CycloElem> {
        let s: MahlerSystem =
            serde_json::from_str(r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#)
                .unwrap();
        s.expand(n).unwrap().series[0].clone()
    }

    fn one(n: usize) -> Vec<CycloElem> {
        let mut v = vec![CycloElem::from_int(0); n + 1];
        v[0] = CycloElem::from_int(1);
        v
    }

    #[test]
    fn independent_pair() {
        let inst = PurityInstance {
            series: vec![vec![CycloElem::from_int(1); 13], fredholm(12)],
            mus: vec![vec![1, 0], vec![0, 1]],
            truncation: 12,
            support: 6,
            check_preconditions: true,
        };
        let r = purity_check(&inst).unwrap();
        assert!(r.relation.is_none(), "{r:?}");
        assert!(r.fibers_checked > 0);
        assert_eq!(r.verdict, "no relation up to (N = 12, support = 6)");
    }

    #[test]
    fn proportional_exponents() {
        let mut inst = PurityInstance {
            series: vec![one(12), fredholm(12)],
            mus: vec![vec![1, 0], vec![1, 0]],
            truncation: 12,
            support: 2,
            check_preconditions: true,
        };
        assert_eq!(purity_check(&inst), Err(Error::DependentExponents { i: 0, j: 1 }));
        inst.check_preconditions = false;
        let r = purity_check(&inst).unwrap();
        assert!(r.verified && r.unbounded_fibers > 0);
        inst.mus = vec![vec![1, 0], vec![2, 0]];
        let r = purity_check(&inst).unwrap();
        assert!(r.verified);
    }

    #[test]
    fn cone_precondition() {
        let inst = PurityInstance {
            series: vec![one(12)],
            mus: vec![vec![1, 1], vec![1, 0], vec![0, 1]],
            truncation: 12,
            support: 2,
            check_preconditions: true,
        };
        assert!(matches!(purity_check(&inst), Err(Error::Invalid(_))));
    }
}
