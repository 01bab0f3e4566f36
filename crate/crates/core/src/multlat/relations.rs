//! Multiplicative relation lattices and pairwise independence.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::factor::MultiplicativeCoordinates;
use super::lattice::integer_kernel;
use crate::numbers::RootOfUnity;

/// One basis vector `k` of the relation lattice, with the exact value of
/// `prod x_i^{k_i}` (a root of unity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRelation {
    pub coefficients: Vec<i64>,
    pub torsion: RootOfUnity,
    /// Order of `torsion`: raising the relation to this power gives exactly 1.
    pub exact_multiplier: u64,
}

impl KernelRelation {
    /// Additive rendering on exponent vectors, e.g. `2·e1 = e2` (1-based).
    pub fn render_additive(&self) -> String {
        let side = |positive: bool| {
            let terms: Vec<String> = self
                .coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| if positive { **c > 0 } else { **c < 0 })
                .map(|(i, c)| match c.abs() {
                    1 => format!("e{}", i + 1),
                    a => format!("{a}·e{}", i + 1),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        let (lhs, rhs) = (side(true), side(false));
        // the side holding the lowest index goes first
        let first_pos = self.coefficients.iter().position(|c| *c > 0);
        let first_neg = self.coefficients.iter().position(|c| *c < 0);
        match (first_pos, first_neg) {
            (Some(p), Some(n)) if n < p => format!("{rhs} = {lhs}"),
            _ => format!("{lhs} = {rhs}"),
        }
    }

    /// Multiplicative rendering on the given values, e.g. `1/10 = (1/2)(1/5)`.
    pub fn render_multiplicative(&self, names: &[String]) -> String {
        let alone = |c: &[i64], sign: i64| c.iter().filter(|x| **x * sign > 0).count() == 1;
        let single_pos = alone(&self.coefficients, 1);
        let single_neg = alone(&self.coefficients, -1);
        let factor = |i: usize, c: i64| {
            let c_i = self.coefficients[i];
            let single = if c_i > 0 { single_pos } else { single_neg };
            let base = if c == 1 && single {
                names[i].clone()
            } else if names[i].contains('/') || names[i].starts_with('-') {
                format!("({})", names[i])
            } else {
                names[i].clone()
            };
            if c == 1 {
                base
            } else {
                format!("{base}^{c}")
            }
        };
        let pos: Vec<String> = (0..self.coefficients.len())
            .filter(|&i| self.coefficients[i] > 0)
            .map(|i| factor(i, self.coefficients[i]))
            .collect();
        let neg: Vec<String> = (0..self.coefficients.len())
            .filter(|&i| self.coefficients[i] < 0)
            .map(|i| factor(i, -self.coefficients[i]))
            .collect();
        let join = |v: Vec<String>| if v.is_empty() { "1".to_string() } else { v.concat() };
        let torsion = if self.torsion.is_one() {
            String::new()
        } else {
            format!(" * {}", self.torsion)
        };
        // the side with fewer factors goes on the left
        if neg.len() <= pos.len() {
            format!("{} = {}{}", join(neg), join(pos), torsion)
        } else {
            format!("{} = {}{}", join(pos), join(neg), torsion)
        }
    }
}

/// Basis of `{k : prod x_i^{k_i} is a root of unity}`.
pub fn mult_kernel(xs: &[MultiplicativeCoordinates]) -> Vec<KernelRelation> {
    let primes: BTreeSet<u64> = xs.iter().flat_map(|x| x.free.keys().copied()).collect();
    let vectors: Vec<Vec<BigInt>> = xs
        .iter()
        .map(|x| primes.iter().map(|p| BigInt::from(x.exponent(*p))).collect())
        .collect();
    integer_kernel(&vectors)
        .into_iter()
        .map(|k| {
            let coefficients: Vec<i64> = k
                .iter()
                .map(|c| c.to_i64().expect("relation coefficient fits in i64"))
                .collect();
            let torsion = xs
                .iter()
                .zip(&coefficients)
                .fold(RootOfUnity::ONE, |acc, (x, c)| acc.mul(&x.torsion.pow(*c)));
            KernelRelation {
                exact_multiplier: torsion.order(),
                coefficients,
                torsion,
            }
        })
        .collect()
}

/// Outcome of the pairwise independence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseReport {
    pub independent: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<PairWitness>,
}

/// A dependent pair `(i, j)` (0-based) with its relation over the pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub relation: KernelRelation,
    pub rendered: String,
}

/// Checks every pair; reports the first dependent pair in lexicographic order.
pub fn pairwise_independent(xs: &[MultiplicativeCoordinates]) -> PairwiseReport {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let ker = mult_kernel(&[xs[i].clone(), xs[j].clone()]);
            if let Some(rel) = ker.into_iter().next() {
                let mut full = KernelRelation {
                    coefficients: vec![0; xs.len()],
                    torsion: rel.torsion,
                    exact_multiplier: rel.exact_multiplier,
                };
                full.coefficients[i] = rel.coefficients[0];
                full.coefficients[j] = rel.coefficients[1];
                let rendered = full.render_additive();
                return PairwiseReport {
                    independent: false,
                    witness: Some(PairWitness {
                        i,
                        j,
                        relation: full,
                        rendered,
                    }),
                };
            }
        }
    }
    PairwiseReport {
        independent: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multlat::factorize;
    use crate::numbers::rat;

    fn coords(xs: &[(i64, i64)]) -> Vec<MultiplicativeCoordinates> {
        xs.iter().map(|&(n, d)| factorize(&rat(n, d)).unwrap()).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(mult_kernel(&coords(&[(1, 2), (1, 3)])).is_empty());
        let k = mult_kernel(&coords(&[(1, 2), (1, 5), (1, 10)]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].coefficients, vec![1, 1, -1]);
        assert!(k[0].torsion.is_one());
        let names: Vec<String> = ["1/2", "1/5", "1/10"].iter().map(|s| s.to_string()).collect();
        assert_eq!(k[0].render_multiplicative(&names), "1/10 = (1/2)(1/5)");
        let k = mult_kernel(&coords(&[(4, 1), (8, 1)]));
        assert_eq!(k[0].coefficients, vec![3, -2]);
    }

    #[test]
    fn torsion_is_reported() {
        let k = mult_kernel(&coords(&[(-1, 2), (1, 4)]));
        assert_eq!(k[0].coefficients, vec![2, -1]);
        assert!(k[0].torsion.is_one());
        let k = mult_kernel(&coords(&[(-1, 2), (1, 2)]));
        assert_eq!(k[0].coefficients, vec![1, -1]);
        assert_eq!(k[0].torsion, RootOfUnity::MINUS_ONE);
        assert_eq!(k[0].exact_multiplier, 2);
    }

    #[test]
    fn pairwise_examples() {
        assert!(pairwise_independent(&coords(&[(1, 2), (1, 5), (1, 10)])).independent);
        assert!(pairwise_independent(&coords(&[(2, 3), (3, 4)])).independent);
        let r = pairwise_independent(&coords(&[(1, 2), (1, 4)]));
        assert!(!r.independent);
        let w = r.witness.unwrap();
        assert_eq!((w.i, w.j), (0, 1));
        assert_eq!(w.rendered, "2·e1 = e2");
    }
}
