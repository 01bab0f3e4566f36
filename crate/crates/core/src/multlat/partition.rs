//! Grouping of radices into multiplicative-dependence classes.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::factor::factor_u64;
use crate::error::{Error, Result};

/// One class of mutually dependent radices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseClass {
    /// Indices (0-based) into the input list.
    pub members: Vec<usize>,
    /// The primitive integer `c` with every member a power of `c`.
    pub root: u64,
    /// Common radix `rho = c^{lcm}`.
    pub radix: u64,
    /// Per member `a_i` with `q_i^{a_i} = rho`.
    pub alignment: Vec<u32>,
}

/// Writes `q = c^g` with `c` not a perfect power.
pub fn primitive_root(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Invalid(format!("radix {q} must be at least 2")));
    }
    let f = factor_u64(q)?;
    let g = f.values().fold(0u32, |acc, e| acc.gcd(e));
    let c = f.iter().map(|(p, e)| p.pow(e / g)).product();
    Ok((c, g))
}

/// Partitions radices into classes; classes are ordered by their first member.
pub fn partition_bases(qs: &[u64]) -> Result<Vec<BaseClass>> {
    let mut classes: Vec<(BaseClass, Vec<u32>)> = Vec::new();
    for (i, &q) in qs.iter().enumerate() {
        let (c, g) = primitive_root(q)?;
        match classes.iter_mut().find(|(cl, _)| cl.root == c) {
            Some((cl, gs)) => {
                cl.members.push(i);
                gs.push(g);
            }
            None => classes.push((
                BaseClass {
                    members: vec![i],
                    root: c,
                    radix: 0,
                    alignment: Vec::new(),
                },
                vec![g],
            )),
        }
    }
    classes
        .into_iter()
        .map(|(mut cl, gs)| {
            let l = gs.iter().fold(1u32, |acc, g| acc.lcm(g));
            cl.radix = cl.root.checked_pow(l).ok_or(Error::RadixOverflow)?;
            cl.alignment = gs.iter().map(|g| l / g).collect();
            Ok(cl)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let c = partition_bases(&[2, 3, 2]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].members.clone(), c[0].radix), (vec![0, 2], 2));
        assert_eq!((c[1].members.clone(), c[1].radix), (vec![1], 3));
        let c = partition_bases(&[8, 4]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].radix, 64);
        assert_eq!(c[0].alignment, vec![2, 3]);
        assert_eq!(partition_bases(&[2, 6]).unwrap().len(), 2);
        assert!(partition_bases(&[1]).is_err());
    }

    fn brute_dependent(a: u64, b: u64) -> bool {
        for x in 1..=20u32 {
            for y in 1..=20u32 {
                if let (Some(p), Some(q)) = ((a as u128).checked_pow(x), (b as u128).checked_pow(y)) {
                    if p == q {
                        return true;
                    }
                }
            }
        }
        false
    }

    proptest! {
        #[test]
        fn classes_match_brute_force(qs in prop::collection::vec(2u64..40, 1..7)) {
            let classes = partition_bases(&qs).unwrap();
            let class_of = |i: usize| classes.iter().position(|c| c.members.contains(&i)).unwrap();
            for i in 0..qs.len() {
                for j in 0..qs.len() {
                    prop_assert_eq!(class_of(i) == class_of(j), brute_dependent(qs[i], qs[j]));
                }
            }
            for cl in &classes {
                for (m, a) in cl.members.iter().zip(&cl.alignment) {
                    prop_assert_eq!(qs[*m].checked_pow(*a), Some(cl.radix));
                }
            }
        }
    }
}
