//! Decomposition of points of modulus below one as roots of unity times
//! nonnegative integer powers of independent radical generators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::factor::MultiplicativeCoordinates;
use crate::cones::{enclosing_simplicial_cone, LogWeights, RationalCone};
use crate::error::{Error, Result};
use crate::numbers::field::{rank, solve};
use crate::numbers::{RadicalReal, Rat, RootOfUnity};

/// `alpha_i = zeta_i * prod_j beta_j^{mu_ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LvdPDecomposition {
    /// Primes indexing the exponent space.
    pub primes: Vec<u64>,
    pub generators: Vec<RadicalReal>,
    pub torsions: Vec<RootOfUnity>,
    /// `r x t` nonnegative integer matrix.
    pub exponents: Vec<Vec<u64>>,
    /// Common denominator used to clear the cone coefficients.
    pub scale: u64,
}

impl LvdPDecomposition {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn generator_vectors(&self) -> Vec<Vec<Rat>> {
        self.generators
            .iter()
            .map(|b| self.primes.iter().map(|p| b.exponent(*p)).collect())
            .collect()
    }

    /// Checks every structural invariant against the original points;
    /// returns the name of the first failing one.
    pub fn verify(&self, alphas: &[MultiplicativeCoordinates]) -> std::result::Result<(), String> {
        if alphas.len() != self.exponents.len() || alphas.len() != self.torsions.len() {
            return Err("row count".into());
        }
        let g = self.generator_vectors();
        for (i, a) in alphas.iter().enumerate() {
            if a.torsion != self.torsions[i] {
                return Err(format!("torsion of point {i}"));
            }
            if self.exponents[i].len() != g.len() || self.exponents[i].iter().all(|m| *m == 0) {
                return Err(format!("exponent row {i}"));
            }
            let support_ok = a.free.keys().all(|p| self.primes.contains(p));
            if !support_ok {
                return Err(format!("prime support of point {i}"));
            }
            for (d, p) in self.primes.iter().enumerate() {
                let s: Rat = self.exponents[i]
                    .iter()
                    .zip(&g)
                    .map(|(m, v)| Rat::from_integer(BigInt::from(*m)) * &v[d])
                    .sum();
                if s != Rat::from_integer(BigInt::from(a.exponent(*p))) {
                    return Err(format!("reconstruction of point {i} at prime {p}"));
                }
            }
        }
        if rank(&g) != g.len() {
            return Err("generator independence".into());
        }
        if let Some(j) = self.generators.iter().position(|b| !b.less_than_one()) {
            return Err(format!("generator {j} has modulus >= 1"));
        }
        Ok(())
    }
}

fn too_large() -> Error {
    Error::Invalid("decomposition exponents exceed 64 bits".into())
}

/// Computes the decomposition through a simplicial cone enclosing the
/// free-part vectors inside the half-space `sum e_p log p < 0`.
pub fn lvdp_decompose(alphas: &[MultiplicativeCoordinates]) -> Result<LvdPDecomposition> {
    if alphas.is_empty() {
        return Err(Error::Invalid("empty point list".into()));
    }
    for a in alphas {
        if !a.abs_less_than_one() {
            return Err(Error::NotInUnitDisk(a.to_string()));
        }
    }
    let primes: Vec<u64> = alphas
        .iter()
        .flat_map(|a| a.free.keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vs: Vec<Vec<Rat>> = alphas
        .iter()
        .map(|a| {
            primes
                .iter()
                .map(|p| Rat::from_integer(BigInt::from(a.exponent(*p))))
                .collect()
        })
        .collect();
    let cone = RationalCone::new(primes.len(), vs.clone())?;
    let rays = enclosing_simplicial_cone(&cone, &LogWeights(primes.clone()))?;
    let ut: Vec<Vec<Rat>> = (0..primes.len())
        .map(|d| rays.iter().map(|u| u[d].clone()).collect())
        .collect();
    let coeffs: Vec<Vec<Rat>> = vs
        .iter()
        .map(|v| solve(&ut, v).ok_or_else(|| Error::Invalid("point outside the enclosure span".into())))
        .collect::<Result<_>>()?;
    if coeffs.iter().flatten().any(|c| c.is_negative()) {
        return Err(Error::Invalid("negative cone coefficient".into()));
    }
    let scale = coeffs.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale_rat = Rat::from_integer(scale.clone());
    let exponents = coeffs
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| (c * &scale_rat).to_integer().to_u64().ok_or_else(too_large))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let generators = rays
        .iter()
        .map(|u| {
            RadicalReal::new(
                primes
                    .iter()
                    .zip(u)
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(p, e)| (*p, e / &scale_rat))
                    .collect(),
            )
        })
        .collect();
    Ok(LvdPDecomposition {
        primes,
        generators,
        torsions: alphas.iter().map(|a| a.torsion).collect(),
        exponents,
        scale: scale.to_u64().ok_or_else(too_large)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multlat::factorize;
    use crate::numbers::rat;

    fn pts(xs: &[(i64, i64)]) -> Vec<MultiplicativeCoordinates> {
        xs.iter().map(|&(n, d)| factorize(&rat(n, d)).unwrap()).collect()
    }

    #[test]
    fn intro_points() {
        let a = pts(&[(1, 2), (1, 5), (1, 10)]);
        let d = lvdp_decompose(&a).unwrap();
        assert_eq!(d.generators[0].as_rat(), Some(rat(1, 2)));
        assert_eq!(d.generators[1].as_rat(), Some(rat(1, 5)));
        assert_eq!(d.exponents, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(d.torsions.iter().all(|z| z.is_one()));
        d.verify(&a).unwrap();
    }

    #[test]
    fn radical_generators() {
        let a = pts(&[(3, 4), (2, 9), (1, 2)]);
        let d = lvdp_decompose(&a).unwrap();
        assert_eq!(d.scale, 3);
        assert_eq!(d.generators[0].exponent(2), rat(-2, 3));
        assert_eq!(d.generators[0].exponent(3), rat(1, 3));
        assert_eq!(d.generators[1].exponent(2), rat(1, 3));
        assert_eq!(d.generators[1].exponent(3), rat(-2, 3));
        assert_eq!(d.exponents, vec![vec![3, 0], vec![0, 3], vec![2, 1]]);
        d.verify(&a).unwrap();
    }

    #[test]
    fn single_point_and_errors() {
        let a = pts(&[(1, 2)]);
        let d = lvdp_decompose(&a).unwrap();
        assert_eq!(d.exponents, vec![vec![1]]);
        assert!(matches!(lvdp_decompose(&pts(&[(3, 2)])), Err(Error::NotInUnitDisk(_))));
        assert!(lvdp_decompose(&[]).is_err());
    }

    #[test]
    fn negative_points_keep_torsion() {
        let a = pts(&[(-1, 3), (1, 2)]);
        let d = lvdp_decompose(&a).unwrap();
        assert_eq!(d.torsions[0], RootOfUnity::MINUS_ONE);
        d.verify(&a).unwrap();
    }
}
