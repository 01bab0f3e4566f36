//! Admissibility of a pair `(T, beta)` for scalar transformations `T = r I_t`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::field::rank;
use crate::numbers::{RadicalReal, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Rank of the exponent vectors of `beta` (full rank means independent).
    pub exponent_rank: usize,
    pub independent: bool,
    pub below_one: Vec<bool>,
    /// External result taken on trust once both conditions hold.
    pub trusted_step: String,
}

/// Scalar factor `r` of `T = r I`, or `UnsupportedTransformation`.
pub fn scalar_factor(t: &[Vec<u64>]) -> Result<u64> {
    let n = t.len();
    let r = t.first().and_then(|row| row.first()).copied().unwrap_or(0);
    let ok = n > 0
        && r >= 2
        && t.iter()
            .enumerate()
            .all(|(i, row)| row.len() == n && row.iter().enumerate().all(|(j, x)| *x == if i == j { r } else { 0 }));
    if ok {
        Ok(r)
    } else {
        Err(Error::UnsupportedTransformation)
    }
}

/// True iff the exponent vectors of the `beta_j` are linearly independent and
/// every `beta_j < 1`.
pub fn admissibility_check(t: &[Vec<u64>], beta: &[RadicalReal]) -> Result<AdmissibilityReport> {
    scalar_factor(t)?;
    if beta.len() != t.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for a {}-dimensional transformation",
            beta.len(),
            t.len()
        )));
    }
    let primes: Vec<u64> = beta
        .iter()
        .flat_map(|b| b.exponents().keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<Vec<Rat>> = beta
        .iter()
        .map(|b| primes.iter().map(|p| b.exponent(*p)).collect())
        .collect();
    let exponent_rank = rank(&rows);
    let independent = exponent_rank == beta.len();
    let below_one: Vec<bool> = beta.iter().map(|b| b.less_than_one()).collect();
    Ok(AdmissibilityReport {
        admissible: independent && below_one.iter().all(|b| *b),
        exponent_rank,
        independent,
        below_one,
        trusted_step: "coordinates multiplicatively independent and of modulus below one imply \
                       admissibility for scalar transformations (external result, not mechanized)"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn diag(r: u64, n: usize) -> Vec<Vec<u64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { r } else { 0 }).collect())
            .collect()
    }

    fn rr(pairs: &[(u64, i64, i64)]) -> RadicalReal {
        RadicalReal::from_pairs(&pairs.iter().map(|&(p, n, d)| (p, rat(n, d))).collect::<Vec<_>>())
    }

    #[test]
    fn examples() {
        let b = [rr(&[(2, -1, 1)]), rr(&[(5, -1, 1)])];
        assert!(admissibility_check(&diag(2, 2), &b).unwrap().admissible);
        let b = [rr(&[(2, -1, 1)]), rr(&[(2, -2, 1)])];
        let r = admissibility_check(&diag(2, 2), &b).unwrap();
        assert!(!r.admissible && !r.independent);
        let b = [rr(&[(2, -2, 3), (3, 1, 3)]), rr(&[(2, 1, 3), (3, -2, 3)])];
        assert!(admissibility_check(&diag(4, 2), &b).unwrap().admissible);
        let b = [rr(&[(2, 1, 1)])];
        assert!(!admissibility_check(&diag(2, 1), &b).unwrap().admissible);
    }

    #[test]
    fn non_scalar_rejected() {
        let t = vec![vec![2, 1], vec![0, 2]];
        let b = [rr(&[(2, -1, 1)]), rr(&[(5, -1, 1)])];
        assert_eq!(admissibility_check(&t, &b), Err(Error::UnsupportedTransformation));
    }
}
