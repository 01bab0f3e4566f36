//! Linear relations over `Q(z)` among truncated series, up to a degree bound.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mahler::{poly_to_expr, Poly, RatFunc};
use crate::numbers::field::nullspace;
use crate::numbers::CycloElem;

/// Relations `sum a_i g_i = 0 mod z^{N+1}` with `deg a_i <= D`. An empty list
/// means independence up to `(D, N)` only.
#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceUpTo {
    pub degree_bound: usize,
    pub truncation_order: usize,
    pub relations: Vec<Vec<Poly>>,
}

impl IndependenceUpTo {
    pub fn independent(&self) -> bool {
        self.relations.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Raw {
    degree_bound: usize,
    truncation_order: usize,
    relations: Vec<Vec<String>>,
}

impl Serialize for IndependenceUpTo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Raw {
            degree_bound: self.degree_bound,
            truncation_order: self.truncation_order,
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|p| poly_to_expr(p, "z")).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndependenceUpTo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Raw::deserialize(d)?;
        let relations = raw
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| RatFunc::parse(t).map(|f| f.num().clone()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self {
            degree_bound: raw.degree_bound,
            truncation_order: raw.truncation_order,
            relations,
        })
    }
}

/// Smallest truncation order making the system overdetermined.
pub fn required_order(m: usize, d: usize) -> usize {
    m * (d + 1) + d
}

/// `sum a_i g_i` truncated after coefficient `n`.
pub fn combine_truncated(relation: &[Poly], series: &[Vec<CycloElem>], n: usize) -> Vec<CycloElem> {
    let mut out = vec![CycloElem::from_int(0); n + 1];
    for (a, g) in relation.iter().zip(series) {
        for (k, c) in a.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            for (j, x) in g.iter().enumerate().take((n + 1).saturating_sub(k)) {
                out[k + j] = out[k + j].clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

/// Exact nullspace of the convolution system; relations in reduced echelon form.
pub fn linear_independence_qz(series: &[Vec<CycloElem>], d: usize) -> Result<IndependenceUpTo> {
    let m = series.len();
    if m == 0 {
        return Err(Error::Invalid("no series".into()));
    }
    let n = series.iter().map(|g| g.len()).min().unwrap_or(0).saturating_sub(1);
    let needed = required_order(m, d);
    if n < needed {
        return Err(Error::TruncationTooShort { needed, got: n });
    }
    let cols = m * (d + 1);
    let zero = CycloElem::from_int(0);
    let rows: Vec<Vec<CycloElem>> = (0..=n)
        .map(|row| {
            (0..cols)
                .map(|col| {
                    let (i, k) = (col / (d + 1), col % (d + 1));
                    if row >= k {
                        series[i][row - k].clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    let relations: Vec<Vec<Poly>> = nullspace(&rows, cols)
        .into_iter()
        .map(|v| v.chunks(d + 1).map(|c| Poly::new(c.to_vec())).collect())
        .collect();
    for r in &relations {
        if combine_truncated(r, series, n)
            .iter()
            .any(|c| !num_traits::Zero::is_zero(c))
        {
            return Err(Error::Invalid("relation failed verification".into()));
        }
    }
    Ok(IndependenceUpTo {
        degree_bound: d,
        truncation_order: n,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::MahlerSystem;

    fn fredholm_series(n: usize) -> Vec<CycloElem> {
        let s: MahlerSystem =
            serde_json::from_str(r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#)
                .unwrap();
        s.expand(n).unwrap().series[0].clone()
    }

    fn geometric(n: usize) -> Vec<CycloElem> {
        vec![CycloElem::from_int(1); n + 1]
    }

    #[test]
    fn examples() {
        let r = linear_independence_qz(&[geometric(64), fredholm_series(64)], 4).unwrap();
        assert!(r.independent());
        let f = fredholm_series(128);
        let f2: Vec<CycloElem> = (0..=64)
            .map(|n| {
                if n % 2 == 0 {
                    f[n / 2].clone()
                } else {
                    CycloElem::from_int(0)
                }
            })
            .collect();
        let mut one = vec![CycloElem::from_int(0); 65];
        one[0] = CycloElem::from_int(1);
        let r = linear_independence_qz(&[one, f[..=64].to_vec(), f2], 1).unwrap();
        assert_eq!(r.relations.len(), 1);
        let rel = &r.relations[0];
        // proportional to (z, -1, 1)
        let scale = rel[2].coeff(0);
        assert_eq!(rel[0], Poly::monomial(scale.clone(), 1));
        assert_eq!(rel[1], Poly::constant(-scale));
        let g = fredholm_series(20);
        let r = linear_independence_qz(&[g.clone(), g], 2).unwrap();
        assert_eq!(r.relations.len(), 3);
        assert_eq!(
            linear_independence_qz(&[geometric(5), geometric(5)], 2),
            Err(Error::TruncationTooShort { needed: 8, got: 5 })
        );
    }

    #[test]
    fn monotone_in_truncation() {
        let g = [geometric(80), fredholm_series(80)];
        for n in [20, 40, 80] {
            let cut: Vec<Vec<CycloElem>> = g.iter().map(|s| s[..=n].to_vec()).collect();
            assert!(linear_independence_qz(&cut, 3).unwrap().independent());
        }
        let json = serde_json::to_string(&linear_independence_qz(&g, 3).unwrap()).unwrap();
        let back: IndependenceUpTo = serde_json::from_str(&json).unwrap();
        assert!(back.independent());
    }
}
