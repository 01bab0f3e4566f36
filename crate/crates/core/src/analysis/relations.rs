//! Heuristic integer-relation search among monomials in approximate values,
//! by exact LLL reduction. A missing candidate is evidence, never proof.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mahler::multi::compositions;
use crate::numbers::rat::to_scientific;
use crate::numbers::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCandidate {
    pub coefficients: Vec<String>,
    pub relation: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationSearchReport {
    pub degree: u32,
    pub precision: u32,
    pub monomials: Vec<String>,
    pub height_bound: String,
    pub candidates: Vec<RelationCandidate>,
    pub heuristic: bool,
}

/// LLL reduction with `delta = 3/4`, exact rational Gram-Schmidt.
pub fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = Rat::new(BigInt::from(3), BigInt::from(4));
    let (mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round().to_integer();
            if q.is_zero() {
                continue;
            }
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &q * y;
            }
            let qr = Rat::from_integer(q);
            for i in 0..j {
                let v = &qr * &mu[j][i];
                mu[k][i] -= v;
            }
            mu[k][j] -= &qr;
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let m = mu[k][k - 1].clone();
            let big = &norms[k] + &m * &m * &norms[k - 1];
            mu[k][k - 1] = &m * &norms[k - 1] / &big;
            norms[k] = &norms[k - 1] * &norms[k] / &big;
            norms[k - 1] = big;
            for j in 0..k - 1 {
                let (lo, hi) = mu.split_at_mut(k);
                std::mem::swap(&mut lo[k - 1][j], &mut hi[0][j]);
            }
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        }
    }
    b
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = b.len();
    let rows: Vec<Vec<Rat>> = b
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut star: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut norms: Vec<Rat> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            if norms[j].is_zero() {
                continue;
            }
            let m = dot(&rows[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, x)| **x > 0)
        .map(|(i, x)| {
            if *x == 1 {
                format!("v{}", i + 1)
            } else {
                format!("v{}^{x}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn render(coeffs: &[BigInt], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match (mag.is_one(), name.as_str()) {
            (_, "1") => mag.to_string(),
            (true, _) => name.clone(),
            (false, _) => format!("{mag}*{name}"),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out + " = 0"
}

/// Minimum digits accepted for `count` monomials.
pub fn precision_threshold(count: usize) -> u32 {
    (2 * count).max(10) as u32
}

/// Candidate relations `sum c_e v^e ~ 0` over monomials of total degree at
/// most `degree`, from values known to `precision` decimal digits.
pub fn value_relation_search(values: &[Rat], degree: u32, precision: u32) -> Result<RelationSearchReport> {
    if values.is_empty() {
        return Err(Error::Invalid("no values".into()));
    }
    let exps: Vec<Vec<u32>> = (0..=degree).flat_map(|d| compositions(d, values.len())).collect();
    let count = exps.len();
    let needed = precision_threshold(count);
    if precision < needed {
        return Err(Error::PrecisionTooLow { needed, got: precision });
    }
    let mono_values: Vec<Rat> = exps
        .iter()
        .map(|e| {
            e.iter()
                .zip(values)
                .fold(Rat::one(), |acc, (k, v)| acc * num_traits::pow(v.clone(), *k as usize))
        })
        .collect();
    let scale = Rat::from_integer(num_traits::pow(BigInt::from(10), precision as usize));
    let basis: Vec<Vec<BigInt>> = mono_values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = vec![BigInt::zero(); count + 1];
            row[i] = BigInt::one();
            row[count] = (v * &scale).round().to_integer();
            row
        })
        .collect();
    let height_exp = f64::from(precision) / (2.0 * count as f64);
    let height = BigInt::from(10f64.powf(height_exp).floor().max(2.0) as u64);
    let tolerance = Rat::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10), (precision / 2) as usize),
    );
    let names: Vec<String> = exps.iter().map(|e| monomial_name(e)).collect();
    let mut candidates: Vec<RelationCandidate> = Vec::new();
    for row in lll(basis) {
        let mut coeffs = row[..count].to_vec();
        if coeffs.iter().all(|c| c.is_zero()) || coeffs.iter().any(|c| c.abs() > height) {
            continue;
        }
        if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            coeffs.iter_mut().for_each(|c| *c = -c.clone());
        }
        let residual: Rat = coeffs
            .iter()
            .zip(&mono_values)
            .map(|(c, v)| Rat::from_integer(c.clone()) * v)
            .sum();
        if residual.abs() >= tolerance {
            continue;
        }
        let coefficients: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        if candidates.iter().any(|c| c.coefficients == coefficients) {
            continue;
        }
        candidates.push(RelationCandidate {
            relation: render(&coeffs, &names),
            coefficients,
            residual: to_scientific(&residual, 3),
        });
    }
    Ok(RelationSearchReport {
        degree,
        precision,
        monomials: names,
        height_bound: height.to_string(),
        candidates,
        heuristic: true,
    })
}

/// Parses a decimal such as `0.8164` or `-1.5e-3` into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Rat> {
    let t = text.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad(t))?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad(t));
    }
    let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().map_err(|_| bad(t))? / 10;
    let shift = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    let mag = if shift >= 0 {
        Rat::from_integer(digits * num_traits::pow(ten, shift.to_usize().unwrap()))
    } else {
        Rat::new(digits, num_traits::pow(ten, (-shift).to_usize().unwrap()))
    };
    Ok(if neg { -mag } else { mag })
}

fn bad(t: &str) -> Error {
    Error::Parse {
        pos: 0,
        expected: "decimal number".into(),
        found: t.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    const F_HALF: &str = "0.8164215090218931437080797375305252217411";

    #[test]
    fn rational_value() {
        let r = value_relation_search(&[parse_decimal("0.333333333333333333333333333333").unwrap()], 1, 30).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert_eq!(r.candidates[0].relation, "1 - 3*v1 = 0");
    }

    #[test]
    fn dependent_values() {
        let x = parse_decimal(F_HALF).unwrap();
        let vals = [x.clone(), &x * rat(2, 1), &x * &x];
        let r = value_relation_search(&vals, 2, 40).unwrap();
        let rels: Vec<&str> = r.candidates.iter().map(|c| c.relation.as_str()).collect();
        assert!(rels.contains(&"2*v1 - v2 = 0"), "{rels:?}");
        assert!(rels.iter().any(|s| s.contains("v1^2") && s.contains("v3")), "{rels:?}");
    }

    #[test]
    fn fredholm_value_has_no_small_relation() {
        let x = parse_decimal(F_HALF).unwrap();
        let r = value_relation_search(&[x], 3, 40).unwrap();
        assert!(r.candidates.is_empty(), "{:?}", r.candidates);
    }

    #[test]
    fn precision_and_parsing() {
        assert_eq!(
            value_relation_search(&[rat(1, 3), rat(1, 5)], 2, 8),
            Err(Error::PrecisionTooLow { needed: 12, got: 8 })
        );
        assert_eq!(parse_decimal("-1.5e-3").unwrap(), rat(-3, 2000));
        assert_eq!(parse_decimal("42").unwrap(), rat(42, 1));
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn lll_reduces_known_basis() {
        let b = vec![
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(5), BigInt::from(6)],
        ];
        let r = lll(b);
        let norm = |v: &Vec<BigInt>| v.iter().map(|x| x * x).sum::<BigInt>();
        assert!(norm(&r[0]) <= BigInt::from(3));
    }
}
