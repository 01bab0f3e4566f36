//! Numeric values `G(gamma)` through the functional equation: a product of
//! matrices along the orbit applied to a truncated expansion far out.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::point::Point;
use super::regular::{vanishes_at, Vanishing};
use crate::error::{Error, Result};
use crate::mahler::MahlerSystem;
use crate::numbers::hp::{bits_for_digits, root_of_unity_parts};
use crate::numbers::rat::{round_bits, to_decimal, to_scientific};
use crate::numbers::{CycloElem, Rat};

/// Evaluation parameters; `depth = None` picks the orbit depth automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub digits: u32,
    pub depth: Option<usize>,
    pub tail: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            digits: 40,
            depth: None,
            tail: 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDecimal {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalResult {
    pub point: Point,
    pub digits: u32,
    pub depth: usize,
    pub tail: usize,
    pub values: Vec<ComplexDecimal>,
    pub distinguished: usize,
    /// Tail estimate from the largest computed coefficient, propagated
    /// through the matrix norms. Heuristic, not a rigorous bound.
    pub error_estimate: String,
    pub error_is_heuristic: bool,
    #[serde(skip)]
    exact: Vec<(Rat, Rat)>,
}

impl EvalResult {
    /// High-precision real and imaginary parts of component `i`.
    pub fn parts(&self, i: usize) -> &(Rat, Rat) {
        &self.exact[i]
    }

    pub fn distinguished_parts(&self) -> &(Rat, Rat) {
        &self.exact[self.distinguished]
    }
}

fn round(c: &CycloElem, bits: u32) -> CycloElem {
    c.map_coeffs(|x| round_bits(x, bits))
}

/// Real and imaginary parts of a cyclotomic element.
pub fn complex_parts(c: &CycloElem, bits: u32) -> (Rat, Rat) {
    let n = c.conductor();
    let mut re = Rat::zero();
    let mut im = Rat::zero();
    for (j, x) in c.coeffs().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (cs, sn) = root_of_unity_parts(j as u64, n, bits);
        re += x * cs;
        im += x * sn;
    }
    (round_bits(&re, bits), round_bits(&im, bits))
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    num_traits::pow(x.clone(), e)
}

/// `G(gamma) ~ A(gamma) A(gamma^q) ... A(gamma^{q^K}) G_N(gamma^{q^{K+1}})`.
pub fn eval_value(s: &MahlerSystem, gamma: &Point, opts: &EvalOptions) -> Result<EvalResult> {
    if !gamma.in_unit_disk() {
        return Err(Error::NotInUnitDisk(gamma.to_string()));
    }
    let bits = bits_for_digits(opts.digits);
    let work = bits + 32;
    let target = Rat::new(BigInt::one(), BigInt::one() << bits);
    let fine = Rat::new(BigInt::one(), BigInt::one() << work);
    let orbit = |k: usize| -> Result<Point> {
        let e = s.q.checked_pow(k as u32).ok_or(Error::RadixOverflow)?;
        Ok(gamma.pow(e))
    };
    let depth = match opts.depth {
        Some(k) => k,
        None => {
            let mut k = 0;
            loop {
                let hi = orbit(k + 1)?.modulus.refine(&fine).1;
                if pow_rat(&hi, opts.tail + 1) < target || k >= 63 {
                    break k;
                }
                k += 1;
            }
        }
    };
    let mut points = Vec::with_capacity(depth + 2);
    for k in 0..=depth + 1 {
        points.push(orbit(k)?);
    }
    for (k, x) in points.iter().enumerate().take(depth + 1) {
        for f in s.matrix.iter().flatten() {
            match vanishes_at(f.den(), x) {
                Vanishing::No => {}
                Vanishing::Yes => return Err(Error::NotRegular { k }),
                Vanishing::Undecided => return Err(Error::RegularityUndecided { k }),
            }
        }
    }
    let expansion = s.expand(opts.tail)?;
    let far = points[depth + 1].approx(work);
    let mut v: Vec<CycloElem> = expansion
        .series
        .iter()
        .map(|coeffs| {
            coeffs.iter().rev().fold(CycloElem::zero(), |acc, c| {
                round(&(acc * far.clone() + c.clone()), work)
            })
        })
        .collect();
    let mut norm_product = Rat::one();
    for x in points[..=depth].iter().rev() {
        let xv = x.approx(work);
        let a: Vec<Vec<CycloElem>> = s
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| f.eval(&xv).map(|c| round(&c, work)).ok_or(Error::DivisionByZero))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let row_norm = a
            .iter()
            .map(|row| row.iter().map(|c| c.abs_bound()).sum::<Rat>())
            .max()
            .unwrap_or_else(Rat::one);
        norm_product *= row_norm.max(Rat::one());
        v = a
            .iter()
            .map(|row| {
                row.iter().zip(&v).fold(CycloElem::zero(), |acc, (x, y)| {
                    round(&(acc + x.clone() * y.clone()), work)
                })
            })
            .collect();
    }
    let coeff_bound = expansion
        .series
        .iter()
        .flatten()
        .map(|c| c.abs_bound())
        .max()
        .unwrap_or_else(Rat::zero)
        .max(Rat::one());
    let x_far = points[depth + 1].modulus.refine(&fine).1;
    let tail = &coeff_bound * pow_rat(&x_far, opts.tail + 1) / (Rat::one() - &x_far);
    let rounding = &fine * Rat::from_integer(BigInt::from((depth + opts.tail + 2) as u64));
    let error = (tail + rounding) * norm_product;
    let exact: Vec<(Rat, Rat)> = v.iter().map(|c| complex_parts(c, work)).collect();
    let values = exact
        .iter()
        .map(|(re, im)| ComplexDecimal {
            re: to_decimal(re, opts.digits as usize),
            im: to_decimal(im, opts.digits as usize),
        })
        .collect();
    Ok(EvalResult {
        point: gamma.clone(),
        digits: opts.digits,
        depth,
        tail: opts.tail,
        values,
        distinguished: s.distinguished,
        error_estimate: to_scientific(&error, 3),
        error_is_heuristic: true,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat::to_f64;
    use crate::numbers::{rat, RootOfUnity};
    use num_traits::Signed;

    fn sys(json: &str) -> MahlerSystem {
        serde_json::from_str(json).unwrap()
    }

    fn fredholm() -> MahlerSystem {
        sys(r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#)
    }

    /// sum 2^{-2^n}, n <= 8
    fn fredholm_oracle() -> Rat {
        (0..=8)
            .map(|n| Rat::new(BigInt::one(), BigInt::one() << (1usize << n)))
            .sum()
    }

    #[test]
    fn fredholm_value() {
        let r = eval_value(&fredholm(), &Point::parse("1/2").unwrap(), &EvalOptions::default()).unwrap();
        let (re, im) = r.distinguished_parts();
        assert!(im.is_zero());
        let diff = (re - fredholm_oracle()).abs();
        assert!(diff < rat(1, 1_000_000_000_000), "{}", to_f64(&diff));
        assert!(r.values[0].re.starts_with("0.81642150902189314"));
        assert!(r.values[1].re.starts_with("1.0000"));
    }

    #[test]
    fn torsion_and_twist() {
        let opts = EvalOptions::default();
        let direct = eval_value(&fredholm(), &Point::parse("-1/2").unwrap(), &opts).unwrap();
        let tw = fredholm().twist(&RootOfUnity::MINUS_ONE).unwrap();
        let via = eval_value(&tw, &Point::parse("1/2").unwrap(), &opts).unwrap();
        let want = fredholm_oracle() - Rat::one();
        for r in [&direct, &via] {
            let diff = (&r.distinguished_parts().0 - &want).abs();
            assert!(diff < rat(1, 1_000_000_000_000));
        }
    }

    #[test]
    fn thue_morse_value() {
        let tm = sys(r#"{"q":2,"matrix":[["1 - z"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = eval_value(&tm, &Point::parse("1/2").unwrap(), &EvalOptions::default()).unwrap();
        let oracle: Rat = (0..=7)
            .map(|n| Rat::one() - Rat::new(BigInt::one(), BigInt::one() << (1usize << n)))
            .product();
        assert!((&r.distinguished_parts().0 - oracle).abs() < rat(1, 100_000_000));
        assert!(r.values[0].re.starts_with("0.350183865"));
    }

    #[test]
    fn pole_rejected() {
        let s = sys(r#"{"q":2,"matrix":[["1/(1 - 4z)"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        assert_eq!(
            eval_value(&s, &Point::parse("1/2").unwrap(), &EvalOptions::default()),
            Err(Error::NotRegular { k: 1 })
        );
    }
}
