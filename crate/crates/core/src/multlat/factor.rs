//! Prime factorization: trial division up to 10^6, then Pollard rho on the
//! remaining cofactor (which must fit in 64 bits).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{rat_to_string, RadicalReal, Rat, RootOfUnity};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Factors a positive integer into `prime -> exponent`.
pub fn factor_biguint(n: &BigUint) -> Result<BTreeMap<u64, u32>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.clone();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        if BigUint::from(d) * BigUint::from(d) > m {
            break;
        }
        while (&m % d).is_zero() {
            m /= d;
            *out.entry(d).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let rest = m.to_u64().ok_or_else(|| Error::Unfactorable(n.to_string()))?;
    let mut stack = vec![rest];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime_u64(x) {
            *out.entry(x).or_insert(0) += 1;
            continue;
        }
        let f = pollard_rho(x).ok_or_else(|| Error::Unfactorable(n.to_string()))?;
        stack.push(f);
        stack.push(x / f);
    }
    Ok(out)
}

pub fn factor_u64(n: u64) -> Result<BTreeMap<u64, u32>> {
    factor_biguint(&BigUint::from(n))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pollard_rho(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return Some(d);
        }
    }
    None
}

/// A nonzero number `torsion * prod p^{e_p}` with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativeCoordinates {
    pub torsion: RootOfUnity,
    pub free: BTreeMap<u64, i64>,
}

impl MultiplicativeCoordinates {
    pub fn exponent(&self, p: u64) -> i64 {
        self.free.get(&p).copied().unwrap_or(0)
    }

    /// Multiplies by a root of unity.
    pub fn with_torsion(mut self, z: &RootOfUnity) -> Self {
        self.torsion = self.torsion.mul(z);
        self
    }

    /// `|x| < 1`, decided by comparing the positive and negative prime products.
    pub fn abs_less_than_one(&self) -> bool {
        let (num, den) = self.abs_parts();
        num < den
    }

    fn abs_parts(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.free {
            let pw = num_traits::pow(BigUint::from(*p), e.unsigned_abs() as usize);
            if *e > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        (num, den)
    }

    /// `|x|` as a rational.
    pub fn abs_value(&self) -> Rat {
        let (n, d) = self.abs_parts();
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    /// `|x|` as a radical real (integer exponents).
    pub fn abs_radical(&self) -> RadicalReal {
        RadicalReal::new(
            self.free
                .iter()
                .map(|(p, e)| (*p, Rat::from_integer(BigInt::from(*e))))
                .collect(),
        )
    }

    /// Exact rational value when the torsion is `1` or `-1`.
    pub fn as_rat(&self) -> Option<Rat> {
        let v = self.abs_value();
        if self.torsion.is_one() {
            Some(v)
        } else if self.torsion == RootOfUnity::MINUS_ONE {
            Some(-v)
        } else {
            None
        }
    }
}

impl fmt::Display for MultiplicativeCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rat() {
            Some(r) => write!(f, "{}", rat_to_string(&r)),
            None => write!(f, "{}*{}", self.torsion, rat_to_string(&self.abs_value())),
        }
    }
}

/// Sign and prime exponents of a nonzero rational.
pub fn factorize(x: &Rat) -> Result<MultiplicativeCoordinates> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let torsion = if x.is_negative() {
        RootOfUnity::MINUS_ONE
    } else {
        RootOfUnity::ONE
    };
    let mut free = BTreeMap::new();
    for (p, e) in factor_biguint(&x.numer().abs().to_biguint().unwrap())? {
        free.insert(p, e as i64);
    }
    for (p, e) in factor_biguint(&x.denom().to_biguint().unwrap())? {
        free.insert(p, -(e as i64));
    }
    Ok(MultiplicativeCoordinates { torsion, free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    #[test]
    fn factorize_examples() {
        let a = factorize(&rat(1, 2)).unwrap();
        assert!(a.torsion.is_one());
        assert_eq!(a.free, BTreeMap::from([(2, -1)]));
        let b = factorize(&rat(-9, 8)).unwrap();
        assert_eq!(b.torsion, RootOfUnity::MINUS_ONE);
        assert_eq!(b.free, BTreeMap::from([(2, -3), (3, 2)]));
        let c = factorize(&rat(1, 10)).unwrap();
        assert_eq!(c.free, BTreeMap::from([(2, -1), (5, -1)]));
        assert_eq!(factorize(&rat(0, 1)), Err(Error::ZeroInput));
        assert_eq!(b.as_rat(), Some(rat(-9, 8)));
        assert!(a.abs_less_than_one() && !b.abs_less_than_one());
    }

    #[test]
    fn large_factors() {
        // 1000003 * 1000033, both beyond the trial-division range
        let n = 1_000_003u64 * 1_000_033;
        let f = factor_u64(n).unwrap();
        assert_eq!(f, BTreeMap::from([(1_000_003, 1), (1_000_033, 1)]));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert_eq!(factor_u64(1).unwrap(), BTreeMap::new());
        assert_eq!(factor_u64(2u64.pow(40)).unwrap(), BTreeMap::from([(2, 40)]));
    }

    #[test]
    fn unfactorable_is_rejected() {
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        let big = &p * &p;
        assert!(matches!(factor_biguint(&big), Err(Error::Unfactorable(_))));
    }
}
