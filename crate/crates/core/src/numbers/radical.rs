//! Positive reals of the form `prod p^{e_p}` with rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{common_denominator, parse_rat, rat_to_string, Rat};
use crate::error::{Error, Result};

/// Exact radical real with a guarded cache of its tightest known enclosure.
pub struct RadicalReal {
    exponents: BTreeMap<u64, Rat>,
    cached: Mutex<Option<(Rat, Rat)>>,
}

impl RadicalReal {
    pub fn new(exponents: BTreeMap<u64, Rat>) -> Self {
        let exponents = exponents.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        Self {
            exponents,
            cached: Mutex::new(None),
        }
    }

    pub fn from_pairs(pairs: &[(u64, Rat)]) -> Self {
        let mut m = BTreeMap::new();
        for (p, e) in pairs {
            *m.entry(*p).or_insert_with(Rat::zero) += e;
        }
        Self::new(m)
    }

    pub fn one() -> Self {
        Self::new(BTreeMap::new())
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Rat> {
        &self.exponents
    }

    pub fn exponent(&self, p: u64) -> Rat {
        self.exponents.get(&p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Least common denominator `D` of the exponents.
    pub fn denominator(&self) -> BigInt {
        common_denominator(self.exponents.values())
    }

    /// `(num, den, D)` with `self = (num/den)^(1/D)`, `num` and `den` coprime positive integers.
    pub fn as_root(&self) -> (BigUint, BigUint, u32) {
        let d = self.denominator();
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.exponents {
            let k = (e * Rat::from_integer(d.clone())).to_integer();
            let pw = num_traits::pow(BigUint::from(*p), k.abs().to_usize().expect("exponent size"));
            if k.is_positive() {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        (num, den, d.to_u32().expect("exponent denominator fits u32"))
    }

    /// Exact rational value when every exponent is an integer.
    pub fn as_rat(&self) -> Option<Rat> {
        let (n, d, k) = self.as_root();
        (k == 1).then(|| Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.exponents.clone();
        for (p, e) in &o.exponents {
            *m.entry(*p).or_insert_with(Rat::zero) += e;
        }
        Self::new(m)
    }

    pub fn pow(&self, e: &Rat) -> Self {
        Self::new(self.exponents.iter().map(|(p, x)| (*p, x * e)).collect())
    }

    /// `x < 1`, decided exactly by comparing integer powers.
    pub fn less_than_one(&self) -> bool {
        // any positive multiple of the exponent vector has the same sign of
        // sum e_p log p, so use the primitive integer one
        let d = self.denominator();
        let ks: Vec<BigInt> = self
            .exponents
            .values()
            .map(|e| (e * Rat::from_integer(d.clone())).to_integer())
            .collect();
        let g = ks.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for ((p, _), k) in self.exponents.iter().zip(&ks) {
            let k = k / &g;
            let pw = num_traits::pow(BigUint::from(*p), k.abs().to_usize().expect("exponent size"));
            if k.is_positive() {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        num < den
    }

    /// Rational bounds `[lo, hi]` around the value with `hi - lo <= width`.
    pub fn refine(&self, width: &Rat) -> (Rat, Rat) {
        assert!(width.is_positive(), "width must be positive");
        let mut guard = self.cached.lock().unwrap();
        if let Some((lo, hi)) = guard.as_ref() {
            if &(hi - lo) <= width {
                return (lo.clone(), hi.clone());
            }
        }
        // smallest k with 2^-k <= width
        let mut k: u32 = 0;
        let mut step = Rat::one();
        while &step > width {
            step /= Rat::from_integer(BigInt::from(2));
            k += 1;
        }
        let (n, d, root) = self.as_root();
        let scaled = (n << (k as usize * root as usize)) / d;
        let floor = scaled.nth_root(root);
        let scale = BigInt::one() << k;
        let mut lo = Rat::new(BigInt::from(floor.clone()), scale.clone());
        let mut hi = Rat::new(BigInt::from(floor) + 1, scale);
        if let Some((clo, chi)) = guard.as_ref() {
            if clo > &lo {
                lo = clo.clone();
            }
            if chi < &hi {
                hi = chi.clone();
            }
        }
        *guard = Some((lo.clone(), hi.clone()));
        (lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        self.exponents
            .iter()
            .map(|(p, e)| (*p as f64).powf(e.to_f64().unwrap_or(f64::NAN)))
            .product()
    }
}

/// Free-function form of [`RadicalReal::refine`].
pub fn radical_refine(x: &RadicalReal, width: &Rat) -> Result<(Rat, Rat)> {
    if !width.is_positive() {
        return Err(Error::Invalid("refinement width must be positive".into()));
    }
    Ok(x.refine(width))
}

pub fn radical_less_than_one(x: &RadicalReal) -> bool {
    x.less_than_one()
}

impl Clone for RadicalReal {
    fn clone(&self) -> Self {
        Self {
            exponents: self.exponents.clone(),
            cached: Mutex::new(self.cached.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for RadicalReal {
    fn eq(&self, o: &Self) -> bool {
        self.exponents == o.exponents
    }
}

impl Eq for RadicalReal {}

impl fmt::Debug for RadicalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalReal({self})")
    }
}

impl fmt::Display for RadicalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| {
                if e.is_one() {
                    format!("{p}")
                } else {
                    format!("{p}^({})", rat_to_string(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for RadicalReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.exponents.iter().map(|(p, e)| (p.to_string(), rat_to_string(e))))
    }
}

impl<'de> Deserialize<'de> for RadicalReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut m = BTreeMap::new();
        for (p, e) in raw {
            let p: u64 = p.parse().map_err(serde::de::Error::custom)?;
            if !is_prime_small(p) {
                return Err(serde::de::Error::custom(format!("{p} is not prime")));
            }
            m.insert(p, parse_rat(&e).map_err(serde::de::Error::custom)?);
        }
        Ok(RadicalReal::new(m))
    }
}

fn is_prime_small(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Integer `D`-th root test helper: `floor(x^(1/d))` for a positive rational.
pub fn rat_nth_root_floor(x: &Rat, d: u32) -> BigInt {
    let q = x.floor().to_integer();
    if q.is_negative() {
        return BigInt::zero();
    }
    BigInt::from(q.to_biguint().unwrap().nth_root(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat::{int, rat};

    fn rr(pairs: &[(u64, i64, i64)]) -> RadicalReal {
        RadicalReal::from_pairs(&pairs.iter().map(|&(p, n, d)| (p, rat(n, d))).collect::<Vec<_>>())
    }

    #[test]
    fn refine_examples() {
        let half = rr(&[(2, -1, 1)]);
        let (lo, hi) = half.refine(&rat(1, 100));
        assert!(lo <= rat(1, 2) && rat(1, 2) <= hi && &hi - &lo <= rat(1, 100));

        let x = rr(&[(2, -2, 3), (3, 1, 3)]);
        let (lo, hi) = x.refine(&rat(1, 1000));
        assert!(&hi - &lo <= rat(1, 1000));
        // x^3 = 3/4
        assert!(&lo * &lo * &lo <= rat(3, 4) && rat(3, 4) <= &hi * &hi * &hi);
        assert!(lo <= rat(9086, 10000) && rat(9086, 10000) <= hi + rat(1, 10000));

        let y = rr(&[(2, 1, 3), (3, -2, 3)]);
        let (lo, hi) = y.refine(&rat(1, 1000));
        assert!(&lo * &lo * &lo <= rat(2, 9) && rat(2, 9) <= &hi * &hi * &hi);
        assert!((crate::numbers::rat::to_f64(&lo) - 0.6057).abs() < 2e-3);
    }

    #[test]
    fn refine_is_nested_and_sticky() {
        let x = rr(&[(2, -2, 3), (3, 1, 3)]);
        let (lo1, hi1) = x.refine(&rat(1, 10));
        let (lo2, hi2) = x.refine(&rat(1, 10000));
        assert!(lo1 <= lo2 && hi2 <= hi1);
        // a wider request returns the cached tighter interval
        let (lo3, hi3) = x.refine(&rat(1, 2));
        assert_eq!((lo3, hi3), (lo2, hi2));
    }

    #[test]
    fn less_than_one_examples() {
        assert!(rr(&[(2, -1, 1)]).less_than_one());
        assert!(rr(&[(2, 1, 1), (3, -1, 1)]).less_than_one());
        assert!(rr(&[(2, -2, 3), (3, 1, 3)]).less_than_one());
        assert!(!rr(&[(2, 2, 3), (3, -1, 3)]).less_than_one());
        assert!(!RadicalReal::one().less_than_one());
    }

    #[test]
    fn json_shape() {
        let x = rr(&[(2, -2, 3), (3, 1, 3)]);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"2":"-2/3","3":"1/3"}"#);
        let back: RadicalReal = serde_json::from_str(r#"{"2":"-2/3","3":"1/3"}"#).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<RadicalReal>(r#"{"4":"1"}"#).is_err());
        assert_eq!(rr(&[(5, -1, 1)]).as_rat(), Some(rat(1, 5)));
        assert_eq!(x.as_rat(), None);
        assert_eq!(rat_nth_root_floor(&int(28), 3), BigInt::from(3));
    }
}
