use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `e^{2 pi i k/n}` with `k/n` reduced into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    k: u64,
    n: u64,
}

#[derive(Deserialize)]
struct RawRoot {
    k: i64,
    n: u64,
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRoot::deserialize(d)?;
        RootOfUnity::new(raw.k, raw.n).map_err(serde::de::Error::custom)
    }
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { k: 0, n: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { k: 1, n: 2 };

    pub fn new(k: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("root of unity with n = 0".into()));
        }
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        if k == 0 {
            return Ok(Self::ONE);
        }
        Ok(Self { k: k / g, n: n / g })
    }

    /// Primitive `n`-th root `e^{2 pi i/n}`.
    pub fn primitive(n: u64) -> Self {
        Self::new(1, n).expect("n > 0")
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n.lcm(&o.n);
        let k = (self.k as u128 * (n / self.n) as u128 + o.k as u128 * (n / o.n) as u128) % n as u128;
        Self::new(k as i64, n).expect("n > 0")
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = ((self.k as i128 * e as i128).rem_euclid(self.n as i128)) as i64;
        Self::new(k, self.n).expect("n > 0")
    }

    pub fn pow_u(&self, e: u64) -> Self {
        let k = ((self.k as u128 * (e % self.n) as u128) % self.n as u128) as i64;
        Self::new(k, self.n).expect("n > 0")
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Forward orbit under `x -> x^q`, starting at `self`, until the first repeat.
    pub fn orbit(&self, q: u64) -> Vec<RootOfUnity> {
        let mut out = vec![*self];
        loop {
            let next = out.last().unwrap().pow_u(q);
            if out.contains(&next) {
                return out;
            }
            out.push(next);
        }
    }
}

/// Free-function form of [`RootOfUnity::orbit`]; `q` must be at least 2.
pub fn orbit_of_root(zeta: &RootOfUnity, q: u64) -> Result<Vec<RootOfUnity>> {
    if q < 2 {
        return Err(Error::Invalid(format!("radix {q} < 2")));
    }
    Ok(zeta.orbit(q))
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (k, n) => write!(f, "e(2pi i*{k}/{n})"),
        }
    }
}
