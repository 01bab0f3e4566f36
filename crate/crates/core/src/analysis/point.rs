//! Evaluation points `zeta * rho` with `zeta` a root of unity and `rho` a
//! positive radical real.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multlat::factorize;
use crate::numbers::rat::round_bits;
use crate::numbers::{parse_rat, CycloElem, RadicalReal, Rat, RootOfUnity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub torsion: RootOfUnity,
    pub modulus: RadicalReal,
}

impl Point {
    pub fn new(torsion: RootOfUnity, modulus: RadicalReal) -> Self {
        Self { torsion, modulus }
    }

    pub fn from_rat(x: &Rat) -> Result<Self> {
        let c = factorize(x)?;
        Ok(Self::new(c.torsion, c.abs_radical()))
    }

    /// Parses a rational such as `1/2` or `-3/4`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_rat(&parse_rat(text)?)
    }

    /// `0 < |x| < 1`.
    pub fn in_unit_disk(&self) -> bool {
        self.modulus.less_than_one()
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(
            self.torsion.pow_u(e),
            self.modulus.pow(&Rat::from_integer(BigInt::from(e))),
        )
    }

    /// Exact value when the modulus is rational.
    pub fn as_cyclo(&self) -> Option<CycloElem> {
        self.modulus
            .as_rat()
            .map(|r| CycloElem::root(&self.torsion) * CycloElem::from_rat(r))
    }

    /// Value with the modulus rounded to `bits` bits (exact when rational).
    pub fn approx(&self, bits: u32) -> CycloElem {
        if let Some(v) = self.as_cyclo() {
            return v;
        }
        let width = Rat::new(BigInt::one(), BigInt::one() << (bits + 2));
        let (lo, hi) = self.modulus.refine(&width);
        let mid = round_bits(&((lo + hi) / Rat::from_integer(BigInt::from(2))), bits);
        CycloElem::root(&self.torsion) * CycloElem::from_rat(mid)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion.is_one() {
            write!(f, "{}", self.modulus)
        } else {
            write!(f, "{}*{}", self.torsion, self.modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    #[test]
    fn parse_and_powers() {
        let p = Point::parse("-1/2").unwrap();
        assert_eq!(p.torsion, RootOfUnity::MINUS_ONE);
        assert!(p.in_unit_disk());
        let sq = p.pow(2);
        assert!(sq.torsion.is_one());
        assert_eq!(sq.as_cyclo().unwrap(), CycloElem::from_rat(rat(1, 4)));
        assert!(!Point::parse("2").unwrap().in_unit_disk());
        assert!(Point::parse("0").is_err());
    }
}
