//! Exact regularity of a point along its orbit `gamma^{q^k}`: no zero or pole
//! of `det A` and no pole of an entry of `A` is ever hit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};
use crate::mahler::{poly_to_expr, MahlerSystem, Poly};
use crate::numbers::rat::serde_rat;
use crate::numbers::{CycloElem, DensePoly, RadicalReal, Rat};

pub type RatPoly = DensePoly<Rat>;

/// Outcome of one exact vanishing test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vanishing {
    No,
    Yes,
    /// The norm vanishes but the power-basis components do not all vanish.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub k: usize,
    pub point: Point,
    /// Rational enclosure of `|gamma^{q^k}|`.
    #[serde(with = "serde_rat")]
    pub lower: Rat,
    #[serde(with = "serde_rat")]
    pub upper: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroTest {
    pub k: usize,
    pub polynomial: String,
    pub outcome: Vanishing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum RegularityVerdict {
    Regular,
    NotRegular { k: usize },
    Inconclusive { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityReport {
    pub orbit_points_checked: Vec<OrbitPoint>,
    pub zero_tests: Vec<ZeroTest>,
    /// Relevant polynomials with a root at `z = 0`, with its multiplicity.
    pub origin_roots: Vec<(String, usize)>,
    /// Positive lower bound on the moduli of all nonzero roots.
    #[serde(with = "serde_rat")]
    pub cutoff_bound: Rat,
    /// First step whose orbit point lies below the bound.
    pub cutoff_step: Option<usize>,
    pub verdict: RegularityVerdict,
}

/// Rational polynomial having every root of `p` among its roots.
pub fn rational_shadow(p: &Poly) -> RatPoly {
    if p.coeffs().iter().all(|c| c.is_rational()) {
        return p.map(|c| c.as_rat().expect("rational"));
    }
    norm_poly(p)
}

/// Product of the Galois conjugates of `p`.
pub fn norm_poly(p: &Poly) -> RatPoly {
    let c = p.coeffs().iter().map(|x| x.conductor()).fold(1, num_integer::lcm);
    let lifted = p.map(|x| x.lift(c));
    let mut acc = Poly::one();
    for a in (1..c.max(2)).filter(|a| a.gcd(&c) == 1) {
        acc = &acc * &lifted.map(|x| x.galois(a));
    }
    acc.map(|x| x.as_rat().expect("norm has rational coefficients"))
}

/// `X^e mod m`.
fn pow_mod(e: &BigInt, m: &RatPoly) -> RatPoly {
    let x = RatPoly::monomial(Rat::one(), 1);
    let mut acc = RatPoly::one().divrem(m).1;
    let mut base = x.divrem(m).1;
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            acc = (&acc * &base).divrem(m).1;
        }
        base = (&base * &base).divrem(m).1;
        e >>= 1;
    }
    acc
}

/// Whether the positive real `rho` is a root of the rational polynomial `q`.
pub fn vanishes_at_radical(q: &RatPoly, rho: &RadicalReal) -> bool {
    if q.is_zero() {
        return true;
    }
    if q.degree() == Some(0) {
        return false;
    }
    if let Some(r) = rho.as_rat() {
        return q.eval(&r).is_zero();
    }
    let (n, d, big_d) = rho.as_root();
    let r = Rat::new(BigInt::from(n), BigInt::from(d));
    // rho is the unique positive root of X^D - r; g keeps only common roots
    let h = &pow_mod(&BigInt::from(big_d), q) - &RatPoly::constant(r);
    let g = if h.is_zero() { q.clone() } else { q.gcd(&h) };
    if g.degree().unwrap_or(0) == 0 {
        return false;
    }
    let mut width = Rat::new(BigInt::one(), BigInt::from(1u32 << 20));
    loop {
        let (lo, hi) = rho.refine(&width);
        if lo.is_positive() {
            let (a, b) = (g.eval(&lo), g.eval(&hi));
            return a.is_zero() || b.is_zero() || a.signum() != b.signum();
        }
        width /= Rat::from_integer(BigInt::from(1u64 << 32));
    }
}

/// Exact test of `p(zeta * rho) = 0`.
pub fn vanishes_at(p: &Poly, x: &Point) -> Vanishing {
    if p.is_zero() {
        return Vanishing::Yes;
    }
    let p = p.shift_down(p.valuation().unwrap_or(0));
    let pw = if x.torsion.is_one() {
        p
    } else {
        p.scale_arg(&CycloElem::root(&x.torsion))
    };
    let c = pw.coeffs().iter().map(|e| e.conductor()).fold(1, num_integer::lcm);
    if c == 1 {
        let q = pw.map(|e| e.as_rat().expect("rational"));
        return if vanishes_at_radical(&q, &x.modulus) {
            Vanishing::Yes
        } else {
            Vanishing::No
        };
    }
    if !vanishes_at_radical(&norm_poly(&pw), &x.modulus) {
        return Vanishing::No;
    }
    let lifted: Vec<CycloElem> = pw.coeffs().iter().map(|e| e.lift(c)).collect();
    let width = lifted.iter().map(|e| e.coeffs().len()).max().unwrap_or(0);
    let all = (0..width).all(|j| {
        let comp = RatPoly::new(
            lifted
                .iter()
                .map(|e| e.coeffs().get(j).cloned().unwrap_or_else(Rat::zero))
                .collect(),
        );
        vanishes_at_radical(&comp, &x.modulus)
    });
    if all {
        Vanishing::Yes
    } else {
        Vanishing::Undecided
    }
}

/// `|c_0| / (|c_0| + max |c_i|)` after removing the factor `z^v`.
pub fn root_lower_bound(q: &RatPoly) -> Rat {
    let q = q.shift_down(q.valuation().unwrap_or(0));
    let c0 = q.coeff(0).abs();
    let m = q
        .coeffs()
        .iter()
        .skip(1)
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rat::zero);
    if m.is_zero() {
        return Rat::one();
    }
    &c0 / (&c0 + m)
}

/// Relevant polynomials with labels: det numerator and denominator, and the
/// denominators of the entries (duplicates removed).
pub fn relevant_polynomials(s: &MahlerSystem) -> Result<Vec<(String, Poly)>> {
    let det = s.determinant();
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let mut out: Vec<(String, Poly)> = Vec::new();
    let mut push = |label: String, p: &Poly| {
        if p.degree().unwrap_or(0) == 0 {
            return;
        }
        let monic = p.monic();
        if !out.iter().any(|(_, q)| *q == monic) {
            out.push((label, monic));
        }
    };
    push(format!("det numerator {}", poly_to_expr(det.num(), "z")), det.num());
    push(format!("det denominator {}", poly_to_expr(det.den(), "z")), det.den());
    for (r, row) in s.matrix.iter().enumerate() {
        for (c, f) in row.iter().enumerate() {
            push(
                format!("denominator of entry ({r},{c}) {}", poly_to_expr(f.den(), "z")),
                f.den(),
            );
        }
    }
    Ok(out)
}

/// Checks `gamma^{q^k}` for `k = 0, 1, ...` until the orbit drops below the
/// root bound or `k_max` is exceeded.
pub fn regular_point_check(s: &MahlerSystem, gamma: &Point, k_max: usize) -> Result<RegularityReport> {
    if !gamma.in_unit_disk() {
        return Err(Error::NotInUnitDisk(gamma.to_string()));
    }
    let polys = relevant_polynomials(s)?;
    let origin_roots = polys
        .iter()
        .filter_map(|(l, p)| {
            let v = p.valuation().unwrap_or(0);
            (v > 0).then(|| (l.clone(), v))
        })
        .collect();
    let cutoff_bound = polys
        .iter()
        .map(|(_, p)| root_lower_bound(&rational_shadow(p)))
        .min()
        .unwrap_or_else(Rat::one);
    let mut report = RegularityReport {
        orbit_points_checked: Vec::new(),
        zero_tests: Vec::new(),
        origin_roots,
        cutoff_bound: cutoff_bound.clone(),
        cutoff_step: None,
        verdict: RegularityVerdict::Regular,
    };
    let width = (&cutoff_bound / Rat::from_integer(BigInt::from(4))).min(Rat::new(BigInt::one(), BigInt::one() << 24));
    for k in 0..=k_max {
        let x = gamma.pow(s.q.checked_pow(k as u32).ok_or(Error::RadixOverflow)?);
        let (lower, upper) = x.modulus.refine(&width);
        report.orbit_points_checked.push(OrbitPoint {
            k,
            point: x.clone(),
            lower,
            upper: upper.clone(),
        });
        if upper < cutoff_bound {
            report.cutoff_step = Some(k);
            return Ok(report);
        }
        for (label, p) in &polys {
            let outcome = vanishes_at(p, &x);
            report.zero_tests.push(ZeroTest {
                k,
                polynomial: label.clone(),
                outcome,
            });
            match outcome {
                Vanishing::Yes => {
                    report.verdict = RegularityVerdict::NotRegular { k };
                    return Ok(report);
                }
                Vanishing::Undecided => {
                    report.verdict = RegularityVerdict::Inconclusive { k };
                    return Ok(report);
                }
                Vanishing::No => {}
            }
        }
    }
    Err(Error::InconclusiveBeyondCutoff { k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, RootOfUnity};

    fn sys(json: &str) -> MahlerSystem {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn examples() {
        let fred = sys(r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#);
        let half = Point::parse("1/2").unwrap();
        let r = regular_point_check(&fred, &half, 64).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::Regular);
        assert_eq!(r.cutoff_step, Some(0));
        let tm = sys(r#"{"q":2,"matrix":[["1 - z"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&tm, &half, 64).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::Regular);
        assert!(r.cutoff_step.is_some());
        let pole = sys(r#"{"q":2,"matrix":[["1/(1 - 2z)"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&pole, &half, 64).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 0 });
    }

    #[test]
    fn later_orbit_zero_and_radicals() {
        // zero of det at 1/4 = (1/2)^2
        let s = sys(r#"{"q":2,"matrix":[["1 - 4z"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&s, &Point::parse("1/2").unwrap(), 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 1 });
        // rho = 2^{-1/2}: rho^2 = 1/2 is a root of 1 - 2z at k = 1
        let rho = Point::new(RootOfUnity::ONE, RadicalReal::from_pairs(&[(2, rat(-1, 2))]));
        let s = sys(r#"{"q":2,"matrix":[["1 - 2z"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&s, &rho, 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 1 });
        // 1 - 2 z^2 vanishes at rho itself, not detectable without the gcd test
        let s = sys(r#"{"q":3,"matrix":[["1 - 2z^2"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&s, &rho, 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 0 });
        let s = sys(r#"{"q":3,"matrix":[["1 - 3z^2"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&s, &rho, 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::Regular);
    }

    #[test]
    fn torsion_points() {
        // 1 + 2z vanishes at -1/2
        let s = sys(r#"{"q":3,"matrix":[["1 + 2z"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let r = regular_point_check(&s, &Point::parse("-1/2").unwrap(), 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 0 });
        let r = regular_point_check(&s, &Point::parse("1/2").unwrap(), 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::Regular);
        // 1 + 4 z^2 vanishes at i/2
        let s = sys(r#"{"q":5,"matrix":[["1 + 4z^2"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        let i_half = Point::new(
            RootOfUnity::new(1, 4).unwrap(),
            RadicalReal::from_pairs(&[(2, rat(-1, 1))]),
        );
        let r = regular_point_check(&s, &i_half, 8).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 0 });
    }

    #[test]
    fn errors() {
        let s = sys(r#"{"q":2,"matrix":[["1","1"],["1","1"]],"seeds":{},"distinguished":0}"#);
        assert_eq!(
            regular_point_check(&s, &Point::parse("1/2").unwrap(), 4),
            Err(Error::SingularSystem)
        );
        let s = sys(r#"{"q":2,"matrix":[["1 - z"]],"seeds":{"0":["1"]},"distinguished":0}"#);
        assert!(matches!(
            regular_point_check(&s, &Point::parse("3/2").unwrap(), 4),
            Err(Error::NotInUnitDisk(_))
        ));
        // orbit of 99/100 needs several squarings before the bound 1/2
        assert_eq!(
            regular_point_check(&s, &Point::parse("99/100").unwrap(), 2),
            Err(Error::InconclusiveBeyondCutoff { k_max: 2 })
        );
    }
}
