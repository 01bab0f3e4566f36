//! Exact reference computations written independently of the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact value of a decimal string such as `-0.125`.
pub fn decimal(s: &str) -> BigRational {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let v = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    if neg {
        -v
    } else {
        v
    }
}

fn factor_int(mut n: BigInt, sign: i64, out: &mut BTreeMap<u64, i64>) {
    let mut p = 2u64;
    while n > BigInt::one() {
        let bp = BigInt::from(p);
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(p).or_insert(0) += sign;
        }
        p += 1;
    }
}

/// Sign and prime exponents of a nonzero rational, by trial division.
pub fn factor_rational(x: &BigRational) -> (i64, BTreeMap<u64, i64>) {
    let mut out = BTreeMap::new();
    factor_int(x.numer().abs(), 1, &mut out);
    factor_int(x.denom().abs(), -1, &mut out);
    out.retain(|_, e| *e != 0);
    (if x.is_negative() { -1 } else { 1 }, out)
}

/// Exponents of `n` over the primes below 50.
pub fn exponent_vector(n: i64) -> Vec<i64> {
    let (_, f) = factor_rational(&qi(n));
    assert!(f.keys().all(|p| *p < 50), "prime factor above 50");
    (2..50u64)
        .filter(|p| (2..*p).all(|d| p % d != 0))
        .map(|p| *f.get(&p).unwrap_or(&0))
        .collect()
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    echelon(&mut rows.to_vec(), cols).len()
}

/// `prod p^{e_p} < 1`, decided on integers after clearing denominators.
pub fn radical_below_one(e: &BTreeMap<u64, BigRational>) -> bool {
    let lcm = e.values().fold(BigInt::one(), |acc, x| {
        let d = x.denom().clone();
        num_integer::Integer::lcm(&acc, &d)
    });
    let (mut up, mut down) = (BigInt::one(), BigInt::one());
    for (p, x) in e {
        let k = (x * BigRational::from_integer(lcm.clone())).to_integer();
        let pow = k.abs().to_u32().expect("small exponent");
        if k.is_positive() {
            up *= BigInt::from(*p).pow(pow);
        } else {
            down *= BigInt::from(*p).pow(pow);
        }
    }
    up < down
}

/// No two vectors are proportional.
pub fn pairwise_independent_ints(vs: &[Vec<i64>]) -> bool {
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (u, v) = (&vs[i], &vs[j]);
            let parallel = (0..u.len()).all(|a| (0..u.len()).all(|b| u[a] * v[b] == u[b] * v[a]));
            if parallel {
                return false;
            }
        }
    }
    true
}

/// Cone membership by Caratheodory: `x` is in the cone iff it is a
/// nonnegative combination of some linearly independent subset.
pub fn caratheodory_member(x: &[i64], gens: &[Vec<i64>]) -> bool {
    if x.iter().all(|v| *v == 0) {
        return true;
    }
    let t = x.len();
    for mask in 1u32..(1 << gens.len()) {
        let chosen: Vec<&Vec<i64>> = (0..gens.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &gens[i])
            .collect();
        let s = chosen.len();
        if s > t {
            continue;
        }
        let mut m: Vec<Vec<BigRational>> = (0..t)
            .map(|r| {
                let mut row: Vec<BigRational> = chosen.iter().map(|g| qi(g[r])).collect();
                row.push(qi(x[r]));
                row
            })
            .collect();
        let pivots = echelon(&mut m, s + 1);
        if pivots.len() != s || pivots.contains(&s) {
            continue;
        }
        if (0..s).all(|r| !m[r][s].is_negative()) {
            return true;
        }
    }
    false
}

/// Coefficient `n` of the sample series, from their closed forms.
pub fn closed_form(name: &str, n: usize) -> i64 {
    let power_of = |b: usize| {
        let mut m = 1;
        while m < n {
            m *= b;
        }
        n >= 1 && m == n
    };
    match name {
        "fredholm" => power_of(2) as i64,
        "cube_lacunary" => power_of(3) as i64,
        "thue_morse" => {
            if n.count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        "geometric" => 1,
        other => panic!("no closed form for {other}"),
    }
}
