//! Fixed-precision real helpers built on rationals rounded to `2^-bits`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{round_bits, Rat};

fn two() -> Rat {
    Rat::from_integer(BigInt::from(2))
}

/// `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: i64, bits: u32) -> Rat {
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 8));
    let x2 = Rat::from_integer(BigInt::from(x * x));
    let mut term = Rat::new(BigInt::one(), BigInt::from(x));
    let mut sum = Rat::zero();
    let mut k: i64 = 0;
    while term.abs() > eps {
        let t = &term / Rat::from_integer(BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term = round_bits(&(&term / &x2), bits + 16);
        k += 1;
    }
    round_bits(&sum, bits + 8)
}

/// pi to roughly `bits` bits (Machin's formula).
pub fn pi(bits: u32) -> Rat {
    let v = Rat::from_integer(BigInt::from(16)) * atan_inv(5, bits)
        - Rat::from_integer(BigInt::from(4)) * atan_inv(239, bits);
    round_bits(&v, bits)
}

/// `(cos t, sin t)` by Taylor series; intended for `|t| <= 2 pi`.
pub fn cos_sin(t: &Rat, bits: u32) -> (Rat, Rat) {
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 8));
    let mut c = Rat::zero();
    let mut s = Rat::zero();
    let mut term = Rat::one();
    let mut k: u64 = 0;
    loop {
        match k % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        k += 1;
        term = round_bits(&(&term * t / Rat::from_integer(BigInt::from(k))), bits + 16);
        if k > 4 && term.abs() < eps {
            break;
        }
    }
    (round_bits(&c, bits), round_bits(&s, bits))
}

/// `(cos, sin)` of `2 pi j / n`.
pub fn root_of_unity_parts(j: u64, n: u64, bits: u32) -> (Rat, Rat) {
    let j = j % n;
    if j == 0 {
        return (Rat::one(), Rat::zero());
    }
    if 2 * j == n {
        return (-Rat::one(), Rat::zero());
    }
    if 4 * j == n {
        return (Rat::zero(), Rat::one());
    }
    if 4 * j == 3 * n {
        return (Rat::zero(), -Rat::one());
    }
    let angle = two() * pi(bits + 8) * Rat::new(BigInt::from(j), BigInt::from(n));
    cos_sin(&angle, bits)
}

/// Natural logarithm of a positive integer, approximately to `bits` bits.
pub fn ln_int(p: u64, bits: u32) -> Rat {
    assert!(p >= 1);
    let mut m = 0u32;
    while (1u64 << (m + 1)) <= p {
        m += 1;
    }
    // ln p = m ln 2 + ln(p / 2^m), with p / 2^m in [1, 2)
    let ln2 = atanh_ln(&Rat::from_integer(BigInt::from(2)), bits);
    let rest = Rat::new(BigInt::from(p), BigInt::one() << m);
    let v = Rat::from_integer(BigInt::from(m)) * ln2 + atanh_ln(&rest, bits);
    round_bits(&v, bits)
}

/// `ln x = 2 atanh((x - 1)/(x + 1))` for `x` in `[1, 2]`.
fn atanh_ln(x: &Rat, bits: u32) -> Rat {
    let y = (x - Rat::one()) / (x + Rat::one());
    if y.is_zero() {
        return Rat::zero();
    }
    let y2 = &y * &y;
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 8));
    let mut pw = y.clone();
    let mut sum = Rat::zero();
    let mut k: i64 = 0;
    while pw.abs() > eps {
        sum += &pw / Rat::from_integer(BigInt::from(2 * k + 1));
        pw = round_bits(&(&pw * &y2), bits + 16);
        k += 1;
    }
    round_bits(&(two() * sum), bits + 4)
}

/// Bits needed for `digits` decimal digits plus a guard margin.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}
