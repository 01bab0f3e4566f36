//! Elements of cyclotomic fields `Q(zeta_n)`, stored densely modulo `Phi_n`.
//!
//! Binary operations on elements with different conductors lift both sides to
//! the lcm conductor first. Conductors are never minimized after arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::rat::{rat_to_string, Rat};
use super::root::RootOfUnity;

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (increasing degree) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = exact_int_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            r[i - dd + j] -= &c * dc;
        }
        q[i - dd] = c;
    }
    q
}

/// Reduces a coefficient vector modulo `Phi_n`, padding to length `phi(n)`.
fn reduce(n: u64, mut v: Vec<Rat>) -> Vec<Rat> {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    if v.len() > d {
        for i in (d..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], Rat::zero());
            if c.is_zero() {
                continue;
            }
            for (j, pc) in phi.iter().enumerate().take(d) {
                if !pc.is_zero() {
                    v[i - d + j] -= &c * Rat::from_integer(pc.clone());
                }
            }
        }
    }
    v.resize(d, Rat::zero());
    v
}

#[derive(Clone, Debug)]
pub struct CycloElem {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycloElem {
    pub fn from_rat(r: Rat) -> Self {
        Self {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// Element from power-basis coefficients in `zeta_n` (reduced as needed).
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rat>) -> Self {
        assert!(conductor >= 1);
        Self {
            conductor,
            coeffs: reduce(conductor, coeffs),
        }
    }

    /// Embeds a root of unity in its own conductor.
    pub fn root(z: &RootOfUnity) -> Self {
        let n = z.n();
        let mut v = vec![Rat::zero(); z.k() as usize + 1];
        v[z.k() as usize] = Rat::one();
        Self::from_coeffs(n, v)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Re-expresses the element in `Q(zeta_m)`; requires `conductor | m`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor must divide target");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        if self.conductor == 1 {
            let mut v = vec![Rat::zero(); euler_phi(m) as usize];
            v[0] = self.coeffs[0].clone();
            return Self {
                conductor: m,
                coeffs: v,
            };
        }
        let mut v = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Self::from_coeffs(m, v)
    }

    fn aligned(&self, o: &Self) -> (Self, Self) {
        if self.conductor == o.conductor {
            return (self.clone(), o.clone());
        }
        let m = self.conductor.lcm(&o.conductor);
        (self.lift(m), o.lift(m))
    }

    /// `Some(r)` when the element is the rational `r`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rat().is_some()
    }

    /// Galois action `zeta -> zeta^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: u64) -> Self {
        let n = self.conductor;
        debug_assert_eq!(a.gcd(&n), 1);
        if n == 1 {
            return self.clone();
        }
        let mut v = vec![Rat::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as u64 * a % n) as usize;
            v[e] += c;
        }
        Self::from_coeffs(n, v)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Upper bound on the complex modulus: sum of absolute coefficients.
    pub fn abs_bound(&self) -> Rat {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Expression text accepted by the rational-function parser.
    pub fn to_expr(&self) -> String {
        if let Some(r) = self.as_rat() {
            return rat_to_string(&r);
        }
        let n = self.conductor;
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = match j {
                0 => String::new(),
                1 => format!("zeta({n})"),
                _ => format!("zeta({n})^{j}"),
            };
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = if basis.is_empty() {
                rat_to_string(&mag)
            } else if mag.is_one() {
                basis
            } else {
                format!("{}*{basis}", rat_to_string(&mag))
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(&format!(" {sign} {body}"));
            }
        }
        out
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = self.aligned(o);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElem {}

impl Add for CycloElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = self.aligned(&o);
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect();
        Self {
            conductor: a.conductor,
            coeffs,
        }
    }
}

impl Sub for CycloElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let (a, b) = self.aligned(&o);
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x - y).collect();
        Self {
            conductor: a.conductor,
            coeffs,
        }
    }
}

impl Mul for CycloElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.conductor == 1 {
            let s = &self.coeffs[0];
            return o.map_coeffs(|c| c * s);
        }
        if o.conductor == 1 {
            let s = &o.coeffs[0];
            return self.map_coeffs(|c| c * s);
        }
        let (a, b) = self.aligned(&o);
        let mut v = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Self::from_coeffs(a.conductor, v)
    }
}

impl Neg for CycloElem {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c)
    }
}

impl Zero for CycloElem {
    fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for CycloElem {
    fn one() -> Self {
        Self::from_rat(Rat::one())
    }
}

impl Field for CycloElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Self::from_rat(self.coeffs[0].recip()));
        }
        use super::poly::DensePoly;
        let n = self.conductor;
        let a = DensePoly::new(self.coeffs.clone());
        let m = DensePoly::new(
            cyclotomic_poly(n)
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        );
        let (g, s, _) = a.xgcd(&m);
        debug_assert_eq!(g.degree(), Some(0));
        Some(Self::from_coeffs(n, s.coeffs().to_vec()))
    }
}

impl From<Rat> for CycloElem {
    fn from(r: Rat) -> Self {
        Self::from_rat(r)
    }
}
