//! Univariate polynomials and rational functions over cyclotomic fields, with
//! a recursive-descent parser for the expression grammar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numbers::{parse_rat, CycloElem, DensePoly, Field, Rat, RootOfUnity};

pub type Poly = DensePoly<CycloElem>;

/// Text of a polynomial in `var`, e.g. `1 - z + 2*z^3`.
pub fn poly_to_expr(p: &Poly, var: &str) -> String {
    format_sum(p.coeffs().iter().enumerate().map(|(k, c)| {
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        (c, mono)
    }))
}

/// Joins `c*mono` terms with signs, skipping zero coefficients.
pub(crate) fn format_sum<'a>(terms: impl IntoIterator<Item = (&'a CycloElem, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = match c.as_rat() {
            Some(r) => {
                let mag = crate::numbers::rat_to_string(&r.abs());
                let body = if mono.is_empty() {
                    mag
                } else if r.abs().is_one() {
                    mono
                } else {
                    format!("{mag}*{mono}")
                };
                (r.is_negative(), body)
            }
            None => {
                let e = format!("({})", c.to_expr());
                (false, if mono.is_empty() { e } else { format!("{e}*{mono}") })
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// `num / den`, gcd-reduced, with the lowest nonzero coefficient of `den`
/// equal to one.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.divrem(&g);
        let (mut den, _) = den.divrem(&g);
        let v = den.valuation().unwrap_or(0);
        let lead_low = den.coeff(v).inv().expect("nonzero");
        num = num.scale(&lead_low);
        den = den.scale(&lead_low);
        Ok(Self { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: CycloElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::monomial(CycloElem::one(), 1))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `f(z^k)`.
    pub fn compose_pow(&self, k: usize) -> Self {
        Self {
            num: self.num.compose_pow(k),
            den: self.den.compose_pow(k),
        }
    }

    /// `f(c z)`.
    pub fn scale_arg(&self, c: &CycloElem) -> Self {
        Self::new(self.num.scale_arg(c), self.den.scale_arg(c)).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &CycloElem) -> Option<CycloElem> {
        self.num.eval(x).fdiv(&self.den.eval(x))
    }

    /// Largest conductor among the coefficients.
    pub fn conductor(&self) -> u64 {
        self.num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(|c| c.conductor())
            .fold(1, num_integer::lcm)
    }

    pub fn to_expr(&self) -> String {
        let n = poly_to_expr(&self.num, "z");
        if self.is_poly() && self.den.coeff(0).is_one() {
            return n;
        }
        let wrap = |s: String, p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(n, &self.num),
            wrap(poly_to_expr(&self.den, "z"), &self.den)
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }

    fn combine(a: &Self, b: &Self, sub: bool) -> Self {
        let l = &a.num * &b.den;
        let r = &b.num * &a.den;
        let num = if sub { &l - &r } else { &l + &r };
        Self::new(num, &a.den * &b.den).expect("nonzero denominators")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Add for RatFunc {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::combine(&self, &o, false)
    }
}

impl Sub for RatFunc {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::combine(&self, &o, true)
    }
}

impl Mul for RatFunc {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }
}

impl Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()).expect("nonzero"))
        }
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_expr())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RatFunc::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a constant (no `z`) into a field element.
pub fn parse_constant(text: &str) -> Result<CycloElem> {
    let f = RatFunc::parse(text)?;
    if f.num.degree().unwrap_or(0) > 0 || f.den.degree() != Some(0) {
        return Err(Error::Invalid(format!("expected a constant, got {text:?}")));
    }
    Ok(f.num.coeff(0) * f.den.coeff(0).inv().expect("nonzero"))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let found = self.src[self.pos..]
            .chars()
            .next()
            .map(|c| format!("{c:?}"))
            .unwrap_or_else(|| "end of input".to_string());
        Err(Error::Parse {
            pos: self.pos,
            expected: expected.to_string(),
            found,
        })
    }

    fn parse(mut self) -> Result<RatFunc> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return self.err("operator or end of input");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let Some(inv) = d.inv() else {
                        self.pos = at;
                        return Err(Error::DivisionByZero);
                    };
                    acc = acc * inv;
                }
                // juxtaposition such as `2z` or `3(1 - z)`
                Some(c) if c.is_ascii_digit() || c == 'z' || c == '(' => {
                    acc = acc * self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let e = self.integer()?;
        let e = e.to_u32().ok_or(Error::Invalid("exponent too large".into()))?;
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = acc * base.clone();
        }
        if neg {
            acc.inv().ok_or(Error::DivisionByZero)
        } else {
            Ok(acc)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let r: Rat = parse_rat(&self.src[start..self.pos]).map_err(|_| Error::Parse {
                    pos: start,
                    expected: "number".into(),
                    found: format!("{:?}", &self.src[start..self.pos]),
                })?;
                Ok(RatFunc::constant(CycloElem::from_rat(r)))
            }
            Some('z') => {
                if self.src[self.pos..].starts_with("zeta") {
                    self.pos += 4;
                    if self.peek() != Some('(') {
                        return self.err("'(' after zeta");
                    }
                    self.pos += 1;
                    self.skip_ws();
                    let n = self.integer()?;
                    if self.peek() != Some(')') {
                        return self.err("')'");
                    }
                    self.pos += 1;
                    let n = n.to_u64().filter(|n| *n >= 1).ok_or(Error::Parse {
                        pos: self.pos,
                        expected: "positive order".into(),
                        found: n.to_string(),
                    })?;
                    Ok(RatFunc::constant(CycloElem::root(&RootOfUnity::primitive(n))))
                } else {
                    self.pos += 1;
                    Ok(RatFunc::z())
                }
            }
            _ => self.err("number, 'z', 'zeta(n)' or '('"),
        }
    }
}
