//! Univariate Mahler systems `G(z) = A(z) G(z^q)`: JSON form, expansion,
//! iteration and root-of-unity twists.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ratfunc::{parse_constant, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::numbers::field::{det, inverse, mat_mul};
use crate::numbers::{CycloElem, Field, RootOfUnity};

/// Radix, matrix, seed coefficients and the row of interest.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerSystem {
    pub q: u64,
    pub matrix: Vec<Vec<RatFunc>>,
    /// Seed coefficient vectors `G_n`, keyed by `n`.
    pub seeds: BTreeMap<usize, Vec<CycloElem>>,
    pub distinguished: usize,
}

/// `A = Â / a` with `a(0) = 1`.
#[derive(Clone, Debug)]
pub struct SplitMatrix {
    pub a: Poly,
    pub a_hat: Vec<Vec<Poly>>,
}

impl SplitMatrix {
    /// Coefficient matrices of `Â`, indexed by degree.
    pub fn a_hat_coeffs(&self) -> Vec<Vec<Vec<CycloElem>>> {
        let m = self.a_hat.len();
        let deg = self
            .a_hat
            .iter()
            .flatten()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        (0..=deg)
            .map(|j| {
                (0..m)
                    .map(|r| (0..m).map(|c| self.a_hat[r][c].coeff(j)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn a_hat_degree(&self) -> usize {
        self.a_hat
            .iter()
            .flatten()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}

impl MahlerSystem {
    /// Checks shapes, the radix and the absence of poles at the origin.
    pub fn new(
        q: u64,
        matrix: Vec<Vec<RatFunc>>,
        seeds: BTreeMap<usize, Vec<CycloElem>>,
        distinguished: usize,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invalid(format!("radix {q} < 2")));
        }
        let m = matrix.len();
        if m == 0 || matrix.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("matrix must be square and nonempty".into()));
        }
        if let Some((n, _)) = seeds.iter().find(|(_, v)| v.len() != m) {
            return Err(Error::DimensionMismatch(format!("seed {n} must have length {m}")));
        }
        if distinguished >= m {
            return Err(Error::DimensionMismatch(format!(
                "distinguished row {distinguished} out of range"
            )));
        }
        let s = Self {
            q,
            matrix,
            seeds,
            distinguished,
        };
        s.split()?;
        Ok(s)
    }

    /// Builds the forward system from `G(z^q) = B(z) G(z)`.
    pub fn from_inverse(
        q: u64,
        b: Vec<Vec<RatFunc>>,
        seeds: BTreeMap<usize, Vec<CycloElem>>,
        distinguished: usize,
    ) -> Result<Self> {
        if b.is_empty() || b.iter().any(|r| r.len() != b.len()) {
            return Err(Error::DimensionMismatch("matrix must be square and nonempty".into()));
        }
        let a = inverse(&b).ok_or(Error::SingularSystem)?;
        Self::new(q, a, seeds, distinguished)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn determinant(&self) -> RatFunc {
        det(&self.matrix)
    }

    /// Fails with `SingularSystem` when `det A` vanishes identically.
    pub fn check_nonsingular(&self) -> Result<()> {
        if self.determinant().is_zero() {
            Err(Error::SingularSystem)
        } else {
            Ok(())
        }
    }

    pub fn conductor(&self) -> u64 {
        self.matrix
            .iter()
            .flatten()
            .map(|f| f.conductor())
            .chain(self.seeds.values().flatten().map(|c| c.conductor()))
            .fold(1, num_integer::lcm)
    }

    /// Common denominator form with `a(0) = 1`.
    pub fn split(&self) -> Result<SplitMatrix> {
        let mut a = Poly::one();
        for f in self.matrix.iter().flatten() {
            a = a.lcm(f.den());
        }
        if a.valuation() != Some(0) {
            return Err(Error::PoleAtOrigin);
        }
        let a = a.scale(&a.coeff(0).inv().expect("nonzero constant term"));
        let a_hat = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|f| f.num() * &a.divrem(f.den()).0).collect())
            .collect();
        Ok(SplitMatrix { a, a_hat })
    }

    /// Truncated solution `G` to order `n`, determined by the recurrence and
    /// the seeds; the residual identity is re-checked before returning.
    pub fn expand(&self, n: usize) -> Result<Expansion> {
        let sp = self.split()?;
        let coeffs = sp.a_hat_coeffs();
        let m = self.dim();
        let top = self.seeds.keys().next_back().copied().unwrap_or(0).max(n);
        let q = self.q as usize;
        let mut g: Vec<Vec<CycloElem>> = Vec::with_capacity(top + 1);
        let m0: Vec<Vec<CycloElem>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| {
                        let d = if r == c { CycloElem::one() } else { CycloElem::zero() };
                        d - coeffs[0][r][c].clone()
                    })
                    .collect()
            })
            .collect();
        let g0 = match self.seeds.get(&0) {
            Some(s) => {
                if mat_vec(&m0, s).iter().any(|x| !x.is_zero()) {
                    return Err(Error::InconsistentSeeds { index: 0 });
                }
                s.clone()
            }
            None => {
                if crate::numbers::field::rank(&m0) < m {
                    return Err(Error::InsufficientSeeds { index: 0 });
                }
                vec![CycloElem::zero(); m]
            }
        };
        g.push(g0);
        for k in 1..=top {
            let mut v = vec![CycloElem::zero(); m];
            for (j, cj) in coeffs.iter().enumerate().take(k + 1) {
                if (k - j) % q != 0 {
                    continue;
                }
                add_assign(&mut v, &mat_vec(cj, &g[(k - j) / q]));
            }
            for j in 1..=k.min(sp.a.degree().unwrap_or(0)) {
                let aj = sp.a.coeff(j);
                if aj.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(&g[k - j]) {
                    if !y.is_zero() {
                        *x = x.clone() - aj.clone() * y.clone();
                    }
                }
            }
            if let Some(s) = self.seeds.get(&k) {
                if *s != v {
                    return Err(Error::InconsistentSeeds { index: k });
                }
            }
            g.push(v);
        }
        check_residual(&sp, &coeffs, q, &g, top.saturating_sub(sp.a_hat_degree()))?;
        g.truncate(n + 1);
        let series = (0..m).map(|i| g.iter().map(|v| v[i].clone()).collect()).collect();
        Ok(Expansion { order: n, series })
    }

    /// `A(z) A(z^q) ... A(z^{q^{l-1}})` with radix `q^l`.
    pub fn iterate(&self, l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::Invalid("iteration count must be at least 1".into()));
        }
        let radix = self.q.checked_pow(l).ok_or(Error::RadixOverflow)?;
        let mut acc = self.matrix.clone();
        let mut step = 1usize;
        for _ in 1..l {
            step = step.checked_mul(self.q as usize).ok_or(Error::RadixOverflow)?;
            let next: Vec<Vec<RatFunc>> = self
                .matrix
                .iter()
                .map(|row| row.iter().map(|f| f.compose_pow(step)).collect())
                .collect();
            acc = mat_mul(&acc, &next);
        }
        Ok(Self {
            q: radix,
            matrix: acc,
            seeds: self.seeds.clone(),
            distinguished: self.distinguished,
        })
    }

    /// System for `(G(w z))_{w in orbit(zeta)}`; the distinguished row is
    /// the original one in the block of `zeta`.
    pub fn twist(&self, zeta: &RootOfUnity) -> Result<Self> {
        let orbit = crate::numbers::orbit_of_root(zeta, self.q)?;
        let m = self.dim();
        let big = m * orbit.len();
        let mut matrix = vec![vec![RatFunc::zero(); big]; big];
        for (b, w) in orbit.iter().enumerate() {
            let target = orbit
                .iter()
                .position(|x| *x == w.pow_u(self.q))
                .expect("orbit is closed");
            let we = CycloElem::root(w);
            for r in 0..m {
                for c in 0..m {
                    matrix[b * m + r][target * m + c] = self.matrix[r][c].scale_arg(&we);
                }
            }
        }
        let seeds = self
            .seeds
            .iter()
            .map(|(&n, v)| {
                let vec = orbit
                    .iter()
                    .flat_map(|w| {
                        let wn = CycloElem::root(&w.pow_u(n as u64));
                        v.iter().map(move |x| wn.clone() * x.clone())
                    })
                    .collect();
                (n, vec)
            })
            .collect();
        Ok(Self {
            q: self.q,
            matrix,
            seeds,
            distinguished: self.distinguished,
        })
    }
}

fn mat_vec(m: &[Vec<CycloElem>], v: &[CycloElem]) -> Vec<CycloElem> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(CycloElem::zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        })
        .collect()
}

fn add_assign(v: &mut [CycloElem], w: &[CycloElem]) {
    for (x, y) in v.iter_mut().zip(w) {
        if !y.is_zero() {
            *x = x.clone() + y.clone();
        }
    }
}

/// Coefficients `0..=upto` of `a(z)G(z) - Â(z)G(z^q)` must vanish.
fn check_residual(
    sp: &SplitMatrix,
    coeffs: &[Vec<Vec<CycloElem>>],
    q: usize,
    g: &[Vec<CycloElem>],
    upto: usize,
) -> Result<()> {
    let m = g[0].len();
    for k in 0..=upto.min(g.len() - 1) {
        let mut lhs = vec![CycloElem::zero(); m];
        for j in 0..=k.min(sp.a.degree().unwrap_or(0)) {
            let aj = sp.a.coeff(j);
            add_assign(
                &mut lhs,
                &g[k - j].iter().map(|y| aj.clone() * y.clone()).collect::<Vec<_>>(),
            );
        }
        let mut rhs = vec![CycloElem::zero(); m];
        let mut i = 0;
        while q * i <= k {
            if let Some(c) = coeffs.get(k - q * i) {
                add_assign(&mut rhs, &mat_vec(c, &g[i]));
            }
            i += 1;
        }
        if lhs != rhs {
            return Err(Error::InconsistentSeeds { index: k });
        }
    }
    Ok(())
}

/// Truncated power series of every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub order: usize,
    /// `series[i][n]` is coefficient `n` of component `i`.
    pub series: Vec<Vec<CycloElem>>,
}

impl Expansion {
    pub fn component(&self, i: usize) -> &[CycloElem] {
        &self.series[i]
    }
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    order: usize,
    series: Vec<Vec<String>>,
}

impl Serialize for Expansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            order: self.order,
            series: self
                .series
                .iter()
                .map(|c| c.iter().map(|x| x.to_expr()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ExpansionJson::deserialize(d)?;
        let series = raw
            .series
            .iter()
            .map(|c| c.iter().map(|x| parse_constant(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self {
            order: raw.order,
            series,
        })
    }
}

#[derive(Serialize, Deserialize, Default, PartialEq, Eq, Clone, Copy, Debug)]
#[serde(rename_all = "lowercase")]
enum Orientation {
    #[default]
    Forward,
    Inverse,
}

impl Orientation {
    fn is_forward(&self) -> bool {
        *self == Orientation::Forward
    }
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    q: u64,
    matrix: Vec<Vec<String>>,
    seeds: BTreeMap<usize, Vec<String>>,
    distinguished: usize,
    #[serde(default, skip_serializing_if = "Orientation::is_forward")]
    orientation: Orientation,
}

impl Serialize for MahlerSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SystemJson {
            q: self.q,
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|f| f.to_expr()).collect())
                .collect(),
            seeds: self
                .seeds
                .iter()
                .map(|(n, v)| (*n, v.iter().map(|x| x.to_expr()).collect()))
                .collect(),
            distinguished: self.distinguished,
            orientation: Orientation::Forward,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MahlerSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SystemJson::deserialize(d)?;
        let build = || -> Result<Self> {
            let matrix = raw
                .matrix
                .iter()
                .map(|r| r.iter().map(|e| RatFunc::parse(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let seeds = raw
                .seeds
                .iter()
                .map(|(n, v)| {
                    v.iter()
                        .map(|x| parse_constant(x))
                        .collect::<Result<Vec<_>>>()
                        .map(|v| (*n, v))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            match raw.orientation {
                Orientation::Forward => Self::new(raw.q, matrix, seeds, raw.distinguished),
                Orientation::Inverse => Self::from_inverse(raw.q, matrix, seeds, raw.distinguished),
            }
        };
        build().map_err(serde::de::Error::custom)
    }
}
