//! Multivariate polynomials, monomial substitution, fiber decomposition and
//! block-diagonal multivariate Mahler systems.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ratfunc::{format_sum, Poly, RatFunc};
use super::system::MahlerSystem;
use crate::error::{Error, Result};
use crate::numbers::CycloElem;

/// Sparse polynomial in `z_1..z_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycloElem>,
}

fn total(e: &[u32]) -> u64 {
    e.iter().map(|&x| u64::from(x)).sum()
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], CycloElem::one())
    }

    pub fn monomial(exp: Vec<u32>, c: CycloElem) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, CycloElem> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[u32]) -> CycloElem {
        self.terms.get(exp).cloned().unwrap_or_else(CycloElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: CycloElem) {
        assert_eq!(exp.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// Drops terms of total degree above `n`.
    pub fn truncate(&self, n: u64) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) <= n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.clone() * c2.clone());
            }
        }
        r
    }

    /// `z^lambda * p(z^mu)`.
    pub fn from_univariate(p: &Poly, mu: &[u32], lambda: &[u32]) -> Self {
        let mut r = Self::zero(mu.len());
        for (k, c) in p.coeffs().iter().enumerate() {
            let e = lambda.iter().zip(mu).map(|(l, m)| l + m * k as u32).collect();
            r.add_term(e, c.clone());
        }
        r
    }

    /// Graded text with variables `z1..zt`.
    pub fn to_expr(&self) -> String {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (total(e), std::cmp::Reverse((*e).clone())));
        format_sum(keys.into_iter().map(|e| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(i, x)| {
                    if *x == 1 {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{x}", i + 1)
                    }
                })
                .collect();
            (&self.terms[e], mono.join("*"))
        }))
    }
}

/// `sum c_n z^{n mu}`, truncated at total degree `n_max`.
pub fn substitute_monomial(series: &[CycloElem], mu: &[u32], n_max: u64) -> Result<MPoly> {
    if mu.iter().all(|&m| m == 0) {
        return Err(Error::Invalid("exponent vector must be nonzero".into()));
    }
    let step = total(mu);
    let mut r = MPoly::zero(mu.len());
    for (n, c) in series.iter().enumerate() {
        if n as u64 * step > n_max {
            break;
        }
        r.add_term(mu.iter().map(|m| m * n as u32).collect(), c.clone());
    }
    Ok(r)
}

/// Groups monomials by class modulo `Z mu1`, keyed by the smallest
/// representative in the nonnegative orthant: `h = sum z^lambda a_lambda(z^mu1)`.
pub fn fiber_decompose(h: &MPoly, mu1: &[u32]) -> Result<BTreeMap<Vec<u32>, Poly>> {
    if mu1.len() != h.nvars() {
        return Err(Error::DimensionMismatch("exponent vector length".into()));
    }
    if mu1.iter().all(|&m| m == 0) {
        return Err(Error::Invalid("exponent vector must be nonzero".into()));
    }
    let mut groups: BTreeMap<Vec<u32>, Vec<CycloElem>> = BTreeMap::new();
    for (e, c) in h.terms() {
        let k = e
            .iter()
            .zip(mu1)
            .filter(|(_, m)| **m > 0)
            .map(|(x, m)| x / m)
            .min()
            .expect("nonzero mu") as usize;
        let lambda: Vec<u32> = e.iter().zip(mu1).map(|(x, m)| x - m * k as u32).collect();
        let coeffs = groups.entry(lambda).or_default();
        if coeffs.len() <= k {
            coeffs.resize(k + 1, CycloElem::zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(groups.into_iter().map(|(l, c)| (l, Poly::new(c))).collect())
}

/// Inverse of [`fiber_decompose`].
pub fn fiber_reconstruct(fibers: &BTreeMap<Vec<u32>, Poly>, mu1: &[u32]) -> MPoly {
    fibers.iter().fold(MPoly::zero(mu1.len()), |acc, (l, p)| {
        acc.add(&MPoly::from_univariate(p, mu1, l))
    })
}

/// Quotient of multivariate polynomials, kept unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiRatFunc {
    pub num: MPoly,
    pub den: MPoly,
}

impl MultiRatFunc {
    /// `f(z^mu)`.
    pub fn substitute(f: &RatFunc, mu: &[u32]) -> Self {
        let zero = vec![0; mu.len()];
        Self {
            num: MPoly::from_univariate(f.num(), mu, &zero),
            den: MPoly::from_univariate(f.den(), mu, &zero),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            num: MPoly::zero(nvars),
            den: MPoly::one(nvars),
        }
    }

    pub fn to_expr(&self) -> String {
        if self.den == MPoly::one(self.den.nvars()) {
            return self.num.to_expr();
        }
        let wrap = |p: &MPoly| {
            let s = p.to_expr();
            if p.terms().len() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// One block: a univariate system evaluated along `z^mu`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub system: MahlerSystem,
    pub mu: Vec<u32>,
}

/// Block-diagonal system `H(z) = A(z) H(T z)` with `T = r I_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiMahlerSystem {
    pub nvars: usize,
    pub radix: u64,
    pub blocks: Vec<Block>,
    pub block_matrix: Vec<Vec<MultiRatFunc>>,
}

pub(crate) fn dependent(a: &[u32], b: &[u32]) -> bool {
    (0..a.len())
        .all(|i| (i + 1..a.len()).all(|j| u64::from(a[i]) * u64::from(b[j]) == u64::from(a[j]) * u64::from(b[i])))
}

/// Assembles the block-diagonal system from aligned univariate systems.
pub fn build_block_system(inputs: &[(MahlerSystem, Vec<u32>)]) -> Result<MultiMahlerSystem> {
    let Some((first, mu0)) = inputs.first() else {
        return Err(Error::Invalid("no blocks".into()));
    };
    let t = mu0.len();
    for (s, mu) in inputs {
        if s.q != first.q {
            return Err(Error::RadixMismatch(first.q, s.q));
        }
        if mu.len() != t || t == 0 {
            return Err(Error::DimensionMismatch(format!(
                "exponent vectors must have length {t}"
            )));
        }
        if mu.iter().all(|&m| m == 0) {
            return Err(Error::Invalid("exponent vector must be nonzero".into()));
        }
    }
    for i in 0..inputs.len() {
        for j in i + 1..inputs.len() {
            if dependent(&inputs[i].1, &inputs[j].1) {
                return Err(Error::DependentExponents { i, j });
            }
        }
    }
    let total_dim: usize = inputs.iter().map(|(s, _)| s.dim()).sum();
    let mut block_matrix = vec![vec![MultiRatFunc::zero(t); total_dim]; total_dim];
    let mut offset = 0;
    for (s, mu) in inputs {
        for (r, row) in s.matrix.iter().enumerate() {
            for (c, f) in row.iter().enumerate() {
                block_matrix[offset + r][offset + c] = MultiRatFunc::substitute(f, mu);
            }
        }
        offset += s.dim();
    }
    Ok(MultiMahlerSystem {
        nvars: t,
        radix: first.q,
        blocks: inputs
            .iter()
            .map(|(s, mu)| Block {
                system: s.clone(),
                mu: mu.clone(),
            })
            .collect(),
        block_matrix,
    })
}

impl MultiMahlerSystem {
    pub fn dim(&self) -> usize {
        self.block_matrix.len()
    }

    /// `T = radix * I_t`.
    pub fn transformation(&self) -> Vec<Vec<u64>> {
        (0..self.nvars)
            .map(|i| (0..self.nvars).map(|j| if i == j { self.radix } else { 0 }).collect())
            .collect()
    }

    pub fn spectral_radius(&self) -> u64 {
        self.radix
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.system.dim();
                Some(o)
            })
            .collect()
    }

    /// Global row index of each block's distinguished component.
    pub fn distinguished_rows(&self) -> Vec<usize> {
        self.offsets()
            .iter()
            .zip(&self.blocks)
            .map(|(o, b)| o + b.system.distinguished)
            .collect()
    }

    /// Components of block `i` to total degree `n`, by the multivariate
    /// recurrence `a(z^mu) H(z) = Â(z^mu) H(z^r)`.
    pub fn expand_block(&self, i: usize, n: u64) -> Result<Vec<MPoly>> {
        let block = &self.blocks[i];
        let sys = &block.system;
        let sp = sys.split()?;
        let coeffs = sp.a_hat_coeffs();
        let m = sys.dim();
        let t = self.nvars;
        let r = self.radix as u32;
        let mu = &block.mu;
        let g0 = sys.expand(0)?.series.iter().map(|c| c[0].clone()).collect::<Vec<_>>();
        let mut h: HashMap<Vec<u32>, Vec<CycloElem>> = HashMap::new();
        h.insert(vec![0; t], g0);
        let a_deg = sp.a.degree().unwrap_or(0);
        for d in 1..=n {
            for e in compositions(d as u32, t) {
                let mut v = vec![CycloElem::zero(); m];
                for (j, cj) in coeffs.iter().enumerate() {
                    let Some(rest) = sub_multiple(&e, mu, j as u32) else {
                        break;
                    };
                    if rest.iter().any(|x| x % r != 0) {
                        continue;
                    }
                    let k: Vec<u32> = rest.iter().map(|x| x / r).collect();
                    if let Some(gk) = h.get(&k) {
                        for (row, out) in cj.iter().zip(v.iter_mut()) {
                            for (a, b) in row.iter().zip(gk) {
                                if !a.is_zero() && !b.is_zero() {
                                    *out = out.clone() + a.clone() * b.clone();
                                }
                            }
                        }
                    }
                }
                for j in 1..=a_deg {
                    let Some(prev) = sub_multiple(&e, mu, j as u32) else {
                        break;
                    };
                    let aj = sp.a.coeff(j);
                    if let (false, Some(gp)) = (aj.is_zero(), h.get(&prev)) {
                        for (out, b) in v.iter_mut().zip(gp) {
                            *out = out.clone() - aj.clone() * b.clone();
                        }
                    }
                }
                if v.iter().any(|x| !x.is_zero()) {
                    h.insert(e, v);
                }
            }
        }
        let mut out = vec![MPoly::zero(t); m];
        for (e, v) in h {
            for (p, c) in out.iter_mut().zip(v) {
                p.add_term(e.clone(), c);
            }
        }
        Ok(out)
    }
}

fn sub_multiple(e: &[u32], mu: &[u32], j: u32) -> Option<Vec<u32>> {
    e.iter().zip(mu).map(|(x, m)| x.checked_sub(m * j)).collect()
}

/// All exponent vectors of length `t` with entry sum `d`.
pub(crate) fn compositions(d: u32, t: usize) -> Vec<Vec<u32>> {
    if t == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .rev()
        .flat_map(|first| {
            compositions(d - first, t - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct MultiJson {
    variables: usize,
    radix_power: u64,
    transformation: Vec<Vec<u64>>,
    spectral_radius: u64,
    blocks: Vec<Block>,
    distinguished_rows: Vec<usize>,
    block_matrix: Vec<Vec<String>>,
}

impl Serialize for MultiMahlerSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiJson {
            variables: self.nvars,
            radix_power: self.radix,
            transformation: self.transformation(),
            spectral_radius: self.spectral_radius(),
            blocks: self.blocks.clone(),
            distinguished_rows: self.distinguished_rows(),
            block_matrix: self
                .block_matrix
                .iter()
                .map(|r| r.iter().map(|f| f.to_expr()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiMahlerSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MultiJson::deserialize(d)?;
        let inputs: Vec<(MahlerSystem, Vec<u32>)> = raw.blocks.into_iter().map(|b| (b.system, b.mu)).collect();
        build_block_system(&inputs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: i64) -> CycloElem {
        CycloElem::from_int(n)
    }

    fn sys(json: &str) -> MahlerSystem {
        serde_json::from_str(json).unwrap()
    }

    fn fredholm() -> MahlerSystem {
        sys(r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#)
    }

    fn thue_morse() -> MahlerSystem {
        sys(r#"{"q":2,"matrix":[["1 - z"]],"seeds":{"0":["1"]},"distinguished":0}"#)
    }

    #[test]
    fn substitution_examples() {
        let p = substitute_monomial(&[c(0), c(1), c(1)], &[1, 1], 4).unwrap();
        assert_eq!(p.to_expr(), "z1*z2 + z1^2*z2^2");
        let one = substitute_monomial(&[c(1)], &[3, 5], 4).unwrap();
        assert_eq!(one, MPoly::one(2));
        let f = fredholm().expand(8).unwrap();
        let p = substitute_monomial(f.component(0), &[2, 1], 8).unwrap();
        assert_eq!(p.to_expr(), "z1^2*z2 + z1^4*z2^2");
        assert!(substitute_monomial(&[c(1)], &[0, 0], 4).is_err());
    }

    #[test]
    fn fiber_examples() {
        let mut h = MPoly::zero(2);
        h.add_term(vec![1, 0], c(1));
        h.add_term(vec![1, 1], c(1));
        let f = fiber_decompose(&h, &[1, 0]).unwrap();
        let z = Poly::monomial(c(1), 1);
        assert_eq!(f.len(), 2);
        assert_eq!(f[&vec![0, 0]], z);
        assert_eq!(f[&vec![0, 1]], z);
        let one = fiber_decompose(&MPoly::one(3), &[1, 2, 0]).unwrap();
        assert_eq!(one[&vec![0, 0, 0]], Poly::one());
    }

    #[test]
    fn blocks_match_substitution() {
        let f4 = fredholm().iterate(2).unwrap();
        let t4 = thue_morse().iterate(2).unwrap();
        let m = build_block_system(&[(f4.clone(), vec![1, 0]), (t4.clone(), vec![0, 1])]).unwrap();
        assert_eq!(m.transformation(), vec![vec![4, 0], vec![0, 4]]);
        assert_eq!(m.spectral_radius(), 4);
        assert_eq!(m.distinguished_rows(), vec![0, 2]);
        let n = 24;
        for (i, s) in [f4, t4].iter().enumerate() {
            let got = m.expand_block(i, n).unwrap();
            let uni = s.expand(n as usize).unwrap();
            for (comp, series) in got.iter().zip(&uni.series) {
                let want = substitute_monomial(series, &m.blocks[i].mu, n).unwrap();
                assert_eq!(*comp, want);
            }
        }
        let json = serde_json::to_string(&m).unwrap();
        let back: MultiMahlerSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn single_block_is_univariate() {
        let m = build_block_system(&[(thue_morse(), vec![1])]).unwrap();
        assert_eq!(m.block_matrix[0][0].to_expr(), "1 - z1");
        let got = m.expand_block(0, 20).unwrap();
        let uni = thue_morse().expand(20).unwrap();
        assert_eq!(got[0], substitute_monomial(uni.component(0), &[1], 20).unwrap());
    }

    #[test]
    fn block_errors() {
        let r = build_block_system(&[(fredholm(), vec![1, 0]), (thue_morse(), vec![2, 0])]);
        assert_eq!(r, Err(Error::DependentExponents { i: 0, j: 1 }));
        let r = build_block_system(&[(fredholm(), vec![1, 0]), (thue_morse().iterate(2).unwrap(), vec![0, 1])]);
        assert_eq!(r, Err(Error::RadixMismatch(2, 4)));
    }

    fn arb_mpoly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((prop::collection::vec(0u32..6, 3), -5i64..6), 0..12).prop_map(|ts| {
            let mut p = MPoly::zero(3);
            for (e, v) in ts {
                p.add_term(e, c(v));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn fiber_roundtrip(h in arb_mpoly(), mu in prop::collection::vec(0u32..4, 3)) {
            prop_assume!(mu.iter().any(|&m| m > 0));
            let f = fiber_decompose(&h, &mu).unwrap();
            prop_assert_eq!(fiber_reconstruct(&f, &mu), h);
            for l in f.keys() {
                let below = l.iter().zip(&mu).all(|(x, m)| *m == 0 || x >= m);
                prop_assert!(!below);
            }
        }
    }
}
