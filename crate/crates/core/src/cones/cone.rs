//! Finitely generated rational cones: membership, bases and simplicial
//! enclosures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{lp_solve, LpStatus};
use crate::error::{Error, Result};
use crate::numbers::field::{rank, solve};
use crate::numbers::hp::ln_int;
use crate::numbers::rat::{serde_rat_mat, serde_rat_vec};
use crate::numbers::{radical_less_than_one, RadicalReal, Rat};

/// `{ sum a_i g_i : a_i >= 0 }`; generators are kept exactly as given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub dim: usize,
    #[serde(with = "serde_rat_mat")]
    pub generators: Vec<Vec<Rat>>,
}

impl RationalCone {
    pub fn new(dim: usize, generators: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in dimension {dim}",
                g.len()
            )));
        }
        Ok(RationalCone { dim, generators })
    }

    pub fn from_ints(dim: usize, gens: &[Vec<i64>]) -> Result<Self> {
        Self::new(dim, gens.iter().map(|g| ints(g)).collect())
    }
}

pub(crate) fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

pub(crate) fn dot(u: &[Rat], v: &[Rat]) -> Rat {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Scales a nonzero rational vector by a positive factor to a primitive
/// integer vector.
pub fn primitive_integer(v: &[Rat]) -> Vec<Rat> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    nums.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Membership verdict with its exact certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// Nonnegative coefficients reproducing `x` (members).
    #[serde(with = "serde_rat_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<Rat>,
    /// `phi` with `phi(g) >= 0` on generators and `phi(x) < 0` (non-members).
    #[serde(with = "serde_rat_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub functional: Vec<Rat>,
}

impl Membership {
    /// Re-checks the certificate by exact substitution.
    pub fn verify(&self, x: &[Rat], cone: &RationalCone) -> bool {
        if self.member {
            if self.coefficients.len() != cone.generators.len() || self.coefficients.iter().any(|a| a.is_negative()) {
                return false;
            }
            (0..cone.dim).all(|d| {
                let s: Rat = self
                    .coefficients
                    .iter()
                    .zip(&cone.generators)
                    .map(|(a, g)| a * &g[d])
                    .sum();
                s == x[d]
            })
        } else {
            self.functional.len() == cone.dim
                && dot(&self.functional, x).is_negative()
                && cone.generators.iter().all(|g| !dot(&self.functional, g).is_negative())
        }
    }
}

/// Decides `x in C` with a coefficient or separating-functional certificate.
pub fn cone_member(x: &[Rat], cone: &RationalCone) -> Result<Membership> {
    if x.len() != cone.dim {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} in dimension {}",
            x.len(),
            cone.dim
        )));
    }
    let r = cone.generators.len();
    let a: Vec<Vec<Rat>> = (0..cone.dim)
        .map(|d| cone.generators.iter().map(|g| g[d].clone()).collect())
        .collect();
    let res = lp_solve(&vec![Rat::zero(); r], &a, x, &vec![true; r])?;
    match res.status {
        LpStatus::Infeasible => {
            let phi: Vec<Rat> = res.farkas.iter().map(|y| -y.clone()).collect();
            Ok(Membership {
                member: false,
                coefficients: Vec::new(),
                functional: primitive_integer(&phi),
            })
        }
        _ => Ok(Membership {
            member: true,
            coefficients: res.primal,
            functional: Vec::new(),
        }),
    }
}

/// Result of greedy basis extraction: kept and dropped generator indices, with
/// a membership certificate (over the kept generators) for each dropped one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeBasis {
    pub kept: Vec<usize>,
    pub dropped: Vec<usize>,
    pub certificates: Vec<Membership>,
}

impl ConeBasis {
    pub fn generators(&self, gens: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        self.kept.iter().map(|&i| gens[i].clone()).collect()
    }
}

/// Greedy elimination in input order: drop `g` when it lies in the cone of the
/// generators still present.
pub fn cone_basis(gens: &[Vec<Rat>]) -> Result<ConeBasis> {
    let Some(dim) = gens.first().map(|g| g.len()) else {
        return Err(Error::Invalid("cone basis of an empty generator list".into()));
    };
    let mut alive: Vec<usize> = (0..gens.len()).collect();
    let mut dropped = Vec::new();
    for i in 0..gens.len() {
        let others: Vec<Vec<Rat>> = alive.iter().filter(|&&j| j != i).map(|&j| gens[j].clone()).collect();
        let cone = RationalCone::new(dim, others)?;
        if cone_member(&gens[i], &cone)?.member {
            alive.retain(|&j| j != i);
            dropped.push(i);
        }
    }
    let kept_cone = RationalCone::new(dim, alive.iter().map(|&j| gens[j].clone()).collect())?;
    let certificates = dropped
        .iter()
        .map(|&i| cone_member(&gens[i], &kept_cone))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeBasis {
        kept: alive,
        dropped,
        certificates,
    })
}

/// A linear functional that is exactly decidable for negativity and can be
/// approximated by rationals to any precision.
pub trait NegativeFunctional {
    /// Exact test `l(v) < 0`.
    fn is_negative(&self, v: &[Rat]) -> bool;
    /// Rational approximation of the weights, roughly to `bits` bits.
    fn approximate(&self, bits: u32) -> Vec<Rat>;
}

/// A functional with exact rational weights.
pub struct RationalFunctional(pub Vec<Rat>);

impl NegativeFunctional for RationalFunctional {
    fn is_negative(&self, v: &[Rat]) -> bool {
        dot(&self.0, v).is_negative()
    }
    fn approximate(&self, _bits: u32) -> Vec<Rat> {
        self.0.clone()
    }
}

/// `l(v) = sum v_p log p` over a fixed prime list.
pub struct LogWeights(pub Vec<u64>);

impl NegativeFunctional for LogWeights {
    fn is_negative(&self, v: &[Rat]) -> bool {
        let x = RadicalReal::new(self.0.iter().copied().zip(v.iter().cloned()).collect());
        radical_less_than_one(&x)
    }
    fn approximate(&self, bits: u32) -> Vec<Rat> {
        self.0.iter().map(|&p| ln_int(p, bits)).collect()
    }
}

/// `t` linearly independent vectors whose cone contains `C` and which all lie
/// in the open half-space `l < 0`. Returns the basis rays unchanged when the
/// cone is already simplicial; otherwise builds a circumscribing simplex of
/// the cross-section `phi = -1` for a rational approximation `phi` of `l`,
/// refining the approximation until every vertex passes the exact test.
pub fn enclosing_simplicial_cone(cone: &RationalCone, functional: &dyn NegativeFunctional) -> Result<Vec<Vec<Rat>>> {
    let gens = &cone.generators;
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    for (i, g) in gens.iter().enumerate() {
        if !functional.is_negative(g) {
            return Err(Error::NotInHalfSpace(i));
        }
    }
    let t = rank(gens);
    let basis = cone_basis(gens)?;
    if basis.kept.len() == t {
        return Ok(basis.generators(gens));
    }
    let extreme = basis.generators(gens);

    // coordinates relative to t independent generators spanning the cone
    let mut w: Vec<Vec<Rat>> = Vec::new();
    for g in &extreme {
        let mut trial = w.clone();
        trial.push(g.clone());
        if rank(&trial) == trial.len() {
            w = trial;
        }
        if w.len() == t {
            break;
        }
    }
    let wt: Vec<Vec<Rat>> = (0..cone.dim)
        .map(|d| w.iter().map(|v| v[d].clone()).collect())
        .collect();
    let coords: Vec<Vec<Rat>> = extreme
        .iter()
        .map(|g| solve(&wt, g).expect("generator lies in the span"))
        .collect();

    let to_ambient = |c: &[Rat]| -> Vec<Rat> {
        (0..cone.dim)
            .map(|d| c.iter().zip(&w).map(|(a, v)| a * &v[d]).sum())
            .collect()
    };
    let mut bits = 8;
    for _ in 0..5 {
        let approx = functional.approximate(bits);
        // phi in coordinates
        let phi: Vec<Rat> = w.iter().map(|v| dot(&approx, v)).collect();
        if coords.iter().all(|c| dot(&phi, c).is_negative()) {
            if let Some(verts) = simplex_over_section(&phi, &coords, t) {
                for k in (2..=16).step_by(2) {
                    let scale = Rat::from_integer(BigInt::one() << k);
                    let rays: Vec<Vec<Rat>> = verts.iter().map(|v| round_direction(v, &scale)).collect();
                    if encloses(&rays, &coords) {
                        let amb: Vec<Vec<Rat>> = rays.iter().map(|c| primitive_integer(&to_ambient(c))).collect();
                        if amb.iter().all(|u| functional.is_negative(u)) {
                            return Ok(amb);
                        }
                    }
                }
            }
        }
        bits *= 2;
    }
    Err(Error::Invalid(
        "could not certify a simplicial enclosure in the half-space".into(),
    ))
}

/// Scales `v` so its largest entry has magnitude `scale`, then rounds to integers.
fn round_direction(v: &[Rat], scale: &Rat) -> Vec<Rat> {
    let m = v.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero);
    if m.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| (x * scale / &m).round()).collect()
}

/// `rays` are independent and every point is a nonnegative combination of them.
fn encloses(rays: &[Vec<Rat>], pts: &[Vec<Rat>]) -> bool {
    let t = rays.len();
    if rank(rays) != t {
        return false;
    }
    let rt: Vec<Vec<Rat>> = (0..t).map(|d| rays.iter().map(|u| u[d].clone()).collect()).collect();
    pts.iter().all(|p| match solve(&rt, p) {
        Some(c) => c.iter().all(|x| !x.is_negative()),
        None => false,
    })
}

/// Vertices (in coordinates) of a simplex in `{phi = -1}` containing the
/// normalized points; the cone over them contains every point.
fn simplex_over_section(phi: &[Rat], pts: &[Vec<Rat>], t: usize) -> Option<Vec<Vec<Rat>>> {
    let section: Vec<Vec<Rat>> = pts
        .iter()
        .map(|c| {
            let s = -dot(phi, c);
            c.iter().map(|x| x / &s).collect()
        })
        .collect();
    if t == 1 {
        return Some(vec![section[0].clone()]);
    }
    // origin and direction basis of the affine hyperplane
    let origin = section[0].clone();
    let dirs = crate::numbers::field::nullspace(&[phi.to_vec()], t);
    if dirs.len() != t - 1 {
        return None;
    }
    let et: Vec<Vec<Rat>> = (0..t).map(|d| dirs.iter().map(|e| e[d].clone()).collect()).collect();
    let ys: Vec<Vec<Rat>> = section
        .iter()
        .map(|p| {
            let diff: Vec<Rat> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
            solve(&et, &diff)
        })
        .collect::<Option<Vec<_>>>()?;
    let k = t - 1;
    let lo: Vec<Rat> = (0..k)
        .map(|j| ys.iter().map(|y| y[j].clone()).min().unwrap() - Rat::one())
        .collect();
    let hi: Vec<Rat> = (0..k)
        .map(|j| ys.iter().map(|y| y[j].clone()).max().unwrap() + Rat::one())
        .collect();
    let width: Rat = lo.iter().zip(&hi).map(|(l, h)| h - l).sum();
    let mut verts = vec![lo.clone()];
    for j in 0..k {
        let mut v = lo.clone();
        v[j] += &width;
        verts.push(v);
    }
    Some(
        verts
            .iter()
            .map(|y| {
                (0..t)
                    .map(|d| &origin[d] + y.iter().zip(&dirs).map(|(a, e)| a * &e[d]).sum::<Rat>())
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(gens: &[Vec<i64>]) -> RationalCone {
        RationalCone::from_ints(gens[0].len(), gens).unwrap()
    }

    #[test]
    fn membership_examples() {
        let c = cone(&[vec![1, 0], vec![0, 1]]);
        let m = cone_member(&ints(&[1, 1]), &c).unwrap();
        assert!(m.member && m.coefficients == ints(&[1, 1]));
        let m = cone_member(&ints(&[-1, 0]), &c).unwrap();
        assert!(!m.member);
        assert_eq!(m.functional, ints(&[1, 0]));
        assert!(m.verify(&ints(&[-1, 0]), &c));
        let c = cone(&[vec![-1, 0], vec![1, -1]]);
        let m = cone_member(&ints(&[0, -1]), &c).unwrap();
        assert_eq!(m.coefficients, ints(&[1, 1]));
    }

    #[test]
    fn basis_examples() {
        let g: Vec<Vec<Rat>> = [[1, 0], [1, 1], [0, 1]].iter().map(|v| ints(v)).collect();
        assert_eq!(cone_basis(&g).unwrap().kept, vec![0, 2]);
        let g: Vec<Vec<Rat>> = [[-1, 0], [0, -1], [1, -1]].iter().map(|v| ints(v)).collect();
        assert_eq!(cone_basis(&g).unwrap().kept, vec![0, 2]);
        let g = vec![ints(&[2, 0])];
        assert_eq!(cone_basis(&g).unwrap().kept, vec![0]);
    }

    #[test]
    fn enclosure_of_simplicial_cones() {
        let c = cone(&[vec![-1, 0], vec![1, -1]]);
        let rays = enclosing_simplicial_cone(&c, &LogWeights(vec![2, 3])).unwrap();
        assert_eq!(rays, vec![ints(&[-1, 0]), ints(&[1, -1])]);
        let c = cone(&[vec![-2, 1], vec![1, -2], vec![-1, 0]]);
        let rays = enclosing_simplicial_cone(&c, &LogWeights(vec![2, 3])).unwrap();
        assert_eq!(rays, vec![ints(&[-2, 1]), ints(&[1, -2])]);
    }

    #[test]
    fn enclosure_of_square_cross_section() {
        let c = cone(&[vec![1, 1, -1], vec![-1, 1, -1], vec![1, -1, -1], vec![-1, -1, -1]]);
        let f = RationalFunctional(ints(&[0, 0, 1]));
        let rays = enclosing_simplicial_cone(&c, &f).unwrap();
        assert_eq!(rays.len(), 3);
        assert_eq!(rank(&rays), 3);
        let enc = RationalCone::new(3, rays.clone()).unwrap();
        for g in &c.generators {
            assert!(cone_member(g, &enc).unwrap().member);
        }
        assert!(rays.iter().all(|u| f.is_negative(u)));
    }

    #[test]
    fn enclosure_with_log_weights_in_rank_three() {
        let c = cone(&[
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
            vec![3, -1, -1],
            vec![-1, 2, -1],
        ]);
        let f = LogWeights(vec![2, 3, 5]);
        let rays = enclosing_simplicial_cone(&c, &f).unwrap();
        let enc = RationalCone::new(3, rays.clone()).unwrap();
        assert_eq!(rank(&rays), 3);
        for g in &c.generators {
            assert!(cone_member(g, &enc).unwrap().member);
        }
        assert!(rays.iter().all(|u| f.is_negative(u)));
    }

    #[test]
    fn half_space_violation() {
        let c = cone(&[vec![1, 0]]);
        assert_eq!(
            enclosing_simplicial_cone(&c, &LogWeights(vec![2, 3])),
            Err(Error::NotInHalfSpace(0))
        );
    }
}
