//! Exact rational two-phase simplex with Bland's rule.
//!
//! Problems have the form `maximize c.x  s.t.  A x = b`, with a per-variable
//! flag saying whether `x_j >= 0` or `x_j` is free. Infeasible problems return
//! a Farkas vector `y` with `y.A_j <= 0` for nonnegative columns, `y.A_j = 0`
//! for free columns and `y.b > 0`. Unbounded problems return a feasible point
//! and a ray along which the objective grows.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::rat::{serde_rat_opt, serde_rat_vec};
use crate::numbers::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`lp_solve`] with exact certificates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpResult {
    pub status: LpStatus,
    #[serde(with = "serde_rat_opt", default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<Rat>,
    /// Optimal point, or a feasible point when unbounded.
    #[serde(with = "serde_rat_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub primal: Vec<Rat>,
    /// Farkas vector when infeasible.
    #[serde(with = "serde_rat_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub farkas: Vec<Rat>,
    /// Improving ray when unbounded.
    #[serde(with = "serde_rat_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub ray: Vec<Rat>,
}

impl LpResult {
    fn new(status: LpStatus) -> Self {
        LpResult {
            status,
            optimum: None,
            primal: Vec::new(),
            farkas: Vec::new(),
            ray: Vec::new(),
        }
    }
}

struct Tableau {
    /// `m` rows of `ncols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Outcome {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut d = cost.to_vec();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                if !row[j].is_zero() {
                    *dj -= cb * &row[j];
                }
            }
        }
        d
    }

    /// Minimizes `cost.x` over columns with `allowed[j]`.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> Outcome {
        loop {
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..self.ncols).find(|&j| allowed[j] && d[j].is_negative()) else {
                return Outcome::Optimal;
            };
            let rhs = self.ncols;
            let mut best: Option<(Rat, usize, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((b, _, bv)) => ratio < *b || (ratio == *b && self.basis[r] < *bv),
                };
                if better {
                    best = Some((ratio, r, self.basis[r]));
                }
            }
            match best {
                None => return Outcome::Unbounded(enter),
                Some((_, r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn values(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[r][self.ncols].clone();
        }
        x
    }
}

/// Solves `maximize objective.x  s.t.  a x = b` exactly.
pub fn lp_solve(objective: &[Rat], a: &[Vec<Rat>], b: &[Rat], nonneg: &[bool]) -> Result<LpResult> {
    let n = objective.len();
    let m = a.len();
    if b.len() != m || nonneg.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "objective {n}, rows {m}, rhs {}, flags {}",
            b.len(),
            nonneg.len()
        )));
    }
    // split free variables: column map (original index, sign)
    let mut cols: Vec<(usize, bool)> = Vec::new();
    for j in 0..n {
        cols.push((j, true));
        if !nonneg[j] {
            cols.push((j, false));
        }
    }
    let nx = cols.len();
    let ncols = nx + m;
    let signs: Vec<bool> = b.iter().map(|x| !x.is_negative()).collect();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = |x: &Rat| if signs[i] { x.clone() } else { -x.clone() };
        let mut row: Vec<Rat> = cols
            .iter()
            .map(|&(j, pos)| if pos { flip(&a[i][j]) } else { -flip(&a[i][j]) })
            .collect();
        row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        row.push(flip(&b[i]));
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (nx..nx + m).collect(),
        ncols,
    };

    // phase 1
    let mut cost1 = vec![Rat::zero(); ncols];
    for c in cost1.iter_mut().skip(nx) {
        *c = Rat::one();
    }
    let all = vec![true; ncols];
    t.run(&cost1, &all);
    let phase1: Rat = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= nx)
        .map(|(r, _)| t.rows[r][ncols].clone())
        .sum();
    if phase1.is_positive() {
        let d = t.reduced_costs(&cost1);
        let farkas = (0..m)
            .map(|i| {
                let y = Rat::one() - &d[nx + i];
                if signs[i] {
                    y
                } else {
                    -y
                }
            })
            .collect();
        let mut res = LpResult::new(LpStatus::Infeasible);
        res.farkas = farkas;
        return Ok(res);
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= nx {
            match (0..nx).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => {
                    t.pivot(r, j);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }

    // phase 2
    let mut cost2 = vec![Rat::zero(); ncols];
    for (k, &(j, pos)) in cols.iter().enumerate() {
        cost2[k] = if pos {
            -objective[j].clone()
        } else {
            objective[j].clone()
        };
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < nx).collect();
    let outcome = t.run(&cost2, &allowed);
    let fold = |v: &[Rat]| {
        let mut x = vec![Rat::zero(); n];
        for (k, &(j, pos)) in cols.iter().enumerate() {
            if pos {
                x[j] += &v[k];
            } else {
                x[j] -= &v[k];
            }
        }
        x
    };
    let primal = fold(&t.values());
    match outcome {
        Outcome::Optimal => {
            let opt = objective.iter().zip(&primal).map(|(c, x)| c * x).sum();
            let mut res = LpResult::new(LpStatus::Optimal);
            res.optimum = Some(opt);
            res.primal = primal;
            Ok(res)
        }
        Outcome::Unbounded(enter) => {
            let mut dir = vec![Rat::zero(); ncols];
            dir[enter] = Rat::one();
            for (r, &bv) in t.basis.iter().enumerate() {
                dir[bv] = -t.rows[r][enter].clone();
            }
            let mut res = LpResult::new(LpStatus::Unbounded);
            res.primal = primal;
            res.ray = fold(&dir);
            Ok(res)
        }
    }
}

/// Exact substitution check of the certificates carried by `res`.
pub fn verify_lp(res: &LpResult, objective: &[Rat], a: &[Vec<Rat>], b: &[Rat], nonneg: &[bool]) -> bool {
    let dot = |u: &[Rat], v: &[Rat]| -> Rat { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    let feasible = |x: &[Rat]| {
        x.len() == objective.len()
            && a.iter().zip(b).all(|(row, bi)| dot(row, x) == *bi)
            && x.iter().zip(nonneg).all(|(v, nn)| !nn || !v.is_negative())
    };
    match res.status {
        LpStatus::Optimal => feasible(&res.primal) && res.optimum.as_ref() == Some(&dot(objective, &res.primal)),
        LpStatus::Infeasible => {
            let y = &res.farkas;
            if y.len() != a.len() || !dot(y, b).is_positive() {
                return false;
            }
            (0..objective.len()).all(|j| {
                let s: Rat = y.iter().zip(a).map(|(yi, row)| yi * &row[j]).sum();
                if nonneg[j] {
                    !s.is_positive()
                } else {
                    s.is_zero()
                }
            })
        }
        LpStatus::Unbounded => {
            let d = &res.ray;
            feasible(&res.primal)
                && d.len() == objective.len()
                && a.iter().all(|row| dot(row, d).is_zero())
                && d.iter().zip(nonneg).all(|(v, nn)| !nn || !v.is_negative())
                && dot(objective, d).is_positive()
        }
    }
}
