//! Exact two-phase revised simplex over ℚ.
//!
//! Entering columns are priced by the most negative reduced cost; after
//! [`DEGENERATE_STREAK`] consecutive degenerate pivots the solver switches to
//! Bland's rule until the objective strictly improves, which rules out cycling.

use num_traits::{One, Signed, Zero};

use crate::chain::Q;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

pub const DEGENERATE_STREAK: usize = 8;

/// `min cᵀx` subject to `A x = b`, `x ≥ 0`, with `A` stored by sparse columns.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

impl StandardForm {
    pub fn from_dense(a: Vec<Vec<Q>>, b: Vec<Q>, c: Vec<Q>) -> Result<Self> {
        let n = c.len();
        if a.len() != b.len() || a.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedInput("constraint matrix shape mismatch".into()));
        }
        let columns = (0..n)
            .map(|j| {
                a.iter()
                    .enumerate()
                    .filter(|(_, r)| !r[j].is_zero())
                    .map(|(i, r)| (i, r[j].clone()))
                    .collect()
            })
            .collect();
        Ok(Self {
            rows: b.len(),
            columns,
            b,
            c,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    pub value: Q,
    /// Dual solution `y` with `Aᵀy ≤ c` and `bᵀy = value`.
    pub y: Vec<Q>,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

/// `y · x`, short-circuiting the unit entries that boundary matrices consist of.
fn scaled(y: &Q, x: &Q) -> Q {
    if x.is_one() {
        y.clone()
    } else if (-x).is_one() {
        -y
    } else {
        y * x
    }
}

fn dot(y: &[Q], col: &SparseVec) -> Q {
    col.iter().map(|(i, x)| scaled(&y[*i], x)).sum()
}

/// Basis inverse, basic values and basic indices; column `n + i` is the
/// artificial unit vector of row `i`.
struct Revised<'a> {
    lp: &'a StandardForm,
    /// Row signs making `b` nonnegative.
    sign: Vec<Q>,
    binv: Vec<Vec<Q>>,
    xb: Vec<Q>,
    basis: Vec<usize>,
    pivots: usize,
}

impl<'a> Revised<'a> {
    fn n(&self) -> usize {
        self.lp.columns.len()
    }

    /// `B⁻¹ a_j` for the sign-adjusted column `j`.
    fn direction(&self, j: usize) -> Vec<Q> {
        let m = self.lp.rows;
        if j >= self.n() {
            return (0..m).map(|i| self.binv[i][j - self.n()].clone()).collect();
        }
        let col: SparseVec = self.lp.columns[j]
            .iter()
            .map(|(r, x)| (*r, scaled(x, &self.sign[*r])))
            .collect();
        (0..m).map(|i| dot(&self.binv[i], &col)).collect()
    }

    /// Duals of the sign-adjusted problem, multiplied back by the row signs.
    fn signed_duals(&self, cost: &dyn Fn(usize) -> Q) -> Vec<Q> {
        self.duals(cost)
            .into_iter()
            .zip(&self.sign)
            .map(|(y, s)| scaled(&y, s))
            .collect()
    }

    fn duals(&self, cost: &dyn Fn(usize) -> Q) -> Vec<Q> {
        let m = self.lp.rows;
        let mut y = vec![Q::zero(); m];
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = cost(bj);
            if cb.is_zero() {
                continue;
            }
            for (r, yr) in y.iter_mut().enumerate() {
                if !self.binv[i][r].is_zero() {
                    *yr += &cb * &self.binv[i][r];
                }
            }
        }
        y
    }

    /// Reduced cost of column `j` given signed duals.
    fn reduced_cost(&self, j: usize, y: &[Q], cost: &dyn Fn(usize) -> Q) -> Q {
        cost(j) - dot(y, &self.lp.columns[j])
    }

    fn pivot(&mut self, r: usize, q: usize, u: &[Q]) {
        let inv = Q::one() / &u[r];
        for x in self.binv[r].iter_mut() {
            *x *= &inv;
        }
        self.xb[r] *= &inv;
        let prow = self.binv[r].clone();
        let pxb = self.xb[r].clone();
        for (i, f) in u.iter().enumerate() {
            if i == r || f.is_zero() {
                continue;
            }
            for (x, p) in self.binv[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= f * p;
                }
            }
            self.xb[i] -= f * &pxb;
        }
        self.basis[r] = q;
        self.pivots += 1;
    }

    /// Minimizes over structural columns; `false` when unbounded.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> Q) -> bool {
        let mut streak = 0usize;
        loop {
            let y = self.signed_duals(cost);
            let in_basis: std::collections::HashSet<usize> = self.basis.iter().copied().collect();
            let candidates = (0..self.n()).filter(|j| !in_basis.contains(j));
            let entering = if streak >= DEGENERATE_STREAK {
                candidates
                    .map(|j| (j, self.reduced_cost(j, &y, cost)))
                    .find(|(_, d)| d.is_negative())
            } else {
                let mut best: Option<(usize, Q)> = None;
                for j in candidates {
                    let d = self.reduced_cost(j, &y, cost);
                    if d.is_negative() && best.as_ref().is_none_or(|(_, b)| d < *b) {
                        best = Some((j, d));
                    }
                }
                best
            };
            let Some((q, _)) = entering else {
                return true;
            };
            let u = self.direction(q);
            let mut leave: Option<(Q, usize)> = None;
            for (i, ui) in u.iter().enumerate() {
                if ui.is_positive() {
                    let ratio = &self.xb[i] / ui;
                    let better = match &leave {
                        None => true,
                        Some((t, li)) => {
                            ratio < *t || (ratio == *t && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((ratio, i));
                    }
                }
            }
            let Some((step, r)) = leave else {
                return false;
            };
            if step.is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(r, q, &u);
        }
    }
}

pub fn solve(lp: &StandardForm) -> Result<LpOutcome> {
    let m = lp.rows;
    let n = lp.columns.len();
    if lp.b.len() != m || lp.c.len() != n || lp.columns.iter().flatten().any(|(i, _)| *i >= m) {
        return Err(Error::MalformedInput("constraint matrix shape mismatch".into()));
    }
    let sign: Vec<Q> = lp
        .b
        .iter()
        .map(|b| if b.is_negative() { -Q::one() } else { Q::one() })
        .collect();
    let mut s = Revised {
        lp,
        xb: lp.b.iter().zip(&sign).map(|(b, s)| b * s).collect(),
        sign,
        binv: (0..m)
            .map(|i| (0..m).map(|k| if i == k { Q::one() } else { Q::zero() }).collect())
            .collect(),
        basis: (n..n + m).collect(),
        pivots: 0,
    };
    s.optimize(&|j| if j >= n { Q::one() } else { Q::zero() });
    let infeasibility: Q = s
        .basis
        .iter()
        .zip(&s.xb)
        .filter(|(j, _)| **j >= n)
        .map(|(_, x)| x.clone())
        .sum();
    if !infeasibility.is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    // Pivot zero-level artificials out where possible; the rest sit on
    // redundant rows and never leave.
    for r in 0..m {
        if s.basis[r] < n {
            continue;
        }
        let row = s.binv[r].clone();
        let in_basis: std::collections::HashSet<usize> = s.basis.iter().copied().collect();
        let row: Vec<Q> = row.iter().zip(&s.sign).map(|(x, sg)| scaled(x, sg)).collect();
        let found = (0..n).find(|&j| !in_basis.contains(&j) && !dot(&row, &lp.columns[j]).is_zero());
        if let Some(j) = found {
            let u = s.direction(j);
            s.pivot(r, j, &u);
        }
    }
    let cost = |j: usize| if j >= n { Q::zero() } else { lp.c[j].clone() };
    if !s.optimize(&cost) {
        return Ok(LpOutcome::Unbounded);
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bj) in s.basis.iter().enumerate() {
        if bj < n {
            x[bj] = s.xb[i].clone();
        }
    }
    let value: Q = x.iter().zip(&lp.c).map(|(a, b)| a * b).sum();
    let y = s.signed_duals(&cost);
    Ok(LpOutcome::Optimal(LpSolution {
        x,
        value,
        y,
        pivots: s.pivots,
    }))
}

/// Checks primal feasibility, dual feasibility and equal objectives.
pub fn certify(lp: &StandardForm, sol: &LpSolution) -> bool {
    let mut ax = vec![Q::zero(); lp.rows];
    for (col, xj) in lp.columns.iter().zip(&sol.x) {
        if xj.is_zero() {
            continue;
        }
        for (i, a) in col {
            ax[*i] += a * xj;
        }
    }
    let primal = sol.x.iter().all(|v| !v.is_negative()) && ax == lp.b;
    let dual = lp
        .columns
        .iter()
        .zip(&lp.c)
        .all(|(col, cj)| dot(&sol.y, col) <= *cj);
    let by: Q = lp.b.iter().zip(&sol.y).map(|(b, y)| b * y).sum();
    let cx: Q = lp.c.iter().zip(&sol.x).map(|(c, x)| c * x).sum();
    primal && dual && by == cx && cx == sol.value
}

/// Minimal weighted ℓ¹ solution of `M a = b`, where `M` is given by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Solution {
    pub value: Q,
    pub a: Vec<Q>,
    pub certified: bool,
    pub pivots: usize,
}

/// `min Σ w_j |a_j|` subject to `M a = b`, via the split `a = a⁺ − a⁻`.
/// Returns `None` when `b` is not in the column span.
pub fn min_weighted_l1(
    rows: usize,
    columns: &[SparseVec],
    b: &[Q],
    weights: &[Q],
) -> Result<Option<L1Solution>> {
    let n = columns.len();
    if b.len() != rows || weights.len() != n {
        return Err(Error::MalformedInput("filling problem shape mismatch".into()));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::MalformedInput("negative weight".into()));
    }
    let negated = columns
        .iter()
        .map(|c| c.iter().map(|(i, x)| (*i, -x.clone())).collect());
    let lp = StandardForm {
        rows,
        columns: columns.iter().cloned().chain(negated).collect(),
        b: b.to_vec(),
        c: weights.iter().chain(weights).cloned().collect(),
    };
    match solve(&lp)? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::Unbounded),
        LpOutcome::Optimal(sol) => {
            let certified = certify(&lp, &sol);
            let a = (0..n).map(|j| &sol.x[j] - &sol.x[n + j]).collect();
            Ok(Some(L1Solution {
                value: sol.value,
                a,
                certified,
                pivots: sol.pivots,
            }))
        }
    }
}
