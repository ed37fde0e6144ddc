//! Sparse exact elimination over ℚ.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::chain::Q;

/// Sparse vector with strictly increasing indices and nonzero entries.
pub type SparseVec = Vec<(usize, Q)>;

/// `a + factor · b`.
fn axpy(a: &SparseVec, factor: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + factor * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon basis keyed by leading index; leading entries are one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading entries until the lead is not a pivot.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, x)) = v.first().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = axpy(&v, &-x, row),
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((lead, x)) = v.first().cloned() else {
            return false;
        };
        let inv = Q::one() / x;
        let row = v.into_iter().map(|(i, y)| (i, y * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank<I>(vectors: I) -> usize
where
    I: IntoIterator<Item = SparseVec>,
{
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Assemble a sparse vector from possibly repeated `(index, coefficient)` pairs.
pub fn collect_sparse<I>(entries: I) -> SparseVec
where
    I: IntoIterator<Item = (usize, Q)>,
{
    let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, x) in entries {
        *acc.entry(i).or_insert_with(Q::zero) += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Betti numbers and boundary ranks in one degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RankReport {
    pub degree: usize,
    pub dim_chain_space: usize,
    /// Rank of the boundary arriving in this degree, from degree + 1.
    pub rank_boundary_in: usize,
    /// Rank of the boundary leaving this degree.
    pub rank_boundary_out: usize,
    pub betti: usize,
}

/// Homology ranks of a finite complex given by bases in degrees `0..=top` and
/// a boundary on basis elements; reports degrees `0..top`.
pub fn complex_ranks<K, F>(bases: &[Vec<K>], mut boundary: F) -> Vec<RankReport>
where
    K: Hash + Eq + Clone,
    F: FnMut(&K) -> Vec<(K, Q)>,
{
    let index: Vec<HashMap<&K, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();
    let mut out_rank = vec![0usize; bases.len()];
    for n in 1..bases.len() {
        let target = &index[n - 1];
        out_rank[n] = rank(bases[n].iter().map(|k| {
            collect_sparse(
                boundary(k)
                    .into_iter()
                    .map(|(face, x)| (*target.get(&face).expect("face in basis"), x)),
            )
        }));
    }
    (0..bases.len().saturating_sub(1))
        .map(|n| {
            let dim = bases[n].len();
            let rank_in = out_rank[n + 1];
            let rank_out = out_rank[n];
            RankReport {
                degree: n,
                dim_chain_space: dim,
                rank_boundary_in: rank_in,
                rank_boundary_out: rank_out,
                betti: dim - rank_out - rank_in,
            }
        })
        .collect()
}
