//! Empirical filling estimates in a ball-truncated equivariant bar complex.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::bar::{boundary_cbar, normalize_orbit};
use crate::chain::{format_q, q, tuple_diameter, Chain, ChainKind, DiamRule, GroupChain, Tuple, Q};
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::linalg::collect_sparse;
use crate::lp::min_weighted_l1;
use crate::metric::{least_squares, GrowthFit, WordMetric};
use crate::norms::{NormFamily, NormKind};
use crate::sample::rng;

/// Leading-identity tuples whose entries are pairwise within distance `radius`.
#[derive(Clone, Debug)]
pub struct TruncatedBar {
    model: GroupModel,
    radius: usize,
    bases: Vec<Vec<Tuple>>,
    index: Vec<HashMap<Tuple, usize>>,
}

impl TruncatedBar {
    /// Bases in degrees `0..=top`.
    pub fn new(model: &GroupModel, radius: usize, top: usize) -> Result<Self> {
        let metric = WordMetric::new(model);
        let ball = metric.ball(radius)?;
        let mut bases = vec![vec![vec![model.identity()]]];
        for d in 1..=top {
            let mut next = Vec::new();
            for t in &bases[d - 1] {
                for g in &ball {
                    if t.iter().all(|s| metric.distance(s, g) <= radius) {
                        let mut u = t.clone();
                        u.push(g.clone());
                        next.push(u);
                    }
                }
            }
            bases.push(next);
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        Ok(Self {
            model: model.clone(),
            radius,
            bases,
            index,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn basis(&self, d: usize) -> &[Tuple] {
        &self.bases[d]
    }

    pub fn contains(&self, t: &[crate::GroupElement]) -> bool {
        self.index.get(t.len() - 1).is_some_and(|m| m.contains_key(t))
    }

    fn column(&self, d: usize, i: usize) -> Result<Vec<(usize, Q)>> {
        let c = boundary_cbar(&self.model, &Chain::generator(ChainKind::BarEquivariant, self.bases[d][i].clone()))?;
        Ok(collect_sparse(c.terms().map(|(t, x)| (self.index[d - 1][t], x.clone()))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FillingConfig {
    pub degree: usize,
    pub radius: usize,
    pub k: u32,
    pub p_grid: Vec<u32>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FillStatus {
    Ok,
    Zero,
    /// Not fillable inside the truncation; says nothing about the group.
    Truncation,
}

#[derive(Clone, Debug, Serialize)]
pub struct FillingRow {
    pub source: String,
    pub support_diameter: usize,
    pub status: FillStatus,
    /// `‖b‖_{k,1}` of the optimal filling.
    pub fill_norm: Option<String>,
    /// Upper bound from the known filling, when there is one.
    pub known_norm: Option<String>,
    /// `‖b‖_{k,1} / ‖c‖_{k+p,1}` per `p` in the grid.
    pub ratios: Vec<Option<String>>,
    #[serde(skip)]
    pub fill_value: Option<Q>,
    #[serde(skip)]
    pub known_value: Option<Q>,
    #[serde(skip)]
    pub ratio_values: Vec<Option<Q>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PSummary {
    pub p: u32,
    pub max_ratio: Option<String>,
    pub fit: Option<GrowthFit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FillingReport {
    pub config: FillingConfig,
    pub rows: Vec<FillingRow>,
    pub per_p: Vec<PSummary>,
    /// Least `p` whose log-ratio slope against `log(1 + diam)` is not positive.
    pub least_bounded_p: Option<u32>,
}

/// Slope tolerance below which a ratio sequence counts as bounded.
pub const SLOPE_TOLERANCE: f64 = 1e-9;

/// Fills sampled boundaries `c = ∂b₀` (and, in degree 1, the cycles
/// `m(e,s) − (e,sᵐ)` for each generator `s`) by weighted LP and tabulates
/// `‖b‖_{k,1}/‖c‖_{k+p,1}`.
pub fn filling_estimate_check(model: &GroupModel, cfg: &FillingConfig) -> Result<FillingReport> {
    let n = cfg.degree;
    if n == 0 {
        return Err(Error::Unsupported("fillings start at degree 1".into()));
    }
    let tb = TruncatedBar::new(model, cfg.radius, n + 1)?;
    let metric = WordMetric::new(model);
    let norm = NormFamily::new(model, NormKind::RdChain);
    let columns = (0..tb.basis(n + 1).len())
        .map(|i| tb.column(n + 1, i))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<Q> = tb
        .basis(n + 1)
        .iter()
        .map(|t| norm.weight(ChainKind::BarEquivariant, t, cfg.k))
        .collect();

    let mut cases: Vec<(String, GroupChain, Option<GroupChain>)> = Vec::new();
    if n == 1 {
        for s in model.generators() {
            let mut power = s.clone();
            for m in 2..=cfg.radius as i64 {
                power = model.mul(&power, s);
                let mut prefix = s.clone();
                let mut b0 = Chain::zero(ChainKind::BarEquivariant, 2);
                for _ in 2..=m {
                    prefix = model.mul(&prefix, s);
                    let t = vec![model.identity(), s.clone(), prefix.clone()];
                    if !tb.contains(&t) {
                        break;
                    }
                    b0.add_term(t, q(1));
                }
                let mut c = Chain::zero(ChainKind::BarEquivariant, 1);
                c.add_term(vec![model.identity(), s.clone()], q(m));
                c.add_term(vec![model.identity(), power.clone()], q(-1));
                let known = (boundary_cbar(model, &b0)? == c).then_some(b0);
                cases.push((format!("power {} {m}", model.format_element(s)), c, known));
            }
        }
    }
    let mut r = rng(cfg.seed);
    let top = tb.basis(n + 1);
    for i in 0..cfg.samples {
        let mut b0 = Chain::zero(ChainKind::BarEquivariant, n + 1);
        for _ in 0..r.gen_range(1..=3) {
            let t = top[r.gen_range(0..top.len())].clone();
            let x = r.gen_range(1..=2i64) * if r.gen_bool(0.5) { 1 } else { -1 };
            b0.add_term(normalize_orbit(model, &t), q(x));
        }
        let c = boundary_cbar(model, &b0)?;
        cases.push((format!("random {i}"), c, Some(b0)));
    }

    let rows_n = tb.basis(n).len();
    let mut rows = Vec::with_capacity(cases.len());
    for (source, c, known) in cases {
        let diam = c
            .terms()
            .map(|(t, _)| tuple_diameter(&metric, t, DiamRule::MaxPairwise))
            .max()
            .unwrap_or(0);
        let known_value = known.as_ref().map(|b| norm.norm(b, cfg.k));
        let (status, fill_value) = if c.is_zero() {
            (FillStatus::Zero, Some(Q::zero()))
        } else if c.terms().any(|(t, _)| !tb.contains(t)) {
            (FillStatus::Truncation, None)
        } else {
            let mut rhs = vec![Q::zero(); rows_n];
            for (t, x) in c.terms() {
                rhs[tb.index[n][t]] = x.clone();
            }
            match min_weighted_l1(rows_n, &columns, &rhs, &weights)? {
                Some(sol) => (FillStatus::Ok, Some(sol.value)),
                None => (FillStatus::Truncation, None),
            }
        };
        let ratio_values: Vec<Option<Q>> = cfg
            .p_grid
            .iter()
            .map(|&p| {
                let f = fill_value.as_ref()?;
                let den = norm.norm(&c, cfg.k + p);
                Some(if den.is_zero() { Q::zero() } else { f / den })
            })
            .collect();
        rows.push(FillingRow {
            source,
            support_diameter: diam,
            status,
            fill_norm: fill_value.as_ref().map(format_q),
            known_norm: known_value.as_ref().map(format_q),
            ratios: ratio_values.iter().map(|x| x.as_ref().map(format_q)).collect(),
            fill_value,
            known_value,
            ratio_values,
        });
    }

    let per_p: Vec<PSummary> = cfg
        .p_grid
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            let vals: Vec<(usize, &Q)> = rows
                .iter()
                .filter(|r| r.status == FillStatus::Ok)
                .filter_map(|r| Some((r.support_diameter, r.ratio_values[j].as_ref()?)))
                .collect();
            let max = vals.iter().map(|v| v.1).max().cloned();
            let points: Vec<(f64, f64)> = vals
                .iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(d, x)| (((1 + d) as f64).ln(), x.to_f64().unwrap_or(f64::NAN).ln()))
                .collect();
            PSummary {
                p,
                max_ratio: max.as_ref().map(format_q),
                fit: least_squares(&points),
            }
        })
        .collect();
    let least_bounded_p = per_p
        .iter()
        .find(|s| s.fit.as_ref().is_some_and(|f| f.slope <= SLOPE_TOLERANCE))
        .map(|s| s.p);
    Ok(FillingReport {
        config: cfg.clone(),
        rows,
        per_p,
        least_bounded_p,
    })
}
