//! Weighted ℓ¹ norms on group algebras and chain spaces, and growth profiles
//! of the comparison maps.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bar::{boundary_cbar, boundary_cprime, localize_to_equivariant, phi_g, psi_inv};
use crate::chain::{format_q, tuple_diameter, Chain, ChainKind, DiamRule, GroupChain, Q};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::homotopy::Transfer;
use crate::metric::{conjugacy_class, least_squares, GrowthFit, WordMetric};
use crate::sample::{substream, ElementPool};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// `Σ |f(g)| (1+|g|)^k`.
    GroupAlgebra,
    /// `Σ |c| Π_i (1+|g_i|)^k`.
    HochschildTensor,
    /// `Σ |c| diam^k`, with `0⁰ = 1`.
    RdChain,
}

#[derive(Clone, Debug)]
pub struct NormFamily {
    metric: WordMetric,
    kind: NormKind,
    rule: DiamRule,
}

fn pow(base: usize, k: u32) -> Q {
    Q::from_integer(BigInt::from(base).pow(k))
}

impl NormFamily {
    pub fn new(model: &GroupModel, kind: NormKind) -> Self {
        Self {
            metric: WordMetric::new(model),
            kind,
            rule: DiamRule::default(),
        }
    }

    pub fn with_diam_rule(mut self, rule: DiamRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn metric(&self) -> &WordMetric {
        &self.metric
    }

    /// Weight of one basis tuple. `C′` tuples are read as `(1, g₁, …, g_n)`.
    pub fn weight(&self, kind: ChainKind, t: &[GroupElement], k: u32) -> Q {
        match self.kind {
            NormKind::GroupAlgebra | NormKind::HochschildTensor => t
                .iter()
                .map(|g| pow(1 + self.metric.length(g), k))
                .product(),
            NormKind::RdChain => {
                let diam = if kind == ChainKind::BarPrime {
                    let mut full = Vec::with_capacity(t.len() + 1);
                    full.push(self.metric.model().identity());
                    full.extend_from_slice(t);
                    tuple_diameter(&self.metric, &full, self.rule)
                } else {
                    tuple_diameter(&self.metric, t, self.rule)
                };
                pow(diam, k)
            }
        }
    }

    pub fn norm(&self, c: &GroupChain, k: u32) -> Q {
        c.terms()
            .map(|(t, x)| x.abs() * self.weight(c.kind(), t, k))
            .sum()
    }

    /// `(‖c‖_{k,1}, ‖∂c‖_{k,1})` on a bar complex.
    pub fn rd_chain_seminorm_pair(&self, c: &GroupChain, k: u32) -> Result<(Q, Q)> {
        let model = self.metric.model();
        let dc = match c.kind() {
            ChainKind::BarPrime => boundary_cprime(model, c)?,
            ChainKind::BarEquivariant => boundary_cbar(model, c)?,
            other => {
                return Err(Error::KindMismatch {
                    expected: "bar_prime or bar_equivariant".into(),
                    found: other.to_string(),
                })
            }
        };
        Ok((self.norm(c, k), self.norm(&dc, k)))
    }
}

/// Convolution in the group algebra.
pub fn convolve(model: &GroupModel, f: &GroupChain, g: &GroupChain) -> GroupChain {
    let mut out = Chain::zero(ChainKind::GroupRing, 0);
    for (a, x) in f.terms() {
        for (b, y) in g.terms() {
            out.add_term(vec![model.mul(&a[0], &b[0])], x * y);
        }
    }
    out
}

/// Maps whose norm growth is profiled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMap {
    PiH,
    IotaH,
    /// `ψ ∘ φ_h⁻¹`, measured on `π_h` images.
    PsiPhiInv,
    /// `φ_h ∘ ψ⁻¹`, measured on equivariant images.
    PhiPsiInv,
    /// The pushed homotopy `D̄`.
    DBar,
}

impl GrowthMap {
    pub const ALL: [GrowthMap; 5] = [
        GrowthMap::PiH,
        GrowthMap::IotaH,
        GrowthMap::PsiPhiInv,
        GrowthMap::PhiPsiInv,
        GrowthMap::DBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GrowthMap::PiH => "pi_h",
            GrowthMap::IotaH => "iota_h",
            GrowthMap::PsiPhiInv => "psi_phi_inv",
            GrowthMap::PhiPsiInv => "phi_psi_inv",
            GrowthMap::DBar => "d_bar",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::MalformedInput(format!("unknown map {s}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthConfig {
    pub map: GrowthMap,
    pub degree: usize,
    pub radius: usize,
    /// Pairs `(k, k′)`: output measured with `k`, input with `k′`.
    pub grid: Vec<(u32, u32)>,
    pub samples: usize,
    pub seed: u64,
}

/// Pairs `(k, k′)` with `a ≤ k ≤ k′ ≤ b`.
pub fn triangular_grid(a: u32, b: u32) -> Vec<(u32, u32)> {
    (a..=b).flat_map(|k| (k..=b).map(move |kp| (k, kp))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub h_rep: String,
    pub h_length: usize,
    pub k: u32,
    pub k_prime: u32,
    #[serde(skip)]
    pub max_ratio: Option<Q>,
    pub max_ratio_num: Option<String>,
    pub max_ratio_den: Option<String>,
    pub ratio_float: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthFitRow {
    pub k: u32,
    pub k_prime: u32,
    pub fit: Option<GrowthFit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    pub config: GrowthConfig,
    pub rows: Vec<GrowthRow>,
    pub fits: Vec<GrowthFitRow>,
}

/// Class representatives of the ball of radius `radius` (all classes when finite).
pub fn class_sample(model: &GroupModel, radius: usize) -> Result<Vec<GroupElement>> {
    let pool = ElementPool::new(model, radius)?;
    let reps: std::collections::BTreeSet<_> = pool
        .elements()
        .iter()
        .map(|g| conjugacy_class(model, g))
        .collect();
    let metric = WordMetric::new(model);
    let mut reps: Vec<_> = reps.into_iter().map(|x| x.rep).collect();
    reps.sort_by(|a, b| metric.shortlex_cmp(a, b));
    Ok(reps)
}

/// Input and output chains of `map` on one sampled generator.
fn apply(tr: &Transfer, map: GrowthMap, t: Vec<GroupElement>) -> Result<(GroupChain, GroupChain)> {
    let model = tr.model();
    let loc = tr.localization();
    let c = Chain::generator(ChainKind::Hochschild, t);
    Ok(match map {
        GrowthMap::PiH => {
            let out = loc.pi_h(&c)?;
            (c, out)
        }
        GrowthMap::IotaH => {
            let input = loc.pi_h(&c)?;
            let out = loc.iota_h(&input)?;
            (input, out)
        }
        GrowthMap::PsiPhiInv => {
            let input = loc.pi_h(&c)?;
            (input, localize_to_equivariant(loc, &c)?)
        }
        GrowthMap::PhiPsiInv => {
            let input = localize_to_equivariant(loc, &c)?;
            let out = phi_g(model, tr.h(), &psi_inv(model, &input)?)?;
            (input, out)
        }
        GrowthMap::DBar => {
            let out = tr.d_bar(&c)?;
            (c, out)
        }
    })
}

fn norm_for(model: &GroupModel, c: &GroupChain) -> NormFamily {
    let kind = match c.kind() {
        ChainKind::BarEquivariant | ChainKind::BarPrime => NormKind::RdChain,
        _ => NormKind::HochschildTensor,
    };
    NormFamily::new(model, kind)
}

fn profile_row_set(
    model: &GroupModel,
    cfg: &GrowthConfig,
    pool: &ElementPool,
    h: &GroupElement,
    index: u64,
) -> Vec<GrowthRow> {
    let metric = WordMetric::new(model);
    let mut rng = substream(cfg.seed, index);
    let tr = Transfer::new(model, h);
    let mut best: Vec<Option<Q>> = vec![None; cfg.grid.len()];
    let mut error = None;
    for _ in 0..cfg.samples {
        let t = pool.class_tuple(&mut rng, h, cfg.degree);
        match apply(&tr, cfg.map, t) {
            Ok((input, output)) => {
                let nin = norm_for(model, &input);
                let nout = norm_for(model, &output);
                for (slot, &(k, kp)) in best.iter_mut().zip(&cfg.grid) {
                    let den = nin.norm(&input, kp);
                    if den.is_zero() {
                        continue;
                    }
                    let r = nout.norm(&output, k) / den;
                    if slot.as_ref().is_none_or(|b| r > *b) {
                        *slot = Some(r);
                    }
                }
            }
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        }
    }
    cfg.grid
        .iter()
        .zip(best)
        .map(|(&(k, kp), r)| {
            let r = if error.is_some() { None } else { r };
            GrowthRow {
                h_rep: model.format_element(h),
                h_length: metric.length(h),
                k,
                k_prime: kp,
                max_ratio_num: r.as_ref().map(|x| x.numer().to_string()),
                max_ratio_den: r.as_ref().map(|x| x.denom().to_string()),
                ratio_float: r.as_ref().and_then(|x| x.to_f64()),
                max_ratio: r,
                error: error.clone(),
            }
        })
        .collect()
}

/// Maximal norm ratio of `cfg.map` per class representative in `hs`, over
/// `cfg.samples` seeded generators of the class component in degree
/// `cfg.degree` built from the ball of radius `cfg.radius`.
pub fn operator_growth_profile(
    model: &GroupModel,
    hs: &[GroupElement],
    cfg: &GrowthConfig,
) -> Result<GrowthProfile> {
    let pool = ElementPool::new(model, cfg.radius)?;
    let rows: Vec<GrowthRow> = hs
        .par_iter()
        .enumerate()
        .map(|(i, h)| profile_row_set(model, cfg, &pool, h, i as u64))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let fits = cfg
        .grid
        .iter()
        .map(|&(k, kp)| {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.k == k && r.k_prime == kp)
                .filter_map(|r| Some((((1 + r.h_length) as f64).ln(), r.ratio_float?.ln())))
                .filter(|p| p.1.is_finite())
                .collect();
            GrowthFitRow {
                k,
                k_prime: kp,
                fit: least_squares(&points),
            }
        })
        .collect();
    Ok(GrowthProfile {
        config: cfg.clone(),
        rows,
        fits,
    })
}

pub fn format_ratio(r: &Option<Q>) -> String {
    r.as_ref().map(format_q).unwrap_or_default()
}
