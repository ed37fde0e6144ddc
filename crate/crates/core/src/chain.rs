//! Finitely supported chains with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::metric::WordMetric;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::MalformedInput(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Which complex a chain lives in; fixes the tuple arity in each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// Elements of the group ring, as 1-tuples in degree 0.
    GroupRing,
    Hochschild,
    /// `C′_n(G) = Gⁿ`.
    BarPrime,
    /// `C_n(G) = (G^{n+1})^G`, stored by leading-identity orbit representatives.
    BarEquivariant,
    /// `E_n(G) = G^{n+1}`.
    E,
    Simplicial,
}

impl ChainKind {
    pub fn arity(self, degree: usize) -> usize {
        match self {
            ChainKind::BarPrime => degree,
            _ => degree + 1,
        }
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChainKind::GroupRing => "group_ring",
            ChainKind::Hochschild => "hochschild",
            ChainKind::BarPrime => "bar_prime",
            ChainKind::BarEquivariant => "bar_equivariant",
            ChainKind::E => "e_complex",
            ChainKind::Simplicial => "simplicial",
        };
        f.write_str(s)
    }
}

pub type Tuple = Vec<GroupElement>;

/// A formal linear combination of tuples; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<T = GroupElement> {
    kind: ChainKind,
    degree: usize,
    terms: BTreeMap<Vec<T>, Q>,
}

pub type GroupChain = Chain<GroupElement>;
pub type SimplicialChain = Chain<usize>;

impl<T: Ord + Clone + fmt::Debug> Chain<T> {
    pub fn zero(kind: ChainKind, degree: usize) -> Self {
        Self {
            kind,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis tuple with coefficient one; the degree follows from the arity.
    pub fn generator(kind: ChainKind, tuple: Vec<T>) -> Self {
        let degree = match kind {
            ChainKind::BarPrime => tuple.len(),
            _ => tuple.len().checked_sub(1).expect("nonempty tuple"),
        };
        let mut c = Self::zero(kind, degree);
        c.terms.insert(tuple, Q::one());
        c
    }

    pub fn from_terms<I>(kind: ChainKind, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<T>, Q)>,
    {
        let mut c = Self::zero(kind, degree);
        for (t, x) in terms {
            if t.len() != kind.arity(degree) {
                return Err(Error::MalformedInput(format!(
                    "tuple {t:?} has arity {} but {kind} chains of degree {degree} need {}",
                    t.len(),
                    kind.arity(degree)
                )));
            }
            c.add_term(t, x);
        }
        Ok(c)
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn retag(mut self, kind: ChainKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<T>, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Vec<T>, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, t: &[T]) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, t: Vec<T>, x: Q) {
        if x.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(x);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += x;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.degree != other.degree {
            return Err(Error::KindMismatch {
                expected: format!("{} degree {}", self.kind, self.degree),
                found: format!("{} degree {}", other.kind, other.degree),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &Q::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &-Q::one());
        Ok(out)
    }

    /// `self += factor · other`, ignoring tags.
    pub fn add_assign_unchecked(&mut self, other: &Self, factor: &Q) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x * factor);
        }
    }

    pub fn scale(&self, factor: &Q) -> Self {
        let mut out = Self::zero(self.kind, self.degree);
        if factor.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(t, x)| (t.clone(), x * factor))
            .collect();
        out
    }

    /// Linear extension of a map on basis tuples.
    pub fn map_linear<U, F>(&self, kind: ChainKind, degree: usize, mut f: F) -> Result<Chain<U>>
    where
        U: Ord + Clone + fmt::Debug,
        F: FnMut(&[T]) -> Result<Chain<U>>,
    {
        let mut out = Chain::zero(kind, degree);
        for (t, x) in &self.terms {
            let image = f(t)?;
            out.add_assign_unchecked(&image, x);
        }
        Ok(out)
    }

    /// ℓ¹ mass `Σ |coefficient|`.
    pub fn mass(&self) -> Q {
        self.terms.values().map(|x| x.abs()).sum()
    }
}

/// How the diameter of a tuple `(t₀, …, t_n)` is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiamRule {
    /// `max_{i,j} |t_i⁻¹ t_j|`.
    #[default]
    MaxPairwise,
    /// `max_i |t₀⁻¹ t_i|`, i.e. `max_i |g_i|` on a leading-identity tuple.
    FromFirst,
}

pub fn tuple_diameter(metric: &WordMetric, tuple: &[GroupElement], rule: DiamRule) -> usize {
    match rule {
        DiamRule::MaxPairwise => {
            let mut best = 0;
            for (i, a) in tuple.iter().enumerate() {
                for b in &tuple[i + 1..] {
                    best = best.max(metric.distance(a, b));
                }
            }
            best
        }
        DiamRule::FromFirst => tuple
            .first()
            .map(|t0| tuple.iter().map(|t| metric.distance(t0, t)).max().unwrap_or(0))
            .unwrap_or(0),
    }
}

/// Diameter of every tuple in the support, in term order.
pub fn support_diameter(
    c: &GroupChain,
    metric: &WordMetric,
    rule: DiamRule,
) -> Vec<(Tuple, usize)> {
    c.terms()
        .map(|(t, _)| (t.clone(), tuple_diameter(metric, t, rule)))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    tuple: Vec<String>,
    coeff: String,
}

/// Serialize as a JSON list of `{tuple, coeff}` records in canonical term order.
pub fn chain_to_json(model: &GroupModel, c: &GroupChain) -> Value {
    Value::Array(
        c.terms()
            .map(|(t, x)| {
                json!({
                    "tuple": t.iter().map(|g| model.format_element(g)).collect::<Vec<_>>(),
                    "coeff": format_q(x),
                })
            })
            .collect(),
    )
}

pub fn chain_from_json(
    model: &GroupModel,
    kind: ChainKind,
    degree: usize,
    value: &Value,
) -> Result<GroupChain> {
    let records: Vec<TermRecord> =
        serde_json::from_value(value.clone()).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let terms = records
        .into_iter()
        .map(|r| {
            let tuple = r
                .tuple
                .iter()
                .map(|s| model.parse_element(s))
                .collect::<Result<Vec<_>>>()?;
            Ok((tuple, parse_q(&r.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Chain::from_terms(kind, degree, terms)
}

pub fn simplicial_chain_to_json(labels: &[String], c: &SimplicialChain) -> Value {
    Value::Array(
        c.terms()
            .map(|(t, x)| {
                json!({
                    "tuple": t.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>(),
                    "coeff": format_q(x),
                })
            })
            .collect(),
    )
}
