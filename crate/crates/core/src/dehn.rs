//! Finite simplicial complexes, minimal ℓ¹ fillings and higher-order Dehn functions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chain::{format_q, q, Chain, ChainKind, SimplicialChain, Q};
use crate::error::{Error, Result};
use crate::linalg::{collect_sparse, Echelon, SparseVec};
use crate::lp::min_weighted_l1;

/// Default bound on how many candidate chains are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    /// `simplices[d]`: sorted vertex tuples of dimension `d`, in sorted order.
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<Value>,
    #[serde(default)]
    simplices: BTreeMap<String, Vec<Vec<Value>>>,
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::MalformedInput(format!("vertex label {other}"))),
    }
}

impl SimplicialComplex {
    /// Builds the closure under faces of the given simplices.
    pub fn new(labels: Vec<String>, top: &[Vec<usize>]) -> Result<Self> {
        let nv = labels.len();
        if labels.iter().collect::<BTreeSet<_>>().len() != nv {
            return Err(Error::MalformedInput("duplicate vertex label".into()));
        }
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![(0..nv).map(|v| vec![v]).collect()];
        for s in top {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&v| v >= nv) {
                return Err(Error::MalformedInput(format!("bad simplex {s:?}")));
            }
            // Every nonempty subset is a face.
            let d = s.len() - 1;
            while sets.len() <= d {
                sets.push(BTreeSet::new());
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Self {
            labels,
            simplices,
            index,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
        let labels = f.vertices.iter().map(label_of).collect::<Result<Vec<_>>>()?;
        let by_label: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut top = Vec::new();
        for (dim, list) in &f.simplices {
            let d: usize = dim
                .parse()
                .map_err(|_| Error::MalformedInput(format!("dimension key {dim}")))?;
            for s in list {
                if s.len() != d + 1 {
                    return Err(Error::MalformedInput(format!("simplex {s:?} is not {d}-dimensional")));
                }
                let verts = s
                    .iter()
                    .map(|v| {
                        let l = label_of(v)?;
                        by_label
                            .get(l.as_str())
                            .copied()
                            .ok_or_else(|| Error::MalformedInput(format!("unknown vertex {l}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                top.push(verts);
            }
        }
        Self::new(labels, &top)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Signed faces of simplex `i` of dimension `d ≥ 1`, as `(face index, ±1)`.
    pub fn faces(&self, d: usize, i: usize) -> Vec<(usize, i64)> {
        let s = &self.simplices[d][i];
        (0..s.len())
            .map(|k| {
                let mut f = s.clone();
                f.remove(k);
                (self.index[d - 1][&f], if k % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// Columns of `∂_d` as sparse vectors over `(d−1)`-simplices.
    pub fn boundary_columns(&self, d: usize) -> Vec<SparseVec> {
        (0..self.count(d))
            .map(|i| collect_sparse(self.faces(d, i).into_iter().map(|(f, s)| (f, q(s)))))
            .collect()
    }

    pub fn chain_from_coeffs(&self, d: usize, coeffs: &[Q]) -> SimplicialChain {
        let mut c = Chain::zero(ChainKind::Simplicial, d);
        for (i, x) in coeffs.iter().enumerate() {
            c.add_term(self.simplices[d][i].clone(), x.clone());
        }
        c
    }

    pub fn coeffs_of(&self, c: &SimplicialChain) -> Result<Vec<Q>> {
        let d = c.degree();
        let mut out = vec![Q::zero(); self.count(d)];
        for (s, x) in c.terms() {
            let i = self
                .index
                .get(d)
                .and_then(|m| m.get(s))
                .ok_or_else(|| Error::MalformedInput(format!("{s:?} is not a {d}-simplex")))?;
            out[*i] = x.clone();
        }
        Ok(out)
    }

    pub fn boundary(&self, c: &SimplicialChain) -> Result<SimplicialChain> {
        let d = c.degree();
        if d == 0 {
            return Ok(Chain::zero(ChainKind::Simplicial, 0));
        }
        let coeffs = self.coeffs_of(c)?;
        let mut out = Chain::zero(ChainKind::Simplicial, d - 1);
        for (i, x) in coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (f, s) in self.faces(d, i) {
                out.add_term(self.simplices[d - 1][f].clone(), x * q(s));
            }
        }
        Ok(out)
    }

    /// Parses a chain `[{"coeff": "p/q", "tuple": [labels...]}]`.
    pub fn chain_from_json(&self, d: usize, value: &Value) -> Result<SimplicialChain> {
        let by_label: HashMap<&str, usize> =
            self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let items = value
            .as_array()
            .ok_or_else(|| Error::MalformedInput("chain must be a list".into()))?;
        let mut c = Chain::zero(ChainKind::Simplicial, d);
        for item in items {
            let coeff = item
                .get("coeff")
                .and_then(|v| match v {
                    Value::String(s) => Some(crate::chain::parse_q(s)),
                    Value::Number(n) => n.as_i64().map(|x| Ok(q(x))),
                    _ => None,
                })
                .ok_or_else(|| Error::MalformedInput("term without coeff".into()))??;
            let tuple = item
                .get("tuple")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::MalformedInput("term without tuple".into()))?;
            let mut verts = tuple
                .iter()
                .map(|v| {
                    let l = label_of(v)?;
                    by_label
                        .get(l.as_str())
                        .copied()
                        .ok_or_else(|| Error::MalformedInput(format!("unknown vertex {l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            // Sorting a tuple applies the sign of the permutation.
            let mut sign = 1i64;
            for i in 0..verts.len() {
                for j in 0..verts.len() - 1 - i {
                    if verts[j] > verts[j + 1] {
                        verts.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            if self.simplex_index(&verts).is_none() || verts.len() != d + 1 {
                return Err(Error::MalformedInput(format!("{tuple:?} is not a {d}-simplex")));
            }
            c.add_term(verts, coeff * q(sign));
        }
        Ok(c)
    }
}

pub mod presets {
    use super::SimplicialComplex;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(labels(3), &[vec![0, 1, 2]]).expect("valid")
    }

    /// Boundary of the 3-simplex.
    pub fn tetrahedron() -> SimplicialComplex {
        let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        SimplicialComplex::new(labels(4), &faces.map(|f| f.to_vec())).expect("valid")
    }

    /// Octahedron surface: poles 0 and 5, equator 1-2-3-4.
    pub fn octahedron() -> SimplicialComplex {
        let mut faces = Vec::new();
        for i in 0..4 {
            let (a, b) = (1 + i, 1 + (i + 1) % 4);
            faces.push(vec![0, a, b]);
            faces.push(vec![5, a, b]);
        }
        SimplicialComplex::new(labels(6), &faces).expect("valid")
    }

    /// Disk made of `m ≥ 3` triangles around the interior vertex 0.
    pub fn fan(m: usize) -> SimplicialComplex {
        let faces: Vec<Vec<usize>> = (0..m).map(|i| vec![0, 1 + i, 1 + (i + 1) % m]).collect();
        SimplicialComplex::new(labels(m + 1), &faces).expect("valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillingMode {
    RationalLp,
    IntegerOracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Optimal,
    /// The dual self-check did not confirm optimality.
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingResult {
    pub value: Q,
    pub witness: SimplicialChain,
    pub mode: FillingMode,
    pub status: SolverStatus,
}

/// Least ℓ¹ norm of an `(N+1)`-chain whose boundary is `b`.
pub fn min_l1_filling(
    x: &SimplicialComplex,
    b: &SimplicialChain,
    mode: FillingMode,
    oracle_cap: u64,
) -> Result<FillingResult> {
    let n = b.degree();
    let coeffs = x.coeffs_of(b)?;
    let cols = x.boundary_columns(n + 1);
    match mode {
        FillingMode::RationalLp => {
            let weights = vec![q(1); cols.len()];
            let sol = min_weighted_l1(x.count(n), &cols, &coeffs, &weights)?.ok_or(Error::NotABoundary)?;
            Ok(FillingResult {
                value: sol.value,
                witness: x.chain_from_coeffs(n + 1, &sol.a),
                mode,
                status: if sol.certified {
                    SolverStatus::Optimal
                } else {
                    SolverStatus::Uncertified
                },
            })
        }
        FillingMode::IntegerOracle => {
            let mut span = Echelon::new();
            for c in &cols {
                span.insert(c.clone());
            }
            let target = collect_sparse(coeffs.iter().cloned().enumerate());
            if !span.contains(target.clone()) {
                return Err(Error::NotABoundary);
            }
            let best = integer_oracle(x.count(n), &cols, &target, oracle_cap)?;
            let witness: Vec<Q> = best.iter().map(|&v| q(v)).collect();
            Ok(FillingResult {
                value: q(best.iter().map(|v| v.abs()).sum()),
                witness: x.chain_from_coeffs(n + 1, &witness),
                mode,
                status: SolverStatus::Optimal,
            })
        }
    }
}

/// Calls `f` on every integer vector of length `len` with ℓ¹ norm exactly
/// `mass`; stops early when `f` returns `true`.
fn for_each_of_mass(len: usize, mass: i64, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    fn rec(v: &mut Vec<i64>, pos: usize, left: i64, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if pos == v.len() {
            return left == 0 && f(v);
        }
        if left == 0 {
            return f(v);
        }
        for a in -left..=left {
            v[pos] = a;
            if rec(v, pos + 1, left - a.abs(), f) {
                v[pos] = 0;
                return true;
            }
        }
        v[pos] = 0;
        false
    }
    let mut v = vec![0; len];
    rec(&mut v, 0, mass, f)
}

/// Smallest-ℓ¹ integer solution of `M a = b` over masses `0..=cap`.
fn integer_oracle(rows: usize, cols: &[SparseVec], target: &SparseVec, cap: u64) -> Result<Vec<i64>> {
    let mut dense_target = vec![Q::zero(); rows];
    for (i, x) in target {
        dense_target[*i] = x.clone();
    }
    let int_target: Option<Vec<i64>> = dense_target
        .iter()
        .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
        .collect();
    let Some(int_target) = int_target else {
        return Err(Error::MalformedInput("integer oracle needs an integer boundary".into()));
    };
    let int_cols: Vec<Vec<(usize, i64)>> = cols
        .iter()
        .map(|c| c.iter().map(|(i, x)| (*i, x.to_integer().to_i64().expect("small"))).collect())
        .collect();
    for mass in 0..=cap as i64 {
        let mut found = None;
        let mut acc = vec![0i64; rows];
        for_each_of_mass(cols.len(), mass, &mut |a| {
            acc.iter_mut().for_each(|x| *x = 0);
            for (j, &aj) in a.iter().enumerate() {
                if aj != 0 {
                    for &(i, x) in &int_cols[j] {
                        acc[i] += aj * x;
                    }
                }
            }
            if acc == int_target {
                found = Some(a.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(a) = found {
            return Ok(a);
        }
    }
    Err(Error::OracleCap(cap))
}

/// Integer `N`-boundaries of `X` with `1 ≤ ‖b‖₁ ≤ k_max`, up to sign
/// (first nonzero coefficient positive), ordered by mass.
pub fn enumerate_boundaries(
    x: &SimplicialComplex,
    n: usize,
    k_max: usize,
    cap: usize,
) -> Result<Vec<SimplicialChain>> {
    let mut span = Echelon::new();
    for c in x.boundary_columns(n + 1) {
        span.insert(c);
    }
    let len = x.count(n);
    let mut out = Vec::new();
    let mut seen = 0usize;
    let mut overflow = false;
    for mass in 1..=k_max as i64 {
        for_each_of_mass(len, mass, &mut |a| {
            seen += 1;
            if seen > cap {
                overflow = true;
                return true;
            }
            if a.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                return false;
            }
            let v = collect_sparse(a.iter().enumerate().map(|(i, &c)| (i, q(c))));
            if span.contains(v) {
                let coeffs: Vec<Q> = a.iter().map(|&c| q(c)).collect();
                out.push(x.chain_from_coeffs(n, &coeffs));
            }
            false
        });
        if overflow {
            return Err(Error::Resource(format!("more than {cap} candidate chains")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnRow {
    pub k: usize,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    pub witness_id: Option<usize>,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(x))
}

/// One enumerated boundary with its LP filling and, when requested, the
/// integer oracle value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnWitness {
    pub boundary: SimplicialChain,
    pub mass: Q,
    pub filling: FillingResult,
    pub oracle_value: Option<Result<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnTable {
    pub degree: usize,
    pub k_max: usize,
    pub mode: FillingMode,
    pub rows: Vec<DehnRow>,
    pub witnesses: Vec<DehnWitness>,
    /// False when enumeration stopped at the cap; rows then cover `k` only
    /// up to the last complete mass.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct DehnOptions {
    pub enumeration_cap: usize,
    /// Also run the integer oracle at this mass cap.
    pub oracle_cap: Option<u64>,
}

impl Default for DehnOptions {
    fn default() -> Self {
        Self {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            oracle_cap: None,
        }
    }
}

/// `d^N(k) = sup { l_f(b) : ‖b‖₁ ≤ k }` for `k = 0..=k_max`.
pub fn dehn_function(
    x: &SimplicialComplex,
    n: usize,
    k_max: usize,
    opts: &DehnOptions,
) -> Result<DehnTable> {
    let mut complete = true;
    let mut reached = k_max;
    let boundaries = match enumerate_boundaries(x, n, k_max, opts.enumeration_cap) {
        Ok(b) => b,
        Err(Error::Resource(_)) => {
            complete = false;
            // Retry at smaller masses to produce a partial table.
            let mut last = Vec::new();
            reached = 0;
            for k in 1..k_max {
                match enumerate_boundaries(x, n, k, opts.enumeration_cap) {
                    Ok(b) => {
                        last = b;
                        reached = k;
                    }
                    Err(_) => break,
                }
            }
            last
        }
        Err(e) => return Err(e),
    };
    let witnesses: Vec<DehnWitness> = boundaries
        .into_par_iter()
        .map(|b| {
            let filling = min_l1_filling(x, &b, FillingMode::RationalLp, 0)?;
            let oracle_value = opts.oracle_cap.map(|cap| {
                min_l1_filling(x, &b, FillingMode::IntegerOracle, cap).map(|r| r.value)
            });
            Ok(DehnWitness {
                mass: b.mass(),
                boundary: b,
                filling,
                oracle_value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = vec![DehnRow {
        k: 0,
        value: Q::zero(),
        witness_id: None,
    }];
    for k in 1..=reached {
        let kq = Q::from_integer(BigInt::from(k));
        let mut best = rows[k - 1].clone();
        best.k = k;
        for (i, w) in witnesses.iter().enumerate() {
            if w.mass <= kq && w.filling.value > best.value {
                best.value = w.filling.value.clone();
                best.witness_id = Some(i);
            }
        }
        rows.push(best);
    }
    Ok(DehnTable {
        degree: n,
        k_max,
        mode: FillingMode::RationalLp,
        rows,
        witnesses,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(x: &SimplicialComplex, verts: &[usize]) -> SimplicialChain {
        let mut c = Chain::zero(ChainKind::Simplicial, 1);
        for i in 0..verts.len() {
            let (a, b) = (verts[i], verts[(i + 1) % verts.len()]);
            let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
            assert!(x.simplex_index(&[lo, hi]).is_some());
            c.add_term(vec![lo, hi], q(s));
        }
        c
    }

    #[test]
    fn complexes() {
        let t = presets::tetrahedron();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (4, 6, 4));
        let o = presets::octahedron();
        assert_eq!((o.count(0), o.count(1), o.count(2)), (6, 12, 8));
        for x in [t, o, presets::fan(5), presets::triangle()] {
            for d in 2..=x.dim() {
                for i in 0..x.count(d) {
                    let c = x.chain_from_coeffs(d, &{
                        let mut v = vec![q(0); x.count(d)];
                        v[i] = q(1);
                        v
                    });
                    assert!(x.boundary(&x.boundary(&c).unwrap()).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn json_round() {
        let text = r#"{"vertices": ["a", "b", "c"], "simplices": {"2": [["a", "b", "c"]]}}"#;
        let x = SimplicialComplex::from_json(text).unwrap();
        assert_eq!((x.count(1), x.count(2), x.labels()[2].as_str()), (3, 1, "c"));
        let c = x
            .chain_from_json(1, &serde_json::json!([{"coeff": "1/1", "tuple": ["b", "a"]}]))
            .unwrap();
        assert_eq!(c.coeff(&[0, 1]), q(-1));
        assert!(SimplicialComplex::from_json(r#"{"vertices": ["a"], "simplices": {"1": [["a", "z"]]}}"#).is_err());
    }

    #[test]
    fn filling_examples() {
        let tri = presets::triangle();
        let b = cycle(&tri, &[0, 1, 2]);
        for mode in [FillingMode::RationalLp, FillingMode::IntegerOracle] {
            let r = min_l1_filling(&tri, &b, mode, 5).unwrap();
            assert_eq!(r.value, q(1));
            assert_eq!(tri.boundary(&r.witness).unwrap(), b);
        }
        let zero = Chain::zero(ChainKind::Simplicial, 1);
        assert_eq!(min_l1_filling(&tri, &zero, FillingMode::RationalLp, 0).unwrap().value, q(0));

        let oct = presets::octahedron();
        let eq = cycle(&oct, &[1, 2, 3, 4]);
        let lp = min_l1_filling(&oct, &eq, FillingMode::RationalLp, 0).unwrap();
        let int = min_l1_filling(&oct, &eq, FillingMode::IntegerOracle, 6).unwrap();
        assert_eq!((lp.value.clone(), int.value), (q(4), q(4)));
        assert_eq!(lp.status, SolverStatus::Optimal);
        assert_eq!(oct.boundary(&lp.witness).unwrap(), eq);

        let mut open = Chain::zero(ChainKind::Simplicial, 1);
        open.add_term(vec![0, 1], q(1));
        assert_eq!(
            min_l1_filling(&tri, &open, FillingMode::RationalLp, 0),
            Err(Error::NotABoundary)
        );
    }

    #[test]
    fn fan_disk() {
        let m = 6;
        let x = presets::fan(m);
        let rim: Vec<usize> = (1..=m).collect();
        let b = cycle(&x, &rim);
        assert_eq!(min_l1_filling(&x, &b, FillingMode::RationalLp, 0).unwrap().value, q(m as i64));
        let t = dehn_function(&x, 1, m, &DehnOptions::default()).unwrap();
        assert!(t.rows[m].value >= q(m as i64));
    }

    #[test]
    fn tetrahedron_dehn() {
        let x = presets::tetrahedron();
        let opts = DehnOptions {
            oracle_cap: Some(6),
            ..Default::default()
        };
        let t = dehn_function(&x, 1, 4, &opts).unwrap();
        assert_eq!(t.rows[0].value, q(0));
        assert!(t.rows[3].value >= q(1));
        assert!(t.rows.windows(2).all(|w| w[0].value <= w[1].value));
        for w in &t.witnesses {
            assert_eq!(w.oracle_value.clone().unwrap().unwrap(), w.filling.value);
        }
        assert!(t.complete);
    }

    #[test]
    fn enumeration_cap() {
        let x = presets::octahedron();
        let t = dehn_function(
            &x,
            1,
            4,
            &DehnOptions {
                enumeration_cap: 3000,
                oracle_cap: None,
            },
        )
        .unwrap();
        assert!(!t.complete);
        assert!(t.rows.len() < 5);
    }
}
