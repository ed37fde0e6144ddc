//! Computable models of finitely generated groups.
//!
//! Five kinds are supported: groups given by a multiplication table, permutation
//! groups generated by a list of permutations, free groups, free abelian groups
//! and finite direct products of these. Every element has a unique canonical
//! encoding, so equality of group elements is equality of encodings.
//!
//! Elements of finite models are enumerated once at construction by a
//! breadth-first search over the generating set. The enumeration order is
//! shortlex order with respect to the generator list, and it also yields the
//! word lengths used by [`crate::metric::WordMetric`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the order of finite models.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// Canonical encoding of a group element.
///
/// Free-group letters are stored as nonzero integers: `i + 1` is the `i`-th
/// generator and `-(i + 1)` its inverse. Words are always freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Word(Vec<i32>),
    Vector(Vec<i64>),
    Perm(Vec<u32>),
    Table(u32),
    Tuple(Vec<GroupElement>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    FiniteTable,
    FinitePerm,
    Free,
    FreeAbelian,
    Product,
}

/// Entry of a multiplication table in a descriptor: an element name or an index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Name(String),
}

/// JSON group descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    FiniteTable {
        elements: Vec<String>,
        table: Vec<Vec<TableEntry>>,
        generators: Vec<String>,
    },
    FinitePerm {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
    Free {
        rank: usize,
    },
    FreeAbelian {
        rank: usize,
    },
    Product {
        factors: Vec<GroupDescriptor>,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_order: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug)]
enum Structure {
    Table {
        names: Vec<String>,
        table: Vec<Vec<u32>>,
        by_name: HashMap<String, u32>,
    },
    Perm {
        degree: usize,
    },
    Free {
        rank: usize,
    },
    FreeAbelian {
        rank: usize,
    },
    Product {
        factors: Vec<GroupModel>,
    },
}

/// Enumeration data of a finite model, elements listed in shortlex order.
#[derive(Debug)]
pub(crate) struct FiniteData {
    pub elements: Vec<GroupElement>,
    pub index: HashMap<GroupElement, usize>,
    pub lengths: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    /// Index of the shortlex-least element of each conjugacy class.
    pub class_rep: Vec<u32>,
    /// For each `g`, the shortlex-least `r` with `g = r⁻¹ · rep · r`.
    pub to_rep: Vec<u32>,
}

impl FiniteData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }
}

#[derive(Debug)]
struct Inner {
    kind: GroupKind,
    name: String,
    structure: Structure,
    generators: Vec<GroupElement>,
    identity: GroupElement,
    finite: Option<FiniteData>,
}

/// A finitely generated group with a fixed finite symmetric generating set.
///
/// Cloning is cheap; the model is immutable and shared.
#[derive(Clone, Debug)]
pub struct GroupModel {
    inner: Arc<Inner>,
}

impl PartialEq for GroupModel {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

fn letter_char(letter: i32) -> char {
    let base = if letter > 0 { b'a' } else { b'A' };
    (base + (letter.unsigned_abs() - 1) as u8) as char
}

fn free_reduce_push(word: &mut Vec<i32>, letter: i32) {
    if word.last() == Some(&-letter) {
        word.pop();
    } else {
        word.push(letter);
    }
}

/// Product of permutations as image lists: apply `a` first, then `b`.
fn perm_compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn perm_inverse(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

fn normalize_perm(images: &[u32], degree: usize) -> Result<Vec<u32>> {
    if images.len() != degree {
        return Err(Error::MalformedPermutation(format!(
            "{images:?} has length {} but the degree is {degree}",
            images.len()
        )));
    }
    // Image lists may be 0-based or 1-based; a 0-based list contains 0.
    let one_based = !images.contains(&0);
    let shifted: Vec<u32> = if one_based {
        images.iter().map(|&i| i.wrapping_sub(1)).collect()
    } else {
        images.to_vec()
    };
    let mut seen = vec![false; degree];
    for &i in &shifted {
        let i = i as usize;
        if i >= degree || seen[i] {
            return Err(Error::MalformedPermutation(format!(
                "{images:?} is not a permutation of degree {degree}"
            )));
        }
        seen[i] = true;
    }
    Ok(shifted)
}

impl GroupModel {
    pub fn kind(&self) -> GroupKind {
        self.inner.kind
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.inner.generators
    }

    pub fn identity(&self) -> GroupElement {
        self.inner.identity.clone()
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.inner.identity
    }

    /// Whether the model is a finite group (finite kinds and products of them).
    pub fn is_finite(&self) -> bool {
        self.inner.finite.is_some()
    }

    /// Whether every pair of elements commutes, decided structurally.
    pub fn is_abelian(&self) -> bool {
        match &self.inner.structure {
            Structure::FreeAbelian { .. } => true,
            Structure::Free { rank } => *rank <= 1,
            Structure::Product { factors } => factors.iter().all(|f| f.is_abelian()),
            Structure::Table { .. } | Structure::Perm { .. } => {
                let fd = self.finite_data().expect("finite");
                let n = fd.order();
                (0..n).all(|a| (0..n).all(|b| fd.mul_idx(a, b) == fd.mul_idx(b, a)))
            }
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.inner.finite.as_ref().map(FiniteData::order)
    }

    /// All elements of a finite model in shortlex order.
    pub fn elements(&self) -> Option<&[GroupElement]> {
        self.inner.finite.as_ref().map(|f| f.elements.as_slice())
    }

    pub(crate) fn finite_data(&self) -> Option<&FiniteData> {
        self.inner.finite.as_ref()
    }

    pub fn factors(&self) -> Option<&[GroupModel]> {
        match &self.inner.structure {
            Structure::Product { factors } => Some(factors),
            _ => None,
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match &self.inner.structure {
            Structure::Free { rank } | Structure::FreeAbelian { rank } => Some(*rank),
            _ => None,
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (&self.inner.structure, g) {
            (Structure::Free { rank }, GroupElement::Word(w)) => {
                w.iter()
                    .all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Structure::FreeAbelian { rank }, GroupElement::Vector(v)) => v.len() == *rank,
            (Structure::Table { names, .. }, GroupElement::Table(i)) => (*i as usize) < names.len(),
            (Structure::Perm { .. }, GroupElement::Perm(_)) => {
                self.finite_data().expect("finite").index.contains_key(g)
            }
            (Structure::Product { factors }, GroupElement::Tuple(parts)) => {
                parts.len() == factors.len()
                    && factors.iter().zip(parts).all(|(f, p)| f.contains(p))
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementMismatch {
                element: format!("{g:?}"),
                model: self.inner.name.clone(),
            })
        }
    }

    /// Checked product `ab`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Checked inverse.
    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Product `ab` of elements already known to belong to the model.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (&self.inner.structure, a, b) {
            (Structure::Free { .. }, GroupElement::Word(x), GroupElement::Word(y)) => {
                let mut out = x.clone();
                for &l in y {
                    free_reduce_push(&mut out, l);
                }
                GroupElement::Word(out)
            }
            (Structure::FreeAbelian { .. }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Structure::Table { table, .. }, GroupElement::Table(i), GroupElement::Table(j)) => {
                GroupElement::Table(table[*i as usize][*j as usize])
            }
            (Structure::Perm { .. }, GroupElement::Perm(x), GroupElement::Perm(y)) => {
                GroupElement::Perm(perm_compose(x, y))
            }
            (Structure::Product { factors }, GroupElement::Tuple(x), GroupElement::Tuple(y)) => {
                GroupElement::Tuple(
                    factors
                        .iter()
                        .zip(x.iter().zip(y))
                        .map(|(f, (p, q))| f.mul(p, q))
                        .collect(),
                )
            }
            _ => panic!("elements {a:?}, {b:?} do not belong to {}", self.inner.name),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (&self.inner.structure, a) {
            (Structure::Free { .. }, GroupElement::Word(x)) => {
                GroupElement::Word(x.iter().rev().map(|l| -l).collect())
            }
            (Structure::FreeAbelian { .. }, GroupElement::Vector(x)) => {
                GroupElement::Vector(x.iter().map(|v| -v).collect())
            }
            (Structure::Table { .. }, GroupElement::Table(_)) => {
                let fd = self.finite_data().expect("finite");
                let i = fd.index[a];
                fd.elements[fd.inv[i] as usize].clone()
            }
            (Structure::Perm { .. }, GroupElement::Perm(x)) => GroupElement::Perm(perm_inverse(x)),
            (Structure::Product { factors }, GroupElement::Tuple(x)) => GroupElement::Tuple(
                factors.iter().zip(x).map(|(f, p)| f.inv(p)).collect(),
            ),
            _ => panic!("element {a:?} does not belong to {}", self.inner.name),
        }
    }

    /// Product of a sequence of elements, `e` for the empty sequence.
    pub fn product<'a, I>(&self, items: I) -> GroupElement
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// `r⁻¹ g r`.
    pub fn conjugate(&self, g: &GroupElement, r: &GroupElement) -> GroupElement {
        self.mul(&self.mul(&self.inv(r), g), r)
    }

    pub fn commute(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Human-readable element string, parseable by [`GroupModel::parse_element`].
    pub fn format_element(&self, g: &GroupElement) -> String {
        match (&self.inner.structure, g) {
            (Structure::Free { .. }, GroupElement::Word(w)) => {
                if w.is_empty() {
                    "e".to_string()
                } else {
                    w.iter().map(|&l| letter_char(l)).collect()
                }
            }
            (Structure::FreeAbelian { .. }, GroupElement::Vector(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            (Structure::Table { names, .. }, GroupElement::Table(i)) => names[*i as usize].clone(),
            (Structure::Perm { .. }, GroupElement::Perm(p)) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            (Structure::Product { factors }, GroupElement::Tuple(parts)) => {
                let parts: Vec<String> = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f.format_element(p))
                    .collect();
                format!("<{}>", parts.join(";"))
            }
            _ => format!("{g:?}"),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let bad = || Error::MalformedInput(format!("cannot parse {text:?} as an element of {}", self.name()));
        let g = match &self.inner.structure {
            Structure::Free { rank } => {
                if text == "e" || text == "1" || text.is_empty() {
                    GroupElement::Word(Vec::new())
                } else {
                    let mut w = Vec::new();
                    for c in text.chars() {
                        let letter = if c.is_ascii_lowercase() {
                            (c as u8 - b'a') as i32 + 1
                        } else if c.is_ascii_uppercase() {
                            -((c as u8 - b'A') as i32 + 1)
                        } else {
                            return Err(bad());
                        };
                        if letter.unsigned_abs() as usize > *rank {
                            return Err(bad());
                        }
                        free_reduce_push(&mut w, letter);
                    }
                    GroupElement::Word(w)
                }
            }
            Structure::FreeAbelian { .. } => {
                let body = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let v = body
                    .split(',')
                    .map(|s| s.trim().parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                GroupElement::Vector(v)
            }
            Structure::Table { by_name, .. } => {
                GroupElement::Table(*by_name.get(text).ok_or_else(bad)?)
            }
            Structure::Perm { degree } => {
                let body = text
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let v = body
                    .split(',')
                    .map(|s| s.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                GroupElement::Perm(normalize_perm(&v, *degree)?)
            }
            Structure::Product { factors } => {
                let body = text
                    .strip_prefix('<')
                    .and_then(|t| t.strip_suffix('>'))
                    .ok_or_else(bad)?;
                let parts = split_top_level(body);
                if parts.len() != factors.len() {
                    return Err(bad());
                }
                GroupElement::Tuple(
                    factors
                        .iter()
                        .zip(parts)
                        .map(|(f, p)| f.parse_element(p))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        self.check(&g)?;
        Ok(g)
    }

    fn from_parts(
        kind: GroupKind,
        name: String,
        structure: Structure,
        generators: Vec<GroupElement>,
        identity: GroupElement,
        max_order: Option<usize>,
    ) -> Result<Self> {
        let mut model = GroupModel {
            inner: Arc::new(Inner {
                kind,
                name,
                structure,
                generators,
                identity,
                finite: None,
            }),
        };
        if let Some(cap) = max_order {
            let data = enumerate_finite(&model, cap)?;
            Arc::get_mut(&mut model.inner).expect("fresh model").finite = Some(data);
        }
        Ok(model)
    }

    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::MalformedInput(format!(
                "free group rank must be between 1 and 26, got {rank}"
            )));
        }
        let generators = (1..=rank as i32)
            .flat_map(|i| [GroupElement::Word(vec![i]), GroupElement::Word(vec![-i])])
            .collect();
        Self::from_parts(
            GroupKind::Free,
            format!("F{rank}"),
            Structure::Free { rank },
            generators,
            GroupElement::Word(Vec::new()),
            None,
        )
    }

    pub fn free_abelian(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::MalformedInput("free abelian rank must be positive".into()));
        }
        let mut generators = Vec::with_capacity(2 * rank);
        for i in 0..rank {
            for sign in [1, -1] {
                let mut v = vec![0; rank];
                v[i] = sign;
                generators.push(GroupElement::Vector(v));
            }
        }
        Self::from_parts(
            GroupKind::FreeAbelian,
            if rank == 1 { "Z".into() } else { format!("Z^{rank}") },
            Structure::FreeAbelian { rank },
            generators,
            GroupElement::Vector(vec![0; rank]),
            None,
        )
    }

    pub fn direct_product(factors: Vec<GroupModel>, opts: ParseOptions) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::MalformedInput("product needs at least one factor".into()));
        }
        let identity = GroupElement::Tuple(factors.iter().map(|f| f.identity()).collect());
        let mut generators = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for g in f.generators() {
                let mut parts: Vec<GroupElement> = factors.iter().map(|f| f.identity()).collect();
                parts[i] = g.clone();
                generators.push(GroupElement::Tuple(parts));
            }
        }
        let name = factors
            .iter()
            .map(|f| f.name().to_string())
            .collect::<Vec<_>>()
            .join(" x ");
        let finite = factors.iter().all(|f| f.is_finite());
        let max_order = finite.then_some(opts.max_order);
        Self::from_parts(
            GroupKind::Product,
            name,
            Structure::Product { factors },
            generators,
            identity,
            max_order,
        )
    }

    pub fn finite_perm(degree: usize, gens: &[Vec<u32>], opts: ParseOptions) -> Result<Self> {
        if degree == 0 {
            return Err(Error::MalformedPermutation("degree must be positive".into()));
        }
        if gens.is_empty() {
            return Err(Error::MalformedInput("generating set is empty".into()));
        }
        let generators: Vec<GroupElement> = gens
            .iter()
            .map(|g| normalize_perm(g, degree).map(GroupElement::Perm))
            .collect::<Result<_>>()?;
        let identity = GroupElement::Perm((0..degree as u32).collect());
        check_generators(&generators, &identity, |g| match g {
            GroupElement::Perm(p) => GroupElement::Perm(perm_inverse(p)),
            _ => unreachable!(),
        })?;
        Self::from_parts(
            GroupKind::FinitePerm,
            format!("perm group of degree {degree}"),
            Structure::Perm { degree },
            generators,
            identity,
            Some(opts.max_order),
        )
    }

    pub fn finite_table(
        names: &[String],
        table: &[Vec<TableEntry>],
        gens: &[String],
        opts: ParseOptions,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedInput("table group has no elements".into()));
        }
        if n > opts.max_order {
            return Err(Error::Resource(format!(
                "group order {n} exceeds the configured bound {}",
                opts.max_order
            )));
        }
        let mut by_name = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), i as u32).is_some() {
                return Err(Error::MalformedInput(format!("duplicate element name {name:?}")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedInput(format!("table must be {n} x {n}")));
        }
        let resolve = |e: &TableEntry| -> Result<u32> {
            match e {
                TableEntry::Index(i) if *i < n => Ok(*i as u32),
                TableEntry::Name(s) => by_name
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::MalformedInput(format!("unknown element {s:?} in table"))),
                TableEntry::Index(i) => Err(Error::MalformedInput(format!("table index {i} out of range"))),
            }
        };
        let table: Vec<Vec<u32>> = table
            .iter()
            .map(|row| row.iter().map(resolve).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] as usize == g && table[g][e] as usize == g))
            .ok_or_else(|| Error::MalformedInput("table has no identity element".into()))?
            as u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = table[table[a][b] as usize][c];
                    let a_bc = table[a][table[b][c] as usize];
                    if ab_c != a_bc {
                        return Err(Error::NonAssociativeTable(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity)
                .ok_or_else(|| Error::MalformedInput(format!("{} has no inverse", names[a])))?
                as u32;
        }
        if gens.is_empty() {
            return Err(Error::MalformedInput("generating set is empty".into()));
        }
        let generators: Vec<GroupElement> = gens
            .iter()
            .map(|s| {
                by_name
                    .get(s)
                    .map(|&i| GroupElement::Table(i))
                    .ok_or_else(|| Error::MalformedInput(format!("unknown generator {s:?}")))
            })
            .collect::<Result<_>>()?;
        let id = GroupElement::Table(identity);
        check_generators(&generators, &id, |g| match g {
            GroupElement::Table(i) => GroupElement::Table(inverse[*i as usize]),
            _ => unreachable!(),
        })
        .map_err(|e| match e {
            Error::NonSymmetricGenerators(s) => {
                let idx: usize = s.trim_start_matches("Table(").trim_end_matches(')').parse().unwrap_or(0);
                Error::NonSymmetricGenerators(names.get(idx).cloned().unwrap_or(s))
            }
            other => other,
        })?;
        let model = Self::from_parts(
            GroupKind::FiniteTable,
            format!("table group of order {n}"),
            Structure::Table {
                names: names.to_vec(),
                table,
                by_name,
            },
            generators,
            id,
            Some(opts.max_order),
        )?;
        if model.order() != Some(n) {
            return Err(Error::MalformedInput(format!(
                "generators span a subgroup of order {} in a group of order {n}",
                model.order().unwrap_or(0)
            )));
        }
        Ok(model)
    }

    pub fn from_descriptor(desc: &GroupDescriptor, opts: ParseOptions) -> Result<Self> {
        match desc {
            GroupDescriptor::FiniteTable {
                elements,
                table,
                generators,
            } => Self::finite_table(elements, table, generators, opts),
            GroupDescriptor::FinitePerm { degree, generators } => {
                Self::finite_perm(*degree, generators, opts)
            }
            GroupDescriptor::Free { rank } => Self::free(*rank),
            GroupDescriptor::FreeAbelian { rank } => Self::free_abelian(*rank),
            GroupDescriptor::Product { factors } => {
                let factors = factors
                    .iter()
                    .map(|f| Self::from_descriptor(f, opts))
                    .collect::<Result<Vec<_>>>()?;
                Self::direct_product(factors, opts)
            }
        }
    }
}

fn split_top_level(body: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '<' | '(' | '[' => depth += 1,
            '>' | ')' | ']' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&body[start..]);
    parts
}

fn check_generators(
    gens: &[GroupElement],
    identity: &GroupElement,
    inverse: impl Fn(&GroupElement) -> GroupElement,
) -> Result<()> {
    if gens.contains(identity) {
        return Err(Error::MalformedInput("the identity may not be listed as a generator".into()));
    }
    for g in gens {
        if !gens.contains(&inverse(g)) {
            return Err(Error::NonSymmetricGenerators(format!("{g:?}")));
        }
    }
    Ok(())
}

/// Breadth-first enumeration of a finite model from the identity.
///
/// Expanding the queue in order and the generators in list order visits the
/// elements in shortlex order of their least geodesic words.
fn enumerate_finite(model: &GroupModel, cap: usize) -> Result<FiniteData> {
    let inner = &model.inner;
    let mut elements = vec![inner.identity.clone()];
    let mut index = HashMap::from([(inner.identity.clone(), 0usize)]);
    let mut lengths = vec![0usize];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, s) in inner.generators.iter().enumerate() {
            let next = model.mul(&elements[i], s);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::Resource(format!(
                    "group order exceeds the configured bound {cap}"
                )));
            }
            let j = elements.len();
            index.insert(next.clone(), j);
            elements.push(next);
            lengths.push(lengths[i] + 1);
            let mut w = words[i].clone();
            w.push(gi);
            words.push(w);
            queue.push_back(j);
        }
    }
    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let p = model.mul(&elements[a], &elements[b]);
            mul[a * n + b] = index[&p] as u32;
        }
    }
    let e = 0u32;
    let inv: Vec<u32> = (0..n)
        .map(|a| (0..n).find(|&b| mul[a * n + b] == e).expect("group has inverses") as u32)
        .collect();
    // x⁻¹ g x over all x; the least index is the shortlex-least class member.
    let conj = |g: usize, x: usize| mul[mul[inv[x] as usize * n + g] as usize * n + x] as usize;
    let class_rep: Vec<u32> = (0..n)
        .map(|g| (0..n).map(|x| conj(g, x)).min().expect("nonempty") as u32)
        .collect();
    let to_rep: Vec<u32> = (0..n)
        .map(|g| {
            let rep = class_rep[g] as usize;
            (0..n).find(|&r| conj(rep, r) == g).expect("conjugate") as u32
        })
        .collect();
    Ok(FiniteData {
        elements,
        index,
        lengths,
        words,
        mul,
        inv,
        class_rep,
        to_rep,
    })
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.name)
    }
}

/// Parse a JSON group descriptor with the default order bound.
pub fn parse_group(json: &str) -> Result<GroupModel> {
    parse_group_with(json, ParseOptions::default())
}

pub fn parse_group_with(json: &str, opts: ParseOptions) -> Result<GroupModel> {
    let desc: GroupDescriptor =
        serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))?;
    GroupModel::from_descriptor(&desc, opts)
}

/// Ready-made models used throughout tests, benches and the CLI fixtures.
pub mod presets {
    use super::*;

    /// ℤ/n as a multiplication table generated by `1` and `n-1`.
    pub fn cyclic(n: usize) -> GroupModel {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table: Vec<Vec<TableEntry>> = (0..n)
            .map(|a| (0..n).map(|b| TableEntry::Index((a + b) % n)).collect())
            .collect();
        let gens = if n == 2 {
            vec!["1".to_string()]
        } else {
            vec!["1".to_string(), (n - 1).to_string()]
        };
        GroupModel::finite_table(&names, &table, &gens, ParseOptions::default())
            .expect("cyclic table is valid")
    }

    /// S₃ generated by the transpositions (12) and (23).
    pub fn symmetric3() -> GroupModel {
        GroupModel::finite_perm(3, &[vec![1, 0, 2], vec![0, 2, 1]], ParseOptions::default())
            .expect("valid")
    }

    /// The dihedral group of order 8 acting on the square's vertices.
    pub fn dihedral4() -> GroupModel {
        GroupModel::finite_perm(
            4,
            &[vec![1, 2, 3, 0], vec![3, 0, 1, 2], vec![0, 3, 2, 1]],
            ParseOptions::default(),
        )
        .expect("valid")
    }

    pub fn free(rank: usize) -> GroupModel {
        GroupModel::free(rank).expect("valid rank")
    }

    pub fn free_abelian(rank: usize) -> GroupModel {
        GroupModel::free_abelian(rank).expect("valid rank")
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn w(s: &str, m: &GroupModel) -> GroupElement {
        m.parse_element(s).unwrap()
    }

    #[test]
    fn free_reduction() {
        let f2 = free(2);
        assert_eq!(f2.multiply(&w("a", &f2), &w("A", &f2)).unwrap(), f2.identity());
        assert_eq!(f2.inverse(&w("ab", &f2)).unwrap(), w("BA", &f2));
        assert_eq!(f2.format_element(&w("aBbA", &f2)), "e");
    }

    #[test]
    fn free_abelian_arithmetic() {
        let z2 = free_abelian(2);
        let p = z2.multiply(&w("(2,1)", &z2), &w("(-1,3)", &z2)).unwrap();
        assert_eq!(p, GroupElement::Vector(vec![1, 4]));
        assert_eq!(z2.inverse(&w("(2,1)", &z2)).unwrap(), GroupElement::Vector(vec![-2, -1]));
    }

    #[test]
    fn cyclic_table_arithmetic() {
        let z4 = cyclic(4);
        assert_eq!(z4.multiply(&w("3", &z4), &w("2", &z4)).unwrap(), w("1", &z4));
        assert_eq!(z4.inverse(&w("3", &z4)).unwrap(), w("1", &z4));
    }

    #[test]
    fn mismatch_is_reported() {
        let z4 = cyclic(4);
        let f2 = free(2);
        let err = z4.multiply(&w("1", &z4), &w("a", &f2)).unwrap_err();
        assert!(matches!(err, Error::ElementMismatch { .. }));
        assert!(f2.inverse(&GroupElement::Word(vec![1, -1])).is_err());
        assert!(f2.inverse(&GroupElement::Word(vec![3])).is_err());
    }

    #[test]
    fn descriptors() {
        let f2 = parse_group(r#"{"type":"free","rank":2}"#).unwrap();
        let names: Vec<String> = f2.generators().iter().map(|g| f2.format_element(g)).collect();
        assert_eq!(names, ["a", "A", "b", "B"]);

        let z2 = parse_group(r#"{"type":"free_abelian","rank":2}"#).unwrap();
        let names: Vec<String> = z2.generators().iter().map(|g| z2.format_element(g)).collect();
        assert_eq!(names, ["(1,0)", "(-1,0)", "(0,1)", "(0,-1)"]);

        let p = parse_group(
            r#"{"type":"product","factors":[{"type":"free","rank":2},{"type":"free_abelian","rank":1}]}"#,
        )
        .unwrap();
        let names: Vec<String> = p.generators().iter().map(|g| p.format_element(g)).collect();
        assert_eq!(names, ["<a;(0)>", "<A;(0)>", "<b;(0)>", "<B;(0)>", "<e;(1)>", "<e;(-1)>"]);
        let g = p.parse_element("<aB;(3)>").unwrap();
        assert_eq!(p.format_element(&g), "<aB;(3)>");
    }

    #[test]
    fn descriptor_errors() {
        let nonsym = r#"{"type":"finite_perm","degree":3,"generators":[[1,2,0]]}"#;
        assert!(matches!(parse_group(nonsym), Err(Error::NonSymmetricGenerators(_))));
        let badperm = r#"{"type":"finite_perm","degree":3,"generators":[[0,0,1]]}"#;
        assert!(matches!(parse_group(badperm), Err(Error::MalformedPermutation(_))));
        let nonassoc = r#"{"type":"finite_table","elements":["e","x","y"],
            "table":[["e","x","y"],["x","e","e"],["y","e","e"]],"generators":["x","y"]}"#;
        assert!(matches!(parse_group(nonassoc), Err(Error::NonAssociativeTable(..))));
        let nonsym_table = r#"{"type":"finite_table","elements":["0","1","2"],
            "table":[[0,1,2],[1,2,0],[2,0,1]],"generators":["1"]}"#;
        assert_eq!(
            parse_group(nonsym_table).unwrap_err(),
            Error::NonSymmetricGenerators("1".into())
        );
        let with_identity = r#"{"type":"finite_perm","degree":2,"generators":[[0,1],[1,0]]}"#;
        assert!(parse_group(with_identity).is_err());
    }

    #[test]
    fn one_based_permutations_are_accepted() {
        let s3 = parse_group(r#"{"type":"finite_perm","degree":3,"generators":[[2,1,3],[1,3,2]]}"#)
            .unwrap();
        assert_eq!(s3.order(), Some(6));
        assert_eq!(s3.generators(), symmetric3().generators());
    }

    #[test]
    fn order_bound_is_enforced() {
        let s4 = r#"{"type":"finite_perm","degree":4,"generators":[[1,0,2,3],[0,2,1,3],[0,1,3,2]]}"#;
        assert!(parse_group(s4).is_ok());
        let opts = ParseOptions { max_order: 12 };
        assert!(matches!(parse_group_with(s4, opts), Err(Error::Resource(_))));
    }

    #[test]
    fn finite_orders() {
        assert_eq!(cyclic(2).order(), Some(2));
        assert_eq!(symmetric3().order(), Some(6));
        assert_eq!(dihedral4().order(), Some(8));
        assert!(!symmetric3().is_abelian());
        assert!(cyclic(4).is_abelian());
        let p = GroupModel::direct_product(vec![cyclic(2), cyclic(2)], ParseOptions::default()).unwrap();
        assert_eq!(p.order(), Some(4));
    }

    #[test]
    fn group_axioms_on_finite_models() {
        for m in [cyclic(4), symmetric3(), dihedral4()] {
            let els = m.elements().unwrap().to_vec();
            let e = m.identity();
            for a in &els {
                assert_eq!(m.mul(a, &e), *a);
                assert_eq!(m.mul(&e, a), *a);
                assert_eq!(m.mul(a, &m.inv(a)), e);
                for b in &els {
                    for c in &els {
                        assert_eq!(m.mul(&m.mul(a, b), c), m.mul(a, &m.mul(b, c)));
                    }
                }
            }
        }
    }
}
