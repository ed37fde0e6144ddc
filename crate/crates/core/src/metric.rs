//! Word metrics, conjugacy classes, centralizers and length-minimal coset
//! sections.
//!
//! All minimal choices (class representatives, coset representatives,
//! conjugators) are broken by shortlex order on the least geodesic word over
//! the model's generator list. For free groups this is the usual shortlex order
//! on reduced words with `a < A < b < B < …`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupKind, GroupModel};

/// Default cap on the number of elements a ball may contain.
pub const DEFAULT_BALL_CAP: usize = 500_000;

/// Word-length metric of a model's fixed generating set.
#[derive(Clone, Debug)]
pub struct WordMetric {
    model: GroupModel,
    ball_cap: usize,
}

impl WordMetric {
    pub fn new(model: &GroupModel) -> Self {
        Self {
            model: model.clone(),
            ball_cap: DEFAULT_BALL_CAP,
        }
    }

    pub fn with_ball_cap(mut self, cap: usize) -> Self {
        self.ball_cap = cap;
        self
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    /// Geodesic distance from the identity in the Cayley graph.
    pub fn length(&self, g: &GroupElement) -> usize {
        length_in(&self.model, g)
    }

    /// `|a⁻¹ b|`.
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> usize {
        self.length(&self.model.mul(&self.model.inv(a), b))
    }

    /// The shortlex-least geodesic word for `g`, as generator indices.
    pub fn shortlex_word(&self, g: &GroupElement) -> Vec<usize> {
        shortlex_word_in(&self.model, g)
    }

    pub fn shortlex_cmp(&self, a: &GroupElement, b: &GroupElement) -> Ordering {
        shortlex_cmp_in(&self.model, a, b)
    }

    /// All elements of length at most `radius`, in shortlex order.
    pub fn ball(&self, radius: usize) -> Result<Vec<GroupElement>> {
        if let Some(fd) = self.model.finite_data() {
            return Ok(fd
                .elements
                .iter()
                .zip(&fd.lengths)
                .filter(|(_, &l)| l <= radius)
                .map(|(g, _)| g.clone())
                .collect());
        }
        let e = self.model.identity();
        let mut out = vec![e.clone()];
        let mut seen: HashSet<GroupElement> = HashSet::from([e]);
        let mut frontier = VecDeque::from([(0usize, 0usize)]);
        while let Some((i, dist)) = frontier.pop_front() {
            if dist == radius {
                continue;
            }
            for s in self.model.generators() {
                let next = self.model.mul(&out[i], s);
                if seen.contains(&next) {
                    continue;
                }
                if out.len() >= self.ball_cap {
                    return Err(Error::Resource(format!(
                        "ball of radius {radius} exceeds {} elements",
                        self.ball_cap
                    )));
                }
                seen.insert(next.clone());
                out.push(next);
                frontier.push_back((out.len() - 1, dist + 1));
            }
        }
        Ok(out)
    }
}

pub(crate) fn length_in(model: &GroupModel, g: &GroupElement) -> usize {
    if let Some(fd) = model.finite_data() {
        return fd.lengths[fd.index[g]];
    }
    match g {
        GroupElement::Word(w) => w.len(),
        GroupElement::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
        GroupElement::Tuple(parts) => model
            .factors()
            .expect("product model")
            .iter()
            .zip(parts)
            .map(|(f, p)| length_in(f, p))
            .sum(),
        _ => unreachable!("finite encodings carry enumeration data"),
    }
}

pub(crate) fn shortlex_word_in(model: &GroupModel, g: &GroupElement) -> Vec<usize> {
    if let Some(fd) = model.finite_data() {
        return fd.words[fd.index[g]].clone();
    }
    match g {
        GroupElement::Word(w) => w
            .iter()
            .map(|&l| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0))
            .collect(),
        // Geodesics in ℤⁿ are the rearrangements of one multiset of letters;
        // the least one is sorted.
        GroupElement::Vector(v) => v
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| {
                let letter = 2 * i + usize::from(x < 0);
                std::iter::repeat_n(letter, x.unsigned_abs() as usize)
            })
            .collect(),
        // Geodesics are shuffles of component geodesics; earlier factors carry
        // smaller generator indices, so the least shuffle is the concatenation.
        GroupElement::Tuple(parts) => {
            let mut out = Vec::new();
            let mut offset = 0;
            for (f, p) in model.factors().expect("product model").iter().zip(parts) {
                out.extend(shortlex_word_in(f, p).into_iter().map(|i| i + offset));
                offset += f.generators().len();
            }
            out
        }
        _ => unreachable!("finite encodings carry enumeration data"),
    }
}

pub(crate) fn shortlex_cmp_in(model: &GroupModel, a: &GroupElement, b: &GroupElement) -> Ordering {
    if let Some(fd) = model.finite_data() {
        return fd.index[a].cmp(&fd.index[b]);
    }
    let wa = shortlex_word_in(model, a);
    let wb = shortlex_word_in(model, b);
    wa.len().cmp(&wb.len()).then_with(|| wa.cmp(&wb))
}

fn shortlex_min<I>(model: &GroupModel, items: I) -> Option<GroupElement>
where
    I: IntoIterator<Item = GroupElement>,
{
    items
        .into_iter()
        .min_by(|a, b| shortlex_cmp_in(model, a, b))
}

/// A conjugacy class named by its shortlex-least, length-minimal member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyClassId {
    pub rep: GroupElement,
}

fn cyclic_reduce(w: &[i32]) -> (Vec<i32>, Vec<i32>) {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (w[..lo].to_vec(), w[lo..hi].to_vec())
}

/// Returns `(rep, r)` with `g = r⁻¹ · rep · r`, where `rep` names the class.
pub fn conjugator_to_rep(model: &GroupModel, g: &GroupElement) -> (GroupElement, GroupElement) {
    if let Some(fd) = model.finite_data() {
        let i = fd.index[g];
        return (
            fd.elements[fd.class_rep[i] as usize].clone(),
            fd.elements[fd.to_rep[i] as usize].clone(),
        );
    }
    match (model.kind(), g) {
        (GroupKind::Free, GroupElement::Word(w)) => {
            // g = u c u⁻¹ with c cyclically reduced; c = x y and rep = y x.
            let (u, c) = cyclic_reduce(w);
            let mut best: Option<(Vec<i32>, usize)> = None;
            let key = |word: &[i32]| shortlex_word_in(model, &GroupElement::Word(word.to_vec()));
            for i in 0..c.len().max(1) {
                let rot: Vec<i32> = c[i.min(c.len())..].iter().chain(&c[..i.min(c.len())]).copied().collect();
                let better = match &best {
                    None => true,
                    Some((b, _)) => key(&rot) < key(b),
                };
                if better {
                    best = Some((rot, i));
                }
            }
            let (rep, i) = best.expect("at least one rotation");
            let ux = GroupElement::Word(u.iter().chain(&c[..i]).copied().collect());
            let ux = model.mul(&model.identity(), &ux);
            (GroupElement::Word(rep), model.inv(&ux))
        }
        (GroupKind::FreeAbelian, _) => (g.clone(), model.identity()),
        (GroupKind::Product, GroupElement::Tuple(parts)) => {
            let (reps, rs): (Vec<_>, Vec<_>) = model
                .factors()
                .expect("product")
                .iter()
                .zip(parts)
                .map(|(f, p)| conjugator_to_rep(f, p))
                .unzip();
            (GroupElement::Tuple(reps), GroupElement::Tuple(rs))
        }
        _ => unreachable!("element does not match model"),
    }
}

/// Canonical class of `g`: the shortlex-least among length-minimal conjugates.
pub fn conjugacy_class(model: &GroupModel, g: &GroupElement) -> ConjugacyClassId {
    ConjugacyClassId {
        rep: conjugator_to_rep(model, g).0,
    }
}

/// Some `r` with `g = r⁻¹ h r`, assuming `g` and `h` are conjugate.
pub fn any_conjugator(model: &GroupModel, h: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
    let (rep_g, r_g) = conjugator_to_rep(model, g);
    let (rep_h, r_h) = conjugator_to_rep(model, h);
    if rep_g != rep_h {
        return Err(Error::NotConjugate(
            model.format_element(h),
            model.format_element(g),
        ));
    }
    // g = r_g⁻¹ rep r_g and rep = r_h h r_h⁻¹.
    Ok(model.mul(&model.inv(&r_h), &r_g))
}

/// Members of the class of `g` (finite models only).
pub fn class_members(model: &GroupModel, g: &GroupElement) -> Option<Vec<GroupElement>> {
    let fd = model.finite_data()?;
    let rep = fd.class_rep[fd.index[g]];
    Some(
        (0..fd.order())
            .filter(|&i| fd.class_rep[i] == rep)
            .map(|i| fd.elements[i].clone())
            .collect(),
    )
}

/// All conjugacy classes of a finite model, ordered by representative.
pub fn finite_classes(model: &GroupModel) -> Option<Vec<ConjugacyClassId>> {
    let fd = model.finite_data()?;
    let mut reps: Vec<u32> = fd.class_rep.clone();
    reps.sort_unstable();
    reps.dedup();
    Some(
        reps.into_iter()
            .map(|i| ConjugacyClassId {
                rep: fd.elements[i as usize].clone(),
            })
            .collect(),
    )
}

/// `Z_h`, realized as in [`CentralizerModel::new`].
pub fn centralizer(model: &GroupModel, h: &GroupElement) -> CentralizerModel {
    CentralizerModel::new(model, h)
}

#[derive(Clone, Debug)]
pub enum CentralizerRealization {
    /// Every element of a finite centralizer, in shortlex order.
    Explicit(Vec<GroupElement>),
    /// `⟨w⟩` with `w = u v u⁻¹`, `v` cyclically reduced and not a proper power.
    Cyclic {
        generator: GroupElement,
        conjugator: GroupElement,
        root: GroupElement,
    },
    Whole,
    Product(Vec<CentralizerModel>),
}

/// The centralizer `Z_h` of an element.
#[derive(Clone, Debug)]
pub struct CentralizerModel {
    ambient: GroupModel,
    element: GroupElement,
    realization: CentralizerRealization,
    intrinsic: Option<HashMap<GroupElement, usize>>,
}

fn primitive_root(c: &[i32]) -> Vec<i32> {
    let n = c.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| c[i] == c[i % d]))
        .map(|d| c[..d].to_vec())
        .unwrap_or_default()
}

impl CentralizerModel {
    pub fn new(model: &GroupModel, h: &GroupElement) -> Self {
        let realization = if model.is_identity(h) {
            CentralizerRealization::Whole
        } else {
            match model.kind() {
                GroupKind::FreeAbelian => CentralizerRealization::Whole,
                GroupKind::Free if model.is_abelian() => CentralizerRealization::Whole,
                GroupKind::Free => {
                    let GroupElement::Word(w) = h else { unreachable!() };
                    let (u, c) = cyclic_reduce(w);
                    let v = GroupElement::Word(primitive_root(&c));
                    let u = model.mul(&model.identity(), &GroupElement::Word(u));
                    let generator = model.mul(&model.mul(&u, &v), &model.inv(&u));
                    CentralizerRealization::Cyclic {
                        generator,
                        conjugator: u,
                        root: v,
                    }
                }
                GroupKind::Product => {
                    let GroupElement::Tuple(parts) = h else { unreachable!() };
                    CentralizerRealization::Product(
                        model
                            .factors()
                            .expect("product")
                            .iter()
                            .zip(parts)
                            .map(|(f, p)| CentralizerModel::new(f, p))
                            .collect(),
                    )
                }
                GroupKind::FiniteTable | GroupKind::FinitePerm => {
                    let all = model.elements().expect("finite");
                    let members: Vec<GroupElement> =
                        all.iter().filter(|z| model.commute(z, h)).cloned().collect();
                    if members.len() == all.len() {
                        CentralizerRealization::Whole
                    } else {
                        CentralizerRealization::Explicit(members)
                    }
                }
            }
        };
        let intrinsic = match &realization {
            CentralizerRealization::Explicit(members) => Some(intrinsic_lengths(model, members)),
            _ => None,
        };
        Self {
            ambient: model.clone(),
            element: h.clone(),
            realization,
            intrinsic,
        }
    }

    pub fn ambient(&self) -> &GroupModel {
        &self.ambient
    }

    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    pub fn realization(&self) -> &CentralizerRealization {
        &self.realization
    }

    pub fn is_whole(&self) -> bool {
        match &self.realization {
            CentralizerRealization::Whole => true,
            CentralizerRealization::Product(parts) => parts.iter().all(|p| p.is_whole()),
            _ => false,
        }
    }

    pub fn contains(&self, z: &GroupElement) -> bool {
        self.ambient.commute(z, &self.element)
    }

    /// Centralizer elements of ambient length at most `radius`, shortlex order.
    pub fn elements_within(&self, radius: usize) -> Result<Vec<GroupElement>> {
        Ok(WordMetric::new(&self.ambient)
            .ball(radius)?
            .into_iter()
            .filter(|z| self.contains(z))
            .collect())
    }

    /// Length in a word metric intrinsic to `Z_h`.
    ///
    /// Cyclic centralizers use `|wᵐ| = |m|`; finite ones are generated by their
    /// elements of least ambient length; whole centralizers reuse the ambient
    /// metric.
    pub fn intrinsic_length(&self, z: &GroupElement) -> Option<usize> {
        if !self.contains(z) {
            return None;
        }
        match &self.realization {
            CentralizerRealization::Whole => Some(length_in(&self.ambient, z)),
            CentralizerRealization::Explicit(_) => {
                self.intrinsic.as_ref().and_then(|m| m.get(z).copied())
            }
            CentralizerRealization::Cyclic { conjugator, root, .. } => {
                let m = &self.ambient;
                let inner = m.mul(&m.mul(&m.inv(conjugator), z), conjugator);
                let root_len = length_in(m, root);
                Some(length_in(m, &inner) / root_len)
            }
            CentralizerRealization::Product(parts) => {
                let GroupElement::Tuple(zs) = z else { return None };
                parts
                    .iter()
                    .zip(zs)
                    .map(|(p, zi)| p.intrinsic_length(zi))
                    .sum()
            }
        }
    }
}

fn intrinsic_lengths(model: &GroupModel, members: &[GroupElement]) -> HashMap<GroupElement, usize> {
    let lengths: Vec<usize> = members.iter().map(|z| length_in(model, z)).collect();
    let radii: Vec<usize> = {
        let mut r: Vec<usize> = lengths.iter().copied().filter(|&l| l > 0).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    for radius in radii {
        let gens: Vec<&GroupElement> = members
            .iter()
            .zip(&lengths)
            .filter(|(_, &l)| l > 0 && l <= radius)
            .map(|(z, _)| z)
            .collect();
        let mut dist = HashMap::from([(model.identity(), 0usize)]);
        let mut queue = VecDeque::from([model.identity()]);
        while let Some(z) = queue.pop_front() {
            let d = dist[&z];
            for s in &gens {
                let next = model.mul(&z, s);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        if dist.len() == members.len() {
            return dist;
        }
    }
    HashMap::from([(model.identity(), 0usize)])
}

/// Length-minimal, shortlex-least representatives of right cosets `Z_h · g`.
#[derive(Clone, Debug)]
pub struct CosetSection {
    centralizer: CentralizerModel,
    table: Option<Vec<u32>>,
    components: Vec<CosetSection>,
}

impl CosetSection {
    pub fn new(model: &GroupModel, h: &GroupElement) -> Self {
        Self::from_centralizer(CentralizerModel::new(model, h))
    }

    pub fn from_centralizer(centralizer: CentralizerModel) -> Self {
        let model = centralizer.ambient.clone();
        let table = match (&centralizer.realization, model.finite_data()) {
            (CentralizerRealization::Explicit(members), Some(fd)) => Some(
                fd.elements
                    .iter()
                    .map(|g| {
                        let s = shortlex_min(&model, members.iter().map(|a| model.mul(a, g)))
                            .expect("nonempty");
                        fd.index[&s] as u32
                    })
                    .collect(),
            ),
            _ => None,
        };
        let components = match &centralizer.realization {
            CentralizerRealization::Product(parts) => {
                parts.iter().cloned().map(CosetSection::from_centralizer).collect()
            }
            _ => Vec::new(),
        };
        Self {
            centralizer,
            table,
            components,
        }
    }

    pub fn centralizer(&self) -> &CentralizerModel {
        &self.centralizer
    }

    pub fn model(&self) -> &GroupModel {
        &self.centralizer.ambient
    }

    pub fn h(&self) -> &GroupElement {
        &self.centralizer.element
    }

    /// `s(Z_h · g)`.
    pub fn section(&self, g: &GroupElement) -> Result<GroupElement> {
        let model = &self.centralizer.ambient;
        match &self.centralizer.realization {
            CentralizerRealization::Whole => Ok(model.identity()),
            CentralizerRealization::Explicit(_) => {
                let fd = model.finite_data().expect("finite");
                let t = self.table.as_ref().expect("precomputed");
                Ok(fd.elements[t[fd.index[g]] as usize].clone())
            }
            CentralizerRealization::Cyclic { generator, root, .. } => {
                cyclic_section(model, generator, length_in(model, root), g)
            }
            CentralizerRealization::Product(_) => {
                let GroupElement::Tuple(parts) = g else { unreachable!() };
                Ok(GroupElement::Tuple(
                    self.components
                        .iter()
                        .zip(parts)
                        .map(|(cs, p)| cs.section(p))
                        .collect::<Result<_>>()?,
                ))
            }
        }
    }

    /// `p_h(g) = g · s(Z_h · g)⁻¹`, an element of `Z_h`.
    pub fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        let model = &self.centralizer.ambient;
        Ok(model.mul(g, &model.inv(&self.section(g)?)))
    }
}

/// Minimizes `|wᵐ g|` over `m`.
///
/// A coset member `wᵐ g` no longer than `g` has `|m|·|v| ≤ |wᵐ| ≤ 2|g|`, so the
/// window `|m| ≤ 2|g|/|v| + 2` contains the minimum. The lengths must also be
/// non-decreasing over the last two steps at both window ends.
fn cyclic_section(
    model: &GroupModel,
    w: &GroupElement,
    root_len: usize,
    g: &GroupElement,
) -> Result<GroupElement> {
    let glen = length_in(model, g);
    let window = (2 * glen / root_len + 2) as i64;
    let w_inv = model.inv(w);
    let mut candidates: BTreeMap<i64, GroupElement> = BTreeMap::new();
    candidates.insert(0, g.clone());
    let (mut up, mut down) = (g.clone(), g.clone());
    for m in 1..=window + 2 {
        up = model.mul(w, &up);
        down = model.mul(&w_inv, &down);
        candidates.insert(m, up.clone());
        candidates.insert(-m, down.clone());
    }
    let len = |m: i64| length_in(model, &candidates[&m]);
    let certified = len(window) <= len(window + 1)
        && len(window + 1) <= len(window + 2)
        && len(-window) <= len(-window - 1)
        && len(-window - 1) <= len(-window - 2);
    if !certified {
        return Err(Error::Window(format!(
            "coset minimum of {} not certified within |m| <= {window}",
            model.format_element(g)
        )));
    }
    Ok(shortlex_min(
        model,
        candidates
            .into_iter()
            .filter(|(m, _)| m.abs() <= window)
            .map(|(_, x)| x),
    )
    .expect("nonempty"))
}

/// A conjugator of minimal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugator {
    pub r: GroupElement,
    pub length: usize,
}

/// Minimal-length `r` with `h = r⁻¹ g r`, searching the ball of radius
/// `max_radius` in shortlex order.
pub fn find_conjugator(
    model: &GroupModel,
    g: &GroupElement,
    h: &GroupElement,
    max_radius: usize,
) -> Result<Conjugator> {
    let ball = WordMetric::new(model).ball(max_radius)?;
    find_conjugator_in(model, g, h, &ball, max_radius)
}

/// As [`find_conjugator`], over a precomputed shortlex-ordered ball.
pub fn find_conjugator_in(
    model: &GroupModel,
    g: &GroupElement,
    h: &GroupElement,
    ball: &[GroupElement],
    max_radius: usize,
) -> Result<Conjugator> {
    if conjugacy_class(model, g) != conjugacy_class(model, h) {
        return Err(Error::NotConjugate(model.format_element(g), model.format_element(h)));
    }
    ball.iter()
        .find(|r| model.conjugate(g, r) == *h)
        .map(|r| Conjugator {
            r: r.clone(),
            length: length_in(model, r),
        })
        .ok_or_else(|| Error::NotConjugateWithin {
            from: model.format_element(g),
            to: model.format_element(h),
            max_radius,
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowStatus {
    Ok,
    NotFoundWithin,
}

/// One row of the conjugacy-bound table: the worst minimal conjugator length
/// over sampled `h` of a given length in a given class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyRow {
    pub class_rep: String,
    pub h_length: usize,
    pub min_conjugator_len: Option<usize>,
    pub window_status: WindowStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyProfile {
    pub rows: Vec<ConjugacyRow>,
    /// `(|h|, max minimal |r|)` over all sampled classes.
    pub growth: Vec<(usize, usize)>,
    pub fit: Option<GrowthFit>,
}

/// Ordinary least squares of `y` against `x`.
pub fn least_squares(points: &[(f64, f64)]) -> Option<GrowthFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        .sqrt();
    Some(GrowthFit {
        slope,
        intercept,
        residual,
        points: points.len(),
    })
}

/// Minimal conjugator lengths from class representatives to every `h` in the
/// ball of radius `sample_radius`, with conjugators searched up to `max_radius`.
pub fn conjugacy_bound_profile(
    model: &GroupModel,
    sample_radius: usize,
    max_radius: usize,
) -> Result<ConjugacyProfile> {
    let metric = WordMetric::new(model);
    let sample = metric.ball(sample_radius)?;
    let search = metric.ball(max_radius)?;
    let mut table: BTreeMap<(usize, String), (Option<usize>, WindowStatus)> = BTreeMap::new();
    for h in &sample {
        let rep = conjugacy_class(model, h).rep;
        let found = find_conjugator_in(model, &rep, h, &search, max_radius);
        let key = (metric.length(h), model.format_element(&rep));
        let entry = table.entry(key).or_insert((Some(0), WindowStatus::Ok));
        match found {
            Ok(c) => {
                if let Some(best) = entry.0.as_mut() {
                    *best = (*best).max(c.length);
                }
            }
            Err(_) => *entry = (None, WindowStatus::NotFoundWithin),
        }
    }
    let mut growth: BTreeMap<usize, usize> = BTreeMap::new();
    let rows: Vec<ConjugacyRow> = table
        .into_iter()
        .map(|((h_length, class_rep), (len, status))| {
            if let Some(l) = len {
                let g = growth.entry(h_length).or_insert(0);
                *g = (*g).max(l);
            }
            ConjugacyRow {
                class_rep,
                h_length,
                min_conjugator_len: len,
                window_status: status,
            }
        })
        .collect();
    let growth: Vec<(usize, usize)> = growth.into_iter().collect();
    let points: Vec<(f64, f64)> = growth
        .iter()
        .filter(|(h, _)| *h > 0)
        .map(|&(h, r)| (((1 + h) as f64).ln(), ((1 + r) as f64).ln()))
        .collect();
    Ok(ConjugacyProfile {
        rows,
        growth,
        fit: least_squares(&points),
    })
}

/// Worst ratio `|p_h(g)| / |g|` over a sample, under the induced and the
/// intrinsic metric on `Z_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LipschitzReport {
    pub samples: usize,
    pub induced_max: (usize, usize),
    pub intrinsic_max: Option<(usize, usize)>,
    pub violations: Vec<String>,
}

fn ratio_max(cur: (usize, usize), num: usize, den: usize) -> (usize, usize) {
    if num * cur.1 > cur.0 * den {
        (num, den)
    } else {
        cur
    }
}

/// Checks `|p_h(g)| ≤ 2|g|` for the induced metric on every sampled `g`.
pub fn lipschitz_check(cs: &CosetSection, sample: &[GroupElement]) -> Result<LipschitzReport> {
    let model = cs.model();
    let mut induced = (0, 1);
    let mut intrinsic = Some((0, 1));
    let mut violations = Vec::new();
    for g in sample {
        let p = cs.project(g)?;
        let glen = length_in(model, g);
        let plen = length_in(model, &p);
        if plen > 2 * glen {
            violations.push(model.format_element(g));
        }
        if glen > 0 {
            induced = ratio_max(induced, plen, glen);
            intrinsic = match (intrinsic, cs.centralizer().intrinsic_length(&p)) {
                (Some(cur), Some(l)) => Some(ratio_max(cur, l, glen)),
                _ => None,
            };
        }
    }
    Ok(LipschitzReport {
        samples: sample.len(),
        induced_max: induced,
        intrinsic_max: intrinsic,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets::*;

    fn el(m: &GroupModel, s: &str) -> GroupElement {
        m.parse_element(s).unwrap()
    }

    #[test]
    fn word_lengths() {
        let f2 = free(2);
        let wm = WordMetric::new(&f2);
        assert_eq!(wm.length(&el(&f2, "abA")), 3);
        let z2 = free_abelian(2);
        assert_eq!(WordMetric::new(&z2).length(&el(&z2, "(2,1)")), 3);
        let s3 = symmetric3();
        // (13) swaps 0 and 2.
        assert_eq!(WordMetric::new(&s3).length(&el(&s3, "[2,1,0]")), 3);
    }

    #[test]
    fn ball_sizes() {
        let f2 = free(2);
        let names: Vec<String> = WordMetric::new(&f2)
            .ball(1)
            .unwrap()
            .iter()
            .map(|g| f2.format_element(g))
            .collect();
        assert_eq!(names, ["e", "a", "A", "b", "B"]);
        assert_eq!(WordMetric::new(&free_abelian(2)).ball(1).unwrap().len(), 5);
        // 1 + 4 + 12 reduced words.
        assert_eq!(WordMetric::new(&f2).ball(2).unwrap().len(), 17);
        let capped = WordMetric::new(&f2).with_ball_cap(10);
        assert!(matches!(capped.ball(2), Err(Error::Resource(_))));
    }

    #[test]
    fn ball_is_shortlex_sorted() {
        for m in [free(2), free_abelian(2), symmetric3()] {
            let wm = WordMetric::new(&m);
            let ball = wm.ball(3).unwrap();
            for p in ball.windows(2) {
                assert_eq!(wm.shortlex_cmp(&p[0], &p[1]), Ordering::Less);
            }
        }
    }

    #[test]
    fn classes() {
        let f2 = free(2);
        assert_eq!(conjugacy_class(&f2, &el(&f2, "abA")).rep, el(&f2, "b"));
        assert_eq!(conjugacy_class(&f2, &el(&f2, "ba")).rep, el(&f2, "ab"));
        let z2 = free_abelian(2);
        assert_eq!(conjugacy_class(&z2, &el(&z2, "(2,1)")).rep, el(&z2, "(2,1)"));
        let s3 = symmetric3();
        let t = el(&s3, "[2,1,0]");
        assert_eq!(conjugacy_class(&s3, &t).rep, el(&s3, "[1,0,2]"));
        assert_eq!(class_members(&s3, &t).unwrap().len(), 3);
        assert_eq!(finite_classes(&s3).unwrap().len(), 3);
    }

    #[test]
    fn conjugator_to_rep_is_correct() {
        for m in [free(2), free_abelian(2), symmetric3(), dihedral4()] {
            for g in WordMetric::new(&m).ball(4).unwrap() {
                let (rep, r) = conjugator_to_rep(&m, &g);
                assert_eq!(m.conjugate(&rep, &r), g);
            }
        }
    }

    #[test]
    fn centralizers() {
        let z2 = free_abelian(2);
        assert!(CentralizerModel::new(&z2, &el(&z2, "(1,0)")).is_whole());

        let f2 = free(2);
        let zc = CentralizerModel::new(&f2, &el(&f2, "aa"));
        match zc.realization() {
            CentralizerRealization::Cyclic { generator, .. } => assert_eq!(*generator, el(&f2, "a")),
            other => panic!("unexpected {other:?}"),
        }
        // Brute force on B(4): exactly the powers of a commute with a².
        let commuting = zc.elements_within(4).unwrap();
        let names: Vec<String> = commuting.iter().map(|g| f2.format_element(g)).collect();
        assert_eq!(names, ["e", "a", "A", "aa", "AA", "aaa", "AAA", "aaaa", "AAAA"]);

        let s3 = symmetric3();
        let z = CentralizerModel::new(&s3, &el(&s3, "[1,0,2]"));
        match z.realization() {
            CentralizerRealization::Explicit(m) => {
                assert_eq!(m, &vec![s3.identity(), el(&s3, "[1,0,2]")])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sections() {
        let f2 = free(2);
        let cs = CosetSection::new(&f2, &el(&f2, "a"));
        assert_eq!(cs.section(&el(&f2, "aaab")).unwrap(), el(&f2, "b"));
        assert_eq!(cs.project(&el(&f2, "aaab")).unwrap(), el(&f2, "aaa"));
        assert_eq!(cs.section(&el(&f2, "AA")).unwrap(), f2.identity());
        assert_eq!(cs.project(&el(&f2, "AA")).unwrap(), el(&f2, "AA"));

        let z2 = free_abelian(2);
        let cs = CosetSection::new(&z2, &el(&z2, "(1,1)"));
        assert_eq!(cs.section(&el(&z2, "(3,-2)")).unwrap(), z2.identity());
        assert_eq!(cs.project(&el(&z2, "(3,-2)")).unwrap(), el(&z2, "(3,-2)"));
    }

    #[test]
    fn section_is_minimal_on_finite_cosets() {
        for m in [symmetric3(), dihedral4()] {
            let wm = WordMetric::new(&m);
            for h in m.elements().unwrap() {
                let cs = CosetSection::new(&m, h);
                for g in m.elements().unwrap() {
                    let s = cs.section(g).unwrap();
                    // Same coset: g s⁻¹ ∈ Z_h.
                    assert!(cs.centralizer().contains(&m.mul(g, &m.inv(&s))));
                    assert!(wm.length(&s) <= wm.length(g));
                }
            }
        }
    }

    #[test]
    fn conjugators() {
        let z2 = free_abelian(2);
        let g = el(&z2, "(2,1)");
        assert_eq!(find_conjugator(&z2, &g, &g, 3).unwrap().length, 0);

        let f2 = free(2);
        let c = find_conjugator(&f2, &el(&f2, "b"), &el(&f2, "abA"), 3).unwrap();
        assert_eq!(c.r, el(&f2, "A"));
        assert_eq!(c.length, 1);
        assert!(matches!(
            find_conjugator(&f2, &el(&f2, "a"), &el(&f2, "b"), 3),
            Err(Error::NotConjugate(..))
        ));
        assert!(matches!(
            find_conjugator(&f2, &el(&f2, "b"), &el(&f2, "aabAA"), 1),
            Err(Error::NotConjugateWithin { max_radius: 1, .. })
        ));

        // Conjugating (12) by a generator gives (12) or (13); reaching (23)
        // takes a 3-cycle. Exhaustive check over all of S₃:
        let s3 = symmetric3();
        let (g, h) = (el(&s3, "[1,0,2]"), el(&s3, "[0,2,1]"));
        let wm = WordMetric::new(&s3);
        let brute = s3
            .elements()
            .unwrap()
            .iter()
            .filter(|r| s3.conjugate(&g, r) == h)
            .map(|r| wm.length(r))
            .min()
            .unwrap();
        let c = find_conjugator(&s3, &g, &h, 3).unwrap();
        assert_eq!(c.length, brute);
        assert_eq!(c.length, 2);
        assert_eq!(s3.conjugate(&g, &c.r), h);
    }

    #[test]
    fn lipschitz_on_free_group() {
        let f2 = free(2);
        let ball = WordMetric::new(&f2).ball(4).unwrap();
        for h in ["a", "aa", "ab"] {
            let cs = CosetSection::new(&f2, &el(&f2, h));
            let report = lipschitz_check(&cs, &ball).unwrap();
            assert!(report.violations.is_empty(), "{h}: {:?}", report.violations);
            assert!(report.intrinsic_max.is_some());
        }
    }

    #[test]
    fn profile_abelian_is_zero() {
        let p = conjugacy_bound_profile(&free_abelian(2), 2, 2).unwrap();
        assert!(p.rows.iter().all(|r| r.min_conjugator_len == Some(0)));
        let p = conjugacy_bound_profile(&cyclic(4), 2, 2).unwrap();
        assert!(p.rows.iter().all(|r| r.min_conjugator_len == Some(0)));
    }
}
