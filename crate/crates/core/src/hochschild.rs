//! The Hochschild complex of ℂG, its splitting over conjugacy classes and the
//! comparison with the centralizer of a class representative.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::One;

use crate::chain::{q, Chain, ChainKind, GroupChain, Tuple, Q};
use crate::error::{Error, Result};
use crate::group::{FiniteData, GroupElement, GroupModel};
use crate::linalg::{complex_ranks, RankReport};
use crate::metric::{any_conjugator, conjugacy_class, ConjugacyClassId, CosetSection};

/// Largest chain-space dimension handled by [`homology_ranks`] by default.
pub const DEFAULT_MAX_DIM: usize = 250_000;

fn check_kind(c: &GroupChain, kind: ChainKind) -> Result<()> {
    if c.kind() != kind {
        return Err(Error::KindMismatch {
            expected: kind.to_string(),
            found: c.kind().to_string(),
        });
    }
    Ok(())
}

/// Signed faces of `b` on one basis tuple of degree ≥ 1.
pub fn boundary_terms(model: &GroupModel, t: &[GroupElement]) -> Vec<(Tuple, i64)> {
    let n = t.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut face = Vec::with_capacity(n);
        face.extend_from_slice(&t[..j]);
        face.push(model.mul(&t[j], &t[j + 1]));
        face.extend_from_slice(&t[j + 2..]);
        out.push((face, if j % 2 == 0 { 1 } else { -1 }));
    }
    let mut face = Vec::with_capacity(n);
    face.push(model.mul(&t[n], &t[0]));
    face.extend_from_slice(&t[1..n]);
    out.push((face, if n.is_multiple_of(2) { 1 } else { -1 }));
    out
}

/// Hochschild boundary `b`. In degree 0 the result is the zero chain.
pub fn hochschild_boundary(model: &GroupModel, c: &GroupChain) -> Result<GroupChain> {
    check_kind(c, ChainKind::Hochschild)?;
    let n = c.degree();
    if n == 0 {
        return Ok(Chain::zero(ChainKind::Hochschild, 0));
    }
    c.map_linear(ChainKind::Hochschild, n - 1, |t| {
        let mut out = Chain::zero(ChainKind::Hochschild, n - 1);
        for (face, s) in boundary_terms(model, t) {
            out.add_term(face, q(s));
        }
        Ok(out)
    })
}

/// Class of the entry product of a tuple.
pub fn tuple_class(model: &GroupModel, t: &[GroupElement]) -> ConjugacyClassId {
    conjugacy_class(model, &model.product(t))
}

/// Splits a chain into its components `C_n(ℂG)_x`.
pub fn split_by_class(model: &GroupModel, c: &GroupChain) -> BTreeMap<ConjugacyClassId, GroupChain> {
    let mut out: BTreeMap<ConjugacyClassId, GroupChain> = BTreeMap::new();
    for (t, x) in c.terms() {
        out.entry(tuple_class(model, t))
            .or_insert_with(|| Chain::zero(c.kind(), c.degree()))
            .add_term(t.clone(), x.clone());
    }
    out
}

/// The maps `π_h` and `ι_h` between `C_•(ℂG)_x` and `C_•(ℂZ_h)_{[h]}`.
#[derive(Debug)]
pub struct Localization {
    section: CosetSection,
    class: ConjugacyClassId,
    conjugators: Mutex<HashMap<GroupElement, GroupElement>>,
}

impl Localization {
    pub fn new(model: &GroupModel, h: &GroupElement) -> Self {
        Self::from_section(CosetSection::new(model, h))
    }

    pub fn from_section(section: CosetSection) -> Self {
        let class = conjugacy_class(section.model(), section.h());
        Self {
            section,
            class,
            conjugators: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &GroupModel {
        self.section.model()
    }

    pub fn h(&self) -> &GroupElement {
        self.section.h()
    }

    pub fn class(&self) -> &ConjugacyClassId {
        &self.class
    }

    pub fn section(&self) -> &CosetSection {
        &self.section
    }

    /// The minimal conjugator `r` with `g = r⁻¹ h r`, memoized per `g`.
    ///
    /// The minimal ones form the coset `Z_h · r₀` of any solution, so this
    /// is `s(Z_h · r₀)`.
    pub fn conjugator(&self, g: &GroupElement) -> Result<GroupElement> {
        if let Some(r) = self.conjugators.lock().expect("poisoned").get(g) {
            return Ok(r.clone());
        }
        let r0 = any_conjugator(self.model(), self.h(), g)?;
        let r = self.section.section(&r0)?;
        self.conjugators
            .lock()
            .expect("poisoned")
            .insert(g.clone(), r.clone());
        Ok(r)
    }

    /// `p_h(r g₀), p_h(r g₀ g₁), …, p_h(r g₀ ⋯ g_n)`.
    pub fn projected_prefixes(&self, t: &[GroupElement], r: &GroupElement) -> Result<Tuple> {
        let model = self.model();
        let mut acc = r.clone();
        t.iter()
            .map(|g| {
                acc = model.mul(&acc, g);
                self.section.project(&acc)
            })
            .collect()
    }

    /// `π_h` on one generator, using the given conjugator.
    pub fn pi_tuple_with(&self, t: &[GroupElement], r: &GroupElement) -> Result<Tuple> {
        let model = self.model();
        let prod = model.product(t);
        if model.conjugate(self.h(), r) != prod {
            return Err(Error::NotConjugate(
                model.format_element(self.h()),
                model.format_element(&prod),
            ));
        }
        let p = self.projected_prefixes(t, r)?;
        let n = t.len() - 1;
        let mut out = Vec::with_capacity(t.len());
        out.push(model.product([&model.inv(&p[n]), self.h(), &p[0]]));
        for i in 1..=n {
            out.push(model.mul(&model.inv(&p[i - 1]), &p[i]));
        }
        Ok(out)
    }

    pub fn pi_tuple(&self, t: &[GroupElement]) -> Result<Tuple> {
        let r = self.conjugator(&self.model().product(t))?;
        self.pi_tuple_with(t, &r)
    }

    pub fn pi_h(&self, c: &GroupChain) -> Result<GroupChain> {
        check_kind(c, ChainKind::Hochschild)?;
        c.map_linear(ChainKind::Hochschild, c.degree(), |t| {
            Ok(Chain::generator(ChainKind::Hochschild, self.pi_tuple(t)?))
        })
    }

    /// `ι_h`: entries must lie in `Z_h`.
    pub fn iota_h(&self, c: &GroupChain) -> Result<GroupChain> {
        check_kind(c, ChainKind::Hochschild)?;
        let z = self.section.centralizer();
        for (t, _) in c.terms() {
            if let Some(g) = t.iter().find(|g| !z.contains(g)) {
                return Err(Error::OutsideCentralizer(self.model().format_element(g)));
            }
        }
        Ok(c.clone())
    }
}

/// Index-level Hochschild faces over a finite multiplication table.
fn boundary_indices(fd: &FiniteData, t: &[u32]) -> Vec<(Vec<u32>, Q)> {
    let n = t.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut face = Vec::with_capacity(n);
        face.extend_from_slice(&t[..j]);
        face.push(fd.mul_idx(t[j] as usize, t[j + 1] as usize) as u32);
        face.extend_from_slice(&t[j + 2..]);
        out.push((face, if j % 2 == 0 { Q::one() } else { -Q::one() }));
    }
    let mut face = Vec::with_capacity(n);
    face.push(fd.mul_idx(t[n] as usize, t[0] as usize) as u32);
    face.extend_from_slice(&t[1..n]);
    out.push((face, if n.is_multiple_of(2) { Q::one() } else { -Q::one() }));
    out
}

/// All index tuples of length `len` over `0..order`, lexicographic.
pub(crate) fn all_index_tuples(order: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..order as u32).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// The Hochschild complex of a model, optionally restricted to one class.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    model: GroupModel,
    class: Option<ConjugacyClassId>,
    max_dim: usize,
}

impl HochschildComplex {
    pub fn new(model: &GroupModel, class: Option<ConjugacyClassId>) -> Self {
        Self {
            model: model.clone(),
            class,
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn class(&self) -> Option<&ConjugacyClassId> {
        self.class.as_ref()
    }

    pub fn contains_tuple(&self, t: &[GroupElement]) -> bool {
        match &self.class {
            None => true,
            Some(x) => tuple_class(&self.model, t) == *x,
        }
    }

    pub fn boundary(&self, c: &GroupChain) -> Result<GroupChain> {
        hochschild_boundary(&self.model, c)
    }

    fn finite(&self) -> Result<&FiniteData> {
        self.model.finite_data().ok_or_else(|| {
            Error::Unsupported(format!("homology ranks need a finite model, got {}", self.model))
        })
    }

    /// Dimension of the degree-`n` chain space, `|x|·|G|^n` or `|G|^{n+1}`.
    pub fn dim(&self, n: usize) -> Result<usize> {
        let fd = self.finite()?;
        let width = match &self.class {
            None => fd.order(),
            Some(x) => self.class_indices(fd, x).len(),
        };
        (fd.order() as u128)
            .checked_pow(n as u32)
            .map(|p| p * width as u128)
            .filter(|&d| d <= usize::MAX as u128)
            .map(|d| d as usize)
            .ok_or_else(|| Error::Resource(format!("chain space in degree {n} is too large")))
    }

    fn class_indices(&self, fd: &FiniteData, x: &ConjugacyClassId) -> Vec<u32> {
        let rep = fd.index[&x.rep] as u32;
        (0..fd.order() as u32)
            .filter(|&i| fd.class_rep[i as usize] == rep)
            .collect()
    }

    /// Basis tuples (as element indices) in degree `n`.
    fn index_basis(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        let dim = self.dim(n)?;
        if dim > self.max_dim {
            return Err(Error::Resource(format!(
                "degree {n} chain space has dimension {dim}, cap is {}",
                self.max_dim
            )));
        }
        let fd = self.finite()?;
        Ok(match &self.class {
            None => all_index_tuples(fd.order(), n + 1),
            Some(x) => {
                let members = self.class_indices(fd, x);
                let mut out = Vec::with_capacity(dim);
                for head in all_index_tuples(fd.order(), n) {
                    let prod = head
                        .iter()
                        .fold(0usize, |acc, &i| fd.mul_idx(acc, i as usize));
                    let prod_inv = fd.inv[prod] as usize;
                    for &y in &members {
                        let mut t = head.clone();
                        t.push(fd.mul_idx(prod_inv, y as usize) as u32);
                        out.push(t);
                    }
                }
                out
            }
        })
    }

    /// Basis tuples in degree `n`.
    pub fn basis(&self, n: usize) -> Result<Vec<Tuple>> {
        let fd = self.finite()?;
        Ok(self
            .index_basis(n)?
            .into_iter()
            .map(|t| t.iter().map(|&i| fd.elements[i as usize].clone()).collect())
            .collect())
    }

    /// Homology ranks over ℚ in degrees `0..=up_to`.
    pub fn homology_ranks(&self, up_to: usize) -> Result<Vec<RankReport>> {
        let fd = self.finite()?;
        let bases = (0..=up_to + 1)
            .map(|n| self.index_basis(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(complex_ranks(&bases, |t| boundary_indices(fd, t)))
    }
}

/// Homology ranks of the Hochschild complex of a finite model, in degrees
/// `0..=up_to`, optionally restricted to one class.
pub fn homology_ranks(
    model: &GroupModel,
    up_to: usize,
    class: Option<&ConjugacyClassId>,
) -> Result<Vec<RankReport>> {
    HochschildComplex::new(model, class.cloned()).homology_ranks(up_to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets;
    use crate::metric::finite_classes;

    fn hc(t: Tuple) -> GroupChain {
        Chain::generator(ChainKind::Hochschild, t)
    }

    fn el(m: &GroupModel, s: &str) -> GroupElement {
        m.parse_element(s).unwrap()
    }

    fn bettis(r: &[RankReport]) -> Vec<usize> {
        r.iter().map(|x| x.betti).collect()
    }

    #[test]
    fn boundary_examples() {
        let f2 = presets::free(2);
        let (a, b) = (el(&f2, "a"), el(&f2, "b"));
        let c = hochschild_boundary(&f2, &hc(vec![a.clone(), b.clone()])).unwrap();
        let mut expected = hc(vec![el(&f2, "ab")]);
        expected.add_term(vec![el(&f2, "ba")], q(-1));
        assert_eq!(c, expected);

        let z2 = presets::free_abelian(2);
        let t = vec![el(&z2, "(1,0)"), el(&z2, "(3,-1)")];
        assert!(hochschild_boundary(&z2, &hc(t)).unwrap().is_zero());

        let e = f2.identity();
        let c = hochschild_boundary(&f2, &hc(vec![e.clone(), e.clone(), e.clone()])).unwrap();
        assert_eq!(c, hc(vec![e.clone(), e.clone()]));

        let c = hochschild_boundary(&f2, &hc(vec![a])).unwrap();
        assert!(c.is_zero() && c.degree() == 0);
    }

    #[test]
    fn splitting() {
        let s3 = presets::symmetric3();
        let (s, t) = (el(&s3, "[1,0,2]"), el(&s3, "[0,2,1]"));
        let parts = split_by_class(&s3, &hc(vec![s.clone(), t.clone()]));
        assert_eq!(parts.len(), 1);
        let x = parts.keys().next().unwrap();
        assert_eq!(*x, conjugacy_class(&s3, &s3.mul(&s, &t)));
        assert_ne!(*x, conjugacy_class(&s3, &s));

        let mut c = hc(vec![s3.identity()]);
        c.add_term(vec![s.clone()], q(2));
        assert_eq!(split_by_class(&s3, &c).len(), 2);
    }

    #[test]
    fn rank_oracles() {
        assert_eq!(bettis(&homology_ranks(&presets::cyclic(2), 2, None).unwrap()), [2, 0, 0]);
        assert_eq!(bettis(&homology_ranks(&presets::cyclic(4), 1, None).unwrap()), [4, 0]);
        let s3 = presets::symmetric3();
        let x = conjugacy_class(&s3, &el(&s3, "[1,0,2]"));
        let r = homology_ranks(&s3, 1, Some(&x)).unwrap();
        assert_eq!(bettis(&r), [1, 0]);
        assert_eq!(r[0].dim_chain_space, 3);
        assert_eq!(r[1].dim_chain_space, 18);
    }

    #[test]
    fn class_components_add_up() {
        let s3 = presets::symmetric3();
        let mut total = vec![0; 3];
        for x in finite_classes(&s3).unwrap() {
            let r = homology_ranks(&s3, 2, Some(&x)).unwrap();
            for (n, row) in r.iter().enumerate() {
                total[n] += row.dim_chain_space;
            }
        }
        assert_eq!(total, [6, 36, 216]);
    }

    #[test]
    fn resource_cap() {
        let c = HochschildComplex::new(&presets::symmetric3(), None).with_max_dim(100);
        assert!(matches!(c.homology_ranks(2), Err(Error::Resource(_))));
        let f2 = presets::free(2);
        assert!(matches!(homology_ranks(&f2, 1, None), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pi_abelian_is_identity() {
        let z2 = presets::free_abelian(2);
        let t = vec![el(&z2, "(1,2)"), el(&z2, "(0,-1)")];
        let loc = Localization::new(&z2, &z2.product(&t));
        assert_eq!(loc.pi_tuple(&t).unwrap(), t);
    }

    #[test]
    fn pi_degree_zero() {
        let s3 = presets::symmetric3();
        let h = el(&s3, "[1,0,2]");
        let loc = Localization::new(&s3, &h);
        for g in class_members_of(&s3, &h) {
            assert_eq!(loc.pi_tuple(&[g]).unwrap(), vec![h.clone()]);
        }
    }

    fn class_members_of(m: &GroupModel, g: &GroupElement) -> Vec<GroupElement> {
        crate::metric::class_members(m, g).unwrap()
    }

    #[test]
    fn pi_s3_instance() {
        let s3 = presets::symmetric3();
        let h = el(&s3, "[1,0,2]");
        let loc = Localization::new(&s3, &h);
        let t = vec![el(&s3, "[2,1,0]"), el(&s3, "[1,2,0]")];
        let out = loc.pi_tuple(&t).unwrap();
        let z = loc.section().centralizer();
        assert!(out.iter().all(|g| z.contains(g)));
        assert_eq!(s3.product(&out), h);
        // Every conjugator gives the same answer.
        for r in s3.elements().unwrap() {
            if s3.conjugate(&h, r) == s3.product(&t) {
                assert_eq!(loc.pi_tuple_with(&t, r).unwrap(), out);
            }
        }
    }

    #[test]
    fn pi_iota_identity() {
        let f2 = presets::free(2);
        let h = el(&f2, "aa");
        let loc = Localization::new(&f2, &h);
        let t = vec![el(&f2, "a"), el(&f2, "A"), el(&f2, "aa")];
        assert_eq!(loc.pi_h(&loc.iota_h(&hc(t.clone())).unwrap()).unwrap(), hc(t));
        assert!(matches!(
            loc.iota_h(&hc(vec![el(&f2, "b")])),
            Err(Error::OutsideCentralizer(_))
        ));
        let zero = Chain::zero(ChainKind::Hochschild, 2);
        assert!(loc.iota_h(&zero).unwrap().is_zero());
    }

    #[test]
    fn minimal_conjugator_matches_search() {
        let d4 = presets::dihedral4();
        for h in d4.elements().unwrap() {
            let loc = Localization::new(&d4, h);
            for g in class_members_of(&d4, h) {
                let r = loc.conjugator(&g).unwrap();
                let found = crate::metric::find_conjugator(&d4, h, &g, 4).unwrap();
                assert_eq!(r, found.r);
            }
        }
    }
}
