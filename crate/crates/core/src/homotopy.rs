//! The complex `E_•(G)`, the maps `i^E`, `p^E`, `θ_h` and the homotopies `D_n`.

use crate::bar::simplicial_faces;
use crate::chain::{q, Chain, ChainKind, GroupChain, Tuple};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::hochschild::{hochschild_boundary, Localization};
use crate::metric::CosetSection;

fn expect_kind(c: &GroupChain, kind: ChainKind) -> Result<()> {
    if c.kind() != kind {
        return Err(Error::KindMismatch {
            expected: kind.to_string(),
            found: c.kind().to_string(),
        });
    }
    Ok(())
}

/// `∂(g₀, …, g_n) = Σ (−1)^k (g₀, …, ĝ_k, …, g_n)`.
pub fn boundary_e(c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::E)?;
    let n = c.degree();
    if n == 0 {
        return Ok(Chain::zero(ChainKind::E, 0));
    }
    c.map_linear(ChainKind::E, n - 1, |t| {
        let mut out = Chain::zero(ChainKind::E, n - 1);
        for (face, s) in simplicial_faces(t) {
            out.add_term(face, q(s));
        }
        Ok(out)
    })
}

/// Left translation `z · (g₀, …, g_n)`.
pub fn translate(model: &GroupModel, z: &GroupElement, t: &[GroupElement]) -> Tuple {
    t.iter().map(|g| model.mul(z, g)).collect()
}

pub fn translate_chain(model: &GroupModel, z: &GroupElement, c: &GroupChain) -> GroupChain {
    let mut out = Chain::zero(c.kind(), c.degree());
    for (t, x) in c.terms() {
        out.add_term(translate(model, z, t), x.clone());
    }
    out
}

/// Maps built from a coset section of `Z_h`, together with the lifts that
/// push them to the class component of `h`.
#[derive(Debug)]
pub struct Transfer {
    loc: Localization,
}

impl Transfer {
    pub fn new(model: &GroupModel, h: &GroupElement) -> Self {
        Self {
            loc: Localization::new(model, h),
        }
    }

    pub fn from_localization(loc: Localization) -> Self {
        Self { loc }
    }

    pub fn localization(&self) -> &Localization {
        &self.loc
    }

    pub fn model(&self) -> &GroupModel {
        self.loc.model()
    }

    pub fn h(&self) -> &GroupElement {
        self.loc.h()
    }

    fn section(&self) -> &CosetSection {
        self.loc.section()
    }

    pub fn p_tuple(&self, t: &[GroupElement]) -> Result<Tuple> {
        t.iter().map(|g| self.section().project(g)).collect()
    }

    /// Entrywise `p_h`.
    pub fn p_e(&self, c: &GroupChain) -> Result<GroupChain> {
        expect_kind(c, ChainKind::E)?;
        c.map_linear(ChainKind::E, c.degree(), |t| {
            Ok(Chain::generator(ChainKind::E, self.p_tuple(t)?))
        })
    }

    /// Inclusion of `E_•(Z_h)`.
    pub fn i_e(&self, c: &GroupChain) -> Result<GroupChain> {
        expect_kind(c, ChainKind::E)?;
        let z = self.section().centralizer();
        for (t, _) in c.terms() {
            if let Some(g) = t.iter().find(|g| !z.contains(g)) {
                return Err(Error::OutsideCentralizer(self.model().format_element(g)));
            }
        }
        Ok(c.clone())
    }

    /// `D_n` on one generator.
    pub fn d_tuple(&self, t: &[GroupElement]) -> Result<GroupChain> {
        let n = t.len() - 1;
        if n == 0 {
            let head = self.section().project(&t[0])?;
            return Ok(Chain::generator(ChainKind::E, vec![head, t[0].clone()]));
        }
        // (id − i p − D_{n−1} ∂)(t), then prepend g₀ to every term.
        let sigma = Chain::generator(ChainKind::E, t.to_vec());
        let mut inner = sigma.clone();
        inner.add_assign_unchecked(&Chain::generator(ChainKind::E, self.p_tuple(t)?), &q(-1));
        let dd = self.d(&boundary_e(&sigma)?)?;
        inner.add_assign_unchecked(&dd, &q(-1));
        let mut out = Chain::zero(ChainKind::E, n + 1);
        for (u, x) in inner.into_terms() {
            let mut v = Vec::with_capacity(n + 2);
            v.push(t[0].clone());
            v.extend(u);
            out.add_term(v, x);
        }
        Ok(out)
    }

    /// `D : E_n → E_{n+1}`.
    pub fn d(&self, c: &GroupChain) -> Result<GroupChain> {
        expect_kind(c, ChainKind::E)?;
        c.map_linear(ChainKind::E, c.degree() + 1, |t| self.d_tuple(t))
    }

    /// `θ_h(g₀, …, g_n) = (g_n⁻¹ h g₀, g₀⁻¹ g₁, …, g_{n−1}⁻¹ g_n)`.
    pub fn theta_tuple(&self, t: &[GroupElement]) -> Tuple {
        let model = self.model();
        let n = t.len() - 1;
        let mut out = Vec::with_capacity(n + 1);
        out.push(model.product([&model.inv(&t[n]), self.h(), &t[0]]));
        for i in 1..=n {
            out.push(model.mul(&model.inv(&t[i - 1]), &t[i]));
        }
        out
    }

    pub fn theta(&self, c: &GroupChain) -> Result<GroupChain> {
        expect_kind(c, ChainKind::E)?;
        c.map_linear(ChainKind::Hochschild, c.degree(), |t| {
            Ok(Chain::generator(ChainKind::Hochschild, self.theta_tuple(t)))
        })
    }

    /// A `θ_h`-preimage `(r g₀, r g₀ g₁, …, r g₀ ⋯ g_n)` of a class-component tuple.
    pub fn lift_tuple(&self, t: &[GroupElement]) -> Result<Tuple> {
        let model = self.model();
        let mut acc = self.loc.conjugator(&model.product(t))?;
        Ok(t.iter()
            .map(|g| {
                acc = model.mul(&acc, g);
                acc.clone()
            })
            .collect())
    }

    pub fn lift(&self, c: &GroupChain) -> Result<GroupChain> {
        expect_kind(c, ChainKind::Hochschild)?;
        c.map_linear(ChainKind::E, c.degree(), |t| {
            Ok(Chain::generator(ChainKind::E, self.lift_tuple(t)?))
        })
    }

    /// `D̄ = θ_h ∘ D ∘ lift`, a homotopy on `C_•(ℂG)_x`.
    pub fn d_bar(&self, c: &GroupChain) -> Result<GroupChain> {
        self.theta(&self.d(&self.lift(c)?)?)
    }

    /// Coinvariant representative: translate by `p_h(g₀)⁻¹`.
    pub fn coinvariant_rep(&self, t: &[GroupElement]) -> Result<Tuple> {
        let model = self.model();
        let shift = model.inv(&self.section().project(&t[0])?);
        Ok(translate(model, &shift, t))
    }

    /// `(id − i p)(c) − (D∂ + ∂D)(c)` on `E_n`; zero when the homotopy holds.
    pub fn homotopy_defect(&self, c: &GroupChain) -> Result<GroupChain> {
        let mut out = c.clone();
        out.add_assign_unchecked(&self.i_e(&self.p_e(c)?)?, &q(-1));
        out.add_assign_unchecked(&boundary_e(&self.d(c)?)?, &q(-1));
        if c.degree() > 0 {
            out.add_assign_unchecked(&self.d(&boundary_e(c)?)?, &q(-1));
        }
        Ok(out.retag(ChainKind::E))
    }

    /// `(id − ι π)(c) − (b D̄ + D̄ b)(c)` on `C_n(ℂG)_x`.
    pub fn pushed_homotopy_defect(&self, c: &GroupChain) -> Result<GroupChain> {
        let model = self.model();
        let mut out = c.clone();
        out.add_assign_unchecked(&self.loc.iota_h(&self.loc.pi_h(c)?)?, &q(-1));
        out.add_assign_unchecked(&hochschild_boundary(model, &self.d_bar(c)?)?, &q(-1));
        if c.degree() > 0 {
            out.add_assign_unchecked(&self.d_bar(&hochschild_boundary(model, c)?)?, &q(-1));
        }
        Ok(out)
    }
}
