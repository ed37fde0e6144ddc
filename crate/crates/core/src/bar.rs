//! Bar complexes `C′_•(G)` and `C_•(G)` and the maps connecting them to the
//! Hochschild complex of a centralizer.

use serde::Serialize;

use crate::chain::{q, Chain, ChainKind, GroupChain, Tuple};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::hochschild::{all_index_tuples, HochschildComplex, Localization};
use crate::linalg::{complex_ranks, RankReport};
use crate::metric::{conjugacy_class, finite_classes};

fn expect_kind(c: &GroupChain, kind: ChainKind) -> Result<()> {
    if c.kind() != kind {
        return Err(Error::KindMismatch {
            expected: kind.to_string(),
            found: c.kind().to_string(),
        });
    }
    Ok(())
}

/// Signed faces of `∂` on a `C′_n` tuple.
pub fn cprime_faces(model: &GroupModel, t: &[GroupElement]) -> Vec<(Tuple, i64)> {
    let n = t.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push((t[1..].to_vec(), 1));
    for k in 1..n {
        let mut face = t[..k - 1].to_vec();
        face.push(model.mul(&t[k - 1], &t[k]));
        face.extend_from_slice(&t[k + 1..]);
        out.push((face, if k % 2 == 0 { 1 } else { -1 }));
    }
    out.push((t[..n - 1].to_vec(), if n.is_multiple_of(2) { 1 } else { -1 }));
    out
}

pub fn boundary_cprime(model: &GroupModel, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::BarPrime)?;
    let n = c.degree();
    if n == 0 {
        return Ok(Chain::zero(ChainKind::BarPrime, 0));
    }
    c.map_linear(ChainKind::BarPrime, n - 1, |t| {
        let mut out = Chain::zero(ChainKind::BarPrime, n - 1);
        for (face, s) in cprime_faces(model, t) {
            out.add_term(face, q(s));
        }
        Ok(out)
    })
}

/// Left-translates a tuple so that its first entry is the identity.
pub fn normalize_orbit(model: &GroupModel, t: &[GroupElement]) -> Tuple {
    let shift = model.inv(&t[0]);
    t.iter().map(|g| model.mul(&shift, g)).collect()
}

/// Alternating face sum `Σ (−1)^k (t₀, …, t̂_k, …, t_n)`.
pub(crate) fn simplicial_faces(t: &[GroupElement]) -> Vec<(Tuple, i64)> {
    (0..t.len())
        .map(|k| {
            let mut face = t.to_vec();
            face.remove(k);
            (face, if k % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Boundary on equivariant chains stored by leading-identity representatives.
pub fn boundary_cbar(model: &GroupModel, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::BarEquivariant)?;
    let n = c.degree();
    if n == 0 {
        return Ok(Chain::zero(ChainKind::BarEquivariant, 0));
    }
    c.map_linear(ChainKind::BarEquivariant, n - 1, |t| {
        let mut out = Chain::zero(ChainKind::BarEquivariant, n - 1);
        for (face, s) in simplicial_faces(t) {
            out.add_term(normalize_orbit(model, &face), q(s));
        }
        Ok(out)
    })
}

/// Normalizes every term of an equivariant chain to its leading-identity representative.
pub fn normalize_equivariant(model: &GroupModel, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::BarEquivariant)?;
    c.map_linear(ChainKind::BarEquivariant, c.degree(), |t| {
        Ok(Chain::generator(ChainKind::BarEquivariant, normalize_orbit(model, t)))
    })
}

pub fn psi_tuple(model: &GroupModel, t: &[GroupElement]) -> Tuple {
    let mut acc = model.identity();
    let mut out = Vec::with_capacity(t.len() + 1);
    out.push(acc.clone());
    for g in t {
        acc = model.mul(&acc, g);
        out.push(acc.clone());
    }
    out
}

/// Inverse of [`psi_tuple`] on an arbitrary orbit member.
pub fn psi_inv_tuple(model: &GroupModel, t: &[GroupElement]) -> Tuple {
    t.windows(2).map(|w| model.mul(&model.inv(&w[0]), &w[1])).collect()
}

/// `ψ(g₁, …, g_n) = (1, g₁, g₁g₂, …, g₁⋯g_n)`.
pub fn psi(model: &GroupModel, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::BarPrime)?;
    c.map_linear(ChainKind::BarEquivariant, c.degree(), |t| {
        Ok(Chain::generator(ChainKind::BarEquivariant, psi_tuple(model, t)))
    })
}

pub fn psi_inv(model: &GroupModel, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::BarEquivariant)?;
    c.map_linear(ChainKind::BarPrime, c.degree(), |t| {
        Ok(Chain::generator(ChainKind::BarPrime, psi_inv_tuple(model, t)))
    })
}

fn check_centralizes(model: &GroupModel, g: &GroupElement, t: &[GroupElement]) -> Result<()> {
    match t.iter().find(|x| !model.commute(x, g)) {
        Some(x) => Err(Error::OutsideCentralizer(model.format_element(x))),
        None => Ok(()),
    }
}

/// `φ_g(g₁, …, g_n) = ((g₁⋯g_n)⁻¹ g, g₁, …, g_n)` from `C′_n(Z_g)`.
pub fn phi_g(model: &GroupModel, g: &GroupElement, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::BarPrime)?;
    c.map_linear(ChainKind::Hochschild, c.degree(), |t| {
        check_centralizes(model, g, t)?;
        let mut out = Vec::with_capacity(t.len() + 1);
        out.push(model.mul(&model.inv(&model.product(t)), g));
        out.extend_from_slice(t);
        Ok(Chain::generator(ChainKind::Hochschild, out))
    })
}

/// Drops the first entry.
pub fn phi_g_inv(model: &GroupModel, g: &GroupElement, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::Hochschild)?;
    c.map_linear(ChainKind::BarPrime, c.degree(), |t| {
        check_centralizes(model, g, t)?;
        Ok(Chain::generator(ChainKind::BarPrime, t[1..].to_vec()))
    })
}

/// The orbit of `(p_h(r g₀), p_h(r g₀ g₁), …, p_h(r g₀ ⋯ g_n))` as an
/// equivariant chain over `Z_h`.
pub fn localize_to_equivariant(loc: &Localization, c: &GroupChain) -> Result<GroupChain> {
    expect_kind(c, ChainKind::Hochschild)?;
    let model = loc.model();
    c.map_linear(ChainKind::BarEquivariant, c.degree(), |t| {
        let r = loc.conjugator(&model.product(t))?;
        let p = loc.projected_prefixes(t, &r)?;
        Ok(Chain::generator(ChainKind::BarEquivariant, normalize_orbit(model, &p)))
    })
}

/// `ψ ∘ φ_h⁻¹ ∘ π_h`, the three-step version of [`localize_to_equivariant`].
pub fn localize_by_composition(loc: &Localization, c: &GroupChain) -> Result<GroupChain> {
    let model = loc.model();
    psi(model, &phi_g_inv(model, loc.h(), &loc.pi_h(c)?)?)
}

/// Homology ranks of `C′_•(Z_h)` for a finite model, in degrees `0..=up_to`.
pub fn centralizer_bar_ranks(
    model: &GroupModel,
    h: &GroupElement,
    up_to: usize,
) -> Result<Vec<RankReport>> {
    let fd = model.finite_data().ok_or_else(|| {
        Error::Unsupported(format!("bar complex ranks need a finite model, got {model}"))
    })?;
    let hi = fd.index[h];
    let members: Vec<u32> = (0..fd.order())
        .filter(|&i| fd.mul_idx(i, hi) == fd.mul_idx(hi, i))
        .map(|i| i as u32)
        .collect();
    let bases: Vec<Vec<Vec<u32>>> = (0..=up_to + 1)
        .map(|n| {
            all_index_tuples(members.len(), n)
                .into_iter()
                .map(|t| t.into_iter().map(|j| members[j as usize]).collect())
                .collect()
        })
        .collect();
    Ok(complex_ranks(&bases, |t: &Vec<u32>| {
        let n = t.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push((t[1..].to_vec(), q(1)));
        for k in 1..n {
            let mut face = t[..k - 1].to_vec();
            face.push(fd.mul_idx(t[k - 1] as usize, t[k] as usize) as u32);
            face.extend_from_slice(&t[k + 1..]);
            out.push((face, q(if k % 2 == 0 { 1 } else { -1 })));
        }
        out.push((t[..n - 1].to_vec(), q(if n.is_multiple_of(2) { 1 } else { -1 })));
        out
    }))
}

/// One degree of the per-class comparison `H_n(Z_h; ℚ)` against `HH_n(ℚG)_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRow {
    pub class_rep: String,
    pub degree: usize,
    pub centralizer_order: usize,
    pub group_homology_rank: usize,
    pub hochschild_rank: usize,
    pub agree: bool,
}

/// Compares both sides for every class of a finite model.
pub fn burghelea_factor_table(model: &GroupModel, up_to: usize) -> Result<Vec<FactorRow>> {
    let classes = finite_classes(model).ok_or_else(|| {
        Error::Unsupported(format!("class enumeration needs a finite model, got {model}"))
    })?;
    let mut rows = Vec::new();
    for x in classes {
        let h = &x.rep;
        let bar = centralizer_bar_ranks(model, h, up_to)?;
        let hh = HochschildComplex::new(model, Some(conjugacy_class(model, h))).homology_ranks(up_to)?;
        let z_order = bar.get(1).map_or(0, |r| r.dim_chain_space);
        for (a, b) in bar.iter().zip(&hh) {
            rows.push(FactorRow {
                class_rep: model.format_element(h),
                degree: a.degree,
                centralizer_order: z_order,
                group_homology_rank: a.betti,
                hochschild_rank: b.betti,
                agree: a.betti == b.betti,
            });
        }
    }
    Ok(rows)
}
