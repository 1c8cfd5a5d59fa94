//! Maps between parabolic modules, ideal modules and the Hecke algebra.

use crate::coxeter::{DkSplit, GenSet};
use crate::error::{Error, Result};
use crate::lincomb::{HeckeElt, IModElt, LinComb, PModElt};
use crate::module::{duality, HeckeModule};
use crate::parabolic::{ParabolicModule, Variant};
use crate::laurent::Scalar;

use super::IdealModule;

/// `λ_J : M^K → M(E_J)` (or `λ̃_J : M̃^K → M̃(E_J)`, following `target`).
///
/// `m_α ↦ q_x Γ_y` resp. `ε_x Γ̃_y` along `α = x · y_max`; on `D_K²` the
/// image is `q_α Γ_e` resp. `ε_α Γ̃_e`.
pub fn lambda_j(split: &DkSplit, target: &IdealModule<'_>, v: &PModElt) -> Result<IModElt> {
    let alg = target.algebra();
    let sys = alg.system();
    v.try_expand(|alpha| {
        let row = split
            .get(alpha)
            .ok_or_else(|| Error::NotACosetRep { elem: sys.format(alpha), subset: sys.format_set(split.k) })?;
        let (x, y) = match row.y_max {
            Some(y) => (row.x, y),
            None => (alpha, crate::coxeter::Elem::IDENTITY),
        };
        let c = match target.variant() {
            Variant::MinusOne => alg.q_of(x),
            Variant::Qs => Scalar::int(alg.eps(x)),
        };
        Ok(LinComb::term(y, c))
    })
}

/// `λ_K : M^J → M^K`, `m_σ ↦ ε_z m_α` (or `λ̃_K`, `m̃_σ ↦ q_z m̃_α`) along
/// `σ = α · z` with `z ∈ W_{K∖J}`.
pub fn lambda_k(source_j: GenSet, target: &ParabolicModule<'_>, v: &PModElt) -> Result<PModElt> {
    let alg = target.algebra();
    let sys = alg.system();
    v.try_expand(|sigma| {
        let (alpha, z) = sys.factorize_via_k(sigma, source_j, target.j())?;
        let c = match target.variant() {
            Variant::MinusOne => Scalar::int(alg.eps(z)),
            Variant::Qs => alg.q_of(z),
        };
        Ok(LinComb::term(alpha, c))
    })
}

/// `ν : 𝓗 → M(E_J)`, `T_w ↦ ε_z ε_{w_J} q_x Γ_y` along `w = x · y · z · w_J`.
pub fn nu(split: &DkSplit, target: &IdealModule<'_>, h: &HeckeElt) -> Result<IModElt> {
    let alg = target.algebra();
    let sys = alg.system();
    h.try_expand(|w| {
        let (alpha, z, w_j) = sys.factorize_full(w, split.j, split.k)?;
        let image = lambda_j(split, target, &LinComb::basis(alpha))?;
        Ok(image.scale(&Scalar::int(alg.eps(z) * alg.eps(w_j))))
    })
}

/// `δ : M(E_J) → M̃(E_J)`, `Γ_y ↦ ε_y q_y bar(Γ̃_y)`.
pub fn delta(tilde: &IdealModule<'_>, v: &IModElt) -> Result<IModElt> {
    if tilde.variant() != Variant::Qs {
        return Err(Error::BadParams("δ targets the q_s flavour".into()));
    }
    duality(tilde, v)
}

/// `ρ : M̃(E_J) → M(E_J)`, `Γ̃_y ↦ ε_y q_y bar(Γ_y)`.
pub fn rho(minus: &IdealModule<'_>, v: &IModElt) -> Result<IModElt> {
    if minus.variant() != Variant::MinusOne {
        return Err(Error::BadParams("ρ targets the -1 flavour".into()));
    }
    duality(minus, v)
}
