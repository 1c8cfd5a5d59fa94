//! Parabolic modules `M^{J,u}` on the minimal coset representatives `D_J`,
//! in the two specializations `u = -1` and `u = q_s`.

use crate::coxeter::{CoxeterSystem, Elem, Gen, GenSet, ParabolicCase};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::laurent::Scalar;
use crate::lincomb::{HeckeElt, LinComb, PModElt};
use crate::module::{duality, BarCache, HeckeModule};

/// Eigenvalue of `T_s` on `m_σ` when `sσ ∉ D_J`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `u_s = -1`: the module `M^J`.
    MinusOne,
    /// `u_s = q_s`: the module `M̃^J`.
    Qs,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::MinusOne => "minus-one",
            Variant::Qs => "qs",
        }
    }

    pub fn dual(self) -> Variant {
        match self {
            Variant::MinusOne => Variant::Qs,
            Variant::Qs => Variant::MinusOne,
        }
    }

    /// `u_s` for the given `q_s`.
    pub fn u(self, q_s: &Scalar) -> Scalar {
        match self {
            Variant::MinusOne => Scalar::int(-1),
            Variant::Qs => q_s.clone(),
        }
    }
}

#[derive(Debug)]
pub struct ParabolicModule<'a> {
    alg: &'a HeckeAlgebra<'a>,
    j: GenSet,
    variant: Variant,
    basis: Vec<Elem>,
    bar_cache: BarCache,
}

impl<'a> ParabolicModule<'a> {
    pub fn new(alg: &'a HeckeAlgebra<'a>, j: GenSet, variant: Variant) -> Self {
        let sys = alg.system();
        ParabolicModule { alg, j, variant, basis: sys.min_coset_reps(j), bar_cache: BarCache::new(sys.order()) }
    }

    pub fn j(&self) -> GenSet {
        self.j
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.alg.system()
    }

    /// `φ_J(T_w) = ε_{w_J} m_σ` (`u = -1`) or `φ̃_J(T_w) = q_{w_J} m̃_σ` (`u = q_s`).
    pub fn varphi(&self, h: &HeckeElt) -> PModElt {
        h.expand(|w| {
            let (sigma, w_j) = self.system().coset_factorize(w, self.j);
            let c = match self.variant {
                Variant::MinusOne => Scalar::int(self.alg.eps(w_j)),
                Variant::Qs => self.alg.q_of(w_j),
            };
            LinComb::term(sigma, c)
        })
    }
}

impl HeckeModule for ParabolicModule<'_> {
    fn algebra(&self) -> &HeckeAlgebra<'_> {
        self.alg
    }

    fn basis(&self) -> &[Elem] {
        &self.basis
    }

    fn gen_act_basis(&self, s: Gen, sigma: Elem) -> Result<LinComb> {
        let sys = self.system();
        let q = self.alg.q_s(s);
        Ok(match sys.parabolic_case(s, sigma, self.j) {
            ParabolicCase::Minus => {
                let mut out = LinComb::term(sys.lmul(s, sigma), q.clone());
                out.add_term(sigma, &(q - &Scalar::one()));
                out
            }
            ParabolicCase::Plus => LinComb::basis(sys.lmul(s, sigma)),
            ParabolicCase::Zero => LinComb::term(sigma, self.variant.u(q)),
        })
    }

    fn bar_cache(&self) -> &BarCache {
        &self.bar_cache
    }
}

fn check_pair(source: &ParabolicModule<'_>, target: &ParabolicModule<'_>) -> Result<()> {
    if source.j != target.j || source.variant == target.variant {
        return Err(Error::BadParams("duality needs the two variants over the same J".into()));
    }
    Ok(())
}

/// `θ_J : M^J → M̃^J`, `m_σ ↦ ε_σ q_σ bar(m̃_σ)`, semilinear over `Φ`.
pub fn theta(minus: &ParabolicModule<'_>, tilde: &ParabolicModule<'_>, v: &PModElt) -> Result<PModElt> {
    check_pair(minus, tilde)?;
    duality(tilde, v)
}

/// `η_J : M̃^J → M^J`, `m̃_σ ↦ ε_σ q_σ bar(m_σ)`.
pub fn eta(minus: &ParabolicModule<'_>, tilde: &ParabolicModule<'_>, v: &PModElt) -> Result<PModElt> {
    check_pair(minus, tilde)?;
    duality(minus, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use crate::module::check_module;
    use crate::rpoly::{Normalization, RTable};

    fn q(k: i32) -> Scalar {
        Scalar::q_pow(k)
    }

    #[test]
    fn action_examples() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        let m = ParabolicModule::new(&alg, GenSet::singleton(0), Variant::MinusOne);
        let (e, s2) = (Elem::IDENTITY, sys.generator(1));
        assert_eq!(m.gen_act_basis(0, e).unwrap(), LinComb::term(e, Scalar::int(-1)));
        assert_eq!(m.gen_act_basis(1, e).unwrap(), LinComb::basis(s2));
        let mut expect = LinComb::term(e, q(1));
        expect.add_term(s2, &(q(1) - Scalar::one()));
        assert_eq!(m.gen_act_basis(1, s2).unwrap(), expect);

        let mut bar = LinComb::term(s2, q(-1));
        bar.add_term(e, &(q(-1) - Scalar::one()));
        assert_eq!(m.bar_basis(s2).unwrap(), bar);
        assert_eq!(m.bar_basis(e).unwrap(), LinComb::basis(e));
    }

    #[test]
    fn varphi_examples() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        let j = GenSet::singleton(0);
        let m = ParabolicModule::new(&alg, j, Variant::MinusOne);
        let mt = ParabolicModule::new(&alg, j, Variant::Qs);
        let s1 = alg.t(sys.generator(0));
        assert_eq!(m.varphi(&s1), LinComb::term(Elem::IDENTITY, Scalar::int(-1)));
        assert_eq!(mt.varphi(&s1), LinComb::term(Elem::IDENTITY, q(1)));
        assert_eq!(m.varphi(&alg.t(Elem::IDENTITY)), LinComb::basis(Elem::IDENTITY));
    }

    #[test]
    fn theta_examples() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        let j = GenSet::singleton(0);
        let m = ParabolicModule::new(&alg, j, Variant::MinusOne);
        let mt = ParabolicModule::new(&alg, j, Variant::Qs);
        let e = LinComb::basis(Elem::IDENTITY);
        assert_eq!(theta(&m, &mt, &e).unwrap(), e);
        let s2 = sys.generator(1);
        let mut expect = LinComb::term(s2, Scalar::int(-1));
        expect.add_term(Elem::IDENTITY, &(q(1) - Scalar::one()));
        assert_eq!(theta(&m, &mt, &LinComb::basis(s2)).unwrap(), expect);
    }

    #[test]
    fn module_axioms_b3_all_j() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_b(3)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        for j in sys.generators().subsets() {
            for variant in [Variant::MinusOne, Variant::Qs] {
                let m = ParabolicModule::new(&alg, j, variant);
                assert!(check_module(&m).unwrap().is_empty(), "{j:?} {variant:?}");
            }
        }
    }

    #[test]
    fn rpoly_examples() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        let m = ParabolicModule::new(&alg, GenSet::singleton(0), Variant::MinusOne);
        let r = RTable::extract(&m, Normalization::Signed).unwrap();
        assert_eq!(r.get(Elem::IDENTITY, sys.generator(1)), q(1) - Scalar::one());
        assert!(r.check_invariants(&sys).is_empty());

        let a1 = CoxeterSystem::build(CoxeterMatrix::type_a(1)).unwrap();
        let alg1 = HeckeAlgebra::equal_parameters(&a1);
        let classical = RTable::classical(&alg1);
        assert_eq!(classical.get(Elem::IDENTITY, a1.generator(0)), q(1) - Scalar::one());
        let m1 = ParabolicModule::new(&alg1, GenSet::EMPTY, Variant::MinusOne);
        assert!(RTable::extract(&m1, Normalization::Signed).unwrap().diff(&classical, &a1).is_empty());
    }
}
