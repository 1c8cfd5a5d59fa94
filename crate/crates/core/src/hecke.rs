//! The weighted Iwahori–Hecke algebra in the standard basis `{T_w}`.

use crate::coxeter::{CoxeterSystem, Elem, Gen};
use crate::error::Result;
use crate::laurent::{Exponent, Scalar, WeightFunction};
use crate::lincomb::{HeckeElt, LinComb};
use crate::module::{BarCache, HeckeModule};

/// `𝓗(W, S, L)` over `ℤ[Γ]`. It is also its own left regular module.
#[derive(Debug)]
pub struct HeckeAlgebra<'a> {
    sys: &'a CoxeterSystem,
    weights: WeightFunction,
    q: Vec<Scalar>,
    q_inv: Vec<Scalar>,
    basis: Vec<Elem>,
    bar_cache: BarCache,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(sys: &'a CoxeterSystem, weights: WeightFunction) -> Result<Self> {
        weights.validate(sys.matrix())?;
        let q = (0..sys.rank()).map(|s| weights.q_s(s)).collect();
        let q_inv = (0..sys.rank()).map(|s| Scalar::monomial(-weights.value(s), 1)).collect();
        Ok(HeckeAlgebra {
            sys,
            weights,
            q,
            q_inv,
            basis: sys.elements().collect(),
            bar_cache: BarCache::new(sys.order()),
        })
    }

    pub fn equal_parameters(sys: &'a CoxeterSystem) -> Self {
        Self::new(sys, WeightFunction::equal(sys.rank())).expect("equal parameters are always valid")
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    /// Rank of `Γ`, used when printing scalars.
    pub fn gamma_rank(&self) -> usize {
        self.weights.rank()
    }

    pub fn q_s(&self, s: Gen) -> &Scalar {
        &self.q[s]
    }

    pub fn q_s_inv(&self, s: Gen) -> &Scalar {
        &self.q_inv[s]
    }

    pub fn weight_of(&self, w: Elem) -> Exponent {
        self.sys.word(w).iter().fold(Exponent::ZERO, |acc, &s| acc + self.weights.value(s))
    }

    /// `q_w = q^{L(w)}`.
    pub fn q_of(&self, w: Elem) -> Scalar {
        Scalar::monomial(self.weight_of(w), 1)
    }

    pub fn q_of_inv(&self, w: Elem) -> Scalar {
        Scalar::monomial(-self.weight_of(w), 1)
    }

    /// `ε_w = (-1)^{ℓ(w)}`.
    pub fn eps(&self, w: Elem) -> i64 {
        if self.sys.length(w) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn t(&self, w: Elem) -> HeckeElt {
        LinComb::basis(w)
    }

    pub fn gen_left_mul(&self, s: Gen, h: &HeckeElt) -> HeckeElt {
        self.gen_act(s, h).expect("regular action is total")
    }

    pub fn gen_right_mul(&self, h: &HeckeElt, s: Gen) -> HeckeElt {
        h.expand(|w| {
            let ws = self.sys.rmul(w, s);
            if self.sys.length(ws) > self.sys.length(w) {
                LinComb::basis(ws)
            } else {
                let mut out = LinComb::term(ws, self.q[s].clone());
                out.add_term(w, &(&self.q[s] - &Scalar::one()));
                out
            }
        })
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        self.act(a, b).expect("regular action is total")
    }

    /// `T_w^{-1} = T_{s_k}^{-1} ⋯ T_{s_1}^{-1}` for `w = s_1 ⋯ s_k`.
    pub fn t_inverse(&self, w: Elem) -> HeckeElt {
        self.sys.word(w).iter().fold(LinComb::basis(Elem::IDENTITY), |acc, &s| {
            self.bar_gen_act(s, &acc).expect("regular action is total")
        })
    }

    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        self.involution(h).expect("regular action is total")
    }

    /// `Φ`, the semilinear algebra map with `Φ(T_w) = ε_w q_w bar(T_w)`.
    pub fn phi(&self, h: &HeckeElt) -> Result<HeckeElt> {
        self.weights.phi_compatible()?;
        let mut out = LinComb::zero();
        for (w, c) in h.iter() {
            let img = self.bar_basis(w)?.scale(&self.q_of(w).scale_int(self.eps(w)));
            out.add_scaled(&img, &c.phi());
        }
        Ok(out)
    }
}

impl HeckeModule for HeckeAlgebra<'_> {
    fn algebra(&self) -> &HeckeAlgebra<'_> {
        self
    }

    fn basis(&self) -> &[Elem] {
        &self.basis
    }

    fn gen_act_basis(&self, s: Gen, w: Elem) -> Result<LinComb> {
        let sw = self.sys.lmul(s, w);
        Ok(if self.sys.length(sw) > self.sys.length(w) {
            LinComb::basis(sw)
        } else {
            let mut out = LinComb::term(sw, self.q[s].clone());
            out.add_term(w, &(&self.q[s] - &Scalar::one()));
            out
        })
    }

    fn bar_cache(&self) -> &BarCache {
        &self.bar_cache
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use crate::module::check_module;

    fn q(k: i32) -> Scalar {
        Scalar::q_pow(k)
    }

    #[test]
    fn generator_rules() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(1)).unwrap();
        let h = HeckeAlgebra::equal_parameters(&sys);
        let (e, s) = (Elem::IDENTITY, sys.generator(0));
        let mut expected = LinComb::term(e, q(1));
        expected.add_term(s, &(q(1) - Scalar::one()));
        assert_eq!(h.mul(&h.t(s), &h.t(s)), expected);
        assert_eq!(h.mul(&h.t(s), &h.t(e)), h.t(s));

        let mut inv = LinComb::term(s, q(-1));
        inv.add_term(e, &(q(-1) - Scalar::one()));
        assert_eq!(h.t_inverse(s), inv);
        assert_eq!(h.bar(&h.t(s)), inv);
        assert_eq!(h.t_inverse(e), h.t(e));

        let mut phi = LinComb::term(s, Scalar::int(-1));
        phi.add_term(e, &(q(1) - Scalar::one()));
        assert_eq!(h.phi(&h.t(s)).unwrap(), phi);
        assert_eq!(h.phi(&h.t(e)).unwrap(), h.t(e));
    }

    #[test]
    fn inverse_and_involutions_a3() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(3)).unwrap();
        let h = HeckeAlgebra::equal_parameters(&sys);
        for w in sys.elements() {
            let tw = h.t(w);
            let inv = h.t_inverse(w);
            assert_eq!(h.mul(&inv, &tw), h.t(Elem::IDENTITY));
            assert_eq!(h.mul(&tw, &inv), h.t(Elem::IDENTITY));
            assert_eq!(h.bar(&h.bar(&tw)), tw);
            let phi = h.phi(&tw).unwrap();
            assert_eq!(h.phi(&phi).unwrap(), tw);
            assert_eq!(h.phi(&h.bar(&tw)).unwrap(), h.bar(&phi));
        }
        assert!(check_module(&h).unwrap().is_empty());
    }

    #[test]
    fn associativity_a2() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap();
        let h = HeckeAlgebra::equal_parameters(&sys);
        for a in sys.elements() {
            for b in sys.elements() {
                let ab = h.mul(&h.t(a), &h.t(b));
                for c in sys.elements() {
                    let bc = h.mul(&h.t(b), &h.t(c));
                    assert_eq!(h.mul(&ab, &h.t(c)), h.mul(&h.t(a), &bc));
                }
                assert_eq!(h.bar(&ab), h.mul(&h.bar(&h.t(a)), &h.bar(&h.t(b))));
                let pa = h.phi(&h.t(a)).unwrap();
                let pb = h.phi(&h.t(b)).unwrap();
                assert_eq!(h.phi(&ab).unwrap(), h.mul(&pa, &pb));
            }
        }
    }

    #[test]
    fn right_multiplication_matches_mul() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_b(3)).unwrap();
        let w = WeightFunction::from_units(2, &[vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap();
        let h = HeckeAlgebra::new(&sys, w).unwrap();
        for x in sys.elements().step_by(5) {
            for s in 0..3 {
                assert_eq!(h.gen_right_mul(&h.t(x), s), h.mul(&h.t(x), &h.t(sys.generator(s))));
            }
        }
        assert!(check_module(&h).unwrap().is_empty());
    }

    #[test]
    fn zero_weight_generator_squares_to_one() {
        let sys = CoxeterSystem::build(CoxeterMatrix::dihedral(4)).unwrap();
        let w = WeightFunction::from_units(1, &[vec![0], vec![1]]).unwrap();
        let h = HeckeAlgebra::new(&sys, w).unwrap();
        let s = h.t(sys.generator(0));
        assert_eq!(h.mul(&s, &s), h.t(Elem::IDENTITY));
        assert!(h.phi(&s).is_err());
        assert!(check_module(&h).unwrap().is_empty());
    }
}
