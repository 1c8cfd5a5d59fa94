//! Left `𝓗`-modules with a basis indexed by group elements, and the checks
//! shared by all of them.

use std::sync::OnceLock;

use crate::coxeter::{Elem, Gen};
use crate::error::Result;
use crate::hecke::HeckeAlgebra;
use crate::laurent::Scalar;
use crate::lincomb::{HeckeElt, LinComb};

/// Per-basis-element memo of `bar(b_y)`.
#[derive(Debug)]
pub struct BarCache(Vec<OnceLock<LinComb>>);

impl BarCache {
    pub fn new(order: usize) -> Self {
        BarCache((0..order).map(|_| OnceLock::new()).collect())
    }
}

/// A module whose basis `{b_y}` is a subset of `W` containing `e`, with the
/// action given generator by generator.
pub trait HeckeModule {
    fn algebra(&self) -> &HeckeAlgebra<'_>;

    /// Basis labels in enumeration order.
    fn basis(&self) -> &[Elem];

    /// `T_s · b_y`.
    fn gen_act_basis(&self, s: Gen, y: Elem) -> Result<LinComb>;

    fn bar_cache(&self) -> &BarCache;

    fn in_basis(&self, y: Elem) -> bool {
        self.basis().binary_search(&y).is_ok()
    }

    fn gen_act(&self, s: Gen, v: &LinComb) -> Result<LinComb> {
        v.try_expand(|y| self.gen_act_basis(s, y))
    }

    /// `T_s^{-1} · v = q_s^{-1} T_s v + (q_s^{-1} - 1) v`.
    fn bar_gen_act(&self, s: Gen, v: &LinComb) -> Result<LinComb> {
        let alg = self.algebra();
        let mut out = self.gen_act(s, v)?.scale(alg.q_s_inv(s));
        out.add_scaled(v, &(alg.q_s_inv(s) - &Scalar::one()));
        Ok(out)
    }

    /// `T_w · v`.
    fn act_t(&self, w: Elem, v: &LinComb) -> Result<LinComb> {
        let word = self.algebra().system().word(w).to_vec();
        word.iter().rev().try_fold(v.clone(), |acc, &s| self.gen_act(s, &acc))
    }

    fn act(&self, h: &HeckeElt, v: &LinComb) -> Result<LinComb> {
        h.try_expand(|w| self.act_t(w, v))
    }

    /// `bar(b_y) = bar(T_y) · b_e`.
    fn bar_basis(&self, y: Elem) -> Result<LinComb> {
        let slot = &self.bar_cache().0[y.index()];
        if let Some(v) = slot.get() {
            return Ok(v.clone());
        }
        let word = self.algebra().system().word(y).to_vec();
        let v = word
            .iter()
            .rev()
            .try_fold(LinComb::basis(Elem::IDENTITY), |acc, &s| self.bar_gen_act(s, &acc))?;
        Ok(slot.get_or_init(|| v).clone())
    }

    /// The semilinear involution determined by `bar(b_e) = b_e`.
    fn involution(&self, v: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (y, c) in v.iter() {
            out.add_scaled(&self.bar_basis(y)?, &c.bar());
        }
        Ok(out)
    }

    fn fmt_elt(&self, v: &LinComb) -> String {
        let alg = self.algebra();
        v.display(alg.system(), alg.gamma_rank(), "b").to_string()
    }
}

/// `Σ c_b b ↦ Σ Φ(c_b) ε_b q_b bar(b')`, with `b'` the same label in `target`.
///
/// This single template gives the four dualities between the `u = -1` and
/// `u = q_s` flavours of the parabolic and ideal modules.
pub fn duality<T: HeckeModule + ?Sized>(target: &T, v: &LinComb) -> Result<LinComb> {
    let alg = target.algebra();
    alg.weights().phi_compatible()?;
    let mut out = LinComb::zero();
    for (y, c) in v.iter() {
        let img = target.bar_basis(y)?.scale(&alg.q_of(y).scale_int(alg.eps(y)));
        out.add_scaled(&img, &c.phi());
    }
    Ok(out)
}

/// Failing instances of `(T_s - q_s)(T_s + 1) b = 0`.
pub fn check_quadratic<M: HeckeModule + ?Sized>(m: &M) -> Result<Vec<String>> {
    let alg = m.algebra();
    let sys = alg.system();
    let mut bad = Vec::new();
    for s in 0..sys.rank() {
        for &y in m.basis() {
            let b = LinComb::basis(y);
            let tb = m.gen_act(s, &b)?;
            let mut lhs = m.gen_act(s, &tb)?;
            lhs.add_scaled(&tb, &(&Scalar::one() - alg.q_s(s)));
            lhs.add_scaled(&b, &-alg.q_s(s));
            if !lhs.is_zero() {
                bad.push(format!("quadratic relation for {} on b[{}]", sys.name(s), sys.format(y)));
            }
        }
    }
    Ok(bad)
}

/// Failing instances of the braid relations on basis elements.
pub fn check_braid<M: HeckeModule + ?Sized>(m: &M) -> Result<Vec<String>> {
    let alg = m.algebra();
    let sys = alg.system();
    let mut bad = Vec::new();
    for s in 0..sys.rank() {
        for t in s + 1..sys.rank() {
            let Some(k) = sys.matrix().get(s, t) else { continue };
            for &y in m.basis() {
                let (mut a, mut b) = (LinComb::basis(y), LinComb::basis(y));
                for i in 0..k {
                    let (g, h) = if i % 2 == 0 { (s, t) } else { (t, s) };
                    a = m.gen_act(g, &a)?;
                    b = m.gen_act(h, &b)?;
                }
                if a != b {
                    bad.push(format!("braid relation ({},{}) on b[{}]", sys.name(s), sys.name(t), sys.format(y)));
                }
            }
        }
    }
    Ok(bad)
}

/// Failing instances of `bar(bar(b)) = b` and `bar(T_s b) = T_s^{-1} bar(b)`.
pub fn check_bar<M: HeckeModule + ?Sized>(m: &M) -> Result<Vec<String>> {
    let sys = m.algebra().system();
    let mut bad = Vec::new();
    for &y in m.basis() {
        let b = LinComb::basis(y);
        let bb = m.bar_basis(y)?;
        if m.involution(&bb)? != b {
            bad.push(format!("bar is not an involution on b[{}]", sys.format(y)));
        }
        for s in 0..sys.rank() {
            let lhs = m.involution(&m.gen_act_basis(s, y)?)?;
            let rhs = m.bar_gen_act(s, &bb)?;
            if lhs != rhs {
                bad.push(format!("bar(T_{} b[{}]) differs from bar(T_{}) bar(b[{}])", sys.name(s), sys.format(y), sys.name(s), sys.format(y)));
            }
        }
    }
    Ok(bad)
}

/// Quadratic, braid and bar checks together.
pub fn check_module<M: HeckeModule + ?Sized>(m: &M) -> Result<Vec<String>> {
    let mut bad = check_quadratic(m)?;
    bad.extend(check_braid(m)?);
    if bad.is_empty() {
        bad.extend(check_bar(m)?);
    }
    Ok(bad)
}
