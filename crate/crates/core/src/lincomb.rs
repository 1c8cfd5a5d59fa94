//! Sparse linear combinations of basis elements indexed by group elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::coxeter::{CoxeterSystem, Elem};
use crate::laurent::Scalar;

/// A finite `ℤ[Γ]`-combination `Σ c_w b_w`, without zero coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Elem, Scalar>,
}

pub type HeckeElt = LinComb;
pub type PModElt = LinComb;
pub type IModElt = LinComb;

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn basis(w: Elem) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: Elem, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Elem) -> Scalar {
        self.terms.get(&w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Elem, &Scalar)> + '_ {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, w: Elem, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in other.iter() {
            self.add_term(w, &(c * d));
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in self.iter() {
            out.add_term(w, &f(c));
        }
        out
    }

    /// `Σ c_w f(w)`.
    pub fn expand(&self, mut f: impl FnMut(Elem) -> LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in self.iter() {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Same as [`expand`](Self::expand) for fallible images.
    pub fn try_expand<E>(&self, mut f: impl FnMut(Elem) -> Result<LinComb, E>) -> Result<LinComb, E> {
        let mut out = LinComb::zero();
        for (w, c) in self.iter() {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, sys: &'a CoxeterSystem, rank: usize, symbol: &'a str) -> LinCombDisplay<'a> {
        LinCombDisplay { comb: self, sys, rank, symbol }
    }
}

impl std::ops::Add<&LinComb> for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&LinComb> for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::int(-1));
        out
    }
}

impl std::ops::Neg for &LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scale(&Scalar::int(-1))
    }
}

impl FromIterator<(Elem, Scalar)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (Elem, Scalar)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (w, c) in iter {
            out.add_term(w, &c);
        }
        out
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w.index(), c))).finish()
    }
}

pub struct LinCombDisplay<'a> {
    comb: &'a LinComb,
    sys: &'a CoxeterSystem,
    rank: usize,
    symbol: &'a str,
}

impl fmt::Display for LinCombDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comb.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.comb.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}){}[{}]", c.display(self.rank), self.symbol, self.sys.format(w))?;
        }
        Ok(())
    }
}
