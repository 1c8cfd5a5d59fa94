//! R-polynomial tables: extraction from a module's bar involution and the
//! classical descent recursion used as an independent oracle.

use std::collections::BTreeMap;

use crate::coxeter::{CoxeterSystem, Elem};
use crate::error::Result;
use crate::hecke::HeckeAlgebra;
use crate::laurent::Scalar;
use crate::module::HeckeModule;

/// How a coefficient of `bar(b_τ)` is turned into `R_{σ,τ}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Normalization {
    /// `coeff = ε_σ ε_τ q_τ^{-1} R_{σ,τ}`
    #[default]
    Signed,
    /// `coeff = q_τ^{-1} R_{σ,τ}`
    Unsigned,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Signed => "signed",
            Normalization::Unsigned => "unsigned",
        }
    }
}

/// Sparse table `(σ, τ) ↦ R_{σ,τ}` over an index set of basis labels.
/// Absent entries, including those with an index outside the set, read as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTable {
    index: Vec<Elem>,
    entries: BTreeMap<(Elem, Elem), Scalar>,
}

impl RTable {
    pub fn get(&self, sigma: Elem, tau: Elem) -> Scalar {
        self.entries.get(&(sigma, tau)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn index(&self) -> &[Elem] {
        &self.index
    }

    pub fn contains_index(&self, w: Elem) -> bool {
        self.index.binary_search(&w).is_ok()
    }

    /// Nonzero entries ordered by `(τ, σ)`.
    pub fn entries(&self) -> impl Iterator<Item = (Elem, Elem, &Scalar)> + '_ {
        let mut rows: Vec<_> = self.entries.iter().map(|(&(s, t), c)| (s, t, c)).collect();
        rows.sort_by_key(|&(s, t, _)| (t, s));
        rows.into_iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads `R_{σ,τ}` off `bar(b_τ)` for every basis label `τ`.
    pub fn extract<M: HeckeModule + ?Sized>(module: &M, norm: Normalization) -> Result<Self> {
        let alg = module.algebra();
        let mut entries = BTreeMap::new();
        for &tau in module.basis() {
            for (sigma, c) in module.bar_basis(tau)?.iter() {
                let mut r = c * &alg.q_of(tau);
                if norm == Normalization::Signed {
                    r = r.scale_int(alg.eps(sigma) * alg.eps(tau));
                }
                entries.insert((sigma, tau), r);
            }
        }
        Ok(RTable { index: module.basis().to_vec(), entries })
    }

    /// Classical `R_{x,w}` by recursion on a left descent of `w`, without any
    /// module arithmetic.
    pub fn classical(alg: &HeckeAlgebra<'_>) -> Self {
        let sys = alg.system();
        let n = sys.order();
        let mut table: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); n]; n];
        table[0][0] = Scalar::one();
        for w in sys.elements().skip(1) {
            let s = sys.word(w)[0];
            let sw = sys.lmul(s, w);
            for x in sys.elements() {
                let sx = sys.lmul(s, x);
                let r = if sys.length(sx) < sys.length(x) {
                    table[sx.index()][sw.index()].clone()
                } else {
                    &(alg.q_s(s) * &table[sx.index()][sw.index()])
                        + &(&(alg.q_s(s) - &Scalar::one()) * &table[x.index()][sw.index()])
                };
                table[x.index()][w.index()] = r;
            }
        }
        let mut entries = BTreeMap::new();
        for x in sys.elements() {
            for w in sys.elements() {
                let r = std::mem::take(&mut table[x.index()][w.index()]);
                if !r.is_zero() {
                    entries.insert((x, w), r);
                }
            }
        }
        RTable { index: sys.elements().collect(), entries }
    }

    /// `R_{τ,τ} = 1` and `R_{σ,τ} = 0` unless `σ ≤ τ` in the Bruhat order.
    pub fn check_invariants(&self, sys: &CoxeterSystem) -> Vec<String> {
        let mut bad = Vec::new();
        for &t in &self.index {
            if !self.get(t, t).is_one() {
                bad.push(format!("R[{0},{0}] = {1}", sys.format(t), self.get(t, t)));
            }
        }
        for (s, t, c) in self.entries() {
            if !sys.bruhat_leq(s, t) {
                bad.push(format!("R[{},{}] = {} although not below in Bruhat order", sys.format(s), sys.format(t), c));
            }
        }
        bad
    }

    /// Entries where two tables disagree.
    pub fn diff(&self, other: &RTable, sys: &CoxeterSystem) -> Vec<String> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .filter(|&&(s, t)| self.get(s, t) != other.get(s, t))
            .map(|&(s, t)| format!("R[{},{}]: {} vs {}", sys.format(s), sys.format(t), self.get(s, t), other.get(s, t)))
            .collect()
    }
}
