//! Ideals of the left weak order and the factorizations built on them.

use std::collections::BTreeSet;

use super::{CoxeterSystem, Elem, GenSet};
use crate::error::{Error, Result};

/// How `s` moves a basis element `y` of an ideal module.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IdealCase {
    /// strong descent: `sy < y`
    SD,
    /// strong ascent: `sy > y`, `sy ∈ E`
    SA,
    /// weak descent: `sy > y`, `sy ∉ D_J`
    WD,
    /// weak ascent: `sy > y`, `sy ∈ D_J ∖ E`
    WA,
}

/// A suffix-closed subset of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealE {
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl IdealE {
    /// All suffixes of the given elements.
    pub fn closure(sys: &CoxeterSystem, gens: &[Elem]) -> Self {
        let mut mask = vec![false; sys.order()];
        let mut stack: Vec<Elem> = gens.to_vec();
        stack.push(Elem::IDENTITY);
        while let Some(w) = stack.pop() {
            if std::mem::replace(&mut mask[w.index()], true) {
                continue;
            }
            for s in sys.descents(w, super::Side::Left).iter() {
                stack.push(sys.lmul(s, w));
            }
        }
        let members: Vec<Elem> = sys.elements().filter(|w| mask[w.index()]).collect();
        let generators = maximal_elements(sys, &members, &mask);
        IdealE { members, mask, generators }
    }

    /// Checks that `members` is suffix-closed before accepting it.
    pub fn from_members(sys: &CoxeterSystem, members: &[Elem]) -> Result<Self> {
        let ideal = Self::closure(sys, members);
        let given: BTreeSet<Elem> = members.iter().copied().collect();
        if ideal.members.len() != given.len() || !ideal.members.iter().all(|w| given.contains(w)) {
            let names: Vec<String> = members.iter().map(|&w| sys.format(w)).collect();
            return Err(Error::NotAnIdeal(format!("{{{}}}", names.join(","))));
        }
        Ok(ideal)
    }

    /// The whole group.
    pub fn full(sys: &CoxeterSystem) -> Self {
        Self::closure(sys, &[sys.longest_element()])
    }

    pub fn contains(&self, w: Elem) -> bool {
        self.mask.get(w.index()).copied().unwrap_or(false)
    }

    /// Members in enumeration order.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// Maximal members under the weak order.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `{s : ℓ(xs) > ℓ(x) for all x ∈ E}`, without the consistency check.
    pub fn pos_raw(&self, sys: &CoxeterSystem) -> GenSet {
        sys.generators()
            .iter()
            .filter(|&s| self.members.iter().all(|&x| !sys.is_right_descent(x, s)))
            .collect()
    }

    /// `Pos(E)`, checked against `S ∖ E`.
    pub fn pos(&self, sys: &CoxeterSystem) -> Result<GenSet> {
        let pos = self.pos_raw(sys);
        let complement: GenSet = sys.generators().iter().filter(|&s| !self.contains(sys.generator(s))).collect();
        if pos != complement {
            return Err(Error::PosMismatch { pos: sys.format_set(pos), complement: sys.format_set(complement) });
        }
        Ok(pos)
    }

    pub fn describe(&self, sys: &CoxeterSystem) -> String {
        let names: Vec<String> = self.members.iter().map(|&w| sys.format(w)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn classify(&self, sys: &CoxeterSystem, s: usize, y: Elem, j: GenSet) -> Result<IdealCase> {
        let pos = self.pos(sys)?;
        if !j.is_subset(pos) {
            return Err(Error::BadReference { j: sys.format_set(j), pos: sys.format_set(pos) });
        }
        if !self.contains(y) {
            return Err(Error::BadParams(format!("{} is not in E", sys.format(y))));
        }
        Ok(self.case_unchecked(sys, s, y, j))
    }

    pub(crate) fn case_unchecked(&self, sys: &CoxeterSystem, s: usize, y: Elem, j: GenSet) -> IdealCase {
        let sy = sys.lmul(s, y);
        if sys.length(sy) < sys.length(y) {
            IdealCase::SD
        } else if self.contains(sy) {
            IdealCase::SA
        } else if !sys.is_min_coset_rep(sy, j) {
            IdealCase::WD
        } else {
            IdealCase::WA
        }
    }

    /// Every ideal of `W`, in order of first appearance over bitmasks. Only
    /// sensible for tiny groups.
    pub fn all(sys: &CoxeterSystem) -> Vec<IdealE> {
        let n = sys.order();
        assert!(n <= 16, "exhaustive ideal enumeration needs |W| <= 16");
        let mut out = Vec::new();
        for bits in 0u32..(1 << (n - 1)) {
            let members: Vec<Elem> = std::iter::once(Elem::IDENTITY)
                .chain((1..n).filter(|i| bits & (1 << (i - 1)) != 0).map(Elem::from_index))
                .collect();
            if let Ok(ideal) = Self::from_members(sys, &members) {
                out.push(ideal);
            }
        }
        out
    }

    pub fn principal(sys: &CoxeterSystem, w: Elem) -> Self {
        Self::closure(sys, &[w])
    }
}

fn maximal_elements(sys: &CoxeterSystem, members: &[Elem], mask: &[bool]) -> Vec<Elem> {
    members
        .iter()
        .copied()
        .filter(|&w| (0..sys.rank()).all(|s| {
            let sw = sys.lmul(s, w);
            sys.length(sw) < sys.length(w) || !mask[sw.index()]
        }))
        .collect()
}

/// One row of the `D_K` split: `α = x · y` with `y` the dominating suffix in `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DkEntry {
    pub alpha: Elem,
    pub x: Elem,
    /// `None` for `α ∈ D_K²` (no suffix in `E`).
    pub y_max: Option<Elem>,
}

/// The partition of `D_K` into `D_K¹`, `D_K²` with the factorization table.
#[derive(Clone, Debug)]
pub struct DkSplit {
    pub j: GenSet,
    pub k: GenSet,
    pub entries: Vec<DkEntry>,
    pub d1: Vec<Elem>,
    pub d2: Vec<Elem>,
    pub e_bar: Vec<Elem>,
}

impl DkSplit {
    pub fn compute(sys: &CoxeterSystem, ideal: &IdealE, j: GenSet) -> Result<Self> {
        let k = ideal.pos(sys)?;
        if !j.is_subset(k) {
            return Err(Error::BadReference { j: sys.format_set(j), pos: sys.format_set(k) });
        }
        let mut entries = Vec::new();
        let (mut d1, mut d2) = (Vec::new(), Vec::new());
        let mut e_bar = BTreeSet::new();
        for alpha in sys.min_coset_reps(k) {
            let below: Vec<Elem> = ideal.members().iter().copied().filter(|&y| sys.is_suffix(y, alpha)).collect();
            if below.is_empty() {
                d2.push(alpha);
                entries.push(DkEntry { alpha, x: alpha, y_max: None });
                continue;
            }
            let y_max = below
                .iter()
                .copied()
                .find(|&m| below.iter().all(|&y| sys.is_suffix(y, m)))
                .ok_or_else(|| Error::NoUniqueMax { alpha: sys.format(alpha) })?;
            let x = sys.mul(alpha, sys.inverse(y_max));
            d1.push(alpha);
            e_bar.insert(x);
            entries.push(DkEntry { alpha, x, y_max: Some(y_max) });
        }
        Ok(DkSplit { j, k, entries, d1, d2, e_bar: e_bar.into_iter().collect() })
    }

    pub fn get(&self, alpha: Elem) -> Option<&DkEntry> {
        self.entries.binary_search_by_key(&alpha, |e| e.alpha).ok().map(|i| &self.entries[i])
    }
}

/// Outcome of testing that `(α, z) ↦ αz` is a length-additive bijection
/// `D_K × F_J → D_J`, with `F_J = W_{K∖J}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub d_k_in_d_j: bool,
    pub f_j_in_d_j: bool,
    pub trivial_intersection: bool,
    /// `σ ∈ D_J` hit by zero or several length-additive pairs.
    pub unmatched: Vec<Elem>,
    /// Pairs whose product is not length-additive or leaves `D_J`.
    pub stray: Vec<(Elem, Elem)>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.d_k_in_d_j && self.f_j_in_d_j && self.trivial_intersection && self.unmatched.is_empty() && self.stray.is_empty()
    }
}

impl CoxeterSystem {
    pub fn check_factorization_property(&self, j: GenSet, k: GenSet) -> Result<FactorizationReport> {
        if !j.is_subset(k) {
            return Err(Error::BadReference { j: self.format_set(j), pos: self.format_set(k) });
        }
        let d_k = self.min_coset_reps(k);
        let f_j = self.parabolic_subgroup(k.difference(j));
        let mut hits = vec![0usize; self.order()];
        let mut stray = Vec::new();
        for &alpha in &d_k {
            for &z in &f_j {
                let p = self.mul(alpha, z);
                if self.length(p) == self.length(alpha) + self.length(z) && self.is_min_coset_rep(p, j) {
                    hits[p.index()] += 1;
                } else {
                    stray.push((alpha, z));
                }
            }
        }
        Ok(FactorizationReport {
            d_k_in_d_j: d_k.iter().all(|&a| self.is_min_coset_rep(a, j)),
            f_j_in_d_j: f_j.iter().all(|&z| self.is_min_coset_rep(z, j)),
            trivial_intersection: d_k.iter().filter(|&&a| self.in_parabolic(a, k.difference(j))).count() == 1,
            unmatched: self.min_coset_reps(j).into_iter().filter(|s| hits[s.index()] != 1).collect(),
            stray,
        })
    }

    /// `σ = α · z` with `α ∈ D_K`, `z ∈ W_{K∖J}`.
    pub fn factorize_via_k(&self, sigma: Elem, j: GenSet, k: GenSet) -> Result<(Elem, Elem)> {
        if !self.is_min_coset_rep(sigma, j) {
            return Err(Error::NotACosetRep { elem: self.format(sigma), subset: self.format_set(j) });
        }
        let (alpha, z) = self.coset_factorize(sigma, k);
        if !self.in_parabolic(z, k.difference(j)) {
            return Err(Error::FactorizationHypothesisViolated { sigma: self.format(sigma) });
        }
        Ok((alpha, z))
    }

    /// `w = α · z · w_J`.
    pub fn factorize_full(&self, w: Elem, j: GenSet, k: GenSet) -> Result<(Elem, Elem, Elem)> {
        let (sigma, w_j) = self.coset_factorize(w, j);
        let (alpha, z) = self.factorize_via_k(sigma, j, k)?;
        Ok((alpha, z, w_j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn sys(m: CoxeterMatrix) -> CoxeterSystem {
        CoxeterSystem::build(m).unwrap()
    }

    fn names(sys: &CoxeterSystem, ws: &[Elem]) -> Vec<String> {
        ws.iter().map(|&w| sys.format(w)).collect()
    }

    #[test]
    fn closure_and_pos() {
        let a2 = sys(CoxeterMatrix::type_a(2));
        let e = IdealE::principal(&a2, a2.parse_elem("s1s2").unwrap());
        assert_eq!(names(&a2, e.members()), ["e", "s2", "s1s2"]);
        assert_eq!(e.pos(&a2).unwrap(), GenSet::singleton(0));
        let triv = IdealE::closure(&a2, &[Elem::IDENTITY]);
        assert_eq!(triv.len(), 1);
        assert_eq!(triv.pos(&a2).unwrap(), GenSet::full(2));
        assert!(IdealE::from_members(&a2, &[Elem::IDENTITY, a2.parse_elem("s1s2").unwrap()]).is_err());
    }

    #[test]
    fn ideal_classification() {
        let a2 = sys(CoxeterMatrix::type_a(2));
        let e = IdealE::closure(&a2, &[a2.generator(0)]);
        let j = GenSet::singleton(1);
        assert_eq!(e.classify(&a2, 1, a2.generator(0), j), Ok(IdealCase::WA));
        assert_eq!(e.classify(&a2, 1, Elem::IDENTITY, j), Ok(IdealCase::WD));
        assert_eq!(e.classify(&a2, 0, a2.generator(0), j), Ok(IdealCase::SD));
        assert_eq!(e.classify(&a2, 0, Elem::IDENTITY, j), Ok(IdealCase::SA));
        assert!(matches!(e.classify(&a2, 0, Elem::IDENTITY, GenSet::full(2)), Err(Error::BadReference { .. })));
    }

    #[test]
    fn dk_split_example() {
        let a2 = sys(CoxeterMatrix::type_a(2));
        let e = IdealE::closure(&a2, &[a2.generator(0)]);
        let split = DkSplit::compute(&a2, &e, GenSet::singleton(1)).unwrap();
        let row = split.get(a2.parse_elem("s2s1").unwrap()).unwrap();
        assert_eq!((row.x, row.y_max), (a2.generator(1), Some(a2.generator(0))));
        assert_eq!(names(&a2, &split.e_bar), ["e", "s2"]);
        assert!(split.d2.is_empty());
        for &a in e.members() {
            assert_eq!(split.get(a).unwrap().y_max, Some(a));
        }
    }

    #[test]
    fn factorization_examples() {
        let a1a1 = sys(CoxeterMatrix::a1_power(2));
        let (j, k) = (GenSet::singleton(0), GenSet::full(2));
        assert_eq!(a1a1.factorize_via_k(a1a1.generator(1), j, k), Ok((Elem::IDENTITY, a1a1.generator(1))));
        assert!(a1a1.check_factorization_property(j, k).unwrap().passed());

        let a2 = sys(CoxeterMatrix::type_a(2));
        let s1s2 = a2.parse_elem("s1s2").unwrap();
        assert!(matches!(a2.factorize_via_k(s1s2, j, k), Err(Error::FactorizationHypothesisViolated { .. })));
        let report = a2.check_factorization_property(j, k).unwrap();
        assert!(!report.passed());
        assert_eq!(report.unmatched, vec![s1s2]);
        for k in GenSet::full(2).subsets() {
            assert!(a2.check_factorization_property(GenSet::EMPTY, k).unwrap().passed());
        }
    }

    #[test]
    fn enumerate_all_ideals_a2() {
        let a2 = sys(CoxeterMatrix::type_a(2));
        // chains e < s1 < s2s1 < s1s2s1 > s1s2 > s2 > e in the weak order
        let all = IdealE::all(&a2);
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|e| e.pos(&a2).is_ok()));
    }
}
