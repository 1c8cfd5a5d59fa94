//! Finite Coxeter systems.
//!
//! A system is realized through its geometric representation: the positive
//! roots are closed under the simple reflections, every generator becomes a
//! permutation of the signed roots, and the group is enumerated by
//! breadth-first search over left multiplication. Elements are then indexed in
//! `(length, ShortLex)` order, so [`Elem`] ordering is the enumeration order
//! used everywhere else in the crate.

mod ideal;

pub use ideal::{DkEntry, DkSplit, FactorizationReport, IdealCase, IdealE};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type Gen = usize;

/// Default cap on the number of positive roots.
pub const DEFAULT_ROOT_CAP: usize = 10_000;
/// Default cap on the group order.
pub const DEFAULT_ORDER_CAP: usize = 200_000;

/// A subset of the generators, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(s: Gen) -> Self {
        GenSet(1 << s)
    }

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: Gen) -> bool {
        s < 64 && self.0 & (1 << s) != 0
    }

    pub fn with(self, s: Gen) -> Self {
        GenSet(self.0 | (1 << s))
    }

    pub fn without(self, s: Gen) -> Self {
        GenSet(self.0 & !(1 << s))
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Gen> {
        (0..64).filter(move |&s| self.contains(s))
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = GenSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(GenSet(cur))
        })
    }
}

impl FromIterator<Gen> for GenSet {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        iter.into_iter().fold(GenSet::EMPTY, GenSet::with)
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Symmetric Coxeter matrix; `None` stands for `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 64 {
            return Err(Error::InvalidMatrix(format!("rank {n} outside 1..=64")));
        }
        let mut m = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!("row {i} has length {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != Some(1) {
                    return Err(Error::InvalidMatrix(format!("diagonal entry ({i},{j}) must be 1")));
                }
                if i != j && matches!(v, Some(k) if k < 2) {
                    return Err(Error::InvalidMatrix(format!("off-diagonal entry ({i},{j}) must be >= 2")));
                }
                if v != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                m.push(v);
            }
        }
        Ok(CoxeterMatrix { n, m })
    }

    /// Integer rows with `0` standing for `∞`.
    pub fn from_rows(rows: &[&[u32]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| if v == 0 { None } else { Some(v) }).collect())
                .collect(),
        )
    }

    fn from_bonds(n: usize, bonds: &[(usize, usize, u32)]) -> Self {
        let mut rows = vec![vec![Some(2); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Some(1);
        }
        for &(i, j, m) in bonds {
            rows[i][j] = Some(m);
            rows[j][i] = Some(m);
        }
        Self::new(rows).expect("well-formed bond list")
    }

    pub fn type_a(n: usize) -> Self {
        let bonds: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        Self::from_bonds(n, &bonds)
    }

    /// `B_n` with the double bond between the first two generators.
    pub fn type_b(n: usize) -> Self {
        let bonds: Vec<_> = (1..n).map(|i| (i - 1, i, if i == 1 { 4 } else { 3 })).collect();
        Self::from_bonds(n, &bonds)
    }

    pub fn dihedral(m: u32) -> Self {
        Self::from_bonds(2, &[(0, 1, m)])
    }

    /// `A_1 × ... × A_1`.
    pub fn a1_power(n: usize) -> Self {
        Self::from_bonds(n, &[])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Gen, t: Gen) -> Option<u32> {
        self.m[s * self.n + t]
    }

    /// Class index per generator, classes being joined by odd bonds.
    pub fn odd_classes(&self) -> Vec<usize> {
        let mut class = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if class[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            class[start] = next;
            while let Some(s) = stack.pop() {
                for t in 0..self.n {
                    if class[t] == usize::MAX && matches!(self.get(s, t), Some(m) if m % 2 == 1 && s != t) {
                        class[t] = next;
                        stack.push(t);
                    }
                }
            }
            next += 1;
        }
        class
    }

    fn bilinear(&self, s: Gen, t: Gen) -> f64 {
        match self.get(s, t) {
            Some(1) => 1.0,
            Some(m) => -(std::f64::consts::PI / m as f64).cos(),
            None => -1.0,
        }
    }
}

/// A group element, as an index into the system's `(length, ShortLex)` enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Elem(i as u32)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// How `s` acts on a coset representative `σ ∈ D_J`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ParabolicCase {
    /// `sσ < σ`
    Minus,
    /// `sσ > σ` and `sσ ∈ D_J`
    Plus,
    /// `sσ > σ` and `sσ ∉ D_J`
    Zero,
}

/// A finite Coxeter system with multiplication tables.
#[derive(Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    names: Vec<String>,
    roots: Vec<Vec<f64>>,
    gen_perm: Vec<Vec<u32>>,
    words: Vec<Vec<Gen>>,
    lens: Vec<u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    inv: Vec<u32>,
}

fn root_key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * 1e7).round() as i64).collect()
}

impl CoxeterSystem {
    /// Builds the system with generator names `s1, s2, ...` and default caps.
    pub fn build(matrix: CoxeterMatrix) -> Result<Self> {
        let names = (1..=matrix.rank()).map(|i| format!("s{i}")).collect();
        Self::build_with(matrix, names, DEFAULT_ROOT_CAP, DEFAULT_ORDER_CAP)
    }

    pub fn build_with(matrix: CoxeterMatrix, names: Vec<String>, root_cap: usize, order_cap: usize) -> Result<Self> {
        let n = matrix.rank();
        if root_cap < n {
            return Err(Error::InvalidMatrix(format!("root cap {root_cap} is below the rank {n}")));
        }
        if names.len() != n {
            return Err(Error::Config(format!("{} generator names for rank {n}", names.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a == "e" || names[..i].contains(a) {
                return Err(Error::Config(format!("generator name {a:?} is empty, reserved or repeated")));
            }
        }

        // positive root closure
        let mut roots: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                v
            })
            .collect();
        let mut index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (root_key(r), i)).collect();
        let reflect = |s: Gen, v: &[f64]| -> Vec<f64> {
            let b: f64 = (0..n).map(|t| v[t] * matrix.bilinear(s, t)).sum();
            let mut out = v.to_vec();
            out[s] -= 2.0 * b;
            out
        };
        let mut head = 0;
        while head < roots.len() {
            for s in 0..n {
                if head == s {
                    continue;
                }
                let image = reflect(s, &roots[head]);
                if image.iter().any(|&c| c < -1e-6) {
                    return Err(Error::InvalidMatrix("reflection produced a mixed-sign root".into()));
                }
                let key = root_key(&image);
                if !index.contains_key(&key) {
                    index.insert(key, roots.len());
                    roots.push(image);
                    if roots.len() > root_cap {
                        return Err(Error::InfiniteOrTooLarge { cap: root_cap });
                    }
                }
            }
            head += 1;
        }
        let npos = roots.len();
        let mut gen_perm = vec![vec![0u32; 2 * npos]; n];
        for (s, perm) in gen_perm.iter_mut().enumerate() {
            for (i, r) in roots.iter().enumerate() {
                let j = if i == s { npos + s } else { index[&root_key(&reflect(s, r))] };
                perm[i] = j as u32;
                perm[i + npos] = ((j + npos) % (2 * npos)) as u32;
            }
        }

        // breadth-first enumeration by left multiplication
        let mut sigs: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut lookup: HashMap<Vec<u32>, u32> = HashMap::new();
        lookup.insert(sigs[0].clone(), 0);
        let mut bfs_len = vec![0u32];
        let mut left_tmp: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut head = 0;
        while head < sigs.len() {
            for s in 0..n {
                let image: Vec<u32> = sigs[head].iter().map(|&r| gen_perm[s][r as usize]).collect();
                let id = match lookup.get(&image) {
                    Some(&id) => id,
                    None => {
                        let id = sigs.len() as u32;
                        if sigs.len() >= order_cap {
                            return Err(Error::InfiniteOrTooLarge { cap: order_cap });
                        }
                        lookup.insert(image.clone(), id);
                        sigs.push(image);
                        bfs_len.push(bfs_len[head] + 1);
                        id
                    }
                };
                left_tmp[s].push(id);
            }
            head += 1;
        }
        let order = sigs.len();

        // ShortLex-minimal words, greedily from the smallest left descent
        let mut tmp_words: Vec<Vec<Gen>> = vec![Vec::new(); order];
        for id in 1..order {
            let s = (0..n)
                .find(|&s| bfs_len[left_tmp[s][id] as usize] < bfs_len[id])
                .expect("non-identity element has a left descent");
            let mut w = vec![s];
            w.extend_from_slice(&tmp_words[left_tmp[s][id] as usize]);
            tmp_words[id] = w;
        }
        let mut order_ids: Vec<usize> = (0..order).collect();
        order_ids.sort_by(|&a, &b| (bfs_len[a], &tmp_words[a]).cmp(&(bfs_len[b], &tmp_words[b])));
        let mut new_of_old = vec![0u32; order];
        for (new, &old) in order_ids.iter().enumerate() {
            new_of_old[old] = new as u32;
        }
        let words: Vec<Vec<Gen>> = order_ids.iter().map(|&o| tmp_words[o].clone()).collect();
        let lens: Vec<u32> = order_ids.iter().map(|&o| bfs_len[o]).collect();
        let left: Vec<Vec<u32>> = (0..n)
            .map(|s| order_ids.iter().map(|&o| new_of_old[left_tmp[s][o] as usize]).collect())
            .collect();
        let inv: Vec<u32> = words
            .iter()
            .map(|w| w.iter().fold(0u32, |x, &s| left[s][x as usize]))
            .collect();
        let right: Vec<Vec<u32>> = (0..n)
            .map(|s| (0..order).map(|w| inv[left[s][inv[w] as usize] as usize]).collect())
            .collect();

        Ok(CoxeterSystem { matrix, names, roots, gen_perm, words, lens, left, right, inv })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> &[Vec<f64>] {
        &self.roots
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Gen) -> &str {
        &self.names[s]
    }

    /// All elements in `(length, ShortLex)` order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.order()).map(Elem::from_index)
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn generator(&self, s: Gen) -> Elem {
        Elem(self.left[s][0])
    }

    pub fn word(&self, w: Elem) -> &[Gen] {
        &self.words[w.index()]
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lens[w.index()] as usize
    }

    pub fn longest_element(&self) -> Elem {
        Elem::from_index(self.order() - 1)
    }

    pub fn lmul(&self, s: Gen, w: Elem) -> Elem {
        Elem(self.left[s][w.index()])
    }

    pub fn rmul(&self, w: Elem, s: Gen) -> Elem {
        Elem(self.right[s][w.index()])
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.word(b).iter().fold(a, |x, &s| self.rmul(x, s))
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inv[w.index()])
    }

    /// The element represented by an arbitrary (not necessarily reduced) word.
    pub fn canonical(&self, word: &[Gen]) -> Result<Elem> {
        let mut x = Elem::IDENTITY;
        for &s in word {
            if s >= self.rank() {
                return Err(Error::GeneratorOutOfRange { index: s, rank: self.rank() });
            }
            x = self.rmul(x, s);
        }
        Ok(x)
    }

    pub fn is_left_descent(&self, s: Gen, w: Elem) -> bool {
        self.lens[self.left[s][w.index()] as usize] < self.lens[w.index()]
    }

    pub fn is_right_descent(&self, w: Elem, s: Gen) -> bool {
        self.lens[self.right[s][w.index()] as usize] < self.lens[w.index()]
    }

    pub fn descents(&self, w: Elem, side: Side) -> GenSet {
        (0..self.rank())
            .filter(|&s| match side {
                Side::Left => self.is_left_descent(s, w),
                Side::Right => self.is_right_descent(w, s),
            })
            .collect()
    }

    /// Signed-root permutation realizing `w`; indices `>= N` are negative roots.
    pub fn root_action(&self, w: Elem) -> Vec<u32> {
        let npos = self.roots.len();
        (0..2 * npos as u32)
            .map(|r| self.word(w).iter().rev().fold(r, |x, &s| self.gen_perm[s][x as usize]))
            .collect()
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn inversion_count(&self, w: Elem) -> usize {
        let npos = self.roots.len();
        self.root_action(w)[..npos].iter().filter(|&&r| r as usize >= npos).count()
    }

    pub fn in_parabolic(&self, w: Elem, j: GenSet) -> bool {
        self.word(w).iter().all(|&s| j.contains(s))
    }

    /// `W_J`, in enumeration order.
    pub fn parabolic_subgroup(&self, j: GenSet) -> Vec<Elem> {
        self.elements().filter(|&w| self.in_parabolic(w, j)).collect()
    }

    pub fn is_min_coset_rep(&self, w: Elem, j: GenSet) -> bool {
        j.iter().all(|s| !self.is_right_descent(w, s))
    }

    /// `D_J = { w : ℓ(ws) > ℓ(w) for all s ∈ J }`, in enumeration order.
    pub fn min_coset_reps(&self, j: GenSet) -> Vec<Elem> {
        self.elements().filter(|&w| self.is_min_coset_rep(w, j)).collect()
    }

    /// `w = σ · w_J` with `σ ∈ D_J`, `w_J ∈ W_J` and additive lengths.
    pub fn coset_factorize(&self, w: Elem, j: GenSet) -> (Elem, Elem) {
        let mut sigma = w;
        while let Some(s) = j.iter().find(|&s| self.is_right_descent(sigma, s)) {
            sigma = self.rmul(sigma, s);
        }
        (sigma, self.mul(self.inverse(sigma), w))
    }

    pub fn classify_parabolic(&self, s: Gen, sigma: Elem, j: GenSet) -> Result<ParabolicCase> {
        if !self.is_min_coset_rep(sigma, j) {
            return Err(Error::NotACosetRep { elem: self.format(sigma), subset: self.format_set(j) });
        }
        Ok(self.parabolic_case(s, sigma, j))
    }

    pub(crate) fn parabolic_case(&self, s: Gen, sigma: Elem, j: GenSet) -> ParabolicCase {
        let ssigma = self.lmul(s, sigma);
        if self.length(ssigma) < self.length(sigma) {
            ParabolicCase::Minus
        } else if self.is_min_coset_rep(ssigma, j) {
            ParabolicCase::Plus
        } else {
            ParabolicCase::Zero
        }
    }

    /// `u` is a suffix of `w`: `w = x·u` with `ℓ(w) = ℓ(x) + ℓ(u)`.
    pub fn is_suffix(&self, u: Elem, w: Elem) -> bool {
        let x = self.mul(w, self.inverse(u));
        self.length(x) + self.length(u) == self.length(w)
    }

    /// Bruhat order, by descending along a left descent of `w`.
    pub fn bruhat_leq(&self, u: Elem, w: Elem) -> bool {
        let (mut u, mut w) = (u, w);
        loop {
            if u == Elem::IDENTITY {
                return true;
            }
            let (lu, lw) = (self.length(u), self.length(w));
            if lu >= lw {
                return u == w;
            }
            let s = self.word(w)[0];
            w = self.lmul(s, w);
            if self.is_left_descent(s, u) {
                u = self.lmul(s, u);
            }
        }
    }

    pub fn bruhat_lt(&self, u: Elem, w: Elem) -> bool {
        u != w && self.bruhat_leq(u, w)
    }

    /// Element name: generator names concatenated, `e` for the identity.
    pub fn format(&self, w: Elem) -> String {
        if w == Elem::IDENTITY {
            return "e".to_string();
        }
        self.word(w).iter().map(|&s| self.names[s].as_str()).collect()
    }

    pub fn format_set(&self, j: GenSet) -> String {
        let names: Vec<&str> = j.iter().map(|s| self.names[s].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn gen_by_name(&self, name: &str) -> Result<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Config(format!("unknown generator {name:?}")))
    }

    /// Parses a concatenated word such as `s1s2s1` (longest name first), or `e`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Gen>> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Vec::new());
        }
        let mut by_len: Vec<(usize, &String)> = self.names.iter().enumerate().collect();
        by_len.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let mut rest = text;
        let mut out = Vec::new();
        while !rest.is_empty() {
            let (s, n) = by_len
                .iter()
                .find(|(_, n)| rest.starts_with(n.as_str()))
                .ok_or_else(|| Error::Config(format!("cannot parse word {text:?}")))?;
            out.push(*s);
            rest = &rest[n.len()..];
        }
        Ok(out)
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        self.canonical(&self.parse_word(text)?)
    }

    /// Parses a comma separated generator list; an empty string or `{}` is `∅`.
    pub fn parse_set(&self, text: &str) -> Result<GenSet> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        inner
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| self.gen_by_name(p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap()
    }

    fn el(sys: &CoxeterSystem, w: &str) -> Elem {
        sys.parse_elem(w).unwrap()
    }

    #[test]
    fn build_examples() {
        let sys = a2();
        assert_eq!(sys.num_positive_roots(), 3);
        assert_eq!(sys.order(), 6);
        let a1 = CoxeterSystem::build(CoxeterMatrix::type_a(1)).unwrap();
        assert_eq!((a1.num_positive_roots(), a1.order()), (1, 2));
        let inf = CoxeterMatrix::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let err = CoxeterSystem::build_with(inf, vec!["s1".into(), "s2".into()], 100, DEFAULT_ORDER_CAP);
        assert_eq!(err.unwrap_err(), Error::InfiniteOrTooLarge { cap: 100 });
    }

    #[test]
    fn invalid_matrices() {
        assert!(matches!(CoxeterMatrix::from_rows(&[&[1, 3], &[4, 1]]), Err(Error::InvalidMatrix(_))));
        assert!(matches!(CoxeterMatrix::from_rows(&[&[2, 3], &[3, 1]]), Err(Error::InvalidMatrix(_))));
        assert!(matches!(CoxeterMatrix::from_rows(&[&[1, 1], &[1, 1]]), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn known_orders() {
        for (m, order) in [
            (CoxeterMatrix::type_a(3), 24),
            (CoxeterMatrix::type_b(3), 48),
            (CoxeterMatrix::dihedral(5), 10),
            (CoxeterMatrix::dihedral(7), 14),
            (CoxeterMatrix::a1_power(3), 8),
            (CoxeterMatrix::type_a(4), 120),
        ] {
            assert_eq!(CoxeterSystem::build(m).unwrap().order(), order);
        }
    }

    #[test]
    fn canonical_and_multiply() {
        let sys = a2();
        let w = sys.canonical(&[1, 0, 1]).unwrap();
        assert_eq!(sys.word(w), &[0, 1, 0]);
        assert_eq!(sys.mul(el(&sys, "s1s2"), el(&sys, "s2s1")), Elem::IDENTITY);
        assert_eq!(sys.length(Elem::IDENTITY), 0);
        assert_eq!(sys.canonical(&[2]), Err(Error::GeneratorOutOfRange { index: 2, rank: 2 }));
    }

    #[test]
    fn descent_examples() {
        let sys = a2();
        assert_eq!(sys.descents(el(&sys, "s1s2"), Side::Left), GenSet::singleton(0));
        assert_eq!(sys.descents(Elem::IDENTITY, Side::Left), GenSet::EMPTY);
        assert_eq!(sys.descents(el(&sys, "s1s2s1"), Side::Right), GenSet::full(2));
    }

    #[test]
    fn coset_examples() {
        let sys = a2();
        let j = GenSet::singleton(0);
        let reps: Vec<String> = sys.min_coset_reps(j).into_iter().map(|w| sys.format(w)).collect();
        assert_eq!(reps, ["e", "s2", "s1s2"]);
        assert_eq!(sys.min_coset_reps(GenSet::EMPTY).len(), 6);
        assert_eq!(sys.min_coset_reps(GenSet::full(2)), vec![Elem::IDENTITY]);
        assert_eq!(sys.coset_factorize(el(&sys, "s2s1"), j), (el(&sys, "s2"), el(&sys, "s1")));
        assert_eq!(sys.coset_factorize(el(&sys, "s1s2"), j), (el(&sys, "s1s2"), Elem::IDENTITY));
        assert_eq!(sys.coset_factorize(el(&sys, "s1"), j), (Elem::IDENTITY, el(&sys, "s1")));
    }

    #[test]
    fn parabolic_classification_examples() {
        let sys = a2();
        let j = GenSet::singleton(0);
        assert_eq!(sys.classify_parabolic(0, Elem::IDENTITY, j), Ok(ParabolicCase::Zero));
        assert_eq!(sys.classify_parabolic(0, el(&sys, "s2"), j), Ok(ParabolicCase::Plus));
        assert_eq!(sys.classify_parabolic(1, el(&sys, "s2"), j), Ok(ParabolicCase::Minus));
        assert!(matches!(sys.classify_parabolic(0, el(&sys, "s1"), j), Err(Error::NotACosetRep { .. })));
    }

    #[test]
    fn suffix_examples() {
        let sys = a2();
        assert!(sys.is_suffix(el(&sys, "s2"), el(&sys, "s1s2")));
        assert!(!sys.is_suffix(el(&sys, "s1"), el(&sys, "s1s2")));
        assert!(sys.elements().all(|w| sys.is_suffix(Elem::IDENTITY, w)));
    }

    #[test]
    fn words_and_sets_parse() {
        let names = vec!["a".to_string(), "b".to_string(), "ab".to_string()];
        let sys = CoxeterSystem::build_with(CoxeterMatrix::a1_power(3), names, 100, 100).unwrap();
        assert_eq!(sys.parse_word("aba").unwrap(), vec![2, 0]);
        assert_eq!(sys.parse_set("{a, ab}").unwrap(), GenSet::from_bits(0b101));
        assert_eq!(sys.parse_set("").unwrap(), GenSet::EMPTY);
        assert!(sys.parse_word("c").is_err());
    }

    #[test]
    fn subsets_enumeration() {
        let all: Vec<u64> = GenSet::from_bits(0b101).subsets().map(GenSet::bits).collect();
        assert_eq!(all, [0b000, 0b001, 0b100, 0b101]);
        assert_eq!(GenSet::EMPTY.subsets().count(), 1);
    }
}
