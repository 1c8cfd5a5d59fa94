//! Validation of W-graph data: vertices with descent sets and edge weights.

use std::collections::BTreeMap;

use crate::coxeter::{Gen, GenSet};
use crate::hecke::HeckeAlgebra;
use crate::laurent::{Exponent, Scalar};

/// `μ^s_{x,y}` on the edge from `y` to `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WGraphEdge {
    pub x: usize,
    pub y: usize,
    pub s: Gen,
    pub mu: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WGraphDatum {
    pub vertices: Vec<String>,
    pub descents: Vec<GenSet>,
    pub edges: Vec<WGraphEdge>,
    /// `(s, x) ↦ sx` for generators of weight zero.
    pub zero_edges: BTreeMap<(Gen, usize), usize>,
}

type Vector = BTreeMap<usize, Scalar>;

fn add(v: &mut Vector, i: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(i).or_default();
    *slot += c;
    if slot.is_zero() {
        v.remove(&i);
    }
}

impl WGraphDatum {
    fn tau(&self, alg: &HeckeAlgebra<'_>, s: Gen, v: &Vector) -> Vector {
        let mut out = Vector::new();
        let weight = alg.weights().value(s);
        for (&y, c) in v {
            if weight.is_zero() {
                if let Some(&sy) = self.zero_edges.get(&(s, y)) {
                    add(&mut out, sy, c);
                }
            } else if self.descents[y].contains(s) {
                add(&mut out, y, &-c);
            } else {
                let half = Scalar::monomial(Exponent::from_doubled(&alg.weights().units(s)).expect("weight in range"), 1);
                add(&mut out, y, &(alg.q_s(s) * c));
                for e in self.edges.iter().filter(|e| e.s == s && e.y == y) {
                    add(&mut out, e.x, &(&(&half * &e.mu) * c));
                }
            }
        }
        out
    }

    /// Structural checks, then the quadratic and braid relations for `τ_s`.
    pub fn validate(&self, alg: &HeckeAlgebra<'_>) -> Vec<String> {
        let sys = alg.system();
        let n = self.vertices.len();
        let mut bad = Vec::new();
        if self.descents.len() != n {
            bad.push(format!("{} descent sets for {} vertices", self.descents.len(), n));
            return bad;
        }
        for e in &self.edges {
            if e.x >= n || e.y >= n || e.s >= sys.rank() {
                bad.push(format!("edge ({}, {}, {}) out of range", e.x, e.y, e.s));
                continue;
            }
            let (vx, vy, s) = (&self.vertices[e.x], &self.vertices[e.y], sys.name(e.s));
            if !self.descents[e.x].contains(e.s) || self.descents[e.y].contains(e.s) {
                bad.push(format!("edge mu[{s};{vx},{vy}] needs {s} in I({vx}) and not in I({vy})"));
            }
            if e.mu.bar() != e.mu {
                bad.push(format!("mu[{s};{vx},{vy}] = {} is not bar-invariant", e.mu));
            }
        }
        for s in (0..sys.rank()).filter(|&s| alg.weights().value(s).is_zero()) {
            for x in 0..n {
                match self.zero_edges.get(&(s, x)) {
                    Some(&t) if t < n => {}
                    _ => bad.push(format!("no edge {} -> {}{}", self.vertices[x], sys.name(s), self.vertices[x])),
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for y in 0..n {
            let b: Vector = [(y, Scalar::one())].into_iter().collect();
            for s in 0..sys.rank() {
                let tb = self.tau(alg, s, &b);
                let mut lhs = self.tau(alg, s, &tb);
                for (&i, c) in &tb {
                    add(&mut lhs, i, &(&(&Scalar::one() - alg.q_s(s)) * c));
                }
                add(&mut lhs, y, &-alg.q_s(s));
                if !lhs.is_empty() {
                    bad.push(format!("quadratic relation for {} on b[{}]", sys.name(s), self.vertices[y]));
                }
                for t in s + 1..sys.rank() {
                    let Some(m) = sys.matrix().get(s, t) else { continue };
                    let (mut l, mut r) = (b.clone(), b.clone());
                    for i in 0..m {
                        let (g, h) = if i % 2 == 0 { (s, t) } else { (t, s) };
                        l = self.tau(alg, g, &l);
                        r = self.tau(alg, h, &r);
                    }
                    if l != r {
                        bad.push(format!("braid relation ({},{}) on b[{}]", sys.name(s), sys.name(t), self.vertices[y]));
                    }
                }
            }
        }
        bad
    }
}
