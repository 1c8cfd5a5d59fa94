//! Search for structure polynomials making the ideal action a module.
//!
//! One unknown is introduced per admissible `(s, y, z)`. The quadratic and
//! braid relations, evaluated on every basis element with the current partial
//! assignment substituted, give polynomial equations in the unknowns. Each
//! round solves one equation that is univariate of degree at most two; when a
//! quadratic leaves two admissible roots, or a single product of unknowns must
//! vanish, the search branches. Every complete candidate is then run through
//! the full validator, which also covers the bar involution.

use std::collections::{BTreeMap, BTreeSet};

use super::{IdealModule, RRows, WGraphIdealDatum};
use crate::coxeter::{Elem, Gen, GenSet, IdealCase, IdealE};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::laurent::Scalar;
use crate::parabolic::Variant;

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    /// Maximum number of search nodes before giving up.
    pub max_nodes: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_nodes: 256 }
    }
}

type Mono = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly(BTreeMap<Mono, Scalar>);

impl Poly {
    fn constant(c: Scalar) -> Self {
        let mut p = Poly::default();
        p.add_term(Vec::new(), c);
        p
    }

    fn var(i: u32, c: Scalar) -> Self {
        let mut p = Poly::default();
        p.add_term(vec![i], c);
        p
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(m.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    fn add_product(&mut self, a: &Poly, b: &Poly) {
        for (ma, ca) in &a.0 {
            for (mb, cb) in &b.0 {
                let mut m: Mono = ma.iter().chain(mb).copied().collect();
                m.sort_unstable();
                self.add_term(m, ca * cb);
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn unknowns(&self) -> BTreeSet<u32> {
        self.0.keys().flatten().copied().collect()
    }

    fn is_nonzero_constant(&self) -> bool {
        self.0.len() == 1 && self.0.contains_key(&Vec::new())
    }

    /// Coefficients by degree when the polynomial involves `x_i` only.
    fn univariate(&self) -> Option<(u32, Vec<Scalar>)> {
        let vars = self.unknowns();
        if vars.len() != 1 {
            return None;
        }
        let i = *vars.iter().next().unwrap();
        let deg = self.0.keys().map(Vec::len).max().unwrap_or(0);
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        for (m, c) in &self.0 {
            coeffs[m.len()] = c.clone();
        }
        Some((i, coeffs))
    }
}

type SymVec = BTreeMap<Elem, Poly>;

fn sym_add(v: &mut SymVec, y: Elem, p: &Poly, scale: &Poly) {
    let slot = v.entry(y).or_default();
    slot.add_product(p, scale);
    if slot.is_zero() {
        v.remove(&y);
    }
}

enum Outcome {
    Solved(RRows),
    Stalled(Vec<String>),
    Inconsistent(String),
}

struct Search<'a> {
    alg: &'a HeckeAlgebra<'a>,
    base: WGraphIdealDatum,
    unknowns: Vec<(Gen, Elem, Elem)>,
    rows: BTreeMap<(Gen, Elem), Vec<(Elem, u32)>>,
    nodes: usize,
    max_nodes: usize,
}

impl Search<'_> {
    fn image(&self, s: Gen, y: Elem, assign: &[Option<Scalar>]) -> SymVec {
        let sys = self.alg.system();
        let q = self.alg.q_s(s);
        let sy = sys.lmul(s, y);
        let variant = self.base.variant();
        let mut out = SymVec::new();
        let one = Poly::constant(Scalar::one());
        match self.base.case(sys, s, y) {
            IdealCase::SD => {
                sym_add(&mut out, sy, &Poly::constant(q.clone()), &one);
                sym_add(&mut out, y, &Poly::constant(q - &Scalar::one()), &one);
            }
            IdealCase::SA => sym_add(&mut out, sy, &one, &one),
            IdealCase::WD => sym_add(&mut out, y, &Poly::constant(variant.u(q)), &one),
            IdealCase::WA => {
                sym_add(&mut out, y, &Poly::constant(variant.dual().u(q)), &one);
                for &(z, i) in &self.rows[&(s, y)] {
                    let p = match &assign[i as usize] {
                        Some(c) => Poly::constant(-c),
                        None => Poly::var(i, Scalar::int(-1)),
                    };
                    sym_add(&mut out, z, &p, &one);
                }
            }
        }
        out
    }

    fn act(&self, s: Gen, v: &SymVec, assign: &[Option<Scalar>]) -> SymVec {
        let mut out = SymVec::new();
        for (&y, p) in v {
            for (z, c) in self.image(s, y, assign) {
                sym_add(&mut out, z, &c, p);
            }
        }
        out
    }

    fn equations(&self, assign: &[Option<Scalar>]) -> Vec<Poly> {
        let sys = self.alg.system();
        let mut eqs = Vec::new();
        let basis = self.base.ideal().members();
        for &y in basis {
            let v: SymVec = [(y, Poly::constant(Scalar::one()))].into_iter().collect();
            for s in 0..sys.rank() {
                // (T_s - q_s)(T_s + 1) Γ_y
                let tv = self.act(s, &v, assign);
                let mut w = tv.clone();
                for (&z, p) in &v {
                    sym_add(&mut w, z, p, &Poly::constant(Scalar::one()));
                }
                let mut r = self.act(s, &w, assign);
                for (&z, p) in &w {
                    sym_add(&mut r, z, p, &Poly::constant(-self.alg.q_s(s)));
                }
                eqs.extend(r.into_values());
            }
            for s in 0..sys.rank() {
                for t in s + 1..sys.rank() {
                    let Some(m) = sys.matrix().get(s, t) else { continue };
                    let (mut a, mut b) = (v.clone(), v.clone());
                    for i in 0..m {
                        let (g, h) = if i % 2 == 0 { (s, t) } else { (t, s) };
                        a = self.act(g, &a, assign);
                        b = self.act(h, &b, assign);
                    }
                    for (z, p) in b {
                        sym_add(&mut a, z, &p, &Poly::constant(Scalar::int(-1)));
                    }
                    eqs.extend(a.into_values());
                }
            }
        }
        eqs
    }

    fn admissible(&self, i: u32, value: &Scalar) -> bool {
        let (s, _, _) = self.unknowns[i as usize];
        self.base.variant() == Variant::Qs || self.alg.weights().in_qs_ideal(value, s)
    }

    /// Exact roots of `c0 + c1 x + c2 x²` in `ℤ[Γ]`, if computable.
    fn roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
        match coeffs.len() {
            2 => Some((-&coeffs[0]).div_exact(&coeffs[1]).into_iter().collect()),
            3 => {
                let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
                let disc = &(b * b) - &(a * c).scale_int(4);
                let Some(root) = disc.sqrt_exact() else { return Some(Vec::new()) };
                let two_a = a.scale_int(2);
                let mut out: Vec<Scalar> = [&-b + &root, &-b - &root]
                    .iter()
                    .filter_map(|n| n.div_exact(&two_a))
                    .collect();
                out.sort();
                out.dedup();
                Some(out)
            }
            _ => None,
        }
    }

    fn name(&self, i: u32) -> String {
        let sys = self.alg.system();
        let (s, y, z) = self.unknowns[i as usize];
        format!("r[{};{},{}]", sys.name(s), sys.format(z), sys.format(y))
    }

    fn describe(&self, p: &Poly) -> String {
        let rank = self.alg.gamma_rank();
        let terms: Vec<String> = p
            .0
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|&i| self.name(i)).collect();
                if vars.is_empty() {
                    format!("({})", c.display(rank))
                } else {
                    format!("({})*{}", c.display(rank), vars.join("*"))
                }
            })
            .collect();
        format!("{} = 0", terms.join(" + "))
    }

    fn finish(&self, assign: &[Option<Scalar>]) -> Outcome {
        let mut rows: RRows = self.rows.keys().map(|&k| (k, BTreeMap::new())).collect();
        for (i, &(s, y, z)) in self.unknowns.iter().enumerate() {
            if let Some(c) = &assign[i] {
                if !c.is_zero() {
                    rows.get_mut(&(s, y)).unwrap().insert(z, c.clone());
                }
            }
        }
        let sys = self.alg.system();
        let datum = WGraphIdealDatum::new(sys, self.base.ideal().clone(), self.base.j(), self.base.variant(), rows.clone())
            .expect("reference set already checked");
        let failures = IdealModule::new(self.alg, datum).validate();
        match failures.first() {
            None => Outcome::Solved(rows),
            Some(f) => Outcome::Inconsistent(format!("candidate rejected: {f}")),
        }
    }

    fn run(&mut self, mut assign: Vec<Option<Scalar>>) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Outcome::Stalled(vec![format!("search exceeded {} nodes", self.max_nodes)]);
        }
        loop {
            let eqs = self.equations(&assign);
            if let Some(eq) = eqs.iter().find(|e| e.is_nonzero_constant()) {
                return Outcome::Inconsistent(self.describe(eq));
            }
            let mut branch: Option<(u32, Vec<Scalar>)> = None;
            let mut progressed = false;
            for eq in &eqs {
                let Some((i, coeffs)) = eq.univariate() else { continue };
                let Some(roots) = Self::roots(&coeffs) else { continue };
                let roots: Vec<Scalar> = roots.into_iter().filter(|r| self.admissible(i, r)).collect();
                match roots.len() {
                    0 => return Outcome::Inconsistent(format!("no admissible root of {}", self.describe(eq))),
                    1 => {
                        assign[i as usize] = roots.into_iter().next();
                        progressed = true;
                        break;
                    }
                    _ => {
                        if branch.is_none() {
                            branch = Some((i, roots));
                        }
                    }
                }
            }
            if progressed {
                continue;
            }
            if branch.is_none() {
                // a lone product of unknowns must vanish, so one factor is zero
                if let Some(eq) = eqs.iter().find(|e| e.0.len() == 1 && !e.unknowns().is_empty()) {
                    let vars: Vec<u32> = eq.unknowns().into_iter().collect();
                    return self.branch_vars(&assign, &vars);
                }
            }
            if let Some((i, roots)) = branch {
                let mut stalls = Vec::new();
                let mut last = String::new();
                for r in roots {
                    let mut next = assign.clone();
                    next[i as usize] = Some(r);
                    match self.run(next) {
                        Outcome::Solved(rows) => return Outcome::Solved(rows),
                        Outcome::Stalled(s) => stalls.extend(s),
                        Outcome::Inconsistent(m) => last = m,
                    }
                }
                return if stalls.is_empty() { Outcome::Inconsistent(last) } else { Outcome::Stalled(stalls) };
            }
            if eqs.iter().all(Poly::is_zero) {
                for slot in assign.iter_mut().filter(|a| a.is_none()) {
                    *slot = Some(Scalar::zero());
                }
                return self.finish(&assign);
            }
            let mut residue: Vec<String> = eqs.iter().filter(|e| !e.is_zero()).map(|e| self.describe(e)).collect();
            residue.sort();
            residue.dedup();
            return Outcome::Stalled(residue);
        }
    }

    fn branch_vars(&mut self, assign: &[Option<Scalar>], vars: &[u32]) -> Outcome {
        let mut stalls = Vec::new();
        let mut last = String::new();
        for &v in vars {
            let mut next = assign.to_vec();
            next[v as usize] = Some(Scalar::zero());
            match self.run(next) {
                Outcome::Solved(rows) => return Outcome::Solved(rows),
                Outcome::Stalled(s) => stalls.extend(s),
                Outcome::Inconsistent(m) => last = m,
            }
        }
        if stalls.is_empty() {
            Outcome::Inconsistent(last)
        } else {
            Outcome::Stalled(stalls)
        }
    }
}

/// Finds structure polynomials for `(E, J)` in the requested flavour.
///
/// The returned datum has passed [`IdealModule::validate`].
pub fn solve_r_table<'a>(
    alg: &'a HeckeAlgebra<'a>,
    ideal: &IdealE,
    j: GenSet,
    variant: Variant,
    config: SolverConfig,
) -> Result<WGraphIdealDatum> {
    let sys = alg.system();
    let base = WGraphIdealDatum::with_empty_rows(sys, ideal.clone(), j, variant)?;
    let mut unknowns = Vec::new();
    let mut rows = BTreeMap::new();
    for (s, y) in base.wa_pairs(sys) {
        let mut row = Vec::new();
        for z in base.admissible_z(sys, s, y) {
            row.push((z, unknowns.len() as u32));
            unknowns.push((s, y, z));
        }
        rows.insert((s, y), row);
    }
    let n = unknowns.len();
    let mut search = Search {
        alg,
        base,
        unknowns,
        rows,
        nodes: 0,
        max_nodes: config.max_nodes,
    };
    match search.run(vec![None; n]) {
        Outcome::Solved(rows) => WGraphIdealDatum::new(sys, ideal.clone(), j, variant, rows),
        Outcome::Stalled(residue) => Err(Error::SolverIncomplete { unresolved: n, residue }),
        Outcome::Inconsistent(msg) => Err(Error::Inconsistent(msg)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, CoxeterSystem};
    use crate::module::HeckeModule;
    use crate::parabolic::ParabolicModule;

    #[test]
    fn solves_the_a2_instance() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(2)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        let ideal = IdealE::closure(&sys, &[sys.generator(0)]);
        let j = GenSet::singleton(1);
        let s1 = sys.generator(0);
        let d = solve_r_table(&alg, &ideal, j, Variant::MinusOne, SolverConfig::default()).unwrap();
        assert_eq!(d.r(1, s1, Elem::IDENTITY), Scalar::q_pow(2));
        assert_eq!(d.r(1, s1, s1), Scalar::zero());
        let t = solve_r_table(&alg, &ideal, j, Variant::Qs, SolverConfig::default()).unwrap();
        assert_eq!(t.r(1, s1, Elem::IDENTITY), Scalar::one());
        assert_eq!(t.r(1, s1, s1), Scalar::zero());
    }

    #[test]
    fn coset_ideals_give_parabolic_modules() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_a(3)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        for j in sys.generators().subsets() {
            let reps = sys.min_coset_reps(j);
            let ideal = IdealE::from_members(&sys, &reps).unwrap();
            for variant in [Variant::MinusOne, Variant::Qs] {
                let d = solve_r_table(&alg, &ideal, j, variant, SolverConfig::default()).unwrap();
                assert!(d.rows().is_empty());
                let m = IdealModule::new(&alg, d);
                let p = ParabolicModule::new(&alg, j, variant);
                for &y in &reps {
                    for s in 0..3 {
                        assert_eq!(m.gen_act_basis(s, y).unwrap(), p.gen_act_basis(s, y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn whole_group_is_regular() {
        let sys = CoxeterSystem::build(CoxeterMatrix::type_b(3)).unwrap();
        let alg = HeckeAlgebra::equal_parameters(&sys);
        let d = solve_r_table(&alg, &IdealE::full(&sys), GenSet::EMPTY, Variant::MinusOne, SolverConfig::default()).unwrap();
        assert!(d.rows().is_empty());
        let m = IdealModule::new(&alg, d);
        for y in sys.elements() {
            for s in 0..3 {
                assert_eq!(m.gen_act_basis(s, y).unwrap(), alg.gen_act_basis(s, y).unwrap());
            }
        }
    }
}
