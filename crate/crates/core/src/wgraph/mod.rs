//! Ideal modules `M(E_J)` and `M̃(E_J)`, their structure constants, and the
//! maps relating them to parabolic modules.

mod graph;
mod maps;
mod solver;

pub use graph::{WGraphDatum, WGraphEdge};
pub use maps::{delta, lambda_j, lambda_k, nu, rho};
pub use solver::{solve_r_table, SolverConfig};

use std::collections::BTreeMap;

use crate::coxeter::{CoxeterSystem, Elem, Gen, GenSet, IdealCase, IdealE};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::laurent::Scalar;
use crate::lincomb::LinComb;
use crate::module::{check_module, BarCache, HeckeModule};
use crate::parabolic::Variant;

/// `r^s_{z,y}` keyed by `(s, y)`, then by `z`. Every weak-ascent pair `(s, y)`
/// has a row, possibly empty.
pub type RRows = BTreeMap<(Gen, Elem), BTreeMap<Elem, Scalar>>;

/// An ideal with its reference set and structure polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WGraphIdealDatum {
    ideal: IdealE,
    j: GenSet,
    variant: Variant,
    rows: RRows,
}

impl WGraphIdealDatum {
    pub fn new(sys: &CoxeterSystem, ideal: IdealE, j: GenSet, variant: Variant, rows: RRows) -> Result<Self> {
        let pos = ideal.pos(sys)?;
        if !j.is_subset(pos) {
            return Err(Error::BadReference { j: sys.format_set(j), pos: sys.format_set(pos) });
        }
        Ok(WGraphIdealDatum { ideal, j, variant, rows })
    }

    /// A datum whose weak-ascent rows are all empty.
    pub fn with_empty_rows(sys: &CoxeterSystem, ideal: IdealE, j: GenSet, variant: Variant) -> Result<Self> {
        let mut datum = Self::new(sys, ideal, j, variant, RRows::new())?;
        for key in datum.wa_pairs(sys) {
            datum.rows.insert(key, BTreeMap::new());
        }
        Ok(datum)
    }

    pub fn ideal(&self) -> &IdealE {
        &self.ideal
    }

    pub fn j(&self) -> GenSet {
        self.j
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rows(&self) -> &RRows {
        &self.rows
    }

    pub fn r(&self, s: Gen, y: Elem, z: Elem) -> Scalar {
        self.rows.get(&(s, y)).and_then(|row| row.get(&z)).cloned().unwrap_or_default()
    }

    pub fn case(&self, sys: &CoxeterSystem, s: Gen, y: Elem) -> IdealCase {
        self.ideal.case_unchecked(sys, s, y, self.j)
    }

    /// All `(s, y)` with `s ∈ WA(y)`.
    pub fn wa_pairs(&self, sys: &CoxeterSystem) -> Vec<(Gen, Elem)> {
        let mut out = Vec::new();
        for &y in self.ideal.members() {
            for s in 0..sys.rank() {
                if self.case(sys, s, y) == IdealCase::WA {
                    out.push((s, y));
                }
            }
        }
        out
    }

    /// `{z ∈ E : z < sy}` in the Bruhat order.
    pub fn admissible_z(&self, sys: &CoxeterSystem, s: Gen, y: Elem) -> Vec<Elem> {
        let sy = sys.lmul(s, y);
        self.ideal.members().iter().copied().filter(|&z| sys.bruhat_lt(z, sy)).collect()
    }

    /// Rows must sit on weak ascents, use admissible `z`, and (for `u = -1`)
    /// lie in `q_s ℤ[Γ]`.
    pub fn check_entries(&self, alg: &HeckeAlgebra<'_>) -> Vec<String> {
        let sys = alg.system();
        let mut bad = Vec::new();
        for &(s, y) in &self.wa_pairs(sys) {
            if !self.rows.contains_key(&(s, y)) {
                bad.push(Error::MissingRTableEntry { s: sys.name(s).into(), y: sys.format(y) }.to_string());
            }
        }
        for (&(s, y), row) in &self.rows {
            let on_wa = self.ideal.contains(y) && self.case(sys, s, y) == IdealCase::WA;
            let admissible = self.admissible_z(sys, s, y);
            for (&z, r) in row {
                let in_ideal = self.variant == Variant::Qs || alg.weights().in_qs_ideal(r, s);
                if !on_wa || !admissible.contains(&z) || !in_ideal {
                    bad.push(
                        Error::InadmissibleRTableEntry { s: sys.name(s).into(), y: sys.format(y), z: sys.format(z) }
                            .to_string(),
                    );
                }
            }
        }
        bad
    }
}

/// The module spanned by `{Γ_y : y ∈ E}` with the four-case action.
#[derive(Debug)]
pub struct IdealModule<'a> {
    alg: &'a HeckeAlgebra<'a>,
    datum: WGraphIdealDatum,
    bar_cache: BarCache,
}

impl<'a> IdealModule<'a> {
    pub fn new(alg: &'a HeckeAlgebra<'a>, datum: WGraphIdealDatum) -> Self {
        let n = alg.system().order();
        IdealModule { alg, datum, bar_cache: BarCache::new(n) }
    }

    pub fn datum(&self) -> &WGraphIdealDatum {
        &self.datum
    }

    pub fn variant(&self) -> Variant {
        self.datum.variant
    }

    /// Entry checks followed by the module and involution checks.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = self.datum.check_entries(self.alg);
        if bad.is_empty() {
            match check_module(self) {
                Ok(more) => bad.extend(more),
                Err(e) => bad.push(e.to_string()),
            }
        }
        bad
    }
}

impl HeckeModule for IdealModule<'_> {
    fn algebra(&self) -> &HeckeAlgebra<'_> {
        self.alg
    }

    fn basis(&self) -> &[Elem] {
        self.datum.ideal.members()
    }

    fn in_basis(&self, y: Elem) -> bool {
        self.datum.ideal.contains(y)
    }

    fn gen_act_basis(&self, s: Gen, y: Elem) -> Result<LinComb> {
        let sys = self.alg.system();
        let q = self.alg.q_s(s);
        let sy = sys.lmul(s, y);
        Ok(match self.datum.case(sys, s, y) {
            IdealCase::SD => {
                let mut out = LinComb::term(sy, q.clone());
                out.add_term(y, &(q - &Scalar::one()));
                out
            }
            IdealCase::SA => LinComb::basis(sy),
            IdealCase::WD => LinComb::term(y, self.datum.variant.u(q)),
            IdealCase::WA => {
                let row = self
                    .datum
                    .rows
                    .get(&(s, y))
                    .ok_or_else(|| Error::MissingRTableEntry { s: sys.name(s).into(), y: sys.format(y) })?;
                let mut out = LinComb::term(y, self.datum.variant.dual().u(q));
                for (&z, r) in row {
                    out.add_term(z, &-r);
                }
                out
            }
        })
    }

    fn bar_cache(&self) -> &BarCache {
        &self.bar_cache
    }
}
