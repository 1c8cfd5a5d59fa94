//! Exhaustive verification of the module identities on a fixed system.
//!
//! A [`Session`] wraps one Hecke algebra and caches the modules built on it.
//! Each claim in [`CATALOG`] is checked on one instance at a time and yields
//! a [`CheckReport`]; [`Session::run_all`] sweeps every instance the system
//! supports.

mod claims;
mod hypotheses;

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::time::Instant;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Elem, GenSet, IdealE};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::parabolic::{ParabolicModule, Variant};
use crate::rpoly::Normalization;
use crate::wgraph::{solve_r_table, IdealModule, SolverConfig, WGraphDatum, WGraphIdealDatum};

/// Maximum number of witnesses kept per report.
pub const MAX_WITNESSES: usize = 20;
/// Largest group order accepted by the harness.
pub const DEFAULT_ORDER_LIMIT: usize = 1200;

/// Conventions echoed in every report header.
pub const CONVENTIONS: &[&str] = &[
    "index set z < sy of the ideal action read in the Bruhat order",
    "R-polynomials with an index outside the coset representatives are 0",
    "sign twist on scalars: (-1)^(half-step count of the exponent)",
    "finite W only: formal sums over W are ordinary Hecke algebra elements",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Needs {
    None,
    J,
    JK,
    E,
    EJ,
}

/// One entry of the claim catalog.
#[derive(Clone, Copy, Debug)]
pub struct Claim {
    pub id: &'static str,
    pub needs: Needs,
    pub description: &'static str,
}

pub const CATALOG: &[Claim] = &[
    Claim { id: "hecke-axioms", needs: Needs::None, description: "quadratic and braid relations on every T_w; bar and sign twist are commuting involutions and ring maps" },
    Claim { id: "pmod-axioms", needs: Needs::J, description: "both parabolic modules on D_J satisfy the relations and carry a compatible bar involution" },
    Claim { id: "rpoly-oracle", needs: Needs::None, description: "parabolic R-table for J = {} equals the classical descent recursion; R[t,t] = 1 and Bruhat vanishing for the given J" },
    Claim { id: "prop1.1", needs: Needs::J, description: "theta_J o phi_J = phi~_J o Phi; theta_J commutes with bar; eta_J o theta_J = id" },
    Claim { id: "prop1.5", needs: Needs::EJ, description: "the ideal action with solved structure polynomials is a module with a compatible bar involution (both flavours)" },
    Claim { id: "prop1.6", needs: Needs::EJ, description: "delta(Gamma_e) = Gamma~_e, delta(T_w v) = Phi(T_w) delta(v), delta commutes with bar, rho inverts delta" },
    Claim { id: "def1.2", needs: Needs::None, description: "W-graph data define a representation (supplied graph, or the one-vertex trivial and sign graphs)" },
    Claim { id: "thm2.1", needs: Needs::E, description: "every alpha in D_K has a dominating suffix y_max in E with alpha = x . y_max length-additive" },
    Claim { id: "thm2.2", needs: Needs::EJ, description: "lambda_J(T_s m_alpha) follows the five-branch table" },
    Claim { id: "cor2.3", needs: Needs::EJ, description: "closed form of lambda_J(m_alpha) through Gamma_e multiples" },
    Claim { id: "cor2.4", needs: Needs::EJ, description: "lambda_J commutes with the bar involutions" },
    Claim { id: "thm2.6", needs: Needs::EJ, description: "delta o lambda_J = lambda~_J o theta_K" },
    Claim { id: "thm2.8", needs: Needs::JK, description: "D_K x F_J -> D_J, (alpha, z) -> alpha z is a length-additive bijection" },
    Claim { id: "thm2.9", needs: Needs::JK, description: "lambda_K and lambda~_K are H-linear" },
    Claim { id: "cor2.10", needs: Needs::JK, description: "lambda_K(m_sigma) = T_sigma m_e^K" },
    Claim { id: "cor2.11", needs: Needs::JK, description: "lambda_K and lambda~_K commute with the bar involutions" },
    Claim { id: "thm2.12", needs: Needs::JK, description: "theta_K o lambda_K = lambda~_K o theta_J" },
    Claim { id: "thm2.13", needs: Needs::EJ, description: "nu = lambda_J o lambda_K o phi_J commutes with bar and the six-node diagram commutes" },
    Claim { id: "prop3.1", needs: Needs::J, description: "T_s Q_z follows the three-case rule, so the Q_z span a left ideal" },
    Claim { id: "thm3.2", needs: Needs::J, description: "mu: m_z -> Q_z is injective and H-linear; L_y^z = eps_y; coefficient recurrences hold" },
    Claim { id: "thm4.3", needs: Needs::EJ, description: "R on E_J as signed sums of R^J over E-bar x F_J" },
    Claim { id: "thm4.6", needs: Needs::EJ, description: "R on E_J as signed sums of R^K over E-bar" },
    Claim { id: "thm4.8", needs: Needs::JK, description: "R^K[a,b] = sum over z in F_J of R^J[az,b]" },
    Claim { id: "rem4.4", needs: Needs::EJ, description: "R~ on E_J as sums of R~^J (both normalizations evaluated)" },
    Claim { id: "rem4.7", needs: Needs::EJ, description: "R~ on E_J as sums of R~^K (both normalizations evaluated)" },
    Claim { id: "rem4.9", needs: Needs::JK, description: "R~^K as sums of R~^J over F_J (both normalizations evaluated)" },
];

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    CATALOG.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Instance parameters; which ones are required depends on the claim.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub j: Option<GenSet>,
    pub k: Option<GenSet>,
    pub ideal: Option<IdealE>,
    pub normalization: Option<Normalization>,
    pub wgraph: Option<WGraphDatum>,
}

#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub claim: String,
    pub params: Params,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precondition: Option<String>,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Accumulates the outcome of one check.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: usize,
    failures: usize,
    witnesses: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    /// Records a batch of already-evaluated checks and their failures.
    pub(crate) fn absorb(&mut self, checked: usize, failed: Vec<String>) {
        self.checked += checked;
        for w in failed {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

type ModuleKey = (Vec<Elem>, u64, Variant);

/// A Hecke algebra together with cached modules and solved ideal data.
pub struct Session<'a> {
    alg: &'a HeckeAlgebra<'a>,
    parabolic: RefCell<HashMap<(u64, Variant), Rc<ParabolicModule<'a>>>>,
    ideal_modules: RefCell<HashMap<ModuleKey, Result<Rc<IdealModule<'a>>>>>,
    pub solver: SolverConfig,
    pub timing: bool,
}

impl<'a> Session<'a> {
    pub fn new(alg: &'a HeckeAlgebra<'a>) -> Self {
        Session {
            alg,
            parabolic: RefCell::default(),
            ideal_modules: RefCell::default(),
            solver: SolverConfig::default(),
            timing: false,
        }
    }

    pub fn algebra(&self) -> &'a HeckeAlgebra<'a> {
        self.alg
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.alg.system()
    }

    pub(crate) fn parabolic(&self, j: GenSet, variant: Variant) -> Rc<ParabolicModule<'a>> {
        self.parabolic
            .borrow_mut()
            .entry((j.bits(), variant))
            .or_insert_with(|| Rc::new(ParabolicModule::new(self.alg, j, variant)))
            .clone()
    }

    /// The ideal module for `(E, J)` with solved structure polynomials.
    pub fn ideal_module(&self, ideal: &IdealE, j: GenSet, variant: Variant) -> Result<Rc<IdealModule<'a>>> {
        let key = (ideal.members().to_vec(), j.bits(), variant);
        if let Some(hit) = self.ideal_modules.borrow().get(&key) {
            return hit.clone();
        }
        let made = solve_r_table(self.alg, ideal, j, variant, self.solver).map(|d| Rc::new(IdealModule::new(self.alg, d)));
        self.ideal_modules.borrow_mut().insert(key, made.clone());
        made
    }

    /// Replaces the solved datum for `(E, J)` with externally supplied data.
    pub fn install_datum(&self, datum: WGraphIdealDatum) {
        let key = (datum.ideal().members().to_vec(), datum.j().bits(), datum.variant());
        self.ideal_modules.borrow_mut().insert(key, Ok(Rc::new(IdealModule::new(self.alg, datum))));
    }

    pub fn describe_instance(&self, p: &Params) -> String {
        let sys = self.system();
        let mut parts = Vec::new();
        if let Some(e) = &p.ideal {
            let gens: Vec<String> = e.generators().iter().map(|&w| sys.format(w)).collect();
            parts.push(format!("E=ideal({})", gens.join(",")));
        }
        if let Some(j) = p.j {
            parts.push(format!("J={}", sys.format_set(j)));
        }
        if let Some(k) = p.k {
            parts.push(format!("K={}", sys.format_set(k)));
        }
        if let Some(n) = p.normalization {
            parts.push(format!("normalization={}", n.as_str()));
        }
        if p.wgraph.is_some() {
            parts.push("graph=supplied".into());
        }
        if parts.is_empty() {
            "system".into()
        } else {
            parts.join(" ")
        }
    }

    fn validate_params(&self, claim: &Claim, p: &Params) -> Result<()> {
        let missing = |what: &str| Err(Error::BadParams(format!("{} needs {what}", claim.id)));
        match claim.needs {
            Needs::None => Ok(()),
            Needs::J if p.j.is_none() => missing("--J"),
            Needs::JK if p.j.is_none() || p.k.is_none() => missing("--J and --K"),
            Needs::JK if !p.j.unwrap().is_subset(p.k.unwrap()) => {
                Err(Error::BadParams(format!("{}: J must be contained in K", claim.id)))
            }
            Needs::E if p.ideal.is_none() => missing("--E"),
            Needs::EJ if p.ideal.is_none() || p.j.is_none() => missing("--E and --J"),
            _ => Ok(()),
        }
    }

    pub fn run_check(&self, spec: &CheckSpec) -> Result<CheckReport> {
        let claim = find_claim(&spec.claim)?;
        self.validate_params(claim, &spec.params)?;
        let start = Instant::now();
        let mut tally = Tally::default();
        let skipped = match claims::run(self, claim.id, &spec.params, &mut tally) {
            Ok(skip) => skip,
            Err(e @ (Error::BadParams(_) | Error::UnknownClaim(_))) => return Err(e),
            Err(e) => Some(e.to_string()),
        };
        let status = match (&skipped, tally.failures) {
            (Some(_), _) => Status::Skipped,
            (None, 0) => Status::Pass,
            (None, _) => Status::Fail,
        };
        Ok(CheckReport {
            claim: claim.id.to_string(),
            instance: self.describe_instance(&spec.params),
            status,
            precondition: skipped,
            checked: tally.checked,
            failures: tally.failures,
            witnesses: tally.witnesses,
            notes: tally.notes,
            timing_ms: self.timing.then(|| start.elapsed().as_millis() as u64),
        })
    }

    /// Ideals used by the sweep: all of them for tiny groups, otherwise the
    /// principal ideals, the coset-representative ideals and `W`.
    pub fn sweep_ideals(&self) -> Vec<IdealE> {
        let sys = self.system();
        let mut out: Vec<IdealE> = if sys.order() <= 8 {
            IdealE::all(sys)
        } else {
            let mut v: Vec<IdealE> = sys.elements().map(|w| IdealE::principal(sys, w)).collect();
            for j in sys.generators().subsets() {
                v.push(IdealE::closure(sys, &sys.min_coset_reps(j)));
            }
            v
        };
        let mut seen = std::collections::BTreeSet::new();
        out.retain(|e| seen.insert(e.members().to_vec()));
        out
    }

    /// Every claim on every instance of the sweep, in catalog order.
    pub fn run_all(&self) -> Result<Vec<CheckReport>> {
        let sys = self.system();
        let subsets: Vec<GenSet> = sys.generators().subsets().collect();
        let ideals = self.sweep_ideals();
        let mut specs = Vec::new();
        for claim in CATALOG {
            let mut push = |params: Params| specs.push(CheckSpec { claim: claim.id.to_string(), params });
            match claim.needs {
                Needs::None if claim.id == "rpoly-oracle" => {
                    for &j in &subsets {
                        push(Params { j: Some(j), ..Params::default() });
                    }
                }
                Needs::None => push(Params::default()),
                Needs::J => {
                    for &j in &subsets {
                        push(Params { j: Some(j), ..Params::default() });
                    }
                }
                Needs::JK => {
                    for &k in &subsets {
                        for j in k.subsets().filter(|&j| j != k) {
                            push(Params { j: Some(j), k: Some(k), ..Params::default() });
                        }
                    }
                }
                Needs::E => {
                    for e in &ideals {
                        push(Params { ideal: Some(e.clone()), ..Params::default() });
                    }
                }
                Needs::EJ => {
                    for e in &ideals {
                        let k = e.pos(sys)?;
                        let mut js = vec![GenSet::EMPTY, k];
                        js.dedup();
                        for j in js {
                            push(Params { ideal: Some(e.clone()), j: Some(j), ..Params::default() });
                        }
                    }
                }
            }
        }
        specs.iter().map(|s| self.run_check(s)).collect()
    }

    pub fn check_hypotheses(&self, ideal: Option<&IdealE>, j: GenSet, k: Option<GenSet>) -> CheckReport {
        hypotheses::check(self, ideal, j, k)
    }
}

/// Header written in front of every report file.
#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<Option<u32>>>,
    pub order: usize,
    pub gamma_rank: usize,
    pub weights: Vec<Vec<i32>>,
    pub conventions: Vec<String>,
}

impl ReportHeader {
    pub fn new(alg: &HeckeAlgebra<'_>) -> Self {
        let sys = alg.system();
        let n = sys.rank();
        ReportHeader {
            generators: sys.names().to_vec(),
            matrix: (0..n).map(|s| (0..n).map(|t| sys.matrix().get(s, t)).collect()).collect(),
            order: sys.order(),
            gamma_rank: alg.gamma_rank(),
            weights: (0..n).map(|s| alg.weights().units(s)).collect(),
            conventions: CONVENTIONS.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// `true` when no report failed (skipped reports are fine).
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}
