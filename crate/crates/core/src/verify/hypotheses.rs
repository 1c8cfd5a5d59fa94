//! Standing hypotheses of the ideal and factorization claims, reported as
//! named gates.

use crate::coxeter::{DkSplit, GenSet, IdealE};
use crate::parabolic::Variant;

use super::{CheckReport, Params, Session, Status, Tally};

pub(super) fn check(sess: &Session<'_>, ideal: Option<&IdealE>, j: GenSet, k: Option<GenSet>) -> CheckReport {
    let sys = sess.system();
    let mut t = Tally::default();
    let gate = |t: &mut Tally, name: &str, outcome: Result<(), String>| {
        t.check(outcome.is_ok(), || format!("{name}: {}", outcome.clone().unwrap_err()));
        if outcome.is_ok() {
            t.note(format!("{name}: ok"));
        }
    };

    let pos = ideal.map(|e| e.pos_raw(sys));
    if let Some(e) = ideal {
        gate(&mut t, "Pos(E) = S \\ E", e.pos(sys).map(|_| ()).map_err(|e| e.to_string()));
    }
    let k = k.or(pos).unwrap_or(sys.generators());
    if let Some(pos) = pos {
        let same = if pos == k { Ok(()) } else { Err(format!("K = {} but Pos(E) = {}", sys.format_set(k), sys.format_set(pos))) };
        gate(&mut t, "K = Pos(E)", same);
    }
    let nested = if j.is_subset(k) { Ok(()) } else { Err(format!("{} is not contained in {}", sys.format_set(j), sys.format_set(k))) };
    gate(&mut t, "J in K", nested.clone());

    if let Some(e) = ideal {
        let split = DkSplit::compute(sys, e, j);
        gate(&mut t, "dominating suffix", split.as_ref().map(|_| ()).map_err(|e| e.to_string()));
        if let Ok(split) = &split {
            let names: Vec<String> = split.e_bar.iter().map(|&x| sys.format(x)).collect();
            t.note(format!("|D_K^1| = {}, |D_K^2| = {}, E-bar = {{{}}}", split.d1.len(), split.d2.len(), names.join(",")));
        }
        if e.pos(sys).is_ok() && j.is_subset(e.pos_raw(sys)) {
            for variant in [Variant::MinusOne, Variant::Qs] {
                let solved = sess.ideal_module(e, j, variant).map(|_| ()).map_err(|e| e.to_string());
                gate(&mut t, &format!("structure polynomials ({})", variant.as_str()), solved);
            }
        }
    }

    if nested.is_ok() {
        let rep = sys.check_factorization_property(j, k);
        let outcome = match &rep {
            Ok(r) if r.passed() => Ok(()),
            Ok(r) => {
                let names: Vec<String> = r.unmatched.iter().map(|&w| sys.format(w)).collect();
                Err(format!("D_K x F_J -> D_J fails; elements without a unique factorization: {{{}}}", names.join(",")))
            }
            Err(e) => Err(e.to_string()),
        };
        gate(&mut t, "factorization D_J = D_K . F_J", outcome);
        let f_j: Vec<String> = sys.parabolic_subgroup(k.difference(j)).into_iter().map(|w| sys.format(w)).collect();
        t.note(format!("F_J = {{{}}}", f_j.join(",")));
    }

    let params = Params { ideal: ideal.cloned(), j: Some(j), k: Some(k), ..Params::default() };
    CheckReport {
        claim: "hypotheses".into(),
        instance: sess.describe_instance(&params),
        status: if t.failures == 0 { Status::Pass } else { Status::Fail },
        precondition: None,
        checked: t.checked,
        failures: t.failures,
        witnesses: t.witnesses,
        notes: t.notes,
        timing_ms: None,
    }
}
