//! JSON and CSV formats for systems, ideals, structure polynomials, W-graphs
//! and R-polynomial tables.
//!
//! Elements are written as ShortLex words (generator names concatenated, `e`
//! for the identity). Scalars are lists of `[doubled exponent, coefficient]`
//! pairs in ascending exponent order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Elem, GenSet, IdealE, DEFAULT_ORDER_CAP, DEFAULT_ROOT_CAP};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::laurent::{Scalar, WeightFunction};
use crate::parabolic::Variant;
use crate::rpoly::{Normalization, RTable};
use crate::wgraph::{RRows, WGraphDatum, WGraphEdge, WGraphIdealDatum};

fn config_err(e: serde_json::Error) -> Error {
    Error::Config(e.to_string())
}

/// A Coxeter matrix entry: a bond order, or `0` / `"inf"` for no relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Order(u32),
    Symbol(String),
}

impl MatrixEntry {
    fn order(&self) -> Result<Option<u32>> {
        match self {
            MatrixEntry::Order(0) => Ok(None),
            MatrixEntry::Order(m) => Ok(Some(*m)),
            MatrixEntry::Symbol(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Ok(None),
            MatrixEntry::Symbol(s) => Err(Error::Config(format!("bad matrix entry {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<MatrixEntry>>,
    /// Weight of each generator in whole `γ` units; equal parameters if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Vec<i32>>>,
    /// Cap on the number of positive roots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(config_err)
    }

    pub fn build(&self) -> Result<(CoxeterSystem, WeightFunction)> {
        let rows = self
            .matrix
            .iter()
            .map(|row| row.iter().map(MatrixEntry::order).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let matrix = CoxeterMatrix::new(rows)?;
        let cap = self.cap.unwrap_or(DEFAULT_ROOT_CAP);
        let sys = CoxeterSystem::build_with(matrix, self.generators.clone(), cap, DEFAULT_ORDER_CAP)?;
        let weights = match &self.weights {
            None => WeightFunction::equal(sys.rank()),
            Some(map) => {
                if let Some(extra) = map.keys().find(|k| !self.generators.contains(k)) {
                    return Err(Error::Config(format!("weight given for unknown generator {extra:?}")));
                }
                let values = self
                    .generators
                    .iter()
                    .map(|g| map.get(g).cloned().ok_or_else(|| Error::Config(format!("no weight for generator {g:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                let rank = values.first().map_or(1, Vec::len);
                WeightFunction::from_units(rank, &values)?
            }
        };
        weights.validate(sys.matrix())?;
        Ok((sys, weights))
    }
}

/// A word given either as a list of generator names or as one string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Word {
    Letters(Vec<String>),
    Text(String),
}

impl Word {
    pub fn resolve(&self, sys: &CoxeterSystem) -> Result<Elem> {
        let gens = match self {
            Word::Letters(names) => names.iter().map(|n| sys.gen_by_name(n)).collect::<Result<Vec<_>>>()?,
            Word::Text(text) => sys.parse_word(text)?,
        };
        sys.canonical(&gens)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealConfig {
    pub generators: Vec<Word>,
}

impl IdealConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(config_err)
    }

    /// The suffix-closure of the listed elements.
    pub fn build(&self, sys: &CoxeterSystem) -> Result<IdealE> {
        let gens = self.generators.iter().map(|w| w.resolve(sys)).collect::<Result<Vec<_>>>()?;
        Ok(IdealE::closure(sys, &gens))
    }
}

type Pairs = Vec<(Vec<i32>, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTableRow {
    pub s: String,
    pub y: String,
    pub z: String,
    pub poly: Pairs,
}

/// Reads an r-table file for the ideal `E` and reference set `J`.
pub fn read_r_rows(sys: &CoxeterSystem, text: &str) -> Result<RRows> {
    let rows: Vec<RTableRow> = serde_json::from_str(text).map_err(config_err)?;
    let mut out = RRows::new();
    for row in rows {
        let s = sys.gen_by_name(&row.s)?;
        let y = sys.parse_elem(&row.y)?;
        let z = sys.parse_elem(&row.z)?;
        let poly = Scalar::from_pairs(&row.poly)?;
        let slot = out.entry((s, y)).or_default();
        if !poly.is_zero() {
            slot.insert(z, poly);
        }
    }
    Ok(out)
}

pub fn load_datum(sys: &CoxeterSystem, ideal: IdealE, j: GenSet, variant: Variant, text: &str) -> Result<WGraphIdealDatum> {
    let mut datum = WGraphIdealDatum::with_empty_rows(sys, ideal.clone(), j, variant)?;
    let mut rows = datum.rows().clone();
    for (key, row) in read_r_rows(sys, text)? {
        rows.insert(key, row);
    }
    datum = WGraphIdealDatum::new(sys, ideal, j, variant, rows)?;
    Ok(datum)
}

/// Every weak-ascent row, zero entries omitted, in `(s, y, z)` order.
pub fn write_r_rows(alg: &HeckeAlgebra<'_>, datum: &WGraphIdealDatum) -> Vec<RTableRow> {
    let sys = alg.system();
    let mut out = Vec::new();
    for (&(s, y), row) in datum.rows() {
        for (&z, poly) in row {
            out.push(RTableRow {
                s: sys.name(s).to_string(),
                y: sys.format(y),
                z: sys.format(z),
                poly: poly.to_pairs(alg.gamma_rank()),
            });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuEdge {
    pub x: String,
    pub y: String,
    pub s: String,
    pub poly: Pairs,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroEdge {
    pub s: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WGraphConfig {
    pub vertices: Vec<String>,
    #[serde(rename = "I")]
    pub descents: Vec<Vec<String>>,
    #[serde(default)]
    pub mu: Vec<MuEdge>,
    #[serde(default)]
    pub zero_edges: Vec<ZeroEdge>,
}

impl WGraphConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(config_err)
    }

    pub fn build(&self, sys: &CoxeterSystem) -> Result<WGraphDatum> {
        let vertex = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Config(format!("unknown vertex {name:?}")))
        };
        let descents = self
            .descents
            .iter()
            .map(|names| names.iter().map(|n| sys.gen_by_name(n)).collect::<Result<GenSet>>())
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .mu
            .iter()
            .map(|e| {
                Ok(WGraphEdge { x: vertex(&e.x)?, y: vertex(&e.y)?, s: sys.gen_by_name(&e.s)?, mu: Scalar::from_pairs(&e.poly)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut zero_edges = BTreeMap::new();
        for e in &self.zero_edges {
            zero_edges.insert((sys.gen_by_name(&e.s)?, vertex(&e.from)?), vertex(&e.to)?);
        }
        Ok(WGraphDatum { vertices: self.vertices.clone(), descents, edges, zero_edges })
    }
}

/// Where an R-table came from, written in front of every export.
#[derive(Clone, Debug, Serialize)]
pub struct TableContext {
    pub kind: String,
    pub generators: Vec<String>,
    pub weights: Vec<Vec<i32>>,
    pub gamma: String,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub normalization: String,
    pub out_of_index: String,
}

impl TableContext {
    pub fn new(alg: &HeckeAlgebra<'_>, kind: &str, norm: Normalization) -> Self {
        let sys = alg.system();
        TableContext {
            kind: kind.to_string(),
            generators: sys.names().to_vec(),
            weights: (0..sys.rank()).map(|s| alg.weights().units(s)).collect(),
            gamma: format!("Z^{} with lexicographic order, exponents stored doubled", alg.gamma_rank()),
            j: None,
            ideal: None,
            variant: None,
            normalization: norm.as_str().to_string(),
            out_of_index: "R = 0 outside the index set".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub sigma: String,
    pub tau: String,
    pub poly: String,
    pub terms: Pairs,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableExport {
    pub context: TableContext,
    pub entries: Vec<TableEntry>,
}

impl TableExport {
    pub fn new(alg: &HeckeAlgebra<'_>, context: TableContext, table: &RTable) -> Self {
        let sys = alg.system();
        let rank = alg.gamma_rank();
        let entries = table
            .entries()
            .map(|(s, t, c)| TableEntry {
                sigma: sys.format(s),
                tau: sys.format(t),
                poly: c.display(rank).to_string(),
                terms: c.to_pairs(rank),
            })
            .collect();
        TableExport { context, entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// `#`-prefixed context lines followed by `sigma,tau,poly` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let ctx = serde_json::to_value(&self.context).expect("plain data serializes");
        if let serde_json::Value::Object(map) = ctx {
            for (k, v) in map {
                out.push_str(&format!("# {k}: {v}\n"));
            }
        }
        out.push_str("sigma,tau,poly\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{}\n", e.sigma, e.tau, e.poly));
        }
        out
    }
}
