//! JSON shapes written by the commands. Rationals go out as `"p/q"` strings,
//! integers as JSON integers.

use jmult::dual::Facet;
use jmult::geometry::Rational;
use jmult::newton::NewtonData;
use jmult::oracle::ConvergenceReport;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::parse::IdealSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Big integer written as a JSON integer; falls back to a decimal string past
/// the 128-bit range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i128() {
            Some(v) => s.serialize_i128(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio(pub Rational);

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Serialize)]
pub struct IdealEcho {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub unit: bool,
}

impl IdealEcho {
    pub fn new(spec: &IdealSpec, unit: bool) -> Self {
        Self {
            vars: spec.vars.clone(),
            gens: spec.gens.clone(),
            cone: spec.cone.clone(),
            unit,
        }
    }
}

#[derive(Serialize)]
pub struct FacetJson {
    pub normal: Vec<Int>,
    pub offset: Ratio,
    pub bounded: bool,
}

impl From<&Facet> for FacetJson {
    fn from(f: &Facet) -> Self {
        Self {
            normal: f.hyperplane.normal.iter().cloned().map(Int).collect(),
            offset: Ratio(f.hyperplane.offset.clone()),
            bounded: f.bounded,
        }
    }
}

#[derive(Serialize)]
pub struct NewtonJson {
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<FacetJson>,
}

impl From<&NewtonData> for NewtonJson {
    fn from(nd: &NewtonData) -> Self {
        Self {
            vertices: nd.vertices().to_vec(),
            facets: nd.facets().iter().map(FacetJson::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct OracleRow {
    pub n: u64,
    pub length: u64,
    /// Absent at `n = 0`, where the normalization is undefined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Ratio>,
}

#[derive(Serialize)]
pub struct OracleJson {
    pub kind: &'static str,
    pub table: Vec<OracleRow>,
    pub target: Ratio,
    pub n_max: u64,
    pub gap: Ratio,
    pub relative_gap: Ratio,
    /// Same as `relative_gap`, as a float for quick reading.
    pub relative_gap_approx: f64,
}

impl OracleJson {
    pub fn new(report: &ConvergenceReport, lengths: &std::collections::BTreeMap<u64, u64>) -> Self {
        let table = lengths
            .iter()
            .map(|(&n, &length)| OracleRow {
                n,
                length,
                normalized: report.normalized_at(n).cloned().map(Ratio),
            })
            .collect();
        let rel = report.relative_gap();
        Self {
            kind: report.kind.name(),
            table,
            target: Ratio(report.target.clone()),
            n_max: report.n_max,
            gap: Ratio(report.gap.clone()),
            relative_gap_approx: rel.to_f64().unwrap_or(f64::NAN),
            relative_gap: Ratio(rel),
        }
    }
}

/// Full report written by `newton`. Multiplicities that do not apply to the
/// input (ε and spread for cone inputs, hs for non m-primary ideals) are left out.
#[derive(Serialize)]
pub struct Report {
    pub version: u32,
    pub ideal: IdealEcho,
    pub newton: NewtonJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spread: Option<usize>,
    pub j: Int,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hs: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}
