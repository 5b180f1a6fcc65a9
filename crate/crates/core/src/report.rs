//! Check outcomes and the JSON/CSV report format.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bimodule::ScanRow;
use crate::scalar::Field;
use crate::voa::{GradedVector, ModuleSummary, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "N/A")]
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::NotApplicable => "N/A",
        }
    }
}

/// Evidence attached to a check: a sentence, and optionally a vector in PBW
/// notation with its raw coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
}

impl Witness {
    pub fn text(summary: impl Into<String>) -> Self {
        Witness { summary: summary.into(), ..Default::default() }
    }

    pub fn with_vector<T: Field>(mut self, space: &Space<T>, v: &GradedVector<T>) -> Self {
        let symbol = space.vector_symbol();
        self.vector = Some(space.render(v));
        self.coefficients = Some(v.terms().map(|(k, c)| (k.render(&symbol), c.to_string())).collect());
        self
    }

    pub fn at_cutoff(mut self, w: u32) -> Self {
        self.cutoff = Some(w);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Witness,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, witness: Witness) -> Self {
        Check { name: name.into(), status, witness }
    }

    pub fn pass(name: impl Into<String>, summary: impl Into<String>) -> Self {
        Self::new(name, Status::Pass, Witness::text(summary))
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Self::new(name, Status::Fail, witness)
    }

    pub fn not_applicable(name: impl Into<String>, summary: impl Into<String>) -> Self {
        Self::new(name, Status::NotApplicable, Witness::text(summary))
    }

    /// PASS or FAIL on an equality of two displayed values.
    pub fn compare<V: PartialEq + std::fmt::Debug>(name: impl Into<String>, computed: V, expected: V, what: &str) -> Self {
        let summary = format!("{what}: computed {computed:?}, expected {expected:?}");
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Self::new(name, status, Witness::text(summary))
    }
}

/// Exit status of a run: 1 on any FAIL, 2 if something is INCONCLUSIVE, else 0.
pub fn exit_code(checks: &[Check]) -> i32 {
    if checks.iter().any(|c| c.status == Status::Fail) {
        1
    } else if checks.iter().any(|c| c.status == Status::Inconclusive) {
        2
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelEcho {
    pub name: String,
    pub c: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<(u32, u32)>,
    pub modules: Vec<ModuleSummary>,
}

/// Quotient table of one space, used when a report covers several spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceScan {
    pub space: String,
    pub family: String,
    pub table: Vec<ScanRow>,
    pub stabilized_dim: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coset_basis: Vec<String>,
}

/// Fusion multiplicities `N_{ij}^k` keyed by module labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTable {
    pub n: u32,
    pub labels: Vec<String>,
    /// `entries[i][j][k]`.
    pub entries: Vec<Vec<Vec<usize>>>,
}

impl FusionTable {
    pub fn get(&self, i: usize, j: usize, k: usize) -> usize {
        self.entries[i][j][k]
    }

    /// CSV with one row per `i` and one column per pair `(j, k)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i");
        for j in &self.labels {
            for k in &self.labels {
                out.push_str(&format!(",\"({j},{k})\""));
            }
        }
        out.push('\n');
        for (i, li) in self.labels.iter().enumerate() {
            out.push_str(li);
            for j in 0..self.labels.len() {
                for k in 0..self.labels.len() {
                    out.push_str(&format!(",{}", self.entries[i][j][k]));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub model: ModelEcho,
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub config: BTreeMap<String, serde_json::Value>,
    pub table: Vec<ScanRow>,
    pub stabilized_dim: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub graded_dims: BTreeMap<String, Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub scans: Vec<SpaceScan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fusion: Option<FusionTable>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.checks)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV rendering: the fusion table when present; for several scans one
    /// quotient column per scan; else the quotient table, or the checks when
    /// there is no table.
    pub fn to_csv(&self) -> String {
        if let Some(f) = &self.fusion {
            return f.to_csv();
        }
        if self.scans.len() > 1 && self.command == "compare-on" {
            let mut out = String::from("W");
            for s in &self.scans {
                out.push_str(&format!(",{}", csv_field(&format!("{} {}", s.space, s.family))));
            }
            out.push('\n');
            for (row, r) in self.scans[0].table.iter().enumerate() {
                out.push_str(&r.w.to_string());
                for s in &self.scans {
                    out.push_str(&format!(",{}", s.table[row].dim_quotient));
                }
                out.push('\n');
            }
            return out;
        }
        if self.table.is_empty() {
            let mut out = String::from("name,status,witness\n");
            for c in &self.checks {
                out.push_str(&format!("{},{},{}\n", csv_field(&c.name), c.status.as_str(), csv_field(&c.witness.summary)));
            }
            return out;
        }
        let mut out = String::from("W,dim_space,dim_span,dim_quotient\n");
        for r in &self.table {
            out.push_str(&format!("{},{},{},{}\n", r.w, r.dim_space, r.dim_span, r.dim_quotient));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
