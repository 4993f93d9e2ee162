//! Machine-readable run reports.

use serde::Serialize;

use crate::engine::{TescResult, TestConfig};
use crate::stats::TauB;
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "tesc-report/1";

/// JSON Schema for [`RunReport`], shipped with the crate.
pub const SCHEMA: &str = include_str!("../schema/tesc-report-1.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedSource {
    User,
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelStatus {
    Ok,
    /// The statistic is undefined, e.g. every reference node has the same
    /// density of one event.
    Undetermined,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelReport {
    pub h: u32,
    pub status: LevelStatus,
    pub result: Option<TescResult>,
    pub error: Option<String>,
}

impl LevelReport {
    pub fn from_result(h: u32, r: Result<TescResult>) -> Self {
        match r {
            Ok(result) => LevelReport { h, status: LevelStatus::Ok, result: Some(result), error: None },
            Err(e @ Error::Degenerate(_)) => {
                LevelReport { h, status: LevelStatus::Undetermined, result: None, error: Some(e.to_string()) }
            }
            Err(e) => LevelReport { h, status: LevelStatus::Error, result: None, error: Some(e.to_string()) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub path: String,
    pub nodes: usize,
    pub edges: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventSummary {
    pub path: String,
    pub name: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransactionReport {
    pub status: LevelStatus,
    pub result: Option<TauB>,
    pub p_one_tailed: Option<f64>,
    pub error: Option<String>,
}

impl TransactionReport {
    pub fn from_result(r: Result<TauB>) -> Self {
        match r {
            Ok(t) => TransactionReport {
                status: LevelStatus::Ok,
                p_one_tailed: Some(crate::stats::normal_sf(t.z.abs())),
                result: Some(t),
                error: None,
            },
            Err(e) => TransactionReport {
                status: if matches!(e, Error::Degenerate(_)) { LevelStatus::Undetermined } else { LevelStatus::Error },
                result: None,
                p_one_tailed: None,
                error: Some(e.to_string()),
            },
        }
    }
}

/// Output of the `test` command. Everything except the `timing` fields is
/// a function of the inputs and the seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub command: Vec<String>,
    pub rng: &'static str,
    pub seed: u64,
    pub seed_source: SeedSource,
    pub config: TestConfig,
    pub levels_requested: Vec<u32>,
    pub index: Option<String>,
    pub graph: GraphSummary,
    pub events_a: EventSummary,
    pub events_b: EventSummary,
    pub results: Vec<LevelReport>,
    pub transaction_correlation: Option<TransactionReport>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Removes every `timing` member, recursively. Two runs with the same
/// inputs and seed agree exactly after this.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("timing");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
