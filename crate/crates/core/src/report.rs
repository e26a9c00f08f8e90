//! Machine-readable report documents (schema `trl-1`). Exact big numbers are
//! written as decimal strings; the only floats are AR values.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::analytic::{CountBudget, PointCount, ScanRow};
use crate::groebner::BuchbergerConfig;
use crate::linalg::format_rational;

pub const SCHEMA: &str = "trl-1";

pub(crate) fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Budgets in force for a command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Budgets {
    pub max_pairs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_limit_ms: Option<u64>,
    pub max_vectors: u64,
    pub max_points: u64,
}

impl Budgets {
    pub fn new(groebner: &BuchbergerConfig, count: &CountBudget) -> Self {
        Budgets {
            max_pairs: groebner.max_pairs,
            time_limit_ms: groebner.time_limit.map(|d| d.as_millis() as u64),
            max_vectors: count.max_vectors,
            max_points: count.max_points,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc<T: Serialize> {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub budgets: Budgets,
    pub wall_time_ms: u64,
    pub result: T,
}

impl<T: Serialize> ReportDoc<T> {
    pub fn new(command: &'static str, input: Option<String>, budgets: Budgets, wall_time_ms: u64, result: T) -> Self {
        ReportDoc {
            schema: SCHEMA,
            command,
            input,
            budgets,
            wall_time_ms,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ArDoc {
    pub method: &'static str,
    #[serde(flatten)]
    pub count: PointCount,
    pub bias: String,
}

impl ArDoc {
    pub fn new(method: &'static str, count: PointCount) -> Self {
        let bias = format_rational(&count.bias());
        ArDoc { method, count, bias }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRowDoc {
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<ScanRow> for ScanRowDoc {
    fn from(row: ScanRow) -> Self {
        match row.result {
            Ok(c) => ScanRowDoc {
                prime: row.prime,
                count: Some(c.count.to_string()),
                ar: Some(c.ar),
                error: None,
            },
            Err(e) => ScanRowDoc {
                prime: row.prime,
                count: None,
                ar: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanDoc {
    pub ambient: usize,
    pub rows: Vec<ScanRowDoc>,
}
