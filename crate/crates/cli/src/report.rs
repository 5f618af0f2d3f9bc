use serde::Serialize;

use monotone_tr::{format_rational, Rational};

pub const SCHEMA: &str = "monotone-tr/v1";

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Record {
    pub fn new(suite: &'static str, q: u32, method: impl Into<String>, agree: bool) -> Self {
        Record { suite, q, g: None, n: None, mu: None, method: method.into(), value: None, agree, wall_ms: None }
    }

    pub fn with_g(mut self, g: i64) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_mu(mut self, mu: &[u32]) -> Self {
        let parts: Vec<String> = mu.iter().map(u32::to_string).collect();
        self.mu = Some(parts.join(","));
        self
    }

    pub fn with_value(mut self, v: &Rational) -> Self {
        self.value = Some(format_rational(v));
        self
    }
}

/// A full verification run. `agree` is the conjunction of the records.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub q: Vec<u32>,
    pub records: Vec<Record>,
    pub agree: bool,
}

impl Report {
    pub fn new(suite: &str, q: &[u32], records: Vec<Record>) -> Self {
        let agree = records.iter().all(|r| r.agree);
        Report { schema: SCHEMA, suite: suite.to_string(), q: q.to_vec(), records, agree }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub q: u32,
    pub g: i64,
    pub mu: String,
    pub connected: String,
    pub disconnected: String,
    /// `Some(agree)` when the row was confirmed by enumeration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub schema: &'static str,
    pub kind: &'static str,
    pub q: u32,
    pub gmax: u32,
    pub mumax: u32,
    pub sample: f64,
    pub rows: Vec<TableRow>,
    pub agree: bool,
}
