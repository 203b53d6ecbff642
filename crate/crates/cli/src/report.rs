//! Reports: JSON with one object per record, and a CSV projection.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sumset_core::bounds::{BoundRecord, Kind, Rhs};
use sumset_core::rational::to_fraction_string;
use sumset_core::Interval;

use crate::error::Result;
use crate::instance::{set_json, set_value, write_text};

pub const CSV_HEADER: [&str; 8] = ["check", "name", "lhs", "rhs", "holds", "witness", "seed", "ms"];

/// Fractional digits that `bits` of precision justify.
pub fn digits_for(bits: u32) -> usize {
    ((bits as usize) * 3 / 10).clamp(4, 60)
}

pub fn interval_string(i: &Interval, bits: u32) -> String {
    i.to_decimal_string(digits_for(bits))
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub check: String,
    pub name: String,
    pub kind: &'static str,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_cleared: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_cleared: Option<String>,
    pub holds: bool,
    pub verdict: &'static str,
    pub witness: Value,
    pub method: String,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(skip)]
    witness_text: String,
}

impl Row {
    pub fn from_record(r: &BoundRecord, bits: u32) -> Self {
        let rhs = match &r.rhs {
            Rhs::Exact(q) => to_fraction_string(q),
            Rhs::Enclosed(i) => interval_string(i, bits),
        };
        let (lhs_cleared, rhs_cleared) = match &r.cleared {
            Some((l, rr)) => (Some(to_fraction_string(l)), Some(to_fraction_string(rr))),
            None => (None, None),
        };
        Self {
            check: r.check.into(),
            name: r.name.clone(),
            kind: match r.kind {
                Kind::Theorem => "theorem",
                Kind::Diagnostic => "diagnostic",
            },
            lhs: to_fraction_string(&r.lhs),
            rhs,
            lhs_cleared,
            rhs_cleared,
            holds: r.holds(),
            verdict: r.verdict.as_str(),
            witness: r.witness.as_ref().map_or(Value::Null, set_value),
            method: r.method.into(),
            seed: r.seed,
            ms: None,
            witness_text: r.witness.as_ref().map_or_else(String::new, set_json),
        }
    }

    pub fn is_theorem(&self) -> bool {
        self.kind == "theorem"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub source: String,
    pub precision_bits: u32,
    pub cap: usize,
    pub seed: u64,
    pub all_hold: bool,
    pub records: Vec<Row>,
}

impl Report {
    pub fn new(source: String, precision_bits: u32, cap: usize, seed: u64) -> Self {
        Self { source, precision_bits, cap, seed, all_hold: true, records: Vec::new() }
    }

    pub fn push(&mut self, row: Row, ms: Option<u64>) {
        self.all_hold &= !row.is_theorem() || row.holds;
        self.records.push(Row { ms, ..row });
    }

    pub fn first_failure(&self) -> Option<&Row> {
        self.records.iter().find(|r| r.is_theorem() && !r.holds)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for r in &self.records {
            let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
            let ms = r.ms.map(|m| m.to_string()).unwrap_or_default();
            let holds = if r.holds { "true" } else { "false" };
            w.write_record([&r.check, &r.name, &r.lhs, &r.rhs, holds, &r.witness_text, &seed, &ms])?;
        }
        let bytes = w.into_inner().expect("writing to memory");
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn write(&self, json: Option<&Path>, csv: Option<&Path>) -> Result<()> {
        if let Some(p) = json {
            write_text(p, &self.to_json())?;
        }
        if let Some(p) = csv {
            write_text(p, &self.to_csv()?)?;
        }
        Ok(())
    }

    /// One aligned line per record.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match (r.is_theorem(), r.holds) {
                (true, true) => "ok",
                (true, false) => "FAIL",
                (false, _) => "diag",
            };
            out.push_str(&format!("{tag:<4} {:<9} {:<16} {} <= {} ({})\n", r.check, r.name, r.lhs, r.rhs, r.verdict));
        }
        out
    }
}
