//! Verification records and report writers. The JSON payload is split into
//! a deterministic `records` block and a `meta` block holding timing, so
//! two runs with the same flags diff cleanly on the records.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// computed must equal predicted
    Eq,
    /// computed must not exceed predicted (upper-bound statements)
    Le,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub statement: String,
    pub params: String,
    pub relation: Relation,
    pub predicted: u64,
    pub computed: u64,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(skip)]
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub cache_hit: bool,
}

impl VerifyRecord {
    pub fn new(
        statement: &str,
        params: String,
        relation: Relation,
        predicted: u64,
        computed: u64,
    ) -> Self {
        let matched = match relation {
            Relation::Eq => predicted == computed,
            Relation::Le => computed <= predicted,
        };
        VerifyRecord {
            statement: statement.to_string(),
            params,
            relation,
            predicted,
            computed,
            matched,
            elapsed_ms: 0,
            cache_hit: false,
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.matched { "ok" } else { "MISMATCH" };
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Le => "<=",
        };
        format!(
            "{:<8} {:<28} predicted {} {:>4}  computed {:>4}  {}",
            self.statement, self.params, rel, self.predicted, self.computed, verdict
        )
    }
}

/// The deterministic payload (records only), serialized stably.
pub fn records_json(records: &[VerifyRecord]) -> serde_json::Value {
    serde_json::json!({ "records": records })
}

#[derive(Serialize)]
struct FullReport<'a> {
    records: &'a [VerifyRecord],
    meta: Meta<'a>,
}

#[derive(Serialize)]
struct Meta<'a> {
    tool_version: &'a str,
    elapsed_ms: Vec<u64>,
    cache_hits: Vec<bool>,
}

pub fn write_json(path: &Path, records: &[VerifyRecord]) -> anyhow::Result<()> {
    let report = FullReport {
        records,
        meta: Meta {
            tool_version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: records.iter().map(|r| r.elapsed_ms).collect(),
            cache_hits: records.iter().map(|r| r.cache_hit).collect(),
        },
    };
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, &report)?;
    writeln!(f)?;
    Ok(())
}

pub fn write_csv(path: &Path, records: &[VerifyRecord]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["statement", "params", "relation", "predicted", "computed", "match"])?;
    for r in records {
        let rel = match r.relation {
            Relation::Eq => "eq",
            Relation::Le => "le",
        };
        w.write_record([
            r.statement.as_str(),
            r.params.as_str(),
            rel,
            &r.predicted.to_string(),
            &r.computed.to_string(),
            &r.matched.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
