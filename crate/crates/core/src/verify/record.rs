use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CrossCheckRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// Conclusively verified.
    Pass,
    /// Conclusively refuted: the enclosure excludes 0 or an exact residual is nonzero.
    Fail,
    /// Undecided because a resource or precision limit was hit.
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// Outcome of one numeric identity check. Enclosures are `mid ± rad`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub digits: u32,
    pub elapsed_ms: u64,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCheckRecord {
    pub name: String,
    pub status: Status,
    /// Nonempty exactly when the check failed.
    pub witness: String,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(format!("unknown format `{s}` (expected text, json or csv)")),
        }
    }
}

fn json_report<T: Serialize>(key: &str, records: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "version": 1, key: records })).expect("serializable");
    s.push('\n');
    s
}

fn csv_report<T: Serialize>(records: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("flat record");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// CSV needs every column on every row, so optional fields become empty.
#[derive(Serialize)]
struct VerificationRow<'a> {
    id: &'a str,
    status: Status,
    lhs: &'a str,
    rhs: &'a str,
    difference: &'a str,
    digits: u32,
    elapsed_ms: u64,
    provenance: &'a str,
    message: &'a str,
}

pub fn render_verification(records: &[VerificationRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json_report("records", records),
        ReportFormat::Csv => {
            let rows: Vec<VerificationRow> = records
                .iter()
                .map(|r| VerificationRow {
                    id: &r.id,
                    status: r.status,
                    lhs: &r.lhs,
                    rhs: &r.rhs,
                    difference: &r.difference,
                    digits: r.digits,
                    elapsed_ms: r.elapsed_ms,
                    provenance: &r.provenance,
                    message: r.message.as_deref().unwrap_or(""),
                })
                .collect();
            csv_report(&rows)
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in records {
                out.push_str(&format!("{:<5} {:<16} D={} ({} ms)\n", r.status.to_string(), r.id, r.digits, r.elapsed_ms));
                out.push_str(&format!("      lhs  {}\n      rhs  {}\n      diff {}\n", r.lhs, r.rhs, r.difference));
                if let Some(m) = &r.message {
                    out.push_str(&format!("      note {m}\n"));
                }
            }
            let pass = records.iter().filter(|r| r.status == Status::Pass).count();
            out.push_str(&format!("{pass}/{} passed\n", records.len()));
            out
        }
    }
}

/// Flat view for CSV, which cannot hold the notes list directly.
#[derive(Serialize)]
struct ExactRow<'a> {
    name: &'a str,
    status: Status,
    witness: &'a str,
    notes: String,
    elapsed_ms: u64,
}

pub fn render_exact(records: &[ExactCheckRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json_report("checks", records),
        ReportFormat::Csv => {
            let rows: Vec<ExactRow> = records
                .iter()
                .map(|r| ExactRow {
                    name: &r.name,
                    status: r.status,
                    witness: &r.witness,
                    notes: r.notes.join("; "),
                    elapsed_ms: r.elapsed_ms,
                })
                .collect();
            csv_report(&rows)
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in records {
                out.push_str(&format!("{:<5} {} ({} ms)\n", r.status.to_string(), r.name, r.elapsed_ms));
                if !r.witness.is_empty() {
                    out.push_str(&format!("      witness {}\n", r.witness));
                }
                for n in &r.notes {
                    out.push_str(&format!("      note {n}\n"));
                }
            }
            let pass = records.iter().filter(|r| r.status == Status::Pass).count();
            out.push_str(&format!("{pass}/{} passed\n", records.len()));
            out
        }
    }
}

pub fn render_crosscheck(r: &CrossCheckRecord, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("serializable");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut row = serde_json::to_value(r).expect("serializable");
            let m = row.as_object_mut().expect("record is an object");
            m.entry("message").or_insert_with(|| "".into());
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(m.keys()).expect("in-memory writer");
            w.write_record(m.values().map(|v| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            }))
            .expect("in-memory writer");
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
        ReportFormat::Text => {
            let mut out = format!("{:<5} crosscheck j={} x={} tol={} ({} ms)\n", r.status.to_string(), r.j, r.x, r.tol, r.elapsed_ms);
            out.push_str(&format!("      quadrature {}\n      series     {}\n      |diff|     {}\n", r.quadrature, r.series, r.difference));
            if let Some(m) = &r.message {
                out.push_str(&format!("      note {m}\n"));
            }
            out
        }
    }
}
