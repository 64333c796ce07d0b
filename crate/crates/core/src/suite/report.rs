use super::config::Format;
use crate::error::{GlsError, Result};
use crate::operators::checks::CheckRecord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub records: Vec<CheckRecord>,
    /// Budgets, grids and tolerances the run used.
    pub metadata: BTreeMap<String, String>,
    pub warnings: Vec<String>,
}

impl SuiteResult {
    /// Aggregates records; the result passes iff every record does.
    pub fn from_records(suite: &str, records: Vec<CheckRecord>, metadata: BTreeMap<String, String>) -> Self {
        let mut warnings = Vec::new();
        if records.is_empty() {
            warnings.push("no checks were run".to_string());
        }
        SuiteResult { suite: suite.to_string(), pass: records.iter().all(|r| r.pass), records, metadata, warnings }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Serde adapter writing non-finite numbers as the string `"divergent"`.
pub mod finite_or_divergent {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub const DIVERGENT: &str = "divergent";

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_str(DIVERGENT)
        }
    }

    struct V;

    impl Visitor<'_> for V {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            write!(f, "a number or \"{DIVERGENT}\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            if v == DIVERGENT {
                Ok(f64::NAN)
            } else {
                Err(E::custom(format!("unexpected string `{v}`")))
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(V)
    }
}

fn csv_number(v: f64) -> String {
    if v.is_finite() {
        v.to_string()
    } else {
        finite_or_divergent::DIVERGENT.to_string()
    }
}

/// JSON (pretty, stable key order) or CSV with columns
/// `check_id,p,lhs,rhs,ratio,pass`.
pub fn emit_report(result: &SuiteResult, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(result).map_err(|e| GlsError::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| GlsError::Io(e.to_string());
            w.write_record(["check_id", "p", "lhs", "rhs", "ratio", "pass"]).map_err(io)?;
            for r in &result.records {
                w.write_record([
                    r.check_id.clone(),
                    csv_number(r.p),
                    csv_number(r.lhs),
                    csv_number(r.rhs),
                    csv_number(r.ratio),
                    r.pass.to_string(),
                ])
                .map_err(io)?;
            }
            w.into_inner().map_err(|e| GlsError::Io(e.to_string()))
        }
    }
}

/// Reads a JSON report back.
pub fn parse_report(bytes: &[u8]) -> Result<SuiteResult> {
    serde_json::from_slice(bytes).map_err(|e| GlsError::Spec(format!("bad report: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(lhs: f64, rhs: f64) -> CheckRecord {
        CheckRecord::new("k/x".into(), 2.0, lhs, rhs, 1e-6)
    }

    #[test]
    fn single_record_csv() {
        let r = SuiteResult::from_records("t", vec![record(0.5, 1.0)], BTreeMap::new());
        let csv = String::from_utf8(emit_report(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv, "check_id,p,lhs,rhs,ratio,pass\nk/x,2,0.5,1,0.5,true\n");
    }

    #[test]
    fn json_round_trip() {
        let mut meta = BTreeMap::new();
        meta.insert("tol".to_string(), "1e-6".to_string());
        let r = SuiteResult::from_records("t", vec![record(0.5, 1.0), record(1.0, 3.0), record(12.799008581310735, 0.1 + 0.2)], meta);
        let back = parse_report(&emit_report(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn non_finite_is_divergent() {
        let r = SuiteResult::from_records("t", vec![record(f64::INFINITY, 1.0)], BTreeMap::new());
        let json = String::from_utf8(emit_report(&r, Format::Json).unwrap()).unwrap();
        assert!(json.contains("\"lhs\": \"divergent\""), "{json}");
        assert!(!json.contains("inf") && !json.contains("NaN") && !json.contains("null"));
        let csv = String::from_utf8(emit_report(&r, Format::Csv).unwrap()).unwrap();
        assert!(csv.contains(",divergent,1,divergent,false"), "{csv}");
        assert!(!parse_report(json.as_bytes()).unwrap().pass);
    }

    #[test]
    fn aggregate_and_warning() {
        let ok = SuiteResult::from_records("t", vec![], BTreeMap::new());
        assert!(ok.pass && ok.warnings.len() == 1);
        let bad = SuiteResult::from_records("t", vec![record(0.5, 1.0), record(2.0, 1.0)], BTreeMap::new());
        assert!(!bad.pass);
        assert_eq!(bad.failures().count(), 1);
    }
}
