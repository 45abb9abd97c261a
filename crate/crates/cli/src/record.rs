//! Result records: one JSON line per run, plus CSV flattening for plots.

use crate::CliError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub command: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    /// Non-numeric payloads (hex encodings and the like).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub artifacts: BTreeMap<String, String>,
    pub seed: u64,
    /// Wall-clock duration of the run; the only field allowed to differ
    /// between reruns of the same config.
    pub wall_time_ms: f64,
}

impl ReportRecord {
    pub fn new(command: &str, seed: u64) -> Self {
        ReportRecord {
            command: command.to_string(),
            params: BTreeMap::new(),
            metrics: BTreeMap::new(),
            holds: None,
            artifacts: BTreeMap::new(),
            seed,
            wall_time_ms: 0.0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn holds(mut self, holds: bool) -> Self {
        self.holds = Some(holds);
        self
    }

    pub fn artifact(mut self, key: &str, value: String) -> Self {
        self.artifacts.insert(key.to_string(), value);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization")
    }
}

/// Appends records as JSON lines to a writer.
pub fn write_json_lines(records: &[ReportRecord], mut out: impl Write) -> Result<(), CliError> {
    for record in records {
        writeln!(out, "{}", record.to_json_line())?;
    }
    Ok(())
}

/// Parses a JSON-lines results file.
pub fn read_json_lines(text: &str) -> Result<Vec<ReportRecord>, CliError> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line)
                .map_err(|e| CliError::Validation(format!("bad record line: {e}")))
        })
        .collect()
}

/// Flattens records to CSV: fixed columns, then the sorted union of
/// parameter keys (`param_*`) and metric keys (`metric_*`).
pub fn records_to_csv(records: &[ReportRecord], out: impl Write) -> Result<(), CliError> {
    let mut param_keys = BTreeSet::new();
    let mut metric_keys = BTreeSet::new();
    for r in records {
        param_keys.extend(r.params.keys().cloned());
        metric_keys.extend(r.metrics.keys().cloned());
    }
    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec!["command".to_string(), "seed".to_string(), "holds".to_string()];
    header.extend(param_keys.iter().map(|k| format!("param_{k}")));
    header.extend(metric_keys.iter().map(|k| format!("metric_{k}")));
    header.push("wall_time_ms".to_string());
    writer
        .write_record(&header)
        .map_err(|e| CliError::Io(e.to_string()))?;
    for r in records {
        let mut row = vec![
            r.command.clone(),
            r.seed.to_string(),
            r.holds.map(|h| h.to_string()).unwrap_or_default(),
        ];
        for key in &param_keys {
            row.push(match r.params.get(key) {
                Some(serde_json::Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            });
        }
        for key in &metric_keys {
            row.push(
                r.metrics
                    .get(key)
                    .map(|v| format!("{v}"))
                    .unwrap_or_default(),
            );
        }
        row.push(format!("{}", r.wall_time_ms));
        writer
            .write_record(&row)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}
