//! Experiment configurations.
//!
//! A config names the command, the seed that determines every random choice
//! of the run, the command parameters, and an optional results path. Configs
//! round-trip losslessly through both accepted file forms: a JSON object, or
//! flat `key=value` lines (unknown keys become parameters; values parse as
//! JSON scalars when they can, strings otherwise).
//!
//! The environment variable `QCOMM_SEED` overrides the configured seed.

use crate::CliError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SEED_ENV: &str = "QCOMM_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub seed: u64,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn new(command: &str, seed: u64) -> Self {
        ExperimentConfig {
            command: command.to_string(),
            seed,
            params: BTreeMap::new(),
            out: None,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Applies the `QCOMM_SEED` override if present.
    pub fn with_env_seed(mut self) -> Result<Self, CliError> {
        if let Ok(text) = std::env::var(SEED_ENV) {
            let seed = text
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("{SEED_ENV}={text} is not a u64")))?;
            self.seed = seed;
        }
        Ok(self)
    }

    /// Parses either accepted file form, deciding by the first
    /// non-whitespace byte.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            serde_json::from_str(text)
                .map_err(|e| CliError::Usage(format!("config JSON: {e}")))
        } else {
            Self::parse_key_value(text)
        }
    }

    fn parse_key_value(text: &str) -> Result<Self, CliError> {
        let mut command = None;
        let mut seed = None;
        let mut out = None;
        let mut params = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected key=value, got {line:?}",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "command" => command = Some(value.to_string()),
                "seed" => {
                    seed = Some(value.parse::<u64>().map_err(|_| {
                        CliError::Usage(format!("config line {}: bad seed {value:?}", lineno + 1))
                    })?)
                }
                "out" => out = Some(value.to_string()),
                _ => {
                    let parsed = serde_json::from_str::<serde_json::Value>(value)
                        .unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
                    params.insert(key.to_string(), parsed);
                }
            }
        }
        Ok(ExperimentConfig {
            command: command
                .ok_or_else(|| CliError::Usage("config is missing command=".to_string()))?,
            seed: seed.unwrap_or(0),
            params,
            out,
        })
    }

    /// The flat `key=value` rendering; parsing it back reproduces the config.
    pub fn to_key_value(&self) -> String {
        let mut lines = vec![
            format!("command={}", self.command),
            format!("seed={}", self.seed),
        ];
        if let Some(out) = &self.out {
            lines.push(format!("out={out}"));
        }
        for (key, value) in &self.params {
            lines.push(format!("{key}={value}"));
        }
        lines.join("\n")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serialization")
    }

    // Typed parameter accessors; named parameters always validate.

    pub fn u64_param(&self, key: &str, default: Option<u64>) -> Result<u64, CliError> {
        match self.params.get(key) {
            Some(v) => v
                .as_u64()
                .ok_or_else(|| CliError::Validation(format!("parameter {key} must be a u64"))),
            None => default
                .ok_or_else(|| CliError::Validation(format!("missing required parameter {key}"))),
        }
    }

    pub fn f64_param(&self, key: &str, default: Option<f64>) -> Result<f64, CliError> {
        match self.params.get(key) {
            Some(v) => v
                .as_f64()
                .ok_or_else(|| CliError::Validation(format!("parameter {key} must be a number"))),
            None => default
                .ok_or_else(|| CliError::Validation(format!("missing required parameter {key}"))),
        }
    }

    pub fn str_param(&self, key: &str, default: Option<&str>) -> Result<String, CliError> {
        match self.params.get(key) {
            Some(serde_json::Value::String(s)) => Ok(s.clone()),
            Some(v) => Ok(v.to_string()),
            None => default
                .map(str::to_string)
                .ok_or_else(|| CliError::Validation(format!("missing required parameter {key}"))),
        }
    }

    pub fn bool_param(&self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.params.get(key) {
            Some(v) => v
                .as_bool()
                .ok_or_else(|| CliError::Validation(format!("parameter {key} must be a bool"))),
            None => Ok(default),
        }
    }

    /// Comma-separated list parameter, e.g. `ns=8,16,32`.
    pub fn list_param(&self, key: &str, default: &str) -> Result<Vec<String>, CliError> {
        let text = self.str_param(key, Some(default))?;
        Ok(text
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect())
    }
}
