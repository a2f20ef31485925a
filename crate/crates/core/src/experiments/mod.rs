//! Experiment harness: reproducible runs binding codes, channels and
//! analysis, with CSV output and per-assertion pass/fail records.

mod kinds;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A fully explicit run description. There are no hidden defaults: every
/// field, including thread count and all kind parameters, is part of the
/// config and of the result provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub kind: String,
    pub seed: u64,
    pub threads: usize,
    pub params: serde_json::Value,
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let config: ExperimentConfig =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("config: {e}")))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                config.schema_version
            )));
        }
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// One checked relation: `name: observed RELATION expected`.
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub relation: String,
    pub observed: f64,
    pub expected: f64,
    pub ci: Option<(f64, f64)>,
    pub pass: bool,
}

impl Assertion {
    pub fn le(name: impl Into<String>, observed: f64, expected: f64) -> Self {
        Assertion {
            name: name.into(),
            relation: "<=".into(),
            observed,
            expected,
            ci: None,
            pass: observed <= expected,
        }
    }

    pub fn ge(name: impl Into<String>, observed: f64, expected: f64) -> Self {
        Assertion {
            name: name.into(),
            relation: ">=".into(),
            observed,
            expected,
            ci: None,
            pass: observed >= expected,
        }
    }

    pub fn eq_int(name: impl Into<String>, observed: u64, expected: u64) -> Self {
        Assertion {
            name: name.into(),
            relation: "==".into(),
            observed: observed as f64,
            expected: expected as f64,
            ci: None,
            pass: observed == expected,
        }
    }

    pub fn is_true(name: impl Into<String>, pass: bool) -> Self {
        Assertion {
            name: name.into(),
            relation: "==".into(),
            observed: f64::from(u8::from(pass)),
            expected: 1.0,
            ci: None,
            pass,
        }
    }

    pub fn with_ci(mut self, ci: (f64, f64)) -> Self {
        self.ci = Some(ci);
        self
    }
}

/// One CSV record. The schema is fixed: experiment id, parameter string,
/// estimate, interval, trials, seed.
#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub experiment: String,
    pub parameters: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Everything a run produces. Re-running the same config yields an identical
/// report; no timestamps enter the output.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub kind: String,
    pub seed: u64,
    pub version: String,
    pub assertions: Vec<Assertion>,
    pub rows: Vec<CsvRow>,
}

impl RunReport {
    pub fn new(kind: &str, seed: u64) -> Self {
        RunReport {
            kind: kind.into(),
            seed,
            version: VERSION.into(),
            assertions: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "experiment",
            "parameters",
            "estimate",
            "ci_low",
            "ci_high",
            "trials",
            "seed",
        ])
        .expect("csv header");
        for row in &self.rows {
            w.write_record([
                row.experiment.as_str(),
                row.parameters.as_str(),
                &format!("{}", row.estimate),
                &format!("{}", row.ci_low),
                &format!("{}", row.ci_high),
                &row.trials.to_string(),
                &row.seed.to_string(),
            ])
            .expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
    }

    /// Human-readable summary: one PASS/FAIL line per assertion plus an
    /// environment stamp.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} (version {}, seed {})",
            self.kind, self.version, self.seed
        );
        for a in &self.assertions {
            let ci =
                a.ci.map(|(lo, hi)| format!(" ci=[{lo:.6}, {hi:.6}]"))
                    .unwrap_or_default();
            let _ = writeln!(
                out,
                "{} {}: {} {} {}{}",
                if a.pass { "PASS" } else { "FAIL" },
                a.name,
                a.observed,
                a.relation,
                a.expected,
                ci
            );
        }
        out
    }
}

/// A catalog entry: the kind, what it checks, and a ready-to-run desk-scale
/// config.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub kind: &'static str,
    pub description: &'static str,
    /// Index of the acceptance criterion this kind implements, if any.
    pub criterion: Option<usize>,
    pub default_params: serde_json::Value,
}

impl CatalogEntry {
    pub fn default_config(&self, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            kind: self.kind.into(),
            seed,
            threads: 1,
            params: self.default_params.clone(),
            out: None,
        }
    }
}

pub fn list_experiments() -> Vec<CatalogEntry> {
    kinds::catalog()
}

/// Edit distance on kind names, for the nearest-match hint.
fn byte_edit_distance(a: &str, b: &str) -> usize {
    let a = a.as_bytes();
    let b = b.as_bytes();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb {
                prev[j]
            } else {
                prev[j + 1].min(cur[j]).min(prev[j]) + 1
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Run a config to a report. Worker count changes scheduling only; the
/// numeric content of the report is a function of `(kind, params, seed)`.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    let catalog = kinds::catalog();
    if !catalog.iter().any(|e| e.kind == config.kind) {
        let nearest = catalog
            .iter()
            .min_by_key(|e| byte_edit_distance(&config.kind, e.kind))
            .expect("catalog non-empty");
        return Err(Error::InvalidParameter(format!(
            "unknown experiment kind {:?}; nearest match is {:?}",
            config.kind, nearest.kind
        )));
    }
    let parallel = config.threads > 1;
    let execute = || kinds::dispatch(config, parallel);
    if parallel {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(execute)
    } else {
        execute()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrip() {
        let config = ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            kind: "channel-budgets".into(),
            seed: 7,
            threads: 1,
            params: serde_json::json!({"m": 1000, "delta": 0.1, "samples": 10}),
            out: None,
        };
        let parsed = ExperimentConfig::from_json(&config.to_json()).unwrap();
        assert_eq!(parsed, config);
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = r#"{"schema_version":1,"kind":"x","seed":1,"threads":1,"params":{},"out":null,"extra":3}"#;
        assert!(ExperimentConfig::from_json(bad).is_err());
    }

    #[test]
    fn unknown_kind_names_nearest() {
        let config = ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            kind: "chanel-budgets".into(),
            seed: 1,
            threads: 1,
            params: serde_json::json!({}),
            out: None,
        };
        let err = run(&config).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("channel-budgets"), "{msg}");
    }

    #[test]
    fn catalog_covers_criteria() {
        let catalog = list_experiments();
        assert!(!catalog.is_empty());
        let mut covered: Vec<usize> = catalog.iter().filter_map(|e| e.criterion).collect();
        covered.sort_unstable();
        covered.dedup();
        assert_eq!(covered, (1..=12).collect::<Vec<_>>());
    }
}
