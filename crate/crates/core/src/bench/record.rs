use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::scene::Decor;
use crate::error::{Error, Result};

/// Scatter series for log-log plots; repeated `x` values are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSeries {
    pub label: String,
    pub points: Vec<[f64; 2]>,
    pub status: String,
    pub length: f64,
}

/// Wall-clock samples of one cell, e.g. `category = "4 workers"`,
/// `series = "n=1e5"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingGroup {
    pub category: String,
    pub series: String,
    pub values: Vec<f64>,
}

/// Everything that depends on the clock, kept apart so the rest of a record
/// is reproducible.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub groups: Vec<TimingGroup>,
    pub scalars: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub experiment: String,
    pub version: String,
    /// The spec file's key-value pairs after command-line overrides.
    pub spec: BTreeMap<String, String>,
    pub scalars: BTreeMap<String, f64>,
    pub series: Vec<Series>,
    pub paths: Vec<PathSeries>,
    pub decor: Vec<Decor>,
    pub axis_labels: Option<(String, String)>,
    /// CSV files written next to the record, relative to the output directory.
    pub files: Vec<String>,
    pub timing: Timing,
}

impl RunRecord {
    pub fn new(experiment: &str, spec: BTreeMap<String, String>) -> Self {
        Self {
            experiment: experiment.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            spec,
            scalars: BTreeMap::new(),
            series: Vec::new(),
            paths: Vec::new(),
            decor: Vec::new(),
            axis_labels: None,
            files: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}
