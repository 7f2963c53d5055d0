//! Experiment harness: config-driven parameter sweeps writing CSV tables, SVG
//! figures and a JSON run record.
//!
//! A spec file names one experiment and its grids:
//!
//! ```text
//! experiment = nwalks_sweep
//! k_r = 0.3
//! n_walks = 1e3, 1e4, 1e5
//! seeds = 0..16
//! ```
//!
//! CSV files start with a `#` comment describing the columns and write reals
//! with 17 significant digits. Wall-clock measurements only ever go to
//! `*_timing.csv` files so every other output is byte-reproducible.

pub mod config;
mod experiments;
pub mod plot;
pub mod record;
pub mod scene;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub use config::KvConfig;
pub use plot::{render, PlotKind};
pub use record::{PathSeries, RunRecord, Series, Timing, TimingGroup};
pub use scene::{Decor, RrField, Scene};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Multistart,
    ScreeningSweep,
    VisibilitySweep,
    NwalksSweep,
    ParallelSweep,
    DimSweep,
    RrIk,
    RrLipschitz,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        Self::Multistart,
        Self::ScreeningSweep,
        Self::VisibilitySweep,
        Self::NwalksSweep,
        Self::ParallelSweep,
        Self::DimSweep,
        Self::RrIk,
        Self::RrLipschitz,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Multistart => "multistart",
            Self::ScreeningSweep => "screening_sweep",
            Self::VisibilitySweep => "visibility_sweep",
            Self::NwalksSweep => "nwalks_sweep",
            Self::ParallelSweep => "parallel_sweep",
            Self::DimSweep => "dim_sweep",
            Self::RrIk => "rr_ik",
            Self::RrLipschitz => "rr_lipschitz",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }

    /// The figure written next to the CSVs.
    pub fn plot_kind(self) -> PlotKind {
        match self {
            Self::NwalksSweep | Self::DimSweep => PlotKind::LogLog,
            Self::ParallelSweep => PlotKind::BoxTiming,
            _ => PlotKind::PathOverlay,
        }
    }
}

/// A parsed spec file plus command-line overrides.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub config: KvConfig,
    pub out_dir: PathBuf,
}

impl ExperimentSpec {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_config(KvConfig::load(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_config(KvConfig::parse(text, "<inline>")?)
    }

    pub fn from_config(config: KvConfig) -> Result<Self> {
        let name: String = config.require("experiment")?;
        let kind = ExperimentKind::parse(&name)?;
        let out_dir = PathBuf::from(config.str_or("out", &format!("out/{name}"))?);
        Ok(Self { kind, config, out_dir })
    }

    /// Replaces the seed list by the single seed `s`.
    pub fn with_seed(mut self, s: u64) -> Self {
        self.config.set("seeds", s.to_string());
        self
    }

    pub fn with_workers(mut self, w: usize) -> Self {
        self.config.set("workers", w.to_string());
        self
    }

    pub fn with_out_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        let dir = dir.into();
        self.config.set("out", dir.display().to_string());
        self.out_dir = dir;
        self
    }

    /// Sets or overrides a key, as if it were in the file.
    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.config.set(key, value);
        self
    }
}

/// Runs the experiment, writes its CSVs, SVG and `record.json` into
/// `spec.out_dir`, and returns the record.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunRecord> {
    std::fs::create_dir_all(&spec.out_dir).map_err(|e| Error::io(&spec.out_dir, e))?;
    let mut out = Output { dir: spec.out_dir.clone(), files: Vec::new() };
    let cfg = &spec.config;
    cfg.str("experiment")?;
    cfg.str("out")?;
    let mut record = match spec.kind {
        ExperimentKind::Multistart => experiments::multistart(cfg, &mut out)?,
        ExperimentKind::ScreeningSweep => experiments::screening_sweep(cfg, &mut out)?,
        ExperimentKind::VisibilitySweep => experiments::visibility_sweep(cfg, &mut out)?,
        ExperimentKind::NwalksSweep => experiments::nwalks_sweep(cfg, &mut out)?,
        ExperimentKind::ParallelSweep => experiments::parallel_sweep(cfg, &mut out)?,
        ExperimentKind::DimSweep => experiments::dim_sweep(cfg, &mut out)?,
        ExperimentKind::RrIk => experiments::rr_ik(cfg, &mut out)?,
        ExperimentKind::RrLipschitz => experiments::rr_lipschitz(cfg, &mut out)?,
    };
    cfg.finish()?;
    let kind = spec.kind.plot_kind();
    let svg = render(&record, kind)?;
    let svg_name = format!("{}_{}.svg", spec.kind.as_str(), kind.as_str());
    out.write(&svg_name, &svg)?;
    record.files = out.files;
    record.save(&spec.out_dir.join("record.json"))?;
    Ok(record)
}

/// Files written by one run.
pub(crate) struct Output {
    dir: PathBuf,
    files: Vec<String>,
}

impl Output {
    fn write(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        self.files.push(name.to_string());
        Ok(())
    }

    /// `comment` becomes the `#` line, `columns` the header row.
    fn csv(&mut self, name: &str, comment: &str, columns: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let mut s = String::new();
        let _ = writeln!(s, "# {comment}");
        let _ = writeln!(s, "{}", columns.join(","));
        for r in rows {
            debug_assert_eq!(r.len(), columns.len());
            let _ = writeln!(s, "{}", r.join(","));
        }
        self.write(name, &s)
    }
}

/// Reals in CSV cells: 17 significant digits.
pub(crate) fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
    }
    if xs.len() < 3 {
        return Err(Error::domain(format!("slope fit needs at least 3 points, got {}", xs.len())));
    }
    if let Some(v) = xs.iter().chain(ys).find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::domain(format!("log-log fit needs positive finite values, got {v}")));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("slope fit needs at least two distinct x values"));
    }
    Ok(sxy / sxx)
}

/// Discrete Fréchet distance between two polylines.
pub fn discrete_frechet(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::domain("Fréchet distance of an empty polyline"));
    }
    let d = |i: usize, j: usize| crate::geometry::dist(&a[i], &b[j]);
    let mut prev = vec![0.0f64; b.len()];
    let mut cur = vec![0.0; b.len()];
    for i in 0..a.len() {
        for j in 0..b.len() {
            let reach = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d(i, j).max(reach);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[b.len() - 1])
}

pub(crate) fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}
