use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::config::KvConfig;
use crate::error::{Error, Result};
use crate::geometry::{DiskEnvironment, DistanceField};
use crate::robot::{CollisionCurve, IkField, LipschitzField, PlanarArm};

/// Static geometry drawn under paths in overlay plots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decor {
    /// `(center, radius)` of the outer boundary circle.
    OuterCircle { center: [f64; 2], radius: f64 },
    Disk { center: [f64; 2], radius: f64 },
    Points { points: Vec<[f64; 2]> },
    Rect { lower: [f64; 2], upper: [f64; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RrField {
    Ik,
    Lipschitz,
}

impl RrField {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ik" => Ok(Self::Ik),
            "lipschitz" => Ok(Self::Lipschitz),
            _ => Err(Error::config(format!("unknown rr field `{s}`, expected ik or lipschitz"))),
        }
    }
}

/// A distance field plus what is needed to draw it.
#[derive(Debug, Clone)]
pub struct Scene {
    pub name: String,
    pub field: Arc<dyn DistanceField>,
    pub decor: Vec<Decor>,
}

impl Scene {
    pub fn disk(k_r: f64, dim: usize) -> Result<Self> {
        let env = DiskEnvironment::new(k_r, dim)?;
        let decor = env
            .circles()
            .iter()
            .map(|&(center, radius, outer)| {
                if outer {
                    Decor::OuterCircle { center, radius }
                } else {
                    Decor::Disk { center, radius }
                }
            })
            .collect();
        Ok(Self { name: format!("disk(k_r={k_r}, dim={dim})"), field: Arc::new(env), decor })
    }

    pub fn rr(arm: PlanarArm, obstacle: [f64; 2], n_col: usize, kind: RrField) -> Result<Self> {
        let curve = CollisionCurve::new(&arm, obstacle, n_col)?;
        let lower = [arm.lower()[0], arm.lower()[1]];
        let upper = [arm.upper()[0], arm.upper()[1]];
        let decor = vec![
            Decor::Rect { lower, upper },
            Decor::Points { points: curve.points().iter().map(|p| [p[0], p[1]]).collect() },
        ];
        let field: Arc<dyn DistanceField> = match kind {
            RrField::Ik => Arc::new(IkField::new(&curve, arm.lower().to_vec(), arm.upper().to_vec())?),
            RrField::Lipschitz => Arc::new(LipschitzField::new(arm, obstacle)),
        };
        let name = match kind {
            RrField::Ik => "rr(ik)",
            RrField::Lipschitz => "rr(lipschitz)",
        };
        Ok(Self { name: name.to_string(), field, decor })
    }

    /// Reads `scene = disk | rr` and its parameters.
    pub fn from_config(cfg: &KvConfig) -> Result<Self> {
        match cfg.str_or("scene", "disk")? {
            "disk" => Self::disk(cfg.real_or("k_r", 0.3)?, cfg.usize_or("dim", 2)?),
            "rr" => {
                let (arm, obstacle, n_col) = rr_parts(cfg)?;
                Self::rr(arm, obstacle, n_col, RrField::parse(cfg.str_or("field", "ik")?)?)
            }
            other => Err(Error::config(format!("unknown scene `{other}`, expected disk or rr"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }
}

/// Arm, obstacle and `n_col` with the RR task defaults.
pub fn rr_parts(cfg: &KvConfig) -> Result<(PlanarArm, [f64; 2], usize)> {
    let links = cfg.reals_or("links", &[1.0, 1.0])?;
    let q_ub = cfg.reals_or("q_ub", &[1.5 * std::f64::consts::PI, std::f64::consts::PI])?;
    let arm = match cfg.reals("q_lb")? {
        Some(lb) => PlanarArm::new(links, lb, q_ub)?,
        None => PlanarArm::symmetric(links, q_ub)?,
    };
    let obs = cfg.reals_or("obstacle", &[0.0, 1.3])?;
    if obs.len() != 2 {
        return Err(Error::config("obstacle needs two coordinates"));
    }
    Ok((arm, [obs[0], obs[1]], cfg.usize_or("n_col", 200)?))
}
