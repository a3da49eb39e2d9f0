//! Parameter sweeps over θ and b.

use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{EstimationRecord, Estimator};
use crate::measurement::{NoisyDichotomicMeasurement, PartitionSpec};
use crate::spin::SpinSystem;

pub const DEFAULT_THETA_POINTS: usize = 512;
pub const DEFAULT_B_POINTS: usize = 201;

/// Sample points along one axis.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// `count ≥ 2` evenly spaced points, both ends included.
    Linear { lo: f64, hi: f64, count: usize },
    /// Explicit values.
    Points(Vec<f64>),
}

impl Grid {
    pub fn linear(lo: f64, hi: f64, count: usize) -> Result<Self> {
        let g = Grid::Linear { lo, hi, count };
        g.validate()?;
        Ok(g)
    }

    pub fn point(x: f64) -> Self {
        Grid::Points(vec![x])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Grid::Linear { lo, hi, count } => {
                if *count < 2 {
                    return Err(Error::InvalidGrid(format!("count = {count} (need >= 2)")));
                }
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::InvalidGrid(format!("need lo < hi, got {lo}:{hi}")));
                }
            }
            Grid::Points(v) => {
                if v.is_empty() {
                    return Err(Error::InvalidGrid("no points".into()));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidGrid("non-finite point".into()));
                }
            }
        }
        Ok(())
    }

    /// Values in ascending order.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Linear { lo, hi, count } => {
                let step = (hi - lo) / (*count - 1) as f64;
                (0..*count)
                    .map(|i| {
                        if i == count - 1 {
                            *hi
                        } else {
                            lo + step * i as f64
                        }
                    })
                    .collect()
            }
            Grid::Points(v) => {
                let mut v = v.clone();
                v.sort_by(f64::total_cmp);
                v
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Grid::Linear { count, .. } => *count,
            Grid::Points(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn single(&self) -> Option<f64> {
        match self {
            Grid::Points(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    /// Same grid with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            Grid::Linear { lo, hi, count } => Grid::Linear {
                lo: lo * factor,
                hi: hi * factor,
                count: *count,
            },
            Grid::Points(v) => Grid::Points(v.iter().map(|x| x * factor).collect()),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Linear { lo, hi, count } => write!(f, "{lo}:{hi}:{count}"),
            Grid::Points(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

/// `x`, `lo:hi:count` or `x1,x2,…`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("not a number: {t:?}")))
        };
        let grid = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [lo, hi, count] = parts[..] else {
                return Err(Error::InvalidGrid(format!(
                    "expected lo:hi:count, got {s:?}"
                )));
            };
            let count = count
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidGrid(format!("bad count in {s:?}")))?;
            Grid::Linear {
                lo: num(lo)?,
                hi: num(hi)?,
                count,
            }
        } else {
            Grid::Points(s.split(',').map(num).collect::<Result<_>>()?)
        };
        grid.validate()?;
        Ok(grid)
    }
}

/// Physics parameters of a sweep. Angles are in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub two_j: u32,
    /// `None` selects the default two-block partition.
    pub partition: Option<PartitionSpec>,
    pub b: Grid,
    pub theta: Grid,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            two_j: 5,
            partition: None,
            b: Grid::point(1.0),
            theta: Grid::Linear {
                lo: 0.0,
                hi: std::f64::consts::PI,
                count: DEFAULT_THETA_POINTS,
            },
        }
    }
}

impl RunConfig {
    pub fn system(&self) -> Result<SpinSystem> {
        SpinSystem::new(self.two_j)
    }

    pub fn partition_for(&self, sys: &SpinSystem) -> Result<PartitionSpec> {
        match &self.partition {
            Some(p) => Ok(p.clone()),
            None => PartitionSpec::default_for(sys),
        }
    }

    fn validate(&self) -> Result<()> {
        self.b.validate()?;
        self.theta.validate()?;
        if let Some(b) = self
            .b
            .values()
            .into_iter()
            .find(|b| !(0.0..=1.0).contains(b))
        {
            return Err(Error::InvalidGrid(format!("b = {b} outside [0, 1]")));
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let partition = self
            .partition
            .as_ref()
            .map_or_else(|| "default".to_string(), |p| p.to_string());
        format!(
            "two_j={} partition={} b={} theta={}",
            self.two_j, partition, self.b, self.theta
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: String,
    pub generated_unix: u64,
}

impl Metadata {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config: config.describe(),
            generated_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub metadata: Metadata,
    pub rows: Vec<EstimationRecord>,
}

fn sweep(
    sys: &SpinSystem,
    partition: &PartitionSpec,
    b_values: &[f64],
    thetas: &[f64],
) -> Result<Vec<EstimationRecord>> {
    let estimators = b_values
        .par_iter()
        .map(|&b| {
            let meas = NoisyDichotomicMeasurement::new(sys, b, partition.clone())?;
            Estimator::new(sys, &meas)
        })
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, f64)> = (0..estimators.len())
        .flat_map(|i| thetas.iter().map(move |&t| (i, t)))
        .collect();
    cells
        .par_iter()
        .map(|&(i, theta)| estimators[i].record(theta))
        .collect()
}

/// Fixed b, one row per θ.
pub fn scan_theta(config: &RunConfig) -> Result<ScanTable> {
    config.validate()?;
    let b = config
        .b
        .single()
        .ok_or_else(|| Error::InvalidGrid("scan over theta needs a single b value".into()))?;
    let sys = config.system()?;
    let partition = config.partition_for(&sys)?;
    let rows = sweep(&sys, &partition, &[b], &config.theta.values())?;
    Ok(ScanTable {
        metadata: Metadata::new("scan-theta", config),
        rows,
    })
}

/// Fixed θ, one row per b.
pub fn scan_b(config: &RunConfig) -> Result<ScanTable> {
    config.validate()?;
    let theta = config
        .theta
        .single()
        .ok_or_else(|| Error::InvalidGrid("scan over b needs a single theta value".into()))?;
    let sys = config.system()?;
    let partition = config.partition_for(&sys)?;
    let rows = sweep(&sys, &partition, &config.b.values(), &[theta])?;
    Ok(ScanTable {
        metadata: Metadata::new("scan-b", config),
        rows,
    })
}

/// Full b × θ grid, rows ordered by `(b, θ)`.
pub fn phase_map(config: &RunConfig) -> Result<ScanTable> {
    config.validate()?;
    let sys = config.system()?;
    let partition = config.partition_for(&sys)?;
    let rows = sweep(&sys, &partition, &config.b.values(), &config.theta.values())?;
    Ok(ScanTable {
        metadata: Metadata::new("phase-map", config),
        rows,
    })
}
