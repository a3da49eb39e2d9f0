//! Presets that regenerate the published figure datasets.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::output::{render_svg_lineplot, svg_contours, write_table, Format};
use crate::scan::{
    phase_map, scan_b, scan_theta, Grid, RunConfig, ScanTable, DEFAULT_B_POINTS,
    DEFAULT_THETA_POINTS,
};

/// b values of the highlighted contours in the phase map.
pub const CONTOUR_B_VALUES: [f64; 5] = [0.5, 0.7, 0.9, 0.99, 1.0];
pub const PHASE_MAP_THETA_POINTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// θ sweep at b = 1.
    Fig1a,
    /// θ sweep at b = 0.99.
    Fig1b,
    /// b sweep at θ = 0.95π.
    Fig2a,
    /// b sweep at θ = 0.34π.
    Fig2b,
    /// F/F_Q against |K_LG| along fixed-b contours, θ ∈ [0, π/2].
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 5] = [
        Figure::Fig1a,
        Figure::Fig1b,
        Figure::Fig2a,
        Figure::Fig2b,
        Figure::Fig3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1a => "1a",
            Figure::Fig1b => "1b",
            Figure::Fig2a => "2a",
            Figure::Fig2b => "2b",
            Figure::Fig3 => "3",
        }
    }

    pub fn config(self) -> RunConfig {
        let theta_sweep = |b: f64| RunConfig {
            b: Grid::point(b),
            theta: Grid::Linear {
                lo: 0.0,
                hi: PI,
                count: DEFAULT_THETA_POINTS,
            },
            ..RunConfig::default()
        };
        let b_sweep = |theta_over_pi: f64| RunConfig {
            b: Grid::Linear {
                lo: 0.0,
                hi: 1.0,
                count: DEFAULT_B_POINTS,
            },
            theta: Grid::point(theta_over_pi * PI),
            ..RunConfig::default()
        };
        match self {
            Figure::Fig1a => theta_sweep(1.0),
            Figure::Fig1b => theta_sweep(0.99),
            Figure::Fig2a => b_sweep(0.95),
            Figure::Fig2b => b_sweep(0.34),
            Figure::Fig3 => RunConfig {
                b: Grid::Points(CONTOUR_B_VALUES.to_vec()),
                theta: Grid::Linear {
                    lo: 0.0,
                    hi: PI / 2.0,
                    count: PHASE_MAP_THETA_POINTS,
                },
                ..RunConfig::default()
            },
        }
    }

    pub fn table(self) -> Result<ScanTable> {
        let config = self.config();
        match self {
            Figure::Fig1a | Figure::Fig1b => scan_theta(&config),
            Figure::Fig2a | Figure::Fig2b => scan_b(&config),
            Figure::Fig3 => phase_map(&config),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| {
                Error::InvalidArgument(format!("unknown figure {s:?} (1a, 1b, 2a, 2b, 3)"))
            })
    }
}

/// Writes `fig<name>.csv` (and `fig<name>.svg` when `plot`) into `dir`.
pub fn reproduce_figure(which: Figure, dir: &Path, plot: bool) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let table = which.table()?;
    let csv = dir.join(format!("fig{}.csv", which.name()));
    write_table(&table, Format::Csv, &csv)?;
    let mut written = vec![csv];
    if plot {
        let svg = dir.join(format!("fig{}.svg", which.name()));
        match which {
            Figure::Fig1a | Figure::Fig1b => {
                render_svg_lineplot(&table, "theta", &["C", "K_LG", "F", "F_Q"], &svg)?
            }
            Figure::Fig2a | Figure::Fig2b => {
                render_svg_lineplot(&table, "b", &["K_LG", "F", "F_Q"], &svg)?
            }
            Figure::Fig3 => {
                std::fs::write(&svg, svg_contours(&table)).map_err(|e| Error::io(&svg, e))?
            }
        }
        written.push(svg);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_names_parse() {
        for f in Figure::ALL {
            assert_eq!(f.name().parse::<Figure>().unwrap(), f);
        }
        assert!("4".parse::<Figure>().is_err());
    }

    #[test]
    fn fig3_shape() {
        let t = Figure::Fig3.table().unwrap();
        assert_eq!(t.rows.len(), 5 * 256);
        assert!(t
            .rows
            .windows(2)
            .all(|w| (w[0].b, w[0].theta) < (w[1].b, w[1].theta)));
    }

    #[test]
    fn fig2b_never_violates() {
        assert!(Figure::Fig2b
            .table()
            .unwrap()
            .rows
            .iter()
            .all(|r| !r.violates_lgi()));
    }

    #[test]
    fn writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let files = reproduce_figure(Figure::Fig1a, dir.path(), true).unwrap();
        assert_eq!(files.len(), 2);
        let csv = std::fs::read_to_string(&files[0]).unwrap();
        assert_eq!(csv.lines().count(), 2 + 512);
        let svg = std::fs::read_to_string(&files[1]).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 4);
        let files = reproduce_figure(Figure::Fig3, dir.path(), true).unwrap();
        let svg = std::fs::read_to_string(&files[1]).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 5);
    }
}
