use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lgfisher::figures::{reproduce_figure, Figure};
use lgfisher::output::{render_svg_lineplot, write_csv, write_json, write_table, Format};
use lgfisher::{phase_map, scan_b, scan_theta, Grid, PartitionSpec, RunConfig, ScanTable};

/// Leggett-Garg violation versus Fisher information for noisy parity
/// measurements on a spin-j system. Angles are given in units of π.
#[derive(Debug, Parser)]
#[command(name = "lgfisher", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep θ at fixed b.
    ScanTheta(ScanArgs),
    /// Sweep b at fixed θ.
    ScanB(ScanArgs),
    /// Evaluate the full b × θ grid.
    PhaseMap(ScanArgs),
    /// Regenerate one figure dataset (1a, 1b, 2a, 2b, 3 or all).
    Figure {
        which: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        plot: bool,
    },
    /// Single-point evaluation.
    Report(ScanArgs),
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long = "two-j", default_value_t = 5)]
    two_j: u32,
    /// `x`, `lo:hi:count` or `x1,x2,…`.
    #[arg(long)]
    b: Option<String>,
    /// In units of π: `x`, `lo:hi:count` or `x1,x2,…`.
    #[arg(long)]
    theta: Option<String>,
    /// `default` or `mu:m1,m2;mu:m1,…` with every number written as 2m.
    #[arg(long, default_value = "default")]
    partition: String,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG line plot next to `--out`.
    #[arg(long)]
    plot: bool,
}

impl ScanArgs {
    fn config(&self, default_b: &str, default_theta: &str) -> Result<RunConfig> {
        let b: Grid = self
            .b
            .as_deref()
            .unwrap_or(default_b)
            .parse()
            .context("--b")?;
        let theta: Grid = self
            .theta
            .as_deref()
            .unwrap_or(default_theta)
            .parse()
            .context("--theta")?;
        let partition = match self.partition.trim() {
            "default" => None,
            spec => Some(spec.parse::<PartitionSpec>().context("--partition")?),
        };
        Ok(RunConfig {
            two_j: self.two_j,
            partition,
            b,
            theta: theta.scaled(PI),
        })
    }

    fn emit(&self, table: &ScanTable, x_column: &str, y_columns: &[&str]) -> Result<()> {
        let format: Format = self.format.parse()?;
        match &self.out {
            Some(path) => {
                write_table(table, format, path)?;
                if self.plot {
                    let svg = path.with_extension("svg");
                    render_svg_lineplot(table, x_column, y_columns, &svg)?;
                }
            }
            None => {
                if self.plot {
                    bail!("--plot needs --out");
                }
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                match format {
                    Format::Csv => write_csv(table, &mut lock)?,
                    Format::Json => {
                        write_json(table, &mut lock)?;
                        writeln!(lock)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<()> {
    let theta_default = format!("0:1:{}", lgfisher::scan::DEFAULT_THETA_POINTS);
    let b_default = format!("0:1:{}", lgfisher::scan::DEFAULT_B_POINTS);
    match cli.command {
        Command::ScanTheta(args) => {
            let table = scan_theta(&args.config("1", &theta_default)?)?;
            args.emit(&table, "theta", &["C", "K_LG", "F", "F_Q"])
        }
        Command::ScanB(args) => {
            let table = scan_b(&args.config(&b_default, "0.95")?)?;
            args.emit(&table, "b", &["K_LG", "F", "F_Q"])
        }
        Command::PhaseMap(args) => {
            let table = phase_map(&args.config("0.5,0.7,0.9,0.99,1", "0:0.5:256")?)?;
            args.emit(&table, "theta", &["K_LG", "F_ratio"])
        }
        Command::Report(args) => {
            let config = args.config("1", "0.95")?;
            if config.b.single().is_none() || config.theta.single().is_none() {
                bail!("report takes a single --b and a single --theta");
            }
            let table = phase_map(&config)?;
            args.emit(&table, "theta", &["C", "K_LG"])
        }
        Command::Figure { which, out, plot } => {
            let figures = if which == "all" {
                Figure::ALL.to_vec()
            } else {
                vec![which.parse::<Figure>()?]
            };
            for fig in figures {
                for path in reproduce_figure(fig, &out, plot)? {
                    eprintln!("wrote {}", path.display());
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("lgfisher: {err:#}");
            ExitCode::FAILURE
        }
    }
}
