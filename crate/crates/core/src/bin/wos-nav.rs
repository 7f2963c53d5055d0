use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wos_nav::bench::{render, run_experiment, ExperimentSpec, KvConfig, PlotKind, RunRecord, Scene};
use wos_nav::{solve_gradient, solve_value, BoundarySpec, Error, Problem, SourceSpec, WalkConfig};

/// Walk-on-spheres screened Poisson solver and path planner.
#[derive(Parser)]
#[command(name = "wos-nav", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a key-value spec file.
    Run {
        spec: PathBuf,
        /// Output directory (overrides `out` in the spec).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run with this single seed instead of the spec's seed list.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; 0 means one per core.
        #[arg(long, env = "WOS_NAV_WORKERS")]
        workers: Option<usize>,
    },
    /// Render a figure from a saved `record.json`.
    Plot {
        record: PathBuf,
        /// path_overlay, loglog or box_timing.
        #[arg(long)]
        kind: String,
        /// Output file; defaults to `<experiment>_<kind>.svg` next to the record.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the solution (or its gradient) at one point of a scene.
    Solve {
        /// Scene file: `scene = disk|rr` plus its parameters and an optional `goal`.
        #[arg(long)]
        scene: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 10_000)]
        walks: usize,
        #[arg(long, default_value_t = 0.0)]
        screening: f64,
        #[arg(long)]
        gradient: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, env = "WOS_NAV_WORKERS", default_value_t = 0)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wos-nav: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { spec, out, seed, workers } => {
            let mut s = ExperimentSpec::load(&spec)?;
            if let Some(dir) = out {
                s = s.with_out_dir(dir);
            }
            if let Some(seed) = seed {
                s = s.with_seed(seed);
            }
            if let Some(w) = workers {
                s = s.with_workers(w);
            }
            let record = run_experiment(&s)?;
            println!("{}: wrote {} files to {}", record.experiment, record.files.len(), s.out_dir.display());
            for f in &record.files {
                println!("  {f}");
            }
            for (k, v) in &record.scalars {
                println!("{k} = {v}");
            }
            Ok(())
        }
        Command::Plot { record, kind, out } => {
            let kind = PlotKind::parse(&kind)?;
            let r = RunRecord::load(&record)?;
            let svg = render(&r, kind)?;
            let path = out.unwrap_or_else(|| {
                let dir = record.parent().map(PathBuf::from).unwrap_or_default();
                dir.join(format!("{}_{}.svg", r.experiment, kind.as_str()))
            });
            std::fs::write(&path, svg).map_err(|e| Error::Io { path: path.clone(), source: e })?;
            println!("{}", path.display());
            Ok(())
        }
        Command::Solve { scene, point, walks, screening, gradient, seed, epsilon, workers } => {
            let cfg = KvConfig::load(&scene)?;
            let sc = Scene::from_config(&cfg)?;
            let dim = sc.dim();
            let parse = |s: &str| -> Result<Vec<f64>, Error> {
                let v: Vec<f64> = s
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad coordinate `{t}`"))))
                    .collect::<Result<_, _>>()?;
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
                }
                Ok(v)
            };
            let x = parse(&point)?;
            let source = match cfg.reals("goal")? {
                Some(g) => {
                    let mut g = g;
                    g.resize(dim.max(g.len()), 0.0);
                    SourceSpec::dirac(g, cfg.real_or("source_magnitude", 1.0)?)
                }
                None => SourceSpec::None,
            };
            let boundary = BoundarySpec::Constant(cfg.real_or("boundary", 0.0)?);
            cfg.finish()?;
            let problem = Problem::new(sc.field.as_ref(), &boundary, &source);
            let walk = WalkConfig { n_walks: walks, screening, seed, epsilon, workers, ..Default::default() };
            let est = if gradient { solve_gradient(&problem, &walk, &x)? } else { solve_value(&problem, &walk, &x)? };
            println!("{}", serde_json::to_string_pretty(&est)?);
            Ok(())
        }
    }
}
