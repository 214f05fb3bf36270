use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use tasp::cli::{output_dir, run, sweep, ExperimentConfig, SweepAxis, BUNDLED};

#[derive(Parser)]
#[command(name = "tasp", version, about = "Quench dynamics and TASP ring analysis for 2D Chern insulators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Config file, or the name of a bundled config
    #[arg(long)]
    config: String,
    /// Output directory (default: the config's, else out/<name>)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the grid size
    #[arg(long)]
    grid_n: Option<usize>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Integrate to t_f instead of projecting at the switch time
    #[arg(long)]
    full_integration: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every output requested by a config
    Run(Common),
    /// Sweep g or t_so and write one CSV row per value
    Sweep {
        #[command(flatten)]
        common: Common,
        /// g or t_so
        #[arg(long)]
        axis: SweepAxis,
        /// Comma-separated values (default: the config's sweep values)
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
    },
    /// List the bundled figure configs
    ListConfigs,
    /// Print the tool version
    Version,
}

fn prepare(c: &Common) -> Result<(ExperimentConfig, PathBuf)> {
    if let Some(n) = c.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    let mut cfg = ExperimentConfig::resolve(&c.config)?;
    if let Some(n) = c.grid_n {
        cfg.grid_n = n;
    }
    if c.full_integration {
        cfg.numerics.full_integration = Some(true);
    }
    cfg.validate()?;
    let out = output_dir(&cfg, c.out.as_deref());
    Ok((cfg, out))
}

fn main_inner() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(c) => {
            let (cfg, out) = prepare(&c)?;
            let report = run(&cfg, &out)?;
            println!("{} -> {}", cfg.name, out.display());
            for r in &report.rings {
                match r.winding {
                    Some(w) => println!("  {} winding {w}", r.kind),
                    None => println!("  {} winding undefined ({})", r.kind, r.winding_error.as_deref().unwrap_or("")),
                }
            }
            if let Some(p) = &report.process {
                let show = |x: Option<i32>| x.map_or("-".to_string(), |v| v.to_string());
                println!(
                    "  process {} (initial {}, final {}){}",
                    p.label,
                    show(p.initial_invariant),
                    show(p.final_invariant),
                    if p.ambiguous { " [ambiguous]" } else { "" }
                );
            }
            println!("  {:.1} s", report.timing.total_seconds);
        }
        Command::Sweep { common, axis, values } => {
            let (cfg, out) = prepare(&common)?;
            let report = sweep(&cfg, axis, &values, &out)?;
            let rows =
                report.g_sweep.as_ref().map_or(0, |r| r.len()) + report.tso_sweep.as_ref().map_or(0, |r| r.len());
            println!("{} {axis}-sweep: {rows} rows -> {}", cfg.name, out.display());
        }
        Command::ListConfigs => {
            for (name, _) in BUNDLED {
                let cfg = ExperimentConfig::resolve(name)?;
                println!("{name:8} {}", cfg.description);
            }
        }
        Command::Version => println!("tasp {}", tasp::VERSION),
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
