//! Thin CLI over the library: `run`, `sweep`, `threshold`, `oracle`,
//! `fit`. Exit codes: 0 success, 2 config error, 3 numerical blow-up,
//! 4 resource cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pspin::config::{RunConfig, SolverKind};
use pspin::driver;
use pspin::error::{Error, Result};

#[derive(Parser)]
#[command(name = "pspin", version, about = "Annealing dynamics of spherical mixed p-spin models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Path to the JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid step (overrides config).
    #[arg(long)]
    dt: Option<f64>,
    /// Protocol runtime (overrides config).
    #[arg(long)]
    tau: Option<f64>,
    /// Solver (overrides config).
    #[arg(long)]
    solver: Option<SolverKind>,
    /// Oracle base seed (overrides config).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker thread count (overrides config; default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Memory cap in bytes (overrides config).
    #[arg(long)]
    memory_cap: Option<u64>,
}

impl ConfigArgs {
    fn load(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if let Some(dt) = self.dt {
            cfg.grid.dt = dt;
        }
        if let Some(tau) = self.tau {
            cfg.schedule.tau = tau;
        }
        if let Some(solver) = self.solver {
            cfg.solver = solver;
        }
        if let Some(seed) = self.seed {
            if let Some(oracle) = &mut cfg.oracle {
                oracle.base_seed = seed;
            }
        }
        if let Some(threads) = self.threads {
            cfg.threads = Some(threads);
        }
        if let Some(cap) = self.memory_cap {
            cfg.memory_cap_bytes = cap;
        }
        cfg.validate()?;
        if let Some(threads) = cfg.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// One solve: trace CSV + summary JSON.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Also dump the full C and R kernels (O(n²) file size).
        #[arg(long)]
        dump_kernels: bool,
    },
    /// Solve each sweep tau, fit the power law, compare to threshold.
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the analytic threshold energy of the configured model.
    Threshold {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Finite-N Monte Carlo vs the mean-field solver.
    Oracle {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Fit a power law to an existing (tau, epsilon) CSV.
    Fit {
        /// Sweep CSV to fit.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = 4)]
        min_points: usize,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, dump_kernels } => {
            let cfg = config.load()?;
            let summary = driver::cmd_run(&cfg, dump_kernels)?;
            println!(
                "epsilon_final = {} (tau = {}, dt = {}, {:.2} s)",
                summary.epsilon_final, summary.tau, summary.dt, summary.runtime_seconds
            );
        }
        Command::Sweep { config } => {
            let cfg = config.load()?;
            let (points, fit) = driver::cmd_sweep(&cfg)?;
            for (tau, eps) in &points {
                println!("tau = {tau}: epsilon = {eps}");
            }
            let eps_th = cfg.model.threshold_energy();
            println!(
                "fit: epsilon_inf = {}, C = {}, alpha = {}",
                fit.epsilon_inf, fit.amplitude, fit.alpha
            );
            println!(
                "threshold: epsilon_th = {eps_th}, epsilon_inf - epsilon_th = {}",
                fit.epsilon_inf - eps_th
            );
        }
        Command::Threshold { config } => {
            let cfg = config.load()?;
            // 12 significant digits
            println!("{:.11e}", cfg.model.threshold_energy());
        }
        Command::Oracle { config } => {
            let cfg = config.load()?;
            let report = driver::cmd_oracle(&cfg)?;
            println!(
                "max |epsilon_oracle - epsilon_solver| = {} (tolerance {}, {} samples): {}",
                report.max_abs_energy_deviation,
                report.tolerance,
                report.n_samples,
                if report.within_tolerance { "OK" } else { "DEVIATES" }
            );
        }
        Command::Fit { input, out, min_points } => {
            let fit = driver::cmd_fit(&input, &out, min_points)?;
            println!(
                "fit: epsilon_inf = {}, C = {}, alpha = {} (rss = {})",
                fit.epsilon_inf, fit.amplitude, fit.alpha, fit.rss
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
