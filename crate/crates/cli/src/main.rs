use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{CommandFactory as _, Parser, Subcommand};
use stacking_core::{
    bound_report, chi_exact, generate, solve_online, Capacity, DistributionSpec,
    DEFAULT_EXACT_LIMIT,
};

use stacking::experiment::{measure, run_sweep, write_csv, write_rows, Suite, SweepConfig};
use stacking::format::{read_instance, render_instance, write_instance};
use stacking::plot::write_plots;
use stacking::verify::{run_all, Level, Solvers};

/// Online stacking of interval items into capacity-limited LIFO stacks.
#[derive(Parser)]
#[command(name = "stacking", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random instance and write it in the `x,y` format.
    Generate {
        /// Distribution: usq, u:<ell>, g:<mu_c>:<sigma_c>:<mu_l>:<sigma_l> or fixed:<len>.
        #[arg(value_name = "DIST", required_unless_present = "dist")]
        spec: Option<DistributionSpec>,
        #[arg(long, conflicts_with = "spec")]
        dist: Option<DistributionSpec>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file online and print its statistics as a CSV row.
    Solve {
        path: PathBuf,
        #[arg(long, default_value = "5", value_parser = parse_capacity)]
        h: Capacity,
    },
    /// Run a parameter sweep and write one CSV row per instance.
    Experiment {
        /// Start from a named preset; explicit flags override its fields.
        #[arg(long)]
        suite: Option<Suite>,
        /// Distribution to include; repeatable.
        #[arg(long)]
        dist: Vec<DistributionSpec>,
        /// Instance sizes, comma separated and increasing.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        #[arg(long, value_parser = parse_capacity)]
        h: Option<Capacity>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per (distribution, n) point.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        instances: Option<u64>,
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
        /// Also write SVG charts next to the CSV file.
        #[arg(long)]
        plots: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
    /// Compute the optimal number of stacks of a small instance by exhaustive search.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value = "5", value_parser = parse_capacity)]
        h: Capacity,
        /// Largest instance the search accepts.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
    },
    /// Run the built-in randomized consistency checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

fn parse_capacity(s: &str) -> Result<Capacity, String> {
    let h: usize = s.parse().map_err(|e| format!("{e}"))?;
    Capacity::new(h).ok_or_else(|| "capacity must be at least 1".to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Generate {
            spec,
            dist,
            n,
            seed,
            out,
        } => {
            let spec = spec.or(dist).expect("clap requires one of them");
            let inst = generate(&spec, n as usize, seed)?;
            match out {
                Some(path) => write_instance(&path, &inst)?,
                None => io::stdout().write_all(render_instance(&inst).as_bytes())?,
            }
        }
        Command::Solve { path, h } => {
            let inst = read_instance(&path)?;
            let row = measure("file", &inst, h, 0);
            write_rows(io::stdout().lock(), std::slice::from_ref(&row))?;
            if !row.is_ok() {
                eprintln!("error: {}", row.error);
                return Ok(ExitCode::from(1));
            }
        }
        Command::Experiment {
            suite,
            dist,
            n,
            h,
            seed,
            instances,
            out,
            plots,
            workers,
        } => {
            let mut config = match suite {
                Some(s) => SweepConfig::suite(s, seed),
                None => SweepConfig {
                    distributions: Vec::new(),
                    n_values: Vec::new(),
                    h: Capacity::new(5).expect("nonzero"),
                    base_seed: seed,
                    instances_per_point: 1,
                },
            };
            if !dist.is_empty() {
                config.distributions = dist;
            }
            if !n.is_empty() {
                config.n_values = n.into_iter().map(|v| v as usize).collect();
            }
            if let Some(h) = h {
                config.h = h;
            }
            if let Some(k) = instances {
                config.instances_per_point = k as usize;
            }
            if let Err(e) = config.check() {
                Cli::command()
                    .error(clap::error::ErrorKind::ArgumentConflict, e)
                    .exit();
            }
            let workers = workers
                .map(|w| w as usize)
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
            let rows = run_sweep(&config, workers)?;
            write_csv(&out, &rows).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            if plots {
                for p in write_plots(&out, &rows).context("writing plots")? {
                    eprintln!("wrote {}", p.display());
                }
            }
            let failed = rows.iter().filter(|r| !r.is_ok()).count();
            if failed > 0 {
                eprintln!("{failed} rows failed; see the error column");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Oracle { path, h, limit } => {
            let inst = read_instance(&path)?;
            let exact = chi_exact(&inst, h, limit)?;
            let online = solve_online(&inst, h);
            println!("chi_h {}", exact.chi_h);
            println!("nodes {}", exact.nodes_explored);
            if let Ok(r) = bound_report(&inst, h, &online) {
                println!("chi_prime_h {}", r.chi_prime_h);
                println!("omega_prime {}", r.omega_prime);
                println!("lower_bound {}", r.lower_bound);
            }
            let witness: Vec<String> = exact.witness.colors.iter().map(u32::to_string).collect();
            println!("witness {}", witness.join(","));
        }
        Command::Verify { level } => {
            let reports = run_all(level, &Solvers::default());
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().any(|r| !r.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
