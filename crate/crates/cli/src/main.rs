use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tatecheck_core::ap::{
    compute_euler, primes_up_to, save_cache, synthesize_euler, EllipticModel, SatoTateModel,
};
use tatecheck_core::config::{OutputFormat, RunConfig};
use tatecheck_core::verify::{self, exit_code, render_decomposition, render_rank};
use tatecheck_core::{Error, Result};

/// Predicted Tate-class ranks and numerical pole-order checks for products of
/// elliptic curves and abelian surfaces.
#[derive(Parser)]
#[command(name = "tatecheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the predicted rank per summand, the total and the coverage verdict.
    Rank {
        #[command(flatten)]
        common: Common,
        /// Also run the numerical estimate and report it.
        #[arg(long)]
        estimate: bool,
    },
    /// Print the decomposition of H^{2r}(X)(r) into irreducible pieces.
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Count points on a curve over F_p and print its Euler data.
    Ap {
        /// Weierstrass coefficients a1,a2,a3,a4,a6.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_curve)]
        curve: [i64; 5],
        #[arg(long)]
        bound: u64,
        /// Also write the data into this directory.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Print Euler data sampled from a Sato–Tate measure.
    Synthesize {
        /// su2, u1, nu1 or usp4.
        #[arg(long)]
        model: String,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the predicted rank with the numerical pole estimate.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        run: RunFlags,
        /// Write the trace series as `p,t` CSV to this file.
        #[arg(long)]
        traces: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Report format: text, csv or lines.
    #[arg(long)]
    output: Option<String>,
    /// Override the codimension r.
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Args)]
struct RunFlags {
    #[arg(long)]
    prime_bound: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for synthetic data.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_curve(s: &str) -> std::result::Result<[i64; 5], String> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected 5 coefficients a1,a2,a3,a4,a6, got {}", v.len()))
}

fn load(common: &Common) -> Result<(RunConfig, OutputFormat)> {
    let mut cfg = RunConfig::from_path(&common.config)?;
    if let Some(r) = common.r {
        cfg.r = r;
        cfg.validate()?;
    }
    let format = match &common.output {
        Some(s) => s.parse()?,
        None => cfg.output,
    };
    Ok((cfg, format))
}

fn apply(cfg: &mut RunConfig, flags: &RunFlags) -> Result<()> {
    if let Some(b) = flags.prime_bound {
        cfg.prime_bound = b;
    }
    if let Some(t) = flags.tolerance {
        cfg.tolerance = t;
    }
    if let Some(d) = &flags.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    if let Some(j) = flags.jobs {
        cfg.jobs = j;
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    cfg.validate()
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Rank { common, estimate } => {
            let (cfg, format) = load(&common)?;
            let (d, rank, coverage) = verify::predict(&cfg)?;
            print!("{}", render_rank(&rank, &d, coverage, format));
            if estimate {
                let report = verify::run(&cfg)?;
                let e = &report.estimate;
                match format {
                    OutputFormat::Text => println!(
                        "average estimate: {:.6}  mertens: {:.6}  verdict: {}",
                        e.average, e.mertens, e.verdict
                    ),
                    OutputFormat::Csv => {
                        println!("average,,{}", e.average);
                        println!("mertens,,{}", e.mertens);
                        println!("verdict,,{}", e.verdict);
                    }
                    OutputFormat::Lines => {
                        println!("average={}", e.average);
                        println!("mertens={}", e.mertens);
                        println!("verdict={}", e.verdict);
                    }
                }
                return Ok(report.exit_code());
            }
            Ok(0)
        }
        Command::Decompose { common } => {
            let (cfg, format) = load(&common)?;
            let (d, _, _) = verify::predict(&cfg)?;
            print!("{}", render_decomposition(&d, format));
            Ok(0)
        }
        Command::Ap {
            curve,
            bound,
            cache_dir,
            jobs,
        } => {
            let e = EllipticModel::new(curve)?;
            let data = compute_euler(&e, bound, jobs)?;
            if let Some(dir) = cache_dir {
                let path = save_cache(&data, dir)?;
                eprintln!("wrote {}", path.display());
            }
            print!("{}", data.to_text());
            Ok(0)
        }
        Command::Synthesize { model, bound, seed } => {
            let model: SatoTateModel = model.parse()?;
            let primes: Vec<u64> = primes_up_to(bound)
                .into_iter()
                .filter(|&p| p != 2)
                .collect();
            print!("{}", synthesize_euler(model, &primes, seed)?.to_text());
            Ok(0)
        }
        Command::Verify {
            common,
            run,
            traces,
        } => {
            let (mut cfg, format) = load(&common)?;
            apply(&mut cfg, &run)?;
            let report = verify::run(&cfg)?;
            if let Some(path) = traces {
                fs::write(&path, report.traces.to_csv())
                    .map_err(|e| Error::Io { path, source: e })?;
            }
            print!("{}", report.render(format));
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
