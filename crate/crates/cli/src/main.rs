//! `resilmax` command-line workbench.
//!
//! Exit codes: 0 when every requested check passes, 1 when a certification
//! check fails, 2 on usage, load, or budget errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use resilmax::adversary::DEFAULT_REMOVAL_CAP;
use resilmax::bench::{run_bench, BenchConfig};
use resilmax::generate::{generate, FamilyKind, GenConfig, MatroidKind};
use resilmax::par::{parse_thread_count, THREADS_ENV};
use resilmax::solvers::DEFAULT_BASE_CAP;
use resilmax::{
    certify, solve_exact_resilient, solve_greedy_marginal, solve_myopic, worst_case_removal_exact,
    worst_case_removal_greedy, ElementSet, Instance, InstanceFile, RemovalResult, Solution,
};

#[derive(Parser)]
#[command(
    name = "resilmax",
    version,
    about = "Resilient submodular maximization workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Myopic,
    Greedy,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatroidArg {
    Uniform,
    Partition,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file
    Gen {
        /// coverage, facility, or modular
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coverage items or facility clients
        #[arg(long)]
        items: Option<usize>,
        #[arg(long, value_enum, default_value = "uniform")]
        matroid: MatroidArg,
        /// Number of partition blocks
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        /// Matroid rank; defaults to min(n, 3)
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance and report the resilient value of the chosen set
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "myopic")]
        algorithm: AlgorithmArg,
        #[arg(long, default_value_t = DEFAULT_BASE_CAP)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the curvature of the instance's objective
    Curvature {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the worst-case removal from a given set
    Adversary {
        file: PathBuf,
        /// Comma-separated element ids, e.g. "0,1,2"
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// Use the greedy heuristic instead of exhaustive enumeration
        #[arg(long)]
        greedy: bool,
        #[arg(long, default_value_t = DEFAULT_REMOVAL_CAP)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Certify the myopic solution against the exhaustive optimum
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BASE_CAP)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded sweep of certified random instances and emit CSV
    Bench {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "coverage,facility,modular"
        )]
        families: Vec<FamilyKind>,
        #[arg(long, default_value_t = 300)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        rank_max: usize,
        #[arg(long, default_value_t = 2)]
        alpha_max: usize,
        /// Fill the wall_time_ms column (makes the CSV non-reproducible)
        #[arg(long)]
        timing: bool,
        /// CSV destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Instance> {
    let file = InstanceFile::read(path)?;
    file.to_instance()
        .with_context(|| format!("loading {}", path.display()))
}

fn parse_set(raw: &str) -> Result<ElementSet> {
    let ids = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .with_context(|| format!("bad element id '{s}'"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ElementSet::from_ids(ids))
}

fn print_removal(r: &RemovalResult) {
    println!("removed: {}", r.removed);
    println!("remaining: {}", r.remaining);
    println!("value: {}", r.value);
    println!("exact: {}", r.exact);
}

fn print_solution(inst: &Instance, sol: &Solution) {
    println!("algorithm: {}", sol.algorithm);
    println!("chosen: {}", sol.chosen);
    if inst.ground().labels().is_some() {
        let labels: Vec<&str> = sol
            .chosen
            .iter()
            .filter_map(|x| inst.ground().label(x))
            .collect();
        println!("labels: {}", labels.join(","));
    }
    let order: Vec<String> = sol.selection_order.iter().map(usize::to_string).collect();
    println!("selection_order: [{}]", order.join(","));
    println!("truncated: {}", sol.truncated);
    print_removal(&sol.removal);
    println!("resilient_value: {}", sol.resilient_value);
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            n,
            seed,
            items,
            matroid,
            blocks,
            rank,
            alpha,
            out,
        } => {
            let cfg = GenConfig {
                family,
                n,
                seed,
                items,
                matroid: match matroid {
                    MatroidArg::Uniform => MatroidKind::Uniform,
                    MatroidArg::Partition => MatroidKind::Partition { blocks },
                },
                rank: rank.unwrap_or(n.min(3)),
                alpha,
            };
            let text = generate(&cfg)?.to_json();
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
        }
        Command::Solve {
            file,
            algorithm,
            cap,
            json,
        } => {
            let inst = load(&file)?;
            let sol = match algorithm {
                AlgorithmArg::Myopic => solve_myopic(&inst),
                AlgorithmArg::Greedy => solve_greedy_marginal(&inst),
                AlgorithmArg::Exact => solve_exact_resilient(&inst, cap)?,
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&sol)?);
            } else {
                print_solution(&inst, &sol);
            }
        }
        Command::Curvature { file, json } => {
            let inst = load(&file)?;
            let c = inst.objective().curvature()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&c)?);
            } else {
                println!("nu: {}", c.nu);
                println!("argmin_element: {}", c.argmin_element);
                let skipped: Vec<String> = c
                    .skipped_null_elements
                    .iter()
                    .map(usize::to_string)
                    .collect();
                println!("skipped_null_elements: [{}]", skipped.join(","));
            }
        }
        Command::Adversary {
            file,
            set,
            greedy,
            cap,
            json,
        } => {
            let inst = load(&file)?;
            let a = parse_set(&set)?;
            let r = if greedy {
                worst_case_removal_greedy(inst.objective(), &a, inst.alpha())?
            } else {
                worst_case_removal_exact(inst.objective(), &a, inst.alpha(), cap)?
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!("set: {a}");
                println!("alpha: {}", inst.alpha());
                print_removal(&r);
            }
        }
        Command::Verify { file, cap, json } => {
            let inst = load(&file)?;
            let sol = solve_myopic(&inst);
            let opt = solve_exact_resilient(&inst, cap)?;
            let cert = certify(&inst, &sol, &opt)?;
            let pc = &cert.proof_chain;
            if json {
                println!("{}", serde_json::to_string_pretty(&cert)?);
            } else {
                println!("myopic: {}", sol.chosen);
                println!("optimal: {}", opt.chosen);
                println!("nu: {}", cert.nu.nu);
                println!("value_sol: {}", cert.value_sol);
                println!("value_opt: {}", cert.value_opt);
                println!("bound: {}", cert.bound);
                println!("ratio: {}", cert.ratio);
                println!("remainder: {}", pc.remainder);
                println!("eq4: {} >= {} {}", pc.eq4_lhs, pc.eq4_rhs, pc.eq4_holds);
                let pairs: Vec<String> = pc
                    .bijection
                    .pairs()
                    .iter()
                    .map(|(a, b)| format!("{a}->{b}"))
                    .collect();
                println!("bijection: {}", pairs.join(","));
                println!("eq5: {}", pc.eq5_holds);
                println!("eq6: {} >= {} {}", pc.eq4_lhs, pc.eq6_rhs, pc.eq6_holds);
                println!("mapped_remainder: {}", pc.mapped_remainder);
                println!("eq7: {} >= {} {}", pc.eq4_lhs, pc.eq7_rhs, pc.eq7_holds);
                println!(
                    "final: {} >= {} {}",
                    pc.final_lhs, pc.final_rhs, pc.final_holds
                );
                if pc.alpha_exceeds_rank {
                    println!("note: alpha exceeds rank; removals saturate at the whole set");
                }
                println!("theorem_holds: {}", cert.theorem_holds);
                println!("all_hold: {}", pc.all_hold);
            }
            if !(cert.theorem_holds && pc.all_hold) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench {
            families,
            trials,
            seed,
            n_max,
            rank_max,
            alpha_max,
            timing,
            out,
        } => {
            let cfg = BenchConfig {
                families,
                trials,
                seed,
                n_max,
                rank_max,
                alpha_max,
                timing,
            };
            let report = run_bench(&cfg)?;
            let csv = report.to_csv();
            match out {
                Some(path) => {
                    fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
                    print!("{}", report.summary_text());
                }
                None => {
                    print!("{csv}");
                    eprint!("{}", report.summary_text());
                }
            }
            if report.violations() > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let Some(threads) = parse_thread_count(&raw) else {
        bail!("{THREADS_ENV} must be a positive integer, got '{raw}'");
    };
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the worker pool")?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
