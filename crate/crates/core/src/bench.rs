//! Seeded benchmark sweep: random desk-scale instances, each solved by the
//! myopic, greedy, and exhaustive solvers and certified.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::generate::{generate, FamilyKind, GenConfig, MatroidKind};
use crate::par;
use crate::solvers::{
    solve_exact_resilient, solve_greedy_marginal, solve_myopic, DEFAULT_BASE_CAP,
};
use crate::verify::{certify, RELATIVE_TOLERANCE};

pub const CSV_HEADER: &str = "instance_id,n,matroid_type,rank,alpha,nu,myopic_value,greedy_value,\
exact_value,bound,ratio_myopic,ratio_greedy,theorem_holds,proof_chain_holds,wall_time_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub families: Vec<FamilyKind>,
    pub trials: usize,
    pub seed: u64,
    pub n_max: usize,
    pub rank_max: usize,
    pub alpha_max: usize,
    /// Record wall-clock time per trial. Off by default so the CSV is
    /// reproducible byte for byte; the column then reads 0.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: FamilyKind::ALL.to_vec(),
            trials: 300,
            seed: 42,
            n_max: 10,
            rank_max: 5,
            alpha_max: 2,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance_id: String,
    pub family: FamilyKind,
    pub n: usize,
    pub matroid_type: &'static str,
    pub rank: usize,
    pub alpha: usize,
    pub nu: f64,
    pub myopic_value: f64,
    pub greedy_value: f64,
    pub exact_value: f64,
    pub bound: f64,
    pub ratio_myopic: f64,
    pub ratio_greedy: f64,
    pub theorem_holds: bool,
    pub proof_chain_holds: bool,
    pub wall_time_ms: f64,
    /// Set when the trial failed before it could be certified.
    pub error: Option<String>,
}

impl BenchRow {
    pub fn is_violation(&self) -> bool {
        !(self.theorem_holds && self.proof_chain_holds) || self.error.is_some()
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.instance_id,
            self.n,
            self.matroid_type,
            self.rank,
            self.alpha,
            format_sig(self.nu),
            format_sig(self.myopic_value),
            format_sig(self.greedy_value),
            format_sig(self.exact_value),
            format_sig(self.bound),
            format_sig(self.ratio_myopic),
            format_sig(self.ratio_greedy),
            self.theorem_holds,
            self.proof_chain_holds,
            format_sig(self.wall_time_ms),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub family: FamilyKind,
    pub rows: usize,
    pub min_ratio_myopic: f64,
    pub mean_ratio_myopic: f64,
    pub min_ratio_greedy: f64,
    /// Smallest observed `ratio_myopic − (1 − ν)`.
    pub min_slack: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.is_violation()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 + 160 * self.rows.len());
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn summaries(&self) -> Vec<FamilySummary> {
        let mut groups: BTreeMap<FamilyKind, Vec<&BenchRow>> = BTreeMap::new();
        for row in &self.rows {
            groups.entry(row.family).or_default().push(row);
        }
        groups
            .into_iter()
            .map(|(family, rows)| {
                let ok: Vec<&&BenchRow> = rows.iter().filter(|r| r.error.is_none()).collect();
                let min = |g: &dyn Fn(&BenchRow) -> f64| {
                    ok.iter().map(|r| g(r)).fold(f64::INFINITY, f64::min)
                };
                FamilySummary {
                    family,
                    rows: rows.len(),
                    min_ratio_myopic: min(&|r| r.ratio_myopic),
                    mean_ratio_myopic: ok.iter().map(|r| r.ratio_myopic).sum::<f64>()
                        / ok.len().max(1) as f64,
                    min_ratio_greedy: min(&|r| r.ratio_greedy),
                    min_slack: min(&|r| r.ratio_myopic - (1.0 - r.nu)),
                    violations: rows.iter().filter(|r| r.is_violation()).count(),
                }
            })
            .collect()
    }

    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for s in self.summaries() {
            let _ = writeln!(
                out,
                "{:<9} rows={} min_ratio_myopic={} mean_ratio_myopic={} min_ratio_greedy={} min_slack={} violations={}",
                s.family.to_string(),
                s.rows,
                format_sig(s.min_ratio_myopic),
                format_sig(s.mean_ratio_myopic),
                format_sig(s.min_ratio_greedy),
                format_sig(s.min_slack),
                s.violations
            );
        }
        let _ = writeln!(
            out,
            "total rows={} violations={}",
            self.rows.len(),
            self.violations()
        );
        out
    }
}

/// Formats a value with 12 significant digits in positional notation.
pub fn format_sig(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}").to_lowercase();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (11 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// The instance parameters drawn for trial `t`.
fn trial_config(cfg: &BenchConfig, t: usize) -> GenConfig {
    let family = cfg.families[t % cfg.families.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(t as u64);
    let n_lo = cfg.n_max.min(2);
    let n = rng.random_range(n_lo..=cfg.n_max);
    let rank = rng.random_range(1..=cfg.rank_max.min(n).max(1)).min(n);
    let alpha = if cfg.alpha_max == 0 {
        0
    } else {
        rng.random_range(1..=cfg.alpha_max)
    };
    let matroid = if rng.random_bool(0.5) {
        MatroidKind::Uniform
    } else {
        MatroidKind::Partition {
            blocks: rng.random_range(1..=rank.clamp(1, n)),
        }
    };
    GenConfig {
        family,
        n,
        seed: rng.random(),
        items: None,
        matroid,
        rank,
        alpha,
    }
}

fn run_trial(cfg: &BenchConfig, t: usize) -> BenchRow {
    let started = Instant::now();
    let gen = trial_config(cfg, t);
    let mut row = BenchRow {
        instance_id: format!("{}-{t:05}", gen.family),
        family: gen.family,
        n: gen.n,
        matroid_type: match gen.matroid {
            MatroidKind::Uniform => "uniform",
            MatroidKind::Partition { .. } => "partition",
        },
        rank: gen.rank,
        alpha: gen.alpha,
        nu: f64::NAN,
        myopic_value: f64::NAN,
        greedy_value: f64::NAN,
        exact_value: f64::NAN,
        bound: f64::NAN,
        ratio_myopic: f64::NAN,
        ratio_greedy: f64::NAN,
        theorem_holds: false,
        proof_chain_holds: false,
        wall_time_ms: 0.0,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        let inst = generate(&gen)?.to_instance()?;
        let sol = solve_myopic(&inst);
        let greedy = solve_greedy_marginal(&inst);
        let opt = solve_exact_resilient(&inst, DEFAULT_BASE_CAP)?;
        let cert = certify(&inst, &sol, &opt)?;
        let ratio = |v: f64| {
            if cert.value_opt == 0.0 {
                1.0
            } else {
                v / cert.value_opt
            }
        };
        row.nu = cert.nu.nu;
        row.myopic_value = cert.value_sol;
        row.greedy_value = greedy.resilient_value;
        row.exact_value = cert.value_opt;
        row.bound = cert.bound;
        row.ratio_myopic = cert.ratio;
        row.ratio_greedy = ratio(greedy.resilient_value);
        row.theorem_holds =
            cert.theorem_holds && row.ratio_myopic >= 1.0 - row.nu - RELATIVE_TOLERANCE;
        row.proof_chain_holds = cert.proof_chain.all_hold;
        Ok(())
    })();
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    if cfg.timing {
        row.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    }
    row
}

/// Runs every trial, in parallel when enabled; rows come back in trial order.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.families.is_empty() {
        return Err(crate::Error::InvalidArgument("no families selected".into()));
    }
    if cfg.n_max == 0 {
        return Err(crate::Error::InvalidArgument(
            "n-max must be at least 1".into(),
        ));
    }
    let rows = par::map_range(cfg.trials, |t| run_trial(cfg, t));
    Ok(BenchReport { rows })
}
