//! Command-line front end: run algorithms on instances, duel them against
//! adaptive adversaries, query the exact oracle, certify lower bounds by
//! exhaustive minimax, generate instances, apply worst-case transforms,
//! and emit the results table.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use scenario_sched::adversaries::AdversaryId;
use scenario_sched::algorithms::AlgorithmId;
use scenario_sched::harness::{
    build_table, duel, env_seed, minimax_certify, random_instance, render_table, replay_audit,
    run_static, MinimaxCaps, TableFormat, WeightMode,
};
use scenario_sched::oracle::{exact_opt_with, OracleConfig};
use scenario_sched::transforms::{report_cut, report_delete};
use scenario_sched::{Instance, Weight};

#[derive(Parser)]
#[command(name = "scenario-sched", about = "Makespan scheduling under scenarios: algorithms, oracle, adversaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm on an instance file and score it against the oracle.
    Run {
        #[arg(long)]
        alg: String,
        instance: PathBuf,
        #[arg(long, default_value_t = 16)]
        oracle_cap: usize,
    },
    /// Duel an algorithm against an adaptive adversary.
    Duel {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        adv: String,
        /// Node budget for the recursive hypergraph adversaries.
        #[arg(long)]
        budget: Option<usize>,
        /// Seed override (otherwise SCENARIO_SCHED_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exact offline optimum of an instance.
    Opt { instance: PathBuf },
    /// Exhaustively certify an adversary's bound over all response paths.
    Minimax {
        #[arg(long)]
        adv: String,
        #[arg(long)]
        m: Option<usize>,
        /// Bound such as "5/3" or "9/8+1/8r17"; adversary target otherwise.
        #[arg(long)]
        bound: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        leaf_cap: usize,
    },
    /// Generate a reproducible random instance on stdout.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "rational")]
        weights: WeightModeArg,
        #[arg(long, default_value_t = 10)]
        max_num: i64,
        #[arg(long, default_value_t = 10)]
        max_den: i64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Apply a worst-case transform and print the new instance plus report.
    Transform {
        #[command(subcommand)]
        which: TransformCmd,
    },
    /// Emit the desk-scale results table.
    Table {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value = "markdown")]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum TransformCmd {
    Cut {
        instance: PathBuf,
        /// 1-based job index.
        #[arg(long)]
        at: usize,
        #[arg(long)]
        alg: String,
    },
    Delete {
        instance: PathBuf,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        alg: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightModeArg {
    Unit,
    Rational,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Markdown,
}

fn load_instance(path: &PathBuf) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let instance: Instance = serde_json::from_str(&text).context("parsing instance JSON")?;
    instance.validate().map_err(|e| anyhow!("invalid instance: {e}"))?;
    Ok(instance)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { alg, instance, oracle_cap } => {
            let id = AlgorithmId::from_str(&alg).map_err(|e| anyhow!(e))?;
            let inst = load_instance(&instance)?;
            let mut algorithm = id.instantiate();
            let result = run_static(
                algorithm.as_mut(),
                &inst,
                &OracleConfig { job_cap: oracle_cap },
            )?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            Ok(audit_exit(replay_audit(&result) && result.audits.iter().all(|a| a.passed)))
        }
        Command::Duel { alg, adv, budget, seed } => {
            let seed = seed.unwrap_or_else(env_seed);
            let alg_id = AlgorithmId::from_str(&alg).map_err(|e| anyhow!(e))?;
            let adv_id = resolve_adversary(&adv, seed)?;
            let mut algorithm = alg_id.instantiate();
            let result = duel(algorithm.as_mut(), adv_id.instantiate(budget))?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            let ok = replay_audit(&result)
                && result.audits.iter().all(|a| a.passed)
                && result.reached_target != Some(false);
            Ok(audit_exit(ok))
        }
        Command::Opt { instance } => {
            let inst = load_instance(&instance)?;
            let opt = exact_opt_with(&inst, &OracleConfig::default())?;
            let witness: Vec<usize> = opt.assignment.iter().map(|&i| i + 1).collect();
            println!(
                "{}",
                serde_json::json!({
                    "value": opt.value,
                    "decimal": opt.value.decimal(30),
                    "witness": witness,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Minimax { adv, m, bound, budget, leaf_cap } => {
            let adv_id = resolve_adversary(&adv, env_seed())?;
            let probe = adv_id.instantiate(budget);
            let m = m.unwrap_or_else(|| probe.m());
            let bound = match bound {
                Some(text) => Weight::parse(&text).map_err(|e| anyhow!("bad bound: {e}"))?,
                None => probe.target_ratio(),
            };
            drop(probe);
            let factory = move || adv_id.instantiate(budget);
            let outcome = minimax_certify(
                &factory,
                m,
                &bound,
                MinimaxCaps { max_leaves: leaf_cap, max_depth: 64 },
            );
            println!(
                "{}",
                serde_json::json!({
                    "bound": bound,
                    "bound_decimal": bound.decimal(30),
                    "outcome": format!("{outcome:?}"),
                    "certified": outcome.is_certified(),
                })
            );
            Ok(audit_exit(outcome.is_certified()))
        }
        Command::Gen { m, k, n, weights, max_num, max_den, seed } => {
            let seed = seed.unwrap_or_else(env_seed);
            let mode = match weights {
                WeightModeArg::Unit => WeightMode::Unit,
                WeightModeArg::Rational => WeightMode::rational(max_num, max_den),
            };
            let inst = random_instance(m, k, n, mode, seed);
            println!("{}", serde_json::to_string_pretty(&inst)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform { which } => {
            let (report, label) = match which {
                TransformCmd::Cut { instance, at, alg } => {
                    let id = AlgorithmId::from_str(&alg).map_err(|e| anyhow!(e))?;
                    let inst = load_instance(&instance)?;
                    if at == 0 {
                        bail!("--at is 1-based");
                    }
                    (report_cut(&inst, at - 1, &id)?, "cut")
                }
                TransformCmd::Delete { instance, at, alg } => {
                    let id = AlgorithmId::from_str(&alg).map_err(|e| anyhow!(e))?;
                    let inst = load_instance(&instance)?;
                    if at == 0 {
                        bail!("--at is 1-based");
                    }
                    (report_delete(&inst, at - 1, &id)?, "delete")
                }
            };
            println!(
                "{}",
                serde_json::json!({ "transform": label, "report": report })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { samples, format } => {
            let entries = build_table(samples);
            let format = match format {
                FormatArg::Csv => TableFormat::Csv,
                FormatArg::Json => TableFormat::Json,
                FormatArg::Markdown => TableFormat::Markdown,
            };
            print!("{}", render_table(&entries, format));
            Ok(audit_exit(entries.iter().all(|e| e.within_bound)))
        }
    }
}

fn audit_exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Adversary ids pass through; `random:<m>,<k>,<n>` without a seed gets the
/// global one appended.
fn resolve_adversary(text: &str, seed: u64) -> Result<AdversaryId> {
    if let Some(rest) = text.strip_prefix("random:") {
        if rest.split(',').count() == 3 {
            return AdversaryId::from_str(&format!("random:{rest},{seed}"))
                .map_err(|e| anyhow!(e));
        }
    }
    AdversaryId::from_str(text).map_err(|e| anyhow!(e))
}
