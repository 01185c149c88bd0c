//! `hgctl`: solve, verify, classify, and generate control instances of
//! hedonic games.
//!
//! Exit codes: 0 = yes (or verified stable), 1 = no, 2 = error.

mod format;
mod gencmd;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use format::{read_json, write_json, InstanceFile, NameTable, PartitionFile};
use hgctl_core::control_add::add_route;
use hgctl_core::control_fri::fri_route;
use hgctl_core::exact::oracle_control;
use hgctl_core::stability::verify as verify_stability;
use hgctl_core::{
    Action, ControlQuery, Game, Goal, Model, SolveOutcome, SolverConfig, Stability,
    StabilityViolation,
};

#[derive(Parser)]
#[command(
    name = "hgctl",
    about = "Control solvers for additive and friend-oriented hedonic games",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a control query, routing to the matching algorithm.
    Solve(SolveArgs),
    /// Decide a control query with the exhaustive ground-truth search.
    Oracle(SolveArgs),
    /// Check a partition against a stability concept.
    Verify {
        instance: PathBuf,
        partition: PathBuf,
        #[arg(long)]
        stability: StabilityArg,
    },
    /// Print structural flags and the route every query cell would take.
    Classify { instance: PathBuf },
    /// Generate instances: hardness gadgets with answer keys, or random games.
    #[command(subcommand)]
    Gen(gencmd::GenCmd),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StabilityArg {
    Ir,
    Is,
    Ns,
    Cs,
}

impl From<StabilityArg> for Stability {
    fn from(s: StabilityArg) -> Stability {
        match s {
            StabilityArg::Ir => Stability::Ir,
            StabilityArg::Is => Stability::Is,
            StabilityArg::Ns => Stability::Ns,
            StabilityArg::Cs => Stability::Cs,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GoalArg {
    Na,
    Pa,
    Gr,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ActionArg {
    Add,
    Del,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long)]
    stability: StabilityArg,
    #[arg(long)]
    goal: GoalArg,
    /// Designated agent (required for --goal na and pa).
    #[arg(long)]
    agent: Option<String>,
    /// Second designated agent (required for --goal pa).
    #[arg(long)]
    agent2: Option<String>,
    #[arg(long)]
    action: ActionArg,
    #[arg(long, default_value_t = 0)]
    budget: usize,
    /// Write the witness partition to this path on a yes-decision.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Reserved: solvers are deterministic and currently single-threaded.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Reads `HGCTL_EXACT_CAP` into the exhaustive-search cap.
fn solver_config() -> anyhow::Result<SolverConfig> {
    let mut cfg = SolverConfig::default();
    if let Ok(v) = std::env::var("HGCTL_EXACT_CAP") {
        let cap: usize = v
            .parse()
            .with_context(|| format!("HGCTL_EXACT_CAP={v:?} is not a number"))?;
        cfg.exact.partition_cap = cap;
    }
    Ok(cfg)
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Solve(args) => run_query(args, false),
        Cmd::Oracle(args) => run_query(args, true),
        Cmd::Verify {
            instance,
            partition,
            stability,
        } => run_verify(&instance, &partition, stability.into()),
        Cmd::Classify { instance } => run_classify(&instance),
        Cmd::Gen(cmd) => {
            gencmd::run(cmd)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_query(
    args: &SolveArgs,
    table: &NameTable,
) -> anyhow::Result<ControlQuery> {
    let goal = match args.goal {
        GoalArg::Na => {
            let name = args
                .agent
                .as_deref()
                .context("--goal na requires --agent")?;
            if args.agent2.is_some() {
                bail!("--goal na takes a single agent");
            }
            Goal::NotAlone(table.id(name)?)
        }
        GoalArg::Pa => {
            let a = args.agent.as_deref().context("--goal pa requires --agent")?;
            let b = args
                .agent2
                .as_deref()
                .context("--goal pa requires --agent2")?;
            Goal::Together(table.id(a)?, table.id(b)?)
        }
        GoalArg::Gr => {
            if args.agent.is_some() || args.agent2.is_some() {
                bail!("--goal gr takes no agents");
            }
            Goal::GrandCoalition
        }
    };
    Ok(ControlQuery {
        stability: args.stability.into(),
        goal,
        action: match args.action {
            ActionArg::Add => Action::AddAgents,
            ActionArg::Del => Action::DeleteAgents,
        },
        budget: args.budget,
    })
}

fn run_query(args: SolveArgs, force_oracle: bool) -> anyhow::Result<ExitCode> {
    let file: InstanceFile = read_json(&args.instance)?;
    let (game, table) = file.to_game()?;
    let query = build_query(&args, &table)?;
    let cfg = solver_config()?;
    let outcome: SolveOutcome = if force_oracle {
        let out = oracle_control(&game, &query, &cfg.exact)?;
        if out.decision {
            hgctl_core::control::verify_outcome(&game, &query, &out, cfg.cs_verify_cap)?;
        }
        out
    } else {
        hgctl_core::solve(&game, &query, &cfg)?
    };
    let sign = match query.action {
        Action::AddAgents => "+",
        Action::DeleteAgents => "-",
    };
    match &outcome.witness {
        Some(w) => {
            println!(
                "YES route={} witness={}{}",
                outcome.route,
                sign,
                table.render_set(&w.chosen)
            );
            if let Some(path) = &args.witness_out {
                write_json(path, &PartitionFile::from_partition(&w.partition, &table))?;
            }
        }
        None => println!("NO route={}", outcome.route),
    }
    Ok(if outcome.decision {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_verify(
    instance: &Path,
    partition: &Path,
    stability: Stability,
) -> anyhow::Result<ExitCode> {
    let file: InstanceFile = read_json(instance)?;
    let (game, table) = file.to_game()?;
    let pfile: PartitionFile = read_json(partition)?;
    let p = pfile.to_partition(&table)?;
    p.check_covers(&all_agents(&game))
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let cfg = solver_config()?;
    match verify_stability(&game, &p, stability, cfg.cs_verify_cap)? {
        Ok(()) => {
            println!("YES");
            Ok(ExitCode::SUCCESS)
        }
        Err(v) => {
            println!("NO violation={}", render_violation(&v, &table));
            Ok(ExitCode::from(1))
        }
    }
}

fn all_agents(game: &Game) -> Vec<hgctl_core::AgentId> {
    (0..game.n_agents() as u32).map(hgctl_core::AgentId).collect()
}

fn render_violation(v: &StabilityViolation, table: &NameTable) -> String {
    match v {
        StabilityViolation::DeviatingAgent { agent } => {
            format!("agent {} deviates to its singleton", table.name(*agent))
        }
        StabilityViolation::BlockingTuple { agent, target } => format!(
            "agent {} joins {}",
            table.name(*agent),
            table.render_set(target)
        ),
        StabilityViolation::BlockingCoalition { coalition } => {
            format!("coalition {} blocks", table.render_set(coalition))
        }
    }
}

fn run_classify(instance: &Path) -> anyhow::Result<ExitCode> {
    let file: InstanceFile = read_json(instance)?;
    let (game, _) = file.to_game()?;
    let class = game.classify();
    let model = match game.model() {
        Model::Friends => "friends",
        Model::Additive => "additive",
    };
    println!(
        "model={model} agents={} dag={} symmetric={}",
        game.n_agents(),
        class.is_dag,
        class.is_symmetric
    );
    // Route every query cell; the goal agents themselves do not matter.
    let goals = [
        ("NA", Goal::NotAlone(hgctl_core::agent(0))),
        ("PA", Goal::Together(hgctl_core::agent(0), hgctl_core::agent(1))),
        ("GR", Goal::GrandCoalition),
    ];
    for stability in Stability::ALL {
        for (goal_name, goal) in goals {
            for action in [Action::AddAgents, Action::DeleteAgents] {
                let route = match game.model() {
                    Model::Friends => {
                        fri_route(stability, goal, action, class.is_dag, class.is_symmetric)
                    }
                    Model::Additive => {
                        add_route(stability, goal, action, class.is_dag, class.is_symmetric)
                    }
                };
                println!("route {stability}-{goal_name}-{action} = {route}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
