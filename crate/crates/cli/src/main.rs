//! Command-line front end: solve instances, verify outcomes, generate
//! reduction instances from graphs, and generate random instances.
//!
//! Exit codes: 0 on success, 1 on a domain failure (solver refusal, envy
//! detected, invalid cover), 2 on usage or parse errors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fairhouse::model::{first_envy_violation, Instance, Outcome, Rational};
use fairhouse::reduction::{
    extract_cover, is_vertex_cover, reduce_vertex_cover, witness_outcome, ReductionInstance,
};
use fairhouse::solvers::{solve_with, SolveOptions, Strategy};
use fairhouse_cli::formats;

#[derive(Parser)]
#[command(
    name = "fairhouse",
    version,
    about = "Exact minimum-subsidy envy-free house allocation"
)]
struct Cli {
    /// Print machine-readable JSON summaries instead of prose.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum-subsidy envy-free outcome for an instance file.
    Solve {
        /// Instance JSON file.
        input: PathBuf,
        /// Solver to use; `auto` picks by instance shape.
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Largest house surplus m - n the subset solver will enumerate.
        #[arg(long, default_value_t = fairhouse::solvers::DEFAULT_SURPLUS_CAP)]
        max_surplus: usize,
        /// Allocation budget for the brute-force oracle.
        #[arg(long, default_value_t = fairhouse::solvers::DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u64,
        /// Write the outcome JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify that an outcome file is envy-free for an instance file.
    Check {
        instance: PathBuf,
        outcome: PathBuf,
        /// Also require total subsidy <= this rational threshold.
        #[arg(long)]
        threshold: Option<String>,
    },
    /// Build a house allocation instance from a graph via the vertex-cover
    /// construction; its envy-free outcomes with total subsidy <= k/|V|
    /// correspond to vertex covers of size <= k.
    Reduce {
        /// Graph file: `p <vertices> <edges>` header, `e <u> <v>` lines.
        graph: PathBuf,
        /// Target cover size, 1 <= k < |V| - 1.
        #[arg(short, long)]
        k: usize,
        /// Write the instance JSON here (role map goes to *.roles.json).
        #[arg(long)]
        output: PathBuf,
        /// Comma-separated 1-indexed vertices of a cover; writes the witness
        /// outcome to *.witness.json.
        #[arg(long)]
        witness: Option<String>,
        /// Outcome file to map back to a vertex set.
        #[arg(long)]
        extract: Option<PathBuf>,
    },
    /// Generate a reproducible pseudorandom instance file.
    Gen {
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        houses: usize,
        /// Utilities are drawn from 0..=max-util.
        #[arg(long, default_value_t = 10)]
        max_util: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Give every agent the same utility row.
        #[arg(long)]
        identical: bool,
        /// Draw rationals with denominators up to this value instead of
        /// integers.
        #[arg(long)]
        denominator: Option<u16>,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Auto,
    Equal,
    Subset,
    Identical,
    Oracle,
}

impl From<Algo> for Strategy {
    fn from(algo: Algo) -> Strategy {
        match algo {
            Algo::Auto => Strategy::Auto,
            Algo::Equal => Strategy::Equal,
            Algo::Subset => Strategy::Subset,
            Algo::Identical => Strategy::Identical,
            Algo::Oracle => Strategy::Oracle,
        }
    }
}

/// Input errors exit 2, domain errors exit 1.
enum CliError {
    Input(String),
    Domain(String),
}

fn input(err: impl std::fmt::Display) -> CliError {
    CliError::Input(err.to_string())
}

fn domain(err: impl std::fmt::Display) -> CliError {
    CliError::Domain(err.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Solve {
            input,
            algo,
            max_surplus,
            oracle_budget,
            output,
        } => cmd_solve(&input, algo, max_surplus, oracle_budget, output, cli.json),
        Command::Check {
            instance,
            outcome,
            threshold,
        } => cmd_check(&instance, &outcome, threshold, cli.json),
        Command::Reduce {
            graph,
            k,
            output,
            witness,
            extract,
        } => cmd_reduce(&graph, k, &output, witness, extract, cli.json),
        Command::Gen {
            agents,
            houses,
            max_util,
            seed,
            identical,
            denominator,
            output,
        } => cmd_gen(
            agents,
            houses,
            max_util,
            seed,
            identical,
            denominator,
            output,
        ),
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    formats::load_instance(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_outcome(path: &Path) -> Result<Outcome, CliError> {
    let (outcome, _) =
        formats::load_outcome(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(outcome)
}

fn cmd_solve(
    path: &Path,
    algo: Algo,
    max_surplus: usize,
    oracle_budget: u64,
    output: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let inst = load_instance(path)?;
    let options = SolveOptions {
        surplus_cap: max_surplus,
        oracle_budget,
    };
    let report = solve_with(&inst, algo.into(), &options).map_err(domain)?;

    if let Some(out_path) = &output {
        formats::save_outcome(out_path, &report.outcome, report.algorithm.tag())
            .map_err(|e| input(format!("{}: {e}", out_path.display())))?;
    }

    if json {
        println!(
            "{}",
            json!({
                "algorithm": report.algorithm.tag(),
                "explored": report.explored,
                "elapsed_ms": report.elapsed.as_secs_f64() * 1e3,
                "total": report.total.to_string(),
                "allocation": report.outcome.allocation().as_slice(),
                "subsidy": report.outcome.subsidy().iter().map(Rational::to_string).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("algorithm: {}", report.algorithm);
        println!("explored: {}", report.explored);
        println!("total subsidy: {}", report.total);
        if let Some(out_path) = &output {
            println!("outcome written to {}", out_path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    instance_path: &Path,
    outcome_path: &Path,
    threshold: Option<String>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let inst = load_instance(instance_path)?;
    let outcome = load_outcome(outcome_path)?;
    let threshold = threshold
        .map(|t| t.parse::<Rational>())
        .transpose()
        .map_err(|e| input(format!("invalid threshold: {e}")))?;

    let violation = first_envy_violation(&inst, &outcome).map_err(input)?;
    let total = outcome.total_subsidy();
    let within_threshold = threshold.as_ref().map(|t| total <= *t);

    if json {
        println!(
            "{}",
            json!({
                "envy_free": violation.is_none(),
                "total": total.to_string(),
                "within_threshold": within_threshold,
                "violation": violation.as_ref().map(|v| json!({
                    "envious": v.envious + 1,
                    "envied": v.envied + 1,
                    "own_value": v.own_value.to_string(),
                    "other_value": v.other_value.to_string(),
                })),
            })
        );
    } else if let Some(v) = &violation {
        println!(
            "agent {} envies agent {}: own bundle {} < other bundle {}",
            v.envious + 1,
            v.envied + 1,
            v.own_value,
            v.other_value
        );
    } else {
        println!("envy-free, total subsidy {total}");
        if let Some(t) = &threshold {
            if within_threshold == Some(false) {
                println!("total subsidy {total} exceeds threshold {t}");
            }
        }
    }

    if violation.is_some() || within_threshold == Some(false) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// `inst.json` -> `inst.roles.json` / `inst.witness.json`.
fn sidecar_path(output: &Path, kind: &str) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "reduction".to_string());
    output.with_file_name(format!("{stem}.{kind}.json"))
}

fn cmd_reduce(
    graph_path: &Path,
    k: usize,
    output: &Path,
    witness: Option<String>,
    extract: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let graph = formats::load_graph(graph_path)
        .map_err(|e| input(format!("{}: {e}", graph_path.display())))?;
    let reduction = reduce_vertex_cover(&graph, k).map_err(domain)?;

    formats::save_instance(output, reduction.instance())
        .map_err(|e| input(format!("{}: {e}", output.display())))?;
    let roles_path = sidecar_path(output, "roles");
    formats::save_role_map(&roles_path, &reduction)
        .map_err(|e| input(format!("{}: {e}", roles_path.display())))?;

    let witness_report = witness
        .map(|spec| write_witness(&reduction, &spec, output))
        .transpose()?;
    let extract_report = extract
        .map(|path| report_extraction(&reduction, &path))
        .transpose()?;

    if json {
        println!(
            "{}",
            json!({
                "agents": reduction.instance().agents(),
                "houses": reduction.instance().houses(),
                "k": reduction.k(),
                "instance": output.display().to_string(),
                "roles": roles_path.display().to_string(),
                "witness": witness_report.as_ref().map(|(path, total)| json!({
                    "path": path.display().to_string(),
                    "total": total.to_string(),
                })),
                "extracted": extract_report.as_ref().map(|(cover, covers)| json!({
                    "vertices": cover.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "covers": covers,
                })),
            })
        );
    } else {
        println!(
            "reduction instance: {} agents, {} houses (k = {})",
            reduction.instance().agents(),
            reduction.instance().houses(),
            reduction.k()
        );
        println!("instance written to {}", output.display());
        println!("role map written to {}", roles_path.display());
        if let Some((path, total)) = &witness_report {
            println!("witness total subsidy: {total}");
            println!("witness outcome written to {}", path.display());
        }
        if let Some((cover, covers)) = &extract_report {
            let vertices = cover
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",");
            println!("extracted cover: {{{vertices}}}");
            println!("covers: {covers}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_witness(
    reduction: &ReductionInstance,
    spec: &str,
    output: &Path,
) -> Result<(PathBuf, Rational), CliError> {
    let cover = formats::parse_cover(spec, reduction.graph().vertex_count()).map_err(input)?;
    let outcome = witness_outcome(reduction, &cover).map_err(domain)?;
    let path = sidecar_path(output, "witness");
    formats::save_outcome(&path, &outcome, "witness")
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok((path, outcome.total_subsidy()))
}

fn report_extraction(
    reduction: &ReductionInstance,
    outcome_path: &Path,
) -> Result<(BTreeSet<usize>, bool), CliError> {
    let outcome = load_outcome(outcome_path)?;
    let cover = extract_cover(reduction, &outcome).map_err(input)?;
    let covers = is_vertex_cover(reduction.graph(), &cover);
    Ok((cover, covers))
}

fn cmd_gen(
    agents: usize,
    houses: usize,
    max_util: u32,
    seed: u64,
    identical: bool,
    denominator: Option<u16>,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    use rand::{Rng, SeedableRng};

    if agents == 0 {
        return Err(CliError::Input("at least one agent is required".into()));
    }
    if agents > houses {
        return Err(CliError::Input(format!(
            "{agents} agents need at least {agents} houses, got {houses}"
        )));
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draw_row = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Rational> {
        (0..houses)
            .map(|_| match denominator {
                Some(d) => {
                    let den = rng.gen_range(1..=d.max(1)) as i64;
                    let num = rng.gen_range(0..=max_util as i64 * den);
                    Rational::new(num, den)
                }
                None => Rational::from_integer(rng.gen_range(0..=max_util as i64)),
            })
            .collect()
    };

    let rows = if identical {
        vec![draw_row(&mut rng); agents]
    } else {
        (0..agents).map(|_| draw_row(&mut rng)).collect()
    };
    let labels = (1..=houses).map(|j| format!("h{j}")).collect();
    let inst = Instance::new(rows)
        .and_then(|i| i.with_labels(None, Some(labels)))
        .map_err(input)?;

    match output {
        Some(path) => formats::save_instance(&path, &inst)
            .map_err(|e| input(format!("{}: {e}", path.display())))?,
        None => print!("{}", formats::instance_to_json(&inst)),
    }
    Ok(ExitCode::SUCCESS)
}
