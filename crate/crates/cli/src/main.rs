use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use switchover::chung_lu::{sample_chung_lu, ChungLuManifest, ChungLuParams};
use switchover::expansion::{exact_edge_expansion, probe_edge_expansion};
use switchover::harness::{
    canonical_scenario, detect_switchover, phase_diagram, run_sweep, run_verify, write_phase_csv, write_sweep_csv,
    Fault, PhaseConfig, ScenarioParams, SweepConfig, VerifyOptions,
};
use switchover::{Graph, RngStream};

const SEED_ENV: &str = "RNG_MASTER_SEED";

#[derive(Parser)]
#[command(name = "switchover", version, about = "Central vs uniform seeding under bond percolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Paired β-sweep from a JSON config; writes CSV and prints the verdict.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; overrides `output` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in oracle checks.
    Verify {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Edge expansion of a graph for sets of size in [qn, n/2].
    Expansion(ExpansionArgs),
    /// Sample a Chung-Lu graph; writes the edge list and a manifest beside it.
    Chunglu {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Parameter-window table over (β, s) for Chung-Lu graphs.
    PhaseDiagram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a canonical scenario as JSON plus a sibling edge list.
    Scenario {
        #[arg(long)]
        id: String,
        /// Inline JSON object or a path to one.
        #[arg(long, default_value = "{}")]
        params: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ExpansionArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    q: f64,
    #[arg(long, conflicts_with = "probe")]
    exact: bool,
    #[arg(long)]
    probe: bool,
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 1)]
    seed: u64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep { config, out } => sweep(&config, out),
        Command::Verify { filter, seed, inject_fault } => {
            let fault = inject_fault.map(|f| f.parse::<Fault>()).transpose()?;
            let report = run_verify(&VerifyOptions { filter, fault, seed })?;
            print_json(&serde_json::to_value(&report)?)?;
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Expansion(args) => expansion(&args),
        Command::Chunglu { n, tau, seed, out } => {
            let params = ChungLuParams::new(n, tau)?;
            let graph = sample_chung_lu(&params, RngStream::new(seed, 0));
            graph.save_edge_list(&out)?;
            let file_name = out.file_name().context("--out needs a file name")?.to_string_lossy();
            let manifest = ChungLuManifest::new(&params, seed, &graph, &file_name);
            let manifest_path = out.with_extension("manifest.json");
            let text = serde_json::to_string_pretty(&manifest)? + "\n";
            std::fs::write(&manifest_path, text).with_context(|| format!("writing {}", manifest_path.display()))?;
            print_json(&serde_json::to_value(&manifest)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PhaseDiagram { n, tau, theta, out } => {
            let config = PhaseConfig::with_default_grids(n, tau, theta);
            let rows = phase_diagram(&config)?;
            let mut w = create(&out)?;
            write_phase_csv(&config, &rows, &mut w)?;
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scenario { id, params, out } => {
            let text = if params.trim_start().starts_with('{') {
                params
            } else {
                std::fs::read_to_string(&params).with_context(|| format!("reading {params}"))?
            };
            let params: ScenarioParams = serde_json::from_str(&text).context("parsing --params")?;
            let scenario = canonical_scenario(&id, &params)?;
            let graph_file = out.with_extension("edges");
            let graph_file = graph_file.file_name().context("--out needs a file name")?.to_string_lossy();
            scenario.save(&out, &graph_file)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn sweep(path: &Path, out: Option<PathBuf>) -> Result<ExitCode> {
    let mut config = SweepConfig::load(path)?;
    config.apply_seed_override(std::env::var(SEED_ENV).ok().as_deref())?;
    if out.is_some() {
        config.output = out;
    }
    config.validate()?;
    let scenario = config.scenario.build()?;
    let records = run_sweep(&config, &scenario)?;
    let verdict = detect_switchover(&records, scenario.n(), config.delta_min);
    match &config.output {
        Some(p) => {
            let mut w = create(p)?;
            write_sweep_csv(&records, &mut w)?;
            w.flush()?;
        }
        None => write_sweep_csv(&records, io::stdout().lock())?,
    }
    let summary = json!({
        "schema": 1,
        "n": scenario.n(),
        "r": scenario.r(),
        "k": records.first().map(|r| r.k),
        "master_seed": config.master_seed,
        "delta_min": config.delta_min,
        "verdict": verdict,
    });
    if config.output.is_some() {
        print_json(&summary)?;
    } else {
        eprintln!("{}", serde_json::to_string(&summary)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn expansion(args: &ExpansionArgs) -> Result<ExitCode> {
    let graph = Graph::read_edge_list(&args.graph)?;
    let report = if args.probe {
        probe_edge_expansion(&graph, args.q, args.samples, RngStream::new(args.seed, 0))?
    } else if args.exact || graph.n() <= switchover::expansion::MAX_EXACT_VERTICES {
        exact_edge_expansion(&graph, args.q)?
    } else {
        bail!("{} vertices is too many for exact expansion; pass --probe", graph.n());
    };
    let mut value = serde_json::to_value(&report)?;
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(1));
    }
    print_json(&value)?;
    Ok(ExitCode::SUCCESS)
}
