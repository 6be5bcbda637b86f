use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use wdm_groom::bounds;
use wdm_groom::topology::parse_edge_list;
use wdm_groom::traffic::generate;
use wdm_groom::{Topology, TopologyKind, TrafficParams, TrafficSet};
use wdm_groom_cli::{export, revalidate, run_experiment_with, ExperimentConfig};

#[derive(Parser)]
#[command(name = "wdm-groom", version, about = "Strictly nonblocking traffic grooming on WDM stars and trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment sweep and export the results.
    Run(RunArgs),
    /// Generate a random traffic document.
    Generate(GenerateArgs),
    /// Print the bounds report for a traffic document.
    Bounds(BoundsArgs),
    /// Re-validate every solution stored in a result document.
    Validate {
        /// Result document written by `run`.
        result: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file; flags override it.
    config: Option<PathBuf>,
    /// star, binary or tree
    #[arg(long)]
    topology: Option<TopologyKind>,
    /// Edge-list file for `--topology tree`.
    #[arg(long)]
    edges: Option<PathBuf>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    granularity: Option<u32>,
    #[arg(long)]
    patterns: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    lo: Option<u32>,
    #[arg(long)]
    hi: Option<u32>,
    #[arg(long)]
    generations: Option<usize>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    offspring: Option<usize>,
    #[arg(long)]
    crossover_rate: Option<f64>,
    #[arg(long)]
    mutation_rate: Option<f64>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Decode without wavelength reuse.
    #[arg(long)]
    no_reuse: bool,
    /// Also run the opposite reuse setting and report both.
    #[arg(long)]
    compare_reuse: bool,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',')]
    sweep_nodes: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    sweep_granularity: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    sweep_patterns: Option<Vec<usize>>,
    /// Output directory for result.json and results.csv.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(t) = self.topology {
            cfg.topology = t;
        }
        if let Some(e) = &self.edges {
            cfg.edges = Some(e.clone());
        }
        if let Some(n) = self.nodes {
            cfg.nodes = vec![n];
        }
        if let Some(g) = self.granularity {
            cfg.granularity = vec![g];
        }
        if let Some(m) = self.patterns {
            cfg.patterns = vec![m];
        }
        if let Some(v) = &self.sweep_nodes {
            cfg.nodes = v.clone();
        }
        if let Some(v) = &self.sweep_granularity {
            cfg.granularity = v.clone();
        }
        if let Some(v) = &self.sweep_patterns {
            cfg.patterns = v.clone();
        }
        let ga = &mut cfg.ga;
        ga.seed = self.seed.unwrap_or(ga.seed);
        ga.generations = self.generations.unwrap_or(ga.generations);
        ga.mu = self.population.unwrap_or(ga.mu);
        ga.lambda = self.offspring.unwrap_or(ga.lambda);
        ga.crossover_rate = self.crossover_rate.unwrap_or(ga.crossover_rate);
        ga.mutation_rate = self.mutation_rate.unwrap_or(ga.mutation_rate);
        ga.restarts = self.restarts.unwrap_or(ga.restarts);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.lo = self.lo.unwrap_or(cfg.lo);
        cfg.hi = self.hi.unwrap_or(cfg.hi);
        if self.no_reuse {
            cfg.reuse = false;
        }
        if self.compare_reuse {
            cfg.compare_reuse = true;
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long, default_value_t = 1)]
    patterns: usize,
    #[arg(long, default_value_t = 24)]
    granularity: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    lo: u32,
    #[arg(long, default_value_t = 15)]
    hi: u32,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Traffic document.
    traffic: PathBuf,
    #[arg(long, default_value = "binary")]
    topology: TopologyKind,
    #[arg(long)]
    edges: Option<PathBuf>,
}

fn run(args: RunArgs) -> Result<()> {
    let cfg = args.config()?;
    eprintln!("{:>4} {:>4} {:>3}  {:>12} {:>12}  {:>8}", "n", "g", "M", "GA", "baseline", "seconds");
    let run = run_experiment_with(&cfg, |p, secs| {
        eprintln!(
            "{:>4} {:>4} {:>3}  {:>12} {:>12}  {:>8.2}",
            p.n,
            p.granularity,
            p.patterns,
            format!("{}/{}", p.ga.adms, p.ga.wavelengths),
            format!("{}/{}", p.baseline.adms, p.baseline.wavelengths),
            secs
        );
    })?;
    match &args.out {
        Some(dir) => {
            let (json, table) = export::write_outputs(&run, dir)?;
            println!("{}\n{}", json.display(), table.display());
        }
        None => print!("{}", export::csv(&run.result, &run.seconds)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Generate(a) => (|| {
            let ts = generate(&TrafficParams { lo: a.lo, hi: a.hi, ..TrafficParams::new(a.nodes, a.patterns, a.granularity, a.seed) })?;
            let text = ts.to_json()? + "\n";
            match &a.out {
                Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(())
        })(),
        Command::Bounds(a) => (|| {
            let text = std::fs::read_to_string(&a.traffic).with_context(|| format!("reading {}", a.traffic.display()))?;
            let ts = TrafficSet::from_json(&text)?.split_over_granularity().residual;
            let topology = match &a.edges {
                Some(path) => Topology::from_edges(&parse_edge_list(&std::fs::read_to_string(path)?)?)?,
                None => Topology::build(a.topology, ts.node_count())?,
            };
            println!("{}", serde_json::to_string_pretty(&bounds::bounds(&ts, &topology))?);
            Ok(())
        })(),
        Command::Validate { result } => (|| {
            let doc = export::load_result(&result)?;
            revalidate(&doc)?;
            println!("{} points valid", doc.points.len());
            Ok(())
        })(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
