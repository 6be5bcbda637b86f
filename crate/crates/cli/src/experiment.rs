//! Runs the experiment protocol for every sweep point: generate traffic,
//! split off full wavelengths, groom with the GA, groom the max-traffic
//! matrix as a static baseline, and compute bounds.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use wdm_groom::bounds::{self, BoundsReport};
use wdm_groom::evolve::{self, EvolutionResult};
use wdm_groom::grooming::SolutionDocument;
use wdm_groom::traffic::{generate, TrafficDocument};
use wdm_groom::{validate, Fitness, GroomingSolution, Instance, Topology, TrafficParams, TrafficSet};

use crate::config::{ExperimentConfig, SweepPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReuseComparison {
    pub reuse: Fitness,
    pub no_reuse: Fitness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointResult {
    pub n: usize,
    #[serde(rename = "g")]
    pub granularity: u32,
    #[serde(rename = "M")]
    pub patterns: usize,
    pub seed: u64,
    /// Full wavelengths split off before grooming; each costs 2 ADMs and
    /// is not included in the fitness values below.
    pub dedicated_wavelengths: u32,
    pub bounds: BoundsReport,
    pub ga: Fitness,
    pub ga_trace: Vec<Fitness>,
    pub ga_evaluations: u64,
    pub baseline: Fitness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reuse_comparison: Option<ReuseComparison>,
    /// The groomed (post-split) traffic.
    pub traffic: TrafficDocument,
    pub ga_solution: SolutionDocument,
    pub baseline_solution: SolutionDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub points: Vec<PointResult>,
}

/// A result plus the wall-clock seconds per point. Times live outside the
/// result document so identical runs produce identical documents.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub result: ExperimentResult,
    pub seconds: Vec<f64>,
}

fn checked(solution: &GroomingSolution, traffic: &TrafficSet, topology: &Topology, what: &str) -> Result<()> {
    let violations = validate(solution, traffic, topology);
    if let Some(first) = violations.first() {
        bail!("{what} failed validation ({} violations), first: {first}", violations.len());
    }
    for m in 0..traffic.pattern_count() {
        if let Some(first) = validate(solution, &traffic.pattern(m), topology).first() {
            bail!("{what} failed validation in pattern {m}: {first}");
        }
    }
    Ok(())
}

pub fn run_point(cfg: &ExperimentConfig, point: SweepPoint) -> Result<(PointResult, f64)> {
    let start = Instant::now();
    let SweepPoint { nodes: n, granularity: g, patterns: m } = point;
    let topology = cfg.topology_for(n)?;
    let raw = generate(&TrafficParams { lo: cfg.lo, hi: cfg.hi, ..TrafficParams::new(n, m, g, cfg.seed) })?;
    let split = raw.split_over_granularity();
    let traffic = split.residual;
    let instance = Instance::new(&traffic, &topology)?;
    let ga_cfg = cfg.ga.clone();

    let ga: EvolutionResult = evolve::run_instance(&instance, &ga_cfg, cfg.reuse)?;
    checked(&ga.best_solution, &traffic, &topology, "GA solution")?;

    let peak = traffic.max_matrix();
    let peak_instance = Instance::new(&peak, &topology)?;
    let base = evolve::run_instance(&peak_instance, &ga_cfg, cfg.reuse)?;
    checked(&base.best_solution, &traffic, &topology, "baseline solution")?;

    let reuse_comparison = if cfg.compare_reuse {
        let other = evolve::run_instance(&instance, &ga_cfg, !cfg.reuse)?;
        checked(&other.best_solution, &traffic, &topology, "comparison solution")?;
        let (reuse, no_reuse) = if cfg.reuse {
            (ga.best_fitness, other.best_fitness)
        } else {
            (other.best_fitness, ga.best_fitness)
        };
        Some(ReuseComparison { reuse, no_reuse })
    } else {
        None
    };

    let result = PointResult {
        n,
        granularity: g,
        patterns: m,
        seed: cfg.seed,
        dedicated_wavelengths: split.dedicated.iter().map(|&(_, c)| c).sum(),
        bounds: bounds::bounds(&traffic, &topology),
        ga: ga.best_fitness,
        ga_trace: ga.fitness_trace,
        ga_evaluations: ga.evaluations,
        baseline: base.best_fitness,
        reuse_comparison,
        traffic: traffic.to_document(),
        ga_solution: ga.best_solution.to_document(&instance),
        baseline_solution: base.best_solution.to_document(&peak_instance),
    };
    Ok((result, start.elapsed().as_secs_f64()))
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    run_experiment_with(cfg, |_, _| {})
}

/// Like [`run_experiment`], calling `progress` after each point.
pub fn run_experiment_with(cfg: &ExperimentConfig, mut progress: impl FnMut(&PointResult, f64)) -> Result<ExperimentRun> {
    cfg.validate()?;
    let mut points = Vec::new();
    let mut seconds = Vec::new();
    for point in cfg.points()? {
        let (result, secs) = run_point(cfg, point)
            .with_context(|| format!("n={} g={} M={}", point.nodes, point.granularity, point.patterns))?;
        progress(&result, secs);
        points.push(result);
        seconds.push(secs);
    }
    Ok(ExperimentRun {
        result: ExperimentResult { config: cfg.clone(), points },
        seconds,
    })
}

/// Rebuilds every stored solution from its serialized form and validates
/// it against the stored traffic.
pub fn revalidate(result: &ExperimentResult) -> Result<()> {
    for p in &result.points {
        let label = format!("n={} g={} M={}", p.n, p.granularity, p.patterns);
        let topology = result.config.topology_for(p.n)?;
        let traffic = TrafficSet::from_document(p.traffic.clone())?;
        let instance = Instance::new(&traffic, &topology)?;
        for (doc, what, fitness) in [
            (&p.ga_solution, "GA solution", p.ga),
            (&p.baseline_solution, "baseline solution", p.baseline),
        ] {
            let solution = GroomingSolution::from_document(doc, &instance).with_context(|| format!("{label}: {what}"))?;
            checked(&solution, &traffic, &topology, what).with_context(|| label.clone())?;
            if solution.fitness() != fitness {
                bail!("{label}: {what} has {} but reports {fitness}", solution.fitness());
            }
        }
    }
    Ok(())
}
