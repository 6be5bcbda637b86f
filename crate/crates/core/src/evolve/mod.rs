//! (μ+λ) genetic algorithm over demand permutations.
//!
//! Each offspring picks two parents uniformly, applies order crossover
//! with probability `crossover_rate` (otherwise clones the first parent),
//! then inversion mutation with probability `mutation_rate`. Parents and
//! offspring are ranked by [`Fitness`], ties broken by genome order, and
//! the best `mu` survive. The run stops after a fixed number of
//! generations.

mod operators;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use operators::{
    crossover, cut_points, init_population, invert_at, mutate, order_crossover_at,
    random_permutation,
};

use crate::error::{Error, Result};
use crate::grooming::{decode, Fitness, GroomingSolution, Instance};
use crate::topology::Topology;
use crate::traffic::{DemandId, TrafficSet};

/// Keeps GA random streams apart from traffic generation under the same
/// user seed.
const GA_KEY: u64 = 0x6761_5f73_7472_6561;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaConfig {
    pub mu: usize,
    pub lambda: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    /// Population and offspring 200, 500 generations, rates 0.6 / 0.4,
    /// best of 10 restarts.
    fn default() -> Self {
        GaConfig {
            mu: 200,
            lambda: 200,
            generations: 500,
            crossover_rate: 0.6,
            mutation_rate: 0.4,
            restarts: 10,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 || self.lambda == 0 {
            return Err(Error::InvalidParameter("mu and lambda must be >= 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        for (name, rate) in [
            ("crossover rate", self.crossover_rate),
            ("mutation rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidParameter(format!("{name} {rate} not in [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub best_solution: GroomingSolution,
    pub best_fitness: Fitness,
    pub best_genome: Vec<DemandId>,
    /// Best fitness after initialization and after every generation, for
    /// the restart that produced the overall best.
    pub fitness_trace: Vec<Fitness>,
    /// One trace per restart.
    pub restart_traces: Vec<Vec<Fitness>>,
    pub evaluations: u64,
}

#[derive(Debug, Clone)]
struct Individual {
    genome: Vec<DemandId>,
    fitness: Fitness,
}

fn rank(pop: &mut [Individual]) {
    pop.sort_by(|x, y| x.fitness.cmp(&y.fitness).then_with(|| x.genome.cmp(&y.genome)));
}

/// Runs the GA on post-split traffic.
pub fn run(traffic: &TrafficSet, topology: &Topology, cfg: &GaConfig, reuse: bool) -> Result<EvolutionResult> {
    let instance = Instance::new(traffic, topology)?;
    run_instance(&instance, cfg, reuse)
}

pub fn run_instance(instance: &Instance, cfg: &GaConfig, reuse: bool) -> Result<EvolutionResult> {
    cfg.validate()?;
    let mut best: Option<(Individual, usize)> = None;
    let mut traces = Vec::with_capacity(cfg.restarts);
    let mut evaluations = 0;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ GA_KEY);
        rng.set_stream(restart as u64);
        let (winner, trace, evals) = evolve_once(instance, cfg, reuse, &mut rng)?;
        evaluations += evals;
        traces.push(trace);
        if best.as_ref().map_or(true, |(b, _)| winner.fitness < b.fitness) {
            best = Some((winner, restart));
        }
    }
    let (winner, restart) = best.expect("restarts >= 1");
    let best_solution = decode(instance, &winner.genome, reuse)?;
    debug_assert_eq!(best_solution.fitness(), winner.fitness);
    Ok(EvolutionResult {
        best_fitness: winner.fitness,
        best_solution,
        best_genome: winner.genome,
        fitness_trace: traces[restart].clone(),
        restart_traces: traces,
        evaluations,
    })
}

fn evolve_once(
    instance: &Instance,
    cfg: &GaConfig,
    reuse: bool,
    rng: &mut ChaCha8Rng,
) -> Result<(Individual, Vec<Fitness>, u64)> {
    let len = instance.demand_count();
    let score = |genome: &[DemandId]| decode(instance, genome, reuse).map(|s| s.fitness());
    let mut evaluations = 0u64;

    let mut population = Vec::with_capacity(cfg.mu + cfg.lambda);
    for genome in init_population(cfg.mu, len, rng) {
        let fitness = score(&genome)?;
        evaluations += 1;
        population.push(Individual { genome, fitness });
    }
    rank(&mut population);
    let mut trace = Vec::with_capacity(cfg.generations + 1);
    trace.push(population[0].fitness);

    for _ in 0..cfg.generations {
        for _ in 0..cfg.lambda {
            let a = rng.gen_range(0..cfg.mu);
            let b = rng.gen_range(0..cfg.mu);
            let mut changed = false;
            let mut child = if rng.gen_bool(cfg.crossover_rate) {
                changed = true;
                crossover(&population[a].genome, &population[b].genome, rng)?
            } else {
                population[a].genome.clone()
            };
            if rng.gen_bool(cfg.mutation_rate) && len >= 2 {
                changed = true;
                mutate(&mut child, rng);
            }
            // an untouched clone decodes exactly like its parent
            let fitness = if changed {
                evaluations += 1;
                score(&child)?
            } else {
                population[a].fitness
            };
            population.push(Individual { genome: child, fitness });
        }
        rank(&mut population);
        population.truncate(cfg.mu);
        trace.push(population[0].fitness);
    }
    Ok((population.swap_remove(0), trace, evaluations))
}
