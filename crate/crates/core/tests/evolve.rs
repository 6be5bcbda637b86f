use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdm_groom::evolve::{self, crossover, init_population, mutate, random_permutation};
use wdm_groom::{validate, GaConfig, Topology};
use wdm_groom_testkit as kit;

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&g| g < p.len() && !std::mem::replace(&mut seen[g], true))
}

#[test]
fn initial_population_has_no_position_bias() {
    let samples = init_population(100_000, 5, &mut ChaCha8Rng::seed_from_u64(2024));
    let mut counts = [[0u64; 5]; 5];
    for p in &samples {
        for (pos, &v) in p.iter().enumerate() {
            counts[pos][v] += 1;
        }
    }
    let expected = samples.len() as f64 / 5.0;
    let chi2: f64 = counts
        .iter()
        .flatten()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // 0.99 quantile of chi-square with (5-1)^2 = 16 degrees of freedom
    assert!(chi2 < 32.0, "chi2 = {chi2}");
}

#[test]
fn operator_chains_keep_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pool: Vec<Vec<usize>> = (0..20).map(|_| random_permutation(30, &mut rng)).collect();
    for i in 0..10_000 {
        let a = i % 20;
        let b = (i * 7 + 3) % 20;
        let mut child = crossover(&pool[a], &pool[b], &mut rng).unwrap();
        mutate(&mut child, &mut rng);
        assert!(is_permutation(&child));
        pool[i % 20] = child;
    }
}

#[test]
fn ga_reaches_exhaustive_optimum_on_four_node_star() {
    let t = Topology::star(4).unwrap();
    let cfg = GaConfig { mu: 50, lambda: 50, generations: 100, restarts: 1, ..GaConfig::default() };
    for seed in 0..5 {
        let ts = kit::random_traffic(4, 1, 16, 0, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        let optimum = kit::min_adms(&ts, &t);
        let result = evolve::run(&ts, &t, &GaConfig { seed, ..cfg.clone() }, true).unwrap();
        assert_eq!(result.best_fitness.adms, optimum, "seed {seed}");
        assert!(validate(&result.best_solution, &ts, &t).is_empty());
    }
}

#[test]
fn runs_are_elitist_and_deterministic() {
    let t = Topology::binary(9).unwrap();
    let ts = kit::random_traffic(9, 2, 24, 0, 15, &mut ChaCha8Rng::seed_from_u64(1));
    let cfg = GaConfig { mu: 20, lambda: 20, generations: 30, restarts: 3, seed: 77, ..GaConfig::default() };
    for reuse in [false, true] {
        let a = evolve::run(&ts, &t, &cfg, reuse).unwrap();
        let b = evolve::run(&ts, &t, &cfg, reuse).unwrap();
        assert_eq!(a.best_genome, b.best_genome);
        assert_eq!(a.restart_traces, b.restart_traces);
        assert_eq!(a.evaluations, b.evaluations);
        for trace in &a.restart_traces {
            assert_eq!(trace.len(), 31);
            assert!(trace.windows(2).all(|w| w[1] <= w[0]));
        }
        let best = a.restart_traces.iter().map(|tr| *tr.last().unwrap()).min().unwrap();
        assert_eq!(a.best_fitness, best);
        assert!(is_permutation(&a.best_genome));
        assert!(validate(&a.best_solution, &ts, &t).is_empty());
    }
}

#[test]
fn different_seeds_explore_differently() {
    let t = Topology::binary(9).unwrap();
    let ts = kit::random_traffic(9, 2, 24, 0, 15, &mut ChaCha8Rng::seed_from_u64(1));
    let cfg = GaConfig { mu: 10, lambda: 10, generations: 5, restarts: 1, ..GaConfig::default() };
    let a = evolve::run(&ts, &t, &GaConfig { seed: 1, ..cfg.clone() }, true).unwrap();
    let b = evolve::run(&ts, &t, &GaConfig { seed: 2, ..cfg }, true).unwrap();
    assert_ne!(a.best_genome, b.best_genome);
}
