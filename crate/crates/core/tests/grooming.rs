use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdm_groom::grooming::{decode_with_stats, SolutionDocument};
use wdm_groom::topology::Direction;
use wdm_groom::traffic::demand_index;
use wdm_groom::{decode, validate, Fitness, GroomingSolution, Instance, Topology, TrafficSet};
use wdm_groom_testkit as kit;

fn topology(kind: u8, n: usize, seed: u64) -> Topology {
    match kind {
        0 => Topology::star(n).unwrap(),
        1 => Topology::binary(n).unwrap(),
        _ => Topology::from_edges(&kit::random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap(),
    }
}

fn instance() -> impl Strategy<Value = (Topology, TrafficSet, u64)> {
    (0u8..3, 2usize..9, 1usize..4, 8u32..40, any::<u64>()).prop_map(|(kind, n, m, g, seed)| {
        let t = topology(kind, n, seed);
        let ts = kit::random_traffic(n, m, g, 0, 15, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        (t, ts.split_over_granularity().residual, seed)
    })
}

fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn groups(s: &GroomingSolution) -> Vec<Vec<usize>> {
    s.wavelengths().iter().map(|w| w.assigned().to_vec()).collect()
}

#[test]
fn can_assign_examples() {
    let t = Topology::star(3).unwrap();
    let mut ts = TrafficSet::zeros(3, 1, 16).unwrap();
    ts.set(0, 1, 2, 5);
    let inst = Instance::new(&ts, &t).unwrap();
    let d = demand_index(3, 1, 2);
    let w = inst.empty_wavelength();
    assert!(inst.can_assign(&w, d, 2));
    assert!(!inst.can_assign(&w, d, 1));

    // 20 already on leaf 1's uplink, 5 more does not fit in 24
    let mut ts = TrafficSet::zeros(4, 1, 24).unwrap();
    ts.set(0, 1, 2, 20);
    ts.set(0, 1, 3, 5);
    let t = Topology::star(4).unwrap();
    let inst = Instance::new(&ts, &t).unwrap();
    let mut w = inst.empty_wavelength();
    inst.assign(&mut w, demand_index(4, 1, 2));
    let with_both = kit::loads_of(&ts, &kit::Tree::of(&t), [demand_index(4, 1, 2), demand_index(4, 1, 3)]);
    assert!(!with_both.fits(24));
    assert!(!inst.can_assign(&w, demand_index(4, 1, 3), 2));
}

#[test]
fn star_assignment_bypasses_hub() {
    let t = Topology::star(3).unwrap();
    let mut ts = TrafficSet::zeros(3, 1, 16).unwrap();
    ts.set(0, 1, 2, 5);
    let inst = Instance::new(&ts, &t).unwrap();
    let mut w = inst.empty_wavelength();
    inst.assign(&mut w, demand_index(3, 1, 2));
    assert_eq!(w.drop_nodes(), vec![1, 2]);
    assert_eq!(w.link_residual(0, Direction::ChildToParent, 0), 11);
    assert_eq!(w.link_residual(1, Direction::ParentToChild, 0), 11);
    assert_eq!(w.link_residual(0, Direction::ParentToChild, 0), 16);
    assert_eq!((w.add_residual(0, 0), w.drop_residual(0, 0)), (16, 16));
    assert_eq!((w.add_residual(1, 0), w.drop_residual(2, 0)), (11, 11));
}

#[test]
fn internal_origin_uses_add_budget() {
    let t = Topology::binary(7).unwrap();
    let mut ts = TrafficSet::zeros(7, 2, 16).unwrap();
    ts.set(0, 1, 3, 4);
    ts.set(1, 1, 3, 9);
    let inst = Instance::new(&ts, &t).unwrap();
    let mut w = inst.empty_wavelength();
    inst.assign(&mut w, demand_index(7, 1, 3));
    assert!(t.is_internal(1));
    assert_eq!((w.add_residual(1, 0), w.add_residual(1, 1)), (12, 7));
    assert_eq!(w.drop_residual(1, 0), 16);
}

#[test]
fn oversized_demand_is_rejected() {
    let t = Topology::star(3).unwrap();
    let mut ts = TrafficSet::zeros(3, 1, 8).unwrap();
    ts.set(0, 2, 1, 9);
    assert!(Instance::new(&ts, &t).is_err());
}

#[test]
fn metrics_examples() {
    let s = GroomingSolution::empty(6);
    assert_eq!(s.fitness(), Fitness::new(0, 0));
    let t = Topology::star(3).unwrap();
    let mut ts = TrafficSet::zeros(3, 1, 16).unwrap();
    ts.set(0, 1, 2, 1);
    ts.set(0, 0, 2, 1);
    let inst = Instance::new(&ts, &t).unwrap();
    let s = GroomingSolution::from_assignment(&inst, &[vec![demand_index(3, 1, 2), demand_index(3, 0, 2)]]).unwrap();
    assert_eq!(s.fitness(), Fitness::new(3, 1));
}

#[test]
fn fitness_order() {
    assert!(Fitness::new(115, 26) < Fitness::new(119, 27));
    assert!(Fitness::new(10, 4) < Fitness::new(10, 5));
    assert!(Fitness::new(9, 50) < Fitness::new(10, 1));
    assert_eq!(Fitness::new(7, 3).cmp(&Fitness::new(7, 3)), std::cmp::Ordering::Equal);
}

#[test]
fn four_node_star_against_exhaustive_oracle() {
    let t = Topology::star(4).unwrap();
    for seed in 0..5 {
        let ts = kit::random_traffic(4, 2, 16, 0, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        let inst = Instance::new(&ts, &t).unwrap();
        let optimum = kit::min_adms(&ts, &t);
        assert!(optimum >= wdm_groom::bounds::m_min(&ts));
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        let mut best = usize::MAX;
        for _ in 0..2000 {
            let mut perm: Vec<usize> = (0..12).collect();
            perm.shuffle(&mut rng);
            for reuse in [false, true] {
                let s = decode(&inst, &perm, reuse).unwrap();
                assert!(s.adm_count() >= optimum);
                best = best.min(s.adm_count());
                assert_eq!(groups(&s), kit::reference_decode(&ts, &t, &perm, reuse));
            }
        }
        assert_eq!(best, optimum, "seed {seed}");
    }
}

#[test]
fn solution_document_round_trip() {
    let t = Topology::binary(6).unwrap();
    let ts = kit::random_traffic(6, 3, 24, 0, 15, &mut ChaCha8Rng::seed_from_u64(4));
    let inst = Instance::new(&ts, &t).unwrap();
    let s = decode(&inst, &shuffled(30, 4), true).unwrap();
    let doc = s.to_document(&inst);
    assert_eq!(doc.wavelengths[0].index, 1);
    let text = serde_json::to_string(&doc).unwrap();
    let back: SolutionDocument = serde_json::from_str(&text).unwrap();
    let again = GroomingSolution::from_document(&back, &inst).unwrap();
    assert_eq!(again, s);
    assert!(validate(&again, &ts, &t).is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_matches_reference_and_validates((t, ts, seed) in instance(), reuse in any::<bool>()) {
        let inst = Instance::new(&ts, &t).unwrap();
        let perm = shuffled(ts.demand_count(), seed);
        let (s, stats) = decode_with_stats(&inst, &perm, reuse).unwrap();
        prop_assert_eq!(groups(&s), kit::reference_decode(&ts, &t, &perm, reuse));
        prop_assert!(validate(&s, &ts, &t).is_empty());
        prop_assert_eq!(stats.leaf_add_drop_rejections, 0);
        prop_assert_eq!(kit::adm_count(ts.node_count(), &groups(&s)), s.adm_count());
        prop_assert!(2 * s.wavelength_count() <= s.adm_count());
        for d in 0..ts.demand_count() {
            prop_assert_eq!(s.wavelength_of(d).is_some(), !ts.is_zero(d));
        }
        prop_assert_eq!(&s, &decode(&inst, &perm, reuse).unwrap());
    }

    #[test]
    fn max_matrix_solution_serves_every_pattern((t, ts, seed) in instance()) {
        let peak = ts.max_matrix();
        let inst = Instance::new(&peak, &t).unwrap();
        let s = decode(&inst, &shuffled(ts.demand_count(), seed), true).unwrap();
        for m in 0..ts.pattern_count() {
            prop_assert!(validate(&s, &ts.pattern(m), &t).is_empty());
        }
        prop_assert!(validate(&s, &ts, &t).is_empty());
    }

    #[test]
    fn incremental_state_matches_recompute((t, ts, seed) in instance()) {
        let inst = Instance::new(&ts, &t).unwrap();
        let tree = kit::Tree::of(&t);
        let mut w = inst.empty_wavelength();
        let mut taken = Vec::new();
        for d in shuffled(ts.demand_count(), seed) {
            if ts.is_zero(d) || !inst.can_assign(&w, d, 2) {
                continue;
            }
            inst.assign(&mut w, d);
            taken.push(d);
            let expect = kit::loads_of(&ts, &tree, taken.iter().copied());
            prop_assert!(expect.fits(ts.granularity()));
            for m in 0..ts.pattern_count() {
                for l in 0..t.link_count() {
                    for dir in Direction::BOTH {
                        prop_assert_eq!(u64::from(w.link_load(l, dir, m)), expect.link(l, dir, m));
                    }
                }
                for v in 0..t.node_count() {
                    prop_assert_eq!(u64::from(w.add_load(v, m)), expect.add[v * ts.pattern_count() + m]);
                    prop_assert_eq!(u64::from(w.drop_load(v, m)), expect.drop[v * ts.pattern_count() + m]);
                }
            }
        }
    }
}
