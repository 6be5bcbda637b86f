use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdm_groom::topology::Direction;
use wdm_groom::traffic::{demand_count, demand_index, demand_pair, generate};
use wdm_groom::{Topology, TrafficParams, TrafficSet};
use wdm_groom_testkit as kit;

#[test]
fn demand_ids_biject_onto_ordered_pairs() {
    for n in 2..12 {
        let mut seen = vec![false; demand_count(n)];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = demand_index(n, i, j);
                    assert_eq!(d, i * (n - 1) + if j < i { j } else { j - 1 });
                    assert!(!std::mem::replace(&mut seen[d], true));
                    assert_eq!(demand_pair(n, d), (i, j));
                }
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }
}

#[test]
fn two_node_shape() {
    let ts = generate(&TrafficParams::new(2, 1, 16, 5)).unwrap();
    assert_eq!((ts.node_count(), ts.pattern_count(), ts.demand_count()), (2, 1, 2));
    assert!(ts.get(0, 0, 1) <= 15 && ts.get(0, 1, 0) <= 15);
    assert_eq!(ts.get(0, 0, 0), 0);
}

#[test]
fn bad_parameters() {
    assert!(generate(&TrafficParams::new(1, 1, 16, 0)).is_err());
    assert!(generate(&TrafficParams::new(3, 0, 16, 0)).is_err());
    assert!(generate(&TrafficParams { lo: 5, hi: 4, ..TrafficParams::new(3, 1, 16, 0) }).is_err());
}

#[test]
fn degenerate_interval_pins_middle_patterns() {
    let ts = generate(&TrafficParams { lo: 4, hi: 4, ..TrafficParams::new(5, 6, 16, 9) }).unwrap();
    for m in 0..6 {
        for d in 0..ts.demand_count() {
            assert_eq!(ts.demand(m, d), 4);
        }
    }
}

#[test]
fn extremes_do_not_depend_on_pattern_count() {
    let two = generate(&TrafficParams::new(7, 2, 24, 3)).unwrap();
    for m_count in [4, 8] {
        let more = generate(&TrafficParams::new(7, m_count, 24, 3)).unwrap();
        assert_eq!(more.matrix(0), two.matrix(0));
        assert_eq!(more.matrix(m_count - 1), two.matrix(1));
    }
}

#[test]
fn split_examples() {
    let mut ts = TrafficSet::zeros(2, 1, 16).unwrap();
    ts.set(0, 0, 1, 35);
    let s = ts.split_over_granularity();
    assert_eq!(s.dedicated, vec![(demand_index(2, 0, 1), 2)]);
    assert_eq!(s.residual.get(0, 0, 1), 3);

    let mut ts = TrafficSet::zeros(2, 2, 16).unwrap();
    ts.set(0, 0, 1, 35);
    ts.set(1, 0, 1, 10);
    let s = ts.split_over_granularity();
    assert_eq!(s.dedicated_wavelengths(), 2);
    assert_eq!((s.residual.get(0, 0, 1), s.residual.get(1, 0, 1)), (3, 0));

    let small = generate(&TrafficParams::new(6, 3, 16, 1)).unwrap();
    let s = small.split_over_granularity();
    assert!(s.dedicated.is_empty());
    assert_eq!(s.residual, small);
}

#[test]
fn max_matrix_examples() {
    let one = generate(&TrafficParams::new(5, 1, 16, 2)).unwrap();
    assert_eq!(one.max_matrix(), one);

    let mut ts = TrafficSet::zeros(2, 2, 16).unwrap();
    ts.set(0, 1, 0, 3);
    ts.set(1, 1, 0, 7);
    assert_eq!(ts.max_matrix().get(0, 1, 0), 7);

    let four = generate(&TrafficParams::new(8, 4, 16, 17)).unwrap();
    let peak = four.max_matrix();
    assert_eq!(peak.pattern_count(), 1);
    for i in 0..8 {
        for j in 0..8 {
            let mut scan = 0;
            for m in 0..4 {
                scan = scan.max(four.get(m, i, j));
            }
            assert_eq!(peak.get(0, i, j), scan);
        }
    }
}

#[test]
fn document_round_trip() {
    let ts = generate(&TrafficParams::new(4, 3, 24, 8)).unwrap();
    let text = ts.to_json().unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["n", "M", "g", "demands"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(TrafficSet::from_json(&text).unwrap(), ts);
    assert!(TrafficSet::from_json(r#"{"n":2,"M":1,"g":16,"demands":[[[1,2],[3,0]]]}"#).is_err());
}

#[test]
fn star_leaf_link_load_band() {
    // 14 outgoing demands of mean 7.5 per leaf uplink
    let t = Topology::star(15).unwrap();
    let mut total = 0.0;
    let mut count = 0.0;
    for seed in 0..20 {
        let ts = generate(&TrafficParams::new(15, 2, 24, seed)).unwrap();
        let loads = kit::all_link_loads(&ts, &t);
        for l in 0..t.link_count() {
            for dir in Direction::BOTH {
                total += loads.link(l, dir, 0) as f64;
                count += 1.0;
            }
        }
    }
    let mean = total / count;
    assert!((90.0..=120.0).contains(&mean), "mean leaf link load {mean}");
}

proptest! {
    #[test]
    fn generation_is_reproducible_and_contained(n in 2usize..9, m in 1usize..6, seed in any::<u64>(), lo in 0u32..6, span in 0u32..12) {
        let p = TrafficParams { lo, hi: lo + span, ..TrafficParams::new(n, m, 32, seed) };
        let a = generate(&p).unwrap();
        prop_assert_eq!(&a, &generate(&p).unwrap());
        for d in 0..a.demand_count() {
            let (x, y) = (a.demand(0, d), a.demand(m - 1, d));
            prop_assert!(x >= lo && x <= lo + span);
            for k in 0..m {
                let r = a.demand(k, d);
                prop_assert!(x.min(y) <= r && r <= x.max(y));
            }
        }
        for i in 0..n {
            for k in 0..m {
                prop_assert_eq!(a.get(k, i, i), 0);
            }
        }
    }

    #[test]
    fn split_conserves_demand(n in 2usize..7, m in 1usize..4, g in 1u32..20, seed in any::<u64>()) {
        let ts = kit::random_traffic(n, m, g, 0, 60, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = ts.split_over_granularity();
        let base = |d| s.dedicated.iter().find(|&&(e, _)| e == d).map_or(0, |&(_, c)| c);
        for d in 0..ts.demand_count() {
            let b = base(d);
            prop_assert_eq!(b, (0..m).map(|k| ts.demand(k, d) / g).max().unwrap());
            for k in 0..m {
                let r = ts.demand(k, d);
                let res = s.residual.demand(k, d);
                prop_assert!(res < g);
                prop_assert!(b * g + res >= r);
                if r >= b * g {
                    prop_assert_eq!(res, r - b * g);
                }
            }
        }
    }

    #[test]
    fn max_matrix_dominates(n in 2usize..7, m in 1usize..5, seed in any::<u64>()) {
        let ts = kit::random_traffic(n, m, 16, 0, 15, &mut ChaCha8Rng::seed_from_u64(seed));
        let peak = ts.max_matrix();
        for d in 0..ts.demand_count() {
            for k in 0..m {
                prop_assert!(peak.demand(0, d) >= ts.demand(k, d));
            }
        }
    }
}
