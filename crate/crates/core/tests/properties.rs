mod common;

use proptest::prelude::*;
use restless::distances::{compute_distances, compute_distances_counted, restless_walk_distance, static_distance};
use restless::generate::{random_temporal_graph, GenParams};
use restless::path_finder::{Backend, FinderConfig};
use restless::solver::{fill_table, separator_trace, solve, SolveStats, SolverConfig};
use restless::temporal_graph::{validate_restless_path, TemporalGraph};

fn graph() -> impl Strategy<Value = TemporalGraph> {
    (2usize..=8, 1usize..=6, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, tau, density, seed)| {
        let mean = density * (n * (n - 1) / 2) as f64;
        random_temporal_graph(&GenParams { vertices: n, lifetime: tau, edges_per_layer: mean }, seed).unwrap()
    })
}

fn instance() -> impl Strategy<Value = (TemporalGraph, usize, usize, usize, usize)> {
    (graph(), any::<prop::sample::Index>(), any::<prop::sample::Index>(), 1usize..=3, 1usize..=6).prop_filter_map(
        "distinct endpoints",
        |(g, s, z, delta, k)| {
            let n = g.vertex_count();
            let (s, z) = (s.index(n), z.index(n));
            (s != z).then_some((g, s, z, delta, k))
        },
    )
}

fn cfg(backend: Backend, seed: u64) -> SolverConfig {
    SolverConfig { finder: FinderConfig { backend, seed, ..FinderConfig::default() }, ..SolverConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn yes_answers_carry_valid_witnesses((g, s, z, delta, k) in instance(), seed: u64) {
        for backend in [Backend::Brute, Backend::Sieve] {
            let r = solve(&g, s, z, delta, k, &cfg(backend, seed)).unwrap();
            prop_assert_eq!(r.decision, r.witness.is_some());
            if let Some(w) = r.witness {
                prop_assert!(w.len() <= k);
                prop_assert!(validate_restless_path(&g, w.steps(), s, z, delta).is_ok());
            }
        }
    }

    #[test]
    fn monotone_in_delta_and_k((g, s, z, delta, k) in instance()) {
        let brute = cfg(Backend::Brute, 0);
        let base = solve(&g, s, z, delta, k, &brute).unwrap().decision;
        if base {
            prop_assert!(solve(&g, s, z, delta + 1, k, &brute).unwrap().decision);
            prop_assert!(solve(&g, s, z, delta, k + 1, &brute).unwrap().decision);
        }
    }

    #[test]
    fn agrees_with_exhaustive_search((g, s, z, delta, k) in instance()) {
        let oracle = common::shortest_restless_path(&g, s, z, delta).is_some_and(|p| p.len() <= k);
        prop_assert_eq!(solve(&g, s, z, delta, k, &cfg(Backend::Brute, 0)).unwrap().decision, oracle);
    }

    #[test]
    fn time_window_mode_agrees((g, s, z, delta, k) in instance()) {
        let plain = solve(&g, s, z, delta, k, &cfg(Backend::Brute, 0)).unwrap();
        let windowed = solve(&g, s, z, delta, k, &SolverConfig { time_window: true, ..cfg(Backend::Brute, 0) }).unwrap();
        prop_assert_eq!(plain.decision, windowed.decision);
    }

    #[test]
    fn thread_count_is_invisible((g, s, z, delta, k) in instance(), seed: u64) {
        let one = solve(&g, s, z, delta, k, &SolverConfig { threads: Some(1), ..cfg(Backend::Sieve, seed) }).unwrap();
        let three = solve(&g, s, z, delta, k, &SolverConfig { threads: Some(3), ..cfg(Backend::Sieve, seed) }).unwrap();
        prop_assert_eq!(one.witness, three.witness);
        prop_assert_eq!(one.stats.finder, three.stats.finder);
    }

    #[test]
    fn pred_links_respect_the_window((g, s, z, delta, k) in instance()) {
        let dt = compute_distances(&g, z);
        let k = k.min(g.vertex_count() - 1);
        let Some(d) = dt.source_distance(s).get().filter(|&d| d <= k) else { return Ok(()) };
        let ell = k - d;
        let table = fill_table(&g, &dt, s, delta, k, &FinderConfig::with_backend(Backend::Brute), &mut SolveStats::default());
        for i in 0..table.appearances().len() {
            let Some(link) = table.pred(i) else { continue };
            let upper = table.appearances().get(i);
            if let Some(from) = link.from {
                let lower = table.appearances().get(from);
                let (dv, du) = (dt.by_index(from).get().unwrap(), dt.by_index(i).get().unwrap());
                prop_assert!(lower.t <= upper.t);
                prop_assert!(dv > du && du + ell + 1 >= dv);
                prop_assert!(link.steps.len() <= 2 * ell + 1);
            } else if upper.v != s {
                prop_assert!(d <= dt.by_index(i).get().unwrap() + ell);
                prop_assert!(!link.steps.is_empty() && link.steps.len() <= 2 * ell);
            }
            let steps = table.steps_to(i).unwrap();
            if upper.v != s {
                prop_assert!(validate_restless_path(&g, &steps, s, upper.v, delta).is_ok());
                prop_assert!(steps.last().unwrap().t <= upper.t);
            }
        }
    }

    #[test]
    fn distances_match_exhaustive_search(g in graph(), z in any::<prop::sample::Index>()) {
        let z = z.index(g.vertex_count());
        let dt = compute_distances(&g, z);
        for (a, d) in dt.entries() {
            prop_assert_eq!(d.get(), common::temporal_distance(&g, a.v, a.t, z));
        }
    }

    #[test]
    fn distances_are_monotone_in_time(g in graph(), z in any::<prop::sample::Index>()) {
        let z = z.index(g.vertex_count());
        let dt = compute_distances(&g, z);
        for v in 0..g.vertex_count() {
            for t in 1..g.lifetime() {
                prop_assert!(dt.get(v, t) <= dt.get(v, t + 1));
            }
        }
    }

    #[test]
    fn distance_work_is_linear(g in graph(), z in any::<prop::sample::Index>()) {
        let (_, work) = compute_distances_counted(&g, z.index(g.vertex_count()));
        prop_assert!(work.total() <= 8 * g.size() + 3);
    }

    #[test]
    fn lower_bound_chain((g, s, z, delta, _k) in instance()) {
        let Some(path) = common::shortest_restless_path(&g, s, z, delta) else { return Ok(()) };
        let walk = restless_walk_distance(&g, s, z, delta);
        let temporal = compute_distances(&g, z).source_distance(s);
        prop_assert!(static_distance(&g, s, z) <= temporal);
        prop_assert!(temporal <= walk);
        prop_assert!(walk.get().unwrap() <= path.len());
    }

    #[test]
    fn separators_on_shortest_paths((g, s, z, delta, _k) in instance()) {
        let dt = compute_distances(&g, z);
        for steps in common::all_shortest_restless_paths(&g, s, z, delta) {
            let path = validate_restless_path(&g, &steps, s, z, delta).unwrap();
            let ell = path.len() - dt.source_distance(s).get().unwrap();
            let trace = separator_trace(&path, &dt);
            prop_assert_eq!(trace.separators.last(), Some(&path.len()));
            prop_assert!(trace.windows_hold_separator(ell));
            prop_assert!(trace.distance_gaps().iter().all(|&gap| gap <= ell + 1));
        }
    }

    #[test]
    fn tel_round_trip(g in graph()) {
        let text = g.to_tel();
        let back = TemporalGraph::parse_tel(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_tel(), text);
    }
}
