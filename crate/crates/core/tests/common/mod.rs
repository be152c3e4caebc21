//! Exhaustive oracles shared by the integration tests. They only read the raw
//! time-edge list, never the library's search code.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use restless::generate::{random_temporal_graph, GenParams};
use restless::temporal_graph::{TemporalGraph, Time, TimeEdge, Vertex};

/// Every simple path from `s` whose stamps satisfy `ok(prev, next)`, reported
/// to `visit` as a step list. Exponential; meant for |V| <= 8.
fn enumerate(g: &TemporalGraph, s: Vertex, first_ok: &dyn Fn(Time) -> bool, ok: &dyn Fn(Time, Time) -> bool, visit: &mut dyn FnMut(&[TimeEdge])) {
    fn go(
        g: &TemporalGraph,
        at: Vertex,
        seen: &mut Vec<bool>,
        steps: &mut Vec<TimeEdge>,
        first_ok: &dyn Fn(Time) -> bool,
        ok: &dyn Fn(Time, Time) -> bool,
        visit: &mut dyn FnMut(&[TimeEdge]),
    ) {
        for e in g.time_edges() {
            let next = if e.u == at { e.v } else if e.v == at { e.u } else { continue };
            if seen[next] {
                continue;
            }
            let fits = match steps.last() {
                None => first_ok(e.t),
                Some(prev) => ok(prev.t, e.t),
            };
            if !fits {
                continue;
            }
            steps.push(TimeEdge { u: at, v: next, t: e.t });
            visit(steps);
            seen[next] = true;
            go(g, next, seen, steps, first_ok, ok, visit);
            seen[next] = false;
            steps.pop();
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    go(g, s, &mut seen, &mut Vec::new(), first_ok, ok, visit);
}

/// Shortest δ-restless `s`-`z` path, first found among the shortest.
pub fn shortest_restless_path(g: &TemporalGraph, s: Vertex, z: Vertex, delta: Time) -> Option<Vec<TimeEdge>> {
    let mut best: Option<Vec<TimeEdge>> = None;
    enumerate(g, s, &|_| true, &|p, n| p <= n && n <= p + delta, &mut |steps| {
        if steps.last().unwrap().v == z && best.as_ref().is_none_or(|b| steps.len() < b.len()) {
            best = Some(steps.to_vec());
        }
    });
    best
}

/// All shortest δ-restless `s`-`z` paths.
pub fn all_shortest_restless_paths(g: &TemporalGraph, s: Vertex, z: Vertex, delta: Time) -> Vec<Vec<TimeEdge>> {
    let mut all: Vec<Vec<TimeEdge>> = Vec::new();
    enumerate(g, s, &|_| true, &|p, n| p <= n && n <= p + delta, &mut |steps| {
        if steps.last().unwrap().v != z {
            return;
        }
        match all.first().map(|b| b.len()) {
            Some(len) if steps.len() > len => {}
            Some(len) if steps.len() == len => all.push(steps.to_vec()),
            _ => all = vec![steps.to_vec()],
        }
    });
    all
}

/// Length of a shortest temporal `v`-`z` path departing at time >= `t`.
///
/// Hop-bounded earliest arrival: after round `h`, `arrive[w]` is the earliest
/// time `w` is reached with at most `h` time-edges. Cutting the cycles out of a
/// temporal walk keeps the stamps non-decreasing, so the first round that
/// reaches `z` is the path length.
pub fn temporal_distance(g: &TemporalGraph, v: Vertex, t: Time, z: Vertex) -> Option<usize> {
    if v == z {
        return Some(0);
    }
    let mut arrive = vec![usize::MAX; g.vertex_count()];
    arrive[v] = t;
    for hops in 1..g.vertex_count() {
        let mut next = arrive.clone();
        for e in g.time_edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if arrive[a] <= e.t && e.t < next[b] {
                    next[b] = e.t;
                }
            }
        }
        arrive = next;
        if arrive[z] != usize::MAX {
            return Some(hops);
        }
    }
    None
}

/// Static BFS distance in the underlying graph.
pub fn static_distance(g: &TemporalGraph, s: Vertex, z: Vertex) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[s] = 0;
    for round in 0..g.vertex_count() {
        for e in g.time_edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if dist[a] == round && dist[b] == usize::MAX {
                    dist[b] = round + 1;
                }
            }
        }
    }
    (dist[z] != usize::MAX).then_some(dist[z])
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: TemporalGraph,
    pub s: Vertex,
    pub z: Vertex,
    pub delta: Time,
    pub k: usize,
    pub seed: u64,
}

/// Seeded small instance: |V| in [2,8], τ in [1,6], δ in [1,3], k in [1,6].
pub fn small_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = rng.gen_range(2..=8);
    let lifetime = rng.gen_range(1..=6);
    let pairs = vertices * (vertices - 1) / 2;
    let edges_per_layer = rng.gen_range(0.5..=(pairs as f64).min(6.0));
    let graph = random_temporal_graph(&GenParams { vertices, lifetime, edges_per_layer }, rng.gen()).unwrap();
    let s = rng.gen_range(0..vertices);
    let z = (s + rng.gen_range(1..vertices)) % vertices;
    Instance { graph, s, z, delta: rng.gen_range(1..=3), k: rng.gen_range(1..=6), seed }
}
