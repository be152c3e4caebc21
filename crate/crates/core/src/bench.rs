//! Benchmark sweeps over random instances, and the finder probe sweep used to
//! read off the exponential dependence on ℓ.

use std::time::Instant;

use serde::Serialize;

use crate::distances::compute_distances;
use crate::generate::{random_temporal_graph, GenError, GenParams};
use crate::path_finder::{sieve_decide, Backend, FinderConfig, FinderStats};
use crate::seed;
use crate::solver::{solve, SolveError, SolverConfig};
use crate::temporal_graph::{TemporalGraph, Time, TimeEdge, Vertex};

/// How `k` is chosen per instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    K(usize),
    /// `k = d(s,1) + ℓ`, falling back to `max(ℓ, 1)` when `z` is unreachable.
    Ell(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub vertices: Vec<usize>,
    pub lifetimes: Vec<usize>,
    pub deltas: Vec<Time>,
    pub budgets: Vec<Budget>,
    pub edges_per_layer: f64,
    pub repetitions: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub vertices: usize,
    pub lifetime: usize,
    pub size: usize,
    pub delta: Time,
    pub k: usize,
    pub ell: Option<usize>,
    pub rep: usize,
    pub instance_seed: u64,
    pub backend: Backend,
    pub decision: bool,
    pub witness_len: Option<usize>,
    pub finder_calls: u64,
    pub areas_built: u64,
    pub sieve_work: u64,
    pub brute_work: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Solve `s = 0`, `z = n - 1` on seeded random graphs for every combination.
/// The same instance is reused across repetitions.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for &vertices in &spec.vertices {
        for &lifetime in &spec.lifetimes {
            let params = GenParams { vertices, lifetime, edges_per_layer: spec.edges_per_layer };
            let instance_seed = seed::derive(spec.seed, &[vertices as u64, lifetime as u64]);
            let g = random_temporal_graph(&params, instance_seed)?;
            let (s, z) = (0, vertices - 1);
            let d_source = compute_distances(&g, z).source_distance(s).get();
            for &delta in &spec.deltas {
                for &budget in &spec.budgets {
                    let k = match budget {
                        Budget::K(k) => k,
                        Budget::Ell(ell) => d_source.map_or(ell.max(1), |d| (d + ell).max(1)),
                    };
                    for rep in 0..spec.repetitions {
                        let started = Instant::now();
                        let r = solve(&g, s, z, delta, k, &spec.solver)?;
                        rows.push(BenchRow {
                            vertices,
                            lifetime,
                            size: g.size(),
                            delta,
                            k,
                            ell: r.params.ell,
                            rep,
                            instance_seed,
                            backend: spec.solver.finder.backend,
                            decision: r.decision,
                            witness_len: r.witness.as_ref().map(|w| w.len()),
                            finder_calls: r.stats.finder_calls,
                            areas_built: r.stats.areas_built,
                            sieve_work: r.stats.finder.sieve_work,
                            brute_work: r.stats.finder.brute_work,
                            wall_ms: started.elapsed().as_secs_f64() * 1e3,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub ell: usize,
    pub size: usize,
    /// One sieve decision per length in `1..=2ℓ+1`.
    pub calls: u64,
    pub total_work: u64,
    pub work_per_call: f64,
    pub wall_ms: f64,
}

/// For each ℓ, run the sieve decision for every probe length `1..=2ℓ+1` that a
/// far-zone table entry may issue, on the fixed graph `g`.
pub fn probe_sweep(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    ells: &[usize],
    cfg: &FinderConfig,
) -> Vec<ProbeRow> {
    ells.iter()
        .map(|&ell| {
            let started = Instant::now();
            let mut stats = FinderStats::default();
            let lengths = 1..=2 * ell + 1;
            let calls = lengths.clone().count() as u64;
            for len in lengths {
                let mut rng = seed::rng(seed::derive(cfg.seed, &[ell as u64, len as u64]));
                sieve_decide(g, s, z, delta, len, cfg.trials_for(len), &mut rng, &mut stats);
            }
            ProbeRow {
                ell,
                size: g.size(),
                calls,
                total_work: stats.sieve_work,
                work_per_call: stats.sieve_work as f64 / calls as f64,
                wall_ms: started.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

/// Complete graph on `n` vertices in every one of `lifetime` layers: restless
/// walks of every length exist, so no probe is cut short.
pub fn dense_probe_graph(n: usize, lifetime: usize) -> TemporalGraph {
    let edges: Vec<TimeEdge> = (1..=lifetime)
        .flat_map(|t| (0..n).flat_map(move |u| (u + 1..n).map(move |v| TimeEdge::new(u, v, t))))
        .collect();
    TemporalGraph::new(n, lifetime, edges).expect("valid complete layers")
}
