//! Above-lower-bound dynamic program for short δ-restless temporal paths.
//!
//! With `d = d(s,1)` the temporal distance of `s` and `ℓ = k - d`, the table
//! holds for every non-isolated appearance `(u,t')` the length `T[u,t']` of a
//! restless `s`-`u` path that stays below and right of `(u,t')` in the
//! (distance, time) plane and can leave `u` at `t'`.
//!
//! * Near zone (`d - d(u,t') <= ℓ`): `T[s,·] = 0`; otherwise the shortest
//!   restless `s`-`u` path of length in `[1, 2ℓ]` inside the source area below
//!   `(u,t')`.
//! * Far zone: the minimum of `T[v,t] + ℓ'` over predecessors with `t <= t'`,
//!   `d(v,t) > d(u,t') >= d(v,t) - ℓ - 1`, and `ℓ' ∈ [1, 2ℓ+1]` the length
//!   of a shortest restless `v`-`u` path in the area between the two.
//!
//! The answer is yes iff some `T[z,t] <= k`. Area graphs of chained entries
//! share only their common corner vertex, so concatenating the stored
//! sub-paths yields a simple path.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::areas::{area_graph, AreaSpec};
use crate::distances::{compute_distances, Appearances, Distance, DistanceTable};
use crate::path_finder::{find_exact_restless_path, FinderConfig, FinderConfigError, FinderStats};
use crate::seed;
use crate::temporal_graph::{validate_restless_path, PathError, RestlessPath, TemporalGraph, Time, TimeEdge, Vertex, VertexAppearance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("source and target must differ")]
    SameEndpoints,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("delta must be at least 1")]
    ZeroDelta,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("error probability must lie in (0, 1), got {0}")]
    ErrorProb(f64),
    #[error("thread count must be at least 1")]
    Threads,
    #[error(transparent)]
    Finder(#[from] FinderConfigError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReconstructError {
    #[error("appearance {0} has no finite table entry")]
    Unreachable(VertexAppearance),
    #[error("predecessor chain is corrupted at appearance {0}")]
    Corrupted(VertexAppearance),
    #[error("reconstructed path is invalid: {0}")]
    Invalid(#[from] PathError),
    #[error("reconstructed length {got} differs from table value {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub finder: FinderConfig,
    /// Overall one-sided error budget `p`.
    pub error_prob: f64,
    /// Guess the departure time and drop time-edges outside the horizon.
    pub time_window: bool,
    /// Worker threads for the table fill; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { finder: FinderConfig::default(), error_prob: 0.01, time_window: false, threads: None }
    }
}

/// How a finite table entry was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredLink {
    /// Predecessor appearance index, `None` for near-zone entries (and `s`).
    pub from: Option<usize>,
    /// The area sub-path, in parent vertex ids and traversal order.
    pub steps: Vec<TimeEdge>,
}

#[derive(Debug, Clone)]
pub struct DpTable {
    appearances: Appearances,
    values: Vec<Distance>,
    pred: Vec<Option<PredLink>>,
    source: Vertex,
    delta: Time,
    k: usize,
    ell: usize,
}

impl DpTable {
    pub fn appearances(&self) -> &Appearances {
        &self.appearances
    }

    pub fn value(&self, index: usize) -> Distance {
        self.values[index]
    }

    pub fn get(&self, a: VertexAppearance) -> Option<Distance> {
        self.appearances.index_of(a).map(|i| self.values[i])
    }

    pub fn pred(&self, index: usize) -> Option<&PredLink> {
        self.pred[index].as_ref()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of finite entries.
    pub fn finite_entries(&self) -> usize {
        self.values.iter().filter(|d| d.is_finite()).count()
    }

    /// Time-edges of the stored `s`-`u` path for `end = (u,t')`; empty for `u = s`.
    pub fn steps_to(&self, end: usize) -> Result<Vec<TimeEdge>, ReconstructError> {
        let app = self.appearances.get(end);
        if !self.values[end].is_finite() {
            return Err(ReconstructError::Unreachable(app));
        }
        let mut segments = Vec::new();
        let mut at = end;
        loop {
            let link = self.pred[at].as_ref().ok_or(ReconstructError::Corrupted(self.appearances.get(at)))?;
            segments.push(&link.steps);
            match link.from {
                Some(prev) if segments.len() <= self.values.len() => at = prev,
                Some(_) => return Err(ReconstructError::Corrupted(self.appearances.get(at))),
                None => break,
            }
        }
        let steps: Vec<TimeEdge> = segments.into_iter().rev().flatten().copied().collect();
        let expected = self.values[end].get().expect("finite");
        if steps.len() != expected {
            return Err(ReconstructError::LengthMismatch { got: steps.len(), expected });
        }
        Ok(steps)
    }
}

/// Follow predecessor links from `end` and validate the concatenated path.
pub fn reconstruct(g: &TemporalGraph, dp: &DpTable, end: usize) -> Result<RestlessPath, ReconstructError> {
    let steps = dp.steps_to(end)?;
    let path = validate_restless_path(g, &steps, dp.source, dp.appearances.get(end).v, dp.delta)?;
    Ok(path)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SolveStats {
    pub areas_built: u64,
    pub finder_calls: u64,
    pub table_entries: u64,
    pub finder: FinderStats,
    pub wall_time_ms: f64,
}

impl SolveStats {
    fn absorb(&mut self, other: &SolveStats) {
        self.areas_built += other.areas_built;
        self.finder_calls += other.finder_calls;
        self.table_entries += other.table_entries;
        self.finder += other.finder;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    pub k_requested: usize,
    /// `k` after clamping to `|V| - 1`.
    pub k: usize,
    pub temporal_distance: Distance,
    /// `k - d(s,1)`, absent when the instance is decided before the table fill.
    pub ell: Option<usize>,
    pub error_prob: f64,
    /// Per-call error bound handed to the finder.
    pub finder_error_prob: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub decision: bool,
    pub witness: Option<RestlessPath>,
    pub stats: SolveStats,
    pub params: EffectiveParams,
}

/// Per-call error bound: `p / (2 · ⌈k / max(1,ℓ)⌉ · (2ℓ+1))`.
pub fn finder_error_budget(p: f64, k: usize, ell: usize) -> f64 {
    let chain = k.div_ceil(ell.max(1));
    p / (2 * chain * (2 * ell + 1)) as f64
}

struct Entry {
    value: Distance,
    link: Option<PredLink>,
    stats: SolveStats,
}

struct Filler<'a> {
    g: &'a TemporalGraph,
    dt: &'a DistanceTable,
    s: Vertex,
    delta: Time,
    k: usize,
    ell: usize,
    d_source: usize,
    cfg: &'a FinderConfig,
    // finite distance -> appearance indices at that distance, by (t, v)
    by_distance: BTreeMap<usize, Vec<usize>>,
}

impl Filler<'_> {
    fn search(&self, spec: &AreaSpec, from: VertexAppearance, lengths: std::ops::RangeInclusive<usize>, key: [u64; 2], stats: &mut SolveStats) -> Option<Vec<TimeEdge>> {
        if lengths.is_empty() {
            return None;
        }
        let area = area_graph(self.g, self.dt, spec);
        stats.areas_built += 1;
        let (Some(a), Some(b)) = (area.to_local(from.v), area.to_local(spec.upper().v)) else {
            return None;
        };
        let cfg = FinderConfig { seed: seed::derive(self.cfg.seed, &key), ..*self.cfg };
        for len in lengths {
            stats.finder_calls += 1;
            if let Some(path) = find_exact_restless_path(area.graph(), a, b, self.delta, len, &cfg, &mut stats.finder) {
                return Some(area.lift(path.steps()));
            }
        }
        None
    }

    fn entry(&self, index: usize, values: &[Distance]) -> Entry {
        let mut stats = SolveStats { table_entries: 1, ..SolveStats::default() };
        let upper = self.dt.appearances().get(index);
        if upper.v == self.s {
            return Entry { value: Distance::ZERO, link: Some(PredLink { from: None, steps: Vec::new() }), stats };
        }
        let du = self.dt.by_index(index).get().expect("only finite distances are filled");
        let unreachable = Entry { value: Distance::INFINITE, link: None, stats: SolveStats::default() };

        if self.d_source <= du + self.ell {
            let spec = AreaSpec::source(self.dt, upper, self.delta).expect("upper corner is an appearance");
            let start = VertexAppearance::new(self.s, 1);
            let found = self.search(&spec, start, 1..=(2 * self.ell).min(self.k), [index as u64, u64::MAX], &mut stats);
            return match found {
                Some(steps) => Entry {
                    value: Distance::finite(steps.len()),
                    link: Some(PredLink { from: None, steps }),
                    stats,
                },
                None => Entry { stats, ..unreachable },
            };
        }

        let mut best = Distance::INFINITE;
        let mut link = None;
        for dv in (du + 1..=du + self.ell + 1).rev() {
            let Some(level) = self.by_distance.get(&dv) else { continue };
            for &cand in level {
                let lower = self.dt.appearances().get(cand);
                if lower.t > upper.t {
                    break;
                }
                let Some(base) = values[cand].get() else { continue };
                // only strict improvements within the budget k are worth probing
                let cap = best.get().map_or(self.k, |b| self.k.min(b - 1));
                if base + 1 > cap || lower.v == upper.v {
                    continue;
                }
                let spec = AreaSpec::between(self.dt, lower, upper, self.delta).expect("admissible corners");
                let lengths = 1..=(2 * self.ell + 1).min(cap - base);
                if let Some(steps) = self.search(&spec, lower, lengths, [index as u64, cand as u64], &mut stats) {
                    best = Distance::finite(base + steps.len());
                    link = Some(PredLink { from: Some(cand), steps });
                }
            }
        }
        Entry { value: best, link, stats }
    }
}

/// Fill the table for a fixed `k`; requires `d(s,1) <= k`.
///
/// `cfg.error_prob` is the per-call bound handed to the finder.
#[allow(clippy::too_many_arguments)]
pub fn fill_table(
    g: &TemporalGraph,
    dt: &DistanceTable,
    s: Vertex,
    delta: Time,
    k: usize,
    cfg: &FinderConfig,
    stats: &mut SolveStats,
) -> DpTable {
    let d_source = dt.source_distance(s).get().filter(|&d| d <= k).expect("d(s,1) must be finite and at most k");
    let ell = k - d_source;
    let apps = dt.appearances();
    let mut by_distance: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..apps.len() {
        if let Some(d) = dt.by_index(i).get() {
            by_distance.entry(d).or_default().push(i);
        }
    }
    for level in by_distance.values_mut() {
        level.sort_by_key(|&i| (apps.get(i).t, apps.get(i).v));
    }

    let filler = Filler { g, dt, s, delta, k, ell, d_source, cfg, by_distance };
    let mut values = vec![Distance::INFINITE; apps.len()];
    let mut pred: Vec<Option<PredLink>> = vec![None; apps.len()];
    for i in apps.of_vertex(s) {
        values[i] = Distance::ZERO;
        pred[i] = Some(PredLink { from: None, steps: Vec::new() });
    }

    // Entries only depend on strictly larger distances: fill level by level,
    // farthest first, each level in parallel.
    for level in filler.by_distance.values().rev() {
        let entries: Vec<Entry> = level.par_iter().map(|&i| filler.entry(i, &values)).collect();
        for (&i, entry) in level.iter().zip(entries) {
            values[i] = entry.value;
            pred[i] = entry.link;
            stats.absorb(&entry.stats);
        }
    }

    DpTable { appearances: apps.clone(), values, pred, source: s, delta, k, ell }
}

/// Decide whether `g` has a δ-restless temporal `s`-`z` path of length at most `k`.
pub fn solve(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    k: usize,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    for v in [s, z] {
        if v >= g.vertex_count() {
            return Err(SolveError::UnknownVertex(v));
        }
    }
    if s == z {
        return Err(SolveError::SameEndpoints);
    }
    if delta == 0 {
        return Err(SolveError::ZeroDelta);
    }
    if k == 0 {
        return Err(SolveError::ZeroK);
    }
    if !(cfg.error_prob > 0.0 && cfg.error_prob < 1.0) {
        return Err(SolveError::ErrorProb(cfg.error_prob));
    }
    if cfg.threads == Some(0) {
        return Err(SolveError::Threads);
    }
    cfg.finder.validate()?;

    let started = Instant::now();
    let run = || {
        if cfg.time_window {
            solve_time_window(g, s, z, delta, k, cfg)
        } else {
            solve_inner(g, s, z, delta, k, cfg.error_prob, cfg)
        }
    };
    let mut result = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    result.stats.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

fn solve_inner(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    k_requested: usize,
    p: f64,
    cfg: &SolverConfig,
) -> SolveResult {
    let k = k_requested.min(g.vertex_count() - 1);
    let dt = compute_distances(g, z);
    let d_source = dt.source_distance(s);
    let mut params = EffectiveParams {
        k_requested,
        k,
        temporal_distance: d_source,
        ell: None,
        error_prob: p,
        finder_error_prob: None,
    };
    let mut stats = SolveStats::default();
    let no = |params, stats| SolveResult { decision: false, witness: None, stats, params };

    let Some(d) = d_source.get().filter(|&d| d <= k) else {
        return no(params, stats);
    };
    let ell = k - d;
    let finder = FinderConfig { error_prob: finder_error_budget(p, k, ell), ..cfg.finder };
    params.ell = Some(ell);
    params.finder_error_prob = Some(finder.error_prob);

    let table = fill_table(g, &dt, s, delta, k, &finder, &mut stats);
    let best = table
        .appearances()
        .of_vertex(z)
        .filter(|&i| table.value(i).get().is_some_and(|v| v <= k))
        .min_by_key(|&i| table.value(i));
    let Some(end) = best else {
        return no(params, stats);
    };
    let witness = reconstruct(g, &table, end).expect("table entries reconstruct to valid paths");
    assert!(witness.len() <= k);
    SolveResult { decision: true, witness: Some(witness), stats, params }
}

/// Try each departure time `t0` of `s` on the time-edges stamped in
/// `[t0, t0 + (k-1)·δ + 1]`, splitting the error budget over the lifetime.
fn solve_time_window(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    k: usize,
    cfg: &SolverConfig,
) -> SolveResult {
    let p = cfg.error_prob / g.lifetime() as f64;
    let mut overall = solve_inner(&g.filter_edges(|_, _| false), s, z, delta, k, p, cfg);
    let dt = compute_distances(g, z);
    overall.params.temporal_distance = dt.source_distance(s);
    overall.params.ell = overall.params.temporal_distance.get().and_then(|d| overall.params.k.checked_sub(d));
    overall.params.error_prob = cfg.error_prob;

    let mut departures: Vec<Time> = g.incident(s).iter().map(|&i| g.time_edges()[i].t).collect();
    departures.dedup();
    let horizon = (k.min(g.vertex_count() - 1).saturating_sub(1)) * delta + 1;
    for t0 in departures {
        let window = g.filter_edges(|_, e| t0 <= e.t && e.t <= t0 + horizon);
        let sub = solve_inner(&window, s, z, delta, k, p, cfg);
        overall.stats.absorb(&sub.stats);
        if sub.decision {
            let witness = sub.witness.expect("yes carries a witness");
            let witness = validate_restless_path(g, witness.steps(), s, z, delta).expect("window paths are paths of g");
            overall.decision = true;
            overall.witness = Some(witness);
            overall.params.finder_error_prob = sub.params.finder_error_prob;
            break;
        }
    }
    overall
}

/// Distance separators along a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorTrace {
    /// `d(v_i, t_{i+1})` for `i = 0..=m`, with `t_{m+1} := t_m`.
    pub keys: Vec<Distance>,
    /// Indices `i` where `v_i` is a separator, increasing.
    pub separators: Vec<usize>,
}

impl SeparatorTrace {
    /// Every window `v_i, ..., v_{i+2ℓ}` (clipped at the end) holds a separator.
    pub fn windows_hold_separator(&self, ell: usize) -> bool {
        let m = self.keys.len() - 1;
        (0..=m).all(|i| self.separators.iter().any(|&j| j >= i && j <= (i + 2 * ell).min(m)))
    }

    /// Distance drops between consecutive separators.
    pub fn distance_gaps(&self) -> Vec<usize> {
        self.separators
            .windows(2)
            .map(|w| {
                let hi = self.keys[w[0]].get().expect("separators on a path to z have finite keys");
                let lo = self.keys[w[1]].get().expect("separators on a path to z have finite keys");
                hi - lo
            })
            .collect()
    }
}

/// Mark the distance separators of `path` with respect to `dt`.
pub fn separator_trace(path: &RestlessPath, dt: &DistanceTable) -> SeparatorTrace {
    let vertices = path.vertices();
    let m = path.len();
    let keys: Vec<Distance> = (0..=m)
        .map(|i| {
            let departure = if i < m { path.steps()[i].t } else { path.arrival() };
            dt.get(vertices[i], departure)
        })
        .collect();
    let separators = (0..=m)
        .filter(|&i| keys[..i].iter().all(|&d| keys[i] < d) && keys[i + 1..].iter().all(|&d| keys[i] > d))
        .collect();
    SeparatorTrace { keys, separators }
}
