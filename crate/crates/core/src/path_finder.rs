//! Exact-length δ-restless path search inside a (small) temporal graph.
//!
//! Two backends share one contract: return a validated δ-restless temporal
//! `s`-`z` path with exactly `len` time-edges, or nothing.
//!
//! * `brute` is an exhaustive depth-first search and never errs.
//! * `sieve` evaluates a restless-walk generating polynomial at random points
//!   of GF(2^64), once per subset of `len` position labels, and sums the
//!   results. Walks that repeat a vertex pair up with identical terms and
//!   cancel in characteristic 2, so a nonzero sum certifies a path. A zero
//!   sum is wrong with probability at most `2·len / 2^64` per trial. Paths
//!   are extracted by deleting time-edges one at a time and keeping every
//!   deletion after which the sieve still answers yes.

use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2_64::Gf64;
use crate::seed;
use crate::temporal_graph::{validate_restless_path, RestlessPath, TemporalGraph, Time, TimeEdge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Brute,
    Sieve,
    Auto,
}

impl FromStr for Backend {
    type Err = FinderConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Backend::Brute),
            "sieve" => Ok(Backend::Sieve),
            "auto" => Ok(Backend::Auto),
            other => Err(FinderConfigError::UnknownBackend(other.to_owned())),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Brute => "brute",
            Backend::Sieve => "sieve",
            Backend::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FinderConfigError {
    #[error("error probability must lie in (0, 1), got {0}")]
    ErrorProb(f64),
    #[error("auto threshold must be at least 1")]
    AutoThreshold,
    #[error("trial count must be at least 1")]
    Trials,
    #[error("unknown backend {0:?} (expected brute, sieve or auto)")]
    UnknownBackend(String),
}

/// Graphs with `|G|` at most this are always searched by brute force under `auto`.
pub const TINY_GRAPH_SIZE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FinderConfig {
    pub backend: Backend,
    /// One-sided error bound per call of the sieve backend.
    pub error_prob: f64,
    pub seed: u64,
    /// Under `auto`, lengths below this use brute force.
    pub auto_threshold: usize,
    /// Minimum number of independent sieve trials per decision.
    pub trials: usize,
}

impl Default for FinderConfig {
    fn default() -> Self {
        Self { backend: Backend::Auto, error_prob: 0.01, seed: 0, auto_threshold: 6, trials: 1 }
    }
}

impl FinderConfig {
    pub fn with_backend(backend: Backend) -> Self {
        Self { backend, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), FinderConfigError> {
        if !(self.error_prob > 0.0 && self.error_prob < 1.0) {
            return Err(FinderConfigError::ErrorProb(self.error_prob));
        }
        if self.auto_threshold == 0 {
            return Err(FinderConfigError::AutoThreshold);
        }
        if self.trials == 0 {
            return Err(FinderConfigError::Trials);
        }
        Ok(())
    }

    /// Backend actually used for a search of length `len` in `g`.
    pub fn resolve(&self, g: &TemporalGraph, len: usize) -> Backend {
        match self.backend {
            Backend::Auto if len < self.auto_threshold || g.size() <= TINY_GRAPH_SIZE => Backend::Brute,
            Backend::Auto => Backend::Sieve,
            other => other,
        }
    }

    /// Sieve trials per decision so that a miss has probability `<= error_prob`.
    pub fn trials_for(&self, len: usize) -> usize {
        let per_trial = (2 * len.max(1)) as f64 * 2f64.powi(-64);
        let needed = (self.error_prob.ln() / per_trial.ln()).ceil() as usize;
        needed.max(self.trials)
    }
}

/// Operation counts accumulated over finder calls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinderStats {
    /// Sieve decisions (including those made during extraction).
    pub decisions: u64,
    /// Sieve trials evaluated.
    pub trials: u64,
    /// Arc updates performed by sieve trials.
    pub sieve_work: u64,
    /// Time-edge extensions tried by the brute-force search.
    pub brute_work: u64,
}

impl std::ops::AddAssign for FinderStats {
    fn add_assign(&mut self, rhs: Self) {
        self.decisions += rhs.decisions;
        self.trials += rhs.trials;
        self.sieve_work += rhs.sieve_work;
        self.brute_work += rhs.brute_work;
    }
}

/// Dispatch on `cfg.backend`.
pub fn find_exact_restless_path(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
    cfg: &FinderConfig,
    stats: &mut FinderStats,
) -> Option<RestlessPath> {
    match cfg.resolve(g, len) {
        Backend::Brute => brute_search(g, s, z, delta, len, stats),
        _ => sieve_search(g, s, z, delta, len, cfg, stats),
    }
}

pub fn find_exact_restless_path_brute(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
) -> Option<RestlessPath> {
    brute_search(g, s, z, delta, len, &mut FinderStats::default())
}

pub fn find_exact_restless_path_sieve(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
    cfg: &FinderConfig,
) -> Option<RestlessPath> {
    sieve_search(g, s, z, delta, len, cfg, &mut FinderStats::default())
}

fn checked(g: &TemporalGraph, steps: &[TimeEdge], s: Vertex, z: Vertex, delta: Time, len: usize) -> Option<RestlessPath> {
    match validate_restless_path(g, steps, s, z, delta) {
        Ok(path) if path.len() == len => Some(path),
        other => {
            debug_assert!(false, "finder produced an invalid path: {other:?}");
            None
        }
    }
}

fn brute_search(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
    stats: &mut FinderStats,
) -> Option<RestlessPath> {
    if s == z || len == 0 || s >= g.vertex_count() || z >= g.vertex_count() {
        return None;
    }
    let mut search = Dfs { g, z, delta, len, visited: vec![false; g.vertex_count()], steps: Vec::new(), work: 0 };
    search.visited[s] = true;
    let found = search.extend(s, None);
    stats.brute_work += search.work;
    if found {
        checked(g, &search.steps, s, z, delta, len)
    } else {
        None
    }
}

struct Dfs<'a> {
    g: &'a TemporalGraph,
    z: Vertex,
    delta: Time,
    len: usize,
    visited: Vec<bool>,
    steps: Vec<TimeEdge>,
    work: u64,
}

impl Dfs<'_> {
    fn extend(&mut self, at: Vertex, last: Option<Time>) -> bool {
        let incident = self.g.incident(at);
        let start = last.map_or(0, |t| incident.partition_point(|&i| self.g.time_edges()[i].t < t));
        let last_step = self.steps.len() + 1 == self.len;
        for &i in &incident[start..] {
            let e = self.g.time_edges()[i];
            if last.is_some_and(|t| e.t > t + self.delta) {
                break;
            }
            self.work += 1;
            let w = e.other(at).expect("incident edge");
            if self.visited[w] || (w == self.z) != last_step {
                continue;
            }
            self.steps.push(TimeEdge::new(at, w, e.t));
            if last_step {
                return true;
            }
            self.visited[w] = true;
            if self.extend(w, Some(e.t)) {
                return true;
            }
            self.visited[w] = false;
            self.steps.pop();
        }
        false
    }
}

/// Directed copies of the time-edges, grouped by head and sorted by time,
/// with the window of possible predecessors for each arc.
struct Arcs {
    tail: Vec<Vertex>,
    head: Vec<Vertex>,
    edge: Vec<usize>,
    // predecessors of arc a: arcs pred.0 .. pred.1, all entering tail(a)
    // at a time in [t(a) - δ, t(a)]
    pred: Vec<(usize, usize)>,
}

impl Arcs {
    fn new(g: &TemporalGraph, active: &[bool], delta: Time) -> Self {
        let mut list: Vec<(Vertex, Time, Vertex, usize)> = Vec::new();
        for (i, e) in g.time_edges().iter().enumerate().filter(|(i, _)| active[*i]) {
            list.push((e.v, e.t, e.u, i));
            list.push((e.u, e.t, e.v, i));
        }
        list.sort_unstable();
        let mut block_start = vec![0usize; g.vertex_count() + 1];
        for &(head, ..) in &list {
            block_start[head + 1] += 1;
        }
        for v in 0..g.vertex_count() {
            block_start[v + 1] += block_start[v];
        }
        let pred = list
            .iter()
            .map(|&(_, t, tail, _)| {
                let block = &list[block_start[tail]..block_start[tail + 1]];
                let lo = block.partition_point(|x| x.1 + delta < t);
                let hi = block.partition_point(|x| x.1 <= t);
                (block_start[tail] + lo, block_start[tail] + hi)
            })
            .collect();
        Self {
            head: list.iter().map(|x| x.0).collect(),
            tail: list.iter().map(|x| x.2).collect(),
            edge: list.iter().map(|x| x.3).collect(),
            pred,
        }
    }

    fn len(&self) -> usize {
        self.head.len()
    }

    /// `reach[i][a]`: some restless walk from `s` of `i + 1` arcs ends with arc `a`,
    /// never re-entering `s`.
    fn forward_reach(&self, s: Vertex, len: usize) -> Vec<Vec<bool>> {
        let mut layers = Vec::with_capacity(len);
        let mut cur: Vec<bool> = (0..self.len()).map(|a| self.tail[a] == s && self.head[a] != s).collect();
        for _ in 1..len {
            let mut prefix = vec![0u32; self.len() + 1];
            for a in 0..self.len() {
                prefix[a + 1] = prefix[a] + cur[a] as u32;
            }
            let next = (0..self.len())
                .map(|a| {
                    let (lo, hi) = self.pred[a];
                    self.head[a] != s && prefix[hi] > prefix[lo]
                })
                .collect();
            layers.push(std::mem::replace(&mut cur, next));
        }
        layers.push(cur);
        layers
    }
}

/// One sieve decision: does `g` contain a δ-restless `s`-`z` path of exactly `len` arcs?
///
/// Arc updates of the trials run are added to `stats.sieve_work`.
#[allow(clippy::too_many_arguments)]
pub fn sieve_decide(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
    trials: usize,
    rng: &mut impl Rng,
    stats: &mut FinderStats,
) -> bool {
    let active = vec![true; g.edge_count()];
    decide_on(g, &active, s, z, delta, len, trials, rng, stats)
}

#[allow(clippy::too_many_arguments)]
fn decide_on(
    g: &TemporalGraph,
    active: &[bool],
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
    trials: usize,
    rng: &mut impl Rng,
    stats: &mut FinderStats,
) -> bool {
    if s == z || len == 0 || s >= g.vertex_count() || z >= g.vertex_count() {
        return false;
    }
    stats.decisions += 1;
    let arcs = Arcs::new(g, active, delta);
    let reach = arcs.forward_reach(s, len);
    if !(0..arcs.len()).any(|a| reach[len - 1][a] && arcs.head[a] == z) {
        return false;
    }
    (0..trials).any(|_| {
        stats.trials += 1;
        !sieve_trial(&arcs, g.vertex_count(), g.edge_count(), s, z, len, rng, stats).is_zero()
    })
}

/// Sum over label subsets of the restless-walk polynomial at one random point.
#[allow(clippy::too_many_arguments)]
fn sieve_trial(
    arcs: &Arcs,
    vertex_count: usize,
    edge_count: usize,
    s: Vertex,
    z: Vertex,
    len: usize,
    rng: &mut impl Rng,
    stats: &mut FinderStats,
) -> Gf64 {
    // x[w * len + label] for the vertex variables, y[e] for the time-edge variables
    let x: Vec<Gf64> = (0..vertex_count * len).map(|_| Gf64(rng.gen())).collect();
    let y: Vec<Gf64> = (0..edge_count).map(|_| Gf64(rng.gen())).collect();
    let n_arcs = arcs.len();

    let mut label_sum = vec![Gf64::ZERO; vertex_count];
    let mut coef = vec![Gf64::ZERO; n_arcs];
    let mut value = vec![Gf64::ZERO; n_arcs];
    let mut prefix = vec![Gf64::ZERO; n_arcs + 1];
    let mut total = Gf64::ZERO;

    // Gray-code walk over the nonempty label subsets
    for i in 1u64..(1u64 << len) {
        let flipped = i.trailing_zeros() as usize;
        for (w, sum) in label_sum.iter_mut().enumerate() {
            *sum += x[w * len + flipped];
        }
        for a in 0..n_arcs {
            // s is unlabeled: walks may not return to it
            coef[a] = if arcs.head[a] == s { Gf64::ZERO } else { y[arcs.edge[a]] * label_sum[arcs.head[a]] };
        }
        for a in 0..n_arcs {
            value[a] = if arcs.tail[a] == s { coef[a] } else { Gf64::ZERO };
        }
        for _ in 1..len {
            for a in 0..n_arcs {
                prefix[a + 1] = prefix[a] + value[a];
            }
            for a in 0..n_arcs {
                let (lo, hi) = arcs.pred[a];
                value[a] = coef[a] * (prefix[hi] + prefix[lo]);
            }
        }
        for (&head, &v) in arcs.head.iter().zip(&value) {
            if head == z {
                total += v;
            }
        }
        stats.sieve_work += (n_arcs * (len + 1)) as u64;
    }
    total
}

fn sieve_search(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    delta: Time,
    len: usize,
    cfg: &FinderConfig,
    stats: &mut FinderStats,
) -> Option<RestlessPath> {
    let trials = cfg.trials_for(len);
    let mut rng = seed::rng(seed::derive(cfg.seed, &[s as u64, z as u64, delta as u64, len as u64]));
    let mut active = vec![true; g.edge_count()];
    if !decide_on(g, &active, s, z, delta, len, trials, &mut rng, stats) {
        return None;
    }

    // Drop time-edges no exact-length restless walk can use, then self-reduce.
    let arcs = Arcs::new(g, &active, delta);
    let usable = usable_edges(&arcs, g.edge_count(), s, z, len);
    active.copy_from_slice(&usable);
    for e in 0..g.edge_count() {
        if !active[e] {
            continue;
        }
        active[e] = false;
        if !decide_on(g, &active, s, z, delta, len, trials, &mut rng, stats) {
            active[e] = true;
        }
    }

    // The survivors are one path's edges unless a trial missed; either way a
    // brute-force search over them is tiny.
    let residue = g.filter_edges(|i, _| active[i]);
    let path = brute_search(&residue, s, z, delta, len, stats)?;
    checked(g, path.steps(), s, z, delta, len)
}

/// Time-edges used by at least one restless `s`-`z` walk of exactly `len` arcs.
fn usable_edges(arcs: &Arcs, edge_count: usize, s: Vertex, z: Vertex, len: usize) -> Vec<bool> {
    let forward = arcs.forward_reach(s, len);
    // backward[i][a]: arc a can be the (i+1)-th arc of a walk that ends at z after `len` arcs
    let mut backward = vec![vec![false; arcs.len()]; len];
    for (b, &head) in backward[len - 1].iter_mut().zip(&arcs.head) {
        *b = head == z;
    }
    for i in (0..len - 1).rev() {
        let (done, rest) = backward.split_at_mut(i + 1);
        let cur = &mut done[i];
        let next = &rest[0];
        for (&used, &(lo, hi)) in next.iter().zip(&arcs.pred) {
            if used {
                cur[lo..hi].iter_mut().for_each(|b| *b = true);
            }
        }
    }
    let mut usable = vec![false; edge_count];
    for i in 0..len {
        for a in 0..arcs.len() {
            if forward[i][a] && backward[i][a] {
                usable[arcs.edge[a]] = true;
            }
        }
    }
    usable
}
