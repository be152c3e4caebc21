//! Temporal distances `d(v,t)` to a fixed target via 0/1-BFS on a
//! transformed digraph, and the weaker polynomial lower bounds.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::temporal_graph::{TemporalGraph, Time, Vertex, VertexAppearance};

/// Path length or `∞`.
///
/// `∞` is a sentinel larger than any achievable length; addition saturates at
/// it instead of wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distance(u32);

impl Distance {
    pub const ZERO: Distance = Distance(0);
    pub const INFINITE: Distance = Distance(u32::MAX);

    pub fn finite(len: usize) -> Self {
        assert!(len < u32::MAX as usize, "distance {len} overflows");
        Distance(len as u32)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INFINITE
    }

    pub fn get(self) -> Option<usize> {
        self.is_finite().then_some(self.0 as usize)
    }

    pub fn saturating_add(self, len: usize) -> Self {
        match self.get() {
            Some(d) => Distance::finite(d + len),
            None => self,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.get().serialize(serializer)
    }
}

/// The set of non-isolated vertex appearances, sorted by `(v, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Appearances {
    list: Vec<VertexAppearance>,
    vertex_start: Vec<usize>,
}

impl Appearances {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, index: usize) -> VertexAppearance {
        self.list[index]
    }

    pub fn as_slice(&self) -> &[VertexAppearance] {
        &self.list
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexAppearance> + '_ {
        self.list.iter().copied()
    }

    /// Index range of the appearances of `v`, in time order.
    pub fn of_vertex(&self, v: Vertex) -> std::ops::Range<usize> {
        if v + 1 >= self.vertex_start.len() {
            return 0..0;
        }
        self.vertex_start[v]..self.vertex_start[v + 1]
    }

    pub fn index_of(&self, a: VertexAppearance) -> Option<usize> {
        let range = self.of_vertex(a.v);
        self.list[range.clone()].binary_search(&a).ok().map(|i| range.start + i)
    }

    /// Index of the earliest appearance of `v` at time `>= t`.
    pub fn first_at_or_after(&self, v: Vertex, t: Time) -> Option<usize> {
        let range = self.of_vertex(v);
        let offset = self.list[range.clone()].partition_point(|a| a.t < t);
        (range.start + offset < range.end).then_some(range.start + offset)
    }
}

/// `{ (v,t) : some edge of E_t contains v }`.
pub fn non_isolated_appearances(g: &TemporalGraph) -> Appearances {
    let mut per_vertex: Vec<Vec<Time>> = vec![Vec::new(); g.vertex_count()];
    for e in g.time_edges() {
        for w in [e.u, e.v] {
            // edges arrive in time order, so duplicates are adjacent
            if per_vertex[w].last() != Some(&e.t) {
                per_vertex[w].push(e.t);
            }
        }
    }
    let mut list = Vec::new();
    let mut vertex_start = Vec::with_capacity(g.vertex_count() + 1);
    for (v, times) in per_vertex.into_iter().enumerate() {
        vertex_start.push(list.len());
        list.extend(times.into_iter().map(|t| VertexAppearance::new(v, t)));
    }
    vertex_start.push(list.len());
    Appearances { list, vertex_start }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub to: usize,
    pub weight: u8,
}

/// Digraph whose 0/1-weighted shortest paths from the root give `d(v,t)`.
///
/// Node `i < appearances.len()` is appearance `i`; the last node is the root
/// standing in for `z`.
#[derive(Debug, Clone)]
pub struct TransformedDigraph {
    pub appearances: Appearances,
    pub root: usize,
    offsets: Vec<usize>,
    arcs: Vec<Arc>,
}

impl TransformedDigraph {
    pub fn node_count(&self) -> usize {
        self.root + 1
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs_from(&self, node: usize) -> &[Arc] {
        &self.arcs[self.offsets[node]..self.offsets[node + 1]]
    }
}

pub fn build_transformed_digraph(g: &TemporalGraph, z: Vertex) -> TransformedDigraph {
    let appearances = non_isolated_appearances(g);
    let n = appearances.len();
    let root = n;
    let mut out: Vec<Vec<Arc>> = vec![Vec::new(); n + 1];

    // weight 1: both directions of every time-edge, within its layer
    for e in g.time_edges() {
        let iu = appearances.index_of(VertexAppearance::new(e.u, e.t)).expect("endpoint appears");
        let iv = appearances.index_of(VertexAppearance::new(e.v, e.t)).expect("endpoint appears");
        out[iu].push(Arc { to: iv, weight: 1 });
        out[iv].push(Arc { to: iu, weight: 1 });
    }
    // weight 0: each appearance feeds the previous appearance of the same vertex
    for v in 0..g.vertex_count() {
        let range = appearances.of_vertex(v);
        for (i, arcs) in out[range.clone()].iter_mut().enumerate().skip(1) {
            arcs.push(Arc { to: range.start + i - 1, weight: 0 });
        }
    }
    // weight 0: root to the latest appearance of z
    let zr = appearances.of_vertex(z);
    if !zr.is_empty() {
        out[root].push(Arc { to: zr.end - 1, weight: 0 });
    }

    let mut offsets = Vec::with_capacity(n + 2);
    let mut arcs = Vec::new();
    for list in out {
        offsets.push(arcs.len());
        arcs.extend(list);
    }
    offsets.push(arcs.len());
    TransformedDigraph { appearances, root, offsets, arcs }
}

/// Operation counts of one distance computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BfsWork {
    pub pushes: usize,
    pub relaxations: usize,
}

impl BfsWork {
    pub fn total(&self) -> usize {
        self.pushes + self.relaxations
    }
}

/// `d(v,t)` for every non-isolated appearance, for a fixed target `z`.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    target: Vertex,
    appearances: Appearances,
    dist: Vec<Distance>,
    // distances of (u,t) and (v,t) for each time-edge index of the graph
    edge_dist: Vec<(Distance, Distance)>,
}

impl DistanceTable {
    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn appearances(&self) -> &Appearances {
        &self.appearances
    }

    pub fn by_index(&self, index: usize) -> Distance {
        self.dist[index]
    }

    /// `d(v,t)` for any `t`; for an isolated appearance this is the value at
    /// the next appearance of `v`, or `∞` if there is none.
    pub fn get(&self, v: Vertex, t: Time) -> Distance {
        self.appearances.first_at_or_after(v, t).map_or(Distance::INFINITE, |i| self.dist[i])
    }

    /// Distances of the two endpoints of time-edge `index` at its time-stamp.
    pub fn edge_endpoints(&self, index: usize) -> (Distance, Distance) {
        self.edge_dist[index]
    }

    /// `d(s,1)`, i.e. the distance at the earliest appearance of `s`.
    pub fn source_distance(&self, s: Vertex) -> Distance {
        self.get(s, 1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (VertexAppearance, Distance)> + '_ {
        self.appearances.iter().zip(self.dist.iter().copied())
    }
}

pub fn compute_distances(g: &TemporalGraph, z: Vertex) -> DistanceTable {
    compute_distances_counted(g, z).0
}

/// [`compute_distances`] together with its deque pushes and arc relaxations.
pub fn compute_distances_counted(g: &TemporalGraph, z: Vertex) -> (DistanceTable, BfsWork) {
    let digraph = build_transformed_digraph(g, z);
    let mut work = BfsWork::default();
    let mut dist = vec![Distance::INFINITE; digraph.node_count()];
    let mut done = vec![false; digraph.node_count()];
    let mut deque = VecDeque::new();
    dist[digraph.root] = Distance::ZERO;
    deque.push_back(digraph.root);
    work.pushes += 1;
    while let Some(node) = deque.pop_front() {
        if std::mem::replace(&mut done[node], true) {
            continue;
        }
        for arc in digraph.arcs_from(node) {
            work.relaxations += 1;
            let candidate = dist[node].saturating_add(arc.weight as usize);
            if candidate < dist[arc.to] {
                dist[arc.to] = candidate;
                work.pushes += 1;
                if arc.weight == 0 {
                    deque.push_front(arc.to);
                } else {
                    deque.push_back(arc.to);
                }
            }
        }
    }
    dist.truncate(digraph.root);
    let appearances = digraph.appearances;
    let edge_dist = g
        .time_edges()
        .iter()
        .map(|e| {
            let du = dist[appearances.index_of(VertexAppearance::new(e.u, e.t)).expect("endpoint appears")];
            let dv = dist[appearances.index_of(VertexAppearance::new(e.v, e.t)).expect("endpoint appears")];
            (du, dv)
        })
        .collect();
    (DistanceTable { target: z, appearances, dist, edge_dist }, work)
}

/// Minimum length of a δ-restless temporal `s`-`z` walk, or `∞`.
///
/// Breadth-first search over arrival states `(v, t)`: from an arrival at
/// `v` at time `t` the walk may leave along any edge of `v` stamped in
/// `[t, t + δ]`; the first hop is unconstrained.
pub fn restless_walk_distance(g: &TemporalGraph, s: Vertex, z: Vertex, delta: Time) -> Distance {
    if s == z {
        return Distance::ZERO;
    }
    let appearances = non_isolated_appearances(g);
    let mut hops = vec![usize::MAX; appearances.len()];
    let mut queue = VecDeque::new();
    for &i in g.incident(s) {
        let e = g.time_edges()[i];
        let w = e.other(s).expect("incident edge");
        let idx = appearances.index_of(VertexAppearance::new(w, e.t)).expect("endpoint appears");
        if hops[idx] == usize::MAX {
            hops[idx] = 1;
            queue.push_back(idx);
        }
    }
    while let Some(idx) = queue.pop_front() {
        let VertexAppearance { v, t } = appearances.get(idx);
        if v == z {
            return Distance::finite(hops[idx]);
        }
        let incident = g.incident(v);
        let lo = incident.partition_point(|&i| g.time_edges()[i].t < t);
        for &i in &incident[lo..] {
            let e = g.time_edges()[i];
            if e.t > t + delta {
                break;
            }
            let w = e.other(v).expect("incident edge");
            let next = appearances.index_of(VertexAppearance::new(w, e.t)).expect("endpoint appears");
            if hops[next] == usize::MAX {
                hops[next] = hops[idx] + 1;
                queue.push_back(next);
            }
        }
    }
    Distance::INFINITE
}

/// Hop distance between `s` and `z` in the underlying static graph.
pub fn static_distance(g: &TemporalGraph, s: Vertex, z: Vertex) -> Distance {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(v) = queue.pop_front() {
        if v == z {
            return Distance::finite(dist[v]);
        }
        for &i in g.incident(v) {
            let w = g.time_edges()[i].other(v).expect("incident edge");
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Distance::INFINITE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal_graph::tests::{fig1, v};
    use crate::temporal_graph::TimeEdge;

    #[test]
    fn appearances_of_fig1() {
        let g = fig1();
        let apps = non_isolated_appearances(&g);
        for (name, t) in [("s", 1), ("s", 2), ("s", 5), ("e", 1), ("e", 2), ("e", 4), ("e", 6), ("z", 6)] {
            assert!(apps.index_of(VertexAppearance::new(v(&g, name), t)).is_some(), "{name} at {t}");
        }
        assert!(apps.index_of(VertexAppearance::new(v(&g, "s"), 3)).is_none());
        assert!(apps.of_vertex(v(&g, "d")).is_empty());
        // two endpoints per edge, minus the three shared appearances at times 1 and 4
        assert_eq!(apps.len(), 2 * 9 - 3);
        assert!(apps.len() <= 2 * g.size());
    }

    #[test]
    fn appearances_small_cases() {
        let g = TemporalGraph::parse_tel(b"2 1\n0 1 1\n").unwrap();
        let apps = non_isolated_appearances(&g);
        assert_eq!(apps.as_slice(), &[VertexAppearance::new(0, 1), VertexAppearance::new(1, 1)]);
        let g = TemporalGraph::parse_tel(b"3 4\n").unwrap();
        assert!(non_isolated_appearances(&g).is_empty());
    }

    #[test]
    fn digraph_for_single_edge() {
        // z = 0, v = 1 at time 3
        let g = TemporalGraph::parse_tel(b"2 3\n0 1 3\n").unwrap();
        let d = build_transformed_digraph(&g, 0);
        assert_eq!(d.node_count(), 3);
        let z3 = d.appearances.index_of(VertexAppearance::new(0, 3)).unwrap();
        let v3 = d.appearances.index_of(VertexAppearance::new(1, 3)).unwrap();
        assert_eq!(d.arcs_from(d.root), &[Arc { to: z3, weight: 0 }]);
        assert_eq!(d.arcs_from(z3), &[Arc { to: v3, weight: 1 }]);
        assert_eq!(d.arcs_from(v3), &[Arc { to: z3, weight: 1 }]);
        assert_eq!(d.arc_count(), 3);
    }

    #[test]
    fn time_travel_arc_points_backwards() {
        let g = TemporalGraph::new(3, 5, [TimeEdge::new(1, 0, 2), TimeEdge::new(1, 2, 5)]).unwrap();
        let d = build_transformed_digraph(&g, 0);
        let v2 = d.appearances.index_of(VertexAppearance::new(1, 2)).unwrap();
        let v5 = d.appearances.index_of(VertexAppearance::new(1, 5)).unwrap();
        assert!(d.arcs_from(v5).contains(&Arc { to: v2, weight: 0 }));
        assert!(!d.arcs_from(v2).iter().any(|a| a.to == v5));
        for node in 0..d.root {
            for arc in d.arcs_from(node).iter().filter(|a| a.weight == 0) {
                assert_eq!(d.appearances.get(node).v, d.appearances.get(arc.to).v);
            }
        }
    }

    #[test]
    fn fig1_digraph_size() {
        let g = fig1();
        let d = build_transformed_digraph(&g, v(&g, "z"));
        assert_eq!(d.node_count(), non_isolated_appearances(&g).len() + 1);
    }

    #[test]
    fn fig1_distances() {
        let g = fig1();
        let dt = compute_distances(&g, v(&g, "z"));
        assert_eq!(dt.get(v(&g, "e"), 6), Distance::finite(1));
        assert_eq!(dt.get(v(&g, "z"), 6), Distance::ZERO);
        assert_eq!(dt.source_distance(v(&g, "s")), Distance::finite(2));
        // no way to reach z after time 6 from b
        assert_eq!(dt.get(v(&g, "b"), 5), Distance::INFINITE);
        assert_eq!(dt.get(v(&g, "b"), 4), Distance::finite(2));
        assert_eq!(dt.get(v(&g, "d"), 1), Distance::INFINITE);
    }

    #[test]
    fn target_has_distance_zero_everywhere() {
        let g = TemporalGraph::parse_tel(b"3 4\n0 1 1\n1 2 2\n0 2 4\n").unwrap();
        let dt = compute_distances(&g, 0);
        for (a, d) in dt.entries() {
            if a.v == 0 {
                assert_eq!(d, Distance::ZERO);
            }
        }
        assert_eq!(dt.get(1, 1), Distance::finite(1));
        assert_eq!(dt.get(1, 2), Distance::finite(2));
        assert_eq!(dt.get(2, 3), Distance::finite(1));
    }

    #[test]
    fn walk_distances_on_fig1() {
        let g = fig1();
        let (s, z) = (v(&g, "s"), v(&g, "z"));
        assert_eq!(restless_walk_distance(&g, s, z, 2), Distance::finite(5));
        assert_eq!(restless_walk_distance(&g, s, z, 5), Distance::finite(2));
        assert_eq!(restless_walk_distance(&g, s, z, 1), Distance::INFINITE);
        assert_eq!(static_distance(&g, s, z), Distance::finite(2));
    }

    #[test]
    fn disconnected_endpoints() {
        let g = TemporalGraph::parse_tel(b"4 2\n0 1 1\n2 3 2\n").unwrap();
        assert_eq!(restless_walk_distance(&g, 0, 3, 3), Distance::INFINITE);
        assert_eq!(static_distance(&g, 0, 3), Distance::INFINITE);
        assert_eq!(compute_distances(&g, 3).source_distance(0), Distance::INFINITE);
    }

    #[test]
    fn infinity_saturates() {
        assert_eq!(Distance::INFINITE.saturating_add(3), Distance::INFINITE);
        assert!(Distance::finite(1_000_000) < Distance::INFINITE);
        assert_eq!(Distance::finite(2).saturating_add(3), Distance::finite(5));
    }
}
