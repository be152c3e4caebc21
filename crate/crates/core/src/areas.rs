//! Area subgraphs: the parts of a temporal graph lying between two vertex
//! appearances in the (distance, time) plane.
//!
//! For corners `(a,t)` (lower, farther from the target) and `(b,t')` (upper,
//! closer to the target) the interior is
//! `{(w,t*) : d(b,t') < d(w,t*) < d(a,t), t <= t* <= t'}`; the source area
//! with only an upper corner uses `{(w,t*) : d(b,t') < d(w,t*) < ∞, t* <= t'}`.
//! The area graph keeps interior edges, edges leaving `a` at exactly time `t`
//! into the interior, and edges entering `b` no earlier than `t' - δ`.

use std::collections::HashMap;

use thiserror::Error;

use crate::distances::{Distance, DistanceTable};
use crate::temporal_graph::{TemporalGraph, Time, TimeEdge, Vertex, VertexAppearance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AreaError {
    #[error("corner {0} is not a non-isolated appearance")]
    NotAnAppearance(VertexAppearance),
    #[error("lower corner {lower} is later than upper corner {upper}")]
    TimeOrder { lower: VertexAppearance, upper: VertexAppearance },
    #[error("lower corner {lower} (d = {d_lower}) is not farther than upper corner {upper} (d = {d_upper})")]
    DistanceOrder { lower: VertexAppearance, upper: VertexAppearance, d_lower: Distance, d_upper: Distance },
    #[error("corners share vertex {0}")]
    SameVertex(Vertex),
}

/// Corners of an area, checked against a distance table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AreaSpec {
    lower: Option<VertexAppearance>,
    upper: VertexAppearance,
    delta: Time,
    d_lower: Distance,
    d_upper: Distance,
}

impl AreaSpec {
    /// The area between `lower = (a,t)` and `upper = (b,t')`.
    pub fn between(
        dt: &DistanceTable,
        lower: VertexAppearance,
        upper: VertexAppearance,
        delta: Time,
    ) -> Result<Self, AreaError> {
        let d_lower = corner_distance(dt, lower)?;
        let d_upper = corner_distance(dt, upper)?;
        if lower.v == upper.v {
            return Err(AreaError::SameVertex(lower.v));
        }
        if lower.t > upper.t {
            return Err(AreaError::TimeOrder { lower, upper });
        }
        if d_upper >= d_lower {
            return Err(AreaError::DistanceOrder { lower, upper, d_lower, d_upper });
        }
        Ok(Self { lower: Some(lower), upper, delta, d_lower, d_upper })
    }

    /// The source area below `upper = (b,t')`.
    pub fn source(dt: &DistanceTable, upper: VertexAppearance, delta: Time) -> Result<Self, AreaError> {
        let d_upper = corner_distance(dt, upper)?;
        Ok(Self { lower: None, upper, delta, d_lower: Distance::INFINITE, d_upper })
    }

    pub fn lower(&self) -> Option<VertexAppearance> {
        self.lower
    }

    pub fn upper(&self) -> VertexAppearance {
        self.upper
    }

    pub fn delta(&self) -> Time {
        self.delta
    }

    fn earliest(&self) -> Time {
        self.lower.map_or(1, |a| a.t)
    }

    /// Membership of a (non-isolated) appearance with distance `d` in the A-set.
    fn interior(&self, t: Time, d: Distance) -> bool {
        self.earliest() <= t && t <= self.upper.t && self.d_upper < d && d < self.d_lower
    }

    fn keeps(&self, e: &TimeEdge, du: Distance, dv: Distance) -> bool {
        let in_u = self.interior(e.t, du);
        let in_v = self.interior(e.t, dv);
        if in_u && in_v {
            return true;
        }
        let b = self.upper.v;
        let arrives = e.t + self.delta >= self.upper.t && e.t <= self.upper.t;
        match self.lower {
            Some(a) => {
                let at_start = |w: Vertex| w == a.v && e.t == a.t;
                (at_start(e.u) && in_v)
                    || (at_start(e.v) && in_u)
                    || (arrives && ((e.u == b && (in_v || at_start(e.v))) || (e.v == b && (in_u || at_start(e.u)))))
            }
            None => arrives && ((e.u == b && in_v) || (e.v == b && in_u)),
        }
    }
}

fn corner_distance(dt: &DistanceTable, a: VertexAppearance) -> Result<Distance, AreaError> {
    dt.appearances().index_of(a).map(|i| dt.by_index(i)).ok_or(AreaError::NotAnAppearance(a))
}

/// The non-isolated appearances of the area's A-set, sorted by `(v,t)`.
pub fn a_set(dt: &DistanceTable, spec: &AreaSpec) -> Vec<VertexAppearance> {
    dt.entries().filter(|&(a, d)| spec.interior(a.t, d)).map(|(a, _)| a).collect()
}

/// An area graph with compact local vertex ids and the map back to the parent.
#[derive(Debug, Clone)]
pub struct AreaGraph {
    graph: TemporalGraph,
    to_parent: Vec<Vertex>,
    from_parent: HashMap<Vertex, Vertex>,
    parent_edges: Vec<usize>,
}

impl AreaGraph {
    pub fn graph(&self) -> &TemporalGraph {
        &self.graph
    }

    /// Indices into the parent's time-edge array, in canonical order.
    pub fn parent_edges(&self) -> &[usize] {
        &self.parent_edges
    }

    pub fn to_parent(&self, local: Vertex) -> Vertex {
        self.to_parent[local]
    }

    pub fn to_local(&self, parent: Vertex) -> Option<Vertex> {
        self.from_parent.get(&parent).copied()
    }

    /// Parent ids of the area's vertices, i.e. all endpoints of its time-edges.
    pub fn parent_vertices(&self) -> &[Vertex] {
        &self.to_parent
    }

    pub fn is_empty(&self) -> bool {
        self.parent_edges.is_empty()
    }

    /// Translate local time-edges back to parent vertex ids.
    pub fn lift(&self, steps: &[TimeEdge]) -> Vec<TimeEdge> {
        steps.iter().map(|e| TimeEdge::new(self.to_parent[e.u], self.to_parent[e.v], e.t)).collect()
    }

    /// The area as a temporal graph on the parent's vertex ids.
    pub fn to_parent_graph(&self, parent: &TemporalGraph) -> TemporalGraph {
        let mut keep = vec![false; parent.edge_count()];
        for &i in &self.parent_edges {
            keep[i] = true;
        }
        parent.filter_edges(|i, _| keep[i])
    }
}

/// Build the area graph of `spec` as an index filter over `g`'s time-edges.
pub fn area_graph(g: &TemporalGraph, dt: &DistanceTable, spec: &AreaSpec) -> AreaGraph {
    let edges = g.time_edges();
    let window = g.time_range(spec.earliest(), spec.upper.t);
    let parent_edges: Vec<usize> = window
        .filter(|&i| {
            let (du, dv) = dt.edge_endpoints(i);
            spec.keeps(&edges[i], du, dv)
        })
        .collect();

    let mut from_parent = HashMap::new();
    let mut to_parent = Vec::new();
    let mut local_edges = Vec::with_capacity(parent_edges.len());
    for &i in &parent_edges {
        let e = edges[i];
        let mut local = |w: Vertex| {
            *from_parent.entry(w).or_insert_with(|| {
                to_parent.push(w);
                to_parent.len() - 1
            })
        };
        let (u, v) = (local(e.u), local(e.v));
        local_edges.push(TimeEdge::new(u, v, e.t));
    }
    let graph = TemporalGraph::new(to_parent.len(), g.lifetime(), local_edges)
        .expect("area of a valid graph is valid");
    AreaGraph { graph, to_parent, from_parent, parent_edges }
}
