//! Temporal graphs with a fixed sequence of edge layers, the TEL text format
//! and the restless-path validator.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Time = usize;

/// An undirected edge present at a single time step.
///
/// Inside a [`TemporalGraph`] the endpoints are normalized so that `u < v`.
/// Inside a [`RestlessPath`] they are oriented in traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TimeEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub t: Time,
}

impl TimeEdge {
    pub fn new(u: Vertex, v: Vertex, t: Time) -> Self {
        Self { u, v, t }
    }

    /// Same edge with `u <= v`.
    pub fn normalized(self) -> Self {
        if self.u <= self.v {
            self
        } else {
            Self { u: self.v, v: self.u, t: self.t }
        }
    }

    pub fn contains(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint opposite to `w`, if `w` is an endpoint.
    pub fn other(&self, w: Vertex) -> Option<Vertex> {
        if self.u == w {
            Some(self.v)
        } else if self.v == w {
            Some(self.u)
        } else {
            None
        }
    }

    fn sort_key(&self) -> (Time, Vertex, Vertex) {
        (self.t, self.u.min(self.v), self.u.max(self.v))
    }
}

impl fmt::Display for TimeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{},{}}},{})", self.u, self.v, self.t)
    }
}

/// A vertex at a time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexAppearance {
    pub v: Vertex,
    pub t: Time,
}

impl VertexAppearance {
    pub fn new(v: Vertex, t: Time) -> Self {
        Self { v, t }
    }
}

impl fmt::Display for VertexAppearance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("lifetime must be at least 1")]
    ZeroLifetime,
    #[error("self-loop on vertex {vertex} at time {t}")]
    SelfLoop { vertex: Vertex, t: Time },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("time-stamp {t} outside [1, {lifetime}]")]
    TimeOutOfRange { t: Time, lifetime: Time },
    #[error("duplicate time-edge {{{u},{v}}} at time {t}")]
    DuplicateTimeEdge { u: Vertex, v: Vertex, t: Time },
    #[error("duplicate alias {0:?}")]
    DuplicateAlias(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input is empty, expected header \"<vertex_count> <lifetime>\"")]
    MissingHeader,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A temporal graph `(V, (E_1, ..., E_τ))` with dense vertex ids `0..vertex_count`.
///
/// Immutable after construction. Time-edges are stored in canonical order
/// `(t, min(u,v), max(u,v))`, so each layer is a contiguous slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    vertex_count: usize,
    lifetime: Time,
    edges: Vec<TimeEdge>,
    // layer_start[t] .. layer_start[t + 1] indexes the edges of E_t; entry 0 unused.
    layer_start: Vec<usize>,
    // edge indices incident to each vertex, in time order
    incidence: Vec<Vec<usize>>,
    aliases: BTreeMap<Vertex, String>,
}

impl TemporalGraph {
    pub fn new(
        vertex_count: usize,
        lifetime: Time,
        edges: impl IntoIterator<Item = TimeEdge>,
    ) -> Result<Self, GraphError> {
        if lifetime == 0 {
            return Err(GraphError::ZeroLifetime);
        }
        let mut list: Vec<TimeEdge> = Vec::new();
        for e in edges {
            check_edge(e, vertex_count, lifetime)?;
            list.push(e.normalized());
        }
        list.sort_by_key(TimeEdge::sort_key);
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            let e = w[0];
            return Err(GraphError::DuplicateTimeEdge { u: e.u, v: e.v, t: e.t });
        }
        Ok(Self::from_sorted(vertex_count, lifetime, list, BTreeMap::new()))
    }

    fn from_sorted(
        vertex_count: usize,
        lifetime: Time,
        edges: Vec<TimeEdge>,
        aliases: BTreeMap<Vertex, String>,
    ) -> Self {
        let mut layer_start = vec![0; lifetime + 2];
        for e in &edges {
            layer_start[e.t + 1] += 1;
        }
        for t in 1..layer_start.len() {
            layer_start[t] += layer_start[t - 1];
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.u].push(i);
            incidence[e.v].push(i);
        }
        Self { vertex_count, lifetime, edges, layer_start, incidence, aliases }
    }

    /// Attach human-readable labels to vertex ids.
    pub fn with_aliases(mut self, aliases: BTreeMap<Vertex, String>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        for (&id, label) in &aliases {
            if id >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: id, vertex_count: self.vertex_count });
            }
            if !seen.insert(label.as_str()) {
                return Err(GraphError::DuplicateAlias(label.clone()));
            }
        }
        self.aliases = aliases;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn lifetime(&self) -> Time {
        self.lifetime
    }

    /// All time-edges in canonical order.
    pub fn time_edges(&self) -> &[TimeEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|G| = |V| + Σ_t max(1, |E_t|)`.
    pub fn size(&self) -> usize {
        self.vertex_count + (1..=self.lifetime).map(|t| self.layer(t).len().max(1)).sum::<usize>()
    }

    /// Edges of layer `E_t`; empty for `t` outside `[1, τ]`.
    pub fn layer(&self, t: Time) -> &[TimeEdge] {
        &self.edges[self.layer_range(t)]
    }

    /// Index range into [`Self::time_edges`] for layer `t`.
    pub fn layer_range(&self, t: Time) -> std::ops::Range<usize> {
        if t == 0 || t > self.lifetime {
            return 0..0;
        }
        self.layer_start[t]..self.layer_start[t + 1]
    }

    /// Index range of all time-edges with stamps in `[from, to]`.
    pub fn time_range(&self, from: Time, to: Time) -> std::ops::Range<usize> {
        let from = from.max(1);
        let to = to.min(self.lifetime);
        if from > to {
            return 0..0;
        }
        self.layer_start[from]..self.layer_start[to + 1]
    }

    /// Indices of the time-edges incident to `v`, in time order.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex, t: Time) -> Option<usize> {
        let key = TimeEdge::new(u, v, t).normalized();
        let range = self.layer_range(t);
        self.edges[range.clone()].binary_search(&key).ok().map(|i| range.start + i)
    }

    pub fn has_time_edge(&self, u: Vertex, v: Vertex, t: Time) -> bool {
        self.edge_index(u, v, t).is_some()
    }

    /// Vertices incident to at least one time-edge.
    pub fn active_vertices(&self) -> Vec<Vertex> {
        (0..self.vertex_count).filter(|&v| !self.incidence[v].is_empty()).collect()
    }

    pub fn aliases(&self) -> &BTreeMap<Vertex, String> {
        &self.aliases
    }

    pub fn alias(&self, v: Vertex) -> Option<&str> {
        self.aliases.get(&v).map(String::as_str)
    }

    /// Resolve a vertex given either as an alias or as a decimal id.
    pub fn resolve_vertex(&self, name: &str) -> Option<Vertex> {
        if let Some((&id, _)) = self.aliases.iter().find(|(_, label)| label.as_str() == name) {
            return Some(id);
        }
        name.parse::<Vertex>().ok().filter(|&v| v < self.vertex_count)
    }

    /// Label for display: the alias when present, else the numeric id.
    pub fn display_vertex(&self, v: Vertex) -> String {
        self.alias(v).map(str::to_owned).unwrap_or_else(|| v.to_string())
    }

    /// Temporal graph on the same vertex ids whose time-edges are those of
    /// `self` with both endpoint appearances in `keep`, together with every
    /// time-edge listed in `extra_edges` that exists in `self`.
    pub fn induced_subgraph(
        &self,
        keep: &HashSet<VertexAppearance>,
        extra_edges: &HashSet<TimeEdge>,
    ) -> TemporalGraph {
        let extra: HashSet<TimeEdge> = extra_edges.iter().map(|e| e.normalized()).collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| {
                (keep.contains(&VertexAppearance::new(e.u, e.t))
                    && keep.contains(&VertexAppearance::new(e.v, e.t)))
                    || extra.contains(e)
            })
            .collect();
        Self::from_sorted(self.vertex_count, self.lifetime, edges, self.aliases.clone())
    }

    /// Sub-graph keeping only the time-edges whose index satisfies `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &TimeEdge) -> bool) -> TemporalGraph {
        let edges = self.edges.iter().enumerate().filter(|(i, e)| keep(*i, e)).map(|(_, e)| *e).collect();
        Self::from_sorted(self.vertex_count, self.lifetime, edges, self.aliases.clone())
    }

    /// Parse the TEL text format.
    pub fn parse_tel(bytes: &[u8]) -> Result<Self, ParseError> {
        let text = std::str::from_utf8(bytes).map_err(|_| ParseError { line: 0, kind: ParseErrorKind::Encoding })?;
        parse_tel_str(text)
    }

    /// Canonical TEL: header, alias lines by id, time-edges by `(t, min, max)`.
    pub fn to_tel(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertex_count, self.lifetime);
        for (id, label) in &self.aliases {
            let _ = writeln!(out, "# name {id} {label}");
        }
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.t);
        }
        out
    }
}

fn check_edge(e: TimeEdge, vertex_count: usize, lifetime: Time) -> Result<(), GraphError> {
    for w in [e.u, e.v] {
        if w >= vertex_count {
            return Err(GraphError::VertexOutOfRange { vertex: w, vertex_count });
        }
    }
    if e.u == e.v {
        return Err(GraphError::SelfLoop { vertex: e.u, t: e.t });
    }
    if e.t == 0 || e.t > lifetime {
        return Err(GraphError::TimeOutOfRange { t: e.t, lifetime });
    }
    Ok(())
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn parse_number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field.parse().map_err(|_| syntax(line, format!("expected {what}, found {field:?}")))
}

fn parse_tel_str(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut header: Option<(usize, Time)> = None;
    let mut edges: Vec<TimeEdge> = Vec::new();
    let mut seen: HashMap<TimeEdge, usize> = HashMap::new();
    let mut aliases: BTreeMap<Vertex, String> = BTreeMap::new();
    let mut labels: HashSet<String> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((vertex_count, lifetime)) = header else {
            if fields.len() != 2 {
                return Err(syntax(line, "header must be \"<vertex_count> <lifetime>\""));
            }
            let n = parse_number(line, fields[0], "vertex count")?;
            let tau = parse_number(line, fields[1], "lifetime")?;
            if tau == 0 {
                return Err(ParseError { line, kind: GraphError::ZeroLifetime.into() });
            }
            header = Some((n, tau));
            continue;
        };
        if fields[0] == "#" {
            if fields.len() != 4 || fields[1] != "name" {
                return Err(syntax(line, "alias line must be \"# name <id> <label>\""));
            }
            let id = parse_number(line, fields[2], "vertex id")?;
            if id >= vertex_count {
                return Err(ParseError { line, kind: GraphError::VertexOutOfRange { vertex: id, vertex_count }.into() });
            }
            let label = fields[3].to_owned();
            if aliases.contains_key(&id) || !labels.insert(label.clone()) {
                return Err(ParseError { line, kind: GraphError::DuplicateAlias(label).into() });
            }
            aliases.insert(id, label);
            continue;
        }
        if fields.len() != 3 {
            return Err(syntax(line, "time-edge line must be \"<u> <v> <t>\""));
        }
        let u = parse_number(line, fields[0], "vertex id")?;
        let v = parse_number(line, fields[1], "vertex id")?;
        let t = parse_number(line, fields[2], "time-stamp")?;
        let e = TimeEdge::new(u, v, t);
        check_edge(e, vertex_count, lifetime).map_err(|err| ParseError { line, kind: err.into() })?;
        let key = e.normalized();
        if seen.insert(key, line).is_some() {
            return Err(ParseError { line, kind: GraphError::DuplicateTimeEdge { u: key.u, v: key.v, t }.into() });
        }
        edges.push(key);
    }

    let (vertex_count, lifetime) = header.ok_or(ParseError { line: 0, kind: ParseErrorKind::MissingHeader })?;
    edges.sort_by_key(TimeEdge::sort_key);
    Ok(TemporalGraph::from_sorted(vertex_count, lifetime, edges, aliases))
}

/// A validated δ-restless temporal path; steps are oriented in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestlessPath {
    steps: Vec<TimeEdge>,
    delta: Time,
}

impl RestlessPath {
    pub fn steps(&self) -> &[TimeEdge] {
        &self.steps
    }

    pub fn delta(&self) -> Time {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn source(&self) -> Vertex {
        self.steps[0].u
    }

    pub fn target(&self) -> Vertex {
        self.steps[self.steps.len() - 1].v
    }

    pub fn departure(&self) -> Time {
        self.steps[0].t
    }

    pub fn arrival(&self) -> Time {
        self.steps[self.steps.len() - 1].t
    }

    /// Visited vertices `v_0, ..., v_m`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        if let Some(first) = self.steps.first() {
            out.push(first.u);
        }
        out.extend(self.steps.iter().map(|e| e.v));
        out
    }

    pub fn into_steps(self) -> Vec<TimeEdge> {
        self.steps
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path has no time-edges")]
    Empty,
    #[error("delta must be at least 1")]
    InvalidDelta,
    #[error("step {index}: time-edge {edge} is not present in the graph")]
    EdgeNotPresent { index: usize, edge: TimeEdge },
    #[error("step {index}: time-edge {edge} does not continue from vertex {at}")]
    NotContiguous { index: usize, edge: TimeEdge, at: Vertex },
    #[error("step {index}: vertex {vertex} visited twice")]
    VertexRepeated { index: usize, vertex: Vertex },
    #[error("step {index}: time {t} precedes previous time {prev}")]
    NotChronological { index: usize, prev: Time, t: Time },
    #[error("step {index}: waiting time {gap} exceeds delta {delta}")]
    WaitingTimeExceeded { index: usize, gap: Time, delta: Time },
    #[error("path runs from {from} to {to}, expected {s} to {z}")]
    WrongEndpoints { from: Vertex, to: Vertex, s: Vertex, z: Vertex },
}

/// Check that `steps` is a δ-restless temporal `s`-`z` path in `g`.
///
/// Steps may list their endpoints in either order. Conditions are checked
/// step by step and the first violation is reported.
pub fn validate_restless_path(
    g: &TemporalGraph,
    steps: &[TimeEdge],
    s: Vertex,
    z: Vertex,
    delta: Time,
) -> Result<RestlessPath, PathError> {
    if delta == 0 {
        return Err(PathError::InvalidDelta);
    }
    if steps.is_empty() {
        return Err(PathError::Empty);
    }
    let mut oriented = Vec::with_capacity(steps.len());
    let mut visited = HashSet::from([s]);
    let mut at = s;
    for (index, &edge) in steps.iter().enumerate() {
        if edge.u >= g.vertex_count() || edge.v >= g.vertex_count() || !g.has_time_edge(edge.u, edge.v, edge.t) {
            return Err(PathError::EdgeNotPresent { index, edge });
        }
        let next = edge.other(at).ok_or(PathError::NotContiguous { index, edge, at })?;
        if !visited.insert(next) {
            return Err(PathError::VertexRepeated { index, vertex: next });
        }
        if let Some(prev) = oriented.last().map(|e: &TimeEdge| e.t) {
            if edge.t < prev {
                return Err(PathError::NotChronological { index, prev, t: edge.t });
            }
            if edge.t - prev > delta {
                return Err(PathError::WaitingTimeExceeded { index, gap: edge.t - prev, delta });
            }
        }
        oriented.push(TimeEdge::new(at, next, edge.t));
        at = next;
    }
    if at != z {
        return Err(PathError::WrongEndpoints { from: s, to: at, s, z });
    }
    Ok(RestlessPath { steps: oriented, delta })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const FIG1: &str = include_str!("../examples/fig1.tel");

    pub(crate) fn fig1() -> TemporalGraph {
        TemporalGraph::parse_tel(FIG1.as_bytes()).unwrap()
    }

    pub(crate) fn v(g: &TemporalGraph, name: &str) -> Vertex {
        g.resolve_vertex(name).unwrap()
    }

    pub(crate) fn fig1_path(g: &TemporalGraph) -> Vec<TimeEdge> {
        [("s", "a", 2), ("a", "c", 4), ("c", "b", 4), ("b", "e", 4), ("e", "z", 6)]
            .iter()
            .map(|&(x, y, t)| TimeEdge::new(v(g, x), v(g, y), t))
            .collect()
    }

    #[test]
    fn parses_fig1() {
        let g = fig1();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.lifetime(), 6);
        assert_eq!(g.edge_count(), 9);
        let (s, b) = (v(&g, "s"), v(&g, "b"));
        assert!(g.has_time_edge(s, b, 1));
        assert!(g.has_time_edge(b, s, 5));
        assert!(!g.has_time_edge(s, b, 2));
        // 7 + layers {2,2,1,3,1,1}
        assert_eq!(g.size(), 7 + 2 + 2 + 1 + 3 + 1 + 1);
    }

    #[test]
    fn minimal_instance() {
        let g = TemporalGraph::parse_tel(b"2 1\n0 1 1\n").unwrap();
        assert_eq!(g.time_edges(), &[TimeEdge::new(0, 1, 1)]);
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = TemporalGraph::parse_tel(b"2 1\n0 0 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::SelfLoop { vertex: 0, t: 1 })));

        let err = TemporalGraph::parse_tel(b"2 3\n% c\n0 2 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::VertexOutOfRange { vertex: 2, .. })));

        let err = TemporalGraph::parse_tel(b"2 3\n0 1 4\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::TimeOutOfRange { t: 4, lifetime: 3 })));

        let err = TemporalGraph::parse_tel(b"2 3\n0 1 0\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::TimeOutOfRange { t: 0, .. })));

        let err = TemporalGraph::parse_tel(b"3 3\n0 1 2\n1 0 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::DuplicateTimeEdge { u: 0, v: 1, t: 2 })));

        let err = TemporalGraph::parse_tel(b"3 3\n0 x 2\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        let err = TemporalGraph::parse_tel(b"3 3\n0 1\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        let err = TemporalGraph::parse_tel(b"% only a comment\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingHeader);

        let err = TemporalGraph::parse_tel(b"3 0\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::ZeroLifetime)));

        let err = TemporalGraph::parse_tel(b"3 2\n# name 0 s\n# name 1 s\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::DuplicateAlias(_))));
    }

    #[test]
    fn programmatic_construction_rejects_bad_edges() {
        assert!(matches!(TemporalGraph::new(2, 1, [TimeEdge::new(1, 1, 1)]), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(
            TemporalGraph::new(3, 2, [TimeEdge::new(0, 1, 2), TimeEdge::new(1, 0, 2)]),
            Err(GraphError::DuplicateTimeEdge { .. })
        ));
        assert!(matches!(TemporalGraph::new(3, 0, []), Err(GraphError::ZeroLifetime)));
    }

    #[test]
    fn empty_layers_count_once_in_size() {
        let g = TemporalGraph::parse_tel(b"3 4\n0 1 2\n").unwrap();
        assert_eq!(g.layer(1).len(), 0);
        assert_eq!(g.layer(2).len(), 1);
        assert_eq!(g.size(), 3 + 4);
    }

    #[test]
    fn canonical_serialization_sorts_edges() {
        let g = TemporalGraph::parse_tel(b"4 3\n% comment\n3 2 3\n1 0 1\n# name 2 x\n2 0 1\n").unwrap();
        assert_eq!(g.to_tel(), "4 3\n# name 2 x\n0 1 1\n0 2 1\n2 3 3\n");
    }

    #[test]
    fn validates_fig1_path() {
        let g = fig1();
        let steps = fig1_path(&g);
        let path = validate_restless_path(&g, &steps, v(&g, "s"), v(&g, "z"), 2).unwrap();
        assert_eq!(path.len(), 5);
        assert_eq!(path.vertices().len(), 6);
        assert_eq!(path.departure(), 2);
        assert_eq!(path.arrival(), 6);
    }

    #[test]
    fn rejects_fig1_path_with_delta_one() {
        let g = fig1();
        let steps = fig1_path(&g);
        let err = validate_restless_path(&g, &steps, v(&g, "s"), v(&g, "z"), 1).unwrap_err();
        // the first gap to exceed 1 is 2 -> 4
        assert_eq!(err, PathError::WaitingTimeExceeded { index: 1, gap: 2, delta: 1 });
        // 4 -> 6 also exceeds
        let tail = &steps[3..];
        let err = validate_restless_path(&g, tail, v(&g, "b"), v(&g, "z"), 1).unwrap_err();
        assert_eq!(err, PathError::WaitingTimeExceeded { index: 1, gap: 2, delta: 1 });
    }

    #[test]
    fn rejects_long_wait() {
        let g = fig1();
        let (s, e, z) = (v(&g, "s"), v(&g, "e"), v(&g, "z"));
        let steps = [TimeEdge::new(s, e, 1), TimeEdge::new(e, z, 6)];
        let err = validate_restless_path(&g, &steps, s, z, 2).unwrap_err();
        assert_eq!(err, PathError::WaitingTimeExceeded { index: 1, gap: 5, delta: 2 });
        assert!(validate_restless_path(&g, &steps, s, z, 5).is_ok());
    }

    #[test]
    fn reports_each_violation_kind() {
        let g = fig1();
        let (s, a, b, c, e, z) = (v(&g, "s"), v(&g, "a"), v(&g, "b"), v(&g, "c"), v(&g, "e"), v(&g, "z"));
        assert_eq!(validate_restless_path(&g, &[], s, z, 2), Err(PathError::Empty));
        assert_eq!(
            validate_restless_path(&g, &[TimeEdge::new(s, a, 3)], s, a, 2),
            Err(PathError::EdgeNotPresent { index: 0, edge: TimeEdge::new(s, a, 3) })
        );
        assert!(matches!(
            validate_restless_path(&g, &[TimeEdge::new(a, c, 4)], s, c, 2),
            Err(PathError::NotContiguous { index: 0, at, .. }) if at == s
        ));
        assert!(matches!(
            validate_restless_path(&g, &[TimeEdge::new(s, e, 1), TimeEdge::new(e, c, 2), TimeEdge::new(c, b, 4), TimeEdge::new(b, s, 5)], s, s, 2),
            Err(PathError::VertexRepeated { index: 3, .. })
        ));
        assert!(matches!(
            validate_restless_path(&g, &[TimeEdge::new(s, a, 2), TimeEdge::new(a, c, 4), TimeEdge::new(c, e, 2)], s, e, 5),
            Err(PathError::NotChronological { index: 2, prev: 4, t: 2 })
        ));
        assert!(matches!(
            validate_restless_path(&g, &[TimeEdge::new(s, a, 2)], s, z, 2),
            Err(PathError::WrongEndpoints { .. })
        ));
        assert_eq!(validate_restless_path(&g, &[TimeEdge::new(s, a, 2)], s, a, 0), Err(PathError::InvalidDelta));
    }

    #[test]
    fn single_edge_is_always_restless() {
        let g = TemporalGraph::parse_tel(b"2 9\n0 1 9\n").unwrap();
        let p = validate_restless_path(&g, &[TimeEdge::new(1, 0, 9)], 1, 0, 1).unwrap();
        assert_eq!(p.steps(), &[TimeEdge::new(1, 0, 9)]);
    }

    #[test]
    fn induced_subgraph_cases() {
        let g = fig1();
        let all: HashSet<VertexAppearance> = g
            .time_edges()
            .iter()
            .flat_map(|e| [VertexAppearance::new(e.u, e.t), VertexAppearance::new(e.v, e.t)])
            .collect();
        assert_eq!(g.induced_subgraph(&all, &HashSet::new()), g);
        assert_eq!(g.induced_subgraph(&HashSet::new(), &HashSet::new()).edge_count(), 0);

        let window: HashSet<VertexAppearance> = all.iter().copied().filter(|a| (2..=4).contains(&a.t)).collect();
        let sub = g.induced_subgraph(&window, &HashSet::new());
        let stamps: Vec<Time> = sub.time_edges().iter().map(|e| e.t).collect();
        let expected: Vec<Time> = g.time_edges().iter().map(|e| e.t).filter(|t| (2..=4).contains(t)).collect();
        assert_eq!(stamps, expected);
        assert_eq!(stamps, vec![2, 2, 4, 4, 4]);

        let (s, e) = (v(&g, "s"), v(&g, "e"));
        let extra = HashSet::from([TimeEdge::new(e, s, 1)]);
        let sub = g.induced_subgraph(&window, &extra);
        assert_eq!(sub.edge_count(), 6);
        assert!(sub.has_time_edge(s, e, 1));
    }
}
