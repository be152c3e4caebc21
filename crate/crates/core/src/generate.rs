//! Seeded random temporal graphs: each layer keeps every vertex pair
//! independently with probability `edges_per_layer / C(n, 2)`.

use rand::distributions::{Bernoulli, Distribution};
use thiserror::Error;

use crate::seed;
use crate::temporal_graph::{TemporalGraph, TimeEdge};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub vertices: usize,
    pub lifetime: usize,
    /// Expected number of edges per layer.
    pub edges_per_layer: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("lifetime must be at least 1")]
    ZeroLifetime,
    #[error("edges per layer must lie in [0, {max}] for this vertex count, got {mean}")]
    Density { mean: f64, max: usize },
}

impl GenParams {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.vertices < 2 {
            return Err(GenError::TooFewVertices(self.vertices));
        }
        if self.lifetime == 0 {
            return Err(GenError::ZeroLifetime);
        }
        let max = self.vertices * (self.vertices - 1) / 2;
        if !(self.edges_per_layer >= 0.0 && self.edges_per_layer <= max as f64) {
            return Err(GenError::Density { mean: self.edges_per_layer, max });
        }
        Ok(())
    }
}

pub fn random_temporal_graph(params: &GenParams, seed: u64) -> Result<TemporalGraph, GenError> {
    params.validate()?;
    let n = params.vertices;
    let pairs = n * (n - 1) / 2;
    let keep = Bernoulli::new(params.edges_per_layer / pairs as f64).expect("probability checked above");
    let mut rng = seed::rng(seed::derive(seed, &[n as u64, params.lifetime as u64]));
    let mut edges = Vec::new();
    for t in 1..=params.lifetime {
        for u in 0..n {
            for v in u + 1..n {
                if keep.sample(&mut rng) {
                    edges.push(TimeEdge::new(u, v, t));
                }
            }
        }
    }
    Ok(TemporalGraph::new(n, params.lifetime, edges).expect("generated edges are valid"))
}
