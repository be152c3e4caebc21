//! Short δ-restless temporal paths via an above-lower-bound dynamic program.

pub mod areas;
pub mod bench;
pub mod distances;
pub mod generate;
pub mod gf2_64;
pub mod path_finder;
pub mod seed;
pub mod solver;
pub mod temporal_graph;
