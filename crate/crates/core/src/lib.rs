//! Two-event structural correlation (TESC) on large undirected graphs.
//!
//! Given two sets of event nodes on a graph, `tesc` decides whether the two
//! events attract each other, repel each other, or are independent at a
//! vicinity scale `h`. Reference nodes are sampled from the joint
//! `h`-vicinity of all event nodes, both events' densities are measured in
//! each reference node's vicinity, and a Kendall-τ test with exact tie
//! handling gives a z-score.
//!
//! The crate is organised bottom up:
//!
//! - [`graph`]: CSR graph, edge-list and event-file ingestion, bounded
//!   single- and multi-source BFS, vicinity densities and the offline
//!   vicinity-size index.
//! - [`stats`]: concordance, Kendall's statistic, tie-adjusted null
//!   variance, normal tail probabilities, the importance-weighted estimator
//!   and the transaction-correlation comparator.
//! - [`sampling`]: the reference-node samplers.
//! - [`engine`]: the end-to-end test and multi-level sweeps.
//! - [`simulation`]: synthetic graphs, correlated event pairs, noise and the
//!   recall harness.
//! - [`report`] and [`cli`]: JSON reports and the `tesc` command line.
//!
//! ```
//! use tesc::engine::{test_correlation, TestConfig};
//! use tesc::graph::{EventSet, Graph};
//!
//! // two triangles joined by a bridge
//! let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
//! let a = EventSet::new("a", vec![0, 1], g.node_count()).unwrap();
//! let b = EventSet::new("b", vec![0, 2], g.node_count()).unwrap();
//! let cfg = TestConfig { h: 1, n: 100, seed: 7, ..TestConfig::default() };
//! let result = test_correlation(&g, &a, &b, None, &cfg).unwrap();
//! assert!(result.exact);
//! assert!(result.statistic > 0.0);
//! ```

pub mod cli;
pub mod engine;
mod error;
pub mod graph;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod simulation;
pub mod stats;

pub use error::{Error, Result};
pub use graph::NodeId;
