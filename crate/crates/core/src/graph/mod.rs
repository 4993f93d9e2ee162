//! Graph representation, ingestion and bounded traversals.

mod bfs;
mod density;
mod events;
mod index;

use std::io::BufRead;

pub use bfs::{batch_bfs, h_hop_bfs, Ball, BfsScratch, ScratchPool};
pub use density::{vicinity_counts, vicinity_density, Density, EventMask, VicinityCounts};
pub use events::{load_event_file, load_label_map, EventSet, LabelMap, NodeSet};
pub use index::VicinityIndex;

use crate::{Error, Result};

/// Dense node identifier in `[0, node_count)`.
pub type NodeId = u32;

/// Immutable simple undirected graph in compressed sparse row layout.
///
/// Every undirected edge `{u, v}` is stored twice, once in each endpoint's
/// neighbour list. Neighbour lists are sorted, free of duplicates and
/// self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

/// Bookkeeping from graph construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph from an edge iterator, dropping self-loops and merging
    /// parallel edges (including `(u, v)` / `(v, u)` pairs).
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Ok(Self::build(node_count, edges.into_iter().collect())?.0)
    }

    /// Like [`Graph::from_edges`] but also reports what was dropped.
    pub fn build(node_count: usize, mut edges: Vec<(NodeId, NodeId)>) -> Result<(Self, BuildStats)> {
        if node_count > NodeId::MAX as usize {
            return Err(Error::InvalidArgument(format!("node count {node_count} exceeds u32 ids")));
        }
        let mut stats = BuildStats::default();
        edges.retain_mut(|e| {
            if e.0 == e.1 {
                stats.self_loops += 1;
                return false;
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            true
        });
        if let Some(&(_, v)) = edges.iter().max_by_key(|e| e.1) {
            if v as usize >= node_count {
                return Err(Error::NodeOutOfRange { node: v as u64, node_count });
            }
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        stats.duplicates = before - edges.len();

        let mut degree = vec![0usize; node_count + 1];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree[..node_count] {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..node_count].to_vec();
        let mut targets = vec![0 as NodeId; acc];
        // sorted (u, v) with u < v: pushing v into u's list and u into v's
        // list keeps every list sorted.
        for &(u, v) in &edges {
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for &(u, v) in &edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }
        Ok((Graph { offsets, targets }, stats))
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_node(&self, v: u64) -> Result<NodeId> {
        if v < self.node_count() as u64 {
            Ok(v as NodeId)
        } else {
            Err(Error::NodeOutOfRange { node: v, node_count: self.node_count() })
        }
    }
}

/// Parsed edge list plus load bookkeeping.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub stats: BuildStats,
    pub lines: usize,
}

fn parse_node_header(body: &str) -> Option<&str> {
    let body = body.trim();
    let rest = body.strip_prefix("nodes")?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix(':').or_else(|| rest.strip_prefix('=')).unwrap_or(rest);
    Some(rest.trim())
}

/// Reads a whitespace-separated edge list, one `u v` pair per line.
///
/// Lines starting with `#` are comments, except `# nodes: N`, which fixes
/// the node count so that isolated trailing ids exist. Without it the
/// node count is one more than the largest id seen. `node_count` overrides
/// both.
pub fn load_edge_list<R: BufRead>(reader: R, node_count: Option<usize>) -> Result<LoadedGraph> {
    let mut edges = Vec::new();
    let mut header_count: Option<usize> = None;
    let mut max_id: Option<u64> = None;
    let mut lines = 0usize;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        lines = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(value) = parse_node_header(comment) {
                let n = value
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { line: lineno, message: format!("bad node-count header {value:?}") })?;
                header_count = Some(n);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next = || -> Result<u64> {
            let tok =
                tokens.next().ok_or_else(|| Error::Parse { line: lineno, message: "expected two node ids".into() })?;
            tok.parse::<u64>().map_err(|_| Error::Parse { line: lineno, message: format!("malformed node id {tok:?}") })
        };
        let u = next()?;
        let v = next()?;
        if tokens.next().is_some() {
            return Err(Error::Parse { line: lineno, message: "expected exactly two node ids".into() });
        }
        if u.max(v) >= NodeId::MAX as u64 {
            return Err(Error::Parse { line: lineno, message: format!("node id {} too large", u.max(v)) });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u as NodeId, v as NodeId));
    }
    let seen = max_id.map_or(0, |m| m as usize + 1);
    let n = node_count.or(header_count).unwrap_or(seen);
    if edges.is_empty() && n == 0 {
        return Err(Error::EmptyInput);
    }
    if n < seen {
        return Err(Error::InvalidArgument(format!("declared node count {n} but id {} appears", seen - 1)));
    }
    let (graph, stats) = Graph::build(n, edges)?;
    if stats.self_loops > 0 {
        log::warn!("dropped {} self-loop(s)", stats.self_loops);
    }
    Ok(LoadedGraph { graph, stats, lines })
}

/// Writes the graph as an edge list with a node-count header.
pub fn write_edge_list<W: std::io::Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# nodes: {}", g.node_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}
