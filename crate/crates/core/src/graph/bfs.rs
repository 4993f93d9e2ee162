use std::sync::Mutex;

use super::{Graph, NodeId};
use crate::{Error, Result};

/// Reusable BFS state for one worker.
///
/// Visited flags are epoch stamps: a node is visited in the current search
/// iff `stamp[v] == epoch`, so starting a new search is O(1) instead of
/// clearing an O(|V|) array.
#[derive(Debug, Clone)]
pub struct BfsScratch {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<NodeId>,
    level_ends: Vec<usize>,
    scanned: u64,
}

/// Nodes reached by the last search, in BFS order.
#[derive(Debug, Clone, Copy)]
pub struct Ball<'a> {
    nodes: &'a [NodeId],
    level_ends: &'a [usize],
}

impl<'a> Ball<'a> {
    pub fn nodes(&self) -> &'a [NodeId] {
        self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Deepest level that contains at least one node.
    pub fn depth(&self) -> usize {
        self.level_ends.len().saturating_sub(1)
    }

    /// Nodes at exactly distance `d` from the sources.
    pub fn at_depth(&self, d: usize) -> &'a [NodeId] {
        if d >= self.level_ends.len() {
            return &[];
        }
        let start = if d == 0 { 0 } else { self.level_ends[d - 1] };
        &self.nodes[start..self.level_ends[d]]
    }

    /// Number of nodes within distance `d`.
    pub fn size_within(&self, d: usize) -> usize {
        match self.level_ends.get(d) {
            Some(&e) => e,
            None => self.nodes.len(),
        }
    }
}

impl BfsScratch {
    pub fn new(node_count: usize) -> Self {
        BfsScratch { stamp: vec![0; node_count], epoch: 0, queue: Vec::new(), level_ends: Vec::new(), scanned: 0 }
    }

    pub fn node_count(&self) -> usize {
        self.stamp.len()
    }

    /// Adjacency lists examined since construction.
    pub fn scanned_lists(&self) -> u64 {
        self.scanned
    }

    fn begin(&mut self, g: &Graph) {
        assert_eq!(self.stamp.len(), g.node_count(), "scratch built for a different graph");
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.queue.clear();
        self.level_ends.clear();
    }

    #[inline]
    fn visit(&mut self, v: NodeId) -> bool {
        let s = &mut self.stamp[v as usize];
        if *s == self.epoch {
            false
        } else {
            *s = self.epoch;
            self.queue.push(v);
            true
        }
    }

    /// Whether `v` was reached by the most recent search.
    #[inline]
    pub fn visited(&self, v: NodeId) -> bool {
        self.stamp[v as usize] == self.epoch
    }

    fn expand(&mut self, g: &Graph, h: u32) {
        let mut start = 0;
        self.level_ends.push(self.queue.len());
        for _ in 0..h {
            let end = self.queue.len();
            if start == end {
                break;
            }
            for i in start..end {
                let v = self.queue[i];
                self.scanned += 1;
                for &u in g.neighbors(v) {
                    self.visit(u);
                }
            }
            start = end;
            if self.queue.len() > end {
                self.level_ends.push(self.queue.len());
            }
        }
    }

    /// `h`-hop BFS from one source. The source must be a valid node.
    pub fn ball(&mut self, g: &Graph, source: NodeId, h: u32) -> Ball<'_> {
        self.begin(g);
        self.visit(source);
        self.expand(g, h);
        Ball { nodes: &self.queue, level_ends: &self.level_ends }
    }

    /// Multi-source BFS with every source at depth 0. Each node's
    /// adjacency list is examined at most once.
    pub fn multi_ball(&mut self, g: &Graph, sources: &[NodeId], h: u32) -> Ball<'_> {
        self.begin(g);
        for &s in sources {
            self.visit(s);
        }
        self.expand(g, h);
        Ball { nodes: &self.queue, level_ends: &self.level_ends }
    }

    /// Whether any node within `h` hops of `source` satisfies `hit`,
    /// stopping at the first one found.
    pub fn reaches(&mut self, g: &Graph, source: NodeId, h: u32, mut hit: impl FnMut(NodeId) -> bool) -> bool {
        self.begin(g);
        self.visit(source);
        if hit(source) {
            return true;
        }
        let mut start = 0;
        for _ in 0..h {
            let end = self.queue.len();
            if start == end {
                break;
            }
            for i in start..end {
                let v = self.queue[i];
                self.scanned += 1;
                for &u in g.neighbors(v) {
                    if self.visit(u) && hit(u) {
                        return true;
                    }
                }
            }
            start = end;
        }
        false
    }
}

/// Pool of scratch buffers shared by parallel workers.
#[derive(Debug)]
pub struct ScratchPool {
    node_count: usize,
    free: Mutex<Vec<BfsScratch>>,
}

impl ScratchPool {
    pub fn new(node_count: usize) -> Self {
        ScratchPool { node_count, free: Mutex::new(Vec::new()) }
    }

    pub fn with<R>(&self, f: impl FnOnce(&mut BfsScratch) -> R) -> R {
        let taken = self.free.lock().expect("scratch pool poisoned").pop();
        let mut scratch = taken.unwrap_or_else(|| BfsScratch::new(self.node_count));
        let out = f(&mut scratch);
        self.free.lock().expect("scratch pool poisoned").push(scratch);
        out
    }
}

/// Nodes within distance `h` of `source`, sorted.
pub fn h_hop_bfs(g: &Graph, source: u64, h: u32) -> Result<Vec<NodeId>> {
    let s = g.check_node(source)?;
    let mut scratch = BfsScratch::new(g.node_count());
    let mut out = scratch.ball(g, s, h).nodes().to_vec();
    out.sort_unstable();
    Ok(out)
}

/// Nodes within distance `h` of at least one source, sorted.
pub fn batch_bfs(g: &Graph, sources: &[u64], h: u32) -> Result<Vec<NodeId>> {
    if sources.is_empty() {
        return Err(Error::Empty("source set"));
    }
    let ids = sources.iter().map(|&s| g.check_node(s)).collect::<Result<Vec<_>>>()?;
    let mut scratch = BfsScratch::new(g.node_count());
    let mut out = scratch.multi_ball(g, &ids, h).nodes().to_vec();
    out.sort_unstable();
    Ok(out)
}
