use std::collections::HashMap;
use std::io::BufRead;

use super::NodeId;
use crate::{Error, Result};

/// Nodes on which one event occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSet {
    name: String,
    nodes: Vec<NodeId>,
}

impl EventSet {
    /// Validates ids against `node_count` and rejects duplicates.
    pub fn new(name: impl Into<String>, mut nodes: Vec<NodeId>, node_count: usize) -> Result<Self> {
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEventNode(w[0]));
        }
        if let Some(&last) = nodes.last() {
            if last as usize >= node_count {
                return Err(Error::NodeOutOfRange { node: last as u64, node_count });
            }
        }
        Ok(EventSet { name: name.into(), nodes })
    }

    /// Builds an event set from ids that may repeat (used by generators,
    /// where collisions are absorbed).
    pub fn from_unsorted(name: impl Into<String>, mut nodes: Vec<NodeId>, node_count: usize) -> Result<Self> {
        nodes.sort_unstable();
        nodes.dedup();
        Self::new(name, nodes, node_count)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    /// Sorted union of both events' nodes.
    pub fn union(&self, other: &EventSet) -> Vec<NodeId> {
        let (a, b) = (&self.nodes, &other.nodes);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }
}

/// Sorted node set with O(1) membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    nodes: Vec<NodeId>,
    bits: Vec<u64>,
}

impl NodeSet {
    pub fn new(mut nodes: Vec<NodeId>, node_count: usize) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        let mut bits = vec![0u64; node_count.div_ceil(64)];
        for &v in &nodes {
            assert!((v as usize) < node_count, "node {v} out of range");
            bits[v as usize / 64] |= 1 << (v % 64);
        }
        NodeSet { nodes, bits }
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.bits[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in `[0, node_count)` not in the set.
    pub fn complement(&self, node_count: usize) -> Vec<NodeId> {
        (0..node_count as NodeId).filter(|&v| !self.contains(v)).collect()
    }
}

/// Label to node-id mapping for labelled datasets.
pub type LabelMap = HashMap<String, NodeId>;

/// Reads `id label` lines (label is the rest of the line, trimmed).
pub fn load_label_map<R: BufRead>(reader: R) -> Result<LabelMap> {
    let mut map = LabelMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (id, label) = t
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse { line: i + 1, message: "expected `id label`".into() })?;
        let id: NodeId =
            id.parse().map_err(|_| Error::Parse { line: i + 1, message: format!("malformed node id {id:?}") })?;
        if map.insert(label.trim().to_string(), id).is_some() {
            return Err(Error::Parse { line: i + 1, message: format!("label {:?} repeated", label.trim()) });
        }
    }
    Ok(map)
}

/// Reads an event file: one node id (or a label, when `labels` is given)
/// per line, `#` comments allowed. Duplicate entries are rejected.
pub fn load_event_file<R: BufRead>(
    reader: R,
    name: &str,
    node_count: usize,
    labels: Option<&LabelMap>,
) -> Result<EventSet> {
    let mut nodes = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let id = match labels {
            Some(map) => match map.get(t) {
                Some(&id) => id as u64,
                None => t
                    .parse::<u64>()
                    .map_err(|_| Error::Parse { line: i + 1, message: format!("unknown label {t:?}") })?,
            },
            None => t
                .parse::<u64>()
                .map_err(|_| Error::Parse { line: i + 1, message: format!("malformed node id {t:?}") })?,
        };
        if id >= node_count as u64 {
            return Err(Error::NodeOutOfRange { node: id, node_count });
        }
        nodes.push(id as NodeId);
    }
    EventSet::new(name, nodes, node_count)
}
