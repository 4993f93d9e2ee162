use std::cmp::Ordering;

use super::{BfsScratch, EventSet, Graph, NodeId};
use crate::Result;

/// Exact density `count / size`, compared by cross multiplication.
///
/// `1/2` and `2/4` are equal. `size` is never zero for a vicinity (it
/// always contains its centre).
#[derive(Debug, Clone, Copy)]
pub struct Density {
    pub count: u32,
    pub size: u32,
}

impl Density {
    pub fn new(count: u32, size: u32) -> Self {
        assert!(size > 0, "density with empty vicinity");
        assert!(count <= size, "density above one");
        Density { count, size }
    }

    pub fn value(&self) -> f64 {
        self.count as f64 / self.size as f64
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.count as u64 * other.size as u64).cmp(&(other.count as u64 * self.size as u64))
    }
}

/// Per-node event flags for the two events under test.
#[derive(Debug, Clone)]
pub struct EventMask {
    flags: Vec<u8>,
}

impl EventMask {
    pub const A: u8 = 1;
    pub const B: u8 = 2;

    pub fn new(node_count: usize, a: &EventSet, b: &EventSet) -> Self {
        let mut flags = vec![0u8; node_count];
        for &v in a.nodes() {
            flags[v as usize] |= Self::A;
        }
        for &v in b.nodes() {
            flags[v as usize] |= Self::B;
        }
        EventMask { flags }
    }

    /// Single-event mask (flag A only).
    pub fn single(node_count: usize, a: &EventSet) -> Self {
        let mut flags = vec![0u8; node_count];
        for &v in a.nodes() {
            flags[v as usize] = Self::A;
        }
        EventMask { flags }
    }

    #[inline]
    pub fn flags(&self, v: NodeId) -> u8 {
        self.flags[v as usize]
    }

    #[inline]
    pub fn any(&self, v: NodeId) -> bool {
        self.flags[v as usize] != 0
    }
}

/// Event counts inside one vicinity, from a single traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VicinityCounts {
    /// `|V_r^h|`
    pub size: u32,
    pub a: u32,
    pub b: u32,
    /// Nodes carrying at least one of the events.
    pub any: u32,
}

impl VicinityCounts {
    pub fn density_a(&self) -> Density {
        Density::new(self.a, self.size)
    }

    pub fn density_b(&self) -> Density {
        Density::new(self.b, self.size)
    }
}

pub fn vicinity_counts(scratch: &mut BfsScratch, g: &Graph, r: NodeId, h: u32, mask: &EventMask) -> VicinityCounts {
    let ball = scratch.ball(g, r, h);
    let mut c = VicinityCounts { size: ball.len() as u32, a: 0, b: 0, any: 0 };
    for &v in ball.nodes() {
        let f = mask.flags(v);
        c.a += (f & EventMask::A != 0) as u32;
        c.b += (f & EventMask::B != 0) as u32;
        c.any += (f != 0) as u32;
    }
    c
}

/// Density of `event` in the `h`-vicinity of `r`.
pub fn vicinity_density(g: &Graph, r: u64, h: u32, event: &EventSet) -> Result<Density> {
    let r = g.check_node(r)?;
    let mut scratch = BfsScratch::new(g.node_count());
    let ball = scratch.ball(g, r, h);
    let count = ball.nodes().iter().filter(|&&v| event.contains(v)).count();
    Ok(Density::new(count as u32, ball.len() as u32))
}
