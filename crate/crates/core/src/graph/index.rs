use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;

use super::{BfsScratch, Graph, NodeId};
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"TESCIDX1";

/// Offline index of vicinity sizes `|V_v^h|` for `h = 1..=h_max`.
///
/// On disk (little endian): the magic `TESCIDX1`, `node_count` as `u64`,
/// `h_max` as `u32`, then `h_max` arrays of `node_count` `u32` sizes,
/// level 1 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VicinityIndex {
    node_count: usize,
    levels: Vec<Vec<u32>>,
}

impl VicinityIndex {
    /// One `h_max`-hop BFS per node; all levels come out of the same search.
    pub fn build(g: &Graph, h_max: u32) -> Result<Self> {
        if h_max < 1 {
            return Err(Error::InvalidArgument("h_max must be at least 1".into()));
        }
        let n = g.node_count();
        let hm = h_max as usize;
        const CHUNK: usize = 4096;
        let rows: Vec<Vec<u32>> = (0..n.div_ceil(CHUNK))
            .into_par_iter()
            .map_init(
                || BfsScratch::new(n),
                |scratch, c| {
                    let lo = c * CHUNK;
                    let hi = (lo + CHUNK).min(n);
                    let mut out = Vec::with_capacity((hi - lo) * hm);
                    for v in lo..hi {
                        let ball = scratch.ball(g, v as NodeId, h_max);
                        out.extend((1..=hm).map(|h| ball.size_within(h) as u32));
                    }
                    out
                },
            )
            .collect();
        let mut levels = vec![Vec::with_capacity(n); hm];
        for row in rows {
            for sizes in row.chunks_exact(hm) {
                for (level, &s) in levels.iter_mut().zip(sizes) {
                    level.push(s);
                }
            }
        }
        Ok(VicinityIndex { node_count: n, levels })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn h_max(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Sizes for level `h` (`1 <= h <= h_max`).
    pub fn level(&self, h: u32) -> Result<&[u32]> {
        if h == 0 || h > self.h_max() {
            return Err(Error::IndexLevel { h, h_max: self.h_max() });
        }
        Ok(&self.levels[h as usize - 1])
    }

    /// `|V_v^h|`; level 0 is the node itself.
    pub fn size(&self, h: u32, v: NodeId) -> Result<u32> {
        if h == 0 {
            return Ok(1);
        }
        Ok(self.level(h)?[v as usize])
    }

    /// Sum of vicinity sizes over `nodes`.
    pub fn n_sum(&self, h: u32, nodes: &[NodeId]) -> Result<u64> {
        let level = self.level(h)?;
        Ok(nodes.iter().map(|&v| level[v as usize] as u64).sum())
    }

    pub fn mean_size(&self, h: u32) -> Result<f64> {
        let level = self.level(h)?;
        Ok(level.iter().map(|&s| s as f64).sum::<f64>() / level.len().max(1) as f64)
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.node_count != g.node_count() {
            return Err(Error::IndexMismatch { index: self.node_count, graph: g.node_count() });
        }
        Ok(())
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.node_count as u64).to_le_bytes())?;
        w.write_all(&self.h_max().to_le_bytes())?;
        for level in &self.levels {
            let mut buf = Vec::with_capacity(level.len() * 4);
            for s in level {
                buf.extend_from_slice(&s.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        w.flush()
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(|_| Error::BadIndex("truncated header".into()))?;
        if &magic != MAGIC {
            return Err(Error::BadIndex("bad magic".into()));
        }
        let mut b8 = [0u8; 8];
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b8).map_err(|_| Error::BadIndex("truncated header".into()))?;
        let node_count = u64::from_le_bytes(b8) as usize;
        r.read_exact(&mut b4).map_err(|_| Error::BadIndex("truncated header".into()))?;
        let h_max = u32::from_le_bytes(b4);
        if h_max < 1 {
            return Err(Error::BadIndex("h_max is zero".into()));
        }
        let mut levels = Vec::with_capacity(h_max as usize);
        let mut buf = vec![0u8; node_count * 4];
        for h in 1..=h_max {
            r.read_exact(&mut buf).map_err(|_| Error::BadIndex(format!("truncated level {h}")))?;
            levels.push(buf.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect());
        }
        if r.read(&mut b4)? != 0 {
            return Err(Error::BadIndex("trailing bytes".into()));
        }
        Ok(VicinityIndex { node_count, levels })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}
