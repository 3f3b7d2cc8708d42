//! Isomorph-free generation of all graphs of a given order.
//!
//! Graphs are grown one edge at a time: level `e + 1` is every canonical
//! graph obtained by adding a non-edge to a level-`e` graph, with duplicates
//! rejected by canonical form. Only levels up to half the possible edges are
//! generated; the upper half is emitted as complements of the lower half.

use std::collections::HashSet;

use super::canon::canonical_masks;
use super::Graph;
use crate::error::{Error, Result};

/// Largest order the built-in enumerator accepts. Bigger corpora should be
/// produced by an external generator and read as graph6.
pub const ENUM_MAX_ORDER: usize = 9;

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by edge count.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumerator> {
    if n > ENUM_MAX_ORDER {
        return Err(Error::OrderTooLarge { n, limit: ENUM_MAX_ORDER, what: "built-in enumeration" });
    }
    Ok(GraphEnumerator::new(n))
}

/// Bit index of pair `(i, j)`, `i < j`, in graph6 order.
#[inline]
fn pair_bit(i: usize, j: usize) -> u32 {
    (j * (j - 1) / 2 + i) as u32
}

fn pack(masks: &[u64]) -> u64 {
    let mut key = 0u64;
    for (j, &row) in masks.iter().enumerate() {
        let mut below = row & ((1u64 << j) - 1);
        while below != 0 {
            let i = below.trailing_zeros() as usize;
            below &= below - 1;
            key |= 1 << pair_bit(i, j);
        }
    }
    key
}

fn unpack(n: usize, key: u64) -> Vec<u64> {
    let mut masks = vec![0u64; n];
    for j in 1..n {
        for i in 0..j {
            if key >> pair_bit(i, j) & 1 == 1 {
                masks[i] |= 1 << j;
                masks[j] |= 1 << i;
            }
        }
    }
    masks
}

pub struct GraphEnumerator {
    n: usize,
    max_edges: usize,
    /// Levels `0..levels.len()` of the lower half, each sorted.
    levels: Vec<Vec<u64>>,
    /// Edge count currently being emitted.
    edges: usize,
    pos: usize,
}

impl GraphEnumerator {
    fn new(n: usize) -> Self {
        GraphEnumerator { n, max_edges: n * n.saturating_sub(1) / 2, levels: vec![vec![0]], edges: 0, pos: 0 }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn half(&self) -> usize {
        self.max_edges / 2
    }

    fn grow(&mut self) {
        let n = self.n;
        let prev = self.levels.last().expect("level 0 exists");
        let mut next = HashSet::with_capacity(prev.len() * 2);
        for &key in prev {
            let mut masks = unpack(n, key);
            for j in 1..n {
                for i in 0..j {
                    if masks[i] >> j & 1 == 1 {
                        continue;
                    }
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                    let (canon, _) = canonical_masks(&masks);
                    next.insert(pack(&canon[..n]));
                    masks[i] &= !(1 << j);
                    masks[j] &= !(1 << i);
                }
            }
        }
        let mut level: Vec<u64> = next.into_iter().collect();
        level.sort_unstable();
        self.levels.push(level);
    }

    fn full_key(&self) -> u64 {
        if self.max_edges == 64 {
            !0
        } else {
            (1u64 << self.max_edges) - 1
        }
    }
}

impl Iterator for GraphEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if self.edges > self.max_edges {
                return None;
            }
            let half = self.half();
            let (level, complement) = if self.edges <= half {
                while self.levels.len() <= self.edges {
                    self.grow();
                }
                (self.edges, false)
            } else {
                (self.max_edges - self.edges, true)
            };
            if let Some(&key) = self.levels[level].get(self.pos) {
                self.pos += 1;
                let key = if complement { !key & self.full_key() } else { key };
                return Some(Graph::from_masks(&unpack(self.n, key)));
            }
            self.edges += 1;
            self.pos = 0;
        }
    }
}

/// Largest order accepted by [`enumerate_up_closed`].
pub const UP_CLOSED_MAX_ORDER: usize = 11;

/// One representative per isomorphism class of graphs on `n` vertices that
/// satisfy `keep`, which must be preserved under adding edges (for example
/// a lower bound on `σ₂` or on the sorted degree sequence). Graphs are
/// reached from `K_n` by deleting edges, so classes failing `keep` are
/// never expanded. Output is ordered by decreasing edge count and only one
/// edge level is held in memory at a time.
pub fn enumerate_up_closed<F>(n: usize, keep: F) -> Result<UpClosedEnumerator<F>>
where
    F: Fn(&Graph) -> bool,
{
    if n > UP_CLOSED_MAX_ORDER {
        return Err(Error::OrderTooLarge { n, limit: UP_CLOSED_MAX_ORDER, what: "up-closed enumeration" });
    }
    let complete = Graph::empty(n).complement();
    let level = if keep(&complete) {
        let masks = complete.masks().expect("order checked");
        vec![pack(&canonical_masks(&masks).0[..n])]
    } else {
        Vec::new()
    };
    Ok(UpClosedEnumerator { n, keep, level, pos: 0 })
}

pub struct UpClosedEnumerator<F> {
    n: usize,
    keep: F,
    level: Vec<u64>,
    pos: usize,
}

impl<F: Fn(&Graph) -> bool> UpClosedEnumerator<F> {
    fn descend(&mut self) {
        let n = self.n;
        let mut next = HashSet::new();
        for &key in &self.level {
            let mut masks = unpack(n, key);
            for j in 1..n {
                for i in 0..j {
                    if masks[i] >> j & 1 == 0 {
                        continue;
                    }
                    masks[i] &= !(1 << j);
                    masks[j] &= !(1 << i);
                    let (canon, _) = canonical_masks(&masks);
                    let child = pack(&canon[..n]);
                    if !next.contains(&child) && (self.keep)(&Graph::from_masks(&canon[..n])) {
                        next.insert(child);
                    }
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                }
            }
        }
        self.level = next.into_iter().collect();
        self.level.sort_unstable();
        self.pos = 0;
    }
}

impl<F: Fn(&Graph) -> bool> Iterator for UpClosedEnumerator<F> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.pos == self.level.len() {
            if self.level.is_empty() {
                return None;
            }
            self.descend();
            if self.level.is_empty() {
                return None;
            }
        }
        self.pos += 1;
        Some(Graph::from_masks(&unpack(self.n, self.level[self.pos - 1])))
    }
}
