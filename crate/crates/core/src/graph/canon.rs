//! Canonical labeling for small graphs.
//!
//! Individualization-refinement: the search tree branches on the vertices of
//! the first non-singleton cell of an equitable ordered partition. Each leaf
//! is a discrete partition, i.e. a relabeling, and the canonical labeling is
//! the leaf maximizing (node invariants along its path, relabeled adjacency).
//! Automorphisms found between equivalent leaves prune the tree by orbits
//! and by jumping back to the level where the two paths diverge.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::graph6::write_graph6;
use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 12;

const MAXN: usize = CANON_MAX_ORDER;

/// graph6 encoding of the canonically relabeled graph. Two graphs of the
/// same order have equal forms iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        super::graph6::parse_graph6(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

fn guard(g: &Graph) -> Result<Vec<u64>> {
    if g.order() > MAXN {
        return Err(Error::OrderTooLarge { n: g.order(), limit: MAXN, what: "canonical labeling" });
    }
    Ok(g.masks().expect("order checked"))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.order() == 0 {
        return Err(Error::OrderTooSmall { n: 0, min: 1, what: "canonical labeling" });
    }
    let masks = guard(g)?;
    let (cert, _) = canonical_masks(&masks);
    let canon = Graph::from_masks(&cert[..g.order()]);
    Ok(CanonicalForm(write_graph6(&canon)?))
}

/// Canonical relabeling: `labeling[v]` is the new index of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    let masks = guard(g)?;
    let (_, perm) = canonical_masks(&masks);
    let mut labeling = vec![0; g.order()];
    for (pos, &v) in perm[..g.order()].iter().enumerate() {
        labeling[v as usize] = pos;
    }
    Ok(labeling)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    if a.order() == 0 {
        return Ok(true);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Returns the canonical adjacency rows (row `p` is the neighbor mask of
/// the vertex placed at position `p`) and the placement `perm[p] = vertex`.
pub(crate) fn canonical_masks(adj: &[u64]) -> ([u64; MAXN], [u8; MAXN]) {
    let n = adj.len();
    assert!(n <= MAXN);
    if n == 0 {
        return ([0; MAXN], [0; MAXN]);
    }
    let mut search = Search::new(adj);
    let mut root = Partition::unit(n);
    let inv = search.refine(&mut root);
    search.invs.push(inv);
    search.visit(&root);
    let best = search.best.expect("search visits at least one leaf");
    (best.cert, best.perm)
}

#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; MAXN],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAXN];
        cells[0] = if n == 64 { !0 } else { (1u64 << n) - 1 };
        Partition { cells, len: 1 }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    fn target_cell(&self) -> usize {
        (0..self.len)
            .find(|&i| self.cells[i].count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell")
    }

    fn individualize(&self, cell: usize, v: usize) -> Partition {
        let mut p = *self;
        let bit = 1u64 << v;
        p.cells.copy_within(cell + 1..self.len, cell + 2);
        p.cells[cell] = bit;
        p.cells[cell + 1] = self.cells[cell] & !bit;
        p.len += 1;
        p
    }
}

#[derive(Clone)]
struct Leaf {
    invs: Vec<u64>,
    cert: [u64; MAXN],
    perm: [u8; MAXN],
    path: Vec<u8>,
}

impl Leaf {
    fn key_cmp(&self, invs: &[u64], cert: &[u64; MAXN]) -> Ordering {
        invs.cmp(&self.invs[..]).then_with(|| cert.cmp(&self.cert))
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    best: Option<Leaf>,
    first: Option<Leaf>,
    autos: Vec<[u8; MAXN]>,
    path: Vec<u8>,
    invs: Vec<u64>,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(17)
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64]) -> Self {
        Search {
            n: adj.len(),
            adj,
            best: None,
            first: None,
            autos: Vec::new(),
            path: Vec::with_capacity(MAXN),
            invs: Vec::with_capacity(MAXN + 1),
        }
    }

    /// Refines `p` to the coarsest equitable refinement and returns a hash of
    /// the splitting trace. The trace only mentions cell positions, counts and
    /// sizes, so it is invariant under relabeling.
    fn refine(&self, p: &mut Partition) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        'restart: loop {
            for si in 0..p.len {
                let splitter = p.cells[si];
                for ci in 0..p.len {
                    let cell = p.cells[ci];
                    if cell & cell.wrapping_sub(1) == 0 {
                        continue;
                    }
                    let mut groups = [0u64; MAXN + 1];
                    let mut rest = cell;
                    while rest != 0 {
                        let v = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        groups[(self.adj[v] & splitter).count_ones() as usize] |= 1 << v;
                    }
                    let parts = groups.iter().filter(|&&g| g != 0).count();
                    if parts == 1 {
                        continue;
                    }
                    let tail = p.len;
                    p.cells.copy_within(ci + 1..tail, ci + parts);
                    let mut at = ci;
                    h = mix(h, (si as u64) << 8 | ci as u64);
                    for (count, &g) in groups.iter().enumerate() {
                        if g != 0 {
                            p.cells[at] = g;
                            at += 1;
                            h = mix(h, (count as u64) << 8 | g.count_ones() as u64);
                        }
                    }
                    p.len += parts - 1;
                    continue 'restart;
                }
            }
            break;
        }
        mix(h, p.len as u64)
    }

    fn prefix_vs_best(&self) -> Ordering {
        match &self.best {
            None => Ordering::Greater,
            Some(b) => {
                let k = self.invs.len().min(b.invs.len());
                self.invs[..k].cmp(&b.invs[..k])
            }
        }
    }

    /// Explores the subtree below `p`. `Some(level)` asks ancestors to unwind
    /// to the node at `level` (path length), which then moves to its next child.
    fn visit(&mut self, p: &Partition) -> Option<usize> {
        if self.prefix_vs_best() == Ordering::Less {
            return None;
        }
        if p.is_discrete(self.n) {
            return self.leaf(p);
        }
        let level = self.path.len();
        let cell = p.target_cell();
        let mut tried = 0u64;
        let mut rest = p.cells[cell];
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.autos.is_empty() && self.orbit_mask(v) & tried != 0 {
                continue;
            }
            tried |= 1 << v;
            let mut child = p.individualize(cell, v);
            let inv = self.refine(&mut child);
            self.path.push(v as u8);
            self.invs.push(inv);
            let jump = self.visit(&child);
            self.path.pop();
            self.invs.pop();
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    /// Orbit of `v` under the automorphisms found so far that fix the current
    /// path pointwise.
    fn orbit_mask(&self, v: usize) -> u64 {
        let mut parent: [u8; MAXN] = std::array::from_fn(|i| i as u8);
        fn find(parent: &mut [u8; MAXN], mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        for gamma in &self.autos {
            if self.path.iter().any(|&u| gamma[u as usize] != u) {
                continue;
            }
            for a in 0..self.n {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, gamma[a] as usize);
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb) as u8;
                }
            }
        }
        let root = find(&mut parent, v);
        (0..self.n).filter(|&u| find(&mut parent, u) == root).fold(0u64, |m, u| m | 1 << u)
    }

    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let n = self.n;
        let mut perm = [0u8; MAXN];
        let mut pos = [0u8; MAXN];
        for i in 0..n {
            let v = p.cells[i].trailing_zeros() as u8;
            perm[i] = v;
            pos[v as usize] = i as u8;
        }
        let mut cert = [0u64; MAXN];
        for i in 0..n {
            let mut nb = self.adj[perm[i] as usize];
            let mut row = 0u64;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                row |= 1 << pos[w];
            }
            cert[i] = row;
        }

        let vs_best = match &self.best {
            None => Ordering::Greater,
            Some(b) => b.key_cmp(&self.invs, &cert),
        };
        match vs_best {
            Ordering::Greater => {
                let rec = Leaf { invs: self.invs.clone(), cert, perm, path: self.path.clone() };
                if self.first.is_none() {
                    self.first = Some(rec.clone());
                }
                self.best = Some(rec);
                None
            }
            Ordering::Equal => {
                let other = self.best.as_ref().expect("compared against best");
                self.automorphism(other.perm, other.path.clone(), &perm)
            }
            Ordering::Less => {
                let first = self.first.as_ref().expect("first leaf recorded");
                if first.key_cmp(&self.invs, &cert) == Ordering::Equal {
                    let (fp, fpath) = (first.perm, first.path.clone());
                    self.automorphism(fp, fpath, &perm)
                } else {
                    None
                }
            }
        }
    }

    /// Records the automorphism mapping leaf `other` onto the current leaf and
    /// returns the level to unwind to when the map carries the other path onto
    /// the current one.
    fn automorphism(&mut self, other_perm: [u8; MAXN], other_path: Vec<u8>, perm: &[u8; MAXN]) -> Option<usize> {
        let mut gamma = [0u8; MAXN];
        for i in 0..self.n {
            gamma[other_perm[i] as usize] = perm[i];
        }
        debug_assert!(self.is_automorphism(&gamma));
        self.autos.push(gamma);
        let d = other_path.iter().zip(&self.path).position(|(a, b)| a != b)?;
        let carries = (0..=d).all(|k| gamma[other_path[k] as usize] == self.path[k]);
        carries.then_some(d)
    }

    fn is_automorphism(&self, gamma: &[u8; MAXN]) -> bool {
        (0..self.n).all(|v| {
            let mut image = 0u64;
            let mut nb = self.adj[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                image |= 1 << gamma[w];
            }
            image == self.adj[gamma[v] as usize]
        })
    }
}

/// Least relabeled adjacency over all `n!` permutations. Independent
/// isomorphism key for testing on small graphs.
#[doc(hidden)]
pub fn brute_force_key(g: &Graph) -> Vec<u64> {
    let n = g.order();
    assert!(n <= 9, "brute force is limited to 9 vertices");
    let masks = g.masks().unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    permute(&mut perm, 0, &mut |p| {
        // p[old] = new
        let mut rows = vec![0u64; n];
        for v in 0..n {
            let mut m = 0u64;
            for w in VertexSet::from_mask(n, masks[v]).iter() {
                m |= 1 << p[w];
            }
            rows[p[v]] = m;
        }
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn shuffled(g: &Graph, rng: &mut impl Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn c5_and_p5_differ() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let p5 = Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
        assert_ne!(canonical_form(&c5).unwrap(), canonical_form(&p5).unwrap());
    }

    #[test]
    fn rejects_large_orders() {
        assert!(matches!(canonical_form(&Graph::empty(13)), Err(Error::OrderTooLarge { n: 13, .. })));
    }

    #[test]
    fn symmetric_graphs_finish() {
        // empty and complete graphs have the largest automorphism groups
        for n in 1..=12 {
            let e = Graph::empty(n);
            let k = e.complement();
            assert_eq!(canonical_form(&e).unwrap().to_graph(), e);
            assert_eq!(canonical_form(&k).unwrap().to_graph(), k);
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let f = canonical_form(&g).unwrap();
            for _ in 0..20 {
                assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), f);
            }
            // the canonical representative is isomorphic to the input
            let labeling = canonical_labeling(&g).unwrap();
            assert_eq!(g.relabel(&labeling), f.to_graph());
        }
    }

    #[test]
    fn agrees_with_brute_force_classes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..=7);
            let a = random_graph(&mut rng, n, 0.5);
            let b = if rng.gen_bool(0.5) { shuffled(&a, &mut rng) } else { random_graph(&mut rng, n, 0.5) };
            let same_brute = brute_force_key(&a) == brute_force_key(&b);
            let same_canon = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
            assert_eq!(same_brute, same_canon, "{a:?} vs {b:?}");
        }
    }
}
