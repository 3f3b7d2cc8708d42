//! r-neighbor bootstrap percolation.
//!
//! Starting from an active seed set `A_0`, each round activates every dormant
//! vertex with at least `r` active neighbors:
//! `A_t = A_{t-1} ∪ { v : |A_{t-1} ∩ N(v)| >= r }`. The fixpoint is the
//! closure of the seed; a seed is r-contagious when its closure is `V`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by the exact solver [`min_contagious`].
pub const EXACT_MAX_ORDER: usize = 40;

/// Rounds `A_0 ⊊ A_1 ⊊ ... ⊊ A_t` of a synchronous run; `A_t` is closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PercolationTrace {
    pub r: usize,
    pub rounds: Vec<VertexSet>,
}

impl PercolationTrace {
    pub fn seed(&self) -> &VertexSet {
        &self.rounds[0]
    }

    pub fn closure(&self) -> &VertexSet {
        self.rounds.last().expect("trace holds the seed")
    }

    /// Number of rounds in which some vertex activated.
    pub fn activation_rounds(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn percolates(&self) -> bool {
        self.closure().is_full()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinContagiousResult {
    pub m: usize,
    pub witness: VertexSet,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalInfection {
    pub seed: (usize, usize),
    pub closure: VertexSet,
}

fn check(g: &Graph, seed: &VertexSet, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::ZeroThreshold);
    }
    if seed.universe() != g.order() {
        return Err(Error::UniverseMismatch { seed: seed.universe(), graph: g.order() });
    }
    Ok(())
}

/// Runs the synchronous process and records every round.
pub fn percolate(g: &Graph, seed: &VertexSet, r: usize) -> Result<PercolationTrace> {
    check(g, seed, r)?;
    let mut rounds = vec![seed.clone()];
    loop {
        let active = rounds.last().expect("non-empty");
        let mut next = active.clone();
        for v in active.complement().iter() {
            if g.neighbors(v).intersection_len(active) >= r {
                next.insert(v);
            }
        }
        if next == *active {
            break;
        }
        rounds.push(next);
    }
    Ok(PercolationTrace { r, rounds })
}

/// The fixpoint of the process from `seed`.
pub fn closure(g: &Graph, seed: &VertexSet, r: usize) -> Result<VertexSet> {
    check(g, seed, r)?;
    Ok(close_general(g, seed.clone(), r))
}

pub fn is_contagious(g: &Graph, seed: &VertexSet, r: usize) -> Result<bool> {
    Ok(closure(g, seed, r)?.is_full())
}

/// Counter-driven closure: each dormant vertex tracks its active neighbors
/// and activates when the count reaches `r`.
fn close_general(g: &Graph, mut active: VertexSet, r: usize) -> VertexSet {
    let n = g.order();
    let mut count = vec![0usize; n];
    let mut queue = Vec::new();
    for v in active.complement().iter() {
        count[v] = g.neighbors(v).intersection_len(&active);
        if count[v] >= r {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        if !active.insert(v) {
            continue;
        }
        for w in g.neighbors(v).iter() {
            if !active.contains(w) {
                count[w] += 1;
                if count[w] == r {
                    queue.push(w);
                }
            }
        }
    }
    active
}

/// Closure over one-word adjacency masks.
#[inline]
pub(crate) fn close_mask(adj: &[u64], seed: u64, r: u32, full: u64) -> u64 {
    let mut active = seed;
    loop {
        let before = active;
        let mut dormant = full & !active;
        while dormant != 0 {
            let v = dormant.trailing_zeros() as usize;
            dormant &= dormant - 1;
            if (adj[v] & active).count_ones() >= r {
                active |= 1 << v;
            }
        }
        if active == before {
            return active;
        }
    }
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// The operations the search routines need, over either one-word masks or
/// general bitsets.
trait Kernel {
    type Set: Clone + PartialEq;
    fn empty(&self) -> Self::Set;
    fn with(&self, s: &Self::Set, v: usize) -> Self::Set;
    fn contains(&self, s: &Self::Set, v: usize) -> bool;
    fn count(&self, s: &Self::Set) -> usize;
    fn close(&self, s: Self::Set) -> Self::Set;
    fn to_set(&self, s: &Self::Set) -> VertexSet;
}

struct MaskKernel {
    adj: Vec<u64>,
    r: u32,
    full: u64,
}

impl MaskKernel {
    fn new(g: &Graph, r: usize) -> Option<Self> {
        let adj = g.masks()?;
        Some(MaskKernel { full: full_mask(adj.len()), adj, r: r.min(u32::MAX as usize) as u32 })
    }
}

impl Kernel for MaskKernel {
    type Set = u64;
    fn empty(&self) -> u64 {
        0
    }
    fn with(&self, s: &u64, v: usize) -> u64 {
        s | 1 << v
    }
    fn contains(&self, s: &u64, v: usize) -> bool {
        s >> v & 1 == 1
    }
    fn count(&self, s: &u64) -> usize {
        s.count_ones() as usize
    }
    fn close(&self, s: u64) -> u64 {
        close_mask(&self.adj, s, self.r, self.full)
    }
    fn to_set(&self, s: &u64) -> VertexSet {
        VertexSet::from_mask(self.adj.len(), *s)
    }
}

struct SetKernel<'a> {
    g: &'a Graph,
    r: usize,
}

impl Kernel for SetKernel<'_> {
    type Set = VertexSet;
    fn empty(&self) -> VertexSet {
        VertexSet::new(self.g.order())
    }
    fn with(&self, s: &VertexSet, v: usize) -> VertexSet {
        let mut t = s.clone();
        t.insert(v);
        t
    }
    fn contains(&self, s: &VertexSet, v: usize) -> bool {
        s.contains(v)
    }
    fn count(&self, s: &VertexSet) -> usize {
        s.len()
    }
    fn close(&self, s: VertexSet) -> VertexSet {
        close_general(self.g, s, self.r)
    }
    fn to_set(&self, s: &VertexSet) -> VertexSet {
        s.clone()
    }
}

/// Runs `$body` with `$k` bound to the fastest kernel available for `$g`.
macro_rules! with_kernel {
    ($g:expr, $r:expr, |$k:ident| $body:expr) => {
        match MaskKernel::new($g, $r) {
            Some($k) => $body,
            None => {
                let $k = SetKernel { g: $g, r: $r };
                $body
            }
        }
    };
}

/// Exact `m(G, r)` with the numerically least optimal seed as witness.
///
/// Seed sizes are tried from `min(r, n)` upwards. Vertices of degree below
/// `r` belong to every contagious set and are always included; the rest of
/// each candidate seed is enumerated in increasing numeric order, and a
/// vertex already inside the closure of the partial seed is never added.
pub fn min_contagious(g: &Graph, r: usize) -> Result<MinContagiousResult> {
    if r == 0 {
        return Err(Error::ZeroThreshold);
    }
    let n = g.order();
    if n > EXACT_MAX_ORDER {
        return Err(Error::OrderTooLarge { n, limit: EXACT_MAX_ORDER, what: "the exact contagious set search" });
    }
    let k = MaskKernel::new(g, r).expect("order checked");
    let forced = (0..n).filter(|&v| g.degree(v) < r).fold(0u64, |m, v| m | 1 << v);
    let free = k.full & !forced;
    let base = k.close(forced);
    let start = r.min(n).max(forced.count_ones() as usize);
    for size in start..=n {
        let need = size - forced.count_ones() as usize;
        if let Some(extra) = exact_search(&k, base, free, need, 0, n) {
            let witness = forced | extra;
            return Ok(MinContagiousResult { m: size, witness: VertexSet::from_mask(n, witness), exact: true });
        }
    }
    unreachable!("the full vertex set is contagious")
}

/// Picks `need` more vertices from `free`, all below `limit`, highest first,
/// so that complete seeds come out in increasing numeric order.
fn exact_search(k: &MaskKernel, closed: u64, free: u64, need: usize, chosen: u64, limit: usize) -> Option<u64> {
    if need == 0 {
        return (closed == k.full).then_some(chosen);
    }
    let below = if limit >= 64 { free } else { free & ((1u64 << limit) - 1) };
    let mut rest = below;
    let mut skipped = 0usize;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // `skipped` free vertices lie below v; the remaining picks must fit there
        let room = skipped;
        skipped += 1;
        if room + 1 < need {
            continue;
        }
        if closed >> v & 1 == 1 {
            continue;
        }
        let next = k.close(closed | 1 << v);
        if let Some(found) = exact_search(k, next, free, need - 1, chosen | 1 << v, v) {
            return Some(found);
        }
    }
    None
}

/// A pair whose 2-closure is the whole graph, trying pairs by descending
/// degree sum (ties by index). `None` when `m(G, 2) > 2` or `n < 2`.
pub fn m2_witness_pair(g: &Graph) -> Option<(usize, usize)> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    let forced: Vec<usize> = (0..n).filter(|&v| g.degree(v) < 2).collect();
    if forced.len() > 2 {
        return None;
    }
    let deg = g.degrees();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| forced.iter().all(|&f| f == i || f == j))
        .collect();
    pairs.sort_by_key(|&(i, j)| (std::cmp::Reverse(deg[i] + deg[j]), i, j));
    with_kernel!(g, 2, |k| {
        pairs.into_iter().find(|&(i, j)| {
            let s = k.with(&k.with(&k.empty(), i), j);
            k.count(&k.close(s)) == n
        })
    })
}

/// Grows a contagious set by repeatedly adding the vertex whose addition
/// enlarges the closure most (lowest index on ties).
pub fn greedy_upper_bound(g: &Graph, r: usize) -> Result<VertexSet> {
    if r == 0 {
        return Err(Error::ZeroThreshold);
    }
    let n = g.order();
    Ok(with_kernel!(g, r, |k| {
        let mut seed = k.empty();
        let mut closed = k.close(k.empty());
        while k.count(&closed) < n {
            let mut best: Option<(usize, usize, _)> = None;
            for v in (0..n).filter(|&v| !k.contains(&closed, v)) {
                let grown = k.close(k.with(&closed, v));
                let size = k.count(&grown);
                if best.as_ref().is_none_or(|(s, _, _)| size > *s) {
                    best = Some((size, v, grown));
                }
            }
            let (_, v, grown) = best.expect("some vertex is dormant");
            seed = k.with(&seed, v);
            closed = grown;
        }
        k.to_set(&seed)
    }))
}

/// A largest closure reachable from two seeds, with the first pair (in
/// lexicographic order) attaining it.
pub fn maximal_infection(g: &Graph, r: usize) -> Result<MaximalInfection> {
    if r != 2 {
        return Err(Error::UnsupportedThreshold { r, what: "maximal infection (pairs of seeds)" });
    }
    let n = g.order();
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2, what: "maximal infection" });
    }
    Ok(with_kernel!(g, 2, |k| {
        let mut best: Option<(usize, (usize, usize), _)> = None;
        'pairs: for i in 0..n {
            for j in i + 1..n {
                let c = k.close(k.with(&k.with(&k.empty(), i), j));
                let size = k.count(&c);
                if best.as_ref().is_none_or(|(s, _, _)| size > *s) {
                    best = Some((size, (i, j), c));
                    if size == n {
                        break 'pairs;
                    }
                }
            }
        }
        let (_, seed, c) = best.expect("n >= 2");
        MaximalInfection { seed, closure: k.to_set(&c) }
    }))
}
