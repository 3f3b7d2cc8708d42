use serde::Serialize;

use super::construct::{family_graph, Family, Surgery};
use super::corpus::XCorpus;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order handled by the structural search.
pub const CLASSIFY_MAX_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    G0,
    G1,
    G2,
    G3,
    X,
    None,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::G0 => FamilyKind::G0,
            Family::G1 => FamilyKind::G1,
            Family::G2 => FamilyKind::G2,
            Family::G3 => FamilyKind::G3,
        }
    }
}

impl FamilyKind {
    pub fn family(self) -> Option<Family> {
        match self {
            FamilyKind::G0 => Some(Family::G0),
            FamilyKind::G1 => Some(Family::G1),
            FamilyKind::G2 => Some(Family::G2),
            FamilyKind::G3 => Some(Family::G3),
            FamilyKind::X | FamilyKind::None => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::X => "X",
            FamilyKind::None => "None",
            k => k.family().expect("two-clique kind").name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyLabel {
    pub kind: FamilyKind,
    /// Present for the two-clique families.
    pub surgery: Option<Surgery>,
    /// Position in the exceptional corpus for kind `X`.
    pub x_index: Option<usize>,
}

impl FamilyLabel {
    fn none() -> Self {
        FamilyLabel { kind: FamilyKind::None, surgery: None, x_index: None }
    }

    /// Builds the graph the witness describes, isomorphic to the classified
    /// graph. `None` for kind `None`.
    pub fn rebuild(&self, corpus: &XCorpus) -> Option<Graph> {
        match (self.kind.family(), &self.surgery, self.x_index) {
            (Some(f), Some(s), _) => family_graph(f, s.x_set.len(), s.y_set.len()).ok(),
            (None, _, Some(i)) => corpus.entries.get(i).map(|e| e.canonical.to_graph()),
            _ => None,
        }
    }

    /// For the two-clique families, a relabeling `old -> new` carrying the
    /// classified graph exactly onto [`FamilyLabel::rebuild`].
    pub fn isomorphism(&self) -> Option<Vec<usize>> {
        self.surgery.as_ref().map(Surgery::standard_labeling)
    }
}

/// Labels `g` as a two-clique family member (checked first, `G0` before
/// `G1` before `G2` before `G3`), a member of the built-in exceptional
/// corpus, or neither.
pub fn classify_family(g: &Graph) -> Result<FamilyLabel> {
    classify_family_with(g, XCorpus::builtin())
}

pub fn classify_family_with(g: &Graph, corpus: &XCorpus) -> Result<FamilyLabel> {
    if let Some((family, surgery)) = recognize_surgery(g)? {
        return Ok(FamilyLabel { kind: family.into(), surgery: Some(surgery), x_index: None });
    }
    Ok(match corpus.find(g)? {
        Some(i) => FamilyLabel { kind: FamilyKind::X, surgery: None, x_index: Some(i) },
        None => FamilyLabel::none(),
    })
}

/// Finds a split of `V` into `X ∋ 0` and `Y` that makes `g` a two-clique
/// family member, preferring the lowest family.
///
/// Vertex 0 has at most two cross neighbors and at most one non-neighbor
/// inside its own side, so `X` is `N[0]` minus at most two vertices plus at
/// most one more; every such candidate is tested.
pub fn recognize_surgery(g: &Graph) -> Result<Option<(Family, Surgery)>> {
    let n = g.order();
    if n > CLASSIFY_MAX_ORDER {
        return Err(Error::OrderTooLarge { n, limit: CLASSIFY_MAX_ORDER, what: "family recognition" });
    }
    if n < 2 {
        return Ok(None);
    }
    let adj = g.masks().expect("order checked");
    let full = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let closed = adj[0] | 1;
    let nbrs: Vec<usize> = bits(adj[0]).collect();
    let others: Vec<usize> = bits(full & !closed).collect();

    let mut drops: Vec<u64> = vec![0];
    drops.extend(nbrs.iter().map(|&v| 1u64 << v));
    for (i, &u) in nbrs.iter().enumerate() {
        drops.extend(nbrs[i + 1..].iter().map(|&v| 1u64 << u | 1u64 << v));
    }
    let mut adds: Vec<u64> = vec![0];
    adds.extend(others.iter().map(|&v| 1u64 << v));

    let mut best: Option<(Family, Surgery)> = None;
    for &drop in &drops {
        for &add in &adds {
            let x = (closed & !drop) | add;
            if x == full {
                continue;
            }
            if let Some(found) = match_split(&adj, n, x, full & !x) {
                if best.as_ref().is_none_or(|(f, _)| found.0 < *f) {
                    let done = found.0 == Family::G0;
                    best = Some(found);
                    if done {
                        return Ok(best);
                    }
                }
            }
        }
    }
    Ok(best)
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// Non-adjacent pairs inside `side`, or `None` if there are more than one.
fn missing_pair(adj: &[u64], side: u64) -> Option<Option<(usize, usize)>> {
    let mut found = None;
    for u in bits(side) {
        for v in bits(side & !adj[u] & !(1u64 << u)).filter(|&v| v > u) {
            if found.is_some() {
                return None;
            }
            found = Some((u, v));
        }
    }
    Some(found)
}

fn match_split(adj: &[u64], n: usize, x: u64, y: u64) -> Option<(Family, Surgery)> {
    let mut cross = Vec::new();
    for u in bits(x) {
        for v in bits(adj[u] & y) {
            if cross.len() == 2 {
                return None;
            }
            cross.push((u, v));
        }
    }
    let mx = missing_pair(adj, x)?;
    let my = missing_pair(adj, y)?;
    let sets = |a: u64, b: u64| (VertexSet::from_mask(n, a), VertexSet::from_mask(n, b));
    let surgery = |xs: u64, ys: u64, v: [Option<usize>; 4]| {
        let (x_set, y_set) = sets(xs, ys);
        Surgery { x_set, y_set, x: v[0], x_prime: v[1], y: v[2], y_prime: v[3] }
    };
    let pair = |a: usize, b: usize| Some((a.min(b), a.max(b)));
    match cross[..] {
        [] if mx.is_none() && my.is_none() => Some((Family::G0, surgery(x, y, [None; 4]))),
        [(a, b)] if mx.is_none() && my.is_none() => Some((Family::G1, surgery(x, y, [Some(a), None, Some(b), None]))),
        [(a, b), (c, d)] if a != c && b != d => (mx == pair(a, c) && my == pair(b, d))
            .then(|| (Family::G2, surgery(x, y, [Some(a), Some(c), Some(b), Some(d)]))),
        [(a, b), (c, d)] if a == c && b != d => {
            (mx.is_none() && my == pair(b, d)).then(|| (Family::G3, surgery(x, y, [Some(a), None, Some(b), Some(d)])))
        }
        [(a, b), (c, d)] if a != c && b == d => {
            (my.is_none() && mx == pair(a, c)).then(|| (Family::G3, surgery(y, x, [Some(b), None, Some(a), Some(c)])))
        }
        _ => None,
    }
}
