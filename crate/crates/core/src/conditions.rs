//! Degree conditions and degree sequence tools.

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};

/// `σ₂(G) = min { d(x) + d(y) : xy ∉ E(G), x ≠ y }`, infinite when `G` is
/// complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma2 {
    Finite(usize),
    Infinite,
}

impl Sigma2 {
    /// Whether `σ₂ >= t`; infinity passes every threshold.
    pub fn at_least(self, t: usize) -> bool {
        match self {
            Sigma2::Finite(s) => s >= t,
            Sigma2::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Sigma2::Finite(s) => Some(s),
            Sigma2::Infinite => None,
        }
    }
}

impl fmt::Display for Sigma2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma2::Finite(s) => write!(f, "{s}"),
            Sigma2::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Sigma2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sigma2::Finite(v) => s.serialize_u64(*v as u64),
            Sigma2::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn sigma2(g: &Graph) -> Result<Sigma2> {
    let n = g.order();
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2, what: "sigma2" });
    }
    let deg = g.degrees();
    let mut best = None;
    for u in 0..n {
        for v in g.neighbors(u).complement().iter().filter(|&v| v > u) {
            let s = deg[u] + deg[v];
            if best.is_none_or(|b| s < b) {
                best = Some(s);
            }
        }
    }
    Ok(best.map_or(Sigma2::Infinite, Sigma2::Finite))
}

/// `δ(G) >= (r - 1) n / r`, compared exactly as `r δ >= (r - 1) n`.
pub fn dirac_fpr(g: &Graph, r: usize) -> Result<bool> {
    if r < 2 {
        return Err(Error::UnsupportedThreshold { r, what: "the Dirac-type condition (needs r >= 2)" });
    }
    let n = g.order();
    let delta = if n == 0 { 0 } else { g.min_degree() };
    Ok(r * delta >= (r - 1) * n)
}

/// Minimum degree thresholds for `m(G, r) = r` at `r >= 3`, with the side
/// conditions under which they are known to apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GundersonCheck {
    pub r: usize,
    /// `⌊n/2⌋ + 1` for `r = 3`, `⌊n/2⌋ + r - 3` for `r >= 4`.
    pub bound: usize,
    pub holds: bool,
    /// For `r = 3` the bound is proved for `n >= 30`; `None` for `r >= 4`.
    pub order_at_least_30: Option<bool>,
    /// For `r >= 4` the bound is proved only for unspecified large `n`.
    pub needs_large_order: bool,
}

pub fn gunderson(g: &Graph, r: usize) -> Result<GundersonCheck> {
    if r < 3 {
        return Err(Error::UnsupportedThreshold { r, what: "the Gunderson condition (needs r >= 3)" });
    }
    let n = g.order();
    let bound = if r == 3 { n / 2 + 1 } else { n / 2 + r - 3 };
    let delta = if n == 0 { 0 } else { g.min_degree() };
    Ok(GundersonCheck {
        r,
        bound,
        holds: delta >= bound,
        order_at_least_30: (r == 3).then_some(n >= 30),
        needs_large_order: r >= 4,
    })
}

fn chvatal_with(d: &DegreeSequence, slack: usize) -> bool {
    let n = d.len();
    (1..).take_while(|&i| 2 * i < n).all(|i| d.d(i) > i || d.d(n - i) + slack >= n - i)
}

/// For every integer `1 <= i < n/2`: `d_i >= i + 1` or `d_{n-i} >= n - i`.
pub fn chvatal_condition(d: &DegreeSequence) -> bool {
    chvatal_with(d, 0)
}

/// For every integer `1 <= i < n/2`: `d_i >= i + 1` or `d_{n-i} >= n - i - 1`.
pub fn weak_chvatal_condition(d: &DegreeSequence) -> bool {
    chvatal_with(d, 1)
}

/// Erdős–Gallai test.
pub fn is_graphic(d: &DegreeSequence) -> bool {
    if d.sum() % 2 == 1 {
        return false;
    }
    let desc: Vec<usize> = d.as_slice().iter().rev().copied().collect();
    let n = desc.len();
    let mut head = 0;
    for k in 1..=n {
        head += desc[k - 1];
        let tail: usize = desc[k..].iter().map(|&x| x.min(k)).sum();
        if head > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Havel–Hakimi realization. Vertex `v` receives degree `d.as_slice()[v]`.
/// The vertex of highest residual degree is joined to the next highest
/// ones; ties go to the lower index.
pub fn realize(d: &DegreeSequence) -> Result<Graph> {
    if !is_graphic(d) {
        return Err(Error::NotGraphic);
    }
    let n = d.len();
    let mut residual = d.as_slice().to_vec();
    let mut g = Graph::empty(n);
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&v| residual[v] > 0).collect();
        if order.is_empty() {
            return Ok(g);
        }
        order.sort_by_key(|&v| (std::cmp::Reverse(residual[v]), v));
        let v = order[0];
        let k = residual[v];
        if k > order.len() - 1 {
            return Err(Error::NotGraphic);
        }
        residual[v] = 0;
        for &w in &order[1..=k] {
            g.add_edge(v, w);
            residual[w] -= 1;
        }
    }
}

/// Pointwise `s_i >= t_i` on the sorted sequences.
pub fn majorizes(s: &DegreeSequence, t: &DegreeSequence) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch(s.len(), t.len()));
    }
    Ok(s.as_slice().iter().zip(t.as_slice()).all(|(a, b)| a >= b))
}

/// `(i^i, (n-i-1)^(n-2i), (n-1)^i)`, or with middle entries `n - i - 2` when
/// `weak` (which needs `n` even). Requires `2 <= i < n/2`.
pub fn sharpness_sequence(n: usize, i: usize, weak: bool) -> Result<DegreeSequence> {
    if i < 2 || 2 * i >= n {
        return Err(Error::InvalidParameters(format!("need 2 <= i < n/2, got n = {n}, i = {i}")));
    }
    if weak && n % 2 == 1 {
        return Err(Error::InvalidParameters(format!("the weak sequence needs n even, got {n}")));
    }
    let middle = if weak { n - i - 2 } else { n - i - 1 };
    let mut d = vec![i; i];
    d.extend(std::iter::repeat_n(middle, n - 2 * i));
    d.extend(std::iter::repeat_n(n - 1, i));
    DegreeSequence::new(d)
}

/// Degree-preserving randomization: `10 |E|` attempted double edge swaps
/// `ab, cd -> ac, bd`, each rejected if it would create a loop or a
/// multi-edge.
pub fn edge_switch<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut g = g.clone();
    let mut edges = g.edges();
    if edges.len() < 2 {
        return g;
    }
    for _ in 0..10 * edges.len() {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = if rng.gen_bool(0.5) { edges[j] } else { (edges[j].1, edges[j].0) };
        if a == c || a == d || b == c || b == d || g.has_edge(a, c) || g.has_edge(b, d) {
            continue;
        }
        g.remove_edge(a, b);
        g.remove_edge(c, d);
        g.add_edge(a, c);
        g.add_edge(b, d);
        edges[i] = (a.min(c), a.max(c));
        edges[j] = (b.min(d), b.max(d));
    }
    g
}

/// Every condition evaluated on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub n: usize,
    pub r: usize,
    pub sigma2: Sigma2,
    pub min_degree: usize,
    pub ore_n: bool,
    pub ore_n_minus_2: bool,
    /// Dirac-type condition at threshold `r`; `None` for `r < 2`.
    pub dirac_fpr: Option<bool>,
    /// `None` for `r < 3`.
    pub gunderson: Option<GundersonCheck>,
    pub chvatal: bool,
    pub weak_chvatal: bool,
}

impl ConditionReport {
    pub fn new(g: &Graph, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroThreshold);
        }
        let n = g.order();
        let s2 = sigma2(g)?;
        let d = g.degree_sequence();
        Ok(ConditionReport {
            n,
            r,
            sigma2: s2,
            min_degree: g.min_degree(),
            ore_n: s2.at_least(n),
            ore_n_minus_2: s2.at_least(n - 2),
            dirac_fpr: (r >= 2).then(|| dirac_fpr(g, r)).transpose()?,
            gunderson: (r >= 3).then(|| gunderson(g, r)).transpose()?,
            chvatal: chvatal_condition(&d),
            weak_chvatal: weak_chvatal_condition(&d),
        })
    }
}

/// The conditions that depend on a degree sequence alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub degrees: DegreeSequence,
    pub graphic: bool,
    pub chvatal: bool,
    pub weak_chvatal: bool,
}

impl SequenceReport {
    pub fn new(d: &DegreeSequence) -> Self {
        SequenceReport {
            degrees: d.clone(),
            graphic: is_graphic(d),
            chvatal: chvatal_condition(d),
            weak_chvatal: weak_chvatal_condition(d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    #[test]
    fn sigma2_examples() {
        assert_eq!(sigma2(&cycle(5)).unwrap(), Sigma2::Finite(4));
        assert_eq!(sigma2(&complete(4)).unwrap(), Sigma2::Infinite);
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(sigma2(&p4).unwrap(), Sigma2::Finite(2));
        assert!(sigma2(&Graph::empty(1)).is_err());
        assert_eq!(serde_json::to_string(&Sigma2::Infinite).unwrap(), "\"inf\"");
    }

    #[test]
    fn dirac_examples() {
        assert!(dirac_fpr(&complete(6), 2).unwrap());
        assert!(!dirac_fpr(&cycle(5), 2).unwrap());
        // 3 * 4 >= 2 * 6 holds exactly at the boundary
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert!(!dirac_fpr(&k33, 3).unwrap());
        assert!(dirac_fpr(&k33, 2).unwrap());
        assert!(dirac_fpr(&cycle(5), 1).is_err());
    }

    #[test]
    fn gunderson_examples() {
        // K_{15,15} plus a perfect matching inside each side: δ = 16
        let mut g = Graph::empty(30);
        for a in 0..15 {
            for b in 15..30 {
                g.add_edge(a, b);
            }
        }
        let check = gunderson(&g, 3).unwrap();
        assert_eq!(check.bound, 16);
        assert!(!check.holds);
        for a in (0..30).step_by(2) {
            if a != 14 {
                g.add_edge(a, a + 1);
            }
        }
        g.add_edge(14, 13);
        g.add_edge(15, 16);
        assert_eq!(g.min_degree(), 16);
        let check = gunderson(&g, 3).unwrap();
        assert!(check.holds);
        assert_eq!(check.order_at_least_30, Some(true));
        let r4 = gunderson(&g, 4).unwrap();
        assert_eq!(r4.bound, 16);
        assert!(r4.needs_large_order);
        assert!(gunderson(&g, 2).is_err());
    }

    #[test]
    fn chvatal_examples() {
        assert!(chvatal_condition(&seq(&[3, 3, 3, 3])));
        assert!(!chvatal_condition(&seq(&[2; 5])));
        assert!(!chvatal_condition(&seq(&[1, 1, 2])));
        assert!(weak_chvatal_condition(&seq(&[2; 5])));
        assert!(weak_chvatal_condition(&seq(&[1, 1, 2])));
        assert!(chvatal_condition(&seq(&[0, 0])));
        assert!(chvatal_condition(&seq(&[])));
    }

    #[test]
    fn graphic_examples() {
        assert!(is_graphic(&seq(&[2; 5])));
        assert!(!is_graphic(&seq(&[3, 3, 3, 1])));
        assert!(!is_graphic(&seq(&[1, 1, 1])));
        assert!(is_graphic(&seq(&[3, 3, 3, 8, 8, 8, 8, 8, 8, 11, 11, 11])));
    }

    #[test]
    fn realize_examples() {
        assert!(realize(&seq(&[3; 4])).unwrap().is_complete());
        let c = realize(&seq(&[2; 5])).unwrap();
        assert!(c.is_connected());
        assert_eq!(c.degree_sequence(), seq(&[2; 5]));
        assert!(matches!(realize(&seq(&[3, 3, 3, 1])), Err(Error::NotGraphic)));
    }

    #[test]
    fn majorization() {
        let s = seq(&[3, 3, 3, 3]);
        assert!(majorizes(&s, &s).unwrap());
        assert!(majorizes(&s, &seq(&[2, 2, 2, 2])).unwrap());
        assert!(!majorizes(&seq(&[2, 2, 2, 2]), &s).unwrap());
        assert!(majorizes(&seq(&[1, 0]), &seq(&[0, 1])).unwrap());
        assert!(matches!(majorizes(&s, &seq(&[1, 1])), Err(Error::LengthMismatch(4, 2))));
    }

    #[test]
    fn sharpness_values() {
        let s = sharpness_sequence(12, 3, false).unwrap();
        assert_eq!(s.as_slice(), &[3, 3, 3, 8, 8, 8, 8, 8, 8, 11, 11, 11]);
        assert!(!chvatal_condition(&s));
        assert!(weak_chvatal_condition(&s));
        let w = sharpness_sequence(12, 3, true).unwrap();
        assert_eq!(w.as_slice(), &[3, 3, 3, 7, 7, 7, 7, 7, 7, 11, 11, 11]);
        assert!(!weak_chvatal_condition(&w));
        assert!(sharpness_sequence(12, 1, false).is_err());
        assert!(sharpness_sequence(12, 6, false).is_err());
        assert!(sharpness_sequence(11, 3, true).is_err());
        assert!(sharpness_sequence(11, 3, false).is_ok());
    }

    #[test]
    fn edge_switch_preserves_degrees() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let g = realize(&sharpness_sequence(14, 4, false).unwrap()).unwrap();
        for _ in 0..20 {
            let h = edge_switch(&g, &mut rng);
            assert_eq!(h.degree_sequence(), g.degree_sequence());
            assert_eq!(h.size(), g.size());
        }
        let p = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let moved = (0..20).any(|_| edge_switch(&p, &mut rng) != p);
        assert!(moved);
    }

    #[test]
    fn report_for_c5() {
        let r = ConditionReport::new(&cycle(5), 2).unwrap();
        assert_eq!(r.sigma2, Sigma2::Finite(4));
        assert!(!r.ore_n && r.ore_n_minus_2);
        assert_eq!(r.dirac_fpr, Some(false));
        assert!(r.gunderson.is_none());
        assert!(!r.chvatal && r.weak_chvatal);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["sigma2"], 4);
        assert!(ConditionReport::new(&cycle(5), 0).is_err());
    }
}
