use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The two-clique families. Each starts from `K_a ∪ K_b` on cliques `X`, `Y`
/// and, for `{x, x'} ⊆ X`, `{y, y'} ⊆ Y`, adds `xy`, `x'y'` and deletes
/// `xx'`, `yy'` where present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// No surgery.
    G0,
    /// `x = x'`, `y = y'`: one cross edge.
    G1,
    /// `x ≠ x'`, `y ≠ y'`: two disjoint cross edges, two deleted edges.
    G2,
    /// `x = x'`, `y ≠ y'`: two cross edges at `x`, `yy'` deleted.
    G3,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::G0, Family::G1, Family::G2, Family::G3];

    /// Smallest `(a, b)` for which the surgery is defined.
    pub fn min_sides(self) -> (usize, usize) {
        match self {
            Family::G0 | Family::G1 => (1, 1),
            Family::G2 => (2, 2),
            Family::G3 => (1, 2),
        }
    }

    /// Smallest `(a, b)` leaving a vertex on each side with no cross edge,
    /// the range on which `σ₂ = n - 2` and `m(G, 2) > 2` are guaranteed.
    pub fn min_sides_strict(self) -> (usize, usize) {
        match self {
            Family::G0 => (1, 1),
            Family::G1 => (2, 2),
            Family::G2 => (3, 3),
            Family::G3 => (2, 3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::G0 => "G0",
            Family::G1 => "G1",
            Family::G2 => "G2",
            Family::G3 => "G3",
        }
    }
}

/// Where the surgery sits inside a family member. `x_prime` and `y_prime`
/// are `None` when they coincide with `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Surgery {
    pub x_set: VertexSet,
    pub y_set: VertexSet,
    pub x: Option<usize>,
    pub x_prime: Option<usize>,
    pub y: Option<usize>,
    pub y_prime: Option<usize>,
}

impl Surgery {
    /// Relabeling `old -> new` that carries the member onto the standard one
    /// built by [`family_graph`] for the same family and side sizes.
    pub fn standard_labeling(&self) -> Vec<usize> {
        let n = self.x_set.universe();
        let a = self.x_set.len();
        let mut perm = vec![usize::MAX; n];
        let mut place = |side: &VertexSet, pinned: [(Option<usize>, usize); 2], mut next: usize| {
            for (v, slot) in pinned {
                if let Some(v) = v {
                    perm[v] = slot;
                }
            }
            let taken: Vec<usize> = pinned.iter().filter(|p| p.0.is_some()).map(|p| p.1).collect();
            for v in side.iter().filter(|&v| pinned.iter().all(|p| p.0 != Some(v))) {
                while taken.contains(&next) {
                    next += 1;
                }
                perm[v] = next;
                next += 1;
            }
        };
        place(&self.x_set, [(self.x, a - 1), (self.x_prime, a.wrapping_sub(2))], 0);
        place(&self.y_set, [(self.y, a), (self.y_prime, a + 1)], a);
        perm
    }
}

/// Builds a family member on `X = {0..a}`, `Y = {a..a+b}` with `x = a - 1`,
/// `x' = a - 2`, `y = a`, `y' = a + 1`. Accepts every `(a, b)` on which the
/// surgery is defined; see [`Family::min_sides`].
pub fn family_graph(family: Family, a: usize, b: usize) -> Result<Graph> {
    Ok(family_member(family, a, b)?.0)
}

pub(crate) fn family_member(family: Family, a: usize, b: usize) -> Result<(Graph, Surgery)> {
    let (min_a, min_b) = family.min_sides();
    if a < min_a || b < min_b {
        return Err(Error::InvalidParameters(format!(
            "{} needs a >= {min_a} and b >= {min_b}, got a = {a}, b = {b}",
            family.name()
        )));
    }
    let n = a + b;
    let mut g = make_union(&make_complete(a)?, &make_complete(b)?);
    let (x, x2, y, y2) = (a - 1, a.wrapping_sub(2), a, a + 1);
    let mut s = Surgery {
        x_set: VertexSet::from_vertices(n, 0..a),
        y_set: VertexSet::from_vertices(n, a..n),
        x: None,
        x_prime: None,
        y: None,
        y_prime: None,
    };
    match family {
        Family::G0 => {}
        Family::G1 => {
            g.add_edge(x, y);
            (s.x, s.y) = (Some(x), Some(y));
        }
        Family::G2 => {
            g.add_edge(x, y);
            g.add_edge(x2, y2);
            g.remove_edge(x, x2);
            g.remove_edge(y, y2);
            s = Surgery { x: Some(x), x_prime: Some(x2), y: Some(y), y_prime: Some(y2), ..s };
        }
        Family::G3 => {
            g.add_edge(x, y);
            g.add_edge(x, y2);
            g.remove_edge(y, y2);
            s = Surgery { x: Some(x), y: Some(y), y_prime: Some(y2), ..s };
        }
    }
    Ok((g, s))
}

fn make_strict(family: Family, a: usize, b: usize) -> Result<Graph> {
    let (min_a, min_b) = family.min_sides_strict();
    if a < min_a || b < min_b {
        return Err(Error::InvalidParameters(format!(
            "{} is built for a >= {min_a} and b >= {min_b}, got a = {a}, b = {b}",
            family.name()
        )));
    }
    family_graph(family, a, b)
}

/// `K_a ∪ K_b`, `a, b >= 1`.
pub fn make_g0(a: usize, b: usize) -> Result<Graph> {
    make_strict(Family::G0, a, b)
}

/// `K_a ∪ K_b` plus one cross edge, `a, b >= 2`.
pub fn make_g1(a: usize, b: usize) -> Result<Graph> {
    make_strict(Family::G1, a, b)
}

/// `a, b >= 3`.
pub fn make_g2(a: usize, b: usize) -> Result<Graph> {
    make_strict(Family::G2, a, b)
}

/// `a >= 2`, `b >= 3`.
pub fn make_g3(a: usize, b: usize) -> Result<Graph> {
    make_strict(Family::G3, a, b)
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n, min: 1, what: "complete graph" });
    }
    Ok(Graph::empty(n).complement())
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n, min: 1, what: "path" });
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3, what: "cycle" });
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Disjoint union; `h` is relabeled after `g`.
pub fn make_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let mut u = Graph::empty(off + h.order());
    for (a, b) in g.edges() {
        u.add_edge(a, b);
    }
    for (a, b) in h.edges() {
        u.add_edge(a + off, b + off);
    }
    u
}

/// Disjoint union plus every edge between the two parts.
pub fn make_join(g: &Graph, h: &Graph) -> Graph {
    let mut j = make_union(g, h);
    for a in 0..g.order() {
        for b in 0..h.order() {
            j.add_edge(a, g.order() + b);
        }
    }
    j
}
