use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::classify::recognize_surgery;
use crate::conditions::sigma2;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, enumerate_graphs, parse_graph6, CanonicalForm, Graph, CANON_MAX_ORDER};
use crate::percolation::m2_witness_pair;

/// Bumped whenever the filter in [`in_x_filter`] changes meaning.
pub const FILTER_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("../../data/x_corpus.g6");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XEntry {
    pub order: usize,
    pub graph6: String,
    pub canonical: CanonicalForm,
}

/// The finite exceptional set, sorted by `(order, graph6)`, one entry per
/// isomorphism class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct XCorpus {
    pub entries: Vec<XEntry>,
    /// `#` comment lines, without the marker.
    pub provenance: Vec<String>,
}

impl XCorpus {
    /// The corpus shipped with the crate.
    pub fn builtin() -> &'static XCorpus {
        static CORPUS: OnceLock<XCorpus> = OnceLock::new();
        CORPUS.get_or_init(|| XCorpus::parse(BUILTIN).expect("built-in corpus is well formed"))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut provenance = Vec::new();
        let mut forms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if let Some(note) = line.strip_prefix('#') {
                provenance.push(note.trim().to_string());
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let g = parse_graph6(line).map_err(|source| Error::Corpus { line: i + 1, source })?;
            forms.push(canonical_form(&g)?);
        }
        let mut corpus = XCorpus::from_forms(forms);
        corpus.provenance = provenance;
        Ok(corpus)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        XCorpus::parse(&std::fs::read_to_string(path)?)
    }

    /// Deduplicated corpus sorted by order, then canonical graph6.
    pub fn from_forms(forms: impl IntoIterator<Item = CanonicalForm>) -> Self {
        let mut by_key = BTreeMap::new();
        for c in forms {
            let order = c.to_graph().order();
            by_key.insert((order, c.as_str().to_string()), c);
        }
        let entries =
            by_key.into_iter().map(|((order, graph6), canonical)| XEntry { order, graph6, canonical }).collect();
        XCorpus { entries, provenance: Vec::new() }
    }

    /// The file format read by [`XCorpus::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for note in &self.provenance {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        for e in &self.entries {
            out.push_str(&e.graph6);
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.order).collect()
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.entries.iter().map(|e| e.canonical.to_graph())
    }

    /// Index of the entry isomorphic to `g`.
    pub fn find(&self, g: &Graph) -> Result<Option<usize>> {
        if g.order() == 0 || g.order() > CANON_MAX_ORDER || !self.entries.iter().any(|e| e.order == g.order()) {
            return Ok(None);
        }
        let c = canonical_form(g)?;
        Ok(self.entries.iter().position(|e| e.canonical == c))
    }
}

/// `σ₂(G) >= n - 2`, `m(G, 2) > 2`, and `G` outside the two-clique
/// families. Graphs on fewer than two vertices never pass.
pub fn in_x_filter(g: &Graph) -> Result<bool> {
    let n = g.order();
    if n < 2 || !sigma2(g)?.at_least(n - 2) {
        return Ok(false);
    }
    Ok(m2_witness_pair(g).is_none() && recognize_surgery(g)?.is_none())
}

/// Runs the filter over every graph on `1..=max_n` vertices from the
/// built-in enumerator.
pub fn derive_x(max_n: usize) -> Result<XCorpus> {
    let mut all = Vec::new();
    for n in 1..=max_n {
        let found = derive_x_from(enumerate_graphs(n)?.map(Ok))?;
        all.extend(found.entries.into_iter().map(|e| e.canonical));
    }
    let mut corpus = XCorpus::from_forms(all);
    corpus.provenance = vec![
        format!("derived from all graphs on 1..={max_n} vertices"),
        format!("filter v{FILTER_VERSION}: sigma2 >= n-2, m(G,2) > 2, not in G0..G3"),
    ];
    Ok(corpus)
}

/// Runs the filter over an arbitrary graph stream, such as a graph6 corpus
/// from an external generator. Graphs are filtered in parallel and
/// deduplicated by canonical form.
pub fn derive_x_from<I>(source: I) -> Result<XCorpus>
where
    I: Iterator<Item = Result<Graph>> + Send,
{
    let forms = source
        .par_bridge()
        .map(|g| -> Result<Option<CanonicalForm>> {
            let g = g?;
            Ok(if in_x_filter(&g)? { Some(canonical_form(&g)?) } else { None })
        })
        .filter_map(Result::transpose)
        .collect::<Result<Vec<_>>>()?;
    Ok(XCorpus::from_forms(forms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::construct::make_cycle;
    use crate::graph::write_graph6;

    #[test]
    fn c5_is_the_only_small_member() {
        let x = derive_x(5).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.entries[0].canonical, canonical_form(&make_cycle(5).unwrap()).unwrap());
    }

    #[test]
    fn builtin_lines_round_trip() {
        for e in &XCorpus::builtin().entries {
            assert_eq!(write_graph6(&parse_graph6(&e.graph6).unwrap()).unwrap(), e.graph6);
        }
    }

    #[test]
    fn text_round_trip() {
        let c = XCorpus::builtin();
        assert_eq!(&XCorpus::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = XCorpus::parse("# note\nDhc\nD!!\n").unwrap_err();
        assert!(matches!(err, Error::Corpus { line: 3, .. }));
    }

    #[test]
    fn duplicates_collapse() {
        let c = XCorpus::parse("Dhc\nDUW\n").unwrap();
        assert_eq!(c.len(), 1);
    }
}
