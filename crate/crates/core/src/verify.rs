//! Mechanical checks of the `m(G, 2) = 2` theorems over graph corpora.
//!
//! Each graph yields a [`GraphRecord`]; records fold into a
//! [`TheoremVerdict`]. A counterexample is a graph satisfying the
//! hypothesis, failing `m(G, 2) = 2`, and covered by none of the theorem's
//! listed exceptions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::{chvatal_condition, edge_switch, realize, sharpness_sequence, sigma2, weak_chvatal_condition};
use crate::error::{Error, Result};
use crate::families::{classify_family_with, make_complete, make_join, make_union, FamilyKind, XCorpus};
use crate::graph::{canonical_form, write_graph6, DegreeSequence, Graph, CANON_MAX_ORDER};
use crate::percolation::m2_witness_pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `σ₂ >= n` implies `m(G, 2) = 2`.
    Fpr,
    /// `σ₂ >= n - 2` implies `m(G, 2) = 2` outside `G0..G3` and `X`.
    Ore,
    /// The weak Chvátal condition implies `m(G, 2) = 2` unless `G` is
    /// disconnected, has exactly two degree-1 vertices and is not `P2` or
    /// `P3`, or is `C5`.
    Chvatal,
    /// The Chvátal condition implies `m(G, 2) = 2`.
    ChvatalCorollary,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::Fpr, Theorem::Ore, Theorem::Chvatal, Theorem::ChvatalCorollary];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Fpr => "fpr",
            Theorem::Ore => "ore",
            Theorem::Chvatal => "chvatal",
            Theorem::ChvatalCorollary => "chvatal-corollary",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown theorem {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    /// Position in the input stream.
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub hypothesis: bool,
    /// Whether `m(G, 2) = 2`; only evaluated when the hypothesis holds.
    pub conclusion: Option<bool>,
    /// The listed exception covering a failed conclusion.
    pub exception: Option<String>,
    pub counterexample: bool,
}

/// Checks one theorem graph by graph. `corpus` supplies the finite
/// exceptional set for [`Theorem::Ore`].
#[derive(Clone, Copy, Debug)]
pub struct Verifier<'a> {
    pub theorem: Theorem,
    pub corpus: &'a XCorpus,
}

/// Graphs handed to the worker pool at once by [`Verifier::run`].
const CHUNK: usize = 4096;

impl<'a> Verifier<'a> {
    pub fn new(theorem: Theorem) -> Self {
        Verifier { theorem, corpus: XCorpus::builtin() }
    }

    pub fn with_corpus(theorem: Theorem, corpus: &'a XCorpus) -> Self {
        Verifier { theorem, corpus }
    }

    fn hypothesis(&self, g: &Graph) -> Result<bool> {
        let n = g.order();
        if n < 2 {
            return Ok(false);
        }
        Ok(match self.theorem {
            Theorem::Fpr => sigma2(g)?.at_least(n),
            Theorem::Ore => sigma2(g)?.at_least(n - 2),
            Theorem::Chvatal => weak_chvatal_condition(&g.degree_sequence()),
            Theorem::ChvatalCorollary => chvatal_condition(&g.degree_sequence()),
        })
    }

    fn exception(&self, g: &Graph) -> Result<Option<String>> {
        Ok(match self.theorem {
            Theorem::Fpr | Theorem::ChvatalCorollary => None,
            Theorem::Ore => {
                let kind = classify_family_with(g, self.corpus)?.kind;
                (kind != FamilyKind::None).then(|| kind.name().to_string())
            }
            Theorem::Chvatal => chvatal_exception(g).map(str::to_string),
        })
    }

    pub fn check(&self, index: usize, g: &Graph) -> Result<GraphRecord> {
        let hypothesis = self.hypothesis(g)?;
        let conclusion = hypothesis.then(|| m2_witness_pair(g).is_some());
        let exception = match conclusion {
            Some(false) => self.exception(g)?,
            _ => None,
        };
        Ok(GraphRecord {
            index,
            graph6: write_graph6(g)?,
            n: g.order(),
            hypothesis,
            counterexample: conclusion == Some(false) && exception.is_none(),
            conclusion,
            exception,
        })
    }

    /// Checks a stream in input order, handing each record to `emit` as
    /// soon as its chunk is done. With `parallel`, each chunk is checked on
    /// the rayon pool; records are identical either way.
    pub fn run<I, F>(&self, source: I, parallel: bool, mut emit: F) -> Result<TheoremVerdict>
    where
        I: IntoIterator<Item = Result<Graph>>,
        F: FnMut(&GraphRecord) -> Result<()>,
    {
        let mut verdict = TheoremVerdict::new(self.theorem);
        let mut source = source.into_iter().enumerate();
        loop {
            let chunk = source.by_ref().take(CHUNK).map(|(i, g)| g.map(|g| (i, g))).collect::<Result<Vec<_>>>()?;
            if chunk.is_empty() {
                return Ok(verdict);
            }
            let records = if parallel {
                chunk.par_iter().map(|(i, g)| self.check(*i, g)).collect::<Result<Vec<_>>>()?
            } else {
                chunk.iter().map(|(i, g)| self.check(*i, g)).collect::<Result<Vec<_>>>()?
            };
            for r in &records {
                emit(r)?;
                verdict.add(r);
            }
        }
    }

    /// [`Verifier::run`] without a record sink.
    pub fn verdict<I>(&self, source: I) -> Result<TheoremVerdict>
    where
        I: IntoIterator<Item = Result<Graph>>,
    {
        self.run(source, false, |_| Ok(()))
    }
}

/// The exception cases of the weak Chvátal theorem, in the order listed.
pub fn chvatal_exception(g: &Graph) -> Option<&'static str> {
    let n = g.order();
    let degrees = g.degree_sequence();
    if !g.is_connected() {
        Some("disconnected")
    } else if degrees.count_of(1) == 2 && !is_p2_or_p3(g) {
        Some("two-leaves")
    } else if n == 5 && g.size() == 5 && degrees.count_of(2) == 5 {
        Some("C5")
    } else {
        None
    }
}

fn is_p2_or_p3(g: &Graph) -> bool {
    match g.order() {
        2 => g.size() == 1,
        3 => g.size() == 2,
        _ => false,
    }
}

pub fn verify_fpr_theorem<I: IntoIterator<Item = Result<Graph>>>(corpus: I) -> Result<TheoremVerdict> {
    Verifier::new(Theorem::Fpr).verdict(corpus)
}

pub fn verify_ore_theorem<I: IntoIterator<Item = Result<Graph>>>(corpus: I) -> Result<TheoremVerdict> {
    Verifier::new(Theorem::Ore).verdict(corpus)
}

pub fn verify_chvatal_theorem<I: IntoIterator<Item = Result<Graph>>>(corpus: I) -> Result<TheoremVerdict> {
    Verifier::new(Theorem::Chvatal).verdict(corpus)
}

pub fn verify_chvatal_corollary<I: IntoIterator<Item = Result<Graph>>>(corpus: I) -> Result<TheoremVerdict> {
    Verifier::new(Theorem::ChvatalCorollary).verdict(corpus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    pub graphs: usize,
    pub hypothesis_holds: usize,
    pub conclusion_fails: usize,
    /// Failed conclusions per exception label.
    pub exceptions: BTreeMap<String, usize>,
    /// Sorted by input position.
    pub counterexamples: Vec<GraphRecord>,
}

impl TheoremVerdict {
    pub fn new(theorem: Theorem) -> Self {
        TheoremVerdict {
            theorem,
            graphs: 0,
            hypothesis_holds: 0,
            conclusion_fails: 0,
            exceptions: BTreeMap::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn add(&mut self, r: &GraphRecord) {
        self.graphs += 1;
        self.hypothesis_holds += usize::from(r.hypothesis);
        self.conclusion_fails += usize::from(r.conclusion == Some(false));
        if let Some(e) = &r.exception {
            *self.exceptions.entry(e.clone()).or_default() += 1;
        }
        if r.counterexample {
            let at = self.counterexamples.partition_point(|c| c.index < r.index);
            self.counterexamples.insert(at, r.clone());
        }
    }

    /// Combines verdicts over disjoint parts of one corpus.
    pub fn merge(mut self, other: TheoremVerdict) -> Result<TheoremVerdict> {
        if self.theorem != other.theorem {
            return Err(Error::InvalidParameters(format!(
                "cannot merge verdicts for {} and {}",
                self.theorem, other.theorem
            )));
        }
        self.graphs += other.graphs;
        self.hypothesis_holds += other.hypothesis_holds;
        self.conclusion_fails += other.conclusion_fails;
        for (k, v) in other.exceptions {
            *self.exceptions.entry(k).or_default() += v;
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort_by_key(|c| c.index);
        Ok(self)
    }

    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Outcome of checking that a sharpness sequence defeats monotone
/// best-possibility of the (weak) Chvátal condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    pub n: usize,
    pub i: usize,
    pub weak: bool,
    pub sequence: DegreeSequence,
    pub chvatal: bool,
    pub weak_chvatal: bool,
    /// Entries equal to `n - 1`.
    pub universal: usize,
    /// Realizations checked: Havel–Hakimi plus the edge-switch samples.
    pub realizations: usize,
    pub realizations_m2: usize,
    /// Whether every realization is isomorphic to `K_i ∨ (K̄_i ∪ K_{n-2i})`;
    /// checked for the non-weak sequence when `n` is small enough.
    pub all_join: Option<bool>,
    pub confirmed: bool,
}

/// Default number of edge-switch samples.
pub const MONOTONE_SAMPLES: usize = 100;

pub fn verify_monotone_counterexample(n: usize, i: usize, weak: bool) -> Result<MonotoneReport> {
    verify_monotone_with(n, i, weak, MONOTONE_SAMPLES, 0x5eed)
}

pub fn verify_monotone_with(n: usize, i: usize, weak: bool, samples: usize, seed: u64) -> Result<MonotoneReport> {
    let sequence = sharpness_sequence(n, i, weak)?;
    let base = realize(&sequence)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut realizations = vec![base.clone()];
    realizations.extend((0..samples).map(|_| edge_switch(&base, &mut rng)));
    debug_assert!(realizations.iter().all(|g| g.degree_sequence() == sequence));

    let realizations_m2 = realizations.iter().filter(|g| m2_witness_pair(g).is_some()).count();
    let all_join = if !weak && n <= CANON_MAX_ORDER {
        let join = make_join(&make_complete(i)?, &make_union(&Graph::empty(i), &make_complete(n - 2 * i)?));
        let target = canonical_form(&join)?;
        let mut same = true;
        for g in &realizations {
            same &= canonical_form(g)? == target;
        }
        Some(same)
    } else {
        None
    };
    let chvatal = chvatal_condition(&sequence);
    let weak_chvatal = weak_chvatal_condition(&sequence);
    let universal = sequence.count_of(n - 1);
    let conditions_ok = if weak { !weak_chvatal } else { !chvatal && weak_chvatal };
    Ok(MonotoneReport {
        n,
        i,
        weak,
        confirmed: conditions_ok && universal >= 2 && realizations_m2 == realizations.len() && all_join != Some(false),
        sequence,
        chvatal,
        weak_chvatal,
        universal,
        realizations: realizations.len(),
        realizations_m2,
        all_join,
    })
}
