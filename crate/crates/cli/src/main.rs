//! `perckit`: batch front end for percolation, degree conditions, exceptional
//! families and the theorem checks.
//!
//! Graph input is graph6, one per line, from `--input` (a file, or `-` for
//! stdin; stdin is the default) or from `--enumerate N` (every graph on
//! `--min-n..=N` vertices). Records go to stdout in input order.
//!
//! Exit status: 0 on success, 1 when `verify` finds a counterexample, 2 on
//! usage, parse or input errors.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use perckit::conditions::{realize, ConditionReport, SequenceReport};
use perckit::families::{classify_family_with, derive_x, derive_x_from, FamilyLabel, XCorpus};
use perckit::graph::{enumerate_graphs, read_graph6, write_graph6, DegreeSequence, ENUM_MAX_ORDER};
use perckit::percolation::{greedy_upper_bound, min_contagious, percolate, EXACT_MAX_ORDER};
use perckit::verify::{verify_monotone_with, GraphRecord, Theorem, TheoremVerdict, Verifier, MONOTONE_SAMPLES};
use perckit::{Graph, VertexSet};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

const CORPUS_ENV: &str = "PERCKIT_X_CORPUS";

/// Graphs handed to the worker pool at once.
const CHUNK: usize = 4096;

#[derive(Parser)]
#[command(name = "perckit", version, about = "Bootstrap percolation and m(G,2) = 2 degree conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the process from a seed set and report every round.
    Percolate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated seed vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<usize>,
    },
    /// Minimum contagious set size; exact up to 40 vertices, greedy above.
    Msolve {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the degree conditions on graphs or on degree sequences.
    Conditions {
        #[command(flatten)]
        common: Common,
        /// Evaluate one sequence (comma-separated) instead of graphs.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["input", "enumerate"])]
        degrees: Option<Vec<usize>>,
    },
    /// Place graphs in G0..G3, X or none.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Every graph on a given number of vertices, one per isomorphism class.
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
    /// Re-derive the exceptional set X.
    DeriveX {
        #[command(flatten)]
        common: Common,
        /// Search every graph on 1..=N vertices.
        #[arg(long, conflicts_with_all = ["input", "enumerate"])]
        max_n: Option<usize>,
    },
    /// Realize degree sequences (Havel–Hakimi).
    Realize {
        #[command(flatten)]
        common: Common,
        /// One sequence, comma-separated; otherwise one per input line.
        #[arg(long, value_delimiter = ',', conflicts_with = "enumerate")]
        degrees: Option<Vec<usize>>,
    },
    /// Check a theorem over a corpus, or the sharpness construction.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theorem: TheoremArg,
        /// Order for `monotone`.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Parameter for `monotone`.
        #[arg(long, default_value_t = 2)]
        i: usize,
        /// Use the weak variant for `monotone`.
        #[arg(long)]
        weak: bool,
        /// Edge-switch samples for `monotone`.
        #[arg(long, default_value_t = MONOTONE_SAMPLES)]
        samples: usize,
        /// RNG seed for `monotone`.
        #[arg(long, default_value_t = 0x5eed)]
        rng_seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Percolation threshold.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    r: u64,
    /// graph6 file, or `-` for stdin.
    #[arg(long, conflicts_with = "enumerate")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads; 1 runs on the calling thread.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Use every graph on min-n..=N vertices as input.
    #[arg(long)]
    enumerate: Option<usize>,
    /// Smallest order for `--enumerate`.
    #[arg(long, default_value_t = 1, requires = "enumerate")]
    min_n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Tsv,
    Summary,
    /// Plain graph6 lines (`enumerate`, `derive-x`).
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Fpr,
    Ore,
    Chvatal,
    ChvatalCorollary,
    Monotone,
}

impl TheoremArg {
    fn theorem(self) -> Option<Theorem> {
        match self {
            TheoremArg::Fpr => Some(Theorem::Fpr),
            TheoremArg::Ore => Some(Theorem::Ore),
            TheoremArg::Chvatal => Some(Theorem::Chvatal),
            TheoremArg::ChvatalCorollary => Some(Theorem::ChvatalCorollary),
            TheoremArg::Monotone => None,
        }
    }
}

type GraphSource = Box<dyn Iterator<Item = perckit::Result<Graph>> + Send>;

impl Common {
    fn r(&self) -> usize {
        self.r as usize
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn lines(&self) -> Result<Box<dyn BufRead + Send>> {
        Ok(match &self.input {
            Some(p) if p.as_os_str() != "-" => {
                Box::new(BufReader::new(File::open(p).with_context(|| format!("cannot open {}", p.display()))?))
            }
            _ => Box::new(BufReader::new(io::stdin())),
        })
    }

    fn graphs(&self) -> Result<GraphSource> {
        if let Some(max) = self.enumerate {
            if max > ENUM_MAX_ORDER {
                bail!("--enumerate supports at most {ENUM_MAX_ORDER} vertices");
            }
            let orders = self.min_n.max(1)..=max;
            return Ok(Box::new(orders.flat_map(|n| enumerate_graphs(n).expect("order checked").map(Ok))));
        }
        Ok(Box::new(read_graph6(self.lines()?)))
    }

    fn pool(&self) -> Result<Option<rayon::ThreadPool>> {
        if self.parallel <= 1 {
            return Ok(None);
        }
        Ok(Some(rayon::ThreadPoolBuilder::new().num_threads(self.parallel).build()?))
    }
}

/// Writes records in one of the output formats. TSV columns follow the
/// JSON field order; nested values are written as compact JSON.
struct Sink {
    format: Format,
    out: io::StdoutLock<'static>,
    header: bool,
    records: usize,
    tally: BTreeMap<String, usize>,
}

impl Sink {
    fn new(format: Format) -> Self {
        Sink { format, out: io::stdout().lock(), header: false, records: 0, tally: BTreeMap::new() }
    }

    fn emit<T: Serialize>(&mut self, record: &T) -> Result<()> {
        self.records += 1;
        match self.format {
            Format::Jsonl => writeln!(self.out, "{}", serde_json::to_string(record)?)?,
            Format::Tsv => {
                let Value::Object(map) = serde_json::to_value(record)? else {
                    bail!("record is not an object");
                };
                if !self.header {
                    writeln!(self.out, "{}", map.keys().cloned().collect::<Vec<_>>().join("\t"))?;
                    self.header = true;
                }
                let cells: Vec<String> = map.values().map(tsv_cell).collect();
                writeln!(self.out, "{}", cells.join("\t"))?;
            }
            Format::Summary => {}
            Format::Graph6 => {
                let value = serde_json::to_value(record)?;
                let Some(line) = value.get("graph6").and_then(Value::as_str) else {
                    bail!("graph6 output is not available for this command");
                };
                writeln!(self.out, "{line}")?;
            }
        }
        Ok(())
    }

    fn count(&mut self, key: impl Into<String>) {
        *self.tally.entry(key.into()).or_default() += 1;
    }

    fn summary(&mut self, what: &str) -> Result<()> {
        if self.format == Format::Summary {
            let tally: Vec<String> = self.tally.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(self.out, "{} {what}; {}", self.records, tally.join(" "))?;
        }
        Ok(())
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace(['\t', '\n'], " "),
        other => other.to_string(),
    }
}

/// Applies `f` to every graph, emitting results in input order. With a
/// pool, each chunk is processed in parallel and then emitted in order.
fn for_each_graph<T, F, E>(common: &Common, source: GraphSource, f: F, mut emit: E) -> Result<()>
where
    T: Send,
    F: Fn(usize, &Graph) -> Result<T> + Sync,
    E: FnMut(T) -> Result<()>,
{
    let pool = common.pool()?;
    let mut source = source.enumerate();
    loop {
        let chunk = source
            .by_ref()
            .take(CHUNK)
            .map(|(i, g)| g.map(|g| (i, g)).with_context(|| format!("input graph {i}")))
            .collect::<Result<Vec<_>>>()?;
        if chunk.is_empty() {
            return Ok(());
        }
        let run = |(i, g): &(usize, Graph)| f(*i, g).with_context(|| format!("input graph {i}"));
        let results = match &pool {
            Some(p) => p.install(|| chunk.par_iter().map(run).collect::<Result<Vec<_>>>())?,
            None => chunk.iter().map(run).collect::<Result<Vec<_>>>()?,
        };
        for r in results {
            emit(r)?;
        }
    }
}

fn load_corpus() -> Result<XCorpus> {
    match std::env::var_os(CORPUS_ENV) {
        Some(path) if !path.is_empty() => {
            XCorpus::load(&path).with_context(|| format!("cannot load {CORPUS_ENV}={}", PathBuf::from(&path).display()))
        }
        _ => Ok(XCorpus::builtin().clone()),
    }
}

fn sequence(degrees: Vec<usize>) -> Result<DegreeSequence> {
    Ok(DegreeSequence::new(degrees)?)
}

fn parse_sequence(line: &str) -> Result<DegreeSequence> {
    line.parse::<DegreeSequence>().map_err(|e| anyhow::anyhow!("{e}")).with_context(|| format!("bad sequence {line:?}"))
}

#[derive(Serialize)]
struct PercolateRecord {
    index: usize,
    graph6: String,
    r: usize,
    seed: VertexSet,
    rounds: Vec<VertexSet>,
    activation_rounds: usize,
    closure_size: usize,
    percolates: bool,
}

#[derive(Serialize)]
struct MsolveRecord {
    index: usize,
    graph6: String,
    n: usize,
    r: usize,
    m: usize,
    witness: VertexSet,
    exact: bool,
}

#[derive(Serialize)]
struct ConditionsRecord {
    index: usize,
    graph6: String,
    #[serde(flatten)]
    report: ConditionReport,
}

#[derive(Serialize)]
struct ClassifyRecord {
    index: usize,
    graph6: String,
    n: usize,
    #[serde(flatten)]
    label: FamilyLabel,
}

#[derive(Serialize)]
struct GraphLine {
    index: usize,
    n: usize,
    graph6: String,
}

#[derive(Serialize)]
struct RealizeRecord {
    index: usize,
    degrees: DegreeSequence,
    graphic: bool,
    graph6: Option<String>,
}

#[derive(Serialize)]
struct VerdictRecord<'a> {
    status: &'static str,
    #[serde(flatten)]
    verdict: &'a TheoremVerdict,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Percolate { common, seed } => {
            let mut sink = Sink::new(common.format(Format::Jsonl));
            let r = common.r();
            let work = |index: usize, g: &Graph| -> Result<PercolateRecord> {
                let n = g.order();
                if let Some(&v) = seed.iter().find(|&&v| v >= n) {
                    bail!("seed vertex {v} is out of range for {n} vertices");
                }
                let trace = percolate(g, &VertexSet::from_vertices(n, seed.iter().copied()), r)?;
                Ok(PercolateRecord {
                    index,
                    graph6: write_graph6(g)?,
                    r,
                    seed: trace.seed().clone(),
                    activation_rounds: trace.activation_rounds(),
                    closure_size: trace.closure().len(),
                    percolates: trace.percolates(),
                    rounds: trace.rounds,
                })
            };
            for_each_graph(&common, common.graphs()?, work, |rec| {
                sink.count(if rec.percolates { "percolates" } else { "stalls" });
                sink.emit(&rec)
            })?;
            sink.summary("graphs")?;
        }
        Command::Msolve { common } => {
            let mut sink = Sink::new(common.format(Format::Jsonl));
            let r = common.r();
            let work = |index: usize, g: &Graph| -> Result<MsolveRecord> {
                let (m, witness, exact) = if g.order() <= EXACT_MAX_ORDER {
                    let res = min_contagious(g, r)?;
                    (res.m, res.witness, res.exact)
                } else {
                    let w = greedy_upper_bound(g, r)?;
                    (w.len(), w, false)
                };
                Ok(MsolveRecord { index, graph6: write_graph6(g)?, n: g.order(), r, m, witness, exact })
            };
            for_each_graph(&common, common.graphs()?, work, |rec| {
                sink.count(format!("m{}{}", if rec.exact { "=" } else { "<=" }, rec.m));
                sink.emit(&rec)
            })?;
            sink.summary("graphs")?;
        }
        Command::Conditions { common, degrees } => {
            let mut sink = Sink::new(common.format(Format::Jsonl));
            let tally = |sink: &mut Sink, chvatal: bool, weak: bool| {
                if chvatal {
                    sink.count("chvatal");
                }
                if weak {
                    sink.count("weak_chvatal");
                }
            };
            if let Some(d) = degrees {
                let rep = SequenceReport::new(&sequence(d)?);
                tally(&mut sink, rep.chvatal, rep.weak_chvatal);
                sink.emit(&rep)?;
            } else {
                let r = common.r();
                let work = |index: usize, g: &Graph| -> Result<ConditionsRecord> {
                    Ok(ConditionsRecord { index, graph6: write_graph6(g)?, report: ConditionReport::new(g, r)? })
                };
                for_each_graph(&common, common.graphs()?, work, |rec| {
                    tally(&mut sink, rec.report.chvatal, rec.report.weak_chvatal);
                    if rec.report.ore_n_minus_2 {
                        sink.count("ore_n_minus_2");
                    }
                    sink.emit(&rec)
                })?;
            }
            sink.summary("inputs")?;
        }
        Command::Classify { common } => {
            let corpus = load_corpus()?;
            let mut sink = Sink::new(common.format(Format::Jsonl));
            let work = |index: usize, g: &Graph| -> Result<ClassifyRecord> {
                let label = classify_family_with(g, &corpus)?;
                Ok(ClassifyRecord { index, graph6: write_graph6(g)?, n: g.order(), label })
            };
            for_each_graph(&common, common.graphs()?, work, |rec| {
                sink.count(rec.label.kind.name());
                sink.emit(&rec)
            })?;
            sink.summary("graphs")?;
        }
        Command::Enumerate { common } => {
            if common.enumerate.is_none() {
                bail!("enumerate needs --enumerate N");
            }
            let mut sink = Sink::new(common.format(Format::Graph6));
            let work = |index: usize, g: &Graph| -> Result<GraphLine> {
                Ok(GraphLine { index, n: g.order(), graph6: write_graph6(g)? })
            };
            for_each_graph(&common, common.graphs()?, work, |rec| {
                sink.count(format!("n{}", rec.n));
                sink.emit(&rec)
            })?;
            sink.summary("graphs")?;
        }
        Command::DeriveX { common, max_n } => {
            let mut corpus = match max_n {
                Some(n) => {
                    let mut c = derive_x(n)?;
                    c.provenance.push(format!("regenerate with: perckit derive-x --max-n {n}"));
                    c
                }
                None => {
                    let c = install(&common, || derive_x_from(common.graphs()?).map_err(Into::into))?;
                    let source = match (&common.input, common.enumerate) {
                        (_, Some(n)) => format!("derived from all graphs on {}..={n} vertices", common.min_n),
                        (Some(p), _) if p.as_os_str() != "-" => format!("derived from {}", p.display()),
                        _ => "derived from standard input".to_string(),
                    };
                    XCorpus { provenance: vec![source], ..c }
                }
            };
            corpus
                .provenance
                .insert(0, "exceptional graphs for m(G,2) = 2 under sigma2 >= n-2, canonical graph6".into());
            let format = common.format(Format::Graph6);
            if format == Format::Graph6 {
                io::stdout().lock().write_all(corpus.to_text().as_bytes())?;
            } else {
                let mut sink = Sink::new(format);
                for (index, e) in corpus.entries.iter().enumerate() {
                    sink.count(format!("n{}", e.order));
                    sink.emit(&GraphLine { index, n: e.order, graph6: e.graph6.clone() })?;
                }
                sink.summary("graphs")?;
            }
        }
        Command::Realize { common, degrees } => {
            let mut sink = Sink::new(common.format(Format::Jsonl));
            let sequences: Vec<DegreeSequence> = match degrees {
                Some(d) => vec![sequence(d)?],
                None => common
                    .lines()?
                    .lines()
                    .map(|l| Ok(l?))
                    .filter(|l: &Result<String>| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
                    .map(|l| parse_sequence(l?.trim()))
                    .collect::<Result<_>>()?,
            };
            for (index, d) in sequences.into_iter().enumerate() {
                let graph6 = realize(&d).ok().map(|g| write_graph6(&g)).transpose()?;
                sink.count(if graph6.is_some() { "graphic" } else { "not_graphic" });
                sink.emit(&RealizeRecord { index, graphic: graph6.is_some(), degrees: d, graph6 })?;
            }
            sink.summary("sequences")?;
        }
        Command::Verify { common, theorem, n, i, weak, samples, rng_seed } => {
            let Some(theorem) = theorem.theorem() else {
                let report = verify_monotone_with(n, i, weak, samples, rng_seed)?;
                let format = common.format(Format::Jsonl);
                if format == Format::Summary {
                    println!(
                        "{} monotone n={n} i={i} weak={weak}: sequence {}, chvatal={}, weak_chvatal={}, m=2 on {}/{} realizations",
                        if report.confirmed { "PASS" } else { "FAIL" },
                        report.sequence,
                        report.chvatal,
                        report.weak_chvatal,
                        report.realizations_m2,
                        report.realizations
                    );
                } else {
                    Sink::new(format).emit(&report)?;
                }
                return Ok(if report.confirmed { ExitCode::SUCCESS } else { ExitCode::from(1) });
            };
            let corpus = load_corpus()?;
            let verifier = Verifier::with_corpus(theorem, &corpus);
            let format = common.format(Format::Jsonl);
            let mut sink = Sink::new(format);
            let mut verdict = TheoremVerdict::new(theorem);
            for_each_graph(
                &common,
                common.graphs()?,
                |index, g| Ok(verifier.check(index, g)?),
                |rec: GraphRecord| {
                    verdict.add(&rec);
                    sink.emit(&rec)
                },
            )?;
            let status = if verdict.pass() { "PASS" } else { "FAIL" };
            if format == Format::Summary {
                let exceptions: Vec<String> = verdict.exceptions.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut line = format!(
                    "{status} {theorem}: {} graphs, {} satisfy the hypothesis, {} with m(G,2) > 2 [{}], {} counterexamples",
                    verdict.graphs,
                    verdict.hypothesis_holds,
                    verdict.conclusion_fails,
                    exceptions.join(" "),
                    verdict.counterexamples.len()
                );
                for c in &verdict.counterexamples {
                    line += &format!("\ncounterexample {} {}", c.index, c.graph6);
                }
                writeln!(sink.out, "{line}")?;
            } else if format == Format::Jsonl {
                sink.emit(&VerdictRecord { status, verdict: &verdict })?;
            }
            return Ok(if verdict.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Runs `f` inside the requested worker pool, if any.
fn install<T: Send>(common: &Common, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match common.pool()? {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            // library errors already spell out their source
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.ends_with(&cause) {
                    msg += if msg.is_empty() { "" } else { ": " };
                    msg += &cause;
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
