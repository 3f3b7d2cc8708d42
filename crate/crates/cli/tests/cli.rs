use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn perckit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_perckit"))
        .args(args)
        .env_remove("PERCKIT_X_CORPUS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn graph6_file(lines: &[&str]) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f
}

const C5: &str = "DLo";

#[test]
fn msolve_on_c5() {
    let out = perckit(&["msolve", "--r", "2"], &format!("{C5}\n"));
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["m"], 3);
    assert_eq!(recs[0]["exact"], true);
    assert_eq!(recs[0]["n"], 5);
}

#[test]
fn msolve_cycles_from_file() {
    let c6 = perckit::graph::write_graph6(&perckit::families::make_cycle(6).unwrap()).unwrap();
    let c7 = perckit::graph::write_graph6(&perckit::families::make_cycle(7).unwrap()).unwrap();
    let f = graph6_file(&[&c6, "", "# comment", &c7]);
    let out = perckit(&["msolve", "--input", f.path().to_str().unwrap()], "");
    let ms: Vec<_> = records(&out).iter().map(|r| r["m"].as_u64().unwrap()).collect();
    assert_eq!(ms, [3, 4]);
}

#[test]
fn verify_ore_through_8_passes() {
    let out = perckit(&["verify", "--theorem", "ore", "--enumerate", "8", "--format", "summary"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("PASS ore: 13598 graphs"), "{text}");
    assert!(text.contains("0 counterexamples"));
}

#[test]
fn verify_reports_counterexamples_with_status_1() {
    // with an empty X corpus, C5 is no longer excepted
    let empty = graph6_file(&["# nothing"]);
    let out = Command::new(env!("CARGO_BIN_EXE_perckit"))
        .args(["verify", "--theorem", "ore", "--enumerate", "5", "--format", "summary"])
        .env("PERCKIT_X_CORPUS", empty.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("FAIL ore"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("counterexample") && l.ends_with(C5)), "{text}");
}

#[test]
fn conditions_on_a_sequence() {
    let out = perckit(&["conditions", "--degrees", "2,2,2,2,2"], "");
    assert_eq!(out.status.code(), Some(0));
    let rec = &records(&out)[0];
    assert_eq!(rec["chvatal"], false);
    assert_eq!(rec["weak_chvatal"], true);
    assert_eq!(rec["graphic"], true);
}

#[test]
fn conditions_on_a_graph() {
    let out = perckit(&["conditions", "--r", "3"], &format!("{C5}\n"));
    let rec = &records(&out)[0];
    assert_eq!(rec["sigma2"], 4);
    assert_eq!(rec["ore_n_minus_2"], true);
    assert_eq!(rec["ore_n"], false);
    assert_eq!(rec["gunderson"]["holds"], false);
}

#[test]
fn classify_and_percolate() {
    let out = perckit(&["classify"], &format!("{C5}\nC~\n"));
    let recs = records(&out);
    assert_eq!(recs[0]["kind"], "X");
    assert_eq!(recs[1]["kind"], "None");
    let out = perckit(&["percolate", "--seed", "0,2"], &format!("{C5}\n"));
    let rec = &records(&out)[0];
    assert_eq!(rec["seed"], serde_json::json!([0, 2]));
    assert_eq!(rec["percolates"], false);
    assert_eq!(rec["closure_size"], 3);
}

#[test]
fn realize_and_enumerate() {
    let out = perckit(&["realize"], "2,2,2\n1,1,1\n");
    let recs = records(&out);
    assert_eq!(recs[0]["graph6"], "Bw");
    assert_eq!(recs[1]["graphic"], false);
    let out = perckit(&["enumerate", "--enumerate", "5", "--min-n", "5"], "");
    assert_eq!(stdout(&out).lines().count(), 34);
}

#[test]
fn derive_x_regenerates_the_bundled_corpus() {
    let out = perckit(&["derive-x", "--max-n", "8"], "");
    let text = stdout(&out);
    let graphs: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(graphs.len(), 8);
    let bundled = perckit::families::XCorpus::builtin();
    let bundled: Vec<&str> = bundled.entries.iter().map(|e| e.graph6.as_str()).collect();
    assert_eq!(graphs, bundled);
    // a corpus file as input gives the same set back
    let f = graph6_file(&graphs);
    let again = perckit(&["derive-x", "--input", f.path().to_str().unwrap()], "");
    let regraphs: Vec<String> = stdout(&again).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect();
    assert_eq!(regraphs, graphs);
}

#[test]
fn output_is_deterministic_and_parallel_invariant() {
    for cmd in ["msolve", "classify", "conditions"] {
        let args = [cmd, "--min-n", "2", "--enumerate", "6"];
        let serial = perckit(&args, "");
        assert_eq!(serial.status.code(), Some(0), "{cmd}");
        assert_eq!(perckit(&args, "").stdout, serial.stdout, "{cmd}");
        let mut par = args.to_vec();
        par.extend(["--parallel", "4"]);
        assert_eq!(perckit(&par, "").stdout, serial.stdout, "{cmd}");
    }
    let args = ["verify", "--theorem", "chvatal", "--enumerate", "7", "--format", "tsv"];
    let serial = perckit(&args, "");
    let mut par = args.to_vec();
    par.extend(["--parallel", "3"]);
    assert_eq!(perckit(&par, "").stdout, serial.stdout);
}

#[test]
fn tsv_mirrors_jsonl_fields() {
    let input = format!("{C5}\nC~\n");
    let json = records(&perckit(&["msolve"], &input));
    let tsv = stdout(&perckit(&["msolve", "--format", "tsv"], &input));
    let mut lines = tsv.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let keys: Vec<&String> = json[0].as_object().unwrap().keys().collect();
    assert_eq!(header, keys);
    for (row, rec) in lines.zip(&json) {
        let cells: Vec<&str> = row.split('\t').collect();
        assert_eq!(cells[header.iter().position(|&h| h == "m").unwrap()], rec["m"].to_string());
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(perckit(&["msolve"], "not-graph6!\n").status.code(), Some(2));
    assert_eq!(perckit(&["msolve", "--r", "0"], "").status.code(), Some(2));
    assert_eq!(perckit(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(perckit(&["verify", "--theorem", "riemann"], "").status.code(), Some(2));
    assert_eq!(perckit(&["msolve", "--input", "x.g6", "--enumerate", "3"], "").status.code(), Some(2));
    assert_eq!(perckit(&["percolate", "--seed", "9"], &format!("{C5}\n")).status.code(), Some(2));
    assert_eq!(perckit(&["conditions", "--degrees", "5,1"], "").status.code(), Some(2));
}

#[test]
fn monotone_sharpness() {
    for (i, weak) in [("2", false), ("3", false), ("2", true), ("3", true)] {
        let mut args = vec!["verify", "--theorem", "monotone", "--n", "12", "--i", i];
        if weak {
            args.push("--weak");
        }
        let out = perckit(&args, "");
        assert_eq!(out.status.code(), Some(0));
        let rec = &records(&out)[0];
        assert_eq!(rec["confirmed"], true);
        assert_eq!(rec["chvatal"], false);
        assert_eq!(rec["weak_chvatal"], !weak);
    }
}
