use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use mcgraph::canon::certificate;
use mcgraph::classify::RemovableClass;
use mcgraph::codec::{emit_graph, Format};
use mcgraph::enumerate::{for_each_balanced_bipartite, for_each_connected_graph, to_multigraph, GENERATION_BOUND};
use mcgraph::families::{cycle, gen_family, Family};
use mcgraph::matching::{for_each_perfect_matching, is_factor_critical, ENUMERATION_BOUND};
use mcgraph::props::{list_checks as registry, resolve_checks, run_check_with, CheckResult, GraphFacts, Verdict};
use mcgraph::selftest::run_all;
use mcgraph::tightcut::{is_brace, tight_cut_decomposition, LeafKind};
use mcgraph::{are_isomorphic, EdgeId, Multigraph};
use serde::Serialize;
use serde_json::{json, Value};

use crate::runner::{family_stream, read_stream, Record, Records, Runner};
use crate::InputArgs;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Fail = 1,
    Usage = 2,
}

pub type Outcome = Result<Status, String>;

fn io_err(e: io::Error) -> String {
    e.to_string()
}

/// A closed downstream pipe ends output quietly.
fn finish(r: io::Result<()>) -> Result<(), String> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r.map_err(io_err),
    }
}

fn stdout() -> BufWriter<io::StdoutLock<'static>> {
    BufWriter::with_capacity(1 << 16, io::stdout().lock())
}

fn records(a: &InputArgs) -> Result<Records, String> {
    match a.family {
        Some(f) => Ok(family_stream(f, crate::params(a.n, a.n_range))),
        None => read_stream(a.input.as_deref(), a.format).map_err(|e| {
            format!("cannot read {}: {e}", a.input.as_deref().unwrap_or("stdin"))
        }),
    }
}

fn write_json(out: &mut impl Write, v: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    graph_index: usize,
    source: &'a str,
    error: &'a str,
}

fn error_line(out: &mut impl Write, r: &Record, msg: &str) -> io::Result<()> {
    write_json(
        out,
        &ErrorLine {
            graph_index: r.index,
            source: &r.source,
            error: msg,
        },
    )
}

// -------------------------------------------------------------------- gen

pub fn gen(family: Family, params: Vec<Option<usize>>, format: Format) -> Outcome {
    let mut out = stdout();
    for n in params {
        let g = gen_family(family, n).map_err(|e| e.to_string())?;
        let bytes = emit_graph(&g, format).map_err(|e| e.to_string())?;
        let r = out.write_all(&bytes).and_then(|_| match format {
            Format::EdgeList => Ok(()),
            _ => out.write_all(b"\n"),
        });
        finish(r)?;
    }
    finish(out.flush())?;
    Ok(Status::Ok)
}

// -------------------------------------------------------------------- enumerate

pub fn enumerate(orders: &[usize], bipartite: bool, format: Format) -> Outcome {
    if let Some(&n) = orders.iter().find(|&&n| n > GENERATION_BOUND) {
        return Err(format!("enumeration is limited to {GENERATION_BOUND} vertices, got {n}"));
    }
    let mut out = stdout();
    let mut status: io::Result<()> = Ok(());
    let mut emit = |n: usize, adj: &[u64]| {
        if status.is_err() {
            return;
        }
        let g = to_multigraph(n, adj);
        let bytes = emit_graph(&g, format).expect("simple graphs encode in every format");
        status = out.write_all(&bytes).and_then(|_| match format {
            Format::EdgeList => Ok(()),
            _ => out.write_all(b"\n"),
        });
    };
    for &n in orders {
        if bipartite {
            if n % 2 == 0 && n > 0 {
                for_each_balanced_bipartite(n / 2, &mut emit);
            }
        } else {
            for_each_connected_graph(n, &mut emit);
        }
    }
    finish(status)?;
    finish(out.flush())?;
    Ok(Status::Ok)
}

// -------------------------------------------------------------------- classify

#[derive(Serialize)]
struct ClassSummary {
    removable_edges: usize,
    classes: usize,
    singletons: usize,
    doubletons: usize,
}

#[derive(Serialize)]
struct ClassifyLine<'a> {
    graph_index: usize,
    source: &'a str,
    vertices: usize,
    edges: usize,
    simple: bool,
    connected: bool,
    bipartite: bool,
    matching_covered: bool,
    minimal: bool,
    bicritical: bool,
    factor_critical: bool,
    brick: bool,
    brace: bool,
    min_degree: usize,
    max_degree: usize,
    two_lines: usize,
    three_lines: usize,
    cubic: usize,
    removable: Option<ClassSummary>,
}

fn classify_one<'a>(r: &'a Record, g: &Multigraph) -> ClassifyLine<'a> {
    let f = GraphFacts::new(g);
    let mc = f.is_mc();
    let removable = mc.then(|| {
        let classes = f.removable_classes();
        let doubletons = classes
            .iter()
            .filter(|c| matches!(c, RemovableClass::Doubleton { .. }))
            .count();
        ClassSummary {
            removable_edges: f.removable().len(),
            classes: classes.len(),
            singletons: classes.len() - doubletons,
            doubletons,
        }
    });
    ClassifyLine {
        graph_index: r.index,
        source: &r.source,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        simple: g.is_simple(),
        connected: g.is_connected(),
        bipartite: f.is_bipartite(),
        matching_covered: mc,
        minimal: f.is_minimal_mc(),
        bicritical: f.is_bicritical(),
        factor_critical: is_factor_critical(g),
        brick: f.is_brick(),
        brace: is_brace(g),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        two_lines: g.k_lines(2).len(),
        three_lines: g.k_lines(3).len(),
        cubic: g.count_degree(3),
        removable,
    }
}

/// Runs `line` on each parsed graph and reports parse failures in place.
/// Returns whether any record failed to parse.
fn stream_lines<W>(a: &InputArgs, line: W) -> Result<bool, String>
where
    W: Fn(&Record, &Multigraph) -> Value + Sync,
{
    let runner = Runner::new(a.jobs)?;
    let mut out = stdout();
    let mut parse_errors = false;
    let r = runner.run(
        records(a)?,
        |r| r.graph.as_ref().ok().map(|g| line(r, g)),
        |r, v| match (v, &r.graph) {
            (Some(v), _) => write_json(&mut out, &v),
            (None, Err(msg)) => {
                parse_errors = true;
                error_line(&mut out, r, msg)
            }
            (None, Ok(_)) => unreachable!(),
        },
    );
    finish(r.and_then(|_| out.flush()))?;
    Ok(parse_errors)
}

fn parse_status(parse_errors: bool) -> Status {
    if parse_errors {
        Status::Usage
    } else {
        Status::Ok
    }
}

pub fn classify(a: &InputArgs) -> Outcome {
    let errors = stream_lines(a, |r, g| json!(classify_one(r, g)))?;
    Ok(parse_status(errors))
}

// -------------------------------------------------------------------- check

pub struct CheckOptions {
    pub input: InputArgs,
    pub checks: Vec<String>,
    pub seed: u64,
    pub summary: bool,
    pub fails_only: bool,
    pub counterexample_out: Option<String>,
    pub timing: bool,
}

#[derive(Serialize)]
struct ReportLine<'a> {
    graph_index: usize,
    source: &'a str,
    check_id: &'a str,
    verdict: Verdict,
    witness: &'a Value,
    #[serde(skip_serializing_if = "str::is_empty")]
    note: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
    not_applicable: usize,
    ceiling_changes: usize,
}

pub fn check(o: &CheckOptions) -> Outcome {
    let requested: Vec<&str> = o.checks.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    let ids = resolve_checks(&requested).map_err(|e| e.to_string())?;
    let runner = Runner::new(o.input.jobs)?;
    let records = records(&o.input)?;
    let mut artifact = match &o.counterexample_out {
        Some(p) => Some(BufWriter::new(
            File::create(p).map_err(|e| format!("cannot create {p}: {e}"))?,
        )),
        None => None,
    };
    let mut out = stdout();
    let mut tallies: Vec<Tally> = ids.iter().map(|_| Tally::default()).collect();
    let (mut graphs, mut parse_errors) = (0usize, 0usize);
    let timing = o.timing;

    let work = |r: &Record| -> Option<Vec<(CheckResult, f64)>> {
        let g = r.graph.as_ref().ok()?;
        let facts = GraphFacts::new(g);
        let results = ids
            .iter()
            .map(|id| {
                let start = Instant::now();
                let res = run_check_with(id, &facts).expect("ids were resolved against the registry");
                (res, start.elapsed().as_secs_f64() * 1e3)
            })
            .collect();
        Some(results)
    };
    let sink = |r: &Record, results: Option<Vec<(CheckResult, f64)>>| -> io::Result<()> {
        let Some(results) = results else {
            parse_errors += 1;
            return error_line(&mut out, r, r.graph.as_ref().err().map_or("", |s| s.as_str()));
        };
        graphs += 1;
        let mut failed = Vec::new();
        for (t, (res, ms)) in tallies.iter_mut().zip(&results) {
            match res.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Fail => {
                    t.fail += 1;
                    failed.push(res.check_id.as_str());
                }
                Verdict::NotApplicable => t.not_applicable += 1,
            }
            if res.witness.get("ceiling_changes_verdict") == Some(&Value::Bool(true)) {
                t.ceiling_changes += 1;
            }
            if o.fails_only && res.verdict != Verdict::Fail {
                continue;
            }
            write_json(
                &mut out,
                &ReportLine {
                    graph_index: r.index,
                    source: &r.source,
                    check_id: &res.check_id,
                    verdict: res.verdict,
                    witness: &res.witness,
                    note: &res.note,
                    elapsed_ms: timing.then_some(*ms),
                },
            )?;
        }
        if let (Some(file), false, Ok(g)) = (artifact.as_mut(), failed.is_empty(), &r.graph) {
            writeln!(file, "# graph {} from {} fails {}", r.index, r.source, failed.join(","))?;
            file.write_all(&emit_graph(g, Format::EdgeList).expect("edge lists encode every graph"))?;
        }
        Ok(())
    };
    let r = runner.run(records, work, sink);
    finish(r.and_then(|_| out.flush()))?;
    if let Some(mut f) = artifact {
        f.flush().map_err(io_err)?;
    }

    if o.summary {
        print_summary(&ids, &tallies, graphs, parse_errors, o.seed);
    }
    Ok(if tallies.iter().any(|t| t.fail > 0) {
        Status::Fail
    } else {
        parse_status(parse_errors > 0)
    })
}

fn print_summary(ids: &[&str], tallies: &[Tally], graphs: usize, parse_errors: usize, seed: u64) {
    let mut e = io::stderr().lock();
    let _ = writeln!(e, "graphs {graphs}  parse_errors {parse_errors}  seed {seed}");
    let _ = writeln!(e, "{:<22} {:>10} {:>10} {:>15}", "check", "pass", "fail", "not_applicable");
    for (id, t) in ids.iter().zip(tallies) {
        let _ = writeln!(e, "{id:<22} {:>10} {:>10} {:>15}", t.pass, t.fail, t.not_applicable);
    }
    for (id, t) in ids.iter().zip(tallies) {
        if t.pass + t.fail == 0 {
            let _ = writeln!(e, "vacuous {id}: hypothesis never held");
        }
        if t.ceiling_changes > 0 {
            let _ = writeln!(e, "ceiling {id}: rounding up would change {} verdicts", t.ceiling_changes);
        }
    }
}

// -------------------------------------------------------------------- decompose

const LABEL_BOUND: usize = 8;

fn named_graphs() -> Vec<(&'static str, Multigraph)> {
    let mut out = vec![("c4", cycle(4).expect("C4"))];
    for f in [Family::K2, Family::K4, Family::Prism, Family::K33, Family::R8] {
        out.push((f.name(), gen_family(f, None).expect("fixed family")));
    }
    out.push(("w5", gen_family(Family::Wheel, Some(5)).expect("wheel")));
    out.push(("w7", gen_family(Family::Wheel, Some(7)).expect("wheel")));
    out
}

/// A name for a small graph's underlying simple graph: a family name when
/// it matches one, otherwise its canonical certificate.
fn simple_label(g: &Multigraph, named: &[(&'static str, Multigraph)]) -> Option<String> {
    if g.vertex_count() > LABEL_BOUND {
        return None;
    }
    let s = g.underlying_simple();
    for (name, h) in named {
        if are_isomorphic(&s, h).unwrap_or(false) {
            return Some(name.to_string());
        }
    }
    certificate(&s).ok().map(|c| format!("cert:{c:032x}"))
}

fn kind_name(k: LeafKind) -> &'static str {
    match k {
        LeafKind::Brick => "brick",
        LeafKind::Brace => "brace",
    }
}

fn decompose_one(r: &Record, g: &Multigraph, seed: u64, named: &[(&'static str, Multigraph)]) -> Value {
    let head = json!({"graph_index": r.index, "source": r.source});
    let f = GraphFacts::new(g);
    if !f.is_mc() {
        return merge(head, json!({"verdict": "not_applicable", "note": "not matching covered"}));
    }
    match tight_cut_decomposition(g, seed) {
        Err(e) => merge(head, json!({"error": e.to_string()})),
        Ok(d) => {
            let leaves: Vec<Value> = d
                .leaves
                .iter()
                .map(|l| {
                    json!({
                        "kind": kind_name(l.kind),
                        "vertices": l.graph.vertex_count(),
                        "edges": l.graph.edge_count(),
                        "label": simple_label(&l.graph, named),
                    })
                })
                .collect();
            merge(
                head,
                json!({
                    "bricks": d.brick_count(),
                    "braces": d.brace_count(),
                    "cuts": d.tree.len(),
                    "leaves": leaves,
                }),
            )
        }
    }
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

pub fn decompose(a: &InputArgs, seed: u64) -> Outcome {
    let named = named_graphs();
    let errors = stream_lines(a, |r, g| decompose_one(r, g, seed, &named))?;
    Ok(parse_status(errors))
}

// -------------------------------------------------------------------- matchings

fn matchings_one(r: &Record, g: &Multigraph, limit: usize) -> Value {
    let mut count: u64 = 0;
    let mut listed: Vec<Vec<EdgeId>> = Vec::new();
    let res = for_each_perfect_matching(g, ENUMERATION_BOUND, |m| {
        count += 1;
        if listed.len() < limit {
            listed.push(m.to_vec());
        }
    });
    match res {
        Err(e) => json!({"graph_index": r.index, "source": r.source, "error": e.to_string()}),
        Ok(()) => json!({
            "graph_index": r.index,
            "source": r.source,
            "perfect_matchings": count,
            "listed": listed,
            "truncated": count > listed.len() as u64,
        }),
    }
}

pub fn matchings(a: &InputArgs, limit: usize) -> Outcome {
    let errors = stream_lines(a, |r, g| matchings_one(r, g, limit))?;
    Ok(parse_status(errors))
}

// -------------------------------------------------------------------- selftest

pub fn selftest(max_n: usize, brace_max_n: usize, summary: bool) -> Outcome {
    if max_n > GENERATION_BOUND || brace_max_n > GENERATION_BOUND {
        return Err(format!("selftest is limited to {GENERATION_BOUND} vertices"));
    }
    let reports = run_all(max_n, brace_max_n);
    let mut out = stdout();
    for r in &reports {
        finish(write_json(&mut out, r))?;
        if summary {
            let verdict = if r.ok() { "ok" } else { "DISAGREE" };
            eprintln!(
                "{:<24} {:>8} graphs {:>10} comparisons {:>4} disagreements  {verdict}",
                r.suite, r.graphs, r.comparisons, r.disagreements
            );
        }
    }
    finish(out.flush())?;
    Ok(if reports.iter().all(|r| r.ok()) {
        Status::Ok
    } else {
        Status::Fail
    })
}

pub fn list_checks() -> Outcome {
    let mut out = stdout();
    for c in registry() {
        finish(write_json(&mut out, &c))?;
    }
    finish(out.flush())?;
    Ok(Status::Ok)
}
