//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use mcgraph::classify::{is_matching_covered, is_minimal_mc, removable_classes, removable_edges};
use mcgraph::codec::{emit_graph, parse_graph, Format, GraphReader};
use mcgraph::enumerate::{for_each_balanced_bipartite, for_each_connected_graph, to_multigraph};
use mcgraph::families::{gen_family, Family};
use mcgraph::matching::{enumerate_perfect_matchings_bounded, has_perfect_matching_without};
use mcgraph::tightcut::{is_brick, is_near_bipartite, tight_cut_decomposition};
use mcgraph::{build_graph, EdgeId, Multigraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_mcgraph");

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn mcgraph(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run mcgraph")
}

/// `mcgraph <producer> | mcgraph <consumer>`.
fn pipe(producer: &[&str], consumer: &[&str]) -> Output {
    let mut p = Command::new(BIN)
        .args(producer)
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn producer");
    let c = Command::new(BIN)
        .args(consumer)
        .stdin(Stdio::from(p.stdout.take().unwrap()))
        .output()
        .expect("run consumer");
    assert!(p.wait().expect("producer").success());
    c
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("report line is JSON"))
        .collect()
}

fn graphs_of(out: &Output, format: Format) -> Vec<Multigraph> {
    GraphReader::new(&out.stdout[..], format)
        .map(|item| item.graph.expect("CLI output parses"))
        .collect()
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    pass: usize,
    fail: usize,
    not_applicable: usize,
}

/// Graph count and per-check rows of the `--summary` table.
fn summary(out: &Output) -> (usize, BTreeMap<String, Tally>) {
    let text = String::from_utf8_lossy(&out.stderr);
    let mut graphs = 0;
    let mut rows = BTreeMap::new();
    for line in text.lines() {
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.first() == Some(&"graphs") {
            graphs = tok[1].parse().unwrap();
        } else if tok.len() == 4 && tok[0] != "check" {
            if let (Ok(pass), Ok(fail), Ok(not_applicable)) = (tok[1].parse(), tok[2].parse(), tok[3].parse()) {
                rows.insert(tok[0].to_string(), Tally { pass, fail, not_applicable });
            }
        }
    }
    (graphs, rows)
}

// ------------------------------------------------------------------ oracles

fn perfect_matchings(g: &Multigraph) -> Vec<Vec<EdgeId>> {
    enumerate_perfect_matchings_bounded(g, 24)
        .unwrap()
        .into_iter()
        .map(|m| m.edges)
        .collect()
}

fn mc_by_enumeration(g: &Multigraph) -> bool {
    let pms = perfect_matchings(g);
    g.vertex_count() >= 2
        && g.is_connected()
        && !pms.is_empty()
        && g.edge_ids().all(|e| pms.iter().any(|m| m.contains(&e)))
}

fn removable_by_enumeration(g: &Multigraph) -> Vec<EdgeId> {
    g.edge_ids()
        .filter(|&e| mc_by_enumeration(&g.delete_edge(e).unwrap()))
        .collect()
}

/// Removable edges plus removable doubletons: pairs of nonremovable edges
/// whose joint deletion leaves a matching covered graph.
fn class_count_by_enumeration(g: &Multigraph) -> usize {
    let removable = removable_by_enumeration(g);
    let rest: Vec<EdgeId> = g.edge_ids().filter(|e| !removable.contains(e)).collect();
    let mut doubletons = 0;
    for (i, &e) in rest.iter().enumerate() {
        for &f in &rest[i + 1..] {
            if mc_by_enumeration(&g.delete_edges(&[e, f]).unwrap()) {
                doubletons += 1;
            }
        }
    }
    removable.len() + doubletons
}

fn connected_without(g: &Multigraph, drop: VertexSet) -> bool {
    let keep = drop.complement(g.vertex_count());
    let Some(start) = keep.iter().next() else { return true };
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in g.incident(v) {
            let u = e.other(v);
            if keep.contains(u) && !seen.contains(u) {
                seen = seen.with(u);
                stack.push(u);
            }
        }
    }
    seen == keep
}

fn brick_by_definition(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    let pairs = || (0..n).flat_map(|u| (u + 1..n).map(move |v| VertexSet::from_slice(&[u, v])));
    let three_connected = n >= 4 && pairs().all(|p| connected_without(g, p));
    let bicritical = pairs().all(|p| {
        let (h, _) = g.remove_vertices(p);
        !perfect_matchings(&h).is_empty()
    });
    three_connected && bicritical
}

/// Bipartite, `G - V(e) - V(f)` has a perfect matching for every pair of
/// disjoint edges, and at least one perfect matching exists.
fn two_extendable(g: &Multigraph) -> bool {
    let es = g.edges();
    if !has_perfect_matching_without(g, VertexSet::EMPTY) {
        return false;
    }
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            let ends = a.ends().union(b.ends());
            if ends.len() == 4 && !has_perfect_matching_without(g, ends) {
                return false;
            }
        }
    }
    true
}

fn minimal_brace_by_definition(g: &Multigraph) -> bool {
    g.vertex_count() >= 6
        && g.is_bipartite()
        && g.is_connected()
        && two_extendable(g)
        && g.edge_ids().all(|e| {
            let h = g.delete_edge(e).unwrap();
            !(h.is_connected() && two_extendable(&h))
        })
}

fn underlying_is_k4(g: &Multigraph) -> bool {
    let s = g.underlying_simple();
    s.vertex_count() == 4 && s.edge_count() == 6
}

// ------------------------------------------------------------------ criteria

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn families() -> Verdict {
    let gn_out = mcgraph(&["gen", "--family", "gn", "--n-range", "3..8"]);
    let hn_out = mcgraph(&["gen", "--family", "hn", "--n-range", "3..8"]);
    let gns = graphs_of(&gn_out, Format::EdgeList);
    let hns = graphs_of(&hn_out, Format::EdgeList);
    if gns.len() != 6 || hns.len() != 6 {
        return verdict(false, "gen produced the wrong number of graphs");
    }
    let classified = json_lines(&mcgraph(&["classify", "--family", "gn", "--n-range", "3..8"]));
    for (i, (g, h)) in gns.iter().zip(&hns).enumerate() {
        let n = i + 3;
        let lines: Vec<(usize, usize)> = g
            .k_lines(3)
            .into_iter()
            .map(|e| {
                let e = g.edge(e).unwrap();
                (e.u, e.v)
            })
            .collect();
        let cubic: Vec<usize> = (0..2 * n).filter(|&v| g.degree(v) == 3).collect();
        let g_ok = g.vertex_count() == 2 * n
            && is_minimal_mc(g)
            && removable_by_enumeration(g).is_empty()
            && mc_by_enumeration(g)
            && is_matching_covered(g)
            && lines == vec![(0, n), (n - 1, 2 * n - 1)]
            && cubic == vec![0, n - 1, n, 2 * n - 1]
            && classified[i]["minimal"] == true
            && classified[i]["three_lines"] == 2
            && classified[i]["cubic"] == 4;
        if !g_ok {
            return verdict(false, format!("G_{n} misses a stated property"));
        }
        let h_ok = h.vertex_count() == 2 * n + 2
            && is_minimal_mc(h)
            && removable_by_enumeration(h).is_empty()
            && mc_by_enumeration(h)
            && is_matching_covered(h)
            && h.count_degree(2) == 1
            && h.k_lines(2).is_empty();
        if !h_ok {
            return verdict(false, format!("H_{n} misses a stated property"));
        }
    }
    verdict(true, "G_n and H_n, n = 3..8: minimal, 3-lines u1v1 and unvn, 4 cubic; one degree-2 vertex, no 2-lines")
}

fn decomposition() -> Verdict {
    let seeds = ["0", "1", "7", "42", "1234", "99991"];
    let mut multisets: Option<Vec<String>> = None;
    for seed in seeds {
        let lines = json_lines(&mcgraph(&["decompose", "--family", "gn", "--n-range", "3..8", "--seed", seed]));
        if lines.len() != 6 {
            return verdict(false, "decompose produced the wrong number of lines");
        }
        let mut signature = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            let n = i + 3;
            let leaves = line["leaves"].as_array().cloned().unwrap_or_default();
            let all_k4 = leaves.iter().all(|l| l["kind"] == "brick" && l["label"] == "k4");
            if line["bricks"] != n - 1 || line["braces"] != 0 || leaves.len() != n - 1 || !all_k4 {
                return verdict(false, format!("G_{n} with seed {seed}: {line}"));
            }
            let mut leaf_keys: Vec<String> = leaves.iter().map(|l| l.to_string()).collect();
            leaf_keys.sort();
            signature.push(leaf_keys.join(";"));

            let g = gen_family(Family::Gn, Some(n)).unwrap();
            let d = tight_cut_decomposition(&g, seed.parse().unwrap()).unwrap();
            if d.brick_count() != n - 1 || !d.leaves.iter().all(|l| underlying_is_k4(&l.graph)) {
                return verdict(false, format!("library decomposition of G_{n} with seed {seed}"));
            }
        }
        match &multisets {
            None => multisets = Some(signature),
            Some(first) if *first != signature => {
                return verdict(false, format!("leaf multiset changes with seed {seed}"));
            }
            _ => {}
        }
    }
    verdict(true, format!("G_n, n = 3..8: n-1 K4 bricks, identical across {} seeds", seeds.len()))
}

const CONNECTED_SWEEP: &[&str] = &[
    "main-3lines",
    "two-or-three",
    "delta-2-or-3",
    "bicrit-nore-cubic",
    "bicrit-nore-3lines",
    "tight-contract-mc",
    "barrier-indep",
    "maxbarrier-fc",
    "twosep-bicritical",
    "twosep-degree",
    "twosep-brick-shores",
];
const BRICK_SWEEP: &[&str] = &["brick-classes", "nearbi-nonadj"];
const BIPARTITE_SWEEP: &[&str] = &["bip-2lines", "nonre-forest", "nonre-two-per-side"];

/// Connected graphs on 1..=10 vertices.
const CONNECTED_COUNTS: [usize; 10] = [1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571];

struct Sweep {
    graphs: usize,
    rows: BTreeMap<String, Tally>,
    reported_lines: usize,
    exit: Option<i32>,
}

fn sweep(enumerate: &[&str], checks: &[&str], artifact: &str) -> Sweep {
    let list = checks.join(",");
    let artifact = scratch(artifact);
    let out = pipe(
        enumerate,
        &[
            "check",
            "--check",
            &list,
            "--fails-only",
            "--summary",
            "--counterexample-out",
            artifact.to_str().unwrap(),
        ],
    );
    let (graphs, rows) = summary(&out);
    Sweep {
        graphs,
        rows,
        reported_lines: out.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count(),
        exit: out.status.code(),
    }
}

fn sweep_problems(s: &Sweep, checks: &[&str], expected_graphs: Option<usize>) -> Vec<String> {
    let mut problems = Vec::new();
    if s.exit != Some(0) || s.reported_lines != 0 {
        problems.push(format!("exit {:?} with {} failure lines", s.exit, s.reported_lines));
    }
    if let Some(want) = expected_graphs {
        if s.graphs != want {
            problems.push(format!("corpus has {} graphs, expected {want}", s.graphs));
        }
    }
    for id in checks {
        match s.rows.get(*id) {
            None => problems.push(format!("{id} missing from summary")),
            Some(t) if t.pass + t.fail + t.not_applicable != s.graphs => {
                problems.push(format!("{id} tallies do not add up to the corpus size"))
            }
            Some(t) if t.fail > 0 => problems.push(format!("{id} failed {} times", t.fail)),
            Some(t) if t.pass == 0 => problems.push(format!("{id} never applied")),
            _ => {}
        }
    }
    problems
}

fn applied(s: &Sweep, checks: &[&str]) -> String {
    checks
        .iter()
        .map(|id| format!("{id}={}", s.rows.get(*id).map_or(0, |t| t.pass)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn sweeps() -> Verdict {
    let mut problems = Vec::new();

    let connected = sweep(&["enumerate", "--n-range", "1..10"], CONNECTED_SWEEP, "sweep-connected.elist");
    problems.extend(sweep_problems(&connected, CONNECTED_SWEEP, Some(CONNECTED_COUNTS.iter().sum())));

    let bricks = sweep(&["enumerate", "--n-range", "1..9"], BRICK_SWEEP, "sweep-bricks.elist");
    problems.extend(sweep_problems(&bricks, BRICK_SWEEP, Some(CONNECTED_COUNTS[..9].iter().sum())));

    let bipartite = sweep(
        &["enumerate", "--bipartite", "--n-range", "2..12"],
        BIPARTITE_SWEEP,
        "sweep-bipartite.elist",
    );
    problems.extend(sweep_problems(&bipartite, BIPARTITE_SWEEP, None));

    // independent count of the hypothesis of two-or-three on up to 8 vertices
    let small = sweep(&["enumerate", "--n-range", "1..8"], &["two-or-three"], "sweep-small.elist");
    let mut minimal = 0;
    for n in 4..=8 {
        for_each_connected_graph(n, |n, adj| {
            let g = to_multigraph(n, adj);
            if mc_by_enumeration(&g) && removable_by_enumeration(&g).is_empty() {
                minimal += 1;
            }
        });
    }
    let applied_small = small.rows.get("two-or-three").map_or(0, |t| t.pass + t.fail);
    if applied_small != minimal {
        problems.push(format!("two-or-three applied to {applied_small} graphs on <= 8 vertices, oracle finds {minimal} minimal ones"));
    }

    let detail = format!(
        "connected<=10: {} graphs [{}]; bricks<=9: {} graphs [{}]; bipartite<=12: {} graphs [{}]; minimal<=8 oracle {minimal}",
        connected.graphs,
        applied(&connected, CONNECTED_SWEEP),
        bricks.graphs,
        applied(&bricks, BRICK_SWEEP),
        bipartite.graphs,
        applied(&bipartite, BIPARTITE_SWEEP),
    );
    if problems.is_empty() {
        verdict(true, detail)
    } else {
        verdict(false, format!("{}; {detail}", problems.join("; ")))
    }
}

fn selftest() -> Verdict {
    let out = mcgraph(&["selftest", "--max-n", "8", "--brace-max-n", "10"]);
    let suites = json_lines(&out);
    let names: Vec<&str> = suites.iter().filter_map(|s| s["suite"].as_str()).collect();
    let expected = [
        "blossom-vs-enumeration",
        "tight-cut-vs-definition",
        "tutte-berge",
        "brace-vs-2-extendable",
    ];
    let all_agree = suites
        .iter()
        .all(|s| s["disagreements"] == 0 && s["comparisons"].as_u64().unwrap_or(0) > 0);
    let detail: Vec<String> = suites
        .iter()
        .map(|s| format!("{} {}/{}", s["suite"].as_str().unwrap_or("?"), s["disagreements"], s["comparisons"]))
        .collect();
    verdict(
        out.status.success() && names == expected && all_agree,
        format!("disagreements/comparisons: {}", detail.join(", ")),
    )
}

fn spot_checks() -> Verdict {
    let k4 = gen_family(Family::K4, None).unwrap();
    let prism = gen_family(Family::Prism, None).unwrap();
    let r8 = gen_family(Family::R8, None).unwrap();

    let k4_classes = class_count_by_enumeration(&k4);
    let k4_ok = k4_classes == 3
        && removable_classes(&k4).unwrap().len() == 3
        && removable_by_enumeration(&k4).is_empty()
        && removable_edges(&k4).unwrap().is_empty();

    let prism_classes = class_count_by_enumeration(&prism);
    let prism_ok = prism_classes >= 3
        && removable_classes(&prism).unwrap().len() == prism_classes
        && removable_by_enumeration(&prism).is_empty()
        && removable_edges(&prism).unwrap().is_empty();

    let r8_removable = removable_by_enumeration(&r8);
    let nonadjacent = r8_removable.iter().enumerate().any(|(i, &a)| {
        r8_removable[i + 1..]
            .iter()
            .any(|&b| !r8.edge(a).unwrap().is_adjacent_to(r8.edge(b).unwrap()))
    });
    let bipartizing = r8.edge_ids().any(|a| {
        r8.edge_ids().any(|b| {
            a < b && {
                let h = r8.delete_edges(&[a, b]).unwrap();
                h.is_bipartite() && mc_by_enumeration(&h)
            }
        })
    });
    let r8_ok = r8.is_simple()
        && brick_by_definition(&r8)
        && is_brick(&r8)
        && bipartizing
        && is_near_bipartite(&r8).unwrap().is_some()
        && !nonadjacent
        && r8_removable == removable_edges(&r8).unwrap();

    verdict(
        k4_ok && prism_ok && r8_ok,
        format!(
            "K4 classes {k4_classes}, prism classes {prism_classes}, R8 removable edges {}",
            r8_removable.len()
        ),
    )
}

fn conjecture_scan() -> Verdict {
    let s = sweep(
        &["enumerate", "--bipartite", "--n-range", "2..12"],
        &["conj-minimal-brace", "lou-cubic"],
        "scan-minimal-braces.elist",
    );
    let mut problems = sweep_problems(&s, &["conj-minimal-brace", "lou-cubic"], None);
    let mut oracle = 0;
    for k in 3..=6 {
        for_each_balanced_bipartite(k, |n, adj| {
            if minimal_brace_by_definition(&to_multigraph(n, adj)) {
                oracle += 1;
            }
        });
    }
    for id in ["conj-minimal-brace", "lou-cubic"] {
        let t = s.rows.get(id).copied().unwrap_or_default();
        if t.pass + t.fail != oracle {
            problems.push(format!("{id} applied to {} graphs, oracle finds {oracle} minimal braces", t.pass + t.fail));
        }
    }
    let detail = format!(
        "{} balanced bipartite graphs, {oracle} minimal braces on 6..12 vertices, {}",
        s.graphs,
        applied(&s, &["conj-minimal-brace", "lou-cubic"])
    );
    if problems.is_empty() {
        verdict(true, detail)
    } else {
        verdict(false, format!("{}; {detail}", problems.join("; ")))
    }
}

fn random_multigraph(rng: &mut ChaCha8Rng, max_n: usize) -> Multigraph {
    let n = rng.random_range(1..=max_n);
    let m = if n < 2 { 0 } else { rng.random_range(0..=3 * n) };
    let pairs: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = (u + rng.random_range(1..n)) % n;
            (u, v)
        })
        .collect();
    build_graph(n, &pairs).unwrap()
}

fn determinism_and_codecs() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut bad = Vec::new();
    for format in [Format::Graph6, Format::Sparse6, Format::EdgeList] {
        let mut ok = 0;
        for _ in 0..1000 {
            let mut g = random_multigraph(&mut rng, 64);
            if format == Format::Graph6 {
                g = g.underlying_simple();
            }
            let bytes = emit_graph(&g, format).unwrap();
            let back = parse_graph(&bytes, format).unwrap();
            if back.same_structure(&g) && emit_graph(&back, format).unwrap() == bytes {
                ok += 1;
            }
        }
        if ok != 1000 {
            bad.push(format!("{format}: {ok}/1000 round trips"));
        }
    }

    let corpus = scratch("determinism.g6");
    let enumerated = mcgraph(&["enumerate", "--n-range", "1..7"]);
    let mut f = std::fs::File::create(&corpus).unwrap();
    f.write_all(&enumerated.stdout).unwrap();
    for family in [Family::Prism, Family::R8, Family::K33] {
        f.write_all(&emit_graph(&gen_family(family, None).unwrap(), Format::Graph6).unwrap())
            .unwrap();
        f.write_all(b"\n").unwrap();
    }
    drop(f);
    let path = corpus.to_str().unwrap();
    let mut compared = 0;
    for cmd in [
        vec!["check", "--check", "all", "--seed", "17"],
        vec!["classify"],
        vec!["decompose", "--seed", "17"],
    ] {
        let run = |jobs: &str| {
            let mut args = cmd.clone();
            args.extend(["--input", path, "--jobs", jobs]);
            mcgraph(&args)
        };
        let (one, eight) = (run("1"), run("8"));
        if one.stdout.is_empty() || one.stdout != eight.stdout || one.status.code() != eight.status.code() {
            bad.push(format!("{} output differs between --jobs 1 and 8", cmd[0]));
        }
        compared += one.stdout.len();
    }
    let detail = format!("3 formats x 1000 round trips; {compared} report bytes identical across --jobs 1/8");
    if bad.is_empty() {
        verdict(true, detail)
    } else {
        verdict(false, bad.join("; "))
    }
}

type Criterion = (&'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 family reproduction", Duration::from_secs(10), families),
        ("2 decomposition reproduction", Duration::from_secs(30), decomposition),
        ("3 exhaustive sweeps", Duration::from_secs(30 * 60), sweeps),
        ("4 oracle equivalence", Duration::from_secs(15 * 60), selftest),
        ("5 exception spot checks", Duration::from_secs(60), spot_checks),
        ("6 conjecture scan", Duration::from_secs(30 * 60), conjecture_scan),
        ("7 determinism and codecs", Duration::from_secs(5 * 60), determinism_and_codecs),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, budget, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.starts_with(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let ok = v.ok && elapsed <= budget;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {name}: {} ({:.1}s, budget {}s) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            v.detail
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
