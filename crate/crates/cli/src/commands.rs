use std::fs::File;
use std::io::{BufRead, BufReader};

use anyhow::{bail, Context};
use serde::Serialize;
use serde_json::json;

use cospectral::codec::{encode_graph6, stream_graph6};
use cospectral::exact::BlockSimilarity;
use cospectral::graphs::{coalesce, CoalescingSpec, Graph, Partition, RootedGraph};
use cospectral::matrices::{build_matrix, characteristic_polynomial, parse_rational, shifted_block_matrix, MatrixKind};
use cospectral::random::{random_rooted, random_table, seeded};
use cospectral::search::{classify_report, enumerate_connected, mine_cospectral_parallel, CensusReport};
use cospectral::similarity::{find_block_similarity, SimilarityProblem, SimilaritySearch, SimilarityWitness};
use cospectral::verify::{butler_condition, cospectral, verify_coalesced_cospectral, verify_extended_similarity};

use crate::input;
use crate::report::{table, Report};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn one_based_edges(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect()
}

#[derive(Serialize)]
struct GraphInfo {
    graph6: String,
    order: usize,
    edge_count: usize,
    connected: bool,
    degrees: Vec<usize>,
    edges: Vec<[usize; 2]>,
}

fn graph_info(g: &Graph) -> GraphInfo {
    GraphInfo {
        graph6: encode_graph6(g),
        order: g.order(),
        edge_count: g.edge_count(),
        connected: g.is_connected(),
        degrees: g.degrees(),
        edges: one_based_edges(g),
    }
}

fn graph_text(info: &GraphInfo) -> String {
    let edges: Vec<String> = info.edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
    format!(
        "{}: {} vertices, {} edges, connected: {}\n  edges: {}\n  degrees: {:?}\n",
        info.graph6,
        info.order,
        info.edge_count,
        yes_no(info.connected),
        if edges.is_empty() { "(none)".to_string() } else { edges.join(" ") },
        info.degrees
    )
}

pub fn decode(code: &str) -> anyhow::Result<Report> {
    let graphs: Vec<Graph> = if code == "-" {
        stream_graph6(std::io::stdin().lock()).collect::<Result<_, _>>()?
    } else {
        vec![input::graph(code)?]
    };
    let infos: Vec<GraphInfo> = graphs.iter().map(graph_info).collect();
    let text = infos.iter().map(graph_text).collect();
    Report::new("decode", json!({ "graphs": infos }), text, true)
}

pub fn encode(order: usize, edges: &str) -> anyhow::Result<Report> {
    let g = Graph::from_edges(order, &input::edges(edges)?)?;
    let code = encode_graph6(&g);
    Report::new("encode", json!({ "graph6": code }), code.clone(), true)
}

pub fn matrix(graph: &str, kind: &str) -> anyhow::Result<Report> {
    let g = input::graph(graph)?;
    let kind = input::kind(kind)?;
    let m = build_matrix(&g, &kind)?;
    let text = format!("{kind} matrix of {}:\n{m}", encode_graph6(&g));
    Report::new("matrix", json!({ "graph6": encode_graph6(&g), "kind": kind, "matrix": m }), text, true)
}

pub fn charpoly(graph: &str, kind: &str) -> anyhow::Result<Report> {
    let g = input::graph(graph)?;
    let kind = input::kind(kind)?;
    let p = characteristic_polynomial(&g, &kind)?;
    let text = format!("{p}\n");
    Report::new(
        "charpoly",
        json!({ "graph6": encode_graph6(&g), "kind": kind, "charpoly": p.to_string(), "coefficients": p }),
        text,
        true,
    )
}

pub fn cospectral_cmd(g1: &str, g2: &str, kind: &str) -> anyhow::Result<Report> {
    let (g1, g2) = (input::graph(g1)?, input::graph(g2)?);
    let kind = input::kind(kind)?;
    let v = cospectral(&g1, &g2, &kind)?;
    let text = table(&[
        vec!["kind".into(), kind.to_string()],
        vec![encode_graph6(&g1), v.charpoly_1.to_string()],
        vec![encode_graph6(&g2), v.charpoly_2.to_string()],
        vec!["cospectral".into(), yes_no(v.equal).into()],
    ]);
    Report::new(
        "cospectral",
        json!({
            "g1": encode_graph6(&g1),
            "g2": encode_graph6(&g2),
            "kind": kind,
            "equal": v.equal,
            "charpoly_1": v.charpoly_1.to_string(),
            "charpoly_2": v.charpoly_2.to_string(),
        }),
        text,
        v.equal,
    )
}

fn rooted_code(h: &RootedGraph) -> String {
    format!("{}:1", encode_graph6(h.graph()))
}

fn checked_attachments(partition: &Partition, attach: &str) -> anyhow::Result<Vec<RootedGraph>> {
    let attachments = input::attachments(attach)?;
    if attachments.len() != partition.len() {
        bail!("{} attachments for {} classes", attachments.len(), partition.len());
    }
    Ok(attachments)
}

pub fn coalesce_cmd(base: &str, partition: &str, attach: &str, kind: Option<&str>) -> anyhow::Result<Report> {
    let base = input::graph(base)?;
    let partition = input::partition(base.order(), Some(partition))?;
    let attachments = checked_attachments(&partition, attach)?;
    let spec = CoalescingSpec::new(base, partition, attachments)?;
    let c = coalesce(&spec);
    let code = encode_graph6(&c.graph);
    let labels: Vec<String> = c.labels.iter().map(ToString::to_string).collect();
    let mut data = json!({
        "graph6": code,
        "order": c.graph.order(),
        "edge_count": c.graph.edge_count(),
        "labels": labels,
    });
    let mut text = format!("{code}: {} vertices, {} edges\n", c.graph.order(), c.graph.edge_count());
    let rows: Vec<Vec<String>> = labels.iter().enumerate().map(|(v, l)| vec![format!("  {}", v + 1), l.clone()]).collect();
    text.push_str("vertex labels (class:attachment vertex:position)\n");
    text.push_str(&table(&rows));
    if let Some(kind) = kind {
        let kind = input::kind(kind)?;
        let m = build_matrix(&c.graph, &kind)?;
        let blocks = shifted_block_matrix(&spec, &kind)?;
        text.push_str(&format!("{kind} matrix:\n{m}block shift formula agrees: {}\n", yes_no(m == blocks)));
        data["kind"] = json!(kind);
        data["matrix"] = json!(m);
        data["shift_formula_agrees"] = json!(m == blocks);
    }
    Report::new("coalesce", data, text, true)
}

pub fn similarity_text(s: &BlockSimilarity) -> String {
    let mut out = String::new();
    for (i, (block, class)) in s.blocks().iter().zip(s.partition().classes()).enumerate() {
        let vs: Vec<String> = class.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&format!("block {} (vertices {}):\n{block}", i + 1, vs.join(",")));
    }
    out
}

pub fn witness_text(w: &SimilarityWitness) -> String {
    let c = &w.certificate;
    let mut out = similarity_text(&w.s);
    out.push_str(&format!(
        "S M(G1) = M(G2) S: {}; det S = {}; SJ = JS: {}",
        yes_no(c.residual_zero),
        c.det_s,
        yes_no(c.sj_eq_js)
    ));
    if let Some(t) = c.simultaneous_max_t {
        out.push_str(&format!("; simultaneous for t = 0..{t}"));
    }
    out.push('\n');
    out
}

pub fn search_text(search: &SimilaritySearch) -> String {
    match search {
        SimilaritySearch::Witness(w) => format!("witness found\n{}", witness_text(w)),
        SimilaritySearch::Nonexistence(r) => format!("{r}\n"),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn find_sim(
    g1: &str,
    g2: &str,
    partition: Option<&str>,
    kind: &str,
    sjjs: bool,
    simultaneous: bool,
    seed: u64,
    trials: usize,
    coeff_bound: u64,
) -> anyhow::Result<Report> {
    let (g1, g2) = (input::graph(g1)?, input::graph(g2)?);
    let partition = input::partition(g1.order(), partition)?;
    let kind = input::kind(kind)?;
    let mut prob = SimilarityProblem::new(g1, g2, partition, kind)?;
    if sjjs {
        prob = prob.with_sj_eq_js();
    }
    if simultaneous {
        prob = prob.with_simultaneous();
    }
    let search = find_block_similarity(&prob, seed, trials, coeff_bound)?;
    let ok = search.is_witness();
    let text = search_text(&search);
    Report::new(
        "find-sim",
        json!({
            "g1": encode_graph6(&prob.g1),
            "g2": encode_graph6(&prob.g2),
            "partition": prob.partition.to_one_based(),
            "kind": prob.kind,
            "sj_eq_js": sjjs,
            "simultaneous": simultaneous,
            "seed": seed,
            "search": search,
        }),
        text,
        ok,
    )
}

pub enum TheoremKind {
    QLaplacian(String),
    Distance,
    GeneralizedDistance(Vec<String>),
}

pub struct VerifyArgs {
    pub theorem: TheoremKind,
    pub g1: String,
    pub g2: String,
    pub partition: Option<String>,
    pub attach: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub trials: usize,
    pub coeff_bound: u64,
}

#[derive(Serialize)]
struct AttachmentCheck {
    attachments: Vec<String>,
    kind: MatrixKind,
    extended_similarity_verified: bool,
    cospectral: bool,
    error: Option<String>,
}

/// Random `D^f` tables are long enough for any coalescing with attachments
/// on at most this many vertices.
const RANDOM_ATTACH_ORDER: usize = 4;

pub fn verify_theorem(args: VerifyArgs) -> anyhow::Result<Report> {
    let (g1, g2) = (input::graph(&args.g1)?, input::graph(&args.g2)?);
    let partition = input::partition(g1.order(), args.partition.as_deref())?;
    let mut rng = seeded(args.seed);
    let (number, base_kind, check_kinds) = match &args.theorem {
        TheoremKind::QLaplacian(q) => {
            let kind = MatrixKind::QLaplacian(parse_rational(q)?);
            (1, kind.clone(), vec![kind])
        }
        TheoremKind::Distance => (2, MatrixKind::Distance, vec![MatrixKind::Distance]),
        TheoremKind::GeneralizedDistance(tables) => {
            let mut kinds = vec![MatrixKind::Distance];
            if tables.is_empty() {
                let len = g1.order() + 2 * RANDOM_ATTACH_ORDER + 1;
                for _ in 0..3 {
                    kinds.push(MatrixKind::GeneralizedDistance(random_table(len, -5, 5, &mut rng)));
                }
            } else {
                for t in tables {
                    kinds.push(MatrixKind::GeneralizedDistance(t.parse().with_context(|| format!("reading f {t:?}"))?));
                }
            }
            (3, MatrixKind::Distance, kinds)
        }
    };
    let mut prob = SimilarityProblem::new(g1, g2, partition, base_kind)?;
    prob = match number {
        2 => prob.with_sj_eq_js(),
        3 => prob.with_simultaneous(),
        _ => prob,
    };
    let search = find_block_similarity(&prob, args.seed, args.trials, args.coeff_bound)?;
    let mut text = format!(
        "theorem {number}: {} vs {}, partition {}\n{}",
        encode_graph6(&prob.g1),
        encode_graph6(&prob.g2),
        prob.partition.to_one_based(),
        search_text(&search)
    );
    let mut checks = Vec::new();
    if let Some(w) = search.witness() {
        let tuples: Vec<Vec<RootedGraph>> = match &args.attach {
            Some(a) => vec![checked_attachments(&prob.partition, a)?],
            None => (0..args.samples)
                .map(|_| (0..prob.partition.len()).map(|_| random_rooted(RANDOM_ATTACH_ORDER, &mut rng)).collect())
                .collect(),
        };
        for attachments in &tuples {
            for kind in &check_kinds {
                let extended = verify_extended_similarity(&w.s, &prob, attachments, kind);
                let verdict = verify_coalesced_cospectral(&prob.g1, &prob.g2, &prob.partition, attachments, kind);
                let error = extended.as_ref().err().or(verdict.as_ref().err()).map(ToString::to_string);
                checks.push(AttachmentCheck {
                    attachments: attachments.iter().map(rooted_code).collect(),
                    kind: kind.clone(),
                    extended_similarity_verified: extended.is_ok(),
                    cospectral: verdict.map(|v| v.equal).unwrap_or(false),
                    error,
                });
            }
        }
        let rows: Vec<Vec<String>> = std::iter::once(vec![
            "attachments".to_string(),
            "kind".to_string(),
            "extended S".to_string(),
            "cospectral".to_string(),
        ])
        .chain(checks.iter().map(|c| {
            vec![
                c.attachments.join(","),
                c.kind.to_string(),
                yes_no(c.extended_similarity_verified).to_string(),
                yes_no(c.cospectral).to_string(),
            ]
        }))
        .collect();
        text.push_str(&table(&rows));
    }
    let ok = search.is_witness() && checks.iter().all(|c| c.extended_similarity_verified && c.cospectral);
    Report::new(
        "verify-theorem",
        json!({
            "theorem": number,
            "g1": encode_graph6(&prob.g1),
            "g2": encode_graph6(&prob.g2),
            "partition": prob.partition.to_one_based(),
            "seed": args.seed,
            "search": search,
            "checks": checks,
        }),
        text,
        ok,
    )
}

pub fn butler(g1: &str, g2: &str, v1: &str, v2: Option<&str>) -> anyhow::Result<Report> {
    let (g1, g2) = (input::graph(g1)?, input::graph(g2)?);
    let n = g1.order();
    let v1 = input::vertices(n, v1)?;
    let v2 = match v2 {
        Some(v2) => input::vertices(n, v2)?,
        None => (0..n).filter(|v| !v1.contains(v)).collect(),
    };
    let holds = butler_condition(&g1, &g2, &v1, &v2)?;
    let one = |vs: &[usize]| vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
    let text = format!(
        "subset condition for V1 = {{{}}}, V2 = {{{}}}: {}\n",
        one(&v1),
        one(&v2),
        if holds { "holds" } else { "fails" }
    );
    Report::new(
        "butler",
        json!({
            "g1": encode_graph6(&g1),
            "g2": encode_graph6(&g2),
            "v1": v1.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "v2": v2.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "holds": holds,
        }),
        text,
        holds,
    )
}

pub struct MineArgs {
    pub file: Option<String>,
    pub order: Option<usize>,
    pub kind: String,
    pub classify_sjjs: bool,
    pub workers: usize,
    pub seed: u64,
    pub trials: usize,
    pub coeff_bound: u64,
}

fn mine_stream(reader: Box<dyn BufRead>, kind: &MatrixKind, workers: usize) -> anyhow::Result<CensusReport> {
    let mut failure = None;
    let graphs = stream_graph6(reader).map_while(|g| match g {
        Ok(g) => Some(g),
        Err(e) => {
            failure = Some(e);
            None
        }
    });
    let report = mine_cospectral_parallel(graphs, kind, workers)?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(report),
    }
}

pub fn census_text(r: &CensusReport) -> String {
    let mut out = format!(
        "kind {}, largest order {}: {} graphs read, {} disconnected skipped, {} cospectral pairs\n",
        r.kind, r.n, r.graphs_read, r.skipped_disconnected, r.pair_count
    );
    for (a, b) in &r.pairs {
        out.push_str(&format!("  {a} {b}\n"));
    }
    if r.sjjs_classified {
        out.push_str(&format!("{} pairs without a similarity S satisfying SJ = JS\n", r.sjjs_negative.len()));
        for (a, b) in &r.sjjs_negative {
            out.push_str(&format!("  {a} {b}\n"));
        }
    }
    out
}

pub fn mine(args: MineArgs) -> anyhow::Result<Report> {
    let kind = input::kind(&args.kind)?;
    let mut report = match (&args.file, args.order) {
        (Some(path), _) => {
            let reader: Box<dyn BufRead> = if path == "-" {
                Box::new(BufReader::new(std::io::stdin()))
            } else {
                Box::new(BufReader::new(File::open(path).with_context(|| format!("opening {path}"))?))
            };
            mine_stream(reader, &kind, args.workers)?
        }
        (None, Some(n)) => mine_cospectral_parallel(enumerate_connected(n)?, &kind, args.workers)?,
        (None, None) => bail!("either --file or --order is required"),
    };
    if args.classify_sjjs {
        if kind != MatrixKind::Distance {
            bail!("--classify-sjjs needs --kind dist");
        }
        classify_report(&mut report, args.seed, args.trials, args.coeff_bound, args.workers)?;
    }
    let text = census_text(&report);
    Report::new("mine", &report, text, true)
}
