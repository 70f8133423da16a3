//! Re-derivation of the worked examples and the seven-vertex census. Every
//! check is exact; randomized ones draw from a generator seeded by `--seed`.

use std::collections::BTreeSet;

use anyhow::{ensure, Context};
use clap::ValueEnum;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use cospectral::catalog::{self, PrintedWitness};
use cospectral::codec::{decode_graph6, encode_graph6};
use cospectral::exact::ExactMatrix;
use cospectral::graphs::{coalesce, union_distance_graphs, CoalescingSpec, Graph, Partition, RootedGraph};
use cospectral::matrices::{build_matrix, shifted_block_matrix, MatrixKind};
use cospectral::random::{random_rooted, random_rooted_tree, seeded, SeededRng};
use cospectral::search::{classify_sjjs, enumerate_connected, isomorphic, mine_cospectral_parallel};
use cospectral::similarity::{
    check_similarity, find_block_similarity, SimilarityProblem, SimilaritySearch, DEFAULT_COEFF_BOUND,
    DEFAULT_TRIALS,
};
use cospectral::verify::{
    butler_condition, conjecture_counterexample_check, cospectral, find_breaking_attachment,
    find_distinguishing_table, verify_coalesced_cospectral, verify_extended_similarity,
};

use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Coalescing example: 16x16 distance matrix from block shifts.
    #[value(name = "fig1")]
    CoalescingExample,
    /// Two-class adjacency pair: subset condition holds, no block similarity.
    #[value(name = "fig2")]
    TwoClassAdjacency,
    /// McKay's trees: printed S, random trees at vertex 1.
    #[value(name = "fig3")]
    Mckay,
    /// Heysse pair and the three-class witness (plus the four-class split).
    #[value(name = "fig4")]
    HeysseAndThreeClass,
    /// Seven-vertex distance-cospectral pairs and generalized-distance robustness.
    #[value(name = "fig5")]
    SevenVertex,
    /// One pair with two block structures.
    #[value(name = "fig6")]
    DualStructure,
    /// Nine-vertex pairs with no S satisfying SJ = JS.
    #[value(name = "fig7")]
    NineVertex,
    /// Distance-class unions and complements.
    #[value(name = "fig8")]
    DistanceUnions,
    /// Census of connected graphs on at most seven vertices.
    #[value(name = "census7")]
    Census7,
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

struct Suite {
    rng: SeededRng,
    checks: Vec<Check>,
    data: Map<String, Value>,
}

impl Suite {
    fn check(&mut self, name: &str, run: impl FnOnce(&mut Self) -> anyhow::Result<String>) {
        let (passed, detail) = match run(self) {
            Ok(detail) => (true, detail),
            Err(e) => (false, format!("{e:#}")),
        };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }

    /// Seed for a sub-search, drawn from the suite generator.
    fn rng_seed(&mut self) -> u64 {
        self.rng.gen()
    }
}

fn g6(code: &str) -> Graph {
    decode_graph6(code).expect("catalog codes decode")
}

fn pair(p: (&str, &str)) -> (Graph, Graph) {
    (g6(p.0), g6(p.1))
}

fn verify_printed(w: &PrintedWitness, sjjs: bool) -> anyhow::Result<String> {
    let mut prob = w.problem(MatrixKind::Distance)?;
    if sjjs {
        prob = prob.with_sj_eq_js();
    }
    let witness = check_similarity(&w.similarity()?, &prob)?;
    Ok(format!(
        "partition {}, det S = {}{}",
        w.partition,
        witness.certificate.det_s,
        if sjjs { ", SJ = JS" } else { "" }
    ))
}

/// `h` on the single class `{v}`, `K1` elsewhere.
fn at_vertex(n: usize, v: usize, h: RootedGraph) -> (Partition, Vec<RootedGraph>) {
    let partition = Partition::singletons_then_rest(n, &[v]).expect("vertex in range");
    let mut attachments = vec![h];
    attachments.resize(partition.len(), RootedGraph::trivial());
    (partition, attachments)
}

fn same_pairs_up_to_isomorphism(found: &[(String, String)], expected: &[(&str, &str)]) -> bool {
    if found.len() != expected.len() {
        return false;
    }
    let mut unused: Vec<(Graph, Graph)> = found.iter().map(|(a, b)| (g6(a), g6(b))).collect();
    expected.iter().all(|&(a, b)| {
        let (a, b) = (g6(a), g6(b));
        let hit = unused.iter().position(|(x, y)| {
            (isomorphic(&a, x) && isomorphic(&b, y)) || (isomorphic(&a, y) && isomorphic(&b, x))
        });
        hit.map(|i| unused.swap_remove(i)).is_some()
    })
}

fn coalescing_example(s: &mut Suite) {
    let base = catalog::coalescing_base();
    let partition = Partition::parse_one_based(6, catalog::COALESCING_PARTITION).expect("catalog partition");
    let spec = CoalescingSpec::new(base.clone(), partition, catalog::coalescing_attachments()).expect("catalog spec");
    let expected = ExactMatrix::from_int_rows(&catalog::COALESCED_DISTANCES.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    s.check("base distance matrix", |_| {
        let expected =
            ExactMatrix::from_int_rows(&catalog::COALESCING_BASE_DISTANCES.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        ensure!(build_matrix(&base, &MatrixKind::Distance)? == expected, "6x6 matrix differs");
        Ok(format!("{} with partition {}", encode_graph6(&base), catalog::COALESCING_PARTITION))
    });
    s.check("coalesced distance matrix by BFS", |_| {
        ensure!(build_matrix(&coalesce(&spec).graph, &MatrixKind::Distance)? == expected, "16x16 matrix differs");
        Ok("16x16 matrix matches exactly".into())
    });
    s.check("coalesced distance matrix by block shifts", |s| {
        let m = shifted_block_matrix(&spec, &MatrixKind::Distance)?;
        ensure!(m == expected, "16x16 matrix differs");
        let labels: Vec<String> = coalesce(&spec).labels.iter().map(ToString::to_string).collect();
        s.data.insert("labels".into(), json!(labels));
        s.data.insert("distance_matrix".into(), json!(m));
        Ok("16x16 matrix matches exactly".into())
    });
}

fn two_class_adjacency(s: &mut Suite) {
    let (g1, g2) = pair(catalog::BUTLER_PAIR);
    let partition = Partition::parse_one_based(7, catalog::BUTLER_PARTITION).expect("catalog partition");
    s.check("subset condition", |_| {
        ensure!(butler_condition(&g1, &g2, &[0, 1, 2], &[3, 4, 5, 6])?, "condition fails");
        Ok("holds for V1 = {1,2,3}, V2 = {4,5,6,7}".into())
    });
    s.check("random H1, H2 keep adjacency cospectrality", |s| {
        for trial in 0..10 {
            let attachments = vec![random_rooted(5, &mut s.rng), random_rooted(5, &mut s.rng)];
            let v = verify_coalesced_cospectral(&g1, &g2, &partition, &attachments, &MatrixKind::adjacency())?;
            ensure!(v.equal, "attachment pair {trial} breaks cospectrality");
        }
        Ok("10 random attachment pairs".into())
    });
    s.check("block similarity search", |s| {
        let prob = SimilarityProblem::new(g1.clone(), g2.clone(), partition.clone(), MatrixKind::adjacency())?;
        match find_block_similarity(&prob, s.rng_seed(), DEFAULT_TRIALS, DEFAULT_COEFF_BOUND)? {
            SimilaritySearch::Witness(_) => anyhow::bail!("a block similarity exists"),
            SimilaritySearch::Nonexistence(r) => {
                if let Some(b) = r.log10_failure_bound {
                    ensure!(b < -200.0, "failure bound 10^{b:.1} is too weak");
                }
                Ok(r.to_string())
            }
        }
    });
}

fn mckay(s: &mut Suite) {
    let w = catalog::mckay_witness();
    s.check("printed similarity", |_| verify_printed(&w, true));
    s.check("random trees at vertex 1", |s| {
        let (g1, g2) = w.graphs()?;
        for trial in 0..10 {
            let h = random_rooted_tree(8, &mut s.rng);
            let (partition, attachments) = at_vertex(g1.order(), 0, h);
            let v = verify_coalesced_cospectral(&g1, &g2, &partition, &attachments, &MatrixKind::Distance)?;
            ensure!(v.equal, "tree {trial} breaks cospectrality");
        }
        Ok("10 random trees on at most 8 vertices".into())
    });
}

fn heysse_and_three_class(s: &mut Suite) {
    let heysse = catalog::heysse_witness();
    s.check("printed similarity, Heysse pair", |_| verify_printed(&heysse, true));
    s.check("random H at vertex 1 and at vertex 2", |s| {
        let (g1, g2) = heysse.graphs()?;
        for v in [0, 1] {
            for trial in 0..10 {
                let (partition, attachments) = at_vertex(g1.order(), v, random_rooted(7, &mut s.rng));
                let verdict = verify_coalesced_cospectral(&g1, &g2, &partition, &attachments, &MatrixKind::Distance)?;
                ensure!(verdict.equal, "H {trial} at vertex {} breaks cospectrality", v + 1);
            }
        }
        Ok("10 random connected H at each vertex".into())
    });
    let three = catalog::three_class_witness();
    s.check("printed similarity, three classes", |_| verify_printed(&three, true));
    s.check("extended similarity on random attachment triples", |s| {
        let prob = three.problem(MatrixKind::Distance)?.with_sj_eq_js();
        let sim = three.similarity()?;
        for trial in 0..10 {
            let attachments: Vec<RootedGraph> = (0..3).map(|_| random_rooted(4, &mut s.rng)).collect();
            verify_extended_similarity(&sim, &prob, &attachments, &MatrixKind::Distance)
                .with_context(|| format!("triple {trial}"))?;
        }
        Ok("10 triples".into())
    });
    s.check("four classes: random attachments", |s| {
        let (g1, g2) = pair(catalog::THREE_CLASS_PAIR);
        let partition = Partition::parse_one_based(8, catalog::FOUR_CLASS_PARTITION)?;
        for trial in 0..10 {
            let attachments: Vec<RootedGraph> = (0..4).map(|_| random_rooted(4, &mut s.rng)).collect();
            let v = verify_coalesced_cospectral(&g1, &g2, &partition, &attachments, &MatrixKind::Distance)?;
            ensure!(v.equal, "quadruple {trial} breaks cospectrality");
        }
        Ok(format!("10 random quadruples on {} stay cospectral", catalog::FOUR_CLASS_PARTITION))
    });
    s.check("four classes: search for S with SJ = JS", |s| {
        let (g1, g2) = pair(catalog::THREE_CLASS_PAIR);
        let partition = Partition::parse_one_based(8, catalog::FOUR_CLASS_PARTITION)?;
        let prob = SimilarityProblem::new(g1, g2, partition, MatrixKind::Distance)?.with_sj_eq_js();
        let search = find_block_similarity(&prob, s.rng_seed(), DEFAULT_TRIALS, DEFAULT_COEFF_BOUND)?;
        s.data.insert("four_class_search".into(), json!(search));
        match search {
            SimilaritySearch::Witness(_) => anyhow::bail!("a four-block similarity exists"),
            SimilaritySearch::Nonexistence(r) => Ok(r.to_string()),
        }
    });
}

fn seven_vertex(s: &mut Suite) {
    let mut rows = Vec::new();
    s.check("pairs are distance-cospectral", |_| {
        for p in catalog::SEVEN_VERTEX_PAIRS {
            let (g1, g2) = pair(p);
            ensure!(cospectral(&g1, &g2, &MatrixKind::Distance)?.equal, "{} {} not cospectral", p.0, p.1);
        }
        Ok("11 of 11".into())
    });
    s.check("simultaneous witnesses", |s| {
        let mut robust = 0;
        let mut exception = None;
        for p in catalog::SEVEN_VERTEX_PAIRS {
            let (g1, g2) = pair(p);
            let prob = SimilarityProblem::new(g1, g2, Partition::whole(7), MatrixKind::Distance)?.with_simultaneous();
            let found = find_block_similarity(&prob, s.rng_seed(), DEFAULT_TRIALS, DEFAULT_COEFF_BOUND)?.is_witness();
            robust += usize::from(found);
            if p == catalog::SEVEN_VERTEX_EXCEPTION {
                exception = Some(found);
            }
            rows.push(json!({ "g1": p.0, "g2": p.1, "simultaneous_witness": found }));
        }
        ensure!(robust == 10, "{robust} of 11 pairs have a simultaneous witness");
        ensure!(exception == Some(false), "the exception pair has a simultaneous witness");
        Ok(format!(
            "10 of 11; exception {} {}",
            catalog::SEVEN_VERTEX_EXCEPTION.0,
            catalog::SEVEN_VERTEX_EXCEPTION.1
        ))
    });
    s.check("printed four-class similarity", |_| {
        for p in catalog::SEVEN_VERTEX_PAIRS {
            verify_printed(&catalog::seven_vertex_witness(p), true).with_context(|| format!("{} {}", p.0, p.1))?;
        }
        Ok(format!("verified with SJ = JS for all 11 pairs on partition {}", catalog::SEVEN_VERTEX_PARTITION))
    });
    s.check("exception pair separated by some f", |s| {
        let (g1, g2) = pair(catalog::SEVEN_VERTEX_EXCEPTION);
        let f = find_distinguishing_table(&g1, &g2, &[0, 1, 2, 3])?.context("no table with entries in {0,1,2,3}")?;
        ensure!(!cospectral(&g1, &g2, &MatrixKind::GeneralizedDistance(f.clone()))?.equal, "table does not separate");
        s.data.insert("distinguishing_f".into(), json!(f.to_string()));
        Ok(format!("f = ({f})"))
    });
    s.data.insert("pairs".into(), json!(rows));
}

fn dual_structure(s: &mut Suite) {
    for (name, w) in ["printed similarity A", "printed similarity B"].into_iter().zip(catalog::dual_structure_witnesses()) {
        s.check(name, |_| verify_printed(&w, true));
    }
    let (g1, g2) = pair(catalog::DUAL_STRUCTURE_PAIR);
    for v in [0usize, 7] {
        s.check(&format!("every H on at most 4 vertices at vertex {}", v + 1), |_| {
            let search = find_breaking_attachment(&g1, &g2, &[v], &MatrixKind::Distance, 4)?;
            ensure!(search.found.is_none(), "some H breaks cospectrality");
            Ok(format!("{} rooted graphs keep cospectrality", search.examined))
        });
    }
    s.check("some H on vertices 1 and 8 breaks cospectrality", |s| {
        let search = find_breaking_attachment(&g1, &g2, &[0, 7], &MatrixKind::Distance, 4)?;
        let h = search.found.context("no H on at most 4 vertices breaks it")?;
        s.data.insert("breaking_h".into(), json!(h.graph6));
        Ok(format!("H = {} ({} vertices, root 1)", h.graph6, h.order))
    });
}

fn nine_vertex(s: &mut Suite) {
    let pairs: Vec<(Graph, Graph)> = catalog::NINE_VERTEX_SJJS_NEGATIVE.iter().map(|&p| pair(p)).collect();
    s.check("no similarity with SJ = JS", |s| {
        let report = classify_sjjs(&pairs, s.rng_seed(), DEFAULT_TRIALS, DEFAULT_COEFF_BOUND)?;
        ensure!(report.sjjs_negative.len() == pairs.len(), "{} of 8 negative", report.sjjs_negative.len());
        Ok("8 of 8".into())
    });
    s.check("all-vertex coalescing breaks cospectrality", |s| {
        let mut found = Vec::new();
        for (g1, g2) in &pairs {
            ensure!(cospectral(g1, g2, &MatrixKind::Distance)?.equal, "pair not distance-cospectral");
            let h = conjecture_counterexample_check(g1, g2)?.found.context("no breaking H")?;
            found.push(json!({ "g1": encode_graph6(g1), "g2": encode_graph6(g2), "breaking_h": h.graph6 }));
        }
        s.data.insert("pairs".into(), json!(found));
        Ok("a breaking H on at most 4 vertices for each pair".into())
    });
}

fn distance_unions(s: &mut Suite) {
    let w = catalog::distance_union_witness();
    s.check("printed simultaneous similarity", |_| {
        let prob = w.problem(MatrixKind::Distance)?.with_simultaneous();
        let witness = check_similarity(&w.similarity()?, &prob)?;
        Ok(format!("t = 0..{}", witness.certificate.simultaneous_max_t.unwrap_or(0)))
    });
    s.check("distance-class unions and complements", |_| {
        let (g1, g2) = w.graphs()?;
        let diam = g1.all_pairs_distances().diameter().unwrap_or(0);
        let adjacency = MatrixKind::adjacency();
        for mask in 0u32..(1 << diam) {
            let ts: BTreeSet<u32> = (1..=diam).filter(|t| mask >> (t - 1) & 1 == 1).collect();
            let (u1, u2) = (union_distance_graphs(&g1, &ts)?, union_distance_graphs(&g2, &ts)?);
            ensure!(cospectral(&u1, &u2, &adjacency)?.equal, "union over {ts:?} differs");
            ensure!(cospectral(&u1.complement(), &u2.complement(), &adjacency)?.equal, "complement over {ts:?} differs");
        }
        ensure!(cospectral(&g1.complement(), &g2.complement(), &adjacency)?.equal, "complements differ");
        Ok(format!("{} subsets of {{1..{diam}}}", 1u32 << diam))
    });
}

fn census7(s: &mut Suite) {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    s.check("no pairs on at most 6 vertices", |_| {
        for n in 1..=6 {
            let r = mine_cospectral_parallel(enumerate_connected(n)?, &MatrixKind::Distance, workers)?;
            ensure!(r.pair_count == 0, "{} pairs on {n} vertices", r.pair_count);
        }
        Ok("0 pairs".into())
    });
    s.check("11 pairs on 7 vertices", |s| {
        let r = mine_cospectral_parallel(enumerate_connected(7)?, &MatrixKind::Distance, workers)?;
        ensure!(
            same_pairs_up_to_isomorphism(&r.pairs, &catalog::SEVEN_VERTEX_PAIRS),
            "{} pairs, not the known 11",
            r.pair_count
        );
        s.data.insert("census".into(), json!(r));
        Ok(format!("{} labeled graphs, 11 pairs as listed ({workers} workers)", r.graphs_read))
    });
}

pub fn run(target: Target, seed: u64) -> anyhow::Result<Report> {
    let mut suite = Suite { rng: seeded(seed), checks: Vec::new(), data: Map::new() };
    match target {
        Target::CoalescingExample => coalescing_example(&mut suite),
        Target::TwoClassAdjacency => two_class_adjacency(&mut suite),
        Target::Mckay => mckay(&mut suite),
        Target::HeysseAndThreeClass => heysse_and_three_class(&mut suite),
        Target::SevenVertex => seven_vertex(&mut suite),
        Target::DualStructure => dual_structure(&mut suite),
        Target::NineVertex => nine_vertex(&mut suite),
        Target::DistanceUnions => distance_unions(&mut suite),
        Target::Census7 => census7(&mut suite),
    }
    let ok = suite.checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &suite.checks {
        text.push_str(&format!("{}  {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let target_name = target.to_possible_value().expect("not skipped").get_name().to_string();
    Report::new(
        "reproduce",
        json!({ "target": target_name, "seed": seed, "checks": suite.checks, "data": suite.data }),
        text,
        ok,
    )
}
