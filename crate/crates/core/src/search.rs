//! Census mining: group a stream of graphs by exact characteristic
//! polynomial, drop isomorphic duplicates, and report the cospectral pairs.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::codec::encode_graph6;
use crate::error::{Error, Result};
use crate::exact::{charpoly, charpoly_small, IntPolynomial};
use crate::graphs::{Graph, Partition};
use crate::matrices::{build_matrix, kind_denominator, small_integer_matrix, DistanceFunction, MatrixKind};
use crate::similarity::{find_block_similarity, SimilarityProblem};

/// Largest order accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Every connected labeled graph on `n` vertices, by edge mask in graph6
/// bit order.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::UseExternalFile(n));
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total: u64 = 1 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let mut g = Graph::empty(n);
        for (b, &(u, v)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.set_edge(u, v, true);
            }
        }
        g.is_connected().then_some(g)
    }))
}

/// Brute-force isomorphism test: backtracking over vertex images, pruned by
/// degree and by adjacency to the already mapped vertices.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // map high-degree vertices first: fewer candidates, earlier pruning
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(da[v]));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_mapping(a, b, &da, &db, &order, 0, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend_mapping(
    a: &Graph,
    b: &Graph,
    da: &[usize],
    db: &[usize],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.order() {
        if used[w] || db[w] != da[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| a.has_edge(u, v) == b.has_edge(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend_mapping(a, b, da, db, order, depth + 1, image, used) {
            return true;
        }
        used[w] = false;
    }
    image[v] = usize::MAX;
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub schema: u32,
    /// Largest order among the graphs read.
    pub n: usize,
    pub kind: MatrixKind,
    pub graphs_read: u64,
    pub skipped_disconnected: u64,
    pub pair_count: usize,
    /// Unordered pairs of non-isomorphic cospectral graphs, each written as
    /// the smallest graph6 code seen for its isomorphism class.
    pub pairs: Vec<(String, String)>,
    /// Whether `sjjs_negative` has been computed.
    pub sjjs_classified: bool,
    /// Pairs with no single-block distance similarity commuting with `J`.
    pub sjjs_negative: Vec<(String, String)>,
}

impl CensusReport {
    fn empty(kind: MatrixKind) -> Self {
        CensusReport {
            schema: 1,
            n: 0,
            kind,
            graphs_read: 0,
            skipped_disconnected: 0,
            pair_count: 0,
            pairs: Vec::new(),
            sjjs_classified: false,
            sjjs_negative: Vec::new(),
        }
    }
}

struct Representative {
    code: String,
    graph: Graph,
}

/// Charpoly groups of pairwise non-isomorphic representatives. Merging is
/// associative and the kept representative is the smallest code, so the
/// final state does not depend on input order or sharding.
#[derive(Default)]
struct Census {
    groups: HashMap<(usize, IntPolynomial), Vec<Representative>>,
    read: u64,
    skipped: u64,
    max_order: usize,
}

impl Census {
    fn insert(&mut self, key: (usize, IntPolynomial), graph: Graph, code: Option<String>) {
        let reps = self.groups.entry(key).or_default();
        for rep in reps.iter_mut() {
            if isomorphic(&rep.graph, &graph) {
                let code = code.unwrap_or_else(|| encode_graph6(&graph));
                if code < rep.code {
                    *rep = Representative { code, graph };
                }
                return;
            }
        }
        let code = code.unwrap_or_else(|| encode_graph6(&graph));
        reps.push(Representative { code, graph });
    }

    fn add(&mut self, graph: Graph, kind: &MatrixKind) -> Result<()> {
        self.read += 1;
        self.max_order = self.max_order.max(graph.order());
        if kind.is_distance_based() && !graph.is_connected() {
            self.skipped += 1;
            return Ok(());
        }
        let key = (graph.order(), census_key(&graph, kind)?);
        self.insert(key, graph, None);
        Ok(())
    }

    fn merge(mut self, other: Census) -> Census {
        self.read += other.read;
        self.skipped += other.skipped;
        self.max_order = self.max_order.max(other.max_order);
        for (key, reps) in other.groups {
            for rep in reps {
                self.insert(key.clone(), rep.graph, Some(rep.code));
            }
        }
        self
    }

    fn report(self, kind: MatrixKind) -> CensusReport {
        let mut pairs = Vec::new();
        for reps in self.groups.into_values() {
            let mut codes: Vec<String> = reps.into_iter().map(|r| r.code).collect();
            codes.sort();
            for i in 0..codes.len() {
                for j in i + 1..codes.len() {
                    pairs.push((codes[i].clone(), codes[j].clone()));
                }
            }
        }
        pairs.sort();
        CensusReport {
            n: self.max_order,
            graphs_read: self.read,
            skipped_disconnected: self.skipped,
            pair_count: pairs.len(),
            pairs,
            ..CensusReport::empty(kind)
        }
    }
}

/// Scale making every entry of an order-`n` `kind` matrix an integer.
fn census_scale(kind: &MatrixKind, n: usize) -> Result<BigInt> {
    let d_max = n.saturating_sub(1) as u32;
    match kind {
        MatrixKind::GeneralizedDistance(DistanceFunction::Table(t)) => {
            kind_denominator(kind, d_max.min(t.len().saturating_sub(1) as u32))
        }
        _ => kind_denominator(kind, d_max),
    }
}

/// Characteristic polynomial of the integer-scaled `kind` matrix; equal
/// keys for equal orders mean equal characteristic polynomials.
fn census_key(g: &Graph, kind: &MatrixKind) -> Result<IntPolynomial> {
    let scale = census_scale(kind, g.order())?;
    if let Some(entries) = small_integer_matrix(g, kind, &scale)? {
        return Ok(charpoly_small(g.order(), &entries));
    }
    let m = build_matrix(g, kind)?.scale(&num_rational::BigRational::from_integer(scale));
    let p = charpoly(&m)?;
    Ok(p.to_integer().expect("scaled matrix is integral"))
}

/// Single-threaded census of a graph stream.
pub fn mine_cospectral<I>(graphs: I, kind: &MatrixKind) -> Result<CensusReport>
where
    I: IntoIterator<Item = Graph>,
{
    let mut census = Census::default();
    for g in graphs {
        census.add(g, kind)?;
    }
    Ok(census.report(kind.clone()))
}

const BATCH: usize = 1 << 16;

/// Census with the stream cut into batches whose shards are processed on
/// `workers` threads; the report equals the single-threaded one.
pub fn mine_cospectral_parallel<I>(graphs: I, kind: &MatrixKind, workers: usize) -> Result<CensusReport>
where
    I: IntoIterator<Item = Graph>,
{
    if workers <= 1 {
        return mine_cospectral(graphs, kind);
    }
    let pool = thread_pool(workers)?;
    let mut census = Census::default();
    let mut iter = graphs.into_iter();
    loop {
        let batch: Vec<Graph> = iter.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let shard_size = batch.len().div_ceil(workers);
        let part = pool.install(|| {
            batch
                .par_chunks(shard_size)
                .map(|shard| {
                    let mut local = Census::default();
                    for g in shard {
                        local.add(g.clone(), kind)?;
                    }
                    Ok(local)
                })
                .try_reduce(Census::default, |a, b| Ok(a.merge(b)))
        })?;
        census = census.merge(part);
    }
    Ok(census.report(kind.clone()))
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("cannot start worker pool: {e}")))
}

/// Whether `g1`, `g2` admit a single-block distance similarity `S` with
/// `SJ = JS` (as far as sampling can tell).
pub fn has_sjjs_similarity(g1: &Graph, g2: &Graph, seed: u64, trials: usize, coeff_bound: u64) -> Result<bool> {
    let prob = SimilarityProblem::new(
        g1.clone(),
        g2.clone(),
        Partition::whole(g1.order()),
        MatrixKind::Distance,
    )?
    .with_sj_eq_js();
    Ok(find_block_similarity(&prob, seed, trials, coeff_bound)?.is_witness())
}

/// Runs the single-block `SJ = JS` distance similarity search on every
/// pair; pairs without a witness are listed in `sjjs_negative`.
pub fn classify_sjjs(pairs: &[(Graph, Graph)], seed: u64, trials: usize, coeff_bound: u64) -> Result<CensusReport> {
    classify_sjjs_parallel(pairs, seed, trials, coeff_bound, 1)
}

pub fn classify_sjjs_parallel(
    pairs: &[(Graph, Graph)],
    seed: u64,
    trials: usize,
    coeff_bound: u64,
    workers: usize,
) -> Result<CensusReport> {
    let verdicts: Vec<bool> = if workers <= 1 {
        pairs
            .iter()
            .map(|(a, b)| has_sjjs_similarity(a, b, seed, trials, coeff_bound))
            .collect::<Result<_>>()?
    } else {
        thread_pool(workers)?.install(|| {
            pairs
                .par_iter()
                .map(|(a, b)| has_sjjs_similarity(a, b, seed, trials, coeff_bound))
                .collect::<Result<_>>()
        })?
    };
    let codes: Vec<(String, String)> = pairs
        .iter()
        .map(|(a, b)| (encode_graph6(a), encode_graph6(b)))
        .collect();
    let sjjs_negative = codes
        .iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| !ok)
        .map(|(p, _)| p.clone())
        .collect();
    Ok(CensusReport {
        n: pairs.iter().map(|(a, _)| a.order()).max().unwrap_or(0),
        graphs_read: 2 * pairs.len() as u64,
        pair_count: pairs.len(),
        pairs: codes,
        sjjs_classified: true,
        sjjs_negative,
        ..CensusReport::empty(MatrixKind::Distance)
    })
}

/// Fills `sjjs_negative` of a distance census.
pub fn classify_report(
    report: &mut CensusReport,
    seed: u64,
    trials: usize,
    coeff_bound: u64,
    workers: usize,
) -> Result<()> {
    let pairs = report
        .pairs
        .iter()
        .map(|(a, b)| Ok((crate::codec::decode_graph6(a)?, crate::codec::decode_graph6(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let classified = classify_sjjs_parallel(&pairs, seed, trials, coeff_bound, workers)?;
    report.sjjs_negative = classified.sjjs_negative;
    report.sjjs_classified = true;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode_graph6;

    #[test]
    fn labeled_connected_counts() {
        // labeled connected graphs: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_connected(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        assert!(matches!(enumerate_connected(9), Err(Error::UseExternalFile(9))));
    }

    #[test]
    fn isomorphism_of_relabelings() {
        let g = decode_graph6("F{|Xw").unwrap();
        let h = g.relabeled(&[3, 1, 6, 0, 2, 5, 4]);
        assert!(isomorphic(&g, &h));
        assert!(!isomorphic(&g, &decode_graph6("FzE}w").unwrap()));
        assert!(!isomorphic(&Graph::path(4), &Graph::star(4)));
    }

    #[test]
    fn small_censuses() {
        let single = mine_cospectral([Graph::path(3)], &MatrixKind::Distance).unwrap();
        assert_eq!(single.pair_count, 0);
        // the smallest adjacency-cospectral pair: K_{1,4} and C_4 + K_1
        let all5: Vec<Graph> = (0u64..1 << 10)
            .map(|mask| {
                let mut g = Graph::empty(5);
                let mut b = 0;
                for v in 1..5 {
                    for u in 0..v {
                        if mask >> b & 1 == 1 {
                            g.set_edge(u, v, true);
                        }
                        b += 1;
                    }
                }
                g
            })
            .collect();
        let report = mine_cospectral(all5.clone(), &MatrixKind::adjacency()).unwrap();
        assert_eq!(report.pair_count, 1);
        let (a, b) = &report.pairs[0];
        let pair = [decode_graph6(a).unwrap(), decode_graph6(b).unwrap()];
        assert!(pair.iter().any(|g| isomorphic(g, &Graph::star(5))));
        let par = mine_cospectral_parallel(all5.into_iter().rev(), &MatrixKind::adjacency(), 3).unwrap();
        assert_eq!(par, report);
    }

    #[test]
    fn disconnected_graphs_are_skipped_for_distance() {
        let report = mine_cospectral([Graph::empty(2), Graph::path(2)], &MatrixKind::Distance).unwrap();
        assert_eq!(report.skipped_disconnected, 1);
        assert_eq!(report.graphs_read, 2);
    }
}
