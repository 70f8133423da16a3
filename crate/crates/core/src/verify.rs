//! Cospectrality checks: direct charpoly comparison, coalesced pairs, the
//! subset-charpoly condition for two-class adjacency coalescing, searches for
//! attachments that break cospectrality, and an entrywise distance oracle
//! for coalesced graphs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codec::{decode_graph6, encode_graph6};
use crate::error::{Error, Result};
use crate::exact::{charpoly_small, rat, BlockSimilarity, IntPolynomial, RatPolynomial};
use crate::graphs::{coalesce, CoalescingSpec, Graph, Partition, RootedGraph};
use crate::matrices::{characteristic_polynomial, DistanceFunction, MatrixKind};
use crate::similarity::{check_similarity, extend_similarity, SimilarityProblem, SimilarityWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CospectralVerdict {
    pub kind: MatrixKind,
    pub equal: bool,
    pub charpoly_1: RatPolynomial,
    pub charpoly_2: RatPolynomial,
}

/// Exact comparison of the characteristic polynomials of the `kind`
/// matrices. Graphs of different orders are never cospectral.
pub fn cospectral(g1: &Graph, g2: &Graph, kind: &MatrixKind) -> Result<CospectralVerdict> {
    let charpoly_1 = characteristic_polynomial(g1, kind)?;
    let charpoly_2 = characteristic_polynomial(g2, kind)?;
    Ok(CospectralVerdict {
        kind: kind.clone(),
        equal: charpoly_1 == charpoly_2,
        charpoly_1,
        charpoly_2,
    })
}

/// Coalesces the same attachments onto both graphs and compares.
pub fn verify_coalesced_cospectral(
    g1: &Graph,
    g2: &Graph,
    partition: &Partition,
    attachments: &[RootedGraph],
    kind: &MatrixKind,
) -> Result<CospectralVerdict> {
    let spec1 = CoalescingSpec::new(g1.clone(), partition.clone(), attachments.to_vec())?;
    let spec2 = spec1.with_base(g2.clone())?;
    cospectral(&coalesce(&spec1).graph, &coalesce(&spec2).graph, kind)
}

/// Extends a block similarity for `prob` to the coalesced pair and checks
/// it exactly for `kind` (which may differ from `prob.kind`, e.g. a
/// specific `D^f` for a simultaneous witness).
pub fn verify_extended_similarity(
    s: &BlockSimilarity,
    prob: &SimilarityProblem,
    attachments: &[RootedGraph],
    kind: &MatrixKind,
) -> Result<SimilarityWitness> {
    let spec1 = CoalescingSpec::new(prob.g1.clone(), prob.partition.clone(), attachments.to_vec())?;
    let spec2 = spec1.with_base(prob.g2.clone())?;
    let extended = extend_similarity(s, &spec1)?;
    let coalesced = SimilarityProblem::new(
        coalesce(&spec1).graph,
        coalesce(&spec2).graph,
        extended.partition().clone(),
        kind.clone(),
    )?;
    check_similarity(&extended, &coalesced)
}

/// Subset-charpoly condition for coalescing arbitrary `H1`, `H2` on a
/// two-class split `V = V1 ⊎ V2` (adjacency matrix): for every `(k, l)`,
/// `Σ p_{G1[S ∪ T]}(x) = Σ p_{G2[S ∪ T]}(x)` over `S ⊆ V1`, `|S| = k`,
/// `T ⊆ V2`, `|T| = l`.
pub fn butler_condition(g1: &Graph, g2: &Graph, v1: &[usize], v2: &[usize]) -> Result<bool> {
    let n = g1.order();
    if g2.order() != n {
        return Err(Error::InvalidPartition(format!(
            "graphs have {} and {} vertices",
            n,
            g2.order()
        )));
    }
    let partition = Partition::new(n, vec![v1.to_vec(), v2.to_vec()])?;
    if n > 20 {
        return Err(Error::InvalidPartition("subset enumeration limited to 20 vertices".into()));
    }
    let in_v1: Vec<bool> = (0..n).map(|v| partition.classes()[0].contains(&v)).collect();
    let sums = |g: &Graph| {
        let mut acc: BTreeMap<(usize, usize), IntPolynomial> = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let k = subset.iter().filter(|&&v| in_v1[v]).count();
            let sub = g.induced(&subset);
            let m = sub.order();
            let entries: Vec<i64> = (0..m * m)
                .map(|i| i64::from(i / m != i % m && sub.has_edge(i / m, i % m)))
                .collect();
            let p = charpoly_small(m, &entries);
            *acc.entry((k, m - k)).or_insert_with(IntPolynomial::zero) += &p;
        }
        acc
    };
    Ok(sums(g1) == sums(g2))
}

/// Connected rooted graphs on `1..=max_order` vertices up to rooted
/// isomorphism, ordered by vertex count, edge count, then graph6 code (of
/// the lexicographically smallest labeling with the root at vertex `0`).
pub fn small_rooted_graphs(max_order: usize) -> Vec<RootedGraph> {
    assert!(max_order <= 6, "rooted enumeration is exhaustive over labelings");
    let mut out: Vec<(usize, usize, String, RootedGraph)> = Vec::new();
    for n in 1..=max_order {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let mut g = Graph::empty(n);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.set_edge(u, v, true);
                }
            }
            if !g.is_connected() {
                continue;
            }
            let code = rooted_canonical_code(&g);
            if seen.insert(code.clone()) {
                // stored in its canonical labeling, so its code is `code`
                let canonical = decode_graph6(&code).expect("encoder output decodes");
                let rooted = RootedGraph::new(canonical, 0).expect("root in range");
                out.push((n, g.edge_count(), code, rooted));
            }
        }
    }
    out.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    out.into_iter().map(|t| t.3).collect()
}

/// Smallest graph6 code over relabelings that keep vertex `0` fixed.
pub fn rooted_canonical_code(g: &Graph) -> String {
    let n = g.order();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<String> = None;
    permute(&mut rest, 0, &mut |p| {
        let mut perm = vec![0; n];
        for (i, &v) in p.iter().enumerate() {
            perm[v] = i + 1;
        }
        let code = encode_graph6(&g.relabeled(&perm));
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_else(|| encode_graph6(g))
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// An attachment whose coalescing breaks cospectrality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreakingAttachment {
    /// graph6 code of `H`, root at vertex `0`.
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub verdict: CospectralVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachmentSearch {
    /// 0-based vertices that received a copy of `H`.
    pub targets: Vec<usize>,
    pub max_order: usize,
    pub examined: usize,
    /// First breaking `H` in search order, or `None` if every candidate
    /// preserved cospectrality.
    pub found: Option<BreakingAttachment>,
}

/// Coalesces each small rooted `H` (in [`small_rooted_graphs`] order) onto
/// every vertex of `targets` in both graphs and reports the first `H` whose
/// coalesced pair is not `kind`-cospectral.
pub fn find_breaking_attachment(
    g1: &Graph,
    g2: &Graph,
    targets: &[usize],
    kind: &MatrixKind,
    max_order: usize,
) -> Result<AttachmentSearch> {
    let n = g1.order();
    let rest: Vec<usize> = (0..n).filter(|v| !targets.contains(v)).collect();
    let mut classes = vec![targets.to_vec()];
    if !rest.is_empty() {
        classes.push(rest);
    }
    let partition = Partition::new(n, classes)?;
    let mut examined = 0;
    for h in small_rooted_graphs(max_order) {
        if h.is_trivial() {
            continue;
        }
        examined += 1;
        let mut attachments = vec![h.clone()];
        if partition.len() == 2 {
            attachments.push(RootedGraph::trivial());
        }
        let verdict = verify_coalesced_cospectral(g1, g2, &partition, &attachments, kind)?;
        if !verdict.equal {
            return Ok(AttachmentSearch {
                targets: targets.to_vec(),
                max_order,
                examined,
                found: Some(BreakingAttachment {
                    graph6: encode_graph6(h.graph()),
                    order: h.order(),
                    edges: h.graph().edge_count(),
                    verdict,
                }),
            });
        }
    }
    Ok(AttachmentSearch {
        targets: targets.to_vec(),
        max_order,
        examined,
        found: None,
    })
}

/// Searches rooted connected `H` on at most four vertices that, coalesced
/// onto every vertex of both graphs, break distance-cospectrality.
pub fn conjecture_counterexample_check(g1: &Graph, g2: &Graph) -> Result<AttachmentSearch> {
    let all: Vec<usize> = (0..g1.order()).collect();
    find_breaking_attachment(g1, g2, &all, &MatrixKind::Distance, 4)
}

/// First table `f(0), ..., f(d)` with entries from `values`, in
/// lexicographic order, for which the graphs are not `D^f`-cospectral;
/// `d` is the larger diameter.
pub fn find_distinguishing_table(g1: &Graph, g2: &Graph, values: &[i64]) -> Result<Option<DistanceFunction>> {
    let diam = |g: &Graph| {
        let d = g.all_pairs_distances();
        if d.is_connected() {
            Ok(d.diameter().unwrap_or(0))
        } else {
            Err(Error::NotConnected)
        }
    };
    let len = diam(g1)?.max(diam(g2)?) as usize + 1;
    if values.is_empty() {
        return Ok(None);
    }
    let mut digits = vec![0usize; len];
    loop {
        let table = DistanceFunction::Table(digits.iter().map(|&i| rat(values[i])).collect());
        let kind = MatrixKind::GeneralizedDistance(table.clone());
        if !cospectral(g1, g2, &kind)?.equal {
            return Ok(Some(table));
        }
        // odometer, last position fastest
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < values.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Compares BFS distances of `coalesce(spec)` with the closed form
///
/// * same class, same base vertex: `dist_H(j1, j2)`;
/// * otherwise: `dist_G(u, v) + dist_H(root, j1) + dist_H(root, j2)`.
pub fn shift_lemma_oracle(spec: &CoalescingSpec) -> Result<bool> {
    let base = spec.base.all_pairs_distances();
    if !base.is_connected() {
        return Err(Error::NotConnected);
    }
    let h: Vec<_> = spec
        .attachments
        .iter()
        .map(|a| a.graph().all_pairs_distances())
        .collect();
    if h.iter().any(|d| !d.is_connected()) {
        return Err(Error::NotConnected);
    }
    let coalesced = coalesce(spec);
    let bfs = coalesced.graph.all_pairs_distances();
    let classes = spec.partition.classes();
    for (x, a) in coalesced.labels.iter().enumerate() {
        for (y, b) in coalesced.labels.iter().enumerate() {
            let expected = if a.class == b.class && a.pos == b.pos {
                h[a.class].raw(a.attach, b.attach)
            } else {
                base.raw(classes[a.class][a.pos], classes[b.class][b.pos])
                    + h[a.class].raw(0, a.attach)
                    + h[b.class].raw(0, b.attach)
            };
            if bfs.raw(x, y) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_graph_counts() {
        // rooted connected graphs on 1, 2, 3, 4 vertices: 1, 1, 3, 11
        let counts: Vec<usize> = (1..=4)
            .map(|n| small_rooted_graphs(n).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
        let list = small_rooted_graphs(3);
        assert!(list[0].is_trivial());
        assert_eq!(list[1].graph(), &Graph::path(2));
        assert_eq!(list[4].graph(), &Graph::complete(3));
    }

    #[test]
    fn cospectral_is_reflexive_and_symmetric() {
        let a = decode_graph6("F{|Xw").unwrap();
        let b = decode_graph6("FzE}w").unwrap();
        assert!(cospectral(&a, &a, &MatrixKind::adjacency()).unwrap().equal);
        let ab = cospectral(&a, &b, &MatrixKind::Distance).unwrap();
        let ba = cospectral(&b, &a, &MatrixKind::Distance).unwrap();
        assert!(ab.equal && ba.equal);
        assert!(!cospectral(&Graph::path(3), &Graph::path(4), &MatrixKind::adjacency()).unwrap().equal);
    }

    #[test]
    fn butler_condition_is_split_sensitive() {
        let a = decode_graph6("F@AMw").unwrap();
        let b = decode_graph6("F@AZg").unwrap();
        assert!(butler_condition(&a, &b, &[0, 1, 2], &[3, 4, 5, 6]).unwrap());
        assert!(!butler_condition(&a, &b, &[0, 1], &[2, 3, 4, 5, 6]).unwrap());
        assert!(butler_condition(&a, &a, &[0], &[1, 2, 3, 4, 5, 6]).unwrap());
        assert!(butler_condition(&a, &b, &[0, 1], &[3, 4, 5, 6]).is_err());
    }

    #[test]
    fn identical_graphs_never_break() {
        let g = decode_graph6("F{|Xw").unwrap();
        let search = conjecture_counterexample_check(&g, &g).unwrap();
        assert_eq!(search.found, None);
        assert_eq!(search.examined, 15);
    }
}
