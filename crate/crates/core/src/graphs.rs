//! Simple undirected graphs, BFS distances, and coalescing.
//!
//! A coalesced graph `G ⊙ V_i H_i` is laid out in lexicographic `(i, j, k)`
//! order: class `i` of the partition, vertex `j` of the attached rooted graph
//! (`j = 0` is the root, i.e. the base vertex itself), and position `k` of
//! the base vertex inside its class. Every matrix built from a coalesced graph
//! uses this row/column order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker used in [`Distances`] for pairs in different components.
pub const INFINITE: u32 = u32::MAX;

/// A simple undirected graph on vertices `0..n` stored as adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v, true);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.set_edge(0, n - 1, true);
        }
        g
    }

    /// Star with center `0` and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(0, v, true);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Sets or clears the edge `{u, v}`. Panics on a self-loop or an
    /// out-of-range vertex.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "self-loops are not allowed");
        let (wu, bu) = (u / 64, 1u64 << (u % 64));
        let (wv, bv) = (v / 64, 1u64 << (v % 64));
        if present {
            self.bits[u * self.words + wv] |= bv;
            self.bits[v * self.words + wu] |= bu;
        } else {
            self.bits[u * self.words + wv] &= !bv;
            self.bits[v * self.words + wu] &= !bu;
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Subgraph induced on `vertices`, relabeled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(a, b, true);
                }
            }
        }
        g
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![0u64; self.words];
        seen[0] |= 1;
        let mut frontier = seen.clone();
        let mut count = 1;
        loop {
            let mut next = vec![0u64; self.words];
            for u in iter_bits(&frontier) {
                for (w, r) in next.iter_mut().zip(self.row(u)) {
                    *w |= r;
                }
            }
            let mut grew = false;
            for (nw, sw) in next.iter_mut().zip(seen.iter_mut()) {
                *nw &= !*sw;
                if *nw != 0 {
                    grew = true;
                    count += nw.count_ones() as usize;
                    *sw |= *nw;
                }
            }
            if !grew {
                return count == self.n;
            }
            frontier = next;
        }
    }

    /// BFS distances from `source`; unreachable vertices get [`INFINITE`].
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![INFINITE; self.n];
        let mut seen = vec![0u64; self.words];
        dist[source] = 0;
        seen[source / 64] |= 1 << (source % 64);
        let mut frontier = seen.clone();
        let mut level = 0;
        loop {
            level += 1;
            let mut next = vec![0u64; self.words];
            for u in iter_bits(&frontier) {
                for (w, r) in next.iter_mut().zip(self.row(u)) {
                    *w |= r;
                }
            }
            let mut grew = false;
            for (nw, sw) in next.iter_mut().zip(seen.iter_mut()) {
                *nw &= !*sw;
                *sw |= *nw;
                grew |= *nw != 0;
            }
            if !grew {
                return dist;
            }
            for v in iter_bits(&next) {
                dist[v] = level;
            }
            frontier = next;
        }
    }

    pub fn all_pairs_distances(&self) -> Distances {
        let mut d = Vec::with_capacity(self.n * self.n);
        for u in 0..self.n {
            d.extend(self.bfs(u));
        }
        Distances { n: self.n, d }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// All-pairs shortest path lengths. Pairs in different components hold
/// [`INFINITE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances {
    n: usize,
    d: Vec<u32>,
}

impl Distances {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `None` for pairs in different components.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let x = self.d[u * self.n + v];
        (x != INFINITE).then_some(x)
    }

    #[inline]
    pub fn raw(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn is_connected(&self) -> bool {
        !self.d.contains(&INFINITE)
    }

    /// Largest finite distance, or `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        if self.is_connected() {
            Some(self.d.iter().copied().max().unwrap_or(0))
        } else {
            None
        }
    }

    /// Finite distance table, failing with `NotConnected` on any infinite
    /// entry.
    pub fn finite(&self) -> Result<Vec<Vec<u32>>> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.d.chunks(self.n.max(1)).take(self.n).map(<[u32]>::to_vec).collect())
    }
}

/// Graph whose edges join the vertices at distance exactly `t` in `g`.
pub fn distance_t_graph(g: &Graph, t: u32) -> Result<Graph> {
    union_distance_graphs(g, &BTreeSet::from([t]))
}

/// Graph whose edges join the vertices whose distance in `g` lies in `ts`.
/// Distance `0` never produces an edge.
pub fn union_distance_graphs(g: &Graph, ts: &BTreeSet<u32>) -> Result<Graph> {
    let dist = g.all_pairs_distances();
    if !dist.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.order();
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if ts.contains(&dist.raw(u, v)) {
                out.set_edge(u, v, true);
            }
        }
    }
    Ok(out)
}

/// Ordered vertex partition `V_1, ..., V_l`; each class is kept sorted
/// increasingly, which fixes the position index `k` inside a class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidPartition("no classes".into()));
        }
        let mut seen = vec![false; n];
        let mut classes = classes;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            class.sort_unstable();
            for &v in class.iter() {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {} out of range for {n} vertices",
                        v + 1
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {} appears twice",
                        v + 1
                    )));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "vertex {} not covered",
                v + 1
            )));
        }
        Ok(Partition { classes })
    }

    /// A single class holding every vertex.
    pub fn whole(n: usize) -> Self {
        Partition {
            classes: vec![(0..n).collect()],
        }
    }

    /// Each listed vertex as its own singleton class (in the given order),
    /// followed by one class with the remaining vertices, if any.
    pub fn singletons_then_rest(n: usize, singles: &[usize]) -> Result<Self> {
        let mut classes: Vec<Vec<usize>> = singles.iter().map(|&v| vec![v]).collect();
        let rest: Vec<usize> = (0..n).filter(|v| !singles.contains(v)).collect();
        if !rest.is_empty() {
            classes.push(rest);
        }
        Partition::new(n, classes)
    }

    /// Parses 1-based class lists: classes separated by `;`, vertices within a
    /// class by `,`. `"1;2;3;4,5,6,7"` is `{1},{2},{3},{4,5,6,7}`.
    pub fn parse_one_based(n: usize, text: &str) -> Result<Self> {
        let mut classes = Vec::new();
        for part in text.split(';') {
            let mut class = Vec::new();
            for tok in part.split(',') {
                let tok = tok.trim();
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex index {tok:?}")))?;
                if v == 0 {
                    return Err(Error::InvalidPartition("vertex indices are 1-based".into()));
                }
                class.push(v - 1);
            }
            classes.push(class);
        }
        Partition::new(n, classes)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Vertices in class-major order; the row order of block matrices
    /// aligned to this partition.
    pub fn flattened(&self) -> Vec<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn to_one_based(&self) -> String {
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// A graph with a distinguished root, stored with the root at index `0` and
/// the remaining vertices in their original relative order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    graph: Graph,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        let n = graph.order();
        if root >= n {
            return Err(Error::InvalidGraph(format!(
                "root {root} out of range for {n} vertices"
            )));
        }
        let mut perm = vec![0; n];
        for v in 0..n {
            perm[v] = match v.cmp(&root) {
                std::cmp::Ordering::Less => v + 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => v,
            };
        }
        Ok(RootedGraph {
            graph: graph.relabeled(&perm),
        })
    }

    /// `K_1`; attaching it changes nothing.
    pub fn trivial() -> Self {
        RootedGraph {
            graph: Graph::empty(1),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.order() == 1
    }
}

/// Base graph, partition of its vertices, and one rooted graph per class.
#[derive(Clone, Debug)]
pub struct CoalescingSpec {
    pub base: Graph,
    pub partition: Partition,
    pub attachments: Vec<RootedGraph>,
}

impl CoalescingSpec {
    pub fn new(base: Graph, partition: Partition, attachments: Vec<RootedGraph>) -> Result<Self> {
        if partition.order() != base.order() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, base graph has {}",
                partition.order(),
                base.order()
            )));
        }
        if attachments.len() != partition.len() {
            return Err(Error::InvalidPartition(format!(
                "{} attachments for {} classes",
                attachments.len(),
                partition.len()
            )));
        }
        Ok(CoalescingSpec {
            base,
            partition,
            attachments,
        })
    }

    /// Every class gets `K_1`.
    pub fn trivial(base: Graph, partition: Partition) -> Self {
        let attachments = vec![RootedGraph::trivial(); partition.len()];
        CoalescingSpec {
            base,
            partition,
            attachments,
        }
    }

    /// Same partition and attachments on a different base graph.
    pub fn with_base(&self, base: Graph) -> Result<Self> {
        CoalescingSpec::new(base, self.partition.clone(), self.attachments.clone())
    }

    pub fn layout(&self) -> BlockLayout {
        BlockLayout::new(
            self.partition.sizes(),
            self.attachments.iter().map(RootedGraph::order).collect(),
        )
    }
}

/// Offsets of the `i:j` blocks of a coalesced graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    class_sizes: Vec<usize>,
    attach_sizes: Vec<usize>,
    class_start: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    pub fn new(class_sizes: Vec<usize>, attach_sizes: Vec<usize>) -> Self {
        let mut class_start = Vec::with_capacity(class_sizes.len());
        let mut total = 0;
        for (s, h) in class_sizes.iter().zip(&attach_sizes) {
            class_start.push(total);
            total += s * h;
        }
        BlockLayout {
            class_sizes,
            attach_sizes,
            class_start,
            total,
        }
    }

    pub fn classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.class_sizes[i]
    }

    pub fn attach_size(&self, i: usize) -> usize {
        self.attach_sizes[i]
    }

    /// First row of block `i:j` (0-based `i`, `j`).
    #[inline]
    pub fn offset(&self, i: usize, j: usize) -> usize {
        self.class_start[i] + j * self.class_sizes[i]
    }

    #[inline]
    pub fn index(&self, label: VertexLabel) -> usize {
        self.offset(label.class, label.attach) + label.pos
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Labels of all vertices in row order.
    pub fn labels(&self) -> Vec<VertexLabel> {
        let mut out = Vec::with_capacity(self.total);
        for (class, (&s, &h)) in self.class_sizes.iter().zip(&self.attach_sizes).enumerate() {
            for attach in 0..h {
                for pos in 0..s {
                    out.push(VertexLabel { class, attach, pos });
                }
            }
        }
        out
    }
}

/// Position `i:j:k` of a vertex in a coalesced graph, stored 0-based and
/// displayed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    pub class: usize,
    pub attach: usize,
    pub pos: usize,
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.class + 1, self.attach + 1, self.pos + 1)
    }
}

/// A coalesced graph together with the label of each vertex.
#[derive(Clone, Debug)]
pub struct Coalesced {
    pub graph: Graph,
    pub labels: Vec<VertexLabel>,
}

/// Glues a fresh copy of `H_i` onto every vertex of `V_i`, identifying the
/// copy's root with that vertex.
pub fn coalesce(spec: &CoalescingSpec) -> Coalesced {
    let layout = spec.layout();
    let classes = spec.partition.classes();
    let mut place = vec![(0, 0); spec.base.order()];
    for (i, class) in classes.iter().enumerate() {
        for (k, &v) in class.iter().enumerate() {
            place[v] = (i, k);
        }
    }
    let mut g = Graph::empty(layout.total());
    for (u, v) in spec.base.edges() {
        let (iu, ku) = place[u];
        let (iv, kv) = place[v];
        g.set_edge(layout.offset(iu, 0) + ku, layout.offset(iv, 0) + kv, true);
    }
    for (i, h) in spec.attachments.iter().enumerate() {
        for (a, b) in h.graph().edges() {
            for k in 0..layout.class_size(i) {
                g.set_edge(layout.offset(i, a) + k, layout.offset(i, b) + k, true);
            }
        }
    }
    Coalesced {
        graph: g,
        labels: layout.labels(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coalescing_base() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn path_distances() {
        let d = Graph::path(3).all_pairs_distances().finite().unwrap();
        assert_eq!(d, vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]);
        assert_eq!(Graph::empty(1).all_pairs_distances().finite().unwrap(), vec![vec![0]]);
    }

    #[test]
    fn disconnected_distances_are_infinite() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let d = g.all_pairs_distances();
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.raw(2, 1), INFINITE);
        assert_eq!(d.diameter(), None);
        assert_eq!(d.finite(), Err(Error::NotConnected));
        assert!(!g.is_connected());
    }

    #[test]
    fn coalescing_base_distance_table() {
        let d = coalescing_base().all_pairs_distances().finite().unwrap();
        let expected = vec![
            vec![0, 1, 2, 3, 4, 4],
            vec![1, 0, 1, 2, 3, 3],
            vec![2, 1, 0, 1, 2, 2],
            vec![3, 2, 1, 0, 1, 1],
            vec![4, 3, 2, 1, 0, 1],
            vec![4, 3, 2, 1, 1, 0],
        ];
        assert_eq!(d, expected);
    }

    #[test]
    fn distance_t_graph_of_path() {
        let p3 = Graph::path(3);
        let g2 = distance_t_graph(&p3, 2).unwrap();
        assert_eq!(g2.edges(), vec![(0, 2)]);
        assert_eq!(distance_t_graph(&p3, 1).unwrap(), p3);
        assert_eq!(distance_t_graph(&p3, 0).unwrap(), Graph::empty(3));
        let disconnected = Graph::empty(2);
        assert_eq!(distance_t_graph(&disconnected, 1), Err(Error::NotConnected));
    }

    #[test]
    fn unions_of_distance_classes() {
        let p3 = Graph::path(3);
        assert_eq!(
            union_distance_graphs(&p3, &BTreeSet::from([1, 2])).unwrap(),
            Graph::complete(3)
        );
        assert_eq!(
            union_distance_graphs(&p3, &BTreeSet::from([2])).unwrap(),
            distance_t_graph(&p3, 2).unwrap()
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(matches!(
            Partition::new(3, vec![vec![0, 1], vec![1, 2]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(3, vec![vec![0, 1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(Partition::new(3, vec![]), Err(Error::InvalidPartition(_))));
        let p = Partition::parse_one_based(7, "1;2;3;7,5,6,4").unwrap();
        assert_eq!(p.classes()[3], vec![3, 4, 5, 6]);
        assert_eq!(p.to_one_based(), "1;2;3;4,5,6,7");
        assert!(Partition::parse_one_based(3, "0;1,2").is_err());
    }

    #[test]
    fn rooted_graph_moves_root_first() {
        // path 0-1-2 rooted at the middle becomes a star centred at 0
        let h = RootedGraph::new(Graph::path(3), 1).unwrap();
        assert_eq!(h.graph().edges(), vec![(0, 1), (0, 2)]);
        assert!(RootedGraph::new(Graph::path(3), 3).is_err());
    }

    #[test]
    fn coalescing_k2_with_pendant_paths() {
        // both vertices of K2 receive P2 rooted at an end
        let spec = CoalescingSpec::new(
            Graph::complete(2),
            Partition::whole(2),
            vec![RootedGraph::new(Graph::path(2), 0).unwrap()],
        )
        .unwrap();
        let c = coalesce(&spec);
        assert_eq!(c.graph.edges(), vec![(0, 1), (0, 2), (1, 3)]);
        assert_eq!(c.labels[3].to_string(), "1:2:2");
    }

    #[test]
    fn trivial_coalescing_reorders_base() {
        let base = coalescing_base();
        let partition = Partition::new(6, vec![vec![4, 5], vec![0, 1, 2], vec![3]]).unwrap();
        let c = coalesce(&CoalescingSpec::trivial(base.clone(), partition.clone()));
        let order = partition.flattened();
        let mut perm = vec![0; 6];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        assert_eq!(c.graph, base.relabeled(&perm));
    }

    #[test]
    fn coalesced_counts_match_closed_form() {
        let base = coalescing_base();
        let partition = Partition::new(6, vec![vec![0, 1, 2], vec![3], vec![4, 5]]).unwrap();
        let hs = vec![
            RootedGraph::new(Graph::path(3), 0).unwrap(),
            RootedGraph::trivial(),
            RootedGraph::new(Graph::complete(3), 0).unwrap(),
        ];
        let spec = CoalescingSpec::new(base.clone(), partition.clone(), hs.clone()).unwrap();
        let c = coalesce(&spec);
        assert_eq!(c.graph.order(), 16);
        let sizes = partition.sizes();
        let edges: usize = base.edge_count()
            + sizes.iter().zip(&hs).map(|(s, h)| s * h.graph().edge_count()).sum::<usize>();
        assert_eq!(c.graph.edge_count(), edges);
    }

    #[test]
    fn complement_and_induced() {
        let p4 = Graph::path(4);
        assert_eq!(p4.complement().edges(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(p4.induced(&[3, 2, 1]).edges(), vec![(0, 1), (1, 2)]);
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
    }
}
