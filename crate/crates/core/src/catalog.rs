//! Published examples: graph6 codes, vertex partitions (1-based, `;`
//! between classes) and the printed similarity matrices.
//!
//! Vertex `k` in a partition is vertex `k - 1` of the decoded graph6 code.
//! The printed matrices satisfy `S M(second) = M(first) S`, so
//! [`PrintedWitness::problem`] poses the problem with the second graph as
//! `g1`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::codec::decode_graph6;
use crate::error::Result;
use crate::exact::{BlockSimilarity, ExactMatrix};
use crate::graphs::{Graph, Partition, RootedGraph};
use crate::matrices::MatrixKind;
use crate::similarity::SimilarityProblem;

/// Base graph used to illustrate coalescing on three classes.
pub fn coalescing_base() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).expect("valid edges")
}

pub const COALESCING_PARTITION: &str = "1,2,3;4;5,6";

/// `P3` rooted at an end, `K1`, `K3`.
pub fn coalescing_attachments() -> Vec<RootedGraph> {
    vec![
        RootedGraph::new(Graph::path(3), 0).expect("root in range"),
        RootedGraph::trivial(),
        RootedGraph::new(Graph::complete(3), 0).expect("root in range"),
    ]
}

pub const COALESCING_BASE_DISTANCES: [[u8; 6]; 6] = [
    [0, 1, 2, 3, 4, 4],
    [1, 0, 1, 2, 3, 3],
    [2, 1, 0, 1, 2, 2],
    [3, 2, 1, 0, 1, 1],
    [4, 3, 2, 1, 0, 1],
    [4, 3, 2, 1, 1, 0],
];

/// Distance matrix of the coalesced 16-vertex graph in `(i, j, k)` order.
pub const COALESCED_DISTANCES: [[u8; 16]; 16] = [
    [0, 1, 2, 1, 2, 3, 2, 3, 4, 3, 4, 4, 5, 5, 5, 5],
    [1, 0, 1, 2, 1, 2, 3, 2, 3, 2, 3, 3, 4, 4, 4, 4],
    [2, 1, 0, 3, 2, 1, 4, 3, 2, 1, 2, 2, 3, 3, 3, 3],
    [1, 2, 3, 0, 3, 4, 1, 4, 5, 4, 5, 5, 6, 6, 6, 6],
    [2, 1, 2, 3, 0, 3, 4, 1, 4, 3, 4, 4, 5, 5, 5, 5],
    [3, 2, 1, 4, 3, 0, 5, 4, 1, 2, 3, 3, 4, 4, 4, 4],
    [2, 3, 4, 1, 4, 5, 0, 5, 6, 5, 6, 6, 7, 7, 7, 7],
    [3, 2, 3, 4, 1, 4, 5, 0, 5, 4, 5, 5, 6, 6, 6, 6],
    [4, 3, 2, 5, 4, 1, 6, 5, 0, 3, 4, 4, 5, 5, 5, 5],
    [3, 2, 1, 4, 3, 2, 5, 4, 3, 0, 1, 1, 2, 2, 2, 2],
    [4, 3, 2, 5, 4, 3, 6, 5, 4, 1, 0, 1, 1, 2, 1, 2],
    [4, 3, 2, 5, 4, 3, 6, 5, 4, 1, 1, 0, 2, 1, 2, 1],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 1, 2, 0, 3, 1, 3],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 2, 1, 3, 0, 3, 1],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 1, 2, 1, 3, 0, 3],
    [5, 4, 3, 6, 5, 4, 7, 6, 5, 2, 2, 1, 3, 1, 3, 0],
];

/// Adjacency-cospectral after coalescing any `H1`, `H2` on the two classes,
/// though no block similarity exists.
pub const BUTLER_PAIR: (&str, &str) = ("F@AMw", "F@AZg");
pub const BUTLER_PARTITION: &str = "1,2,3;4,5,6,7";

pub const MCKAY_PAIR: (&str, &str) = ("O@?KAC@?G?t?O???_?G?A", "O@I?GC@PD?G??@??_?_?@");
/// Published with a trailing `!`, which is not part of a 10-vertex code.
pub const HEYSSE_PAIR: (&str, &str) = ("ItNPaGCI_", "ItJ`A?TI_");
pub const THREE_CLASS_PAIR: (&str, &str) = ("GNKutO", "GB}XV_");
pub const THREE_CLASS_PARTITION: &str = "1;2;3,4,5,6,7,8";
pub const FOUR_CLASS_PARTITION: &str = "1;2;3,4,5;6,7,8";

/// Every non-isomorphic distance-cospectral pair on seven vertices.
pub const SEVEN_VERTEX_PAIRS: [(&str, &str); 11] = [
    ("F{|Xw", "FzE}w"),
    ("FBnWw", "FCS~w"),
    ("F^UXw", "FWl}w"),
    ("FM]ww", "FHd^w"),
    ("FVSsW", "FOnRW"),
    ("FEhwo", "F@Q^o"),
    ("FfUPW", "F_luW"),
    ("FyJ{o", "F|oZo"),
    ("F^UPW", "FWluW"),
    ("FndPW", "Fg]uW"),
    ("FqyWo", "Ft@]o"),
];
/// The seven-vertex pair that is not cospectral for every `D^f`.
pub const SEVEN_VERTEX_EXCEPTION: (&str, &str) = ("FqyWo", "Ft@]o");
pub const SEVEN_VERTEX_PARTITION: &str = "1;2;3;4,5,6,7";

/// Nine-vertex distance-cospectral pairs with no similarity commuting
/// with `J`.
pub const NINE_VERTEX_SJJS_NEGATIVE: [(&str, &str); 8] = [
    ("H?BF~z~", "H?Bvfn~"),
    ("HCXjZ^~", "HCdcv~~"),
    ("H?`@f~~", "H?`E]^~"),
    ("H?BDzz~", "H?`E^~}"),
    ("H?`Ffz~", "H?`E^~}"),
    ("H??EF~}", "H??Ffb~"),
    ("H?ze||~", "HCpV~z^"),
    ("H??EFbN", "H?ABBBz"),
];

/// A pair with two similarities of different block structure.
pub const DUAL_STRUCTURE_PAIR: (&str, &str) = ("GE{SZW", "GEBb{w");
pub const DUAL_STRUCTURE_PARTITION_A: &str = "1;2;3;4;5,6,7,8";
pub const DUAL_STRUCTURE_PARTITION_B: &str = "1,2,3,4,5,6,7;8";

/// Cospectral for every `D^f`; unions of distance graphs stay cospectral.
pub const DISTANCE_UNION_PAIR: (&str, &str) = ("JCO_?c]@_S?", "JCO_?sAB_k?");
pub const DISTANCE_UNION_PARTITION: &str = "1;2;3;4;5;6;7;8,9,10,11";

/// A printed block similarity together with the pair and partition it is
/// stated for.
#[derive(Clone, Debug)]
pub struct PrintedWitness {
    pub first: &'static str,
    pub second: &'static str,
    pub partition: &'static str,
    /// Each block as `(denominator, integer rows)`.
    pub blocks: Vec<(i64, Vec<Vec<i64>>)>,
}

fn one() -> (i64, Vec<Vec<i64>>) {
    (1, vec![vec![1]])
}

fn half_j_minus_2i() -> (i64, Vec<Vec<i64>>) {
    (2, (0..4).map(|r| (0..4).map(|c| if r == c { -1 } else { 1 }).collect()).collect())
}

impl PrintedWitness {
    pub fn graphs(&self) -> Result<(Graph, Graph)> {
        Ok((decode_graph6(self.first)?, decode_graph6(self.second)?))
    }

    pub fn partition(&self) -> Result<Partition> {
        let n = decode_graph6(self.first)?.order();
        Partition::parse_one_based(n, self.partition)
    }

    pub fn similarity(&self) -> Result<BlockSimilarity> {
        let blocks = self
            .blocks
            .iter()
            .map(|(den, rows)| {
                let n = rows.len();
                ExactMatrix::from_fn(n, n, |r, c| {
                    BigRational::new(BigInt::from(rows[r][c]), BigInt::from(*den))
                })
            })
            .collect();
        BlockSimilarity::new(self.partition()?, blocks)
    }

    /// `g1` = second graph, `g2` = first graph, so that the printed matrix
    /// is a solution.
    pub fn problem(&self, kind: MatrixKind) -> Result<SimilarityProblem> {
        let (a, b) = self.graphs()?;
        SimilarityProblem::new(b, a, self.partition()?, kind)
    }
}

pub fn mckay_witness() -> PrintedWitness {
    let rows = vec![
        vec![20, 7, 7, -15, 16, 1, 3, 2, 15, -2, -6, 0, 19, -14],
        vec![7, 21, 21, 8, -5, 3, 9, 6, -8, -6, 0, 0, -14, 11],
        vec![20, 7, 7, -15, 16, 1, 3, 2, 15, -2, 19, -14, -6, 0],
        vec![7, 21, 21, 8, -5, 3, 9, 6, -8, -6, -14, 11, 0, 0],
        vec![-2, -6, -6, 28, 9, -16, 5, 21, 25, -21, 2, 6, 2, 6],
        vec![15, -8, -8, 2, 12, 14, -11, 28, -2, 25, -15, 8, -15, 8],
        vec![-16, 5, 5, 12, 19, 31, -13, 9, -12, -9, 16, -5, 16, -5],
        vec![-1, -3, -3, 14, 31, -8, 29, -16, -14, 16, 1, 3, 1, 3],
        vec![-3, -9, -9, -11, -13, 29, 34, 5, 11, -5, 3, 9, 3, 9],
        vec![2, 6, 6, 25, -9, 16, -5, -21, 28, 21, -2, -6, -2, -6],
        vec![-15, 8, 8, -2, -12, -14, 11, 25, 2, 28, 15, -8, 15, -8],
        vec![33, -7, -7, 15, -16, -1, -3, -2, -15, 2, 20, 7, 20, 7],
        vec![-7, 0, 11, -8, 5, -3, -9, -6, 8, 6, 7, 21, 7, 21],
        vec![-7, 11, 0, -8, 5, -3, -9, -6, 8, 6, 7, 21, 7, 21],
    ];
    PrintedWitness {
        first: MCKAY_PAIR.0,
        second: MCKAY_PAIR.1,
        partition: "1;2;3,4,5,6,7,8,9,10,11,12,13,14,15,16",
        blocks: vec![one(), one(), (53, rows)],
    }
}

pub fn heysse_witness() -> PrintedWitness {
    let rows = vec![
        vec![5, 1, 2, 1, 2, 1, -3, -2],
        vec![-1, 4, 1, 4, 1, -3, 2, -1],
        vec![2, -1, 1, -1, 2, -1, 3, 2],
        vec![3, 2, -3, 2, -3, 2, 1, 3],
        vec![2, -1, 2, -1, 1, -1, 3, 2],
        vec![-1, -3, 1, 4, 1, 4, 2, -1],
        vec![-1, 4, 1, -3, 1, 4, 2, -1],
        vec![-2, 1, 2, 1, 2, 1, -3, 5],
    ];
    PrintedWitness {
        first: HEYSSE_PAIR.0,
        second: HEYSSE_PAIR.1,
        partition: "1;2;3,4,5,6,7,8,9,10",
        blocks: vec![one(), one(), (7, rows)],
    }
}

pub fn three_class_witness() -> PrintedWitness {
    let rows = vec![
        vec![0, 1, 1, -1, 1, 0],
        vec![1, 0, 1, 0, -1, 1],
        vec![1, 1, 0, 1, 0, -1],
        vec![1, 0, -1, 0, 1, 1],
        vec![-1, 1, 0, 1, 0, 1],
        vec![0, -1, 1, 1, 1, 0],
    ];
    PrintedWitness {
        first: THREE_CLASS_PAIR.0,
        second: THREE_CLASS_PAIR.1,
        partition: THREE_CLASS_PARTITION,
        blocks: vec![one(), one(), (2, rows)],
    }
}

pub fn seven_vertex_witness(pair: (&'static str, &'static str)) -> PrintedWitness {
    PrintedWitness {
        first: pair.0,
        second: pair.1,
        partition: SEVEN_VERTEX_PARTITION,
        blocks: vec![one(), one(), one(), half_j_minus_2i()],
    }
}

pub fn dual_structure_witnesses() -> [PrintedWitness; 2] {
    let rows = vec![
        vec![-1, 1, 1, 1, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 1, -1],
        vec![1, 0, 0, 1, 1, -1, 0],
        vec![1, 0, 1, 0, -1, 0, 1],
        vec![0, 0, -1, 1, 0, 1, 1],
        vec![0, -1, 1, 0, 1, 1, 0],
        vec![0, 1, 0, -1, 1, 0, 1],
    ];
    [
        PrintedWitness {
            first: DUAL_STRUCTURE_PAIR.0,
            second: DUAL_STRUCTURE_PAIR.1,
            partition: DUAL_STRUCTURE_PARTITION_A,
            blocks: vec![one(), one(), one(), one(), half_j_minus_2i()],
        },
        PrintedWitness {
            first: DUAL_STRUCTURE_PAIR.0,
            second: DUAL_STRUCTURE_PAIR.1,
            partition: DUAL_STRUCTURE_PARTITION_B,
            blocks: vec![(2, rows), one()],
        },
    ]
}

pub fn distance_union_witness() -> PrintedWitness {
    let rows = vec![
        vec![1, 1, -1, 1],
        vec![1, -1, 1, 1],
        vec![-1, 1, 1, 1],
        vec![1, 1, 1, -1],
    ];
    let mut blocks = vec![one(); 7];
    blocks.push((2, rows));
    PrintedWitness {
        first: DISTANCE_UNION_PAIR.0,
        second: DISTANCE_UNION_PAIR.1,
        partition: DISTANCE_UNION_PARTITION,
        blocks,
    }
}
