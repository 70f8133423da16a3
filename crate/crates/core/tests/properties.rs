use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use cospectral::codec::{decode_graph6, encode_graph6};
use cospectral::exact::{charpoly, determinant, rat, ExactMatrix};
use cospectral::graphs::{coalesce, CoalescingSpec, Graph, Partition, RootedGraph};
use cospectral::matrices::{build_matrix, characteristic_polynomial, shifted_block_matrix, MatrixKind};
use cospectral::random::{random_connected, random_partition, random_rooted, random_spec, random_table, seeded};
use cospectral::similarity::{
    check_similarity, extend_similarity, find_block_similarity, in_solution_space, normalized, SimilarityProblem,
};
use cospectral::verify::{butler_condition, cospectral, shift_lemma_oracle, verify_extended_similarity};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    g.set_edge(u, v, bits[k]);
                    k += 1;
                }
            }
            g
        })
    })
}

fn arb_matrix(max_n: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |entries| {
            let mut it = entries.into_iter();
            ExactMatrix::from_fn(n, n, |_, _| {
                let (p, q) = it.next().unwrap();
                BigRational::new(p.into(), q.into())
            })
        })
    })
}

fn random_kinds(seed: u64) -> Vec<MatrixKind> {
    let mut rng = seeded(seed);
    let q = BigRational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into());
    vec![
        MatrixKind::QLaplacian(q),
        MatrixKind::Distance,
        MatrixKind::GeneralizedDistance(random_table(40, -5, 5, &mut rng)),
    ]
}

/// A permutation of `0..n` mapping every class of `partition` onto itself.
fn class_preserving_permutation(partition: &Partition, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm = vec![0; partition.order()];
    for class in partition.classes() {
        let mut image = class.clone();
        image.shuffle(rng);
        for (&v, &w) in class.iter().zip(&image) {
            perm[v] = w;
        }
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        let code = encode_graph6(&g);
        prop_assert_eq!(decode_graph6(&code).unwrap(), g.clone());
        prop_assert_eq!(encode_graph6(&decode_graph6(&code).unwrap()), code);
    }

    #[test]
    fn charpoly_is_permutation_invariant(m in arb_matrix(7), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..m.rows()).collect();
        perm.shuffle(&mut seeded(seed));
        prop_assert_eq!(charpoly(&m).unwrap(), charpoly(&m.permuted(&perm)).unwrap());
    }

    #[test]
    fn charpoly_agrees_with_determinant(m in arb_matrix(6), x in -6i64..=6) {
        let n = m.rows();
        let xi = ExactMatrix::identity(n).scale(&rat(x));
        let det = determinant(&xi.checked_sub(&m).unwrap()).unwrap();
        prop_assert_eq!(charpoly(&m).unwrap().eval(&rat(x)), det);
    }

    #[test]
    fn graph_charpoly_invariant_under_relabeling(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(1..=8);
        let g = random_connected(n, 0.35, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        for kind in random_kinds(seed) {
            prop_assert!(cospectral(&g, &g.relabeled(&perm), &kind).unwrap().equal);
        }
    }

    #[test]
    fn shift_formula_matches_coalescing(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let spec = random_spec(7, 4, &mut rng);
        prop_assert!(shift_lemma_oracle(&spec).unwrap());
        let g = coalesce(&spec).graph;
        for kind in random_kinds(seed) {
            prop_assert_eq!(shifted_block_matrix(&spec, &kind).unwrap(), build_matrix(&g, &kind).unwrap());
        }
    }

    #[test]
    fn fast_charpoly_matches_exact(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let g = random_connected(rng.gen_range(1..=9), 0.3, &mut rng);
        for kind in random_kinds(seed) {
            let exact = charpoly(&build_matrix(&g, &kind).unwrap()).unwrap();
            prop_assert_eq!(characteristic_polynomial(&g, &kind).unwrap(), exact);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Relabeling within classes gives a permutation-matrix block
    /// similarity, so the search must succeed and its witness must extend.
    #[test]
    fn relabeled_pairs_have_extendable_witnesses(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=7);
        let g1 = random_connected(n, 0.35, &mut rng);
        let partition = random_partition(n, 3, &mut rng);
        let g2 = g1.relabeled(&class_preserving_permutation(&partition, &mut rng));
        let q = BigRational::new(rng.gen_range(-2..=2).into(), rng.gen_range(1..=2).into());
        let cases = [
            (MatrixKind::QLaplacian(q), false, false),
            (MatrixKind::Distance, true, false),
            (MatrixKind::Distance, false, true),
        ];
        for (kind, sjjs, simultaneous) in cases {
            let mut prob = SimilarityProblem::new(g1.clone(), g2.clone(), partition.clone(), kind.clone()).unwrap();
            if sjjs {
                prob = prob.with_sj_eq_js();
            }
            if simultaneous {
                prob = prob.with_simultaneous();
            }
            let search = find_block_similarity(&prob, seed, 16, 1000).unwrap();
            let w = search.witness().expect("a permutation matrix solves the system");
            prop_assert!(w.certificate.residual_zero);
            prop_assert!(in_solution_space(&w.s, &prob).unwrap());
            check_similarity(&normalized(&w.s), &prob).unwrap();
            let attachments: Vec<RootedGraph> =
                (0..partition.len()).map(|_| random_rooted(4, &mut rng)).collect();
            let check_kind = if simultaneous {
                MatrixKind::GeneralizedDistance(random_table(n + 9, -4, 4, &mut rng))
            } else {
                kind
            };
            verify_extended_similarity(&w.s, &prob, &attachments, &check_kind).unwrap();
        }
    }

    /// With a two-class block similarity for the adjacency matrix, the
    /// subset condition must hold.
    #[test]
    fn witness_implies_subset_condition(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=7);
        let g1 = random_connected(n, 0.4, &mut rng);
        let split = rng.gen_range(1..n);
        let partition = Partition::new(n, vec![(0..split).collect(), (split..n).collect()]).unwrap();
        let g2 = g1.relabeled(&class_preserving_permutation(&partition, &mut rng));
        let prob = SimilarityProblem::new(g1.clone(), g2.clone(), partition.clone(), MatrixKind::adjacency()).unwrap();
        prop_assert!(find_block_similarity(&prob, seed, 16, 1000).unwrap().is_witness());
        let v1: Vec<usize> = (0..split).collect();
        let v2: Vec<usize> = (split..n).collect();
        prop_assert!(butler_condition(&g1, &g2, &v1, &v2).unwrap());
    }

    /// Coalescing `K1` everywhere changes neither the graph nor `S`.
    #[test]
    fn trivial_attachments_leave_similarity_unchanged(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(1..=7);
        let g = random_connected(n, 0.4, &mut rng);
        let partition = random_partition(n, 3, &mut rng);
        let prob = SimilarityProblem::new(g.clone(), g.clone(), partition.clone(), MatrixKind::Distance).unwrap();
        let s = find_block_similarity(&prob, seed, 16, 1000).unwrap().witness().unwrap().s.clone();
        let mut class_major = vec![0; n];
        for (k, v) in partition.flattened().into_iter().enumerate() {
            class_major[v] = k;
        }
        let spec = CoalescingSpec::trivial(g.clone(), partition);
        prop_assert_eq!(coalesce(&spec).graph, g.relabeled(&class_major));
        let extended = extend_similarity(&s, &spec).unwrap();
        prop_assert_eq!(extended.blocks(), s.blocks());
        prop_assert_eq!(extended.partition().sizes(), s.partition().sizes());
    }
}
