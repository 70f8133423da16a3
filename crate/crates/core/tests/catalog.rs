//! Printed witnesses against the computed solution spaces.

use cospectral::catalog::{self, PrintedWitness};
use cospectral::codec::decode_graph6;
use cospectral::exact::ExactMatrix;
use cospectral::graphs::{Graph, RootedGraph};
use cospectral::matrices::MatrixKind;
use cospectral::search::mine_cospectral;
use cospectral::similarity::{check_similarity, in_solution_space, solution_space};
use cospectral::verify::{verify_coalesced_cospectral, verify_extended_similarity};

fn printed() -> Vec<(&'static str, PrintedWitness)> {
    let mut all = vec![
        ("mckay", catalog::mckay_witness()),
        ("heysse", catalog::heysse_witness()),
        ("three-class", catalog::three_class_witness()),
    ];
    let [a, b] = catalog::dual_structure_witnesses();
    all.push(("dual A", a));
    all.push(("dual B", b));
    all
}

#[test]
fn printed_matrices_lie_in_the_solution_space() {
    for (name, w) in printed() {
        let prob = w.problem(MatrixKind::Distance).unwrap().with_sj_eq_js();
        let s = w.similarity().unwrap();
        assert!(in_solution_space(&s, &prob).unwrap(), "{name}");
        assert!(!solution_space(&prob).unwrap().is_empty(), "{name}");
    }
    let w = catalog::distance_union_witness();
    let prob = w.problem(MatrixKind::Distance).unwrap().with_simultaneous();
    assert!(in_solution_space(&w.similarity().unwrap(), &prob).unwrap());
}

/// One printed matrix serves every seven-vertex pair, the exception
/// included: it satisfies SJ = JS but is not a simultaneous witness there.
#[test]
fn seven_vertex_printed_matrix() {
    for pair in catalog::SEVEN_VERTEX_PAIRS {
        let w = catalog::seven_vertex_witness(pair);
        let prob = w.problem(MatrixKind::Distance).unwrap().with_sj_eq_js();
        let s = w.similarity().unwrap();
        check_similarity(&s, &prob).unwrap();
        assert!(in_solution_space(&s, &prob).unwrap());
        let simultaneous = w.problem(MatrixKind::Distance).unwrap().with_simultaneous();
        assert_eq!(check_similarity(&s, &simultaneous).is_ok(), pair != catalog::SEVEN_VERTEX_EXCEPTION, "{pair:?}");
    }
}

#[test]
fn printed_matrices_fail_in_the_wrong_orientation() {
    let w = catalog::mckay_witness();
    let prob = w.problem(MatrixKind::Distance).unwrap().swapped();
    assert!(check_similarity(&w.similarity().unwrap(), &prob).is_err());
}

#[test]
fn heysse_similarity_extends_with_a_path_on_the_large_class() {
    let w = catalog::heysse_witness();
    let prob = w.problem(MatrixKind::Distance).unwrap().with_sj_eq_js();
    let s = w.similarity().unwrap();
    let p3 = RootedGraph::new(Graph::path(3), 0).unwrap();
    let attachments = vec![RootedGraph::trivial(), RootedGraph::trivial(), p3];
    let witness = verify_extended_similarity(&s, &prob, &attachments, &MatrixKind::Distance).unwrap();
    assert_eq!(witness.s.blocks().len(), 5);
    assert!(witness.certificate.sj_eq_js);
    let v = verify_coalesced_cospectral(&prob.g1, &prob.g2, &prob.partition, &attachments, &MatrixKind::Distance)
        .unwrap();
    assert!(v.equal);
}

#[test]
fn coalescing_base_matches_its_table() {
    let rows: Vec<Vec<u8>> = catalog::COALESCING_BASE_DISTANCES.iter().map(|r| r.to_vec()).collect();
    let d = cospectral::matrices::build_matrix(&catalog::coalescing_base(), &MatrixKind::Distance).unwrap();
    assert_eq!(d, ExactMatrix::from_int_rows(&rows));
}

#[test]
fn census_report_json_schema() {
    let graphs: Vec<Graph> = catalog::SEVEN_VERTEX_PAIRS[..2]
        .iter()
        .flat_map(|&(a, b)| [decode_graph6(a).unwrap(), decode_graph6(b).unwrap()])
        .chain([decode_graph6("F??F?").unwrap()])
        .collect();
    let report = mine_cospectral(graphs, &MatrixKind::Distance).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 7);
    assert_eq!(v["kind"], "dist");
    assert_eq!(v["skipped_disconnected"], 1);
    assert_eq!(v["pair_count"], 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 2);
    assert_eq!(v["pairs"][0].as_array().unwrap().len(), 2);
    assert!(v["sjjs_negative"].as_array().unwrap().is_empty());
}
