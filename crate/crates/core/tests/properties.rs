//! Property tests for the sparse algebra, graph constructions, and format
//! round-trips.

mod common;

use graphbench_core::graph::{
    adjacency_from_incidence, build_adjacency, build_incidence, edge_list_from_incidence,
};
use graphbench_core::ingest::{normalize, parse_mmio, parse_tsv, write_mmio, write_tsv};
use graphbench_core::{EdgeList, Graph, SparseMatrix};
use proptest::prelude::*;

fn triplets(rows: usize, cols: usize) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    proptest::collection::vec((0..rows, 0..cols, -5i64..=5), 0..50)
}

fn matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
        triplets(r, c).prop_map(move |t| SparseMatrix::from_triplets(r, c, t).unwrap())
    })
}

fn matrix_pair() -> impl Strategy<Value = (SparseMatrix, SparseMatrix)> {
    (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
        (triplets(r, c), triplets(r, c)).prop_map(move |(ta, tb)| {
            (
                SparseMatrix::from_triplets(r, c, ta).unwrap(),
                SparseMatrix::from_triplets(r, c, tb).unwrap(),
            )
        })
    })
}

fn edge_list() -> impl Strategy<Value = EdgeList> {
    (2usize..25).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..50).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<(usize, usize)> = pairs
                .into_iter()
                .filter(|&(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            EdgeList::new(n, edges.into_iter().collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn transpose_is_an_involution(a in matrix()) {
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn hadamard_commutes(pair in matrix_pair()) {
        let (a, b) = pair;
        let ab = a.hadamard(&b).unwrap();
        ab.validate().unwrap();
        prop_assert_eq!(ab, b.hadamard(&a).unwrap());
    }

    #[test]
    fn identity_is_a_spgemm_unit(a in matrix()) {
        let i = SparseMatrix::identity(a.ncols());
        prop_assert_eq!(a.spgemm(&i).unwrap(), a);
    }

    #[test]
    fn add_inverts_subtract(pair in matrix_pair()) {
        let (a, b) = pair;
        let diff = b.subtract(&a).unwrap();
        diff.validate().unwrap();
        prop_assert_eq!(a.add(&diff).unwrap(), b);
    }

    #[test]
    fn op_outputs_satisfy_structural_invariants(pair in matrix_pair()) {
        let (a, b) = pair;
        a.add(&b).unwrap().validate().unwrap();
        a.subtract(&b).unwrap().validate().unwrap();
        a.hadamard(&b).unwrap().validate().unwrap();
        a.transpose().validate().unwrap();
        a.spgemm(&b.transpose()).unwrap().validate().unwrap();
        a.filter_eq(1).unwrap().validate().unwrap();
        let (l, u) = a.triangular_split();
        l.validate().unwrap();
        u.validate().unwrap();
    }

    #[test]
    fn adjacency_splits_into_transposed_triangles(e in edge_list()) {
        let a = build_adjacency(&e);
        let (l, u) = a.triangular_split();
        prop_assert_eq!(l.add(&u).unwrap(), a.clone());
        prop_assert_eq!(l.transpose(), u);
        prop_assert_eq!(a.nnz(), 2 * e.edge_count());
    }

    #[test]
    fn incidence_round_trips_to_edge_list(e in edge_list()) {
        let inc = build_incidence(&e);
        inc.validate().unwrap();
        prop_assert_eq!(edge_list_from_incidence(&inc).unwrap(), e);
    }

    #[test]
    fn tsv_round_trip_is_identity(e in edge_list()) {
        // TSV carries no vertex count, so pin n to the touched range.
        let n = e.edges().iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
        let g = Graph::new(EdgeList::new(n, e.edges().to_vec()).unwrap());
        let mut bytes = Vec::new();
        write_tsv(&g, &mut bytes).unwrap();
        let back = normalize(&parse_tsv(bytes.as_slice()).unwrap());
        prop_assert_eq!(back, g);
    }

    #[test]
    fn mmio_round_trip_is_identity(e in edge_list()) {
        let g = Graph::new(e);
        let mut bytes = Vec::new();
        write_mmio(&g, &mut bytes).unwrap();
        let back = normalize(&parse_mmio(bytes.as_slice()).unwrap());
        prop_assert_eq!(back, g);
    }

    #[test]
    fn normalize_output_is_canonical_and_idempotent(e in edge_list()) {
        let g = Graph::new(e);
        let mut bytes = Vec::new();
        write_tsv(&g, &mut bytes).unwrap();
        let once = normalize(&parse_tsv(bytes.as_slice()).unwrap());
        for w in once.edge_list().edges().windows(2) {
            prop_assert!(w[0] < w[1], "sorted, no duplicates");
        }
        for &(u, v) in once.edge_list().edges() {
            prop_assert!(u < v, "no self loops, canonical orientation");
        }
        let mut again = Vec::new();
        write_tsv(&once, &mut again).unwrap();
        prop_assert_eq!(normalize(&parse_tsv(again.as_slice()).unwrap()), once);
    }
}

#[test]
fn incidence_rebuild_matches_direct_adjacency_on_random_graphs() {
    for seed in 0..100u64 {
        let n = 3 + (seed as usize * 7) % 48;
        let p = [0.05, 0.15, 0.3][seed as usize % 3];
        let g = common::erdos_renyi(n, p, seed);
        let rebuilt = adjacency_from_incidence(g.incidence()).unwrap();
        assert_eq!(&rebuilt, g.adjacency(), "seed {seed}");
    }
}
