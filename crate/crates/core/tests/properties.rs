//! Module-invariant checks that go beyond the per-module unit tests:
//! exhaustive small-graph properties and seeded samples at the next size up.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitword::bits;
use splitword::graph::{encode_graph6, parse_graph6, Graph};
use splitword::orientation::{enumerate_transitive_orientations,
                             exhaustive_transitive_orientation_exists,
                             find_transitive_orientation, verify_semi_transitive};
use splitword::posetdim::{dimension, poset_from_orientation};
use splitword::split::{find_forbidden, normalize_maximal, split_partition, Forbidden};
use splitword::sweep::graph_from_code;

fn all_graphs(n_max: usize) -> impl Iterator<Item = Graph> {
    (1..=n_max).flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (0u64..(1 << pairs)).map(move |code| graph_from_code(n, code))
    })
}

#[test]
fn graph6_round_trips_exhaustively_n_le_6() {
    for g in all_graphs(6) {
        assert_eq!(parse_graph6(&encode_graph6(&g)).unwrap(), g);
    }
}

#[test]
fn every_transitive_orientation_is_semi_transitive_n_le_6() {
    let mut orientations = 0u64;
    for g in all_graphs(6) {
        for d in enumerate_transitive_orientations(&g) {
            orientations += 1;
            assert!(verify_semi_transitive(&g, &d), "g = {g:?}, arcs = {:?}", d.arcs());
        }
    }
    assert!(orientations > 0);
}

#[test]
fn dimension_is_invariant_across_transitive_orientations_n_le_5() {
    for g in all_graphs(5) {
        let dims: Vec<usize> = enumerate_transitive_orientations(&g)
            .iter()
            .map(|d| dimension(&poset_from_orientation(d).unwrap(), 4).unwrap())
            .collect();
        if let Some(&first) = dims.first() {
            assert!(dims.iter().all(|&x| x == first), "g = {g:?} dims = {dims:?}");
        }
    }
}

#[test]
fn normalize_maximal_is_idempotent_on_degraded_partitions_n_le_5() {
    for g in all_graphs(5) {
        let Ok(sg) = split_partition(&g) else { continue };
        // degrade: move clique vertices without independent neighbors into I
        let mut c = sg.clique_mask();
        let mut i = sg.independent_mask();
        for v in bits::to_vec(c) {
            if g.neighbors(v) & i == 0 {
                c &= !bits::bit(v);
                i |= bits::bit(v);
            }
        }
        let once = normalize_maximal(&g, c, i).expect("degraded partition stays valid");
        let twice = normalize_maximal(&g, once.clique_mask(), once.independent_mask()).unwrap();
        assert_eq!(once.clique_mask(), twice.clique_mask(), "g = {g:?}");
        assert_eq!(once.independent_mask(), twice.independent_mask());
    }
}

#[test]
fn labelling_search_matches_unpruned_scan_n_le_5() {
    use splitword::labelling::{classify, find_labelling, verify_properties, CliqueLabelling};
    use splitword::posetdim::permutations;

    for g in all_graphs(5) {
        let Ok(sg) = split_partition(&g) else { continue };
        let clique = sg.clique_vertices();
        // first clique order (in lexicographic order over old-id sequences)
        // that classifies and satisfies the properties
        let expected = permutations(clique.len()).into_iter().find_map(|perm| {
            let order: Vec<usize> = perm.iter().map(|&i| clique[i]).collect();
            let lab = CliqueLabelling::new(order.clone()).unwrap();
            let cls = classify(&sg, &lab).ok()?;
            verify_properties(&cls, lab.k()).is_empty().then_some(order)
        });
        let found = find_labelling(&sg).map(|(lab, _)| lab.order().to_vec());
        assert_eq!(found, expected, "g = {g:?}");
    }
}

#[test]
fn comparability_equivalence_on_sampled_split_graphs_n_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut split_seen = 0;
    let mut graphs = vec![Forbidden::B4.graph(), Forbidden::B3.graph()];
    while graphs.len() < 4000 {
        let edges: Vec<(usize, usize)> = (0..7)
            .flat_map(|u| ((u + 1)..7).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        graphs.push(Graph::from_edges(7, &edges).unwrap());
    }
    for g in &graphs {
        if split_partition(g).is_err() {
            continue;
        }
        split_seen += 1;
        let b_free = find_forbidden(g, &Forbidden::COMPARABILITY_OBSTRUCTIONS).is_none();
        let orientable = if g.edge_count() <= 15 {
            exhaustive_transitive_orientation_exists(g)
        } else {
            find_transitive_orientation(g).is_some()
        };
        assert_eq!(b_free, orientable, "g = {g:?}");
    }
    assert!(split_seen >= 50, "sample produced only {split_seen} split graphs");
}
