mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_core::classify::{contract_edge, delete_face_merging_edge, Move};
use ribbon_core::group::{dehn_reduce, free_group, spanning_tree, words_equal, zxz, Letter};
use ribbon_core::iso::DartBijection;
use ribbon_core::surface::{face_count, face_successor};
use ribbon_core::*;

fn any_map() -> impl Strategy<Value = RibbonMap> {
    prop_oneof![
        (0usize..=3, 0usize..=15, any::<u64>()).prop_map(|(g, k, s)| random_filling_map(g, k, s)),
        (1usize..=8, any::<u64>()).prop_map(|(m, s)| {
            common::random_rotation_map(&mut ChaCha8Rng::seed_from_u64(s), m)
        }),
    ]
}

fn nonempty_map() -> impl Strategy<Value = RibbonMap> {
    any_map().prop_filter("has edges", |m| m.num_edges() > 0)
}

fn group_word(gens: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|v| GroupWord::new(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn handshake_and_vertex_consistency(m in any_map()) {
        let total: usize = (0..m.num_vertices()).map(|v| m.degree(v).unwrap()).sum();
        prop_assert_eq!(total, 2 * m.num_edges());
        for d in m.darts() {
            prop_assert_eq!(m.vertex_of(m.sigma(d)), m.vertex_of(d));
        }
    }

    #[test]
    fn refine_preserves_genus(m in any_map()) {
        let r = m.refine();
        prop_assert_eq!(genus(&r), genus(&m));
        prop_assert_eq!(r.num_vertices(), m.num_vertices() + m.num_edges());
        prop_assert_eq!(r.num_edges(), 2 * m.num_edges());
    }

    #[test]
    fn serialization_round_trips(m in any_map()) {
        let text = serialize_graph(&m);
        let back = parse_graph(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn faces_partition_darts(m in nonempty_map()) {
        let faces = trace_faces(&m).unwrap();
        let mut hit = vec![0; m.num_darts()];
        for f in &faces {
            for d in &f.darts {
                hit[d.0] += 1;
            }
        }
        prop_assert!(hit.iter().all(|&h| h == 1));
        prop_assert_eq!(faces.iter().map(|f| f.len()).sum::<usize>(), 2 * m.num_edges());
        let mut images: Vec<usize> = m.darts().map(|d| face_successor(&m, d).0).collect();
        images.sort();
        prop_assert_eq!(images, (0..m.num_darts()).collect::<Vec<_>>());
    }

    #[test]
    fn euler_characteristic_is_even(m in any_map()) {
        let chi = euler_characteristic(&m);
        prop_assert_eq!(chi.rem_euclid(2), 0);
        prop_assert!(chi <= 2);
    }

    #[test]
    fn deletion_and_contraction_preserve_chi(m in nonempty_map()) {
        let (v, e, f) = (m.num_vertices(), m.num_edges(), face_count(&m));
        let chi = euler_characteristic(&m);
        if let Some((d, _)) = delete_face_merging_edge(&m).unwrap() {
            prop_assert_eq!((d.num_vertices(), d.num_edges(), face_count(&d)), (v, e - 1, f - 1));
            prop_assert_eq!(euler_characteristic(&d), chi);
        }
        for k in 0..e {
            if !m.is_loop(k) {
                let c = contract_edge(&m, m.label(k)).unwrap();
                prop_assert_eq!((c.num_vertices(), c.num_edges(), face_count(&c)), (v - 1, e - 1, f));
                prop_assert_eq!(euler_characteristic(&c), chi);
            }
        }
    }

    #[test]
    fn reduction_terminates_within_bound(m in any_map()) {
        let (r, trace) = reduce_to_one_vertex_one_face(&m).unwrap();
        prop_assert!(trace.len() < face_count(&m) + m.num_vertices());
        prop_assert_eq!(r.num_vertices(), 1);
        prop_assert_eq!(face_count(&r), 1);
        prop_assert_eq!(trace.replay(&m).unwrap().map, r);
    }

    #[test]
    fn one_face_maps_are_linked(m in any_map()) {
        let (r, _) = reduce_to_one_vertex_one_face(&m).unwrap();
        if r.num_edges() > 0 {
            prop_assert!(polygon_word(&r).unwrap().every_label_linked());
        }
    }

    #[test]
    fn classification_recovers_genus(g in 0usize..=4, k in 0usize..=25, seed in any::<u64>()) {
        let m = random_filling_map(g, k, seed);
        let r = classify(&m).unwrap();
        prop_assert_eq!(r.genus, g);
        prop_assert_eq!(r.canonical_word.len(), 4 * g);
        if let CanonicalWord::Polygon(w) = &r.canonical_word {
            prop_assert_eq!(w, &polygon_word(&petal(g)).unwrap());
        }
        let replayed = r.trace.replay(&m).unwrap();
        prop_assert_eq!(replayed.word.as_ref(), r.canonical_word.word());
        let map_moves = r.trace.moves.iter()
            .filter(|x| matches!(x, Move::DeleteEdge { .. } | Move::ContractEdge { .. }))
            .count();
        prop_assert!(map_moves < face_count(&m) + m.num_vertices());
    }

    #[test]
    fn encoding_is_relabelling_invariant(
        m in nonempty_map(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..m.num_edges()).collect();
        order.shuffle(&mut rng);
        let flip: Vec<bool> = (0..m.num_edges()).map(|_| rng.gen()).collect();
        let p = m.permuted(&order, &flip).unwrap();
        prop_assert_eq!(canonical_encoding(&m).unwrap(), canonical_encoding(&p).unwrap());
        let beta: DartBijection = are_isomorphic(&m, &p).unwrap();
        prop_assert!(beta.verify(&m, &p));
        prop_assert_eq!(face_count(&m), face_count(&p));
        let lens = |x: &RibbonMap| {
            let mut v: Vec<usize> = trace_faces(x).unwrap().iter().map(|f| f.len()).collect();
            v.sort();
            v
        };
        prop_assert_eq!(lens(&m), lens(&p));
    }

    #[test]
    fn deficiency_identity(m in any_map()) {
        let p = pi1_presentation(&m, 0).unwrap();
        let g = genus(&m).unwrap() as i64;
        prop_assert_eq!(p.deficiency(), 2 * g - 1);
        prop_assert_eq!(p.generators.len(), m.num_edges() + 1 - m.num_vertices());
        prop_assert_eq!(spanning_tree(&m, 0).unwrap().tree.iter().filter(|&&t| t).count(), m.num_vertices() - 1);
    }

    #[test]
    fn free_reduction_idempotent(w in group_word(3, 16)) {
        let r = w.free_reduce();
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(r.len() <= w.len());
        prop_assert!(r.is_freely_reduced());
        prop_assert_eq!(r.abelianization(3), w.abelianization(3));
    }

    #[test]
    fn abelianization_detects_nontriviality(g in 1usize..=4, w in group_word(8, 10)) {
        let pres = surface_group(g);
        let w = GroupWord::new(w.letters.into_iter().filter(|l| l.gen < 2 * g).collect());
        if w.abelianization(2 * g).iter().any(|&s| s != 0) {
            prop_assert!(!is_trivial_word(&w, &pres).unwrap());
        }
    }

    #[test]
    fn conjugates_of_relator_are_trivial(
        g in 2usize..=3,
        parts in prop::collection::vec((group_word(6, 5), any::<bool>()), 1..=5),
    ) {
        let pres = surface_group(g);
        let r = &pres.relators[0];
        let mut w = GroupWord::default();
        for (c, inv) in parts {
            let c = GroupWord::new(c.letters.into_iter().filter(|l| l.gen < 2 * g).collect());
            let rel = if inv { r.inverse() } else { r.clone() };
            w = w.concat(&c).concat(&rel).concat(&c.inverse());
        }
        prop_assert!(dehn_reduce(&w, g).is_empty());
        prop_assert!(is_trivial_word(&w, &pres).unwrap());
    }

    #[test]
    fn dehn_never_lengthens(g in 2usize..=3, w in group_word(6, 14)) {
        let w = GroupWord::new(w.letters.into_iter().filter(|l| l.gen < 2 * g).collect());
        prop_assert!(dehn_reduce(&w, g).len() <= w.cyclic_reduce().len());
    }
}

#[test]
fn cayley_interior_degree_and_edges() {
    for (pres, r) in [(free_group(2), 3), (zxz(), 4), (surface_group(2), 2)] {
        let ball = cayley_ball(&pres, r).unwrap();
        for v in 0..ball.vertices.len() {
            if ball.depth[v] < r {
                assert_eq!(ball.degree(v), 2 * pres.generators.len());
            }
        }
        for e in &ball.edges {
            let step = GroupWord::new(vec![Letter::new(e.generator, false)]);
            let lhs = ball.vertices[e.source].concat(&step);
            assert!(words_equal(&lhs, &ball.vertices[e.target], &pres).unwrap());
        }
        for c in &ball.cells {
            assert_eq!(c.cycle.len(), pres.relators[c.relator].len());
        }
    }
}

#[test]
fn free_balls_are_trees() {
    for r in 0..=5 {
        assert!(cayley_ball(&free_group(2), r).unwrap().is_tree());
    }
}

#[test]
fn petal_family_invariants() {
    for g in 1..=10 {
        let p = petal(g);
        assert_eq!((p.num_vertices(), p.num_edges(), face_count(&p)), (1, 2 * g, 1));
        assert_eq!(euler_characteristic(&p), 2 - 2 * g as i64);
        let pres = pi1_presentation(&p, 0).unwrap();
        assert!(pres.same_up_to_renaming(&surface_group(g)));
    }
}
