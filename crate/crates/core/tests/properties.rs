use chromix_core::format::{parse_nmgraph, serialize_nmgraph};
use chromix_core::generators::{random_low_mad, random_partial_2tree, GenSpec};
use chromix_core::graph::{NmGraph, NmGraphBuilder, Signature};
use chromix_core::solver::{elimination_order, two_tree_hom};
use chromix_core::targets::{t03, t11};
use chromix_core::verify::is_homomorphism;
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    (0u32..4, 0u32..4)
        .prop_filter("valid", |&(n, m)| Signature::new(n, m).is_ok())
        .prop_map(|(n, m)| Signature::new(n, m).unwrap())
}

fn nmgraph() -> impl Strategy<Value = NmGraph> {
    (
        signature(),
        1usize..9,
        prop::collection::vec((0usize..9, 0usize..9, 1u32..8), 0..20),
    )
        .prop_map(|(sig, order, raw)| {
            let mut b = NmGraphBuilder::new(sig, order);
            for (u, v, a) in raw {
                let (u, v) = (u % order, v % order);
                let a = (a - 1) % sig.types() + 1;
                if u != v && !b.is_adjacent(u, v) {
                    b.set_adjacency(u, v, sig.adj_type(a).unwrap()).unwrap();
                }
            }
            b.build()
        })
}

proptest! {
    #[test]
    fn dual_is_an_involution(sig in signature()) {
        for a in sig.all_types() {
            let d = sig.dual(a).unwrap();
            prop_assert_eq!(sig.dual(d).unwrap(), a);
            prop_assert_eq!(sig.is_edge_type(a.value()), d == a);
        }
    }

    #[test]
    fn views_are_dual(g in nmgraph()) {
        let sig = g.signature();
        for u in 0..g.order() {
            for (v, a) in g.adjacencies(u) {
                prop_assert_eq!(g.view(v, u), Some(sig.dual(a).unwrap()));
            }
        }
    }

    #[test]
    fn neighborhoods_partition_adjacency(g in nmgraph()) {
        for u in 0..g.order() {
            let total: usize = g
                .signature()
                .all_types()
                .map(|a| g.neighbors(u, a).unwrap().len())
                .sum();
            prop_assert_eq!(total, g.degree(u));
        }
    }

    #[test]
    fn text_round_trip(g in nmgraph()) {
        let back = parse_nmgraph(&serialize_nmgraph(&g)).unwrap();
        prop_assert_eq!(back.normalized(), g.normalized());
    }

    #[test]
    fn identity_is_a_homomorphism(g in nmgraph()) {
        let id: Vec<usize> = (0..g.order()).collect();
        prop_assert!(is_homomorphism(&g, &g, &id).unwrap().holds());
    }

    #[test]
    fn partial_2trees_embed(seed in 0u64..200, nv in 2usize..80) {
        for (t, sig) in [(t03(), Signature::new(0, 3).unwrap()), (t11(), Signature::new(1, 1).unwrap())] {
            let g = random_partial_2tree(nv, &GenSpec::new(seed, sig)).unwrap();
            prop_assert!(elimination_order(&g.underlying()).is_some());
            let h = two_tree_hom(&g, &t).unwrap();
            prop_assert!(is_homomorphism(&g, &t, &h.map).unwrap().holds());
        }
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        let spec = GenSpec::new(seed, Signature::new(1, 1).unwrap());
        prop_assert_eq!(random_low_mad(40, &spec).unwrap(), random_low_mad(40, &spec).unwrap());
        prop_assert_eq!(random_partial_2tree(30, &spec).unwrap(), random_partial_2tree(30, &spec).unwrap());
    }
}
