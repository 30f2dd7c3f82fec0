use colnum::exact::{exact_min, exhaustive_min, ExactOptions};
use colnum::reach::{
    adm_of_ordering, scol_of_ordering, strongly_reachable_set, wcol_of_ordering, weakly_reachable_set,
    DEFAULT_PATH_BUDGET,
};
use colnum::{Graph, Ordering, Radius, ReachKind};
use proptest::prelude::*;

fn graph_and_ordering(max_n: usize) -> impl Strategy<Value = (Graph, Ordering)> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, pos)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            (Graph::from_edges(n, edges).unwrap(), Ordering::new(pos).unwrap())
        })
}

fn radius() -> impl Strategy<Value = Radius> {
    prop_oneof![(1usize..5).prop_map(Radius::Finite), Just(Radius::Infinite)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_set_inside_weak_set((g, s) in graph_and_ordering(9), r in radius()) {
        for x in g.vertices() {
            let weak = weakly_reachable_set(&g, &s, x, r).unwrap();
            let strong = strongly_reachable_set(&g, &s, x, r).unwrap();
            prop_assert!(strong.iter().all(|y| weak.contains(y)));
            prop_assert!(weak.contains(&x) && strong.contains(&x));
            prop_assert!(weak.iter().all(|&y| !s.before(x, y)));
        }
    }

    #[test]
    fn sets_grow_with_radius((g, s) in graph_and_ordering(9), r in 1usize..5) {
        for x in g.vertices() {
            let (a, b) = (Radius::Finite(r), Radius::Finite(r + 1));
            let w0 = weakly_reachable_set(&g, &s, x, a).unwrap();
            let w1 = weakly_reachable_set(&g, &s, x, b).unwrap();
            let s0 = strongly_reachable_set(&g, &s, x, a).unwrap();
            let s1 = strongly_reachable_set(&g, &s, x, b).unwrap();
            prop_assert!(w0.iter().all(|y| w1.contains(y)));
            prop_assert!(s0.iter().all(|y| s1.contains(y)));
        }
    }

    #[test]
    fn radius_one_collapses((g, s) in graph_and_ordering(9)) {
        let r = Radius::Finite(1);
        let w = wcol_of_ordering(&g, &s, r).unwrap();
        let st = scol_of_ordering(&g, &s, r).unwrap();
        let a = adm_of_ordering(&g, &s, r, DEFAULT_PATH_BUDGET).unwrap();
        prop_assert_eq!(&w.per_vertex, &st.per_vertex);
        prop_assert_eq!(&w.per_vertex, &a.per_vertex);
        for x in g.vertices() {
            let earlier = g.neighbors(x).iter().filter(|&&y| s.before(y, x)).count();
            prop_assert_eq!(w.per_vertex[x], earlier + 1);
        }
    }

    #[test]
    fn sandwich_per_ordering((g, s) in graph_and_ordering(8), r in 1usize..4) {
        let rr = Radius::Finite(r);
        let w = wcol_of_ordering(&g, &s, rr).unwrap().value;
        let st = scol_of_ordering(&g, &s, rr).unwrap().value;
        let a = adm_of_ordering(&g, &s, rr, DEFAULT_PATH_BUDGET).unwrap().value;
        prop_assert!(a <= st && st <= w && w <= st.pow(r as u32));
    }

    #[test]
    fn infinite_radius_is_n_steps((g, s) in graph_and_ordering(8)) {
        let n = g.n();
        let inf = wcol_of_ordering(&g, &s, Radius::Infinite).unwrap();
        let fin = wcol_of_ordering(&g, &s, Radius::Finite(n.max(1))).unwrap();
        prop_assert_eq!(inf.per_vertex, fin.per_vertex);
    }

    #[test]
    fn edge_list_round_trip((g, s) in graph_and_ordering(10)) {
        let again = Graph::parse(&g.to_edge_list()).unwrap();
        prop_assert_eq!(&again, &g);
        let back = Ordering::parse(&s.to_text(), g.n()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn distance_is_a_metric((g, _s) in graph_and_ordering(8)) {
        for u in g.vertices() {
            prop_assert_eq!(g.distance(u, u).unwrap(), Some(0));
            for v in g.vertices() {
                let duv = g.distance(u, v).unwrap();
                prop_assert_eq!(duv, g.distance(v, u).unwrap());
                for w in g.vertices() {
                    if let (Some(a), Some(b)) = (duv, g.distance(v, w).unwrap()) {
                        let d = g.distance(u, w).unwrap();
                        prop_assert!(d.is_some_and(|d| d <= a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn induced_ordering_keeps_relative_order((_g, s) in graph_and_ordering(10), mask in any::<u16>()) {
        let subset: Vec<usize> = (0..s.len()).filter(|v| mask >> v & 1 == 1).collect();
        if subset.is_empty() {
            prop_assert!(s.induced(&subset).is_err());
            return Ok(());
        }
        let induced = s.induced(&subset).unwrap();
        let expected: Vec<usize> = s.position().iter().copied().filter(|v| subset.contains(v)).collect();
        prop_assert_eq!(induced.original_sequence(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_matches_exhaustive((g, _s) in graph_and_ordering(6), r in radius()) {
        let opts = ExactOptions::default();
        for kind in ReachKind::ALL {
            let fast = exact_min(&g, r, kind, &opts).unwrap();
            let slow = exhaustive_min(&g, r, kind, DEFAULT_PATH_BUDGET).unwrap();
            prop_assert_eq!(fast.value, slow.value, "{} r={}", kind, r);
            let check = colnum::reach::report_of_ordering(&g, &fast.witness, r, kind, DEFAULT_PATH_BUDGET).unwrap();
            prop_assert_eq!(check.value, fast.value);
        }
    }
}
