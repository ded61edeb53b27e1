mod common;

use common::{brute_dominates, brute_is_spanner};
use dirspan::bound::ErrorFunction;
use dirspan::{
    backward_witness, forward_witness, reduce, solve_exact_domset, ReducedInstance, SpannerBound, UndirectedGraph,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&p, _)| p);
            UndirectedGraph::new(n, edges).unwrap()
        })
    })
}

fn arb_bound() -> impl Strategy<Value = SpannerBound> {
    prop_oneof![
        (1u64..4, 0u64..5)
            .prop_filter("t >= 2", |(a, b)| a + b >= 2)
            .prop_map(|(a, b)| SpannerBound::linear_const(a, b)),
        (1u64..4).prop_map(|c| SpannerBound::general(
            ErrorFunction::affine(dirspan::bound::int(c), dirspan::bound::int(1)).unwrap()
        )),
        Just("linear(const:1;table:3/2)".parse().unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduced_instances_are_well_formed(g in arb_graph(8), b in arb_bound(), l_frac in 0.0f64..1.0) {
        let n = g.vertex_count();
        let l = 1 + ((n - 1) as f64 * l_frac) as usize;
        let inst = reduce(&g, l, &b).unwrap();
        inst.check_structure().unwrap();
        prop_assert_eq!(inst.budget_k(), 2 * n - l);
        let text = inst.to_text();
        prop_assert_eq!(ReducedInstance::parse(&text).unwrap(), inst);
    }

    #[test]
    fn witness_maps_are_sound(g in arb_graph(8), b in arb_bound()) {
        let n = g.vertex_count();
        let min = solve_exact_domset(&g).unwrap();
        for l in min.size..=n {
            let inst = reduce(&g, l, &b).unwrap();
            let f = forward_witness(&inst, &g, &min.witness).unwrap();
            prop_assert!(f.len() >= inst.budget_k());
            prop_assert!(brute_is_spanner(inst.graph(), &f, &b));
            let back: Vec<usize> = backward_witness(&inst, &g, &f).unwrap().iter().collect();
            prop_assert!(back.len() <= l);
            prop_assert!(brute_dominates(&g, &back));
        }
    }
}
