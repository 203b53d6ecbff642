mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumset_core::bounds::{partition_decompose, RemovedComponentGraph};
use sumset_core::corpus::{random_hypercube_graph, random_instance, CorpusParams};
use sumset_core::group::{direct_product, minkowski_sum};
use sumset_core::hypergraph::{check_square_commutativity, Layered, SqCommMethod};
use sumset_core::magnification::{mu_bruteforce, mu_matching, ratio_of, DEFAULT_CAP};
use sumset_core::rational::DEFAULT_PRECISION_BITS;
use sumset_core::{GSet, GroupSpec, HypercubeGraph, SumsetInstance};

fn spec() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(prop::sample::select(vec![0u64, 1, 2, 3, 5, 6, 12]), 1..=2)
        .prop_map(|m| GroupSpec::new(m).expect("nonempty"))
}

fn set_in(spec: GroupSpec, max: usize) -> impl Strategy<Value = GSet> {
    let dim = spec.dim();
    prop::collection::vec(prop::collection::vec(-20i64..20, dim), 1..=max)
        .prop_map(move |rows| GSet::from_coords(spec.clone(), rows.iter().map(Vec::as_slice)).expect("right dimension"))
}

fn three_sets() -> impl Strategy<Value = (GSet, GSet, GSet)> {
    spec().prop_flat_map(|s| (set_in(s.clone(), 6), set_in(s.clone(), 6), set_in(s, 6)))
}

/// A small instance drawn from the corpus distribution.
fn instance(max_a: usize, max_b: usize, h_max: usize) -> impl Strategy<Value = SumsetInstance> {
    any::<u64>().prop_map(move |seed| {
        let p = CorpusParams { max_a, max_b, h_max, ..CorpusParams::default() };
        random_instance(&mut ChaCha8Rng::seed_from_u64(seed), &p).expect("valid parameters")
    })
}

fn tiny_graph() -> impl Strategy<Value = HypercubeGraph> {
    (any::<u64>(), 1usize..=3, 1usize..=4, 0.2f64..=1.0).prop_map(|(seed, h, per, d)| {
        random_hypercube_graph(&mut ChaCha8Rng::seed_from_u64(seed), h, per, d).expect("valid parameters")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn minkowski_commutes_and_associates((a, b, c) in three_sets()) {
        let ab = minkowski_sum(&a, &b).unwrap();
        prop_assert_eq!(&ab, &minkowski_sum(&b, &a).unwrap());
        prop_assert_eq!(minkowski_sum(&ab, &c).unwrap(), minkowski_sum(&a, &minkowski_sum(&b, &c).unwrap()).unwrap());
        prop_assert!(ab.len() >= a.len().max(b.len()));
        prop_assert!(ab.len() <= a.len() * b.len());
    }

    #[test]
    fn zero_is_neutral((a, _, _) in three_sets()) {
        let zero = GSet::from_elements(a.spec().clone(), [a.spec().zero()]).unwrap();
        prop_assert_eq!(minkowski_sum(&a, &zero).unwrap(), a);
    }

    #[test]
    fn reduction_is_idempotent((a, _, _) in three_sets()) {
        let again = GSet::from_coords(a.spec().clone(), a.elements().iter().map(|e| e.coords())).unwrap();
        prop_assert_eq!(&again, &a);
        for e in a.elements() {
            prop_assert_eq!(&a.spec().element(e.coords()).unwrap(), e);
        }
    }

    #[test]
    fn product_sizes_multiply(x in instance(4, 3, 2), y in instance(4, 3, 2)) {
        prop_assume!(x.h() == y.h());
        let p = x.direct_product(&y).unwrap();
        prop_assert_eq!(p.m(), x.m() * y.m());
        prop_assert_eq!(p.full_sumset().len(), x.full_sumset().len() * y.full_sumset().len());
        let sizes: Vec<usize> = x.sumset_sizes().iter().zip(y.sumset_sizes()).map(|(a, b)| a * b).collect();
        prop_assert_eq!(p.sumset_sizes(), sizes);
        prop_assert_eq!(direct_product(x.a(), y.a()).len(), x.m() * y.m());
    }

    #[test]
    fn addition_and_removed_graphs_are_square_commutative(inst in instance(6, 3, 3), mask in any::<u32>()) {
        let g = HypercubeGraph::addition_graph(&inst);
        prop_assert!(check_square_commutativity(&g, SqCommMethod::Matching).passed());
        let pos: Vec<usize> = (0..inst.m()).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(pos.len() < inst.m());
        let r = RemovedComponentGraph::new(&inst, &inst.a().select(&pos)).unwrap();
        prop_assert!(check_square_commutativity(r.graph(), SqCommMethod::Matching).passed());
    }

    #[test]
    fn channels_inherit_square_commutativity(inst in instance(5, 3, 3), seed in any::<u64>()) {
        let g = HypercubeGraph::addition_graph(&inst);
        let (from, x, to, y) = common::channel_request(&g, &mut common::rng(seed));
        let ch = g.channel(from, &x, to, &y).unwrap();
        prop_assert!(check_square_commutativity(&ch, SqCommMethod::Matching).passed());
    }

    #[test]
    fn products_inherit_square_commutativity(x in instance(3, 2, 2), y in instance(3, 2, 2)) {
        prop_assume!(x.h() == y.h());
        let p = HypercubeGraph::addition_graph(&x).product(&HypercubeGraph::addition_graph(&y)).unwrap();
        prop_assert!(check_square_commutativity(&p, SqCommMethod::Matching).passed());
    }

    #[test]
    fn sqcomm_methods_agree(g in tiny_graph()) {
        prop_assert_eq!(
            check_square_commutativity(&g, SqCommMethod::Matching).passed(),
            check_square_commutativity(&g, SqCommMethod::Exhaustive).passed()
        );
    }

    #[test]
    fn matching_equals_brute(g in tiny_graph(), level in 1usize..=3) {
        let level = level.min(g.h());
        let brute = mu_bruteforce(&g, level, DEFAULT_CAP).unwrap();
        let flow = mu_matching(&g, level).unwrap();
        prop_assert_eq!(&brute.value, &flow.value);
        prop_assert_eq!(ratio_of(&g, &flow.achiever, level).unwrap(), flow.value);
        prop_assert!(flow.achiever.iter().all(|&v| g.layer_of(v) == 0));
    }

    #[test]
    fn partition_invariants(inst in instance(6, 3, 3)) {
        let t = partition_decompose(&inst, DEFAULT_CAP, DEFAULT_PRECISION_BITS).unwrap();
        prop_assert!(t.is_monotone());
        prop_assert!(t.is_disjoint_cover(inst.a()));
        prop_assert!(t.identities_hold());
        prop_assert!(t.steps_hold());
        prop_assert!(t.min_chain_holds());
    }
}
