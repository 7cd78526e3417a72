use metakit::algorithms::*;
use metakit::finrel::{Carrier, Fun, Rel};
use metakit::inductive::{cata, Bound, Functor, Mu};
use metakit::metaphor::{
    check_congruence, check_converse_of_function, check_greedy_shrink, check_kernel_congruence, check_rep_changer,
    checklist, derive_z,
};
use proptest::prelude::*;

#[test]
fn quicksort_checklist_passes() {
    let qs = QuicksortInstance::new(3, 3, None).unwrap();
    let report = checklist(&qs.input()).unwrap();
    for (label, c) in report.conditions() {
        assert!(c.holds, "{label}: {c:?}");
    }
    assert!(!report.vacuous);
}

#[test]
fn derived_divide_step_matches_the_handwritten_one() {
    let qs = QuicksortInstance::new(3, 3, None).unwrap();
    let d = derive_z(&qs.input()).unwrap();
    assert_eq!(d.z, qs.divide_z());
    assert!(d.end_to_end.holds, "{:?}", d.end_to_end);
}

#[test]
fn derived_quicksort_is_the_sort_spec() {
    let qs = QuicksortInstance::new(3, 3, None).unwrap();
    let d = derive_z(&qs.input()).unwrap();
    let run = metakit::inductive::hylo(&qs.trees, &qs.h, &d.z).unwrap();
    assert!(run.is_exact());
    // sorting relates each list to exactly its sorted permutation
    for x in 0..qs.lists.len() {
        let outs = run.rel.image(x);
        let want = qs.list_index(&oracle_sort(qs.list(x)).unwrap()).unwrap();
        assert_eq!(outs, vec![want], "{:?}", qs.list(x));
    }
    assert_eq!(run.rel, qs.sort_spec());
}

#[test]
fn dropped_left_bound_is_caught() {
    let qs = QuicksortInstance::new(3, 3, Some(QuicksortMutant::DropLeftBound)).unwrap();
    let report = checklist(&qs.input()).unwrap();
    assert!(!report.passed());
    let failed: Vec<_> = report.conditions().into_iter().filter(|(_, c)| !c.holds).collect();
    assert!(failed.iter().all(|(_, c)| c.witness.is_some()), "{failed:?}");
    assert!(derive_z(&qs.input()).is_err());
}

#[test]
fn mergesort_tree_builder_is_a_converse_fold() {
    let ms = MergesortInstance::new(3, 4).unwrap();
    let v = check_converse_of_function(&ms.trees, &ms.mktree, &ms.balanced_conc).unwrap();
    assert!(v.passed() && !v.alarm, "{v:?}");
}

#[test]
fn unbalanced_concatenation_is_not_the_tree_builder() {
    let ms = MergesortInstance::new(2, 3).unwrap();
    let v = check_converse_of_function(&ms.trees, &ms.mktree, &ms.t).unwrap();
    assert!(!v.condition("f.r <= in.F f").unwrap().holds);
    assert!(!v.conclusion.holds);
}

#[test]
fn bag_kernel_is_a_congruence_for_concatenation() {
    let ms = MergesortInstance::new(4, 4).unwrap();
    let v = check_kernel_congruence(&ms.bag, &ms.t, ms.trees.base()).unwrap();
    assert!(v.holds() && !v.alarm, "{v:?}");
    assert!(v.stable.holds && v.kernel.unwrap().holds);
}

#[test]
fn pointwise_congruence_agrees_with_the_matrix_version() {
    let ms = MergesortInstance::new(2, 3).unwrap();
    let base = ms.trees.base();
    let dense = check_congruence(&Rel::kernel(&ms.bag), &ms.t, base, Some(&ms.bag)).unwrap();
    let fast = check_kernel_congruence(&ms.bag, &ms.t, base).unwrap();
    assert_eq!((dense.absorbs.holds, dense.stable.holds), (fast.absorbs.holds, fast.stable.holds));
    assert_eq!(dense.kernel.unwrap().holds, fast.kernel.unwrap().holds);

    // the kernel of "first element" is not respected by concatenation
    let first = Fun::from_fn(ms.lists.carrier(), &Carrier::range("A", 2), |l| ms.lists.as_list(l)[0]).unwrap();
    let dense = check_congruence(&Rel::kernel(&first), &ms.t, base, Some(&first)).unwrap();
    let fast = check_kernel_congruence(&first, &ms.t, base).unwrap();
    assert!(!fast.holds());
    assert_eq!((dense.absorbs.holds, dense.stable.holds), (fast.absorbs.holds, fast.stable.holds));
    assert_eq!(dense.kernel.unwrap().holds, fast.kernel.unwrap().holds);
}

#[test]
fn spines_are_a_converse_fold_of_their_leaves() {
    let mh = MinHeightInstance::new(2, 3).unwrap();
    let v = check_converse_of_function(&mh.lists, &mh.troll, &mh.full_algebra()).unwrap();
    assert!(v.passed() && !v.alarm, "{v:?}");
}

#[test]
fn cost_order_makes_greedy_shrinking_sound() {
    let mh = MinHeightInstance::new(2, 4).unwrap();
    let r = mh.cost_order();
    for s in [mh.full_algebra(), mh.merge_algebra()] {
        let v = check_greedy_shrink(&mh.lists, &s, &r).unwrap();
        assert!(v.passed() && !v.alarm, "{v:?}");
    }
    let v = check_converse_of_function(&mh.lists, &mh.troll, &mh.merge_algebra()).unwrap();
    assert!(v.passed(), "{v:?}");
    // the greedy step is one of the prefix merges, and one of the shallowest
    assert!(mh.greedy_algebra().included_in(&mh.merge_algebra()).unwrap());
    let shallowest = mh.merge_algebra().shrink(&mh.height_order()).unwrap();
    assert!(mh.greedy_algebra().included_in(&shallowest).unwrap());
}

#[test]
fn naive_step_fails_monotonicity() {
    let mh = MinHeightInstance::new(3, 4).unwrap();
    let v = check_greedy_shrink(&mh.lists, &mh.naive_algebra(), &mh.height_order()).unwrap();
    let mono = v.condition("S.F R° <= R°.S").unwrap();
    assert!(!mono.holds);
    assert!(mono.witness.is_some());
}

#[test]
fn rep_changer_conditions_pass() {
    for b in 0..=5 {
        let rc = RepChangerInstance::new(b, 6, 3, SUM_CAP).unwrap();
        let v = check_rep_changer(&rc.lists, &rc.k, &rc.y, &rc.z, &rc.x).unwrap();
        assert!(v.passed() && !v.alarm, "b = {b}: {v:?}");
    }
}

#[test]
fn rep_changer_with_the_wrong_seed_fails() {
    let rc = RepChangerInstance::new(2, 3, 2, SUM_CAP).unwrap();
    let other = RepChangerInstance::new(1, 3, 2, SUM_CAP).unwrap();
    let v = check_rep_changer(&rc.lists, &rc.k, &rc.y, &other.z, &rc.x).unwrap();
    assert!(!v.passed());
}

#[test]
fn bag_carrier_counts_multisets() {
    // multisets of size <= 3 over 3 letters: 1 + 3 + 6 + 10
    assert_eq!(BagCarrier::new(3, 3).len(), 20);
}

#[test]
fn fold_of_bounded_lists_is_partial_only_at_the_edge() {
    let mu = Mu::new(&Functor::list(&Carrier::range("A", 2)), Bound::weight(2)).unwrap();
    let f = cata(&mu, &mu.in_alg()).unwrap();
    assert_eq!(f, Rel::id(mu.carrier()));
}

fn small_list() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..7)
}

proptest! {
    #[test]
    fn sorts_agree_with_the_oracle(xs in small_list()) {
        let want = oracle_sort(&xs).unwrap();
        prop_assert_eq!(quicksort(&xs), want.clone());
        if !xs.is_empty() {
            prop_assert_eq!(mergesort(&xs), want);
        }
    }

    #[test]
    fn quicksort_builds_search_trees(xs in small_list()) {
        let t = quicksort_tree(&xs);
        prop_assert!(t.is_search_tree());
        prop_assert_eq!(bag(&t.flatten()), bag(&xs));
    }

    #[test]
    fn min_height_is_optimal(xs in prop::collection::vec(0usize..6, 1..7)) {
        let t = build_min_height(&xs).unwrap();
        prop_assert_eq!(t.tips(), xs.clone());
        prop_assert_eq!(height(&t), brute_min_height(&xs).unwrap());
    }

    #[test]
    fn rep_changer_shifts_the_sum(b in 0usize..6, xs in prop::collection::vec(0usize..6, 0..5)) {
        prop_assert_eq!(sum_sat(&rep_changer(b, &xs), SUM_CAP), sat_add(b, sum_sat(&xs, SUM_CAP), SUM_CAP));
    }
}
