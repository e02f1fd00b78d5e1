use std::collections::BTreeSet;

use linset_core::classify::{
    canonical_pseudoregulus, find_swap_projectivity, find_swap_projectivity_exhaustive, lemma_bound,
    pgl_matrices, Budgets,
};
use linset_core::endos::Endo;
use linset_core::fields::{FieldTower, FqtElem};
use linset_core::linsets::{hypersurface_points, is_scattered, theta, LinearSet, SubspaceFamily};
use linset_core::ringline::{enumerate_ring_points, Chain, RingPoint};

// β is scattered exactly when u ↦ β(u)/u has one value per F_q-line.
fn scattered_by_quotients(tw: &FieldTower, beta: &Endo) -> bool {
    let values: BTreeSet<FqtElem> = tw.nonzero().map(|u| tw.mul(beta.apply(tw, u), tw.inv(u))).collect();
    values.len() as u64 == theta(tw.t(), tw.q() as u64)
}

#[test]
fn scattered_counts_match_the_quotient_oracle() {
    for (p, t, expected) in [(2, 3, 112), (2, 2, 12), (3, 2, 72)] {
        let tw = FieldTower::new(p, 1, t).unwrap();
        let mut count = 0;
        for beta in Endo::enumerate(&tw) {
            let t_point = RingPoint::graph(&tw, &beta);
            let s = is_scattered(&tw, &t_point);
            assert_eq!(s, scattered_by_quotients(&tw, &beta), "{}", beta.encode(&tw));
            count += s as usize;
        }
        assert_eq!(count, expected, "q={p}, t={t}");
    }
}

#[test]
fn ring_line_sizes() {
    // q^{t²} graphs plus the points with singular first block
    for (p, t, n) in [(2, 2, 35), (3, 2, 130), (2, 3, 1395)] {
        let tw = FieldTower::new(p, 1, t).unwrap();
        assert_eq!(enumerate_ring_points(&tw, 1 << 22).unwrap().len(), n);
    }
}

#[test]
fn standard_chain_has_q_to_the_t_plus_one_points() {
    for (p, e, t) in [(2, 1, 3), (3, 1, 2), (2, 2, 2)] {
        let tw = FieldTower::new(p, e, t).unwrap();
        assert_eq!(Chain::standard(&tw).len() as u32, tw.order() + 1);
    }
}

#[test]
fn frobenius_points_are_scattered() {
    for (p, e, t) in [(2, 1, 3), (3, 1, 3), (2, 1, 4), (2, 2, 2)] {
        let tw = FieldTower::new(p, e, t).unwrap();
        let n = theta(t, tw.q() as u64) as usize;
        assert_eq!(canonical_pseudoregulus(&tw).len(), n);
        let b = LinearSet::of(&tw, &RingPoint::graph(&tw, &Endo::frobenius(&tw, 1)));
        assert_eq!(b.len(), n);
    }
}

#[test]
fn hypersurface_sizes() {
    for (p, size) in [(2, 49), (3, 169)] {
        let tw = FieldTower::new(p, 1, 3).unwrap();
        let t = RingPoint::graph(&tw, &Endo::frobenius(&tw, 1));
        let q = hypersurface_points(&tw, &SubspaceFamily::first(&tw, &t));
        assert_eq!(q.len(), size);
        assert!(q.is_partitioned());
    }
}

#[test]
fn residual_group_order() {
    let tw = FieldTower::new(2, 1, 3).unwrap();
    assert_eq!(pgl_matrices(&tw).len(), 168);
}

#[test]
fn intersection_bounds() {
    assert_eq!(lemma_bound(2, 3), 3);
    assert_eq!(lemma_bound(2, 4), 5);
    assert_eq!(lemma_bound(3, 4), 10);
    assert_eq!(lemma_bound(2, 6), 9);
}

#[test]
fn fast_swap_search_agrees_with_exhaustive_search() {
    let tw = FieldTower::new(2, 1, 3).unwrap();
    let budgets = Budgets::default();
    let mut checked = 0;
    for beta in Endo::enumerate(&tw).step_by(7) {
        let t = RingPoint::graph(&tw, &beta);
        if !is_scattered(&tw, &t) {
            continue;
        }
        let fast = find_swap_projectivity(&tw, &t, &budgets).unwrap();
        let slow = find_swap_projectivity_exhaustive(&tw, &t, &budgets).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "{}", beta.encode(&tw));
        checked += 1;
    }
    assert!(checked > 5);
}
