use std::sync::OnceLock;

use linset_core::classify::{extend_collineation, FieldProjectivity};
use linset_core::endos::Endo;
use linset_core::fields::{FieldTower, FqtElem};
use linset_core::linsets::{l_prime, theta, LinearSet};
use linset_core::ringline::{embed_field_point, FieldMat2, FieldPoint, RingPoint, RingProjectivity};
use proptest::prelude::*;

fn towers() -> &'static [FieldTower] {
    static T: OnceLock<Vec<FieldTower>> = OnceLock::new();
    T.get_or_init(|| {
        [(2, 1, 3), (3, 1, 3), (2, 2, 2), (5, 1, 2), (2, 1, 4), (3, 2, 2)]
            .iter()
            .map(|&(p, e, t)| FieldTower::new(p, e, t).unwrap())
            .collect()
    })
}

fn elem(tw: &FieldTower, i: u32) -> FqtElem {
    tw.elem(i % tw.order()).unwrap()
}

fn endo(tw: &FieldTower, idx: &[u32]) -> Endo {
    let c: Vec<FqtElem> = idx.iter().take(tw.t() as usize).map(|&i| elem(tw, i)).collect();
    Endo::from_qpoly(tw, &c)
}

fn coords() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0..towers().len(), prop::collection::vec(any::<u32>(), 16))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((k, v) in coords()) {
        let tw = &towers()[k];
        let (a, b, c) = (elem(tw, v[0]), elem(tw, v[1]), elem(tw, v[2]));
        prop_assert_eq!(tw.mul(a, tw.add(b, c)), tw.add(tw.mul(a, b), tw.mul(a, c)));
        prop_assert_eq!(tw.mul(tw.mul(a, b), c), tw.mul(a, tw.mul(b, c)));
        prop_assert_eq!(tw.sub(tw.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(tw.mul(a, tw.inv(a)), FqtElem::ONE);
        }
        prop_assert_eq!(tw.pow(a, tw.order() as u64), a);
    }

    #[test]
    fn frobenius_is_a_field_automorphism_fixing_the_base((k, v) in coords()) {
        let tw = &towers()[k];
        let (a, b) = (elem(tw, v[0]), elem(tw, v[1]));
        let s = |x| tw.frobenius(x, 1);
        prop_assert_eq!(s(tw.add(a, b)), tw.add(s(a), s(b)));
        prop_assert_eq!(s(tw.mul(a, b)), tw.mul(s(a), s(b)));
        prop_assert_eq!(tw.pow(a, tw.q() as u64), s(a));
        prop_assert_eq!(tw.frobenius(a, tw.t()), a);
        let n = tw.norm(a);
        prop_assert!(tw.is_in_base(n));
        prop_assert_eq!(tw.norm(tw.mul(a, b)), tw.mul(n, tw.norm(b)));
    }

    #[test]
    fn element_text_round_trip((k, v) in coords()) {
        let tw = &towers()[k];
        let a = elem(tw, v[0]);
        prop_assert_eq!(tw.decode(&tw.encode(a)).unwrap(), a);
    }

    #[test]
    fn qpoly_and_matrix_forms_agree((k, v) in coords()) {
        let tw = &towers()[k];
        let b = endo(tw, &v);
        prop_assert_eq!(Endo::from_qpoly(tw, &b.to_qpoly(tw)), b.clone());
        prop_assert_eq!(Endo::decode(tw, &b.encode(tw)).unwrap(), b.clone());
        prop_assert_eq!(Endo::decode(tw, &b.encode_matrix(tw)).unwrap(), b.clone());
        let x = elem(tw, v[8]);
        let direct = b
            .to_qpoly(tw)
            .iter()
            .enumerate()
            .fold(FqtElem::ZERO, |acc, (i, &c)| tw.add(acc, tw.mul(c, tw.frobenius(x, i as u32))));
        prop_assert_eq!(b.apply(tw, x), direct);
    }

    #[test]
    fn composition_applies_left_then_right((k, v) in coords()) {
        let tw = &towers()[k];
        let a = endo(tw, &v[0..4]);
        let b = endo(tw, &v[4..8]);
        let x = elem(tw, v[8]);
        prop_assert_eq!(a.compose(&b, tw).apply(tw, x), b.apply(tw, a.apply(tw, x)));
        prop_assert_eq!(a.add(&b, tw).apply(tw, x), tw.add(a.apply(tw, x), b.apply(tw, x)));
        prop_assert_eq!(a.rank(tw) + a.kernel_dim(tw), tw.t() as usize);
    }

    #[test]
    fn projectivities_preserve_the_distant_relation((k, v) in coords()) {
        let tw = &towers()[k];
        let entries: Vec<Endo> = (0..4).map(|i| endo(tw, &v[4 * i..4 * i + 4])).collect();
        let Ok(phi) = RingProjectivity::from_entries(tw, &entries[0], &entries[1], &entries[2], &entries[3]) else {
            return Ok(());
        };
        let a = RingPoint::graph(tw, &endo(tw, &v[1..5]));
        let b = RingPoint::graph(tw, &endo(tw, &v[9..13]));
        prop_assert_eq!(a.is_distant(&b, tw), phi.apply(tw, &a).is_distant(&phi.apply(tw, &b), tw));
        let back = phi.then(&phi.inverse(tw), tw);
        prop_assert!(back.same_action(&RingProjectivity::identity(tw), tw));
        prop_assert_eq!(phi.inverse(tw).apply(tw, &phi.apply(tw, &a)), a.clone());
        prop_assert_eq!(RingPoint::decode(tw, &a.encode(tw)).unwrap(), a);
    }

    #[test]
    fn linear_sets_agree_with_the_point_description((k, v) in coords()) {
        let tw = &towers()[k];
        let t = RingPoint::graph(tw, &endo(tw, &v));
        let b = LinearSet::of(tw, &t);
        let oracle = LinearSet::of_by_points(tw, &t);
        prop_assert_eq!(b.points(), oracle.points());
        prop_assert!(b.len() as u64 <= theta(tw.t(), tw.q() as u64));
        prop_assert!(!b.is_empty());
    }

    #[test]
    fn scalings_depend_only_on_the_class_of_h((k, v) in coords()) {
        let tw = &towers()[k];
        let t = RingPoint::graph(tw, &endo(tw, &v));
        let h = elem(tw, 1 + v[9] % (tw.order() - 1));
        let l = tw.from_base(1 + v[10] % (tw.q() - 1));
        prop_assert_eq!(t.scale(tw, h).unwrap(), t.scale(tw, tw.mul(h, l)).unwrap());
        prop_assert!(l_prime(tw, &t).members().contains(&t));
    }

    #[test]
    fn extended_collineations_act_on_the_chain((k, v) in coords(), eta in 0u32..4) {
        let tw = &towers()[k];
        let m = FieldMat2([elem(tw, v[0]), elem(tw, v[1]), elem(tw, v[2]), elem(tw, v[3])]);
        let Ok(kappa) = FieldProjectivity::new(tw, m, eta) else {
            return Ok(());
        };
        let ext = extend_collineation(tw, &kappa);
        let a = elem(tw, v[4]);
        for p in [FieldPoint::affine(a), FieldPoint::infinity()] {
            prop_assert_eq!(ext.apply(tw, &embed_field_point(tw, &p)), embed_field_point(tw, &kappa.apply(tw, &p)));
        }
    }
}
