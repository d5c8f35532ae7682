mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use sset_core::anodyne::{search_presentation, verify_presentation};
use sset_core::constructions::spine_subcomplex;
use sset_core::hom::{check_fibration, enumerate_maps, extensions, solve_lift, Budget};
use sset_core::{FibrationClass, LiftingProblem, SimplexId, Subcomplex};

use common::{delta, perms_for, poset_maps, relabel};

fn sub_of_delta3() -> impl Strategy<Value = Subcomplex> {
    proptest::collection::vec((0usize..3, 0usize..6), 1..4).prop_map(|seeds| {
        let x = delta(3);
        let ids: Vec<SimplexId> =
            seeds.into_iter().map(|(d, i)| SimplexId::new(d, i % x.count(d))).collect();
        Subcomplex::generated(&x, ids).unwrap()
    })
}

fn spine_and_more() -> impl Strategy<Value = Subcomplex> {
    proptest::collection::vec((1usize..3, 0usize..6), 0..3).prop_map(|seeds| {
        let spine = spine_subcomplex(3);
        let x = spine.parent().clone();
        let ids: Vec<SimplexId> =
            seeds.into_iter().map(|(d, i)| SimplexId::new(d, i % x.count(d))).collect();
        spine.union(&Subcomplex::generated(&x, ids).unwrap()).unwrap()
    })
}

fn class() -> impl Strategy<Value = FibrationClass> {
    prop::sample::select(FibrationClass::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_is_sound(base in sub_of_delta3(), c in class()) {
        if let Some(cert) = search_presentation(&base, c, &Budget::unlimited()).unwrap() {
            let v = verify_presentation(&cert, c);
            prop_assert!(v.valid, "{:?}", v.reason);
            prop_assert_eq!(base.len() + 2 * cert.steps.len(), base.parent().total_nondegenerate());
        }
    }

    #[test]
    fn certificates_survive_relabeling(
        (base, perms) in sub_of_delta3().prop_flat_map(|b| { let c = b.parent().counts().to_vec(); (Just(b), perms_for(c)) }),
        c in class(),
    ) {
        let y = Arc::new(relabel(base.parent(), &perms));
        let moved: BTreeSet<SimplexId> =
            base.members().iter().map(|id| SimplexId::new(id.dim, perms[id.dim][id.index])).collect();
        let base2 = Subcomplex::from_members(&y, moved).unwrap();
        let a = search_presentation(&base, c, &Budget::unlimited()).unwrap();
        let b = search_presentation(&base2, c, &Budget::unlimited()).unwrap();
        prop_assert_eq!(a.map(|x| x.steps.len()), b.map(|x| x.steps.len()));
    }

    #[test]
    fn certified_inclusions_lift_against_fibrations(base in spine_and_more(), pi in any::<prop::sample::Index>()) {
        let cert = search_presentation(&base, FibrationClass::Inner, &Budget::unlimited()).unwrap();
        prop_assume!(cert.is_some());
        let ps = poset_maps();
        let p = pi.get(&ps);
        prop_assume!(check_fibration(p, FibrationClass::Inner, 3).holds);
        let (a, incl) = base.to_simplicial_set();
        for top in enumerate_maps(&a, p.source()).into_iter().take(6) {
            for bottom in extensions(&p.compose(&top).unwrap(), &incl).unwrap().into_iter().take(4) {
                let problem = LiftingProblem::new(incl.clone(), p.clone(), top.clone(), bottom).unwrap();
                prop_assert!(solve_lift(&problem).is_some());
            }
        }
    }
}
