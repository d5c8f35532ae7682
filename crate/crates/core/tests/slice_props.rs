mod common;

use std::sync::Arc;

use proptest::prelude::*;
use sset_core::constructions::{boundary, join, nerve, wide_join, FiniteCategory};
use sset_core::hom::{enumerate_maps, extensions};
use sset_core::slices::{slice_under, wide_slice};
use sset_core::{isomorphic, SimplicialSet, Subcomplex};

use common::delta;

fn targets() -> Vec<Arc<SimplicialSet>> {
    vec![
        delta(2),
        nerve(&Arc::new(FiniteCategory::poset(3, |i, j| i == j || i == 0).unwrap()), 2).unwrap().set().clone(),
        nerve(&Arc::new(FiniteCategory::chain(1).product(&FiniteCategory::chain(1))), 2).unwrap().set().clone(),
    ]
}

fn sources() -> Vec<Arc<SimplicialSet>> {
    vec![Arc::new(SimplicialSet::empty()), delta(0), delta(1), Arc::new(boundary(1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn slice_vertices_are_cone_extensions(xi in 0usize..3, ki in 0usize..4, seed in any::<usize>()) {
        let (x, k) = (targets()[xi].clone(), sources()[ki].clone());
        let ps = enumerate_maps(&k, &x);
        let p = &ps[seed % ps.len()];
        let j = join(&k, &delta(0));
        let cones = extensions(p, j.left_inclusion()).unwrap().len();
        prop_assert_eq!(slice_under(&x, p, 1).unwrap().set().count(0), cones);
        let w = wide_join(&k, &delta(0));
        let wide_cones = extensions(p, w.left_inclusion()).unwrap().len();
        prop_assert_eq!(wide_slice(&x, p, 1).unwrap().set().count(0), wide_cones);
    }

    #[test]
    fn truncation_is_coherent(xi in 0usize..3, ki in 0usize..4, seed in any::<usize>(), wide in any::<bool>()) {
        let (x, k) = (targets()[xi].clone(), sources()[ki].clone());
        let ps = enumerate_maps(&k, &x);
        let p = &ps[seed % ps.len()];
        let build = |n| if wide { wide_slice(&x, p, n) } else { slice_under(&x, p, n) };
        let big = build(3).unwrap();
        for n in 1..3 {
            let small = build(n).unwrap();
            let skel = Subcomplex::skeleton(big.set(), n).to_simplicial_set().0;
            prop_assert!(isomorphic(&skel, small.set()).is_some(), "bound {}", n);
        }
    }
}
