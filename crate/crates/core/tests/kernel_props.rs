mod common;

use std::sync::Arc;

use proptest::prelude::*;
use sset_core::{isomorphic, CountMode, Operator, SimplicialSet};

use common::{corpus_set, perms_for, relabel};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn monotone(max: usize) -> impl Strategy<Value = Operator> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort_unstable();
            Operator::new(n, v).unwrap()
        })
    })
}

#[test]
fn operator_counts_are_binomial() {
    for n in 0..=6 {
        for k in 0..=6 {
            assert_eq!(Operator::all_monotone(k, n).len(), binomial(n + k + 1, k + 1), "[{k}] -> [{n}]");
        }
        for m in 0..=6 {
            assert_eq!(Operator::all_epis(n, m).len(), binomial(n, m), "[{n}] ->> [{m}]");
        }
    }
}

proptest! {
    #[test]
    fn cosimplicial_identities(n in 1usize..6, j in 0usize..7, i in 0usize..7) {
        prop_assume!(i < j && j <= n + 1);
        let lhs = Operator::face(n + 1, j).unwrap().compose(&Operator::face(n, i).unwrap()).unwrap();
        let rhs = Operator::face(n + 1, i).unwrap().compose(&Operator::face(n, j - 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn epi_mono_recomposes(op in monotone(6)) {
        let (epi, mono) = op.epi_mono_factor();
        prop_assert!(epi.is_epi());
        prop_assert!(mono.is_mono());
        prop_assert_eq!(mono.compose(&epi).unwrap(), op);
    }

    #[test]
    fn act_is_path_independent(x in corpus_set(), seed in any::<u64>(), k in 0usize..=5, m in 0usize..=5) {
        let n = (seed % 4) as usize;
        let all = x.all_simplices(n);
        prop_assume!(!all.is_empty());
        let s = &all[(seed as usize / 7) % all.len()];
        let pick = |a: usize, b: usize, salt: u64| {
            let ops = Operator::all_monotone(a, b);
            ops[((seed ^ salt) as usize) % ops.len()].clone()
        };
        let beta = pick(k, n, 0x9e37);
        let alpha = pick(m, k, 0x79b9);
        let stepwise = x.act(&alpha, &x.act(&beta, s).unwrap()).unwrap();
        let direct = x.act(&beta.compose(&alpha).unwrap(), s).unwrap();
        prop_assert_eq!(stepwise, direct);
    }

    #[test]
    fn all_counts_match_epi_orbits(x in corpus_set(), n in 0usize..=5) {
        prop_assume!(x.total_nondegenerate() <= 200);
        // every n-simplex is uniquely an epi [n] ->> [d] followed by a nondegenerate d-simplex
        let orbits: usize = x.counts().iter().enumerate().map(|(d, &c)| c * binomial(n, d)).sum();
        prop_assert_eq!(x.simplex_count(n, CountMode::All), orbits as u128);
        prop_assert_eq!(x.all_simplices(n).len(), orbits);
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(
        (x, perms) in corpus_set().prop_flat_map(|x| { let c = x.counts().to_vec(); (Just(x), perms_for(c)) })
    ) {
        prop_assert!(isomorphic(&x, &x).is_some());
        let y = Arc::new(relabel(&x, &perms));
        prop_assert!(y.validate());
        let f = isomorphic(&x, &y);
        prop_assert!(f.is_some());
        prop_assert!(f.unwrap().is_iso());
        prop_assert!(isomorphic(&y, &x).is_some());
    }

    #[test]
    fn json_round_trip_is_bit_exact(x in corpus_set()) {
        let s = x.to_json_string();
        let back = SimplicialSet::from_json_str(&s).unwrap();
        prop_assert_eq!(&back, &*x);
        prop_assert_eq!(back.to_json_string(), s);
    }
}
