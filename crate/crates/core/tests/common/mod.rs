#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use sset_core::constructions::{
    boundary, boundary_inclusion, coproduct, horn, horn_inclusion, join, nerve, nerve_map, product, pushout, spine,
    spine_inclusion, standard_simplex, terminal_map, vertex_map, wide_join, FiniteCategory, Functor,
};
use sset_core::{EzForm, SimplexId, SimplicialMap, SimplicialSet};

pub fn delta(n: usize) -> Arc<SimplicialSet> {
    Arc::new(standard_simplex(n))
}

/// Small sets built by every constructor.
pub fn corpus() -> Vec<Arc<SimplicialSet>> {
    let circle = pushout(&boundary_inclusion(1), &terminal_map(&Arc::new(boundary(1)))).unwrap().set().clone();
    let iso = Arc::new(FiniteCategory::free_isomorphism());
    vec![
        Arc::new(SimplicialSet::empty()),
        delta(0),
        delta(1),
        delta(2),
        Arc::new(boundary(1)),
        Arc::new(boundary(2)),
        Arc::new(horn(2, 0).unwrap()),
        Arc::new(horn(3, 2).unwrap()),
        Arc::new(spine(3)),
        product(&delta(1), &delta(1)).set().clone(),
        join(&delta(0), &Arc::new(boundary(1))).set().clone(),
        wide_join(&delta(0), &delta(1)).set().clone(),
        coproduct(&delta(0), &delta(1)).set().clone(),
        circle,
        sset_core::constructions::nerve_truncated(&iso, 3).unwrap().set().clone(),
        nerve(&Arc::new(FiniteCategory::chain(1).product(&FiniteCategory::chain(1))), 2).unwrap().set().clone(),
    ]
}

pub fn corpus_set() -> impl Strategy<Value = Arc<SimplicialSet>> {
    let c = corpus();
    (0..c.len()).prop_map(move |i| c[i].clone())
}

/// Small monomorphisms between corpus-style sets.
pub fn monos() -> Vec<SimplicialMap> {
    vec![
        SimplicialMap::identity(&delta(1)),
        boundary_inclusion(1),
        boundary_inclusion(2),
        horn_inclusion(2, 1).unwrap(),
        horn_inclusion(2, 0).unwrap(),
        spine_inclusion(2),
        vertex_map(&delta(1), 0).unwrap(),
        vertex_map(&delta(2), 1).unwrap(),
        SimplicialMap::from_empty(&delta(1)),
    ]
}

pub fn mono() -> impl Strategy<Value = SimplicialMap> {
    let m = monos();
    (0..m.len()).prop_map(move |i| m[i].clone())
}

/// The same set with the simplices of each dimension renumbered by `perm`.
pub fn relabel(x: &SimplicialSet, perms: &[Vec<usize>]) -> SimplicialSet {
    let moved = |f: &EzForm| EzForm { epi: f.epi.clone(), target: SimplexId::new(f.target.dim, perms[f.target.dim][f.target.index]) };
    let mut faces: Vec<Vec<Vec<EzForm>>> = x.counts().iter().map(|&c| vec![Vec::new(); c]).collect();
    for id in x.all_ids() {
        faces[id.dim][perms[id.dim][id.index]] = x.faces(id).iter().map(moved).collect();
    }
    SimplicialSet::from_faces(faces, BTreeMap::new()).unwrap()
}

/// A permutation of `0..n` for each count.
pub fn perms_for(counts: Vec<usize>) -> impl Strategy<Value = Vec<Vec<usize>>> {
    counts.into_iter().map(|c| Just((0..c).collect::<Vec<_>>()).prop_shuffle()).collect::<Vec<_>>()
}

/// Nerves of all monotone maps between two small posets given by `leq`.
pub fn poset_maps() -> Vec<SimplicialMap> {
    let posets: Vec<Arc<FiniteCategory>> = vec![
        Arc::new(FiniteCategory::chain(0)),
        Arc::new(FiniteCategory::chain(1)),
        Arc::new(FiniteCategory::chain(2)),
        Arc::new(FiniteCategory::poset(3, |i, j| i == j || (i == 0 && j > 0)).unwrap()),
        Arc::new(FiniteCategory::poset(2, |i, j| i == j).unwrap()),
    ];
    let mut out = Vec::new();
    for s in &posets {
        for t in &posets {
            let ns = nerve(s, 3).unwrap();
            let nt = nerve(t, 3).unwrap();
            for f in Functor::all(s, t) {
                out.push(nerve_map(&f, &ns, &nt).unwrap());
            }
        }
    }
    out
}
