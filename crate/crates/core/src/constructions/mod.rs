//! Constructors for the simplicial sets used throughout the crate:
//! standard simplices and their boundaries, horns and spines, nerves,
//! coproducts, products, pushouts, joins and wide joins.

mod join;
mod nerve;
mod product;
mod pushout;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet, Subcomplex};

pub use join::{
    comparison_map, join, join_map, pp_map, wide_join, wide_join_map, wide_join_span, Join, PushoutProduct, WideJoin,
};
pub use nerve::{nerve, nerve_map, nerve_truncated, FiniteCategory, Functor, Morphism, Nerve};
pub use product::{product, product_map, Product};
pub use pushout::{pushout, pushout_by_quotient, Pushout, Side};

fn vertex_label(vs: &[usize]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| v.to_string()).collect()
    } else {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The simplicial set whose nondegenerate simplices are the given strictly
/// increasing vertex lists (which must be closed under taking faces), listed
/// by dimension and then lexicographically.
fn ordered_complex(mut members: Vec<Vec<usize>>) -> SimplicialSet {
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    members.dedup();
    let mut index: HashMap<Vec<usize>, SimplexId> = HashMap::new();
    let mut faces: Vec<Vec<Vec<EzForm>>> = Vec::new();
    let mut labels = BTreeMap::new();
    for vs in members {
        let d = vs.len() - 1;
        while faces.len() <= d {
            faces.push(Vec::new());
        }
        let id = SimplexId { dim: d, index: faces[d].len() };
        let fs = if d == 0 {
            Vec::new()
        } else {
            (0..=d)
                .map(|i| {
                    let mut f = vs.clone();
                    f.remove(i);
                    EzForm::nondeg(index[&f])
                })
                .collect()
        };
        faces[d].push(fs);
        labels.insert(id, vertex_label(&vs));
        index.insert(vs, id);
    }
    SimplicialSet::from_faces(faces, labels).expect("ordered complexes are well formed")
}

fn nonempty_subsets(vertices: &[usize]) -> Vec<Vec<usize>> {
    let n = vertices.len();
    (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| vertices[i]).collect())
        .collect()
}

/// The standard simplex `Δ^n`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    ordered_complex(nonempty_subsets(&(0..=n).collect::<Vec<_>>()))
}

/// The subcomplex of `Δ^n` generated by the faces spanned by the given vertex sets.
pub fn simplex_subcomplex(n: usize, generators: &[Vec<usize>]) -> Result<Subcomplex> {
    let delta: Arc<SimplicialSet> = Arc::new(standard_simplex(n));
    let seeds = generators
        .iter()
        .map(|vs| {
            simplex_by_vertices(&delta, vs).ok_or_else(|| Error::MalformedSet(format!("{vs:?} is not a face of Δ^{n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Subcomplex::generated(&delta, seeds)
}

fn faces_except(n: usize, skip: &[usize]) -> Vec<Vec<usize>> {
    (0..=n)
        .filter(|i| !skip.contains(i))
        .map(|i| (0..=n).filter(|&v| v != i).collect())
        .collect()
}

/// `∂Δ^n` as a subcomplex of `Δ^n` (empty for `n = 0`).
pub fn boundary_subcomplex(n: usize) -> Subcomplex {
    if n == 0 {
        return Subcomplex::empty(&Arc::new(standard_simplex(0)));
    }
    simplex_subcomplex(n, &faces_except(n, &[])).expect("faces of a simplex")
}

/// `Λ^n_k` as a subcomplex of `Δ^n`.
pub fn horn_subcomplex(n: usize, k: usize) -> Result<Subcomplex> {
    if n == 0 || k > n {
        return Err(Error::IndexOutOfRange { what: "horn", index: k, bound: n });
    }
    simplex_subcomplex(n, &faces_except(n, &[k]))
}

/// The spine `Δ^{01} ∪ ... ∪ Δ^{n-1,n}` as a subcomplex of `Δ^n`.
pub fn spine_subcomplex(n: usize) -> Subcomplex {
    if n == 0 {
        return Subcomplex::full(&Arc::new(standard_simplex(0)));
    }
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, i + 1]).collect();
    simplex_subcomplex(n, &edges).expect("edges of a simplex")
}

pub fn boundary(n: usize) -> SimplicialSet {
    (*boundary_subcomplex(n).to_simplicial_set().0).clone()
}

pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    Ok((*horn_subcomplex(n, k)?.to_simplicial_set().0).clone())
}

pub fn spine(n: usize) -> SimplicialSet {
    (*spine_subcomplex(n).to_simplicial_set().0).clone()
}

pub fn boundary_inclusion(n: usize) -> SimplicialMap {
    boundary_subcomplex(n).to_simplicial_set().1
}

pub fn horn_inclusion(n: usize, k: usize) -> Result<SimplicialMap> {
    Ok(horn_subcomplex(n, k)?.to_simplicial_set().1)
}

pub fn spine_inclusion(n: usize) -> SimplicialMap {
    spine_subcomplex(n).to_simplicial_set().1
}

/// First nondegenerate simplex with exactly this vertex sequence.
pub fn simplex_by_vertices(x: &SimplicialSet, vertices: &[usize]) -> Option<SimplexId> {
    if vertices.is_empty() {
        return None;
    }
    x.simplices(vertices.len() - 1).find(|&id| x.vertices_of(id) == vertices)
}

/// The map `Δ^n -> X` classified by an `n`-simplex `s` of `X`.
pub fn simplex_map(x: &Arc<SimplicialSet>, s: &EzForm) -> SimplicialMap {
    let n = s.dim();
    let delta = Arc::new(standard_simplex(n));
    let assign = (0..=n)
        .map(|d| {
            delta
                .simplices(d)
                .map(|id| {
                    let mono = Operator::from_images_unchecked(n, delta.vertices_of(id).to_vec());
                    x.act_unchecked(&mono, s)
                })
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(delta, x.clone(), assign)
}

/// The map `Δ^m -> Δ^n` induced by an operator `[m] -> [n]`.
pub fn operator_map(alpha: &Operator) -> SimplicialMap {
    let target = Arc::new(standard_simplex(alpha.target_dim()));
    let top = SimplexId::new(alpha.target_dim(), 0);
    let s = target.act_unchecked(alpha, &EzForm::nondeg(top));
    simplex_map(&target, &s)
}

/// The map `X -> Δ^0`.
pub fn terminal_map(x: &Arc<SimplicialSet>) -> SimplicialMap {
    let point = Arc::new(standard_simplex(0));
    let assign = (0..x.counts().len())
        .map(|d| {
            (0..x.count(d))
                .map(|_| EzForm { epi: Operator::collapse(d), target: SimplexId::new(0, 0) })
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(x.clone(), point, assign)
}

/// The map `Δ^0 -> X` picking out vertex `v`.
pub fn vertex_map(x: &Arc<SimplicialSet>, v: usize) -> Result<SimplicialMap> {
    x.check_member(SimplexId::new(0, v))?;
    Ok(simplex_map(x, &EzForm::nondeg(SimplexId::new(0, v))))
}

/// Disjoint union with its two injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    set: Arc<SimplicialSet>,
    left: SimplicialMap,
    right: SimplicialMap,
}

impl Coproduct {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }
    pub fn left(&self) -> &SimplicialMap {
        &self.left
    }
    pub fn right(&self) -> &SimplicialMap {
        &self.right
    }

    /// The map `A ⊔ B -> Z` out of the coproduct.
    pub fn copair(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(f.target(), g.target()) && **f.target() != **g.target() {
            return Err(Error::NotComposable("copair legs have different targets".into()));
        }
        let a = self.left.source();
        let mut assign: Vec<Vec<EzForm>> = self.set.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
        for d in 0..self.set.counts().len() {
            for i in 0..a.count(d) {
                assign[d].push(f.image_of(SimplexId::new(d, i)).clone());
            }
            for i in 0..self.right.source().count(d) {
                assign[d].push(g.image_of(SimplexId::new(d, i)).clone());
            }
        }
        SimplicialMap::new(self.set.clone(), f.target().clone(), assign)
    }
}

/// `A ⊔ B`: simplices of `A` first in every dimension, then those of `B`.
pub fn coproduct(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> Coproduct {
    let top = a.counts().len().max(b.counts().len());
    let mut faces: Vec<Vec<Vec<EzForm>>> = vec![Vec::new(); top];
    let mut labels = BTreeMap::new();
    let shift = |other: usize, f: &EzForm| EzForm {
        epi: f.epi.clone(),
        target: SimplexId::new(f.target.dim, f.target.index + other),
    };
    for d in 0..top {
        for id in a.simplices(d) {
            faces[d].push(a.faces(id).to_vec());
            if let Some(l) = a.label(id) {
                labels.insert(id, l.to_owned());
            }
        }
        for id in b.simplices(d) {
            let fs = b.faces(id).iter().map(|f| shift(a.count(f.target.dim), f)).collect();
            faces[d].push(fs);
            if let Some(l) = b.label(id) {
                labels.insert(SimplexId::new(d, id.index + a.count(d)), l.to_owned());
            }
        }
    }
    let set = Arc::new(SimplicialSet::from_faces(faces, labels).expect("coproduct of well-formed sets"));
    let left_assign = (0..a.counts().len()).map(|d| a.simplices(d).map(EzForm::nondeg).collect()).collect();
    let right_assign = (0..b.counts().len())
        .map(|d| b.simplices(d).map(|id| EzForm::nondeg(SimplexId::new(d, id.index + a.count(d)))).collect())
        .collect();
    Coproduct {
        left: SimplicialMap::new_unchecked(a.clone(), set.clone(), left_assign),
        right: SimplicialMap::new_unchecked(b.clone(), set.clone(), right_assign),
        set,
    }
}

/// `u ⊔ v`.
pub fn coproduct_map(u: &SimplicialMap, v: &SimplicialMap, source: &Coproduct, target: &Coproduct) -> Result<SimplicialMap> {
    source.copair(&target.left.compose(u)?, &target.right.compose(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::isomorphic;

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(standard_simplex(0).counts(), &[1]);
        assert_eq!(standard_simplex(3).counts(), &[4, 6, 4, 1]);
        assert_eq!(boundary(2).counts(), &[3, 3]);
        assert!(boundary(0).is_empty());
        assert_eq!(boundary(1).counts(), &[2]);
        assert_eq!(horn(3, 1).unwrap().counts(), &[4, 6, 3]);
        assert_eq!(spine(3).counts(), &[4, 3]);
        assert!(horn(0, 0).is_err());
        assert!(horn(2, 3).is_err());
    }

    #[test]
    fn spine_two_is_horn_two_one() {
        assert!(isomorphic(&arc(spine(2)), &arc(horn(2, 1).unwrap())).is_some());
    }

    #[test]
    fn inclusions_are_monos() {
        for n in 0..4 {
            assert!(boundary_inclusion(n).is_mono());
            assert!(spine_inclusion(n).is_mono());
            for k in 0..=n {
                if n > 0 {
                    assert!(horn_inclusion(n, k).unwrap().is_mono());
                }
            }
        }
    }

    #[test]
    fn operator_maps_are_functorial() {
        let d = Operator::face(2, 1).unwrap();
        let s = Operator::degeneracy(1, 0).unwrap();
        let composite = operator_map(&d).compose(&operator_map(&s)).unwrap();
        assert_eq!(composite, operator_map(&d.after(&s)));
        assert!(operator_map(&d).is_mono());
    }

    #[test]
    fn coproduct_injections() {
        let c = coproduct(&arc(standard_simplex(1)), &arc(standard_simplex(2)));
        assert_eq!(c.set().counts(), &[5, 4, 1]);
        assert!(c.set().validate());
        assert!(c.left().is_mono() && c.right().is_mono());
        let t = terminal_map(c.set());
        let copaired = c.copair(&t.compose(c.left()).unwrap(), &t.compose(c.right()).unwrap()).unwrap();
        assert_eq!(copaired, t);
    }

    #[test]
    fn terminal_image_is_a_point() {
        let t = terminal_map(&arc(standard_simplex(1)));
        assert_eq!(t.image().len(), 1);
    }
}
