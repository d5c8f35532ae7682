use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// The pushout `A ⊔_C B` of `f: C -> A` and `g: C -> B`.
#[derive(Clone, Debug)]
pub struct Pushout {
    set: Arc<SimplicialSet>,
    f: SimplicialMap,
    g: SimplicialMap,
    left: SimplicialMap,
    right: SimplicialMap,
    origin: Vec<Vec<(Side, SimplexId)>>,
}

impl Pushout {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    /// `A -> P`.
    pub fn left(&self) -> &SimplicialMap {
        &self.left
    }

    /// `B -> P`.
    pub fn right(&self) -> &SimplicialMap {
        &self.right
    }

    /// A nondegenerate simplex of `A` or `B` mapping onto the given one.
    pub fn origin(&self, id: SimplexId) -> (Side, SimplexId) {
        self.origin[id.dim][id.index]
    }

    /// The map `P -> Z` induced by a commuting cocone `h: A -> Z`, `k: B -> Z`.
    pub fn induced(&self, h: &SimplicialMap, k: &SimplicialMap) -> Result<SimplicialMap> {
        if h.compose(&self.f)? != k.compose(&self.g)? {
            return Err(Error::NotCommutative("cocone legs disagree on the common source".into()));
        }
        let assign = self
            .origin
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|&(side, id)| match side {
                        Side::Left => h.image_of(id).clone(),
                        Side::Right => k.image_of(id).clone(),
                    })
                    .collect()
            })
            .collect();
        Ok(SimplicialMap::new_unchecked(self.set.clone(), h.target().clone(), assign))
    }
}

fn check_span(f: &SimplicialMap, g: &SimplicialMap) -> Result<()> {
    if **f.source() != **g.source() {
        return Err(Error::NotComposable("pushout legs have different sources".into()));
    }
    Ok(())
}

fn label_of(x: &SimplicialSet, id: SimplexId) -> Option<String> {
    x.label(id).map(str::to_owned)
}

/// Pushout. Uses the attaching construction when one leg is a mono and the
/// levelwise quotient otherwise.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    check_span(f, g)?;
    if f.is_mono() {
        let (set, legs_a, legs_b, origin) = attach(f, g);
        return Ok(finish(f, g, set, legs_a, legs_b, origin));
    }
    if g.is_mono() {
        let (set, legs_b, legs_a, origin) = attach(g, f);
        let origin = origin
            .into_iter()
            .map(|l| l.into_iter().map(|(s, id)| (flip(s), id)).collect())
            .collect();
        return Ok(finish(f, g, set, legs_a, legs_b, origin));
    }
    pushout_by_quotient(f, g)
}

fn flip(s: Side) -> Side {
    match s {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

fn finish(
    f: &SimplicialMap,
    g: &SimplicialMap,
    set: Arc<SimplicialSet>,
    legs_a: Vec<Vec<EzForm>>,
    legs_b: Vec<Vec<EzForm>>,
    origin: Vec<Vec<(Side, SimplexId)>>,
) -> Pushout {
    let left = SimplicialMap::new_unchecked(f.target().clone(), set.clone(), legs_a);
    let right = SimplicialMap::new_unchecked(g.target().clone(), set.clone(), legs_b);
    Pushout { set, f: f.clone(), g: g.clone(), left, right, origin }
}

type Built = (Arc<SimplicialSet>, Vec<Vec<EzForm>>, Vec<Vec<EzForm>>, Vec<Vec<(Side, SimplexId)>>);

/// `B ⊔ (A ∖ f(C))` for a mono `f`. In every dimension the simplices of `B`
/// come first, then the new ones in their order in `A`. Returns the legs
/// `A -> P`, `B -> P` and origins tagged `Left` for `A`.
fn attach(f: &SimplicialMap, g: &SimplicialMap) -> Built {
    let a = f.target();
    let b = g.target();
    let inv = f.inverse_on_image().expect("attaching along a mono");
    let top = a.counts().len().max(b.counts().len());
    let mut faces: Vec<Vec<Vec<EzForm>>> = vec![Vec::new(); top];
    let mut origin: Vec<Vec<(Side, SimplexId)>> = vec![Vec::new(); top];
    let mut labels = BTreeMap::new();
    let mut leg_a: Vec<Vec<EzForm>> = a.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
    let leg_b: Vec<Vec<EzForm>> =
        (0..b.counts().len()).map(|d| b.simplices(d).map(EzForm::nondeg).collect()).collect();
    for d in 0..top {
        for id in b.simplices(d) {
            faces[d].push(b.faces(id).to_vec());
            origin[d].push((Side::Right, id));
            if let Some(l) = label_of(b, id) {
                labels.insert(id, l);
            }
        }
        for id in a.simplices(d) {
            let img = match inv.get(&id) {
                Some(&c) => g.image_of(c).clone(),
                None => {
                    let new = SimplexId::new(d, faces[d].len());
                    let fs = a
                        .faces(id)
                        .iter()
                        .map(|fa| {
                            let e = &leg_a[fa.target.dim][fa.target.index];
                            EzForm { epi: e.epi.after(&fa.epi), target: e.target }
                        })
                        .collect();
                    faces[d].push(fs);
                    origin[d].push((Side::Left, id));
                    if let Some(l) = label_of(a, id) {
                        labels.insert(new, l);
                    }
                    EzForm::nondeg(new)
                }
            };
            leg_a[d].push(img);
        }
    }
    let set = Arc::new(SimplicialSet::from_faces(faces, labels).expect("pushout of well-formed sets"));
    (set, leg_a, leg_b, origin)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.0[rx.max(ry)] = rx.min(ry);
        }
    }
}

/// Pushout by identifying `f(c) ~ g(c)` among all `n`-simplices, level by
/// level. Each class is represented by a member of least nondegenerate
/// dimension, which gives its normal form. Simplices of `A` come before those
/// of `B` in every dimension.
pub fn pushout_by_quotient(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    check_span(f, g)?;
    let a = f.target();
    let b = g.target();
    let c = f.source();
    let top = a.counts().len().max(b.counts().len());
    let mut faces: Vec<Vec<Vec<EzForm>>> = vec![Vec::new(); top];
    let mut origin: Vec<Vec<(Side, SimplexId)>> = vec![Vec::new(); top];
    let mut labels = BTreeMap::new();
    let mut leg_a: Vec<Vec<EzForm>> = a.counts().iter().map(|&n| Vec::with_capacity(n)).collect();
    let mut leg_b: Vec<Vec<EzForm>> = b.counts().iter().map(|&n| Vec::with_capacity(n)).collect();
    for n in 0..top {
        let mut elems: Vec<(Side, EzForm)> = Vec::new();
        elems.extend(a.all_simplices(n).into_iter().map(|s| (Side::Left, s)));
        elems.extend(b.all_simplices(n).into_iter().map(|s| (Side::Right, s)));
        let pos: HashMap<&(Side, EzForm), usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut uf = UnionFind((0..elems.len()).collect());
        for s in c.all_simplices(n) {
            let x = pos[&(Side::Left, f.apply(&s))];
            let y = pos[&(Side::Right, g.apply(&s))];
            uf.union(x, y);
        }
        // representative of least nondegenerate dimension per class
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for i in 0..elems.len() {
            let r = uf.find(i);
            let better = match rep.get(&r) {
                None => true,
                Some(&j) => elems[i].1.target.dim < elems[j].1.target.dim,
            };
            if better {
                rep.insert(r, i);
            }
        }
        let mut new_ids: HashMap<usize, SimplexId> = HashMap::new();
        for i in 0..elems.len() {
            let (side, s) = &elems[i];
            if s.is_degenerate() {
                continue;
            }
            let (src, leg) = match side {
                Side::Left => (a, &leg_a),
                Side::Right => (b, &leg_b),
            };
            let r = uf.find(i);
            let j = rep[&r];
            let (rside, rs) = &elems[j];
            let img = if rs.target.dim == n {
                let id = *new_ids.entry(r).or_insert_with(|| {
                    let id = SimplexId::new(n, faces[n].len());
                    let fs = if n == 0 {
                        Vec::new()
                    } else {
                        src.faces(s.target)
                            .iter()
                            .map(|fx| {
                                let e = &leg[fx.target.dim][fx.target.index];
                                EzForm { epi: e.epi.after(&fx.epi), target: e.target }
                            })
                            .collect()
                    };
                    faces[n].push(fs);
                    origin[n].push((*side, s.target));
                    if let Some(l) = label_of(src, s.target) {
                        labels.insert(id, l);
                    }
                    id
                });
                EzForm::nondeg(id)
            } else {
                let e = match rside {
                    Side::Left => &leg_a[rs.target.dim][rs.target.index],
                    Side::Right => &leg_b[rs.target.dim][rs.target.index],
                };
                EzForm { epi: e.epi.after(&rs.epi), target: e.target }
            };
            match side {
                Side::Left => leg_a[n].push(img),
                Side::Right => leg_b[n].push(img),
            }
        }
    }
    let set = Arc::new(SimplicialSet::from_faces(faces, labels)?);
    Ok(finish(f, g, set, leg_a, leg_b, origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary_inclusion, standard_simplex, terminal_map, vertex_map};
    use crate::simpset::isomorphic;

    #[test]
    fn circle_from_an_edge() {
        // Δ^1 with both ends glued to a point
        let f = boundary_inclusion(1);
        let g = terminal_map(f.source());
        let p = pushout(&f, &g).unwrap();
        assert_eq!(p.set().counts(), &[1, 1]);
        assert!(p.set().validate());
        let q = pushout_by_quotient(&f, &g).unwrap();
        assert!(isomorphic(p.set(), q.set()).is_some());
    }

    #[test]
    fn collapsing_a_triangle_edge() {
        // Δ^2 with edge 01 collapsed: the face d_2 becomes degenerate
        let d2 = Arc::new(standard_simplex(2));
        let d1 = Arc::new(standard_simplex(1));
        let f = crate::constructions::simplex_map(&d2, &EzForm::nondeg(SimplexId::new(1, 0)));
        let g = terminal_map(&d1);
        let p = pushout_by_quotient(&f, &g).unwrap();
        assert_eq!(p.set().counts(), &[2, 2, 1]);
        assert!(p.set().validate());
        let top = EzForm::nondeg(SimplexId::new(2, 0));
        assert!(p.set().face(&top, 2).is_degenerate());
        let fast = pushout(&f, &g).unwrap();
        assert!(isomorphic(p.set(), fast.set()).is_some());
    }

    #[test]
    fn wedge_of_edges() {
        let d1 = Arc::new(standard_simplex(1));
        let f = vertex_map(&d1, 1).unwrap();
        let g = vertex_map(&d1, 0).unwrap();
        let p = pushout(&f, &g).unwrap();
        assert_eq!(p.set().counts(), &[3, 2]);
        let h = terminal_map(&d1);
        let induced = p.induced(&h, &h).unwrap();
        assert_eq!(induced.target().counts(), &[1]);
        let bad = p.induced(&SimplicialMap::identity(&d1), &SimplicialMap::identity(&d1));
        assert!(bad.is_err());
    }
}
