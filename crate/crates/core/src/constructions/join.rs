use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{coproduct, coproduct_map, product, product_map, pushout, standard_simplex, terminal_map, vertex_map};
use super::{Coproduct, Product, Pushout};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet, Subcomplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum JoinCell {
    Left(SimplexId),
    Right(SimplexId),
    Cross(SimplexId, SimplexId),
}

/// The join `A ⋆ B`. In dimension `n` the simplices of `A` come first, then
/// those of `B`, then the pairs `(a, b)` with `dim a + dim b + 1 = n`.
#[derive(Clone, Debug)]
pub struct Join {
    set: Arc<SimplicialSet>,
    a: Arc<SimplicialSet>,
    b: Arc<SimplicialSet>,
    left: SimplicialMap,
    right: SimplicialMap,
    cross: HashMap<(SimplexId, SimplexId), SimplexId>,
    cells: Vec<Vec<JoinCell>>,
}

fn left_id(a: &SimplicialSet, id: SimplexId) -> SimplexId {
    let _ = a;
    id
}

fn right_id(a: &SimplicialSet, id: SimplexId) -> SimplexId {
    SimplexId::new(id.dim, a.count(id.dim) + id.index)
}

/// Builds `A ⋆ B`.
pub fn join(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> Join {
    let top = (a.top_dim() + b.top_dim() + 1).max(a.top_dim()).max(b.top_dim());
    let top = (top + 1).max(0) as usize;
    let mut faces: Vec<Vec<Vec<EzForm>>> = vec![Vec::new(); top];
    let mut cells: Vec<Vec<JoinCell>> = vec![Vec::new(); top];
    let mut labels = BTreeMap::new();
    let mut cross: HashMap<(SimplexId, SimplexId), SimplexId> = HashMap::new();
    let cross_form = |cross: &HashMap<(SimplexId, SimplexId), SimplexId>, ea: &EzForm, eb: &EzForm| EzForm {
        epi: ea.epi.join(&eb.epi),
        target: cross[&(ea.target, eb.target)],
    };
    for n in 0..top {
        for id in a.simplices(n) {
            faces[n].push(a.faces(id).to_vec());
            cells[n].push(JoinCell::Left(id));
            labels.insert(left_id(a, id), a.display_name(id));
        }
        for id in b.simplices(n) {
            let fs = b
                .faces(id)
                .iter()
                .map(|f| EzForm { epi: f.epi.clone(), target: right_id(a, f.target) })
                .collect();
            faces[n].push(fs);
            cells[n].push(JoinCell::Right(id));
            labels.insert(right_id(a, id), b.display_name(id));
        }
        for i in 0..n {
            let j = n - 1 - i;
            for x in a.simplices(i) {
                for y in b.simplices(j) {
                    let id = SimplexId::new(n, faces[n].len());
                    let fs = (0..=n)
                        .map(|k| {
                            if k <= i {
                                if i == 0 {
                                    EzForm::nondeg(right_id(a, y))
                                } else {
                                    cross_form(&cross, a.face_of(x, k), &EzForm::nondeg(y))
                                }
                            } else if j == 0 {
                                EzForm::nondeg(left_id(a, x))
                            } else {
                                cross_form(&cross, &EzForm::nondeg(x), b.face_of(y, k - i - 1))
                            }
                        })
                        .collect();
                    faces[n].push(fs);
                    cells[n].push(JoinCell::Cross(x, y));
                    labels.insert(id, format!("{}*{}", a.display_name(x), b.display_name(y)));
                    cross.insert((x, y), id);
                }
            }
        }
    }
    let set = Arc::new(SimplicialSet::from_faces(faces, labels).expect("join of well-formed sets"));
    let left = SimplicialMap::new_unchecked(
        a.clone(),
        set.clone(),
        (0..a.counts().len()).map(|d| a.simplices(d).map(EzForm::nondeg).collect()).collect(),
    );
    let right = SimplicialMap::new_unchecked(
        b.clone(),
        set.clone(),
        (0..b.counts().len())
            .map(|d| b.simplices(d).map(|id| EzForm::nondeg(right_id(a, id))).collect())
            .collect(),
    );
    Join { set, a: a.clone(), b: b.clone(), left, right, cross, cells }
}

impl Join {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    /// `A -> A ⋆ B`.
    pub fn left_inclusion(&self) -> &SimplicialMap {
        &self.left
    }

    /// `B -> A ⋆ B`.
    pub fn right_inclusion(&self) -> &SimplicialMap {
        &self.right
    }

    pub fn embed_left(&self, s: &EzForm) -> EzForm {
        self.left.apply(s)
    }

    pub fn embed_right(&self, s: &EzForm) -> EzForm {
        self.right.apply(s)
    }

    /// The simplex `s ⋆ t`.
    pub fn cross(&self, s: &EzForm, t: &EzForm) -> Result<EzForm> {
        let id = self
            .cross
            .get(&(s.target, t.target))
            .ok_or(Error::ForeignSimplex { dim: s.target.dim, index: s.target.index })?;
        Ok(EzForm { epi: s.epi.join(&t.epi), target: *id })
    }

    /// For a simplex `a ⋆ b`, its components.
    pub fn cross_components(&self, id: SimplexId) -> Option<(SimplexId, SimplexId)> {
        match self.cells[id.dim][id.index] {
            JoinCell::Cross(x, y) => Some((x, y)),
            _ => None,
        }
    }
}

/// `u ⋆ v`.
pub fn join_map(u: &SimplicialMap, v: &SimplicialMap, source: &Join, target: &Join) -> Result<SimplicialMap> {
    if **u.source() != *source.a || **v.source() != *source.b || **u.target() != *target.a || **v.target() != *target.b
    {
        return Err(Error::NotComposable("join map factors do not match the joins".into()));
    }
    let assign: Result<Vec<Vec<EzForm>>> = source
        .cells
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|cell| match *cell {
                    JoinCell::Left(x) => Ok(target.embed_left(u.image_of(x))),
                    JoinCell::Right(y) => Ok(target.embed_right(v.image_of(y))),
                    JoinCell::Cross(x, y) => target.cross(u.image_of(x), v.image_of(y)),
                })
                .collect()
        })
        .collect();
    Ok(SimplicialMap::new_unchecked(source.set.clone(), target.set.clone(), assign?))
}

/// The wide join `A ◇ B`: the pushout of `Δ^1 × A × B` along
/// `∂Δ^1 × A × B -> A ⊔ B`, where the end `{0}` projects to `A` and `{1}` to `B`.
/// In every dimension the simplices of `A` come first, then those of `B`,
/// then the cylinder simplices.
#[derive(Clone, Debug)]
pub struct WideJoin {
    a: Arc<SimplicialSet>,
    b: Arc<SimplicialSet>,
    ab: Product,
    cyl: Product,
    sum: Coproduct,
    pushout: Pushout,
    left: SimplicialMap,
    right: SimplicialMap,
}

type SpanParts = (Product, Product, Coproduct, SimplicialMap, SimplicialMap);

fn span_parts(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> SpanParts {
    let ab = product(a, b);
    let interval = Arc::new(standard_simplex(1));
    let cyl = product(&interval, ab.set());
    let to_point = terminal_map(ab.set());
    let id = SimplicialMap::identity(ab.set());
    let end = |v: usize| {
        let at = vertex_map(&interval, v).expect("Δ^1 has two vertices").after(&to_point);
        cyl.pair(&at, &id).expect("legs land in the factors")
    };
    let ends = coproduct(ab.set(), ab.set());
    let incl = ends.copair(&end(0), &end(1)).expect("common target");
    let sum = coproduct(a, b);
    let collapse = ends
        .copair(&sum.left().after(ab.pr1()), &sum.right().after(ab.pr2()))
        .expect("common target");
    (ab, cyl, sum, incl, collapse)
}

/// The span `Δ^1 × A × B <- ∂Δ^1 × A × B -> A ⊔ B` whose pushout is `A ◇ B`.
pub fn wide_join_span(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> (SimplicialMap, SimplicialMap) {
    let (_, _, _, incl, collapse) = span_parts(a, b);
    (incl, collapse)
}

/// Builds `A ◇ B`.
pub fn wide_join(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> WideJoin {
    let (ab, cyl, sum, incl, collapse) = span_parts(a, b);
    let pushout = pushout(&incl, &collapse).expect("span over ∂Δ^1 × A × B");
    let left = pushout.right().after(sum.left());
    let right = pushout.right().after(sum.right());
    WideJoin { a: a.clone(), b: b.clone(), ab, cyl, sum, pushout, left, right }
}

impl WideJoin {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        self.pushout.set()
    }

    /// `A -> A ◇ B`.
    pub fn left_inclusion(&self) -> &SimplicialMap {
        &self.left
    }

    /// `B -> A ◇ B`.
    pub fn right_inclusion(&self) -> &SimplicialMap {
        &self.right
    }

    /// `Δ^1 × A × B -> A ◇ B`.
    pub fn cylinder_map(&self) -> &SimplicialMap {
        self.pushout.left()
    }

    pub fn cylinder(&self) -> &Product {
        &self.cyl
    }

    pub fn factors(&self) -> &Product {
        &self.ab
    }

    /// The map `A ◇ B -> Z` induced by `h: Δ^1 × A × B -> Z` and the legs on
    /// `A` and `B`.
    pub fn induced(&self, h: &SimplicialMap, on_a: &SimplicialMap, on_b: &SimplicialMap) -> Result<SimplicialMap> {
        let k = self.sum.copair(on_a, on_b)?;
        self.pushout.induced(h, &k)
    }
}

/// `u ◇ v: A ◇ B -> A' ◇ B'`.
pub fn wide_join_map(
    u: &SimplicialMap,
    v: &SimplicialMap,
    source: &WideJoin,
    target: &WideJoin,
) -> Result<SimplicialMap> {
    if **u.source() != *source.a || **v.source() != *source.b || **u.target() != *target.a || **v.target() != *target.b
    {
        return Err(Error::NotComposable("wide join map factors do not match".into()));
    }
    let uv = product_map(u, v, &source.ab, &target.ab)?;
    let interval = source.cyl.left_factor();
    let cyl = product_map(&SimplicialMap::identity(interval), &uv, &source.cyl, &target.cyl)?;
    let h = target.pushout.left().after(&cyl);
    let k = target.pushout.right().after(&coproduct_map(u, v, &source.sum, &target.sum)?);
    source.pushout.induced(&h, &k)
}

/// The comparison `A ◇ B -> A ⋆ B`, sending `(t, a, b)` with `t` of the form
/// `0..01..1` to the join of the front of `a` and the back of `b`.
pub fn comparison_map(w: &WideJoin, j: &Join) -> Result<SimplicialMap> {
    if *w.a != *j.a || *w.b != *j.b {
        return Err(Error::NotComposable("wide join and join of different sets".into()));
    }
    let interval = w.cyl.left_factor();
    let h = SimplicialMap::from_fn(w.cyl.set().clone(), j.set.clone(), |id| {
        let (t, x) = w.cyl.coords(id);
        let ts = interval.vertices_of_form(t);
        let (sa, sb) = w.ab.project(x);
        let n = id.dim;
        let zeros = ts.iter().filter(|&&v| v == 0).count();
        if zeros == n + 1 {
            return Ok(j.embed_left(&sa));
        }
        if zeros == 0 {
            return Ok(j.embed_right(&sb));
        }
        let front = Operator::from_images_unchecked(n, (0..zeros).collect());
        let back = Operator::from_images_unchecked(n, (zeros..=n).collect());
        j.cross(&w.a.act_unchecked(&front, &sa), &w.b.act_unchecked(&back, &sb))
    })?;
    w.induced(&h, &j.left, &j.right)
}

/// The pushout-product of monos `u: A -> B` and `v: C -> D` with respect to
/// the wide join: the subcomplex `A ◇ D ∪ B ◇ C` of `B ◇ D` and its inclusion.
#[derive(Clone, Debug)]
pub struct PushoutProduct {
    pub whole: WideJoin,
    pub domain: Subcomplex,
    pub inclusion: SimplicialMap,
}

pub fn pp_map(u: &SimplicialMap, v: &SimplicialMap) -> Result<PushoutProduct> {
    if !u.is_mono() || !v.is_mono() {
        return Err(Error::NotMono("pushout-product factors must be monos".into()));
    }
    let whole = wide_join(u.target(), v.target());
    let bc = wide_join(u.target(), v.source());
    let ad = wide_join(u.source(), v.target());
    let left = wide_join_map(&SimplicialMap::identity(u.target()), v, &bc, &whole)?.image();
    let right = wide_join_map(u, &SimplicialMap::identity(v.target()), &ad, &whole)?.image();
    let domain = left.union(&right)?;
    let (_, inclusion) = domain.to_simplicial_set();
    Ok(PushoutProduct { whole, domain, inclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary_inclusion, horn_inclusion, simplex_by_vertices};
    use crate::simpset::{isomorphic, CountMode};

    fn delta(n: usize) -> Arc<SimplicialSet> {
        Arc::new(standard_simplex(n))
    }

    #[test]
    fn join_of_simplices_is_a_simplex() {
        for p in 0..3 {
            for q in 0..3 {
                let j = join(&delta(p), &delta(q));
                assert!(j.set().validate());
                assert!(isomorphic(j.set(), &delta(p + q + 1)).is_some(), "Δ^{p} ⋆ Δ^{q}");
            }
        }
    }

    #[test]
    fn join_with_empty_is_identity() {
        let e = Arc::new(SimplicialSet::empty());
        let j = join(&delta(2), &e);
        assert_eq!(j.set().counts(), delta(2).counts());
    }

    #[test]
    fn wide_join_point_edge() {
        let w = wide_join(&delta(0), &delta(1));
        assert_eq!(w.set().counts(), &[3, 4, 2]);
        assert!(w.set().validate());
        assert!(w.left_inclusion().is_mono() && w.right_inclusion().is_mono());
    }

    #[test]
    fn wide_join_all_simplex_counts() {
        // A_n + n A_n B_n + B_n for every n
        let a = delta(1);
        let b = delta(2);
        let w = wide_join(&a, &b);
        for n in 0..5 {
            let an = a.simplex_count(n, CountMode::All);
            let bn = b.simplex_count(n, CountMode::All);
            assert_eq!(w.set().simplex_count(n, CountMode::All), an + n as u128 * an * bn + bn, "n = {n}");
        }
    }

    #[test]
    fn comparison_is_surjective() {
        let a = delta(1);
        let b = delta(1);
        let w = wide_join(&a, &b);
        let j = join(&a, &b);
        let c = comparison_map(&w, &j).unwrap();
        assert!(c.is_epi());
        assert_eq!(c.compose(w.left_inclusion()).unwrap(), *j.left_inclusion());
    }

    #[test]
    fn wide_join_maps_compose() {
        let d0 = delta(0);
        let d1 = delta(1);
        let e = boundary_inclusion(1);
        let src = wide_join(e.source(), &d0);
        let tgt = wide_join(&d1, &d0);
        let m = wide_join_map(&e, &SimplicialMap::identity(&d0), &src, &tgt).unwrap();
        assert!(m.is_mono());
    }

    #[test]
    fn pushout_product_of_horn_and_point() {
        let u = horn_inclusion(2, 1).unwrap();
        let v = boundary_inclusion(0);
        let pp = pp_map(&u, &v).unwrap();
        assert!(pp.inclusion.is_mono());
        // Λ^2_1 ◇ Δ^0 ∪ Δ^2 ◇ ∅ = Λ^2_1 ◇ Δ^0 ∪ Δ^2
        let top = pp.whole.set();
        let vtx = simplex_by_vertices(top, &[0]).unwrap();
        assert!(pp.domain.contains(vtx));
        assert!(!pp.domain.is_full());
    }
}
