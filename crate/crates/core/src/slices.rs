//! Ordinary and wide slices under a map `K -> X`, fiber products, the
//! comparison maps into fiber products of slices, and two classifiers of
//! cocartesian edges.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::constructions::{
    horn_inclusion, join, join_map, operator_map, simplex_by_vertices, simplex_map, wide_join, wide_join_map,
};
use crate::error::{Error, Result};
use crate::hom::{
    check_fibration_truncated, extensions_indexed, first_unfillable, Budget, FibrationClass, TargetIndex,
};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplicialMap, SimplicialSet};
use crate::truncated::{build_levelwise, map_between, Levelwise, TruncatedSimplicialSet};

type Key = Vec<Vec<EzForm>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceKind {
    /// Built from `K ⋆ Δ^n`.
    Ordinary,
    /// Built from `K ◇ Δ^n`.
    Wide,
}

/// The cosimplicial object `n ↦ K ⋆ Δ^n` (or `K ◇ Δ^n`) up to a bound.
struct Shapes {
    sets: Vec<Arc<SimplicialSet>>,
    under: Vec<SimplicialMap>,
    // faces[n][i]: shape(n-1) -> shape(n)
    faces: Vec<Vec<SimplicialMap>>,
    // degens[n][j]: shape(n+1) -> shape(n)
    degens: Vec<Vec<SimplicialMap>>,
}

fn delta(n: usize) -> Arc<SimplicialSet> {
    Arc::new(crate::constructions::standard_simplex(n))
}

enum Built {
    Ordinary(crate::constructions::Join),
    Wide(crate::constructions::WideJoin),
}

impl Built {
    fn new(kind: SliceKind, k: &Arc<SimplicialSet>, n: usize) -> Self {
        match kind {
            SliceKind::Ordinary => Built::Ordinary(join(k, &delta(n))),
            SliceKind::Wide => Built::Wide(wide_join(k, &delta(n))),
        }
    }

    fn set(&self) -> &Arc<SimplicialSet> {
        match self {
            Built::Ordinary(j) => j.set(),
            Built::Wide(w) => w.set(),
        }
    }

    fn under(&self) -> &SimplicialMap {
        match self {
            Built::Ordinary(j) => j.left_inclusion(),
            Built::Wide(w) => w.left_inclusion(),
        }
    }
}

fn built_map(u: &SimplicialMap, v: &SimplicialMap, src: &Built, tgt: &Built) -> Result<SimplicialMap> {
    match (src, tgt) {
        (Built::Ordinary(a), Built::Ordinary(b)) => join_map(u, v, a, b),
        (Built::Wide(a), Built::Wide(b)) => wide_join_map(u, v, a, b),
        _ => Err(Error::NotComposable("mixed join kinds".into())),
    }
}

type ShapeCache = Mutex<HashMap<(SliceKind, String, usize), Arc<Shapes>>>;
type RestrictCache = Mutex<HashMap<(SliceKind, String, usize), Arc<Vec<SimplicialMap>>>>;

fn shape_cache() -> &'static ShapeCache {
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn restrict_cache() -> &'static RestrictCache {
    static CACHE: OnceLock<RestrictCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn shapes(kind: SliceKind, k: &Arc<SimplicialSet>, bound: usize) -> Result<Arc<Shapes>> {
    let key = (kind, k.to_json_string(), bound);
    if let Some(s) = shape_cache().lock().expect("cache").get(&key) {
        return Ok(s.clone());
    }
    let built: Vec<Built> = (0..=bound).map(|n| Built::new(kind, k, n)).collect();
    let id_k = SimplicialMap::identity(k);
    let faces = (0..=bound)
        .map(|n| {
            if n == 0 {
                return Ok(Vec::new());
            }
            (0..=n)
                .map(|i| built_map(&id_k, &operator_map(&Operator::face(n, i)?), &built[n - 1], &built[n]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let degens = (0..bound)
        .map(|n| {
            (0..=n)
                .map(|j| built_map(&id_k, &operator_map(&Operator::degeneracy(n, j)?), &built[n + 1], &built[n]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let s = Arc::new(Shapes {
        sets: built.iter().map(|b| b.set().clone()).collect(),
        under: built.iter().map(|b| b.under().clone()).collect(),
        faces,
        degens,
    });
    shape_cache().lock().expect("cache").insert(key, s.clone());
    Ok(s)
}

/// `u ⋆ Δ^n` (or `u ◇ Δ^n`) for `n ≤ bound`.
fn restrictions(kind: SliceKind, u: &SimplicialMap, bound: usize) -> Result<Arc<Vec<SimplicialMap>>> {
    let key = (kind, format!("{}", u.to_json()), bound);
    if let Some(r) = restrict_cache().lock().expect("cache").get(&key) {
        return Ok(r.clone());
    }
    let maps = (0..=bound)
        .map(|n| {
            let src = Built::new(kind, u.source(), n);
            let tgt = Built::new(kind, u.target(), n);
            built_map(u, &SimplicialMap::identity(&delta(n)), &src, &tgt)
        })
        .collect::<Result<Vec<_>>>()?;
    let r = Arc::new(maps);
    restrict_cache().lock().expect("cache").insert(key, r.clone());
    Ok(r)
}

/// `key ∘ m` for a map `m` into the shape on which `key` is defined.
fn precompose(key: &Key, m: &SimplicialMap) -> Key {
    m.assignment()
        .iter()
        .map(|l| {
            l.iter()
                .map(|s| {
                    let img = &key[s.target.dim][s.target.index];
                    EzForm { epi: img.epi.after(&s.epi), target: img.target }
                })
                .collect()
        })
        .collect()
}

fn postcompose(p: &SimplicialMap, key: &Key) -> Key {
    key.iter().map(|l| l.iter().map(|s| p.apply(s)).collect()).collect()
}

/// A slice `X_{p/}` or wide slice `X^{p/}`, truncated at its bound. Its
/// simplices are the underlying maps out of the join shapes.
pub struct Slice {
    kind: SliceKind,
    truncated: TruncatedSimplicialSet,
    under: SimplicialMap,
    lw: Levelwise<Key>,
}

impl std::fmt::Debug for Slice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Slice({:?}, {:?})", self.kind, self.truncated)
    }
}

impl Slice {
    pub fn kind(&self) -> SliceKind {
        self.kind
    }

    pub fn truncated(&self) -> &TruncatedSimplicialSet {
        &self.truncated
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        self.truncated.set()
    }

    pub fn bound(&self) -> usize {
        self.truncated.truncation_dim()
    }

    /// The map `K -> X` the slice is taken under.
    pub fn under(&self) -> &SimplicialMap {
        &self.under
    }

    /// The map out of `K ⋆ Δ^n` (or `K ◇ Δ^n`) represented by a simplex.
    pub fn underlying(&self, s: &EzForm) -> Result<SimplicialMap> {
        let sh = shapes(self.kind, self.under.source(), self.bound())?;
        let key = self.lw.key_of(s.target);
        let mut m = SimplicialMap::new(sh.sets[s.target.dim].clone(), self.under.target().clone(), key.clone())?;
        let n = s.dim();
        if s.is_degenerate() {
            let along = built_map(
                &SimplicialMap::identity(self.under.source()),
                &operator_map(&s.epi),
                &Built::new(self.kind, self.under.source(), n),
                &Built::new(self.kind, self.under.source(), s.target.dim),
            )?;
            m = m.compose(&along)?;
        }
        Ok(m)
    }
}

/// `X_{p/}` up to dimension `bound`.
pub fn slice_under(x: &Arc<SimplicialSet>, p: &SimplicialMap, bound: usize) -> Result<Slice> {
    build_slice(SliceKind::Ordinary, x, p, bound, &Budget::default())
}

/// `X^{p/}` up to dimension `bound`.
pub fn wide_slice(x: &Arc<SimplicialSet>, p: &SimplicialMap, bound: usize) -> Result<Slice> {
    build_slice(SliceKind::Wide, x, p, bound, &Budget::default())
}

pub fn build_slice(
    kind: SliceKind,
    x: &Arc<SimplicialSet>,
    p: &SimplicialMap,
    bound: usize,
    budget: &Budget,
) -> Result<Slice> {
    if **p.target() != **x {
        return Err(Error::NotComposable("slice map does not land in the set".into()));
    }
    let sh = shapes(kind, p.source(), bound)?;
    let top = sh.sets.iter().map(|s| s.top_dim().max(0) as usize).max().unwrap_or(0);
    let index = TargetIndex::new(x, top);
    let levels = (0..=bound)
        .into_par_iter()
        .map(|n| {
            extensions_indexed(p, &sh.under[n], &index, budget)
                .map(|ms| ms.into_iter().map(SimplicialMap::into_assignment).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let lw = build_levelwise(
        levels,
        |n, k, i| precompose(k, &sh.faces[n][i]),
        |n, k, j| precompose(k, &sh.degens[n][j]),
    )?;
    Ok(Slice { kind, truncated: TruncatedSimplicialSet::new(lw.set.clone(), bound)?, under: p.clone(), lw })
}

/// `A ×_C B` with its projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pr1: SimplicialMap,
    pr2: SimplicialMap,
    lw: Levelwise<(EzForm, EzForm)>,
}

impl FiberProduct {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.lw.set
    }

    pub fn pr1(&self) -> &SimplicialMap {
        &self.pr1
    }

    pub fn pr2(&self) -> &SimplicialMap {
        &self.pr2
    }

    /// Number of levels represented.
    pub fn bound(&self) -> usize {
        self.lw.lookup.len().saturating_sub(1)
    }

    /// The simplex with components `a` and `b`.
    pub fn pair_form(&self, a: &EzForm, b: &EzForm) -> Result<EzForm> {
        self.lw.form_of(a.dim(), &(a.clone(), b.clone()))
    }

    /// `(h, k): Z -> A ×_C B`.
    pub fn pair(&self, h: &SimplicialMap, k: &SimplicialMap) -> Result<SimplicialMap> {
        let z = h.source();
        let assign = (0..z.counts().len())
            .map(|d| z.simplices(d).map(|id| self.pair_form(h.image_of(id), k.image_of(id))).collect())
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(z.clone(), self.set().clone(), assign)
    }
}

/// `A ×_C B`, complete.
pub fn fiber_product(f: &SimplicialMap, g: &SimplicialMap) -> Result<FiberProduct> {
    let bound = (f.source().top_dim().max(0) + g.source().top_dim().max(0)) as usize;
    fiber_product_truncated(f, g, bound)
}

/// `A ×_C B` up to dimension `bound`.
pub fn fiber_product_truncated(f: &SimplicialMap, g: &SimplicialMap, bound: usize) -> Result<FiberProduct> {
    if **f.target() != **g.target() {
        return Err(Error::NotComposable("fiber product legs have different targets".into()));
    }
    let (a, b) = (f.source().clone(), g.source().clone());
    let levels: Vec<Vec<(EzForm, EzForm)>> = (0..=bound)
        .into_par_iter()
        .map(|n| {
            let mut by_image: HashMap<EzForm, Vec<EzForm>> = HashMap::new();
            for t in b.all_simplices(n) {
                by_image.entry(g.apply(&t)).or_default().push(t);
            }
            let mut out = Vec::new();
            for s in a.all_simplices(n) {
                if let Some(ts) = by_image.get(&f.apply(&s)) {
                    out.extend(ts.iter().map(|t| (s.clone(), t.clone())));
                }
            }
            out
        })
        .collect();
    let lw = build_levelwise(
        levels,
        |_, (s, t), i| (a.face(s, i), b.face(t, i)),
        |n, (s, t), j| {
            let sj = Operator::degeneracy(n, j).expect("degeneracy");
            (a.act_unchecked(&sj, s), b.act_unchecked(&sj, t))
        },
    )?;
    let proj = |first: bool| -> Vec<Vec<EzForm>> {
        lw.keys.iter().map(|l| l.iter().map(|(s, t)| if first { s.clone() } else { t.clone() }).collect()).collect()
    };
    let pr1 = SimplicialMap::new(lw.set.clone(), a.clone(), proj(true))?;
    let pr2 = SimplicialMap::new(lw.set.clone(), b.clone(), proj(false))?;
    Ok(FiberProduct { pr1, pr2, lw })
}

/// The map from a slice into a fiber product of slices, with everything
/// it was built from.
#[derive(Debug)]
pub struct Comparison {
    pub source: Slice,
    pub restricted: Slice,
    pub base_restricted: Slice,
    pub base: Slice,
    pub fiber: FiberProduct,
    pub map: SimplicialMap,
    pub bound: usize,
}

impl Comparison {
    pub fn target_truncated(&self) -> Result<TruncatedSimplicialSet> {
        TruncatedSimplicialSet::new(self.fiber.set().clone(), self.bound)
    }

    /// Bounded fibration check of the comparison map at dimension `max_dim`
    /// (at most one below the bound).
    pub fn check(&self, class: FibrationClass, max_dim: usize, budget: &Budget) -> Result<crate::hom::FibrationCheck> {
        check_fibration_truncated(
            &self.map,
            self.source.truncated(),
            &self.target_truncated()?,
            class,
            max_dim,
            budget,
        )
    }
}

fn comparison(
    kind: SliceKind,
    u: &SimplicialMap,
    f: &SimplicialMap,
    p: &SimplicialMap,
    bound: usize,
    budget: &Budget,
) -> Result<Comparison> {
    if **u.target() != **f.source() || **f.target() != **p.source() {
        return Err(Error::NotComposable("comparison data do not compose".into()));
    }
    let x = f.target();
    let y = p.target();
    let fu = f.compose(u)?;
    let pf = p.compose(f)?;
    let pfu = p.compose(&fu)?;
    let w1 = build_slice(kind, x, f, bound, budget)?;
    let w2 = build_slice(kind, x, &fu, bound, budget)?;
    let w3 = build_slice(kind, y, &pfu, bound, budget)?;
    let w4 = build_slice(kind, y, &pf, bound, budget)?;
    let res = restrictions(kind, u, bound)?;
    let restrict = |n: usize, k: &Key| precompose(k, &res[n]);
    let post = |_: usize, k: &Key| postcompose(p, k);
    let r = map_between(&w1.lw, &w2.lw, restrict)?;
    let q = map_between(&w1.lw, &w4.lw, post)?;
    let s = map_between(&w2.lw, &w3.lw, post)?;
    let t = map_between(&w4.lw, &w3.lw, restrict)?;
    let fiber = fiber_product_truncated(&s, &t, bound)?;
    let map = fiber.pair(&r, &q)?;
    Ok(Comparison { source: w1, restricted: w2, base_restricted: w3, base: w4, fiber, map, bound })
}

/// `X^{f/} -> X^{fu/} ×_{Y^{pfu/}} Y^{pf/}`.
pub fn thm_b_comparison(
    u: &SimplicialMap,
    f: &SimplicialMap,
    p: &SimplicialMap,
    bound: usize,
    budget: &Budget,
) -> Result<Comparison> {
    comparison(SliceKind::Wide, u, f, p, bound, budget)
}

/// `X_{u/} -> X_{v/} ×_{S_{pv/}} S_{pu/}` for `v` the restriction of `u`
/// along `incl: K -> L`.
pub fn thm_a_comparison(
    incl: &SimplicialMap,
    u: &SimplicialMap,
    p: &SimplicialMap,
    bound: usize,
    budget: &Budget,
) -> Result<Comparison> {
    comparison(SliceKind::Ordinary, incl, u, p, bound, budget)
}

fn check_edge_bound(bound: usize) -> Result<()> {
    if bound < 2 {
        return Err(Error::BoundTooSmall { bound, minimum: 2 });
    }
    Ok(())
}

/// Edges `e` such that every `Λ^n_0 -> X` with initial edge `e`, over any
/// `Δ^n -> S`, extends, for `2 ≤ n ≤ bound`.
pub fn cocartesian_edges(p: &SimplicialMap, bound: usize) -> Result<Vec<EzForm>> {
    cocartesian_edges_with_budget(p, bound, &Budget::default())
}

pub fn cocartesian_edges_with_budget(p: &SimplicialMap, bound: usize, budget: &Budget) -> Result<Vec<EzForm>> {
    check_edge_bound(bound)?;
    let x = p.source();
    let index_x = TargetIndex::new(x, bound);
    let index_s = TargetIndex::new(p.target(), bound);
    let horns: Vec<(SimplicialMap, SimplicialMap)> = (2..=bound)
        .map(|n| {
            let incl = horn_inclusion(n, 0)?;
            let h = incl.source().clone();
            let e = simplex_by_vertices(&h, &[0, 1]).expect("horn contains the initial edge");
            Ok((simplex_map(&h, &EzForm::nondeg(e)), incl))
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = x.all_simplices(1);
    let verdicts = edges
        .par_iter()
        .map(|e| -> Result<bool> {
            let em = simplex_map(x, e);
            for (edge_in_horn, incl) in &horns {
                let tops = extensions_indexed(&em, edge_in_horn, &index_x, budget)?;
                if first_unfillable(incl, p, &tops, &index_x, &index_s, budget)?.is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(edges.into_iter().zip(verdicts).filter_map(|(e, ok)| ok.then_some(e)).collect())
}

/// Edges `e: x -> y` whose comparison `X^{e/} -> X^{x/} ×_{S^{px/}} S^{pe/}`
/// passes the trivial-fibration check at dimension `bound - 1`.
pub fn wide_cocartesian_edges(p: &SimplicialMap, bound: usize) -> Result<Vec<EzForm>> {
    wide_cocartesian_edges_with_budget(p, bound, &Budget::default())
}

pub fn wide_cocartesian_edges_with_budget(p: &SimplicialMap, bound: usize, budget: &Budget) -> Result<Vec<EzForm>> {
    check_edge_bound(bound)?;
    let x = p.source();
    let u = operator_map(&Operator::vertex(1, 0)?);
    let edges = x.all_simplices(1);
    let verdicts = edges
        .par_iter()
        .map(|e| -> Result<bool> {
            let c = thm_b_comparison(&u, &simplex_map(x, e), p, bound, budget)?;
            Ok(c.check(FibrationClass::Trivial, bound - 1, budget)?.holds)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(edges.into_iter().zip(verdicts).filter_map(|(e, ok)| ok.then_some(e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{horn_inclusion, standard_simplex, terminal_map, vertex_map};
    use crate::simpset::{isomorphic, CountMode};

    fn d(n: usize) -> Arc<SimplicialSet> {
        Arc::new(standard_simplex(n))
    }

    #[test]
    fn small_slices() {
        assert_eq!(slice_under(&d(2), &vertex_map(&d(2), 0).unwrap(), 1).unwrap().set().count(0), 3);
        assert_eq!(slice_under(&d(1), &vertex_map(&d(1), 1).unwrap(), 0).unwrap().set().count(0), 1);
        assert_eq!(wide_slice(&d(2), &vertex_map(&d(2), 0).unwrap(), 0).unwrap().set().count(0), 3);
    }

    #[test]
    fn slices_under_empty_map_are_the_set() {
        let x = Arc::new(crate::constructions::horn(2, 1).unwrap());
        let e = SimplicialMap::from_empty(&x);
        for s in [slice_under(&x, &e, 3).unwrap(), wide_slice(&x, &e, 3).unwrap()] {
            assert!(isomorphic(s.set(), &x).is_some());
            assert_eq!(s.bound(), 3);
        }
    }

    #[test]
    fn wide_slice_of_point() {
        let p = terminal_map(&d(1));
        let s = wide_slice(p.target(), &p, 2).unwrap();
        assert_eq!(s.set().counts(), &[1]);
    }

    #[test]
    fn slice_of_simplex_under_vertex_is_a_simplex() {
        // everything in Δ^2 lies under 0
        let s = slice_under(&d(2), &vertex_map(&d(2), 0).unwrap(), 3).unwrap();
        assert!(s.truncated().agrees_with(&standard_simplex(2), true).unwrap());
        let top = EzForm::nondeg(crate::simpset::SimplexId::new(2, 0));
        assert_eq!(s.underlying(&top).unwrap().source().counts(), &[4, 6, 4, 1]);
    }

    #[test]
    fn fiber_products() {
        let x = Arc::new(crate::constructions::horn(2, 0).unwrap());
        let id = SimplicialMap::identity(&x);
        assert!(isomorphic(fiber_product(&id, &id).unwrap().set(), &x).is_some());
        let v0 = vertex_map(&d(1), 0).unwrap();
        let v1 = vertex_map(&d(1), 1).unwrap();
        assert!(fiber_product(&v0, &v1).unwrap().set().is_empty());
        let (a, b) = (d(1), d(1));
        let fp = fiber_product(&terminal_map(&a), &terminal_map(&b)).unwrap();
        let prod = crate::constructions::product(&a, &b);
        assert!(isomorphic(fp.set(), prod.set()).is_some());
    }

    #[test]
    fn identity_comparison_is_an_isomorphism() {
        let x = d(2);
        let f = vertex_map(&x, 0).unwrap();
        let u = SimplicialMap::identity(f.source());
        let p = terminal_map(&x);
        let c = thm_b_comparison(&u, &f, &p, 2, &Budget::default()).unwrap();
        assert!(c.map.is_iso());
        assert!(c.check(FibrationClass::Trivial, 1, &Budget::default()).unwrap().holds);
        assert!(c.check(FibrationClass::Trivial, 2, &Budget::default()).is_err());
    }

    #[test]
    fn wide_comparison_for_inner_horn() {
        let x = d(2);
        let u = horn_inclusion(2, 1).unwrap();
        let f = SimplicialMap::identity(&x);
        let p = terminal_map(&x);
        let c = thm_b_comparison(&u, &f, &p, 3, &Budget::default()).unwrap();
        assert!(c.check(FibrationClass::Trivial, 2, &Budget::default()).unwrap().holds);
        let a = thm_a_comparison(&u, &f, &p, 3, &Budget::default()).unwrap();
        assert!(a.check(FibrationClass::Trivial, 2, &Budget::default()).unwrap().holds);
    }

    #[test]
    fn cocartesian_edges_of_identity_and_of_collage() {
        let x = d(2);
        let id = SimplicialMap::identity(&x);
        let all = x.all_simplices(1).len();
        assert_eq!(cocartesian_edges(&id, 3).unwrap().len(), all);
        assert_eq!(wide_cocartesian_edges(&id, 3).unwrap().len(), all);
        // a ↦ 0, b1, b2 ↦ 1
        let p = operator_map(&Operator::new(1, vec![0, 1, 1]).unwrap());
        let strict = cocartesian_edges(&p, 3).unwrap();
        let wide = wide_cocartesian_edges(&p, 3).unwrap();
        assert_eq!(strict, wide);
        let nondeg: Vec<Vec<usize>> =
            strict.iter().filter(|e| !e.is_degenerate()).map(|e| x.vertices_of(e.target).to_vec()).collect();
        assert_eq!(nondeg, vec![vec![0, 1]]);
        assert!(cocartesian_edges(&p, 1).is_err());
        assert_eq!(x.simplex_count(1, CountMode::All), 6);
    }
}
