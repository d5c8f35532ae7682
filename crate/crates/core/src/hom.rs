//! Enumeration of simplicial maps, lifting problems, bounded fibration
//! checks and equivalence edges.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::constructions::{
    boundary_inclusion, horn_inclusion, operator_map, product, product_map, standard_simplex, terminal_map,
};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet};
use crate::truncated::{build_levelwise, TruncatedSimplicialSet};

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// A shared node counter. Cloning shares the counter.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: Arc<AtomicU64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: Arc::new(AtomicU64::new(0)) }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn tick(&self) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Every simplex of `X` up to a dimension, indexed by its tuple of faces.
#[derive(Debug)]
pub struct TargetIndex {
    set: Arc<SimplicialSet>,
    levels: Vec<HashMap<Vec<EzForm>, Vec<EzForm>>>,
}

impl TargetIndex {
    pub fn new(x: &Arc<SimplicialSet>, max_dim: usize) -> Self {
        let levels = (0..=max_dim)
            .map(|n| {
                let mut m: HashMap<Vec<EzForm>, Vec<EzForm>> = HashMap::new();
                for s in x.all_simplices(n) {
                    let key = if n == 0 { Vec::new() } else { (0..=n).map(|i| x.face(&s, i)).collect() };
                    m.entry(key).or_default().push(s);
                }
                m
            })
            .collect();
        TargetIndex { set: x.clone(), levels }
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn max_dim(&self) -> usize {
        self.levels.len() - 1
    }

    fn candidates(&self, n: usize, key: &[EzForm]) -> &[EzForm] {
        self.levels[n].get(key).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Map search from `source` into the indexed target. `fixed[d][i]` pins the
/// image of a nondegenerate simplex; `over` restricts images to lie over a
/// given map into a base.
pub(crate) struct Search<'a> {
    pub source: &'a SimplicialSet,
    pub index: &'a TargetIndex,
    pub fixed: Option<&'a [Vec<Option<EzForm>>]>,
    pub over: Option<(&'a SimplicialMap, &'a SimplicialMap)>,
}

impl Search<'_> {
    /// Visits every solution in the deterministic order; the visitor
    /// returns `false` to stop.
    pub fn run(&self, budget: &Budget, visit: &mut dyn FnMut(&[Vec<EzForm>]) -> bool) -> Result<()> {
        let src = self.source;
        if src.top_dim() > self.index.max_dim() as isize {
            return Err(Error::DimensionMismatch { expected: self.index.max_dim(), found: src.top_dim() as usize });
        }
        let dummy = EzForm::nondeg(SimplexId::new(0, 0));
        let mut assign: Vec<Vec<EzForm>> = src.counts().iter().map(|&c| vec![dummy.clone(); c]).collect();
        let mut free = Vec::new();
        for id in src.all_ids() {
            match self.fixed.and_then(|f| f[id.dim][id.index].clone()) {
                Some(v) => assign[id.dim][id.index] = v,
                None => free.push(id),
            }
        }
        self.go(0, &free, &mut assign, budget, visit).map(|_| ())
    }

    fn go(
        &self,
        pos: usize,
        free: &[SimplexId],
        assign: &mut Vec<Vec<EzForm>>,
        budget: &Budget,
        visit: &mut dyn FnMut(&[Vec<EzForm>]) -> bool,
    ) -> Result<bool> {
        if pos == free.len() {
            return Ok(visit(assign));
        }
        budget.tick()?;
        let id = free[pos];
        let key: Vec<EzForm> = self
            .source
            .faces(id)
            .iter()
            .map(|f| {
                let img = &assign[f.target.dim][f.target.index];
                EzForm { epi: img.epi.after(&f.epi), target: img.target }
            })
            .collect();
        let want = self.over.map(|(_, bottom)| bottom.image_of(id));
        for c in self.index.candidates(id.dim, &key) {
            if let (Some((p, _)), Some(w)) = (self.over, want) {
                if p.apply(c) != *w {
                    continue;
                }
            }
            assign[id.dim][id.index] = c.clone();
            if !self.go(pos + 1, free, assign, budget, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn collect_maps(
    source: &Arc<SimplicialSet>,
    index: &TargetIndex,
    fixed: Option<&[Vec<Option<EzForm>>]>,
    over: Option<(&SimplicialMap, &SimplicialMap)>,
    budget: &Budget,
    limit: Option<usize>,
) -> Result<Vec<SimplicialMap>> {
    let mut out = Vec::new();
    Search { source, index, fixed, over }.run(budget, &mut |a| {
        out.push(SimplicialMap::new_unchecked(source.clone(), index.set().clone(), a.to_vec()));
        limit.is_none_or(|l| out.len() < l)
    })?;
    Ok(out)
}

fn dim_of(a: &SimplicialSet) -> usize {
    a.top_dim().max(0) as usize
}

/// All maps `A -> X`, dimension-major and index-minor.
pub fn enumerate_maps(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>) -> Vec<SimplicialMap> {
    enumerate_maps_with_budget(a, x, &Budget::unlimited()).expect("unlimited budget")
}

pub fn enumerate_maps_with_budget(
    a: &Arc<SimplicialSet>,
    x: &Arc<SimplicialSet>,
    budget: &Budget,
) -> Result<Vec<SimplicialMap>> {
    let index = TargetIndex::new(x, dim_of(a));
    collect_maps(a, &index, None, None, budget, None)
}

/// The first mono `A -> X` in enumeration order, if any.
pub fn find_embedding(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, budget: &Budget) -> Result<Option<SimplicialMap>> {
    if a.counts().iter().zip(x.counts()).any(|(m, n)| m > n) || a.counts().len() > x.counts().len() {
        return Ok(None);
    }
    let index = TargetIndex::new(x, dim_of(a));
    let mut found = None;
    Search { source: a, index: &index, fixed: None, over: None }.run(budget, &mut |assign| {
        let injective = assign.iter().all(|level| {
            let mut seen = std::collections::HashSet::new();
            level.iter().all(|f| !f.is_degenerate() && seen.insert(f.target))
        });
        if injective {
            found = Some(SimplicialMap::new_unchecked(a.clone(), x.clone(), assign.to_vec()));
        }
        !injective
    })?;
    Ok(found)
}

/// Pins the values of `f` on the image of the mono `incl`.
fn pinned(f: &SimplicialMap, incl: &SimplicialMap) -> Result<Vec<Vec<Option<EzForm>>>> {
    if !incl.is_mono() {
        return Err(Error::NotMono("extension along a map that is not injective".into()));
    }
    if **f.source() != **incl.source() {
        return Err(Error::NotComposable("map and inclusion have different sources".into()));
    }
    let b = incl.target();
    let mut fixed: Vec<Vec<Option<EzForm>>> = b.counts().iter().map(|&c| vec![None; c]).collect();
    for id in incl.source().all_ids() {
        let t = incl.image_of(id).target;
        fixed[t.dim][t.index] = Some(f.image_of(id).clone());
    }
    Ok(fixed)
}

/// All extensions of `f: A -> X` along the mono `incl: A -> B`.
pub fn extensions(f: &SimplicialMap, incl: &SimplicialMap) -> Result<Vec<SimplicialMap>> {
    extensions_with_budget(f, incl, &Budget::unlimited())
}

pub fn extensions_with_budget(f: &SimplicialMap, incl: &SimplicialMap, budget: &Budget) -> Result<Vec<SimplicialMap>> {
    let index = TargetIndex::new(f.target(), dim_of(incl.target()));
    extensions_indexed(f, incl, &index, budget)
}

pub(crate) fn extensions_indexed(
    f: &SimplicialMap,
    incl: &SimplicialMap,
    index: &TargetIndex,
    budget: &Budget,
) -> Result<Vec<SimplicialMap>> {
    let fixed = pinned(f, incl)?;
    collect_maps(incl.target(), index, Some(&fixed), None, budget, None)
}

/// A commutative square `p ∘ top = bottom ∘ left` with `left` mono.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    left: SimplicialMap,
    right: SimplicialMap,
    top: SimplicialMap,
    bottom: SimplicialMap,
}

impl LiftingProblem {
    pub fn new(left: SimplicialMap, right: SimplicialMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
        if !left.is_mono() {
            return Err(Error::NotMono("left side of a lifting problem".into()));
        }
        let a = right.compose(&top)?;
        let b = bottom.compose(&left)?;
        if a != b {
            return Err(Error::NotCommutative("p ∘ top differs from bottom ∘ i".into()));
        }
        Ok(LiftingProblem { left, right, top, bottom })
    }

    pub fn left(&self) -> &SimplicialMap {
        &self.left
    }
    pub fn right(&self) -> &SimplicialMap {
        &self.right
    }
    pub fn top(&self) -> &SimplicialMap {
        &self.top
    }
    pub fn bottom(&self) -> &SimplicialMap {
        &self.bottom
    }

    pub fn to_json(&self) -> Value {
        json!({"problem": {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "top": self.top.to_json(),
            "bottom": self.bottom.to_json(),
        }})
    }
}

/// A diagonal filler, or `None` once the search space is exhausted.
pub fn solve_lift(problem: &LiftingProblem) -> Option<SimplicialMap> {
    solve_lift_with_budget(problem, &Budget::unlimited()).expect("unlimited budget")
}

pub fn solve_lift_with_budget(problem: &LiftingProblem, budget: &Budget) -> Result<Option<SimplicialMap>> {
    let index = TargetIndex::new(problem.top.target(), dim_of(problem.left.target()));
    let fixed = pinned(&problem.top, &problem.left)?;
    let found = collect_maps(
        problem.left.target(),
        &index,
        Some(&fixed),
        Some((&problem.right, &problem.bottom)),
        budget,
        Some(1),
    )?;
    Ok(found.into_iter().next())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FibrationClass {
    Inner,
    Left,
    Right,
    Kan,
    Trivial,
}

impl FibrationClass {
    pub const ALL: [FibrationClass; 5] = [
        FibrationClass::Inner,
        FibrationClass::Left,
        FibrationClass::Right,
        FibrationClass::Kan,
        FibrationClass::Trivial,
    ];

    /// Whether `Λ^n_k ⊂ Δ^n` is a generator of the class.
    pub fn allows_horn(self, n: usize, k: usize) -> bool {
        match self {
            FibrationClass::Inner => 0 < k && k < n,
            FibrationClass::Left => k < n,
            FibrationClass::Right => 0 < k && k <= n,
            FibrationClass::Kan => k <= n,
            FibrationClass::Trivial => false,
        }
    }

    /// Generating inclusions of dimension at most `max_dim`, ordered by
    /// dimension and horn index.
    pub fn generators(self, max_dim: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for n in 0..=max_dim {
            if self == FibrationClass::Trivial {
                out.push(Generator { n, k: None, inclusion: boundary_inclusion(n) });
                continue;
            }
            for k in 0..=n {
                if n >= 1 && self.allows_horn(n, k) {
                    out.push(Generator { n, k: Some(k), inclusion: horn_inclusion(n, k).expect("valid horn") });
                }
            }
        }
        out
    }
}

impl fmt::Display for FibrationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibrationClass::Inner => "inner",
            FibrationClass::Left => "left",
            FibrationClass::Right => "right",
            FibrationClass::Kan => "kan",
            FibrationClass::Trivial => "trivial",
        })
    }
}

impl FromStr for FibrationClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "inner" => FibrationClass::Inner,
            "left" => FibrationClass::Left,
            "right" => FibrationClass::Right,
            "kan" => FibrationClass::Kan,
            "trivial" => FibrationClass::Trivial,
            other => return Err(Error::Json(format!("unknown class {other:?}"))),
        })
    }
}

/// `Λ^n_k ⊂ Δ^n` (with `k`) or `∂Δ^n ⊂ Δ^n` (without).
#[derive(Clone, Debug)]
pub struct Generator {
    pub n: usize,
    pub k: Option<usize>,
    pub inclusion: SimplicialMap,
}

/// Result of a bounded fibration check.
#[derive(Clone, Debug)]
pub struct FibrationCheck {
    pub class: FibrationClass,
    pub max_dim: usize,
    pub holds: bool,
    pub witness: Option<LiftingProblem>,
}

impl FibrationCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.to_string(),
            "max_dim": self.max_dim,
            "holds": self.holds,
            "witness": self.witness.as_ref().map(LiftingProblem::to_json),
        })
    }
}

/// Finds the first top map (in enumeration order) admitting a bottom map
/// with no filler. Tops are checked in parallel.
pub(crate) fn first_unfillable(
    incl: &SimplicialMap,
    p: &SimplicialMap,
    tops: &[SimplicialMap],
    index_x: &TargetIndex,
    index_s: &TargetIndex,
    budget: &Budget,
) -> Result<Option<LiftingProblem>> {
    let found = tops
        .par_iter()
        .map(|top| -> Result<Option<LiftingProblem>> {
            let pt = p.after(top);
            let bottoms = extensions_indexed(&pt, incl, index_s, budget)?;
            let lifts = extensions_indexed(top, incl, index_x, budget)?;
            let covered: HashSet<Vec<Vec<EzForm>>> =
                lifts.iter().map(|d| p.after(d).into_assignment()).collect();
            Ok(bottoms
                .into_iter()
                .find(|b| !covered.contains(b.assignment()))
                .map(|b| LiftingProblem { left: incl.clone(), right: p.clone(), top: top.clone(), bottom: b }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    found.unwrap_or(Ok(None))
}

/// Bounded check of the right lifting property against the generators of
/// `class` of dimension at most `max_dim`.
pub fn check_fibration(p: &SimplicialMap, class: FibrationClass, max_dim: usize) -> FibrationCheck {
    check_fibration_with_budget(p, class, max_dim, &Budget::unlimited()).expect("unlimited budget")
}

pub fn check_fibration_with_budget(
    p: &SimplicialMap,
    class: FibrationClass,
    max_dim: usize,
    budget: &Budget,
) -> Result<FibrationCheck> {
    let index_x = TargetIndex::new(p.source(), max_dim);
    let index_s = TargetIndex::new(p.target(), max_dim);
    for g in class.generators(max_dim) {
        let tops = collect_maps(g.inclusion.source(), &index_x, None, None, budget, None)?;
        if let Some(w) = first_unfillable(&g.inclusion, p, &tops, &index_x, &index_s, budget)? {
            return Ok(FibrationCheck { class, max_dim, holds: false, witness: Some(w) });
        }
    }
    Ok(FibrationCheck { class, max_dim, holds: true, witness: None })
}

/// Fibration check on truncated sets, refusing bounds the truncation cannot
/// support.
pub fn check_fibration_truncated(
    p: &SimplicialMap,
    source: &TruncatedSimplicialSet,
    target: &TruncatedSimplicialSet,
    class: FibrationClass,
    max_dim: usize,
    budget: &Budget,
) -> Result<FibrationCheck> {
    source.check_bound(max_dim)?;
    target.check_bound(max_dim)?;
    check_fibration_with_budget(p, class, max_dim, budget)
}

/// Whether `X -> Δ^0` fills inner horns up to `max_dim`.
pub fn is_quasicategory(x: &Arc<SimplicialSet>, max_dim: usize) -> bool {
    check_fibration(&terminal_map(x), FibrationClass::Inner, max_dim).holds
}

/// Whether the edge `e` has a homotopy inverse: an edge `e'` with
/// 2-simplices witnessing `e' ∘ e ≃ id` and `e ∘ e' ≃ id`.
pub fn is_equivalence_edge(x: &Arc<SimplicialSet>, e: &EzForm, max_dim: usize) -> Result<bool> {
    if e.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: e.dim() });
    }
    x.check_member(e.target)?;
    if !is_quasicategory(x, max_dim.max(2)) {
        return Err(Error::NotQuasicategory { max_dim: max_dim.max(2) });
    }
    Ok(equivalence_witnesses(x, e).is_some())
}

/// `(e', σ, τ)` with `∂σ = (e', s_0 x, e)` and `∂τ = (e, s_0 y, e')`.
pub fn equivalence_witnesses(x: &Arc<SimplicialSet>, e: &EzForm) -> Option<(EzForm, EzForm, EzForm)> {
    let src = x.face(e, 1);
    let tgt = x.face(e, 0);
    let degen = |v: &EzForm| x.act_unchecked(&Operator::collapse(1), v);
    let (ix, iy) = (degen(&src), degen(&tgt));
    let index = TargetIndex::new(x, 2);
    for inv in x.all_simplices(1) {
        if x.face(&inv, 1) != tgt || x.face(&inv, 0) != src {
            continue;
        }
        let sigma = index.candidates(2, &[inv.clone(), ix.clone(), e.clone()]).first().cloned();
        let tau = index.candidates(2, &[e.clone(), iy.clone(), inv.clone()]).first().cloned();
        if let (Some(s), Some(t)) = (sigma, tau) {
            return Some((inv, s, t));
        }
    }
    None
}

/// `X^B` up to dimension `n`: `n`-simplices are maps `Δ^n × B -> X`.
pub fn exponential(x: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, n: usize) -> Result<TruncatedSimplicialSet> {
    exponential_with_budget(x, b, n, &Budget::default())
}

pub fn exponential_with_budget(
    x: &Arc<SimplicialSet>,
    b: &Arc<SimplicialSet>,
    n: usize,
    budget: &Budget,
) -> Result<TruncatedSimplicialSet> {
    let id_b = SimplicialMap::identity(b);
    let prods: Vec<_> = (0..=n + 1).map(|m| product(&Arc::new(standard_simplex(m)), b)).collect();
    let index = TargetIndex::new(x, n + dim_of(b));
    let levels = (0..=n)
        .map(|m| {
            collect_maps(prods[m].set(), &index, None, None, budget, None)
                .map(|ms| ms.into_iter().map(SimplicialMap::into_assignment).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let precompose = |key: &Vec<Vec<EzForm>>, m: &SimplicialMap| -> Vec<Vec<EzForm>> {
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
    };
    let face_maps: Vec<Vec<SimplicialMap>> = (0..=n)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m)
                .map(|i| {
                    let d = operator_map(&Operator::face(m, i).expect("face"));
                    product_map(&d, &id_b, &prods[m - 1], &prods[m]).expect("product map")
                })
                .collect()
        })
        .collect();
    let degen_maps: Vec<Vec<SimplicialMap>> = (0..n)
        .map(|m| {
            (0..=m)
                .map(|j| {
                    let s = operator_map(&Operator::degeneracy(m, j).expect("degeneracy"));
                    product_map(&s, &id_b, &prods[m + 1], &prods[m]).expect("product map")
                })
                .collect()
        })
        .collect();
    let lw = build_levelwise(
        levels,
        |m, k, i| precompose(k, &face_maps[m][i]),
        |m, k, j| precompose(k, &degen_maps[m][j]),
    )?;
    TruncatedSimplicialSet::new(lw.set, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        boundary, horn, nerve, simplex_by_vertices, spine, vertex_map, FiniteCategory, Functor,
    };

    fn delta(n: usize) -> Arc<SimplicialSet> {
        Arc::new(standard_simplex(n))
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..4 {
            assert_eq!(enumerate_maps(&delta(0), &delta(n)).len(), n + 1);
        }
        assert_eq!(enumerate_maps(&delta(1), &delta(1)).len(), 3);
        assert_eq!(enumerate_maps(&Arc::new(boundary(1)), &delta(1)).len(), 4);
        // maps Δ^2 -> Δ^3 are monotone maps [2] -> [3]
        assert_eq!(enumerate_maps(&delta(2), &delta(3)).len(), 20);
    }

    #[test]
    fn extension_counts() {
        let v0 = vertex_map(&delta(2), 0).unwrap();
        let incl = operator_map(&Operator::vertex(1, 0).unwrap());
        assert_eq!(extensions(&v0, &incl).unwrap().len(), 3);
        let id = SimplicialMap::identity(&delta(1));
        let f = enumerate_maps(&delta(1), &delta(2))[4].clone();
        assert_eq!(extensions(&f, &id).unwrap(), vec![f]);
    }

    #[test]
    fn nerve_fills_inner_horn_uniquely() {
        let c = Arc::new(FiniteCategory::chain(2));
        let x = nerve(&c, 4).unwrap();
        let incl = horn_inclusion(2, 1).unwrap();
        let h = Arc::new(horn(2, 1).unwrap());
        for top in enumerate_maps(&h, x.set()) {
            assert_eq!(extensions(&top, &incl).unwrap().len(), 1);
        }
    }

    #[test]
    fn spine_is_not_a_quasicategory() {
        let s = Arc::new(spine(2));
        let check = check_fibration(&terminal_map(&s), FibrationClass::Inner, 2);
        assert!(!check.holds);
        let w = check.witness.clone().unwrap();
        assert_eq!(w.left().source().counts(), &[3, 2]);
        assert!(solve_lift(&w).is_none());
        assert!(check.to_json()["witness"]["problem"]["top"].is_object());
    }

    #[test]
    fn nerve_maps_are_inner_fibrations() {
        let c2 = Arc::new(FiniteCategory::chain(2));
        let c1 = Arc::new(FiniteCategory::chain(1));
        let (x, y) = (nerve(&c2, 4).unwrap(), nerve(&c1, 4).unwrap());
        for f in Functor::all(&c2, &c1) {
            let p = crate::constructions::nerve_map(&f, &x, &y).unwrap();
            assert!(check_fibration(&p, FibrationClass::Inner, 4).holds);
        }
    }

    #[test]
    fn identity_is_a_trivial_fibration() {
        let x = Arc::new(horn(3, 1).unwrap());
        for class in FibrationClass::ALL {
            assert!(check_fibration(&SimplicialMap::identity(&x), class, 3).holds);
        }
    }

    #[test]
    fn lifting_problem_checks_commutativity() {
        let i = operator_map(&Operator::vertex(1, 0).unwrap());
        let p = SimplicialMap::identity(&delta(1));
        let top = vertex_map(&delta(1), 1).unwrap();
        assert!(matches!(
            LiftingProblem::new(i.clone(), p.clone(), top.clone(), SimplicialMap::identity(&delta(1))),
            Err(Error::NotCommutative(_))
        ));
        let bottom = operator_map(&Operator::new(1, vec![1, 1]).unwrap());
        let lp = LiftingProblem::new(i, p, top, bottom.clone()).unwrap();
        assert_eq!(solve_lift(&lp), Some(bottom));
    }

    #[test]
    fn equivalence_edges() {
        let d1 = delta(1);
        let e = EzForm::nondeg(simplex_by_vertices(&d1, &[0, 1]).unwrap());
        assert!(!is_equivalence_edge(&d1, &e, 3).unwrap());
        let dv = EzForm { epi: Operator::collapse(1), target: SimplexId::new(0, 0) };
        assert!(is_equivalence_edge(&d1, &dv, 3).unwrap());
        let iso = Arc::new(FiniteCategory::free_isomorphism());
        let x = crate::constructions::nerve_truncated(&iso, 4).unwrap();
        for e in x.set().simplices(1) {
            assert!(is_equivalence_edge(x.set(), &EzForm::nondeg(e), 3).unwrap());
        }
        assert!(matches!(
            is_equivalence_edge(&Arc::new(spine(2)), &e, 2),
            Err(Error::ForeignSimplex { .. }) | Err(Error::NotQuasicategory { .. })
        ));
    }

    #[test]
    fn exponentials() {
        let e = exponential(&delta(1), &delta(1), 1).unwrap();
        assert_eq!(e.set().count(0), 3);
        assert_eq!(e.set().simplex_count(1, crate::simpset::CountMode::All), 6);
        let x = Arc::new(horn(2, 0).unwrap());
        let e0 = exponential(&x, &delta(0), 2).unwrap();
        assert!(crate::simpset::isomorphic(e0.set(), &x).is_some());
        let pt = exponential(&delta(0), &delta(2), 2).unwrap();
        assert_eq!(pt.set().counts(), &[1]);
    }

    #[test]
    fn budget_is_a_distinct_error() {
        let r = enumerate_maps_with_budget(&delta(3), &delta(3), &Budget::new(5));
        assert!(matches!(r, Err(Error::BudgetExceeded { budget: 5 })));
    }
}
