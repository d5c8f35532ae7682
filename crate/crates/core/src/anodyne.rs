//! Cell presentations: an inclusion `A ⊆ B` written as a sequence of horn
//! pushouts, each attaching a nondegenerate simplex of `B` along its own horn.
//!
//! Besides the horns of the chosen class, a step may use an outer horn
//! whose outer edge is degenerate (`Λ^n_0` with degenerate edge `01`,
//! `Λ^n_n` with degenerate edge `n-1,n`). Degenerate edges are cocartesian
//! and cartesian for every inner fibration, so such steps still have the
//! left lifting property against the fibrations of the class.

use std::collections::HashSet;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hom::{Budget, FibrationClass};
use crate::operator::Operator;
use crate::simpset::{SimplexId, SimplicialMap, SimplicialSet, Subcomplex};

/// Attach `simplex` (of dimension `n`) along `Λ^n_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub n: usize,
    pub k: usize,
    pub simplex: SimplexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPresentation {
    pub base: Subcomplex,
    pub steps: Vec<Step>,
}

/// Outcome of [`verify_presentation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

impl Verdict {
    fn ok() -> Self {
        Verdict { valid: true, failing_step: None, reason: None }
    }

    fn fail(step: Option<usize>, reason: impl Into<String>) -> Self {
        Verdict { valid: false, failing_step: step, reason: Some(reason.into()) }
    }
}

fn edge_is_degenerate(b: &SimplicialSet, s: SimplexId, from: usize, to: usize) -> bool {
    let mono = Operator::new(s.dim, vec![from, to]).expect("edge of a simplex");
    b.act_unchecked(&mono, &crate::simpset::EzForm::nondeg(s)).is_degenerate()
}

/// Whether attaching `s` along `Λ^n_k` is a step of `class`.
pub fn step_allowed(b: &SimplicialSet, class: FibrationClass, s: SimplexId, k: usize) -> bool {
    let n = s.dim;
    if n == 0 || k > n {
        return false;
    }
    let horn_class = if class == FibrationClass::Trivial { FibrationClass::Kan } else { class };
    if horn_class.allows_horn(n, k) {
        return true;
    }
    n >= 2
        && ((k == 0 && edge_is_degenerate(b, s, 0, 1)) || (k == n && edge_is_degenerate(b, s, n - 1, n)))
}

/// A set of nondegenerate simplices as a bitset over all ids.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Stage {
    bits: Vec<u64>,
    size: usize,
}

struct Layout {
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(b: &SimplicialSet) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for &c in b.counts() {
            offsets.push(total);
            total += c;
        }
        Layout { offsets, total }
    }

    fn flat(&self, id: SimplexId) -> usize {
        self.offsets[id.dim] + id.index
    }
}

impl Stage {
    fn from_sub(sub: &Subcomplex, layout: &Layout) -> Self {
        let mut st = Stage { bits: vec![0; layout.total.div_ceil(64)], size: 0 };
        for &id in sub.members() {
            st.insert(layout.flat(id));
        }
        st
    }

    fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) {
        if !self.contains(i) {
            self.bits[i / 64] |= 1 << (i % 64);
            self.size += 1;
        }
    }
}

/// Checks whether `(s, k)` is a legal attachment onto `stage`; returns the
/// reason it is not.
fn check_step(
    b: &SimplicialSet,
    layout: &Layout,
    stage: &Stage,
    class: FibrationClass,
    s: SimplexId,
    k: usize,
) -> std::result::Result<SimplexId, String> {
    if stage.contains(layout.flat(s)) {
        return Err(format!("simplex {s} is already present"));
    }
    if !step_allowed(b, class, s, k) {
        return Err(format!("horn Λ^{}_{} is not in the {} class", s.dim, k, class));
    }
    for (j, f) in b.faces(s).iter().enumerate() {
        if j != k && !stage.contains(layout.flat(f.target)) {
            return Err(format!("face {j} of {s} is missing from the stage"));
        }
    }
    let dk = b.face_of(s, k);
    if dk.is_degenerate() {
        return Err(format!("face {k} of {s} is degenerate"));
    }
    if stage.contains(layout.flat(dk.target)) {
        return Err(format!("face {k} of {s} is already present"));
    }
    Ok(dk.target)
}

/// Checks every step invariant and total coverage.
pub fn verify_presentation(cert: &CellPresentation, class: FibrationClass) -> Verdict {
    let b = cert.base.parent();
    let layout = Layout::new(b);
    let mut stage = Stage::from_sub(&cert.base, &layout);
    for (i, st) in cert.steps.iter().enumerate() {
        if !b.contains(st.simplex) {
            return Verdict::fail(Some(i), format!("simplex {} is not in the ambient set", st.simplex));
        }
        if st.simplex.dim != st.n {
            return Verdict::fail(Some(i), format!("declared dimension {} differs from {}", st.n, st.simplex.dim));
        }
        match check_step(b, &layout, &stage, class, st.simplex, st.k) {
            Ok(dk) => {
                stage.insert(layout.flat(st.simplex));
                stage.insert(layout.flat(dk));
            }
            Err(reason) => return Verdict::fail(Some(i), reason),
        }
    }
    if stage.size != layout.total {
        return Verdict::fail(None, format!("{} simplices remain uncovered", layout.total - stage.size));
    }
    Verdict::ok()
}

/// Depth-first search for a cell presentation of `base ⊆ parent`, trying
/// attachments by dimension, index and horn index. `Ok(None)` means the
/// restricted search space is exhausted.
pub fn search_presentation(
    base: &Subcomplex,
    class: FibrationClass,
    budget: &Budget,
) -> Result<Option<CellPresentation>> {
    let b = base.parent();
    let layout = Layout::new(b);
    let ids: Vec<SimplexId> = b.all_ids().filter(|id| id.dim > 0).collect();
    let start = Stage::from_sub(base, &layout);
    if (layout.total - start.size) % 2 == 1 {
        return Ok(None);
    }
    let mut dead: HashSet<Stage> = HashSet::new();
    let mut steps = Vec::new();
    let found = dfs(b, &layout, &ids, class, start, &mut steps, &mut dead, budget)?;
    Ok(found.then(|| CellPresentation { base: base.clone(), steps }))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    b: &SimplicialSet,
    layout: &Layout,
    ids: &[SimplexId],
    class: FibrationClass,
    stage: Stage,
    steps: &mut Vec<Step>,
    dead: &mut HashSet<Stage>,
    budget: &Budget,
) -> Result<bool> {
    if stage.size == layout.total {
        return Ok(true);
    }
    if dead.contains(&stage) {
        return Ok(false);
    }
    for &s in ids {
        if stage.contains(layout.flat(s)) {
            continue;
        }
        for k in 0..=s.dim {
            let Ok(dk) = check_step(b, layout, &stage, class, s, k) else { continue };
            budget.tick()?;
            let mut next = stage.clone();
            next.insert(layout.flat(s));
            next.insert(layout.flat(dk));
            steps.push(Step { n: s.dim, k, simplex: s });
            if dfs(b, layout, ids, class, next, steps, dead, budget)? {
                return Ok(true);
            }
            steps.pop();
        }
    }
    dead.insert(stage);
    Ok(false)
}

/// `sub` as a subcomplex of `top` realized as a set of its own, together
/// with the inclusion of that set into the common parent.
pub fn relative(sub: &Subcomplex, top: &Subcomplex) -> Result<(Subcomplex, SimplicialMap)> {
    if !sub.is_subset(top) {
        return Err(Error::NotMono("the smaller complex is not contained in the larger".into()));
    }
    let (t, incl) = top.to_simplicial_set();
    let back = incl.inverse_on_image()?;
    let members = sub.members().iter().map(|id| back[id]).collect();
    Ok((Subcomplex::from_members(&t, members)?, incl))
}

/// Searches for a presentation of `sub ⊆ top` (both inside one parent).
/// The certificate refers to `top` realized on its own; the returned map
/// embeds it in the parent.
pub fn search_relative(
    sub: &Subcomplex,
    top: &Subcomplex,
    class: FibrationClass,
    budget: &Budget,
) -> Result<(Option<CellPresentation>, SimplicialMap)> {
    let (base, incl) = relative(sub, top)?;
    Ok((search_presentation(&base, class, budget)?, incl))
}

impl CellPresentation {
    pub fn to_json(&self, class: FibrationClass) -> Value {
        json!({
            "base": self.base.members().iter().map(|id| [id.dim, id.index]).collect::<Vec<_>>(),
            "class": class.to_string(),
            "steps": self.steps.iter().map(|s| json!([s.n, s.k, [s.simplex.dim, s.simplex.index]])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_str(s: &str, parent: &Arc<SimplicialSet>) -> Result<(Self, FibrationClass)> {
        #[derive(serde::Deserialize)]
        struct Raw {
            base: Vec<(usize, usize)>,
            class: String,
            steps: Vec<(usize, usize, (usize, usize))>,
        }
        let raw: Raw = serde_json::from_str(s)?;
        let members = raw.base.into_iter().map(|(d, i)| SimplexId::new(d, i)).collect();
        let base = Subcomplex::from_members(parent, members)?;
        let steps = raw
            .steps
            .into_iter()
            .map(|(n, k, (d, i))| Step { n, k, simplex: SimplexId::new(d, i) })
            .collect();
        Ok((CellPresentation { base, steps }, raw.class.parse()?))
    }

    /// Steps with the vertex lists of their simplices, optionally pushed
    /// along an embedding.
    pub fn describe(&self, embed: Option<&SimplicialMap>) -> Vec<Value> {
        let b = self.base.parent();
        self.steps
            .iter()
            .map(|s| {
                let vs: Vec<usize> = match embed {
                    Some(e) => b.vertices_of(s.simplex).iter().map(|&v| e.vertex_images()[v]).collect(),
                    None => b.vertices_of(s.simplex).to_vec(),
                };
                let label = match embed {
                    Some(e) => e.target().display_name(e.image_of(s.simplex).target),
                    None => b.display_name(s.simplex),
                };
                json!({"n": s.n, "k": s.k, "vertices": vs, "label": label})
            })
            .collect()
    }
}

/// Outcome of one search in a [`cancellation_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(usize),
    Exhausted,
    BudgetExceeded,
}

impl Outcome {
    fn of(r: Result<Option<CellPresentation>>) -> Result<Outcome> {
        match r {
            Ok(Some(c)) => Ok(Outcome::Found(c.steps.len())),
            Ok(None) => Ok(Outcome::Exhausted),
            Err(e) if e.is_budget() => Ok(Outcome::BudgetExceeded),
            Err(e) => Err(e),
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationReport {
    pub i: Outcome,
    pub ji: Outcome,
    pub j: Outcome,
}

impl CancellationReport {
    /// False when certificates exist for `i` and `j ∘ i` but none was found
    /// for `j`: a gap in the search, not a refutation.
    pub fn consistent(&self) -> bool {
        !(self.i.is_found() && self.ji.is_found() && !self.j.is_found())
    }
}

/// Runs the search on `a ⊆ b`, `a ⊆ c` and `b ⊆ c`, where `c` is the common
/// parent of the two subcomplexes.
pub fn cancellation_probe(
    a: &Subcomplex,
    b: &Subcomplex,
    class: FibrationClass,
    budget_each: u64,
) -> Result<CancellationReport> {
    let full = Subcomplex::full(b.parent());
    let i = Outcome::of(search_relative(a, b, class, &Budget::new(budget_each)).map(|r| r.0))?;
    let ji = Outcome::of(search_presentation(&a.reparent(b.parent())?, class, &Budget::new(budget_each)))?;
    let j = Outcome::of(search_relative(b, &full, class, &Budget::new(budget_each)).map(|r| r.0))?;
    Ok(CancellationReport { i, ji, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{horn_subcomplex, simplex_by_vertices, spine_subcomplex, standard_simplex};

    fn id_of(b: &SimplicialSet, vs: &[usize]) -> SimplexId {
        simplex_by_vertices(b, vs).unwrap()
    }

    #[test]
    fn single_inner_step() {
        let base = spine_subcomplex(2);
        let b = base.parent().clone();
        let cert = CellPresentation { base, steps: vec![Step { n: 2, k: 1, simplex: id_of(&b, &[0, 1, 2]) }] };
        assert!(verify_presentation(&cert, FibrationClass::Inner).valid);
        let outer = CellPresentation {
            base: horn_subcomplex(2, 1).unwrap(),
            steps: vec![Step { n: 2, k: 0, simplex: id_of(&b, &[0, 1, 2]) }],
        };
        let v = verify_presentation(&outer, FibrationClass::Inner);
        assert!(!v.valid);
        assert_eq!(v.failing_step, Some(0));
    }

    #[test]
    fn spine_of_three_simplex() {
        let base = spine_subcomplex(3);
        let b = base.parent().clone();
        let cert = search_presentation(&base, FibrationClass::Inner, &Budget::new(10_000)).unwrap().unwrap();
        assert_eq!(cert.steps.len(), 4);
        assert!(verify_presentation(&cert, FibrationClass::Inner).valid);
        let expected: Vec<Step> = [(vec![0, 1, 2], 1), (vec![0, 2, 3], 1), (vec![1, 2, 3], 1), (vec![0, 1, 2, 3], 2)]
            .iter()
            .map(|(vs, k)| Step { n: vs.len() - 1, k: *k, simplex: id_of(&b, vs) })
            .collect();
        assert_eq!(cert.steps, expected);
    }

    #[test]
    fn point_in_interval_has_no_inner_certificate() {
        let d1 = Arc::new(standard_simplex(1));
        let base = Subcomplex::generated(&d1, [SimplexId::new(0, 0)]).unwrap();
        assert_eq!(search_presentation(&base, FibrationClass::Inner, &Budget::new(100)).unwrap(), None);
        let left = search_presentation(&base, FibrationClass::Left, &Budget::new(100)).unwrap().unwrap();
        assert_eq!(left.steps, vec![Step { n: 1, k: 0, simplex: SimplexId::new(1, 0) }]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let base = spine_subcomplex(4);
        let r = search_presentation(&base, FibrationClass::Inner, &Budget::new(3));
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn json_round_trip() {
        let base = spine_subcomplex(3);
        let b = base.parent().clone();
        let cert = search_presentation(&base, FibrationClass::Inner, &Budget::default()).unwrap().unwrap();
        let s = cert.to_json(FibrationClass::Inner).to_string();
        let (back, class) = CellPresentation::from_json_str(&s, &b).unwrap();
        assert_eq!(back, cert);
        assert_eq!(class, FibrationClass::Inner);
    }

    #[test]
    fn cancellation_on_split_certificate() {
        let base = spine_subcomplex(3);
        let b = base.parent().clone();
        let mid = base.union(&Subcomplex::generated(&b, [id_of(&b, &[0, 1, 2])]).unwrap()).unwrap();
        let r = cancellation_probe(&base, &mid, FibrationClass::Inner, 10_000).unwrap();
        assert!(r.i.is_found() && r.ji.is_found() && r.j.is_found());
        assert!(r.consistent());
    }
}
