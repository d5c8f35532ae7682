//! Exact recomputation of the combinatorial claims behind the prism
//! filtrations, the wide join and the slice comparisons, as structured
//! pass/fail reports.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::anodyne::{relative, search_relative, verify_presentation, CellPresentation, Step, Verdict};
use crate::constructions::{
    nerve, nerve_map, pp_map, product, pushout, pushout_by_quotient, simplex_by_vertices, simplex_subcomplex,
    standard_simplex, terminal_map, vertex_map, wide_join, FiniteCategory, Functor, Product,
};
use crate::error::{Error, Result};
use crate::hom::{check_fibration_with_budget, Budget, FibrationClass};
use crate::simpset::{isomorphic, CountMode, EzForm, SimplexId, SimplicialMap, SimplicialSet, Subcomplex};
pub use crate::slices::SliceKind;
use crate::slices::{cocartesian_edges_with_budget, thm_a_comparison, thm_b_comparison, wide_cocartesian_edges_with_budget};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Value,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub details: Value,
}

impl VerificationReport {
    fn new(claim: &str, params: Value) -> Self {
        VerificationReport { claim: claim.into(), params, pass: true, checks: Vec::new(), details: json!({}) }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) -> bool {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, detail });
        pass
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details[key] = v;
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line: claim, parameters, verdict and the number of checks.
    pub fn summary_line(&self) -> String {
        format!(
            "{:<10} {:<28} {:<4} {}/{} checks",
            self.claim,
            self.params.to_string(),
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        )
    }
}

/// `Δ^1 × Δ^n` with helpers for locating chains and subcomplexes.
struct Prism {
    n: usize,
    product: Product,
}

impl Prism {
    fn new(n: usize) -> Self {
        let product = product(&Arc::new(standard_simplex(1)), &Arc::new(standard_simplex(n)));
        Prism { n, product }
    }

    fn set(&self) -> &Arc<SimplicialSet> {
        self.product.set()
    }

    fn vertex(&self, t: usize, j: usize) -> usize {
        t * (self.n + 1) + j
    }

    fn chain(&self, points: &[(usize, usize)]) -> Option<SimplexId> {
        let vs: Vec<usize> = points.iter().map(|&(t, j)| self.vertex(t, j)).collect();
        simplex_by_vertices(self.set(), &vs)
    }

    /// The chain `(0,0) ... (0,k) (1,k) ... (1,n)`.
    fn sigma_points(&self, k: usize) -> Vec<(usize, usize)> {
        (0..=k).map(|j| (0, j)).chain((k..=self.n).map(|j| (1, j))).collect()
    }

    fn sigma(&self, k: usize) -> SimplexId {
        self.chain(&self.sigma_points(k)).expect("σ_k is a chain of the prism")
    }

    fn coords(&self, v: usize) -> (usize, usize) {
        (v / (self.n + 1), v % (self.n + 1))
    }

    /// All simplices whose vertices satisfy `pred`.
    fn full_on(&self, pred: impl Fn(usize, usize) -> bool) -> Subcomplex {
        let x = self.set();
        let members = x
            .all_ids()
            .filter(|&id| x.vertices_of(id).iter().all(|&v| {
                let (t, j) = self.coords(v);
                pred(t, j)
            }))
            .collect();
        Subcomplex::from_members(x, members).expect("full subcomplexes are closed")
    }

    fn generated(&self, ids: impl IntoIterator<Item = SimplexId>) -> Subcomplex {
        Subcomplex::generated(self.set(), ids).expect("ids of the prism")
    }

    fn face(&self, s: SimplexId, i: usize) -> SimplexId {
        self.set().face_of(s, i).target
    }

    /// The subcomplex generated by the faces of `s` with indices in `js`.
    fn faces(&self, s: SimplexId, js: impl IntoIterator<Item = usize>) -> Subcomplex {
        self.generated(js.into_iter().map(|j| self.face(s, j)))
    }

    fn label(&self, s: SimplexId) -> String {
        self.set()
            .vertices_of(s)
            .iter()
            .map(|&v| {
                let (t, j) = self.coords(v);
                if t == 0 {
                    format!("{j}")
                } else {
                    format!("{j}'")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn members_json(sub: &Subcomplex) -> Value {
    json!(sub.members().iter().map(|id| id.to_string()).collect::<Vec<_>>())
}

fn union_all(parts: impl IntoIterator<Item = Subcomplex>, parent: &Arc<SimplicialSet>) -> Subcomplex {
    parts.into_iter().fold(Subcomplex::empty(parent), |acc, s| acc.union(&s).expect("common parent"))
}

fn needs_positive(report: &mut VerificationReport, n: usize) -> bool {
    report.check("n is at least 1", n >= 1, Value::Null)
}

pub fn verify_prism(n: usize) -> VerificationReport {
    let mut r = VerificationReport::new("prism", json!({"n": n}));
    if !needs_positive(&mut r, n) {
        return r;
    }
    let pr = Prism::new(n);
    let x = pr.set();
    let tops: BTreeSet<SimplexId> = x.simplices(n + 1).collect();
    r.check("top simplex count is n+1", tops.len() == n + 1, json!(tops.len()));
    let sigmas: Vec<Option<SimplexId>> = (0..=n).map(|k| pr.chain(&pr.sigma_points(k))).collect();
    r.check("every σ_k chain is a simplex", sigmas.iter().all(Option::is_some), Value::Null);
    let sigma_set: BTreeSet<SimplexId> = sigmas.iter().flatten().copied().collect();
    r.check("top simplices are exactly the σ_k", sigma_set == tops, Value::Null);
    r.check("σ_k generate the product", pr.generated(sigma_set.iter().copied()).is_full(), Value::Null);
    r.check("no simplices above n+1", x.top_dim() == (n + 1) as isize, json!(x.top_dim()));
    let poset = FiniteCategory::chain(1).product(&FiniteCategory::chain(n));
    let oracle = nerve(&Arc::new(poset), n + 1).expect("poset nerves are bounded");
    r.check("isomorphic to the nerve of [1]×[n]", isomorphic(x, oracle.set()).is_some(), Value::Null);
    r.detail("top_simplices", json!(tops.len()));
    r.detail("sigma", json!(sigma_set.iter().map(|&s| pr.label(s)).collect::<Vec<_>>()));
    r
}

/// Verifies a presentation whose steps refer to simplices of the common
/// parent of `base ⊆ top`, relative to `top`.
fn verify_relative(base: &Subcomplex, top: &Subcomplex, steps: &[Step], class: FibrationClass) -> Result<Verdict> {
    let (rel, incl) = relative(base, top)?;
    let back = incl.inverse_on_image()?;
    let steps = steps
        .iter()
        .map(|s| {
            back.get(&s.simplex)
                .map(|&t| Step { n: s.n, k: s.k, simplex: t })
                .ok_or_else(|| Error::MalformedSet(format!("step simplex {} lies outside", s.simplex)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verify_presentation(&CellPresentation { base: rel, steps }, class))
}

fn verdict_json(v: &Verdict) -> Value {
    json!({"valid": v.valid, "failing_step": v.failing_step, "reason": v.reason})
}

pub fn verify_a_filtration(n: usize) -> VerificationReport {
    let mut r = VerificationReport::new("afilt", json!({"n": n}));
    if !needs_positive(&mut r, n) {
        return r;
    }
    let pr = Prism::new(n);
    let x = pr.set().clone();
    let mut stages = vec![Subcomplex::empty(&x); n + 2];
    stages[n + 1] = union_all(
        std::iter::once(pr.full_on(|t, _| t == 0)).chain((0..=n).map(|i| pr.full_on(move |_, j| j != i))),
        &x,
    );
    for k in (0..=n).rev() {
        stages[k] = stages[k + 1].union(&pr.generated([pr.sigma(k)])).expect("common parent");
    }
    for k in (0..=n).rev() {
        let s = pr.sigma(k);
        let prev = &stages[k + 1];
        r.check(format!("σ_{k} is not in A({})", k + 1), !prev.contains(s), Value::Null);
        let meet = prev.intersection(&pr.generated([s])).expect("common parent");
        let horn = pr.faces(s, (0..=n + 1).filter(|&j| j != k));
        r.check(format!("A({}) ∩ σ_{k} is the horn Λ^{}_{k}", k + 1, n + 1), meet == horn, Value::Null);
        r.check(
            format!("A({k}) adds σ_{k} and its face {k}"),
            stages[k].len() == prev.len() + 2 && !prev.contains(pr.face(s, k)),
            json!({"before": prev.len(), "after": stages[k].len()}),
        );
    }
    r.check("A(0) is the whole product", stages[0].is_full(), Value::Null);
    let steps: Vec<Step> = (0..=n).rev().map(|k| Step { n: n + 1, k, simplex: pr.sigma(k) }).collect();
    let all = verify_presentation(&CellPresentation { base: stages[n + 1].clone(), steps: steps.clone() }, FibrationClass::Left);
    r.check("A(n+1) ⊂ A(0) is a left horn presentation", all.valid, verdict_json(&all));
    match verify_relative(&stages[n + 1], &stages[1], &steps[..n], FibrationClass::Inner) {
        Ok(v) => r.check("A(n+1) ⊂ A(1) is an inner horn presentation", v.valid, verdict_json(&v)),
        Err(e) => r.check("A(n+1) ⊂ A(1) is an inner horn presentation", false, json!(e.to_string())),
    };
    r.check(
        "the last attachment is the outer horn Λ^{n+1}_0",
        !FibrationClass::Inner.allows_horn(n + 1, 0),
        Value::Null,
    );
    r.detail(
        "steps",
        json!(steps.iter().map(|s| json!({"n": s.n, "k": s.k, "simplex": pr.label(s.simplex), "inner": s.k > 0})).collect::<Vec<_>>()),
    );
    r.detail("stage_sizes", json!(stages.iter().map(Subcomplex::len).collect::<Vec<_>>()));
    r
}

pub fn verify_b_filtration(n: usize) -> VerificationReport {
    let mut r = VerificationReport::new("bfilt", json!({"n": n}));
    if !needs_positive(&mut r, n) {
        return r;
    }
    let pr = Prism::new(n);
    let x = pr.set().clone();
    let sigma: Vec<SimplexId> = (0..=n).map(|k| pr.sigma(k)).collect();
    let gen = |ids: &[SimplexId]| pr.generated(ids.iter().copied());
    for i in 0..=n {
        let lhs = pr.full_on(move |_, j| j != i);
        let rhs = pr.generated(
            (0..i).map(|j| pr.face(sigma[j], i + 1)).chain((i + 1..=n).map(|j| pr.face(sigma[j], i))),
        );
        r.check(format!("Δ^1 × ∂_{i}Δ^n is covered by faces of the σ_j"), lhs == rhs, Value::Null);
    }
    let mut stages = vec![Subcomplex::empty(&x); n + 2];
    stages[n + 1] = union_all(
        [pr.full_on(|t, _| t == 0), pr.full_on(|t, _| t == 1)]
            .into_iter()
            .chain((1..=n).map(|i| pr.full_on(move |_, j| j != i))),
        &x,
    );
    for i in (0..=n).rev() {
        stages[i] = stages[i + 1].union(&gen(&[sigma[n - i]])).expect("common parent");
    }
    let meet = |a: &Subcomplex, b: &Subcomplex| a.intersection(b).expect("common parent");
    let first = meet(&stages[n + 1], &gen(&[sigma[0]]));
    r.check("B(n+1) ∩ σ_0 is the horn missing face 1", first == pr.faces(sigma[0], (0..=n + 1).filter(|&j| j != 1)), Value::Null);
    let mut steps = vec![Step { n: n + 1, k: 1, simplex: sigma[0] }];
    for i in (1..n).rev() {
        let m = n - i;
        let s = sigma[m];
        let tau = pr.face(s, 0);
        let before = &stages[i + 1];
        r.check(
            format!("B({}) ∩ σ_{m} misses exactly faces 0 and {}", i + 1, m + 1),
            meet(before, &gen(&[s])) == pr.faces(s, (0..=n + 1).filter(|&j| j != 0 && j != m + 1)),
            Value::Null,
        );
        r.check(
            format!("B({}) ∩ ∂_0σ_{m} is the horn Λ^{n}_{m}", i + 1),
            meet(before, &gen(&[tau])) == pr.faces(tau, (0..=n).filter(|&j| j != m)),
            Value::Null,
        );
        let widened = before.union(&gen(&[tau])).expect("common parent");
        r.check(
            format!("(B({}) ∪ ∂_0σ_{m}) ∩ σ_{m} is the horn Λ^{}_{}", i + 1, n + 1, m + 1),
            meet(&widened, &gen(&[s])) == pr.faces(s, (0..=n + 1).filter(|&j| j != m + 1)),
            Value::Null,
        );
        steps.push(Step { n, k: m, simplex: tau });
        steps.push(Step { n: n + 1, k: m + 1, simplex: s });
    }
    r.check(
        "B(1) ∩ σ_n is the horn missing face 0",
        meet(&stages[1], &gen(&[sigma[n]])) == pr.faces(sigma[n], 1..=n + 1),
        Value::Null,
    );
    r.check("B(0) is the whole product", stages[0].is_full(), Value::Null);
    steps.push(Step { n: n + 1, k: 0, simplex: sigma[n] });
    let v = verify_presentation(&CellPresentation { base: stages[n + 1].clone(), steps: steps.clone() }, FibrationClass::Left);
    r.check("B(n+1) ⊂ B(0) is a left horn presentation", v.valid, verdict_json(&v));
    let inner_prefix = steps[..steps.len() - 1].iter().all(|s| FibrationClass::Inner.allows_horn(s.n, s.k));
    r.check("every attachment but the last is inner", inner_prefix, Value::Null);
    r.check("the last attachment is outer at 0", steps.last().is_some_and(|s| s.k == 0), Value::Null);
    r.detail(
        "steps",
        json!(steps
            .iter()
            .map(|s| json!({"n": s.n, "k": s.k, "simplex": pr.label(s.simplex), "inner": FibrationClass::Inner.allows_horn(s.n, s.k)}))
            .collect::<Vec<_>>()),
    );
    r
}

/// `Δ^m` with the face on `collapsed` crushed to a point.
fn collapsed_simplex(m: usize, collapsed: &[usize]) -> Result<Arc<SimplicialSet>> {
    let sub = simplex_subcomplex(m, &[collapsed.to_vec()])?;
    let (c, incl) = sub.to_simplicial_set();
    Ok(pushout(&incl, &terminal_map(&c))?.set().clone())
}

fn certificate(
    r: &mut VerificationReport,
    name: String,
    base: &Subcomplex,
    top: &Subcomplex,
    budget: u64,
) -> Option<Value> {
    match search_relative(base, top, FibrationClass::Inner, &Budget::new(budget)) {
        Ok((Some(cert), incl)) => {
            let v = verify_presentation(&cert, FibrationClass::Inner);
            r.check(name, v.valid, Value::Null);
            Some(json!(cert.describe(Some(&incl))))
        }
        Ok((None, _)) => {
            r.check(name, false, json!("no certificate in the search space"));
            None
        }
        Err(e) => {
            r.check(name, false, json!(e.to_string()));
            None
        }
    }
}

const CERT_BUDGET: u64 = 5_000_000;

pub fn verify_thm_c_filtration(n: usize) -> VerificationReport {
    let mut r = VerificationReport::new("thmC", json!({"n": n}));
    if !needs_positive(&mut r, n) {
        return r;
    }
    if let Err(e) = thm_c_checks(&mut r, n) {
        r.check("construction", false, json!(e.to_string()));
    }
    r
}

fn thm_c_checks(r: &mut VerificationReport, n: usize) -> Result<()> {
    let pr = Prism::new(n);
    let (zero, zincl) = pr.full_on(|t, _| t == 0).to_simplicial_set();
    let po = pushout(&zincl, &terminal_map(&zero))?;
    let x = po.set().clone();
    let q = po.left();
    let wj = wide_join(&Arc::new(standard_simplex(0)), &Arc::new(standard_simplex(n)));
    r.check("collapsing {0}×Δ^n in the prism gives Δ^0◇Δ^n", isomorphic(&x, wj.set()).is_some(), Value::Null);
    let image = |sub: &Subcomplex| sub.image_under(q);
    let s: Vec<Subcomplex> = (0..=n).map(|i| image(&pr.generated([pr.sigma(i)]))).collect::<Result<_>>()?;
    for (i, si) in s.iter().enumerate() {
        let model = collapsed_simplex(n + 1, &(0..=i).collect::<Vec<_>>())?;
        r.check(
            format!("S_{i} is σ_{i} with its first {} vertices collapsed", i + 1),
            isomorphic(&si.to_simplicial_set().0, &model).is_some(),
            json!(si.counts()),
        );
    }
    let mut t = vec![s[0].clone()];
    for i in 1..=n {
        t.push(t[i - 1].union(&s[i])?);
    }
    r.check("T_n is all of Δ^0◇Δ^n", t[n].is_full(), Value::Null);
    let mut inter = Vec::new();
    for i in 1..=n {
        let m = s[i].intersection(&t[i - 1])?;
        let located = image(&pr.generated([pr.face(pr.sigma(i), i)]))?;
        r.check(format!("S_{i} ∩ T_{} is the image of the face of σ_{i} missing {i}", i - 1), m == located, Value::Null);
        let model = collapsed_simplex(n, &(0..i).collect::<Vec<_>>())?;
        r.check(
            format!("S_{i} ∩ T_{} is a simplex with its first {i} vertices collapsed", i - 1),
            isomorphic(&m.to_simplicial_set().0, &model).is_some(),
            Value::Null,
        );
        inter.push(m);
    }
    let l = image(&pr.full_on(|_, j| j == 0).union(&pr.full_on(|t, _| t == 1))?)?;
    r.check("L lies in T_0", l.is_subset(&t[0]), Value::Null);
    let point = Arc::new(standard_simplex(0));
    let pp = pp_map(&SimplicialMap::from_empty(&point), &vertex_map(&Arc::new(standard_simplex(n)), 0)?)?;
    r.check(
        "L is the domain of the pushout-product of ∅⊂Δ^0 and {0}⊂Δ^n",
        isomorphic(&l.to_simplicial_set().0, &pp.domain.to_simplicial_set().0).is_some()
            && isomorphic(pp.whole.set(), &x).is_some(),
        Value::Null,
    );
    let mut certs = serde_json::Map::new();
    if let Some(c) = certificate(r, "inner certificate for L ⊂ T_0".into(), &l, &t[0], CERT_BUDGET) {
        certs.insert("L⊂T_0".into(), c);
    }
    for i in 1..=n {
        let name = format!("T_{}⊂T_{i}", i - 1);
        if let Some(c) = certificate(r, format!("inner certificate for {name}"), &t[i - 1], &t[i], CERT_BUDGET) {
            certs.insert(name, c);
        }
        let name = format!("S_{i}∩T_{}⊂S_{i}", i - 1);
        if let Some(c) = certificate(r, format!("inner certificate for {name}"), &inter[i - 1], &s[i], CERT_BUDGET) {
            certs.insert(name, c);
        }
    }
    for i in 1..=n {
        // Δ^{0..i-1} ∪ Δ^{i-1,i',...,n'} inside Δ^{0..i-1,i',...,n'} (n+1 vertices)
        let front: Vec<usize> = (0..i).collect();
        let back: Vec<usize> = std::iter::once(i - 1).chain(i..=n).collect();
        let a = simplex_subcomplex(n, &[front, back])?;
        let name = format!("spine-type inclusion into the face missing {i}");
        if let Some(c) = certificate(r, format!("inner certificate for {name}"), &a, &Subcomplex::full(a.parent()), CERT_BUDGET) {
            certs.insert(name, c);
        }
        // Δ^{0..i} ∪ Δ^{i,i',...,n'} inside σ_i (n+2 vertices)
        let front: Vec<usize> = (0..=i).collect();
        let back: Vec<usize> = (i..=n + 1).collect();
        let b = simplex_subcomplex(n + 1, &[front, back])?;
        let name = format!("spine-type inclusion into σ_{i}");
        if let Some(c) = certificate(r, format!("inner certificate for {name}"), &b, &Subcomplex::full(b.parent()), CERT_BUDGET) {
            certs.insert(name, c);
        }
    }
    r.detail("S_counts", json!(s.iter().map(Subcomplex::counts).collect::<Vec<_>>()));
    r.detail("T_counts", json!(t.iter().map(Subcomplex::counts).collect::<Vec<_>>()));
    r.detail("L", members_json(&l));
    r.detail("certificates", Value::Object(certs));
    Ok(())
}

/// Per-dimension counts of every simplex of `A ◇ B`, against the formula
/// `A_n + n·A_n·B_n + B_n` and the variant with `n-1`.
pub fn verify_widejoin_counts(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, max_n: usize) -> VerificationReport {
    let mut r = VerificationReport::new("wjcounts", json!({"A": a.counts(), "B": b.counts(), "N": max_n}));
    let w = wide_join(a, b);
    let (incl, collapse) = crate::constructions::wide_join_span(a, b);
    match pushout_by_quotient(&incl, &collapse) {
        Ok(q) => r.check("both pushout routes agree", isomorphic(q.set(), w.set()).is_some(), Value::Null),
        Err(e) => r.check("both pushout routes agree", false, json!(e.to_string())),
    };
    let mut rows = Vec::new();
    let mut corrected_all = true;
    let mut printed_all = true;
    for n in 0..=max_n {
        let an = a.simplex_count(n, CountMode::All) as i128;
        let bn = b.simplex_count(n, CountMode::All) as i128;
        let actual = w.set().simplex_count(n, CountMode::All) as i128;
        let corrected = an + n as i128 * an * bn + bn;
        let printed = an + (n as i128 - 1).max(0) * an * bn + bn;
        corrected_all &= actual == corrected;
        printed_all &= actual == printed;
        rows.push(json!({"n": n, "pushout": actual, "corrected": corrected, "printed": printed,
            "corrected_matches": actual == corrected, "printed_matches": actual == printed}));
    }
    r.check("pushout counts match A_n + n·A_n·B_n + B_n", corrected_all, Value::Null);
    r.detail("printed_variant_matches", json!(printed_all));
    r.detail(
        "printed_variant_first_failure",
        json!(rows.iter().find(|row| row["printed_matches"] == json!(false)).map(|row| row["n"].clone())),
    );
    r.detail("rows", json!(rows));
    r
}


/// Outcome of one comparison instance, kept small for corpus runs.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceOutcome {
    pub left_holds: bool,
    pub certificate_steps: Option<usize>,
    pub trivial_holds: Option<bool>,
}

impl InstanceOutcome {
    /// Left fibrancy always; trivial fibrancy whenever a certificate exists.
    pub fn pass(&self) -> bool {
        self.left_holds && (self.certificate_steps.is_none() || self.trivial_holds == Some(true))
    }
}

/// Runs one instance: `u: A -> B` mono, `f: B -> X`, `p: X -> Y`, bound `n`.
/// `certificate` is the (cached) result of the inner search on `u`.
pub fn slice_instance(
    kind: SliceKind,
    u: &SimplicialMap,
    f: &SimplicialMap,
    p: &SimplicialMap,
    bound: usize,
    certificate: Option<&CellPresentation>,
    budget: &Budget,
) -> Result<(InstanceOutcome, Option<crate::hom::FibrationCheck>)> {
    let c = match kind {
        SliceKind::Ordinary => thm_a_comparison(u, f, p, bound, budget)?,
        SliceKind::Wide => thm_b_comparison(u, f, p, bound, budget)?,
    };
    let max = bound - 1;
    let left = c.check(FibrationClass::Left, max, budget)?;
    let mut out = InstanceOutcome { left_holds: left.holds, certificate_steps: None, trivial_holds: None };
    let mut witness = (!left.holds).then_some(left);
    if let Some(cert) = certificate {
        out.certificate_steps = Some(cert.steps.len());
        let t = c.check(FibrationClass::Trivial, max, budget)?;
        out.trivial_holds = Some(t.holds);
        if !t.holds && witness.is_none() {
            witness = Some(t);
        }
    }
    Ok((out, witness))
}

/// The inner certificate search on the image of a mono.
pub fn inner_certificate(u: &SimplicialMap, budget: &Budget) -> Result<Option<CellPresentation>> {
    if !u.is_mono() {
        return Err(Error::NotMono("the comparison needs an inclusion".into()));
    }
    crate::anodyne::search_presentation(&u.image(), FibrationClass::Inner, budget)
}

fn slice_report(kind: SliceKind, u: &SimplicialMap, f: &SimplicialMap, p: &SimplicialMap, bound: usize) -> VerificationReport {
    let claim = match kind {
        SliceKind::Ordinary => "thmA",
        SliceKind::Wide => "thmB",
    };
    let mut r = VerificationReport::new(
        claim,
        json!({"N": bound, "u": [u.source().counts(), u.target().counts()], "X": p.source().counts(), "Y": p.target().counts()}),
    );
    if !r.check("bound is at least 2", bound >= 2, Value::Null) {
        return r;
    }
    let budget = Budget::default();
    match check_fibration_with_budget(p, FibrationClass::Inner, bound, &budget) {
        Ok(c) => r.check(format!("p is an inner fibration up to dimension {bound}"), c.holds, Value::Null),
        Err(e) => r.check("p is an inner fibration", false, json!(e.to_string())),
    };
    let cert = match inner_certificate(u, &budget) {
        Ok(c) => c,
        Err(e) => {
            r.check("certificate search", false, json!(e.to_string()));
            return r;
        }
    };
    match slice_instance(kind, u, f, p, bound, cert.as_ref(), &budget) {
        Ok((o, witness)) => {
            r.check(format!("comparison is a left fibration up to dimension {}", bound - 1), o.left_holds, Value::Null);
            if let Some(t) = o.trivial_holds {
                r.check(format!("comparison is a trivial fibration up to dimension {}", bound - 1), t, Value::Null);
            }
            r.detail("inner_certificate_steps", json!(o.certificate_steps));
            if let Some(w) = witness {
                r.detail("witness", w.to_json());
            }
        }
        Err(e) => {
            r.check("comparison", false, json!(e.to_string()));
        }
    }
    r
}

pub fn verify_thm_a_instance(incl: &SimplicialMap, u: &SimplicialMap, p: &SimplicialMap, bound: usize) -> VerificationReport {
    slice_report(SliceKind::Ordinary, incl, u, p, bound)
}

pub fn verify_thm_b_instance(u: &SimplicialMap, f: &SimplicialMap, p: &SimplicialMap, bound: usize) -> VerificationReport {
    slice_report(SliceKind::Wide, u, f, p, bound)
}

fn edge_label(x: &SimplicialSet, e: &EzForm) -> String {
    let vs = x.vertices_of_form(e);
    format!("{}→{}", x.display_name(SimplexId::new(0, vs[0])), x.display_name(SimplexId::new(0, vs[1])))
}

pub fn verify_thm_d_instance(p: &SimplicialMap, bound: usize) -> Result<VerificationReport> {
    if bound < 3 {
        return Err(Error::BoundTooSmall { bound, minimum: 3 });
    }
    let mut r = VerificationReport::new("thmD", json!({"N": bound, "X": p.source().counts(), "S": p.target().counts()}));
    let budget = Budget::default();
    let strict = cocartesian_edges_with_budget(p, bound, &budget)?;
    let wide = wide_cocartesian_edges_with_budget(p, bound, &budget)?;
    let x = p.source();
    let only = |a: &[EzForm], b: &[EzForm]| -> Vec<String> {
        a.iter().filter(|e| !b.contains(e)).map(|e| edge_label(x, e)).collect()
    };
    let (only_strict, only_wide) = (only(&strict, &wide), only(&wide, &strict));
    r.check(
        "horn and wide-slice classifiers agree",
        only_strict.is_empty() && only_wide.is_empty(),
        json!({"only_horn": only_strict, "only_wide": only_wide}),
    );
    r.check("degenerate edges are cocartesian", x.all_simplices(1).iter().filter(|e| e.is_degenerate()).all(|e| strict.contains(e)), Value::Null);
    r.detail(
        "cocartesian_nondegenerate",
        json!(strict.iter().filter(|e| !e.is_degenerate()).map(|e| edge_label(x, e)).collect::<Vec<_>>()),
    );
    r.detail("cocartesian_total", json!(strict.len()));
    Ok(r)
}

/// Partial orders on `m` points up to isomorphism, as `leq` matrices.
pub fn posets_up_to_iso(m: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // every finite poset has a linear extension, so i < j suffices
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![vec![false; m]; m];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        if !transitive {
            continue;
        }
        let canon = permutations(m)
            .into_iter()
            .map(|perm| (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| leq[perm[i]][perm[j]]).collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(leq);
        }
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

pub fn poset_category(leq: &[Vec<bool>]) -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::poset(leq.len(), |i, j| leq[i][j]).expect("poset"))
}

/// Nerves of every functor between posets with `1..=max_objects` objects
/// (up to isomorphism of source and target).
pub fn poset_functor_corpus(max_objects: usize) -> Vec<SimplicialMap> {
    let cats: Vec<Arc<FiniteCategory>> =
        (1..=max_objects).flat_map(posets_up_to_iso).map(|leq| poset_category(&leq)).collect();
    let nerves: Vec<_> = cats.iter().map(|c| nerve(c, c.objects().len()).expect("poset nerve")).collect();
    let mut out = Vec::new();
    for (i, src) in cats.iter().enumerate() {
        for (j, tgt) in cats.iter().enumerate() {
            for f in Functor::all(src, tgt) {
                out.push(nerve_map(&f, &nerves[i], &nerves[j]).expect("nerve map"));
            }
        }
    }
    out
}

/// The three inclusions used by the comparison corpus:
/// `Λ^2_1 ⊂ Δ^2`, `∂Δ^1 ⊂ Δ^1` and `{0} ⊂ Δ^1`.
pub fn corpus_inclusions() -> Vec<(String, SimplicialMap)> {
    vec![
        ("Λ²₁⊂Δ²".into(), crate::constructions::horn_inclusion(2, 1).expect("horn")),
        ("∂Δ¹⊂Δ¹".into(), crate::constructions::boundary_inclusion(1)),
        ("{0}⊂Δ¹".into(), crate::constructions::operator_map(&crate::operator::Operator::vertex(1, 0).expect("vertex"))),
    ]
}

/// Aggregate of a comparison corpus run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusSummary {
    pub instances: usize,
    pub with_certificate: usize,
    pub failures: Vec<Value>,
}

/// Every instance `(u, f, p)` with `p` from the poset functor corpus, `u`
/// from [`corpus_inclusions`] and `f` ranging over all maps out of the
/// target of `u`.
pub fn slice_comparison_corpus(kind: SliceKind, max_objects: usize, bound: usize) -> Result<CorpusSummary> {
    let ps = poset_functor_corpus(max_objects);
    let budget = Budget::unlimited();
    let us: Vec<(String, SimplicialMap, Option<CellPresentation>)> = corpus_inclusions()
        .into_iter()
        .map(|(name, u)| {
            let c = inner_certificate(&u, &budget)?;
            Ok((name, u, c))
        })
        .collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (pi, p) in ps.iter().enumerate() {
        for (ui, (_, u, _)) in us.iter().enumerate() {
            for f in crate::hom::enumerate_maps(u.target(), p.source()) {
                jobs.push((pi, ui, f));
            }
        }
    }
    let results: Vec<Result<(usize, usize, InstanceOutcome)>> = jobs
        .par_iter()
        .map(|(pi, ui, f)| {
            let (_, u, cert) = &us[*ui];
            let (o, _) = slice_instance(kind, u, f, &ps[*pi], bound, cert.as_ref(), &budget)?;
            Ok((*pi, *ui, o))
        })
        .collect();
    let mut s = CorpusSummary::default();
    for res in results {
        let (pi, ui, o) = res?;
        s.instances += 1;
        if o.certificate_steps.is_some() {
            s.with_certificate += 1;
        }
        if !o.pass() {
            s.failures.push(json!({"functor": pi, "u": us[ui].0, "outcome": o}));
        }
    }
    Ok(s)
}

/// A poset `C_0 ⊔ C_1` over `[1]`, glued along a monotone map `F: C_0 -> C_1`
/// (`x ≤ y` for `x ∈ C_0`, `y ∈ C_1` iff `F(x) ≤ y`), with its projection.
#[derive(Clone, Debug)]
pub struct Collage {
    pub name: String,
    pub leq: Vec<Vec<bool>>,
    pub fiber: Vec<usize>,
    pub projection: SimplicialMap,
}

fn collage(c0: &[Vec<bool>], c1: &[Vec<bool>], f: &[usize]) -> Collage {
    let (a, b) = (c0.len(), c1.len());
    let m = a + b;
    let mut leq = vec![vec![false; m]; m];
    for x in 0..m {
        for y in 0..m {
            leq[x][y] = match (x < a, y < a) {
                (true, true) => c0[x][y],
                (false, false) => c1[x - a][y - a],
                (true, false) => c1[f[x]][y - a],
                (false, true) => false,
            };
        }
    }
    let fiber: Vec<usize> = (0..m).map(|x| usize::from(x >= a)).collect();
    let cat = poset_category(&leq);
    let base = Arc::new(FiniteCategory::chain(1));
    let functor = Functor::between_posets(&cat, &base, fiber.clone()).expect("projection is monotone");
    let nx = nerve(&cat, m).expect("poset nerve");
    let ns = nerve(&base, 1).expect("poset nerve");
    let projection = nerve_map(&functor, &nx, &ns).expect("nerve map");
    Collage { name: format!("C0={c0:?} C1={c1:?} F={f:?}"), leq, fiber, projection }
}

fn monotone_maps(c0: &[Vec<bool>], c1: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let (a, b) = (c0.len(), c1.len());
    let mut out = Vec::new();
    let mut cur = vec![0; a];
    loop {
        if (0..a).all(|x| (0..a).all(|y| !c0[x][y] || c1[cur[x]][cur[y]])) {
            out.push(cur.clone());
        }
        let mut i = 0;
        while i < a && cur[i] + 1 == b {
            cur[i] = 0;
            i += 1;
        }
        if i == a {
            return out;
        }
        cur[i] += 1;
    }
}

/// Collages of monotone maps between nonempty posets (up to isomorphism
/// of the two fibers) with at most `max_objects` objects in total.
pub fn collage_fixtures(max_objects: usize) -> Vec<Collage> {
    let mut out = Vec::new();
    for a in 1..max_objects {
        for b in 1..=max_objects - a {
            for c0 in posets_up_to_iso(a) {
                for c1 in posets_up_to_iso(b) {
                    for f in monotone_maps(&c0, &c1) {
                        out.push(collage(&c0, &c1, &f));
                    }
                }
            }
        }
    }
    out
}

/// The comparison corpus as a report.
pub fn verify_slice_corpus(kind: SliceKind, max_objects: usize, bound: usize) -> VerificationReport {
    let claim = match kind {
        SliceKind::Ordinary => "thmA",
        SliceKind::Wide => "thmB",
    };
    let mut r = VerificationReport::new(claim, json!({"N": bound, "objects": max_objects}));
    if !r.check("bound is at least 2", bound >= 2, Value::Null) {
        return r;
    }
    match slice_comparison_corpus(kind, max_objects, bound) {
        Ok(s) => {
            r.check(
                format!("left fibrancy up to dimension {}, and trivial fibrancy where a certificate exists", bound - 1),
                s.failures.is_empty(),
                json!(s.failures),
            );
            r.detail("instances", json!(s.instances));
            r.detail("with_certificate", json!(s.with_certificate));
        }
        Err(e) => {
            r.check("corpus run", false, json!(e.to_string()));
        }
    }
    r
}

/// Both cocartesian classifiers over every collage fixture.
pub fn verify_collage_corpus(max_objects: usize, bound: usize) -> Result<VerificationReport> {
    if bound < 3 {
        return Err(Error::BoundTooSmall { bound, minimum: 3 });
    }
    let fixtures = collage_fixtures(max_objects);
    let reports: Vec<(String, VerificationReport)> = fixtures
        .par_iter()
        .map(|c| Ok((c.name.clone(), verify_thm_d_instance(&c.projection, bound)?)))
        .collect::<Result<_>>()?;
    let mut r = VerificationReport::new("thmD", json!({"N": bound, "objects": max_objects}));
    let bad: Vec<Value> = reports
        .iter()
        .filter(|(_, rep)| !rep.pass)
        .map(|(name, rep)| json!({"fixture": name, "checks": rep.failures()}))
        .collect();
    r.check("classifiers agree on every collage", bad.is_empty(), json!(bad));
    r.detail("fixtures", json!(fixtures.len()));
    Ok(r)
}

/// The claims with a single size parameter, for `n` in the given range.
pub fn run_suite(max_n: usize) -> Vec<VerificationReport> {
    let mut jobs: Vec<(&str, usize)> = Vec::new();
    for n in 1..=max_n {
        jobs.extend([("prism", n), ("afilt", n), ("bfilt", n)]);
        if n <= 3 {
            jobs.push(("thmC", n));
        }
    }
    let d = |n| Arc::new(standard_simplex(n));
    let mut reports: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|&(claim, n)| match claim {
            "prism" => verify_prism(n),
            "afilt" => verify_a_filtration(n),
            "bfilt" => verify_b_filtration(n),
            _ => verify_thm_c_filtration(n),
        })
        .collect();
    let bd1 = Arc::new(crate::constructions::boundary(1));
    for (a, b) in [(d(0), d(0)), (d(0), d(1)), (d(1), d(1)), (bd1, d(1))] {
        reports.push(verify_widejoin_counts(&a, &b, max_n));
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_claims_pass() {
        for n in 1..=3 {
            for r in [verify_prism(n), verify_a_filtration(n), verify_b_filtration(n)] {
                assert!(r.pass, "{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
            }
        }
        assert!(!verify_prism(0).pass);
        assert_eq!(verify_prism(3).details["top_simplices"], json!(4));
    }

    #[test]
    fn collapsed_prism_small() {
        for n in 1..=2 {
            let r = verify_thm_c_filtration(n);
            assert!(r.pass, "{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
        }
    }

    #[test]
    fn wide_join_counts() {
        let d0 = Arc::new(standard_simplex(0));
        let r = verify_widejoin_counts(&d0, &d0, 2);
        assert!(r.pass);
        assert_eq!(r.details["printed_variant_first_failure"], json!(1));
    }

    #[test]
    fn poset_enumeration() {
        let counts: Vec<usize> = (0..=4).map(|m| posets_up_to_iso(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn collage_example() {
        let c = collage(&[vec![true]], &[vec![true, true], vec![false, true]], &[0]);
        let r = verify_thm_d_instance(&c.projection, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["cocartesian_nondegenerate"], json!(["0→1"]));
    }
}
