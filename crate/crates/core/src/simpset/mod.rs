//! Finite simplicial sets in Eilenberg–Zilber normal form.
//!
//! Only nondegenerate simplices are stored. Every simplex, degenerate or
//! not, is represented by its unique normal form [`EzForm`]: a surjective
//! operator applied to a nondegenerate simplex. The face table records
//! `d_i x` in normal form for every stored `x`; the action of an arbitrary
//! operator is derived from it.

mod iso;
mod json;
mod map;
mod subcomplex;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::operator::Operator;

pub use iso::isomorphic;
pub use json::{MapJson, SetJson};
pub use map::SimplicialMap;
pub use subcomplex::Subcomplex;

/// Position of a nondegenerate simplex inside its parent set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.dim, self.index)
    }
}

/// Normal form `epi^* target` of a possibly degenerate simplex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EzForm {
    pub epi: Operator,
    pub target: SimplexId,
}

impl EzForm {
    /// The nondegenerate simplex itself.
    pub fn nondeg(target: SimplexId) -> Self {
        EzForm { epi: Operator::identity(target.dim), target }
    }

    pub fn dim(&self) -> usize {
        self.epi.source_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.epi.source_dim() != self.target.dim
    }
}

impl fmt::Debug for EzForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{:?}*{}", self.epi.images(), self.target)
        } else {
            write!(f, "{}", self.target)
        }
    }
}

/// Whether [`SimplicialSet::simplex_count`] counts every simplex or only the
/// stored nondegenerate ones.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountMode {
    All,
    Nondegenerate,
}

/// A finite simplicial set.
#[derive(Clone)]
pub struct SimplicialSet {
    counts: Vec<usize>,
    // faces[d][index][i] = d_i of simplex (d, index); empty for d = 0
    faces: Vec<Vec<Vec<EzForm>>>,
    // derived: vertex indices of every stored simplex
    vertices: Vec<Vec<Vec<usize>>>,
    labels: BTreeMap<SimplexId, String>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.counts == other.counts && self.faces == other.faces
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet{:?}", self.counts)
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet { counts: Vec::new(), faces: Vec::new(), vertices: Vec::new(), labels: BTreeMap::new() }
    }

    /// Builds a set from its face table, checking that every entry is well
    /// formed. The simplicial identities are checked by [`Self::validate`].
    pub fn from_faces(faces: Vec<Vec<Vec<EzForm>>>, labels: BTreeMap<SimplexId, String>) -> Result<Self> {
        let mut faces = faces;
        while faces.last().is_some_and(|level| level.is_empty()) {
            faces.pop();
        }
        let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
        for (d, level) in faces.iter().enumerate() {
            for (index, entry) in level.iter().enumerate() {
                let expected = if d == 0 { 0 } else { d + 1 };
                if entry.len() != expected {
                    return Err(Error::MalformedSet(format!(
                        "simplex {d}.{index} has {} faces, expected {expected}",
                        entry.len()
                    )));
                }
                for (i, face) in entry.iter().enumerate() {
                    let t = face.target;
                    if t.dim >= d || t.index >= counts.get(t.dim).copied().unwrap_or(0) {
                        return Err(Error::MalformedSet(format!(
                            "face {i} of {d}.{index} points at missing simplex {t}"
                        )));
                    }
                    if face.epi.source_dim() != d - 1 || face.epi.target_dim() != t.dim || !face.epi.is_epi() {
                        return Err(Error::MalformedSet(format!(
                            "face {i} of {d}.{index} has a bad degeneracy part {:?}",
                            face.epi
                        )));
                    }
                }
            }
        }
        for id in labels.keys() {
            if id.index >= counts.get(id.dim).copied().unwrap_or(0) {
                return Err(Error::MalformedSet(format!("label for missing simplex {id}")));
            }
        }
        let vertices = derive_vertices(&faces);
        Ok(SimplicialSet { counts, faces, vertices, labels })
    }

    /// Top dimension, `-1` for the empty set.
    pub fn top_dim(&self) -> isize {
        self.counts.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of nondegenerate simplices in dimension `dim`.
    pub fn count(&self, dim: usize) -> usize {
        self.counts.get(dim).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_nondegenerate(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        id.index < self.count(id.dim)
    }

    pub(crate) fn check_member(&self, id: SimplexId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::ForeignSimplex { dim: id.dim, index: id.index })
        }
    }

    /// Nondegenerate simplices of one dimension.
    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = SimplexId> {
        (0..self.count(dim)).map(move |index| SimplexId { dim, index })
    }

    /// Every nondegenerate simplex, dimension-major then index-minor.
    pub fn all_ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.counts.len()).flat_map(move |d| self.simplices(d))
    }

    /// The stored faces `d_0 x, ..., d_n x`.
    pub fn faces(&self, id: SimplexId) -> &[EzForm] {
        &self.faces[id.dim][id.index]
    }

    pub fn face_of(&self, id: SimplexId, i: usize) -> &EzForm {
        &self.faces[id.dim][id.index][i]
    }

    /// Vertex indices of a nondegenerate simplex, in order.
    pub fn vertices_of(&self, id: SimplexId) -> &[usize] {
        &self.vertices[id.dim][id.index]
    }

    /// Vertex indices of an arbitrary simplex.
    pub fn vertices_of_form(&self, s: &EzForm) -> Vec<usize> {
        let vs = self.vertices_of(s.target);
        s.epi.images().iter().map(|&j| vs[j]).collect()
    }

    pub fn label(&self, id: SimplexId) -> Option<&str> {
        self.labels.get(&id).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<SimplexId, String> {
        &self.labels
    }

    /// Human-readable name: the label if any, otherwise `dim.index`.
    pub fn display_name(&self, id: SimplexId) -> String {
        self.label(id).map(str::to_owned).unwrap_or_else(|| id.to_string())
    }

    pub fn with_labels(mut self, labels: BTreeMap<SimplexId, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn face_table(&self) -> &[Vec<Vec<EzForm>>] {
        &self.faces
    }

    /// Returns a copy with one face entry replaced. The copy is structurally
    /// well formed but need not satisfy the simplicial identities.
    pub fn with_face_replaced(&self, id: SimplexId, i: usize, face: EzForm) -> Result<Self> {
        self.check_member(id)?;
        let mut faces = self.faces.clone();
        faces[id.dim][id.index][i] = face;
        SimplicialSet::from_faces(faces, self.labels.clone())
    }

    /// `d_i s` in normal form.
    pub fn face(&self, s: &EzForm, i: usize) -> EzForm {
        let e = s.epi.images();
        let n = e.len() - 1;
        debug_assert!(n >= 1 && i <= n);
        let v = e[i];
        let shared = (i > 0 && e[i - 1] == v) || (i < n && e[i + 1] == v);
        let mut rest: Vec<usize> = Vec::with_capacity(n);
        rest.extend_from_slice(&e[..i]);
        rest.extend_from_slice(&e[i + 1..]);
        if shared {
            // the degeneracy absorbs the face
            return EzForm {
                epi: Operator::from_images_unchecked(s.epi.target_dim(), rest),
                target: s.target,
            };
        }
        for r in rest.iter_mut() {
            if *r > v {
                *r -= 1;
            }
        }
        let reduced = Operator::from_images_unchecked(s.epi.target_dim() - 1, rest);
        let f = self.face_of(s.target, v);
        EzForm { epi: f.epi.after(&reduced), target: f.target }
    }

    /// Normal form of `alpha^* s`.
    pub fn act(&self, alpha: &Operator, s: &EzForm) -> Result<EzForm> {
        if alpha.target_dim() != s.dim() {
            return Err(Error::DimensionMismatch { expected: s.dim(), found: alpha.target_dim() });
        }
        self.check_member(s.target)?;
        Ok(self.act_unchecked(alpha, s))
    }

    pub(crate) fn act_unchecked(&self, alpha: &Operator, s: &EzForm) -> EzForm {
        let composite = s.epi.after(alpha);
        let (epi, mono) = composite.epi_mono_factor();
        let inner = self.apply_mono(&mono, s.target);
        EzForm { epi: inner.epi.after(&epi), target: inner.target }
    }

    fn apply_mono(&self, mono: &Operator, x: SimplexId) -> EzForm {
        let n = x.dim;
        if mono.source_dim() == n {
            return EzForm::nondeg(x);
        }
        // peel off the first omitted vertex: mono = face(n, i) ∘ rest
        let images = mono.images();
        let i = (0..=n).find(|v| images.binary_search(v).is_err()).unwrap();
        let rest = Operator::from_images_unchecked(
            n - 1,
            images.iter().map(|&v| if v > i { v - 1 } else { v }).collect(),
        );
        let f = self.face_of(x, i);
        if rest.is_identity() {
            return f.clone();
        }
        self.act_unchecked(&rest, f)
    }

    /// Every `n`-simplex, grouped by the dimension of its nondegenerate part
    /// (ascending), then by degeneracy operator, then by index.
    pub fn all_simplices(&self, n: usize) -> Vec<EzForm> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.counts.len().saturating_sub(1)) {
            if self.count(m) == 0 {
                continue;
            }
            for epi in Operator::all_epis(n, m) {
                for index in 0..self.count(m) {
                    out.push(EzForm { epi: epi.clone(), target: SimplexId { dim: m, index } });
                }
            }
        }
        out
    }

    pub fn simplex_count(&self, n: usize, mode: CountMode) -> u128 {
        match mode {
            CountMode::Nondegenerate => self.count(n) as u128,
            CountMode::All => (0..=n)
                .map(|m| self.count(m) as u128 * binomial(n as u128, m as u128))
                .sum(),
        }
    }

    /// Checks every simplicial identity `d_i d_j = d_{j-1} d_i` (i < j) on
    /// every stored simplex. The error carries the first violation.
    pub fn check_identities(&self) -> std::result::Result<(), String> {
        for d in 2..self.counts.len() {
            for index in 0..self.counts[d] {
                let x = EzForm::nondeg(SimplexId { dim: d, index });
                let faces: Vec<EzForm> = (0..=d).map(|i| self.face(&x, i)).collect();
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(&faces[j], i);
                        let rhs = self.face(&faces[i], j - 1);
                        if lhs != rhs {
                            return Err(format!(
                                "d_{i} d_{j} != d_{} d_{i} on {d}.{index}: {lhs:?} vs {rhs:?}",
                                j - 1
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> bool {
        self.check_identities().is_ok()
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn derive_vertices(faces: &[Vec<Vec<EzForm>>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = Vec::with_capacity(faces.len());
    for (d, level) in faces.iter().enumerate() {
        let mut lv = Vec::with_capacity(level.len());
        for (index, entry) in level.iter().enumerate() {
            if d == 0 {
                lv.push(vec![index]);
                continue;
            }
            let mut vs = Vec::with_capacity(d + 1);
            for j in 0..=d {
                // vertex j survives in the face d_i for any i != j
                let i = if j < d { d } else { 0 };
                let f = &entry[i];
                let pos = if i > j { j } else { j - 1 };
                let inner = &out[f.target.dim][f.target.index];
                vs.push(inner[f.epi.apply(pos)]);
            }
            lv.push(vs);
        }
        out.push(lv);
    }
    out
}

/// Incremental construction of a simplicial set, one simplex at a time.
#[derive(Default)]
pub struct SimplicialSetBuilder {
    faces: Vec<Vec<Vec<EzForm>>>,
    labels: BTreeMap<SimplexId, String>,
}

impl SimplicialSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: Option<String>) -> SimplexId {
        self.push(0, Vec::new(), label)
    }

    /// Adds a nondegenerate simplex of dimension `faces.len() - 1`.
    pub fn add_simplex(&mut self, faces: Vec<EzForm>, label: Option<String>) -> Result<SimplexId> {
        if faces.len() < 2 {
            return Err(Error::MalformedSet("a positive-dimensional simplex needs at least two faces".into()));
        }
        let d = faces.len() - 1;
        Ok(self.push(d, faces, label))
    }

    fn push(&mut self, d: usize, faces: Vec<EzForm>, label: Option<String>) -> SimplexId {
        while self.faces.len() <= d {
            self.faces.push(Vec::new());
        }
        let id = SimplexId { dim: d, index: self.faces[d].len() };
        self.faces[d].push(faces);
        if let Some(l) = label {
            self.labels.insert(id, l);
        }
        id
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn build(self) -> Result<SimplicialSet> {
        SimplicialSet::from_faces(self.faces, self.labels)
    }
}
