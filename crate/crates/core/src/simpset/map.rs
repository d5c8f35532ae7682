use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{EzForm, SimplexId, SimplicialSet, Subcomplex};
use crate::error::{Error, Result};

/// A map of finite simplicial sets, given by the normal form of the image of
/// every nondegenerate source simplex.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assign: Vec<Vec<EzForm>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        same_set(&self.source, &other.source)
            && same_set(&self.target, &other.target)
            && self.assign == other.assign
    }
}

impl Eq for SimplicialMap {}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialMap{:?} -> {:?}: {:?}", self.source, self.target, self.assign)
    }
}

pub(crate) fn same_set(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SimplicialMap {
    /// Builds a map and checks that it commutes with every face operator.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assign: Vec<Vec<EzForm>>) -> Result<Self> {
        let map = SimplicialMap { source, target, assign };
        map.check()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assign: Vec<Vec<EzForm>>,
    ) -> Self {
        let map = SimplicialMap { source, target, assign };
        debug_assert!(map.check().is_ok(), "{:?}", map.check());
        map
    }

    /// Builds a map from its values on nondegenerate simplices.
    pub fn from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut f: impl FnMut(SimplexId) -> Result<EzForm>,
    ) -> Result<Self> {
        let mut assign = Vec::with_capacity(source.counts().len());
        for d in 0..source.counts().len() {
            let mut level = Vec::with_capacity(source.count(d));
            for id in source.simplices(d) {
                level.push(f(id)?);
            }
            assign.push(level);
        }
        SimplicialMap::new(source, target, assign)
    }

    pub fn identity(x: &Arc<SimplicialSet>) -> Self {
        let assign = (0..x.counts().len())
            .map(|d| x.simplices(d).map(EzForm::nondeg).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x.clone(), assign }
    }

    /// The unique map out of the empty set.
    pub fn from_empty(target: &Arc<SimplicialSet>) -> Self {
        SimplicialMap { source: Arc::new(SimplicialSet::empty()), target: target.clone(), assign: Vec::new() }
    }

    fn check(&self) -> Result<()> {
        let src = &self.source;
        if self.assign.len() != src.counts().len() {
            return Err(Error::InvalidMap("assignment does not cover every dimension".into()));
        }
        for (d, level) in self.assign.iter().enumerate() {
            if level.len() != src.count(d) {
                return Err(Error::InvalidMap(format!("assignment in dimension {d} has wrong length")));
            }
            for (index, img) in level.iter().enumerate() {
                if img.dim() != d {
                    return Err(Error::InvalidMap(format!("{d}.{index} sent to a {}-simplex", img.dim())));
                }
                if !img.epi.is_epi() || img.epi.target_dim() != img.target.dim || !self.target.contains(img.target) {
                    return Err(Error::InvalidMap(format!("{d}.{index} sent to a malformed simplex {img:?}")));
                }
            }
        }
        for id in src.all_ids() {
            if id.dim == 0 {
                continue;
            }
            let img = &self.assign[id.dim][id.index];
            for i in 0..=id.dim {
                let lhs = self.apply(src.face_of(id, i));
                let rhs = self.target.face(img, i);
                if lhs != rhs {
                    return Err(Error::InvalidMap(format!(
                        "face {i} of {id} not preserved: {lhs:?} vs {rhs:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[Vec<EzForm>] {
        &self.assign
    }

    pub fn into_assignment(self) -> Vec<Vec<EzForm>> {
        self.assign
    }

    pub fn image_of(&self, id: SimplexId) -> &EzForm {
        &self.assign[id.dim][id.index]
    }

    /// Image of an arbitrary source simplex.
    pub fn apply(&self, s: &EzForm) -> EzForm {
        let base = &self.assign[s.target.dim][s.target.index];
        if !s.is_degenerate() {
            return base.clone();
        }
        EzForm { epi: base.epi.after(&s.epi), target: base.target }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_set(&first.target, &self.source) {
            return Err(Error::NotComposable(format!(
                "target {:?} differs from source {:?}",
                first.target, self.source
            )));
        }
        Ok(self.after(first))
    }

    pub(crate) fn after(&self, first: &SimplicialMap) -> SimplicialMap {
        let assign = first
            .assign
            .iter()
            .map(|level| level.iter().map(|s| self.apply(s)).collect())
            .collect();
        SimplicialMap { source: first.source.clone(), target: self.target.clone(), assign }
    }

    /// Levelwise injective. Equivalent to: nondegenerate simplices go to
    /// distinct nondegenerate simplices.
    pub fn is_mono(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.assign.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(s.target))
    }

    /// Surjective on nondegenerate simplices of the target.
    pub fn is_epi(&self) -> bool {
        self.image().len() == self.target.total_nondegenerate()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// The image as a subcomplex of the target.
    pub fn image(&self) -> Subcomplex {
        let seeds: BTreeSet<SimplexId> = self.assign.iter().flatten().map(|s| s.target).collect();
        Subcomplex::generated(&self.target, seeds).expect("image simplices belong to the target")
    }

    /// Restriction to a subcomplex of the source, as a map out of the
    /// re-indexed subcomplex.
    pub fn restrict(&self, sub: &Subcomplex) -> Result<SimplicialMap> {
        if !same_set(sub.parent(), &self.source) {
            return Err(Error::NotComposable("subcomplex of a different set".into()));
        }
        let (_, incl) = sub.to_simplicial_set();
        Ok(self.after(&incl))
    }

    /// For a mono, the preimage of each target simplex.
    pub fn inverse_on_image(&self) -> Result<std::collections::HashMap<SimplexId, SimplexId>> {
        if !self.is_mono() {
            return Err(Error::NotMono("map is not injective".into()));
        }
        Ok(self
            .source
            .all_ids()
            .map(|id| (self.assign[id.dim][id.index].target, id))
            .collect())
    }

    /// Images of the source vertices, as target vertex indices.
    pub fn vertex_images(&self) -> Vec<usize> {
        self.assign.first().map_or(Vec::new(), |l| l.iter().map(|s| s.target.index).collect())
    }

    /// Replaces the target by an equal set (used after re-reading JSON).
    pub fn with_sets(self, source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Result<SimplicialMap> {
        if *source != *self.source || *target != *self.target {
            return Err(Error::InvalidMap("replacement sets differ".into()));
        }
        Ok(SimplicialMap { source, target, assign: self.assign })
    }
}
