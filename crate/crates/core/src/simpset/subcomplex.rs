use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::map::same_set;
use super::{EzForm, SimplexId, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// A face-closed set of nondegenerate simplices of a parent set.
#[derive(Clone)]
pub struct Subcomplex {
    parent: Arc<SimplicialSet>,
    members: BTreeSet<SimplexId>,
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        same_set(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subcomplex {}

impl std::fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = self.members.iter().map(|&id| self.parent.display_name(id)).collect();
        write!(f, "Subcomplex{names:?}")
    }
}

impl Subcomplex {
    pub fn empty(parent: &Arc<SimplicialSet>) -> Self {
        Subcomplex { parent: parent.clone(), members: BTreeSet::new() }
    }

    pub fn full(parent: &Arc<SimplicialSet>) -> Self {
        Subcomplex { parent: parent.clone(), members: parent.all_ids().collect() }
    }

    /// Smallest subcomplex containing the seeds.
    pub fn generated(parent: &Arc<SimplicialSet>, seeds: impl IntoIterator<Item = SimplexId>) -> Result<Self> {
        let mut members = BTreeSet::new();
        let mut stack: Vec<SimplexId> = Vec::new();
        for s in seeds {
            parent.check_member(s)?;
            stack.push(s);
        }
        while let Some(id) = stack.pop() {
            if !members.insert(id) {
                continue;
            }
            if id.dim > 0 {
                for f in parent.faces(id) {
                    if !members.contains(&f.target) {
                        stack.push(f.target);
                    }
                }
            }
        }
        Ok(Subcomplex { parent: parent.clone(), members })
    }

    /// Wraps a member set, checking face closure.
    pub fn from_members(parent: &Arc<SimplicialSet>, members: BTreeSet<SimplexId>) -> Result<Self> {
        for &id in &members {
            parent.check_member(id)?;
            if id.dim > 0 {
                if let Some(f) = parent.faces(id).iter().find(|f| !members.contains(&f.target)) {
                    return Err(Error::MalformedSet(format!(
                        "member {id} has face {} outside the subcomplex",
                        f.target
                    )));
                }
            }
        }
        Ok(Subcomplex { parent: parent.clone(), members })
    }

    /// Simplices of dimension at most `n`.
    pub fn skeleton(parent: &Arc<SimplicialSet>, n: usize) -> Self {
        let members = parent.all_ids().filter(|id| id.dim <= n).collect();
        Subcomplex { parent: parent.clone(), members }
    }

    pub fn parent(&self) -> &Arc<SimplicialSet> {
        &self.parent
    }

    pub fn members(&self) -> &BTreeSet<SimplexId> {
        &self.members
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.members.contains(&id)
    }

    /// Whether an arbitrary simplex of the parent lies in the subcomplex.
    pub fn contains_form(&self, s: &EzForm) -> bool {
        self.members.contains(&s.target)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.total_nondegenerate()
    }

    /// Nondegenerate counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for id in &self.members {
            if out.len() <= id.dim {
                out.resize(id.dim + 1, 0);
            }
            out[id.dim] += 1;
        }
        out
    }

    fn same_parent(&self, other: &Subcomplex) -> Result<()> {
        if same_set(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::NotComposable("subcomplexes of different sets".into()))
        }
    }

    pub fn union(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.same_parent(other)?;
        let members = self.members.union(&other.members).copied().collect();
        Ok(Subcomplex { parent: self.parent.clone(), members })
    }

    pub fn intersection(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.same_parent(other)?;
        let members = self.members.intersection(&other.members).copied().collect();
        Ok(Subcomplex { parent: self.parent.clone(), members })
    }

    pub fn is_subset(&self, other: &Subcomplex) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Re-indexes the subcomplex as a simplicial set of its own, together
    /// with its inclusion into the parent. Order within each dimension is
    /// inherited from the parent.
    pub fn to_simplicial_set(&self) -> (Arc<SimplicialSet>, SimplicialMap) {
        let mut renumber: HashMap<SimplexId, SimplexId> = HashMap::new();
        let mut faces: Vec<Vec<Vec<EzForm>>> = Vec::new();
        let mut labels = BTreeMap::new();
        let mut assign: Vec<Vec<EzForm>> = Vec::new();
        for &id in &self.members {
            while faces.len() <= id.dim {
                faces.push(Vec::new());
                assign.push(Vec::new());
            }
            let new = SimplexId { dim: id.dim, index: faces[id.dim].len() };
            renumber.insert(id, new);
            let fs = if id.dim == 0 {
                Vec::new()
            } else {
                self.parent
                    .faces(id)
                    .iter()
                    .map(|f| EzForm { epi: f.epi.clone(), target: renumber[&f.target] })
                    .collect()
            };
            faces[id.dim].push(fs);
            assign[id.dim].push(EzForm::nondeg(id));
            if let Some(l) = self.parent.label(id) {
                labels.insert(new, l.to_owned());
            }
        }
        let set = Arc::new(SimplicialSet::from_faces(faces, labels).expect("subcomplex of a well-formed set"));
        let incl = SimplicialMap::new_unchecked(set.clone(), self.parent.clone(), assign);
        (set, incl)
    }

    /// Moves the subcomplex along a map (image of its simplices).
    pub fn image_under(&self, f: &SimplicialMap) -> Result<Subcomplex> {
        if !same_set(f.source(), &self.parent) {
            return Err(Error::NotComposable("map does not start at the parent".into()));
        }
        Subcomplex::generated(f.target(), self.members.iter().map(|&id| f.image_of(id).target))
    }

    /// Re-parents onto an equal set.
    pub fn reparent(&self, parent: &Arc<SimplicialSet>) -> Result<Subcomplex> {
        if !same_set(parent, &self.parent) {
            return Err(Error::NotComposable("new parent differs".into()));
        }
        Ok(Subcomplex { parent: parent.clone(), members: self.members.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{simplex_by_vertices, standard_simplex};

    #[test]
    fn skeleton_of_triangle_is_boundary() {
        let d2: Arc<SimplicialSet> = standard_simplex(2).into();
        let sk = Subcomplex::skeleton(&d2, 1);
        assert_eq!(sk.len(), 6);
        assert_eq!(sk.counts(), vec![3, 3]);
    }

    #[test]
    fn union_of_two_edges_is_spine() {
        let d2: Arc<SimplicialSet> = standard_simplex(2).into();
        let e01 = Subcomplex::generated(&d2, [simplex_by_vertices(&d2, &[0, 1]).unwrap()]).unwrap();
        let e12 = Subcomplex::generated(&d2, [simplex_by_vertices(&d2, &[1, 2]).unwrap()]).unwrap();
        let spine = e01.union(&e12).unwrap();
        assert_eq!(spine.len(), 5);
        let meet = e01.intersection(&e12).unwrap();
        assert_eq!(meet.counts(), vec![1]);
        let (set, incl) = spine.to_simplicial_set();
        assert!(set.validate());
        assert!(incl.is_mono());
    }

    #[test]
    fn foreign_seed_is_an_error() {
        let d1: Arc<SimplicialSet> = standard_simplex(1).into();
        assert!(Subcomplex::generated(&d1, [SimplexId::new(2, 0)]).is_err());
        let bad: BTreeSet<_> = [SimplexId::new(1, 0)].into_iter().collect();
        assert!(Subcomplex::from_members(&d1, bad).is_err());
    }

    #[test]
    fn restrict_identity_to_spine() {
        let d2: Arc<SimplicialSet> = standard_simplex(2).into();
        let spine = Subcomplex::generated(
            &d2,
            [simplex_by_vertices(&d2, &[0, 1]).unwrap(), simplex_by_vertices(&d2, &[1, 2]).unwrap()],
        )
        .unwrap();
        let r = SimplicialMap::identity(&d2).restrict(&spine).unwrap();
        let (_, incl) = spine.to_simplicial_set();
        assert_eq!(r, incl);
    }
}
