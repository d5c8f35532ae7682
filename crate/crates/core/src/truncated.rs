//! Simplicial sets known only up to a dimension bound, and the levelwise
//! builder used for slices, exponentials and fiber products.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet};

/// A simplicial set whose simplices above `truncation_dim` are not
/// represented. Everything at or below the mark is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    set: Arc<SimplicialSet>,
    truncation_dim: usize,
}

impl TruncatedSimplicialSet {
    pub fn new(set: Arc<SimplicialSet>, truncation_dim: usize) -> Result<Self> {
        if set.top_dim() > truncation_dim as isize {
            return Err(Error::Truncation(format!(
                "set has simplices in dimension {} above the mark {truncation_dim}",
                set.top_dim()
            )));
        }
        Ok(TruncatedSimplicialSet { set, truncation_dim })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn truncation_dim(&self) -> usize {
        self.truncation_dim
    }

    /// Largest dimension a fibration check against this set may use.
    pub fn max_check_dim(&self) -> usize {
        self.truncation_dim.saturating_sub(1)
    }

    /// Checks that a fibration test at `max_dim` is meaningful here.
    pub fn check_bound(&self, max_dim: usize) -> Result<()> {
        if max_dim > self.max_check_dim() {
            return Err(Error::BoundTooSmall { bound: self.truncation_dim, minimum: max_dim + 1 });
        }
        Ok(())
    }

    /// Comparison with an untruncated set below the mark. Refuses unless
    /// `allow_truncated` is set.
    pub fn agrees_with(&self, full: &SimplicialSet, allow_truncated: bool) -> Result<bool> {
        if !allow_truncated {
            return Err(Error::Truncation("comparing a truncated set needs an explicit opt-in".into()));
        }
        let n = self.truncation_dim.min(full.counts().len().saturating_sub(1));
        let (skel, _) = crate::simpset::Subcomplex::skeleton(&Arc::new(full.clone()), n).to_simplicial_set();
        Ok(crate::simpset::isomorphic(&skel, &self.set).is_some())
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.set.to_json();
        v["truncation_dim"] = Value::from(self.truncation_dim as u64);
        v
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let mut v: Value = serde_json::from_str(s)?;
        let dim = v
            .get("truncation_dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing truncation_dim".into()))?;
        v.as_object_mut().expect("object").remove("truncation_dim");
        let set = SimplicialSet::from_json_str(&v.to_string())?;
        TruncatedSimplicialSet::new(Arc::new(set), dim as usize)
    }
}

/// Output of [`build_levelwise`]: the set, the key of every nondegenerate
/// simplex, and the normal form of every key.
#[derive(Clone, Debug)]
pub struct Levelwise<K> {
    pub set: Arc<SimplicialSet>,
    pub keys: Vec<Vec<K>>,
    pub lookup: Vec<HashMap<K, EzForm>>,
}

impl<K: Clone + Eq + Hash> Levelwise<K> {
    pub fn form_of(&self, n: usize, key: &K) -> Result<EzForm> {
        self.lookup
            .get(n)
            .and_then(|m| m.get(key))
            .cloned()
            .ok_or_else(|| Error::Truncation(format!("no {n}-simplex with this key")))
    }

    pub fn key_of(&self, id: SimplexId) -> &K {
        &self.keys[id.dim][id.index]
    }
}

/// Builds a simplicial set from the complete list of its `n`-simplices for
/// `n = 0..levels.len()`, given face and degeneracy operations on keys.
/// A key is nondegenerate when it is not `s_j` of a lower key.
pub fn build_levelwise<K, F, D>(levels: Vec<Vec<K>>, face: F, degeneracy: D) -> Result<Levelwise<K>>
where
    K: Clone + Eq + Hash,
    F: Fn(usize, &K, usize) -> K,
    D: Fn(usize, &K, usize) -> K,
{
    let mut lookup: Vec<HashMap<K, EzForm>> = Vec::with_capacity(levels.len());
    let mut keys: Vec<Vec<K>> = Vec::with_capacity(levels.len());
    let mut faces: Vec<Vec<Vec<EzForm>>> = Vec::with_capacity(levels.len());
    for (n, level) in levels.into_iter().enumerate() {
        let mut map: HashMap<K, EzForm> = HashMap::with_capacity(level.len());
        if n > 0 {
            for (y, form) in &lookup[n - 1] {
                for j in 0..n {
                    let s = Operator::degeneracy(n - 1, j).expect("valid degeneracy");
                    let k = degeneracy(n - 1, y, j);
                    map.entry(k).or_insert_with(|| EzForm { epi: form.epi.after(&s), target: form.target });
                }
            }
        }
        let degenerate = map.len();
        let mut level_keys = Vec::new();
        let mut level_faces = Vec::new();
        let mut seen = 0usize;
        for k in level {
            if map.contains_key(&k) {
                seen += 1;
                continue;
            }
            let id = SimplexId::new(n, level_keys.len());
            let fs = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        lookup[n - 1].get(&face(n, &k, i)).cloned().ok_or_else(|| {
                            Error::Truncation(format!("face {i} of a {n}-simplex is missing from level {}", n - 1))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            map.insert(k.clone(), EzForm::nondeg(id));
            level_keys.push(k);
            level_faces.push(fs);
        }
        if seen != degenerate {
            return Err(Error::Truncation(format!("level {n} misses some degenerate simplices")));
        }
        lookup.push(map);
        keys.push(level_keys);
        faces.push(level_faces);
    }
    let set = Arc::new(SimplicialSet::from_faces(faces, BTreeMap::new())?);
    keys.truncate(set.counts().len());
    Ok(Levelwise { set, keys, lookup })
}

/// Applies a map of sets given by a key transformation to nondegenerate keys.
pub(crate) fn map_between<K1, K2>(
    source: &Levelwise<K1>,
    target: &Levelwise<K2>,
    transform: impl Fn(usize, &K1) -> K2,
) -> Result<SimplicialMap>
where
    K1: Clone + Eq + Hash,
    K2: Clone + Eq + Hash,
{
    let assign = source
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| level.iter().map(|k| target.form_of(n, &transform(n, k))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.set.clone(), target.set.clone(), assign)
}
