//! Canonical JSON for sets and maps. Keys are always emitted sorted, and no
//! floats appear, so output is byte-stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{EzForm, SimplexId, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};
use crate::operator::Operator;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FormJson {
    pub epi: Vec<usize>,
    pub tgt: [usize; 2],
}

/// Wire shape of a simplicial set.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SetJson {
    pub top_dim: i64,
    pub nondeg: Vec<usize>,
    pub faces: BTreeMap<String, Vec<FormJson>>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

/// Wire shape of a simplicial map.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MapJson {
    pub source: SetJson,
    pub target: SetJson,
    pub assign: BTreeMap<String, FormJson>,
}

fn key(id: SimplexId) -> String {
    format!("{}.{}", id.dim, id.index)
}

fn parse_key(k: &str) -> Result<SimplexId> {
    let (d, i) = k
        .split_once('.')
        .ok_or_else(|| Error::Json(format!("bad simplex key {k:?}")))?;
    let dim = d.parse().map_err(|_| Error::Json(format!("bad simplex key {k:?}")))?;
    let index = i.parse().map_err(|_| Error::Json(format!("bad simplex key {k:?}")))?;
    Ok(SimplexId { dim, index })
}

fn form_to_json(f: &EzForm) -> FormJson {
    FormJson { epi: f.epi.images().to_vec(), tgt: [f.target.dim, f.target.index] }
}

fn form_from_json(f: &FormJson) -> Result<EzForm> {
    let target = SimplexId { dim: f.tgt[0], index: f.tgt[1] };
    let epi = Operator::new(target.dim, f.epi.clone())?;
    if !epi.is_epi() {
        return Err(Error::Json(format!("degeneracy part {:?} is not surjective", f.epi)));
    }
    Ok(EzForm { epi, target })
}

impl From<&SimplicialSet> for SetJson {
    fn from(x: &SimplicialSet) -> Self {
        let mut faces = BTreeMap::new();
        for id in x.all_ids() {
            if id.dim > 0 {
                faces.insert(key(id), x.faces(id).iter().map(form_to_json).collect());
            }
        }
        SetJson {
            top_dim: x.top_dim() as i64,
            nondeg: x.counts().to_vec(),
            faces,
            labels: x.labels().iter().map(|(&id, l)| (key(id), l.clone())).collect(),
        }
    }
}

impl TryFrom<&SetJson> for SimplicialSet {
    type Error = Error;

    fn try_from(w: &SetJson) -> Result<Self> {
        if w.top_dim != w.nondeg.len() as i64 - 1 {
            return Err(Error::Json("top_dim disagrees with nondeg counts".into()));
        }
        let mut table: Vec<Vec<Vec<EzForm>>> = w.nondeg.iter().map(|&c| vec![Vec::new(); c]).collect();
        for (k, fs) in &w.faces {
            let id = parse_key(k)?;
            if id.dim == 0 || id.dim >= table.len() || id.index >= table[id.dim].len() {
                return Err(Error::Json(format!("face entry for unknown simplex {k}")));
            }
            table[id.dim][id.index] = fs.iter().map(form_from_json).collect::<Result<_>>()?;
        }
        let mut labels = BTreeMap::new();
        for (k, l) in &w.labels {
            labels.insert(parse_key(k)?, l.clone());
        }
        SimplicialSet::from_faces(table, labels)
    }
}

impl SimplicialSet {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SetJson::from(self)).expect("plain data")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let w: SetJson = serde_json::from_str(s)?;
        SimplicialSet::try_from(&w)
    }
}

impl From<&SimplicialMap> for MapJson {
    fn from(f: &SimplicialMap) -> Self {
        let mut assign = BTreeMap::new();
        for id in f.source().all_ids() {
            assign.insert(key(id), form_to_json(f.image_of(id)));
        }
        MapJson { source: SetJson::from(&**f.source()), target: SetJson::from(&**f.target()), assign }
    }
}

impl SimplicialMap {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MapJson::from(self)).expect("plain data")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let w: MapJson = serde_json::from_value(v)?;
        SimplicialMap::try_from(&w)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let w: MapJson = serde_json::from_str(s)?;
        SimplicialMap::try_from(&w)
    }
}

impl TryFrom<&MapJson> for SimplicialMap {
    type Error = Error;

    fn try_from(w: &MapJson) -> Result<Self> {
        let source = Arc::new(SimplicialSet::try_from(&w.source)?);
        let target = Arc::new(SimplicialSet::try_from(&w.target)?);
        let mut assign: Vec<Vec<Option<EzForm>>> = source.counts().iter().map(|&c| vec![None; c]).collect();
        for (k, f) in &w.assign {
            let id = parse_key(k)?;
            if !source.contains(id) {
                return Err(Error::Json(format!("assignment for unknown simplex {k}")));
            }
            assign[id.dim][id.index] = Some(form_from_json(f)?);
        }
        let assign = assign
            .into_iter()
            .map(|level| level.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Json("assignment misses a simplex".into()))?;
        SimplicialMap::new(source, target, assign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{standard_simplex, wide_join};

    #[test]
    fn simplex_json_is_canonical() {
        let d1 = standard_simplex(1);
        let s = d1.to_json_string();
        assert_eq!(
            s,
            r#"{"faces":{"1.0":[{"epi":[0],"tgt":[0,1]},{"epi":[0],"tgt":[0,0]}]},"labels":{"0.0":"0","0.1":"1","1.0":"01"},"nondeg":[2,1],"top_dim":1}"#
        );
        assert_eq!(SimplicialSet::from_json_str(&s).unwrap(), d1);
    }

    #[test]
    fn round_trip_preserves_indices() {
        let w = wide_join(&Arc::new(standard_simplex(1)), &Arc::new(standard_simplex(1)));
        let s = w.set().to_json_string();
        let back = SimplicialSet::from_json_str(&s).unwrap();
        assert_eq!(&back, &**w.set());
        assert_eq!(back.to_json_string(), s);
        let f = w.left_inclusion().clone();
        let back = SimplicialMap::from_json_str(&f.to_json_string()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn empty_set_round_trips() {
        let e = SimplicialSet::empty();
        let s = e.to_json_string();
        assert!(s.contains(r#""top_dim":-1"#));
        assert_eq!(SimplicialSet::from_json_str(&s).unwrap(), e);
    }
}
