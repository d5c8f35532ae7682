use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Wire shape: composition lists `[g, f, g∘f]` for composable pairs of
/// non-identity morphisms; composites with identities are implied.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct CategoryJson {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    #[serde(default)]
    composition: Vec<[usize; 3]>,
}

/// A finite category with explicit composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CategoryJson", into = "CategoryJson")]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl TryFrom<CategoryJson> for FiniteCategory {
    type Error = Error;
    fn try_from(w: CategoryJson) -> Result<Self> {
        FiniteCategory::new(w.objects, w.morphisms, w.identities, &w.composition)
    }
}

impl From<FiniteCategory> for CategoryJson {
    fn from(c: FiniteCategory) -> Self {
        let composition = c
            .comp
            .iter()
            .filter(|(&(g, f), _)| !c.is_identity(g) && !c.is_identity(f))
            .map(|(&(g, f), &h)| [g, f, h])
            .collect();
        CategoryJson { objects: c.objects, morphisms: c.morphisms, identities: c.identities, composition }
    }
}

impl FiniteCategory {
    /// Checks identities, typing, totality on composable pairs,
    /// unit laws and associativity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: &[[usize; 3]],
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        if identities.len() != objects.len() {
            return bad("one identity per object is required".into());
        }
        for m in &morphisms {
            if m.source >= objects.len() || m.target >= objects.len() {
                return bad(format!("morphism {} has an unknown endpoint", m.name));
            }
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= morphisms.len() || morphisms[i].source != o || morphisms[i].target != o {
                return bad(format!("identity of object {o} is not an endomorphism of it"));
            }
        }
        let is_id = |m: usize| identities.contains(&m);
        let mut comp = BTreeMap::new();
        for (f, m) in morphisms.iter().enumerate() {
            comp.insert((f, identities[m.source]), f);
            comp.insert((identities[m.target], f), f);
        }
        for &[g, f, h] in composition {
            if g >= morphisms.len() || f >= morphisms.len() || h >= morphisms.len() {
                return bad(format!("composition entry {:?} names a missing morphism", [g, f, h]));
            }
            if morphisms[f].target != morphisms[g].source {
                return bad(format!("{} and {} are not composable", morphisms[g].name, morphisms[f].name));
            }
            if morphisms[h].source != morphisms[f].source || morphisms[h].target != morphisms[g].target {
                return bad(format!("composite of {} and {} has wrong type", morphisms[g].name, morphisms[f].name));
            }
            if let Some(&old) = comp.get(&(g, f)) {
                if old != h {
                    return bad(format!("composite of {} and {} given twice", morphisms[g].name, morphisms[f].name));
                }
            }
            comp.insert((g, f), h);
        }
        for f in 0..morphisms.len() {
            for g in 0..morphisms.len() {
                if morphisms[f].target == morphisms[g].source && !comp.contains_key(&(g, f)) {
                    debug_assert!(!is_id(f) && !is_id(g));
                    return bad(format!("composite {} ∘ {} missing", morphisms[g].name, morphisms[f].name));
                }
            }
        }
        let c = FiniteCategory { objects, morphisms, identities, comp };
        for (&(g, f), &gf) in &c.comp {
            for h in 0..c.morphisms.len() {
                if c.morphisms[h].source == c.morphisms[g].target && c.comp[&(h, gf)] != c.comp[&(c.comp[&(h, g)], f)] {
                    return bad(format!(
                        "composition is not associative at {}, {}, {}",
                        c.morphisms[h].name, c.morphisms[g].name, c.morphisms[f].name
                    ));
                }
            }
        }
        Ok(c)
    }

    /// The poset on `0..n` with the given order relation (which must be
    /// reflexive, transitive and antisymmetric).
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        for i in 0..n {
            if !leq(i, i) {
                return Err(Error::InvalidCategory(format!("relation is not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq(i, j) && leq(j, i) {
                    return Err(Error::InvalidCategory(format!("{i} and {j} are identified")));
                }
                for k in 0..n {
                    if leq(i, j) && leq(j, k) && !leq(i, k) {
                        return Err(Error::InvalidCategory(format!("relation is not transitive at {i}, {j}, {k}")));
                    }
                }
            }
        }
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut ids = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    ids.insert((i, j), morphisms.len());
                    let name = if i == j { format!("id{i}") } else { format!("{i}<{j}") };
                    morphisms.push(Morphism { name, source: i, target: j });
                }
            }
        }
        let identities = (0..n).map(|i| ids[&(i, i)]).collect();
        let mut composition = Vec::new();
        for (&(i, j), &f) in &ids {
            for (&(j2, k), &g) in &ids {
                if j2 == j && i != j && j != k {
                    composition.push([g, f, ids[&(i, k)]]);
                }
            }
        }
        composition.sort_unstable();
        FiniteCategory::new(objects, morphisms, identities, &composition)
    }

    /// The linear order `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        FiniteCategory::poset(n + 1, |i, j| i <= j).expect("linear orders are posets")
    }

    /// Two objects and a pair of mutually inverse arrows.
    pub fn free_isomorphism() -> Self {
        let morphisms = vec![
            Morphism { name: "ida".into(), source: 0, target: 0 },
            Morphism { name: "idb".into(), source: 1, target: 1 },
            Morphism { name: "f".into(), source: 0, target: 1 },
            Morphism { name: "g".into(), source: 1, target: 0 },
        ];
        FiniteCategory::new(vec!["a".into(), "b".into()], morphisms, vec![0, 1], &[[3, 2, 0], [2, 3, 1]])
            .expect("the free isomorphism is a category")
    }

    /// The cyclic group of order `m` as a one-object category.
    pub fn cyclic_group(m: usize) -> Self {
        assert!(m >= 1);
        let morphisms = (0..m).map(|k| Morphism { name: format!("g{k}"), source: 0, target: 0 }).collect();
        let mut composition = Vec::new();
        for a in 1..m {
            for b in 1..m {
                composition.push([a, b, (a + b) % m]);
            }
        }
        FiniteCategory::new(vec!["*".into()], morphisms, vec![0], &composition).expect("groups are categories")
    }

    /// The product category.
    pub fn product(&self, other: &FiniteCategory) -> FiniteCategory {
        let no = other.objects.len();
        let nm = other.morphisms.len();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .flat_map(|f| {
                other.morphisms.iter().map(move |g| Morphism {
                    name: format!("({},{})", f.name, g.name),
                    source: f.source * no + g.source,
                    target: f.target * no + g.target,
                })
            })
            .collect();
        let identities = (0..self.objects.len())
            .flat_map(|a| (0..no).map(move |b| (a, b)))
            .map(|(a, b)| self.identities[a] * nm + other.identities[b])
            .collect();
        let mut composition = Vec::new();
        for (&(g1, f1), &h1) in &self.comp {
            for (&(g2, f2), &h2) in &other.comp {
                composition.push([g1 * nm + g2, f1 * nm + f2, h1 * nm + h2]);
            }
        }
        FiniteCategory::new(objects, morphisms, identities, &composition).expect("products of categories")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].source] == m
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    /// Morphisms `a -> b`.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].source == a && self.morphisms[m].target == b)
            .collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidCategory(format!("not a functor: {m}")));
        if objects.len() != source.objects.len() || morphisms.len() != source.morphisms.len() {
            return bad("wrong number of images");
        }
        if objects.iter().any(|&o| o >= target.objects.len()) || morphisms.iter().any(|&m| m >= target.morphisms.len()) {
            return bad("image out of range");
        }
        for (f, m) in source.morphisms.iter().enumerate() {
            let img = &target.morphisms[morphisms[f]];
            if img.source != objects[m.source] || img.target != objects[m.target] {
                return bad("endpoints not preserved");
            }
        }
        for (o, &i) in source.identities.iter().enumerate() {
            if morphisms[i] != target.identities[objects[o]] {
                return bad("identities not preserved");
            }
        }
        for (&(g, f), &h) in &source.comp {
            if target.comp[&(morphisms[g], morphisms[f])] != morphisms[h] {
                return bad("composition not preserved");
            }
        }
        Ok(Functor { source, target, objects, morphisms })
    }

    /// The unique functor between posets with the given object map, if
    /// the map is monotone.
    pub fn between_posets(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>, objects: Vec<usize>) -> Result<Self> {
        let mut morphisms = Vec::with_capacity(source.morphisms.len());
        for m in &source.morphisms {
            let hom = target.hom(objects[m.source], objects[m.target]);
            match hom.as_slice() {
                [only] => morphisms.push(*only),
                _ => return Err(Error::InvalidCategory("object map is not monotone into a poset".into())),
            }
        }
        Functor::new(source.clone(), target.clone(), objects, morphisms)
    }

    /// Every functor `source -> target`.
    pub fn all(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>) -> Vec<Functor> {
        let no = source.objects.len();
        let mut out = Vec::new();
        let mut objs = vec![0; no];
        fn objects_rec(
            i: usize,
            objs: &mut Vec<usize>,
            source: &Arc<FiniteCategory>,
            target: &Arc<FiniteCategory>,
            out: &mut Vec<Functor>,
        ) {
            if i == objs.len() {
                let mut ms = vec![usize::MAX; source.morphisms.len()];
                morphisms_rec(0, objs, &mut ms, source, target, out);
                return;
            }
            for o in 0..target.objects.len() {
                objs[i] = o;
                objects_rec(i + 1, objs, source, target, out);
            }
        }
        fn morphisms_rec(
            m: usize,
            objs: &[usize],
            ms: &mut Vec<usize>,
            source: &Arc<FiniteCategory>,
            target: &Arc<FiniteCategory>,
            out: &mut Vec<Functor>,
        ) {
            if m == ms.len() {
                if let Ok(f) = Functor::new(source.clone(), target.clone(), objs.to_vec(), ms.clone()) {
                    out.push(f);
                }
                return;
            }
            let mm = &source.morphisms[m];
            let cands = if source.is_identity(m) {
                vec![target.identities[objs[mm.source]]]
            } else {
                target.hom(objs[mm.source], objs[mm.target])
            };
            for c in cands {
                ms[m] = c;
                morphisms_rec(m + 1, objs, ms, source, target, out);
            }
        }
        if no == 0 {
            if let Ok(f) = Functor::new(source.clone(), target.clone(), Vec::new(), Vec::new()) {
                out.push(f);
            }
            return out;
        }
        objects_rec(0, &mut objs, source, target, &mut out);
        out
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn morphism(&self, m: usize) -> usize {
        self.morphisms[m]
    }
}

/// The nerve of a finite category. Nondegenerate `n`-simplices are chains of
/// `n` composable non-identity morphisms.
#[derive(Clone, Debug)]
pub struct Nerve {
    category: Arc<FiniteCategory>,
    set: Arc<SimplicialSet>,
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    /// The morphisms of a nondegenerate simplex (empty for a vertex).
    pub fn chain(&self, id: SimplexId) -> &[usize] {
        &self.chains[id.dim][id.index]
    }

    /// The simplex given by a chain of composable morphisms, any of which
    /// may be identities. `base` is used for the empty chain.
    pub fn simplex_of(&self, base: usize, chain: &[usize]) -> Result<EzForm> {
        let c = &self.category;
        let mut epi = Vec::with_capacity(chain.len() + 1);
        let mut kept = Vec::new();
        epi.push(0);
        for &m in chain {
            if !c.is_identity(m) {
                kept.push(m);
            }
            epi.push(kept.len());
        }
        let r = kept.len();
        let target = if r == 0 {
            let o = chain.first().map_or(base, |&m| c.morphisms[m].source);
            SimplexId::new(0, o)
        } else {
            let i = self
                .index
                .get(r)
                .and_then(|m| m.get(&kept))
                .ok_or_else(|| Error::Truncation(format!("chain of length {r} lies above the truncation")))?;
            SimplexId::new(r, *i)
        };
        Ok(EzForm { epi: Operator::from_images_unchecked(r, epi), target })
    }
}

fn extend_chains(c: &FiniteCategory, shorter: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for ch in shorter {
        let end = c.morphisms[*ch.last().unwrap()].target;
        for (m, mm) in c.morphisms.iter().enumerate() {
            if mm.source == end && !c.is_identity(m) {
                let mut next = ch.clone();
                next.push(m);
                out.push(next);
            }
        }
    }
    out
}

fn build_nerve(c: &Arc<FiniteCategory>, max_dim: usize, strict: bool) -> Result<Nerve> {
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); c.objects.len().min(1)];
    if c.objects.is_empty() {
        return Ok(Nerve { category: c.clone(), set: Arc::new(SimplicialSet::empty()), chains: Vec::new(), index: Vec::new() });
    }
    chains[0] = (0..c.objects.len()).map(|_| Vec::new()).collect();
    let ones: Vec<Vec<usize>> = (0..c.morphisms.len()).filter(|&m| !c.is_identity(m)).map(|m| vec![m]).collect();
    let mut cur = ones;
    let mut n = 1;
    while !cur.is_empty() {
        if n > max_dim {
            if strict {
                return Err(Error::NerveUnbounded { max_dim });
            }
            break;
        }
        let next = extend_chains(c, &cur);
        chains.push(cur);
        cur = next;
        n += 1;
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
        .collect();
    let mut nerve = Nerve { category: c.clone(), set: Arc::new(SimplicialSet::empty()), chains, index };
    let mut faces: Vec<Vec<Vec<EzForm>>> = Vec::new();
    let mut labels = BTreeMap::new();
    for (d, level) in nerve.chains.iter().enumerate() {
        let mut fl = Vec::with_capacity(level.len());
        for (i, ch) in level.iter().enumerate() {
            let id = SimplexId::new(d, i);
            if d == 0 {
                fl.push(Vec::new());
                labels.insert(id, c.objects[i].clone());
                continue;
            }
            let mut fs = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let face: Vec<usize> = if k == 0 {
                    ch[1..].to_vec()
                } else if k == d {
                    ch[..d - 1].to_vec()
                } else {
                    let mut f = ch[..k - 1].to_vec();
                    f.push(c.comp[&(ch[k], ch[k - 1])]);
                    f.extend_from_slice(&ch[k + 1..]);
                    f
                };
                let base = if k == 0 { c.morphisms[ch[0]].target } else { c.morphisms[ch[0]].source };
                fs.push(nerve.simplex_of(base, &face)?);
            }
            fl.push(fs);
            labels.insert(id, ch.iter().map(|&m| c.morphisms[m].name.as_str()).collect::<Vec<_>>().join(","));
        }
        faces.push(fl);
    }
    nerve.set = Arc::new(SimplicialSet::from_faces(faces, labels)?);
    Ok(nerve)
}

/// The nerve, failing if it has nondegenerate simplices above `max_dim`.
pub fn nerve(c: &Arc<FiniteCategory>, max_dim: usize) -> Result<Nerve> {
    build_nerve(c, max_dim, true)
}

/// The `max_dim`-skeleton of the nerve.
pub fn nerve_truncated(c: &Arc<FiniteCategory>, max_dim: usize) -> Result<Nerve> {
    build_nerve(c, max_dim, false)
}

/// `N(F): N(C) -> N(D)`.
pub fn nerve_map(f: &Functor, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    if *f.source != *source.category || *f.target != *target.category {
        return Err(Error::NotComposable("functor does not match the nerves".into()));
    }
    SimplicialMap::from_fn(source.set.clone(), target.set.clone(), |id| {
        if id.dim == 0 {
            return Ok(EzForm::nondeg(SimplexId::new(0, f.objects[id.index])));
        }
        let imgs: Vec<usize> = source.chain(id).iter().map(|&m| f.morphisms[m]).collect();
        target.simplex_of(0, &imgs)
    })
}
