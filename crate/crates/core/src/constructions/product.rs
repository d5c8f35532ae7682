use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::simpset::{EzForm, SimplexId, SimplicialMap, SimplicialSet};

/// `A × B`. A nondegenerate `k`-simplex is a pair `(α^* a, β^* b)` with
/// `a`, `b` nondegenerate and `α`, `β` jointly injective epis out of `[k]`.
#[derive(Clone, Debug)]
pub struct Product {
    set: Arc<SimplicialSet>,
    left: Arc<SimplicialSet>,
    right: Arc<SimplicialSet>,
    coords: Vec<Vec<(EzForm, EzForm)>>,
    index: HashMap<(EzForm, EzForm), SimplexId>,
    pr1: SimplicialMap,
    pr2: SimplicialMap,
}

/// Lattice paths from `(0,0)` to `(p,q)` with `k` steps, as pairs of epis.
fn paths(p: usize, q: usize, k: usize) -> Vec<(Operator, Operator)> {
    fn go(
        p: usize,
        q: usize,
        left: usize,
        cur: &mut (Vec<usize>, Vec<usize>),
        out: &mut Vec<(Operator, Operator)>,
    ) {
        let (x, y) = (*cur.0.last().unwrap(), *cur.1.last().unwrap());
        if left == 0 {
            if x == p && y == q {
                out.push((
                    Operator::from_images_unchecked(p, cur.0.clone()),
                    Operator::from_images_unchecked(q, cur.1.clone()),
                ));
            }
            return;
        }
        // remaining distance must be coverable in the remaining steps
        for (dx, dy) in [(0, 1), (1, 0), (1, 1)] {
            let (nx, ny) = (x + dx, y + dy);
            if nx > p || ny > q {
                continue;
            }
            let (rx, ry) = (p - nx, q - ny);
            if rx.max(ry) > left - 1 || rx + ry < left - 1 {
                continue;
            }
            cur.0.push(nx);
            cur.1.push(ny);
            go(p, q, left - 1, cur, out);
            cur.0.pop();
            cur.1.pop();
        }
    }
    let mut out = Vec::new();
    if k < p.max(q) || k > p + q {
        return out;
    }
    go(p, q, k, &mut (vec![0], vec![0]), &mut out);
    out
}

fn pair_label(a: &SimplicialSet, b: &SimplicialSet, va: usize, vb: usize) -> String {
    format!(
        "({},{})",
        a.display_name(SimplexId::new(0, va)),
        b.display_name(SimplexId::new(0, vb))
    )
}

/// Builds `A × B`.
pub fn product(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> Product {
    let mut coords: Vec<Vec<(EzForm, EzForm)>> = Vec::new();
    let mut faces: Vec<Vec<Vec<EzForm>>> = Vec::new();
    let mut labels = BTreeMap::new();
    let mut index: HashMap<(EzForm, EzForm), SimplexId> = HashMap::new();
    if !a.is_empty() && !b.is_empty() {
        let top = (a.top_dim() + b.top_dim()) as usize;
        for k in 0..=top {
            let mut level_coords = Vec::new();
            let mut level_faces = Vec::new();
            for p in 0..=k.min(a.top_dim() as usize) {
                for q in k.saturating_sub(p)..=k.min(b.top_dim() as usize) {
                    let ps = paths(p, q, k);
                    if ps.is_empty() {
                        continue;
                    }
                    for x in a.simplices(p) {
                        for y in b.simplices(q) {
                            for (alpha, beta) in &ps {
                                let ea = EzForm { epi: alpha.clone(), target: x };
                                let eb = EzForm { epi: beta.clone(), target: y };
                                let id = SimplexId::new(k, level_coords.len());
                                let fs: Vec<EzForm> = if k == 0 {
                                    Vec::new()
                                } else {
                                    (0..=k)
                                        .map(|i| normalize_in(&index, &a.face(&ea, i), &b.face(&eb, i)))
                                        .collect()
                                };
                                let va = a.vertices_of_form(&ea);
                                let vb = b.vertices_of_form(&eb);
                                let label: String =
                                    va.iter().zip(&vb).map(|(&u, &v)| pair_label(a, b, u, v)).collect();
                                labels.insert(id, label);
                                level_faces.push(fs);
                                level_coords.push((ea, eb));
                            }
                        }
                    }
                }
            }
            for (i, c) in level_coords.iter().enumerate() {
                index.insert(c.clone(), SimplexId::new(k, i));
            }
            coords.push(level_coords);
            faces.push(level_faces);
        }
    }
    let set = Arc::new(SimplicialSet::from_faces(faces, labels).expect("product of well-formed sets"));
    let pr1 = SimplicialMap::new_unchecked(
        set.clone(),
        a.clone(),
        coords.iter().map(|l| l.iter().map(|c| c.0.clone()).collect()).collect(),
    );
    let pr2 = SimplicialMap::new_unchecked(
        set.clone(),
        b.clone(),
        coords.iter().map(|l| l.iter().map(|c| c.1.clone()).collect()).collect(),
    );
    Product { set, left: a.clone(), right: b.clone(), coords, index, pr1, pr2 }
}

/// Collapses the positions where both components repeat, then looks up the
/// remaining jointly injective pair.
fn normalize_in(index: &HashMap<(EzForm, EzForm), SimplexId>, ea: &EzForm, eb: &EzForm) -> EzForm {
    let (ia, ib) = (ea.epi.images(), eb.epi.images());
    let mut epi = Vec::with_capacity(ia.len());
    let mut ra = vec![ia[0]];
    let mut rb = vec![ib[0]];
    epi.push(0);
    for t in 1..ia.len() {
        if ia[t] != ia[t - 1] || ib[t] != ib[t - 1] {
            ra.push(ia[t]);
            rb.push(ib[t]);
        }
        epi.push(ra.len() - 1);
    }
    let r = ra.len() - 1;
    let key = (
        EzForm { epi: Operator::from_images_unchecked(ea.target.dim, ra), target: ea.target },
        EzForm { epi: Operator::from_images_unchecked(eb.target.dim, rb), target: eb.target },
    );
    EzForm { epi: Operator::from_images_unchecked(r, epi), target: index[&key] }
}

impl Product {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn left_factor(&self) -> &Arc<SimplicialSet> {
        &self.left
    }

    pub fn right_factor(&self) -> &Arc<SimplicialSet> {
        &self.right
    }

    pub fn pr1(&self) -> &SimplicialMap {
        &self.pr1
    }

    pub fn pr2(&self) -> &SimplicialMap {
        &self.pr2
    }

    /// Components of a nondegenerate simplex.
    pub fn coords(&self, id: SimplexId) -> &(EzForm, EzForm) {
        &self.coords[id.dim][id.index]
    }

    /// Components of an arbitrary simplex.
    pub fn project(&self, s: &EzForm) -> (EzForm, EzForm) {
        let (a, b) = self.coords(s.target);
        (
            EzForm { epi: a.epi.after(&s.epi), target: a.target },
            EzForm { epi: b.epi.after(&s.epi), target: b.target },
        )
    }

    /// The simplex with the given components (of equal dimension).
    pub fn normalize(&self, a: &EzForm, b: &EzForm) -> Result<EzForm> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        self.left.check_member(a.target)?;
        self.right.check_member(b.target)?;
        Ok(normalize_in(&self.index, a, b))
    }

    /// `(f, g): X -> A × B`.
    pub fn pair(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if **f.target() != *self.left || **g.target() != *self.right {
            return Err(Error::NotComposable("pairing legs do not land in the factors".into()));
        }
        if **f.source() != **g.source() {
            return Err(Error::NotComposable("pairing legs have different sources".into()));
        }
        let x = f.source();
        let assign = (0..x.counts().len())
            .map(|d| {
                x.simplices(d)
                    .map(|id| normalize_in(&self.index, f.image_of(id), g.image_of(id)))
                    .collect()
            })
            .collect();
        Ok(SimplicialMap::new_unchecked(x.clone(), self.set.clone(), assign))
    }
}

/// `u × v: A × B -> A' × B'`.
pub fn product_map(u: &SimplicialMap, v: &SimplicialMap, source: &Product, target: &Product) -> Result<SimplicialMap> {
    target.pair(&u.compose(&source.pr1)?, &v.compose(&source.pr2)?)
}
