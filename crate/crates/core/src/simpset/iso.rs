//! Isomorphism search between finite simplicial sets.
//!
//! Simplices of both sets are first colored by iterated refinement over
//! their face and coface structure; candidates must agree in color. The
//! backtracking then assigns vertices in breadth-first order over the
//! 1-skeleton, placing every higher simplex as soon as its vertices are
//! placed, so that face constraints prune early.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::{EzForm, SimplexId, SimplicialMap, SimplicialSet};

type Color = u32;

/// An isomorphism `x -> y` if one exists.
pub fn isomorphic(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SimplicialMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let (cx, cy) = refine_colors(x, y);
    for d in 0..x.counts().len() {
        let mut a: Vec<Color> = cx[d].clone();
        let mut b: Vec<Color> = cy[d].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let order = placement_order(x);
    let mut by_faces: Vec<HashMap<Vec<EzForm>, Vec<usize>>> = vec![HashMap::new(); y.counts().len()];
    for id in y.all_ids() {
        if id.dim > 0 {
            by_faces[id.dim].entry(y.faces(id).to_vec()).or_default().push(id.index);
        }
    }
    let mut search = Search {
        x,
        y,
        cx: &cx,
        cy: &cy,
        by_faces: &by_faces,
        assign: x.counts().iter().map(|&c| vec![usize::MAX; c]).collect(),
        used: y.counts().iter().map(|&c| vec![false; c]).collect(),
    };
    if !search.run(&order, 0) {
        return None;
    }
    let assign = search
        .assign
        .iter()
        .enumerate()
        .map(|(d, level)| level.iter().map(|&i| EzForm::nondeg(SimplexId { dim: d, index: i })).collect())
        .collect();
    Some(SimplicialMap::new_unchecked(x.clone(), y.clone(), assign))
}

struct Search<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    cx: &'a [Vec<Color>],
    cy: &'a [Vec<Color>],
    by_faces: &'a [HashMap<Vec<EzForm>, Vec<usize>>],
    assign: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, order: &[SimplexId], pos: usize) -> bool {
        let Some(&id) = order.get(pos) else {
            return true;
        };
        let color = self.cx[id.dim][id.index];
        let candidates: Vec<usize> = if id.dim == 0 {
            (0..self.y.count(0)).collect()
        } else {
            let key: Vec<EzForm> = self
                .x
                .faces(id)
                .iter()
                .map(|f| EzForm {
                    epi: f.epi.clone(),
                    target: SimplexId { dim: f.target.dim, index: self.assign[f.target.dim][f.target.index] },
                })
                .collect();
            match self.by_faces[id.dim].get(&key) {
                Some(c) => c.clone(),
                None => return false,
            }
        };
        for c in candidates {
            if self.used[id.dim][c] || self.cy[id.dim][c] != color {
                continue;
            }
            self.used[id.dim][c] = true;
            self.assign[id.dim][id.index] = c;
            if self.run(order, pos + 1) {
                return true;
            }
            self.used[id.dim][c] = false;
        }
        self.assign[id.dim][id.index] = usize::MAX;
        false
    }
}

/// Vertices in breadth-first order over edges, each followed by the
/// simplices it completes.
fn placement_order(x: &SimplicialSet) -> Vec<SimplexId> {
    let nv = x.count(0);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in x.simplices(1) {
        let vs = x.vertices_of(e);
        adj[vs[0]].push(vs[1]);
        adj[vs[1]].push(vs[0]);
    }
    let mut vorder = Vec::with_capacity(nv);
    let mut seen = vec![false; nv];
    for start in 0..nv {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            vorder.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut rank = vec![0usize; nv];
    for (r, &v) in vorder.iter().enumerate() {
        rank[v] = r;
    }
    // a simplex is placed right after its highest-ranked vertex
    let mut buckets: Vec<Vec<SimplexId>> = vec![Vec::new(); nv];
    for id in x.all_ids() {
        let last = x.vertices_of(id).iter().map(|&v| rank[v]).max().unwrap();
        buckets[last].push(id);
    }
    buckets.into_iter().flatten().collect()
}

/// Colors simplices of both sets with a shared palette.
fn refine_colors(x: &SimplicialSet, y: &SimplicialSet) -> (Vec<Vec<Color>>, Vec<Vec<Color>>) {
    let sets = [x, y];
    let cofaces: Vec<Vec<Vec<Vec<(usize, SimplexId)>>>> = sets.iter().map(|s| coface_lists(s)).collect();
    let mut colors: Vec<Vec<Vec<Color>>> = sets
        .iter()
        .map(|s| s.counts().iter().map(|&c| vec![0; c]).collect())
        .collect();
    // initial colors: dimension and face shape
    let mut palette: HashMap<Vec<u64>, Color> = HashMap::new();
    for (k, s) in sets.iter().enumerate() {
        for id in s.all_ids() {
            let mut key = vec![id.dim as u64];
            for f in s.faces(id) {
                key.push(f.target.dim as u64);
                key.extend(f.epi.images().iter().map(|&v| v as u64 + 1000));
            }
            let n = palette.len() as Color;
            colors[k][id.dim][id.index] = *palette.entry(key).or_insert(n);
        }
    }
    let mut classes = palette.len();
    for _ in 0..8 {
        let mut palette: BTreeMap<Vec<u64>, Color> = BTreeMap::new();
        let mut keys: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
        for (k, s) in sets.iter().enumerate() {
            let mut per = Vec::new();
            for d in 0..s.counts().len() {
                let mut level = Vec::new();
                for id in s.simplices(d) {
                    let mut key = vec![colors[k][d][id.index] as u64];
                    for f in s.faces(id) {
                        key.push(colors[k][f.target.dim][f.target.index] as u64);
                    }
                    let mut co: Vec<u64> = cofaces[k][d][id.index]
                        .iter()
                        .map(|&(i, c)| ((i as u64) << 32) | colors[k][c.dim][c.index] as u64)
                        .collect();
                    co.sort_unstable();
                    key.push(u64::MAX);
                    key.extend(co);
                    level.push(key);
                }
                per.push(level);
            }
            keys.push(per);
        }
        for per in &keys {
            for level in per {
                for key in level {
                    let n = palette.len() as Color;
                    palette.entry(key.clone()).or_insert(n);
                }
            }
        }
        for (k, per) in keys.iter().enumerate() {
            for (d, level) in per.iter().enumerate() {
                for (i, key) in level.iter().enumerate() {
                    colors[k][d][i] = palette[key];
                }
            }
        }
        if palette.len() == classes {
            break;
        }
        classes = palette.len();
    }
    let cy = colors.pop().unwrap();
    let cx = colors.pop().unwrap();
    (cx, cy)
}

fn coface_lists(s: &SimplicialSet) -> Vec<Vec<Vec<(usize, SimplexId)>>> {
    let mut out: Vec<Vec<Vec<(usize, SimplexId)>>> =
        s.counts().iter().map(|&c| vec![Vec::new(); c]).collect();
    for id in s.all_ids() {
        if id.dim == 0 {
            continue;
        }
        let mut seen = HashSet::new();
        for (i, f) in s.faces(id).iter().enumerate() {
            if seen.insert((i, f.target)) {
                out[f.target.dim][f.target.index].push((i, id));
            }
        }
    }
    out
}
