//! Monotone maps between finite ordinals `[m] -> [n]`, the arrows of the
//! simplex category.
//!
//! An operator is stored as its full list of images, so two operators are
//! equal exactly when they are equal as functions and no word-problem
//! normalization is ever needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly increasing map `[source_dim] -> [target_dim]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator {
    target_dim: usize,
    images: Vec<usize>,
}

impl Operator {
    /// Builds an operator from its image list, checking monotonicity and range.
    pub fn new(target_dim: usize, images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidOperator("image list is empty".into()));
        }
        if let Some(&bad) = images.iter().find(|&&v| v > target_dim) {
            return Err(Error::InvalidOperator(format!(
                "image {bad} exceeds target dimension {target_dim}"
            )));
        }
        if images.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOperator(format!(
                "images {images:?} are not weakly increasing"
            )));
        }
        Ok(Operator { target_dim, images })
    }

    pub(crate) fn from_images_unchecked(target_dim: usize, images: Vec<usize>) -> Self {
        debug_assert!(!images.is_empty());
        debug_assert!(images.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(images.iter().all(|&v| v <= target_dim));
        Operator { target_dim, images }
    }

    pub fn identity(n: usize) -> Self {
        Operator { target_dim: n, images: (0..=n).collect() }
    }

    /// The coface `[n-1] -> [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { what: "face", index: i, bound: n });
        }
        let images = (0..=n).filter(|&v| v != i).collect();
        Ok(Operator { target_dim: n, images })
    }

    /// The codegeneracy `[n+1] -> [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { what: "degeneracy", index: i, bound: n });
        }
        let images = (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        Ok(Operator { target_dim: n, images })
    }

    /// The operator `[0] -> [n]` picking out vertex `v`.
    pub fn vertex(n: usize, v: usize) -> Result<Self> {
        Operator::new(n, vec![v])
    }

    /// The constant operator `[m] -> [0]`.
    pub fn collapse(m: usize) -> Self {
        Operator { target_dim: 0, images: vec![0; m + 1] }
    }

    pub fn source_dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.target_dim == self.source_dim() && self.is_mono()
    }

    pub fn is_mono(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_epi(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().unwrap() == self.target_dim
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Operator) -> Result<Operator> {
        if first.target_dim != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: first.target_dim,
            });
        }
        Ok(self.after(first))
    }

    pub(crate) fn after(&self, first: &Operator) -> Operator {
        debug_assert_eq!(first.target_dim, self.source_dim());
        Operator {
            target_dim: self.target_dim,
            images: first.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    /// Unique factorization `self = mono ∘ epi`.
    pub fn epi_mono_factor(&self) -> (Operator, Operator) {
        let mut epi = Vec::with_capacity(self.images.len());
        let mut mono: Vec<usize> = Vec::with_capacity(self.images.len());
        for &v in &self.images {
            if mono.last() != Some(&v) {
                mono.push(v);
            }
            epi.push(mono.len() - 1);
        }
        let mid = mono.len() - 1;
        (
            Operator { target_dim: mid, images: epi },
            Operator { target_dim: self.target_dim, images: mono },
        )
    }

    /// Vertices of the target missed by the operator, in increasing order.
    pub fn omitted(&self) -> Vec<usize> {
        (0..=self.target_dim)
            .filter(|v| self.images.binary_search(v).is_err())
            .collect()
    }

    /// Concatenation `[p] ⋆ [q] -> [p'] ⋆ [q']`, the action of the join on operators.
    pub fn join(&self, other: &Operator) -> Operator {
        let shift = self.target_dim + 1;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + shift));
        Operator { target_dim: self.target_dim + other.target_dim + 1, images }
    }

    /// The restriction of `self` to the sub-interval `start..=end` of its source.
    pub fn restrict(&self, start: usize, end: usize) -> Operator {
        Operator { target_dim: self.target_dim, images: self.images[start..=end].to_vec() }
    }

    /// All monotone maps `[k] -> [n]` in lexicographic order.
    pub fn all_monotone(k: usize, n: usize) -> Vec<Operator> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; k + 1];
        loop {
            out.push(Operator { target_dim: n, images: cur.clone() });
            // advance to the next weakly increasing sequence
            let mut pos = k as isize;
            while pos >= 0 && cur[pos as usize] == n {
                pos -= 1;
            }
            if pos < 0 {
                break;
            }
            let p = pos as usize;
            let v = cur[p] + 1;
            for slot in &mut cur[p..] {
                *slot = v;
            }
        }
        out
    }

    /// All surjections `[n] -> [m]`, lexicographic in their image lists.
    pub fn all_epis(n: usize, m: usize) -> Vec<Operator> {
        if m > n {
            return Vec::new();
        }
        // an epi is determined by the m positions (out of n) where the value steps up
        let mut out = Vec::new();
        for steps in subsets(n, m) {
            let mut images = Vec::with_capacity(n + 1);
            let mut v = 0;
            images.push(0);
            for t in 1..=n {
                if steps.contains(&t) {
                    v += 1;
                }
                images.push(v);
            }
            out.push(Operator { target_dim: m, images });
        }
        out.sort();
        out
    }

    /// All injections `[m] -> [n]` in lexicographic order.
    pub fn all_monos(m: usize, n: usize) -> Vec<Operator> {
        if m > n {
            return Vec::new();
        }
        subsets_of_range(n + 1, m + 1)
            .into_iter()
            .map(|images| Operator { target_dim: n, images })
            .collect()
    }

    /// The mono `[k] -> [n]` whose image is `vertices` (strictly increasing).
    pub fn from_vertex_set(n: usize, vertices: &[usize]) -> Result<Operator> {
        let op = Operator::new(n, vertices.to_vec())?;
        if !op.is_mono() {
            return Err(Error::InvalidOperator(format!("{vertices:?} is not strictly increasing")));
        }
        Ok(op)
    }
}

/// `m`-element subsets of `{1, ..., n}`.
fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    subsets_of_range(n, m)
        .into_iter()
        .map(|s| s.into_iter().map(|v| v + 1).collect())
        .collect()
}

/// `m`-element subsets of `{0, ..., n-1}` in lexicographic order.
fn subsets_of_range(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let need = m - cur.len();
        for v in start..n {
            if n - v < need {
                break;
            }
            cur.push(v);
            go(v + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.source_dim(), self.target_dim, self.images)
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorWire {
    src: usize,
    tgt: usize,
    img: Vec<usize>,
}

impl Serialize for Operator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorWire { src: self.source_dim(), tgt: self.target_dim, img: self.images.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = OperatorWire::deserialize(d)?;
        if wire.img.len() != wire.src + 1 {
            return Err(serde::de::Error::custom("img length does not match src"));
        }
        Operator::new(wire.tgt, wire.img).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(n: usize, images: &[usize]) -> Operator {
        Operator::new(n, images.to_vec()).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn faces() {
        assert_eq!(Operator::face(1, 0).unwrap().images(), &[1]);
        assert_eq!(Operator::face(2, 2).unwrap().images(), &[0, 1]);
        assert_eq!(Operator::face(3, 1).unwrap().images(), &[0, 2, 3]);
        assert!(Operator::face(0, 0).is_err());
        assert!(Operator::face(2, 3).is_err());
    }

    #[test]
    fn degeneracies() {
        assert_eq!(Operator::degeneracy(0, 0).unwrap().images(), &[0, 0]);
        assert_eq!(Operator::degeneracy(1, 1).unwrap().images(), &[0, 1, 1]);
        assert_eq!(Operator::degeneracy(2, 0).unwrap().images(), &[0, 0, 1, 2]);
        assert!(Operator::degeneracy(1, 2).is_err());
    }

    #[test]
    fn composition() {
        let c = Operator::face(2, 0).unwrap().compose(&Operator::face(1, 0).unwrap()).unwrap();
        assert_eq!(c.images(), &[2]);
        let c = Operator::degeneracy(1, 0)
            .unwrap()
            .compose(&Operator::face(2, 1).unwrap())
            .unwrap();
        assert_eq!(c.images(), &[0, 1]);
        let f = op(3, &[0, 2, 2]);
        assert_eq!(Operator::identity(3).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&Operator::identity(2)).unwrap(), f);
        assert!(f.compose(&Operator::identity(1)).is_err());
    }

    #[test]
    fn factorization_examples() {
        let (e, m) = op(2, &[0, 0, 2]).epi_mono_factor();
        assert_eq!(e.images(), &[0, 0, 1]);
        assert_eq!(m.images(), &[0, 2]);
        let mono = op(4, &[1, 3]);
        let (e, m) = mono.epi_mono_factor();
        assert!(e.is_identity());
        assert_eq!(m, mono);
        let (e, m) = op(1, &[1, 1, 1]).epi_mono_factor();
        assert_eq!(e.images(), &[0, 0, 0]);
        assert_eq!(m.images(), &[1]);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 1..6 {
            for j in 1..=n + 1 {
                for i in 0..j {
                    let lhs = Operator::face(n + 1, j).unwrap().after(&Operator::face(n, i).unwrap());
                    let rhs =
                        Operator::face(n + 1, i).unwrap().after(&Operator::face(n, j - 1).unwrap());
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn counting_by_enumeration() {
        for k in 0..=6 {
            for n in 0..=6 {
                assert_eq!(Operator::all_monotone(k, n).len(), binomial(n + k + 1, k + 1));
            }
        }
        for n in 0..=6 {
            for m in 0..=6 {
                let epis = Operator::all_epis(n, m);
                assert_eq!(epis.len(), binomial(n, m));
                assert!(epis.iter().all(Operator::is_epi));
                let brute = Operator::all_monotone(n, m).into_iter().filter(Operator::is_epi).count();
                assert_eq!(brute, epis.len());
                let monos = Operator::all_monos(m, n);
                assert_eq!(monos.len(), binomial(n + 1, m + 1));
            }
        }
    }

    #[test]
    fn factorization_is_exhaustively_unique() {
        for k in 0..=4 {
            for n in 0..=4 {
                for f in Operator::all_monotone(k, n) {
                    let (e, m) = f.epi_mono_factor();
                    assert!(e.is_epi() && m.is_mono());
                    assert_eq!(m.compose(&e).unwrap(), f);
                    let pairs = (0..=k.min(n))
                        .flat_map(|mid| {
                            let epis = Operator::all_epis(k, mid);
                            let monos = Operator::all_monos(mid, n);
                            epis.into_iter()
                                .flat_map(move |e| monos.clone().into_iter().map(move |m| (e.clone(), m)))
                        })
                        .filter(|(e, m)| m.after(e) == f)
                        .count();
                    assert_eq!(pairs, 1);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&op(2, &[0, 0, 2])).unwrap();
        assert_eq!(s, r#"{"src":2,"tgt":2,"img":[0,0,2]}"#);
        let back: Operator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, op(2, &[0, 0, 2]));
        assert!(serde_json::from_str::<Operator>(r#"{"src":1,"tgt":2,"img":[2,0]}"#).is_err());
    }
}
