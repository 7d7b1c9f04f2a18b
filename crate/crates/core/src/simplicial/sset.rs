use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Surj;
use crate::error::{invalid, Error, Result};

/// An arbitrary simplex `surj^*(base)` with `base` nondegenerate.
///
/// `base` indexes the nondegenerate simplices of dimension
/// `surj.target_dim()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegSimplex {
    pub base: usize,
    pub surj: Surj,
}

impl DegSimplex {
    pub fn nondegenerate(dim: usize, base: usize) -> DegSimplex {
        DegSimplex { base, surj: Surj::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.surj.source_dim()
    }

    pub fn base_dim(&self) -> usize {
        self.surj.target_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.surj.is_identity()
    }
}

impl fmt::Debug for DegSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{:?}x{}_{}", self.surj, self.base_dim(), self.base)
        } else {
            write!(f, "x{}_{}", self.base_dim(), self.base)
        }
    }
}

/// A finite-type simplicial set truncated at `trunc`.
///
/// Only nondegenerate simplices are stored, each with its list of faces in
/// normal form. All other simplices and all face and degeneracy operators are
/// derived symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetFT {
    trunc: usize,
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<DegSimplex>>>,
    basepoint: Option<usize>,
}

impl SSetFT {
    /// `faces[n][x]` lists the `n+1` faces of the `x`-th nondegenerate
    /// `n`-simplex (empty for vertices). Dimensions above `trunc` are dropped.
    pub fn new(trunc: usize, mut faces: Vec<Vec<Vec<DegSimplex>>>, basepoint: Option<usize>) -> Result<SSetFT> {
        faces.resize(trunc + 1, Vec::new());
        let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
        let x = SSetFT { trunc, counts, faces, basepoint };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<()> {
        if let Some(b) = self.basepoint {
            if b >= self.counts[0] {
                return Err(invalid("basepoint is not a vertex"));
            }
        }
        for (n, level) in self.faces.iter().enumerate() {
            for (x, fs) in level.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if fs.len() != expected {
                    return Err(invalid(format!("simplex {x} of dimension {n} has {} faces", fs.len())));
                }
                for f in fs {
                    if f.dim() + 1 != n || f.base >= self.counts[f.base_dim()] {
                        return Err(invalid(format!("bad face {f:?} of simplex {x} in dimension {n}")));
                    }
                }
            }
        }
        for n in 2..=self.trunc {
            for x in 0..self.counts[n] {
                let s = DegSimplex::nondegenerate(n, x);
                for j in 1..=n {
                    for i in 0..j {
                        let a = self.face(&self.face(&s, j), i);
                        let b = self.face(&self.face(&s, i), j - 1);
                        if a != b {
                            return Err(invalid(format!(
                                "simplicial identity d{i}d{j} = d{}d{i} fails on x{n}_{x}",
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn require_basepoint(&self) -> Result<usize> {
        self.basepoint.ok_or(Error::NoBasepoint)
    }

    /// Number of nondegenerate simplices in each dimension `0..=trunc`.
    pub fn nondeg_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn nondeg_faces(&self, n: usize, x: usize) -> &[DegSimplex] {
        &self.faces[n][x]
    }

    pub fn require_trunc(&self, needed: usize) -> Result<()> {
        if self.trunc < needed {
            return Err(Error::TruncationTooLow { trunc: self.trunc, needed });
        }
        Ok(())
    }

    pub fn face(&self, s: &DegSimplex, i: usize) -> DegSimplex {
        let (rest, missed) = s.surj.face(i);
        match missed {
            None => DegSimplex { base: s.base, surj: rest },
            Some(j) => {
                let f = &self.faces[s.base_dim()][s.base][j];
                DegSimplex { base: f.base, surj: rest.then(&f.surj) }
            }
        }
    }

    /// `s_i`; panics if the result would exceed the truncation.
    pub fn degeneracy(&self, s: &DegSimplex, i: usize) -> DegSimplex {
        assert!(s.dim() < self.trunc, "degeneracy beyond truncation");
        DegSimplex { base: s.base, surj: Surj::degeneracy(s.dim(), i).then(&s.surj) }
    }

    /// The basepoint as an `n`-simplex.
    pub fn basepoint_simplex(&self, n: usize) -> Option<DegSimplex> {
        self.basepoint.map(|b| DegSimplex { base: b, surj: Surj::to_point(n) })
    }

    /// Every `n`-simplex, grouped by base dimension.
    pub fn simplices(&self, n: usize) -> Vec<DegSimplex> {
        let mut out = Vec::new();
        for m in 0..=n {
            let surjs = Surj::all(n, m);
            for base in 0..self.counts[m] {
                for s in &surjs {
                    out.push(DegSimplex { base, surj: s.clone() });
                }
            }
        }
        out
    }

    pub fn num_simplices(&self, n: usize) -> usize {
        (0..=n).map(|m| self.counts[m] * binomial(n, m)).sum()
    }

    /// Copy with a lower truncation.
    pub fn truncate(&self, trunc: usize) -> SSetFT {
        let trunc = trunc.min(self.trunc);
        SSetFT {
            trunc,
            counts: self.counts[..=trunc].to_vec(),
            faces: self.faces[..=trunc].to_vec(),
            basepoint: self.basepoint,
        }
    }

    pub fn with_basepoint(mut self, basepoint: Option<usize>) -> Result<SSetFT> {
        self.basepoint = basepoint;
        self.validate()?;
        Ok(self)
    }

    /// Connected components of the 1-skeleton, as a vertex labelling.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.counts[0]);
        if self.trunc >= 1 {
            for fs in &self.faces[1] {
                uf.union(fs[0].base, fs[1].base);
            }
        }
        (0..self.counts[0]).map(|v| uf.find(v)).collect()
    }

    pub fn num_components(&self) -> usize {
        let mut labels = self.components();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    pub fn to_json(&self) -> SSetJson {
        let mut simplices = Vec::new();
        for (n, level) in self.faces.iter().enumerate() {
            for (id, fs) in level.iter().enumerate() {
                let faces = fs
                    .iter()
                    .map(|f| FaceJson { base: f.base, surj: f.surj.degeneracies() })
                    .collect();
                simplices.push(SimplexJson { dim: n, id, faces });
            }
        }
        SSetJson { trunc: self.trunc, basepoint: self.basepoint, simplices }
    }

    pub fn from_json(j: &SSetJson) -> Result<SSetFT> {
        let mut faces: Vec<BTreeMap<usize, Vec<DegSimplex>>> = vec![BTreeMap::new(); j.trunc + 1];
        for s in &j.simplices {
            if s.dim > j.trunc {
                return Err(invalid(format!("simplex of dimension {} above truncation", s.dim)));
            }
            let mut fs = Vec::with_capacity(s.faces.len());
            for f in &s.faces {
                if s.dim == 0 {
                    return Err(invalid("vertices have no faces"));
                }
                let surj = Surj::from_degeneracies(s.dim - 1, &f.surj)?;
                fs.push(DegSimplex { base: f.base, surj });
            }
            if faces[s.dim].insert(s.id, fs).is_some() {
                return Err(invalid(format!("duplicate simplex id {} in dimension {}", s.id, s.dim)));
            }
        }
        let mut levels = Vec::with_capacity(faces.len());
        for (n, level) in faces.into_iter().enumerate() {
            if level.keys().enumerate().any(|(i, &k)| i != k) {
                return Err(invalid(format!("simplex ids in dimension {n} must be 0..count")));
            }
            levels.push(level.into_values().collect());
        }
        SSetFT::new(j.trunc, levels, j.basepoint)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    pub trunc: usize,
    pub basepoint: Option<usize>,
    pub simplices: Vec<SimplexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub dim: usize,
    pub id: usize,
    pub faces: Vec<FaceJson>,
}

/// `surj` lists degeneracy indices in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub base: usize,
    pub surj: Vec<usize>,
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Links the larger root under the smaller one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Builds the simplicial set of an ordered simplicial complex. Each entry of
/// `simplices` is a strictly increasing vertex list; the family must be
/// closed under taking faces. Vertices are renumbered in sorted order.
pub fn from_simplicial_complex(simplices: &[Vec<usize>], trunc: usize, basepoint: Option<usize>) -> Result<SSetFT> {
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); trunc + 1];
    for s in simplices {
        if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!("{s:?} is not a strictly increasing vertex list")));
        }
        if s.len() <= trunc + 1 {
            by_dim[s.len() - 1].push(s.clone());
        }
    }
    for level in by_dim.iter_mut() {
        level.sort();
        level.dedup();
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = by_dim
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let mut faces = vec![vec![Vec::new(); by_dim[0].len()]];
    for n in 1..=trunc {
        let mut level = Vec::with_capacity(by_dim[n].len());
        for s in &by_dim[n] {
            let mut fs = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut f = s.clone();
                f.remove(i);
                let base = *index[n - 1].get(&f).ok_or_else(|| Error::NotASubcomplex(format!("face {f:?} of {s:?} missing")))?;
                fs.push(DegSimplex::nondegenerate(n - 1, base));
            }
            level.push(fs);
        }
        faces.push(level);
    }
    let basepoint = match basepoint {
        Some(v) => Some(*index[0].get(&vec![v]).ok_or_else(|| invalid("basepoint is not a vertex"))?),
        None => None,
    };
    SSetFT::new(trunc, faces, basepoint)
}

/// `Δ[n]`, truncated at `trunc`, pointed at vertex 0.
pub fn standard_simplex(n: usize, trunc: usize) -> SSetFT {
    let subsets: Vec<Vec<usize>> = (1u64..1 << (n + 1))
        .map(|mask| (0..=n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    from_simplicial_complex(&subsets, trunc, Some(0)).expect("faces of a simplex form a complex")
}

/// `Δ[n]/∂Δ[n]`: one vertex and one nondegenerate `n`-simplex. For `n = 0`
/// this is the two-point set `S⁰` pointed at vertex 0.
pub fn simplicial_sphere(n: usize, trunc: usize) -> Result<SSetFT> {
    if trunc < n {
        return Err(Error::TruncationTooLow { trunc, needed: n });
    }
    if n == 0 {
        return SSetFT::new(trunc, vec![vec![vec![], vec![]]], Some(0));
    }
    let mut faces = vec![Vec::new(); n + 1];
    faces[0].push(vec![]);
    faces[n].push(vec![DegSimplex { base: 0, surj: Surj::to_point(n - 1) }; n + 1]);
    SSetFT::new(trunc, faces, Some(0))
}

pub fn simplicial_circle(trunc: usize) -> Result<SSetFT> {
    simplicial_sphere(1, trunc)
}

/// The one-point simplicial set.
pub fn point(trunc: usize) -> SSetFT {
    SSetFT::new(trunc, vec![vec![vec![]]], Some(0)).expect("point is valid")
}

/// A wedge of `k` simplicial circles sharing their vertex.
pub fn circle_bouquet(k: usize, trunc: usize) -> Result<SSetFT> {
    if trunc < 1 {
        return Err(Error::TruncationTooLow { trunc, needed: 1 });
    }
    let loop_faces = vec![DegSimplex::nondegenerate(0, 0); 2];
    SSetFT::new(trunc, vec![vec![vec![]], vec![loop_faces; k]], Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts() {
        assert_eq!(standard_simplex(1, 1).nondeg_counts(), &[2, 1]);
        assert_eq!(standard_simplex(2, 3).nondeg_counts(), &[3, 3, 1, 0]);
        assert_eq!(simplicial_circle(4).unwrap().nondeg_counts(), &[1, 1, 0, 0, 0]);
        assert_eq!(simplicial_sphere(2, 3).unwrap().nondeg_counts(), &[1, 0, 1, 0]);
        assert_eq!(simplicial_sphere(0, 2).unwrap().nondeg_counts(), &[2, 0, 0]);
    }

    #[test]
    fn sphere_needs_truncation() {
        assert!(matches!(simplicial_sphere(3, 2), Err(Error::TruncationTooLow { .. })));
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let d = standard_simplex(1, 3);
        let edge = DegSimplex::nondegenerate(1, 0);
        let s0 = d.degeneracy(&edge, 0);
        assert_eq!(d.face(&s0, 0), edge);
        assert_eq!(d.face(&s0, 1), edge);
        let last = d.face(&s0, 2);
        assert_eq!(last, d.degeneracy(&d.face(&edge, 1), 0));
        assert_eq!(d.num_simplices(2), d.simplices(2).len());
    }

    #[test]
    fn simplex_count_matches_order_preserving_maps() {
        // n-simplices of Δ[k] are monotone maps [n] -> [k]: C(n+k+1, n+1)
        let d = standard_simplex(2, 4);
        for n in 0..=4 {
            assert_eq!(d.num_simplices(n), binomial(n + 3, n + 1));
        }
    }

    #[test]
    fn broken_identities_are_rejected() {
        // a triangle whose edges do not share endpoints consistently
        let v = |i| DegSimplex::nondegenerate(0, i);
        let e = |i| DegSimplex::nondegenerate(1, i);
        let faces = vec![
            vec![vec![], vec![], vec![]],
            vec![vec![v(1), v(0)], vec![v(2), v(0)], vec![v(2), v(1)]],
            vec![vec![e(2), e(1), e(1)]],
        ];
        assert!(SSetFT::new(2, faces, None).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = standard_simplex(2, 3);
        let back = SSetFT::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
        let s = simplicial_sphere(2, 2).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let parsed: SSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SSetFT::from_json(&parsed).unwrap(), s);
    }

    #[test]
    fn components_of_one_skeleton() {
        assert_eq!(simplicial_sphere(0, 1).unwrap().num_components(), 2);
        assert_eq!(standard_simplex(3, 1).num_components(), 1);
    }
}
