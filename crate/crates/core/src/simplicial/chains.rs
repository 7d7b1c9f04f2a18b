use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{SSetFT, SubComplex};
use crate::error::{invalid, Result};
use crate::int::Int;
use crate::par;

/// Column-major sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, Int)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from unsorted column entries, summing duplicates and dropping zeros.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, Int)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                let mut acc: BTreeMap<u32, Int> = BTreeMap::new();
                for (r, v) in c {
                    assert!((r as usize) < rows, "row index out of range");
                    let e = acc.entry(r).or_default();
                    *e = &*e + &v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Int>]) -> Self {
        let c = (0..cols)
            .map(|j| (0..rows).map(|i| (i as u32, data[i][j].clone())).collect())
            .collect();
        SparseMatrix::from_columns(rows, c)
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, Int)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, Int)>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Vec<(u32, Int)>> {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut d = vec![vec![Int::ZERO; self.cols.len()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                d[*i as usize][j] = v.clone();
            }
        }
        d
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), rhs.rows, "dimension mismatch");
        let cols = par::map(rhs.cols.as_slice(), |c: &Vec<(u32, Int)>| {
            let mut out = Vec::new();
            for (k, v) in c {
                for (i, w) in &self.cols[*k as usize] {
                    out.push((*i, v * w));
                }
            }
            out
        });
        SparseMatrix::from_columns(self.rows, cols)
    }
}

/// A bounded chain complex of free abelian groups `C_0 <- C_1 <- … <- C_top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[n]: C_n -> C_{n-1}`; `boundaries[0]` has no rows.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` is `∂_{k+1}`, of shape `ranks[k] × ranks[k+1]`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(invalid("need one boundary map per positive degree"));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.num_rows() != ranks[k] || b.num_cols() != ranks[k + 1] {
                return Err(invalid(format!("boundary {} has the wrong shape", k + 1)));
            }
        }
        let mut all = vec![SparseMatrix::zeros(0, ranks[0])];
        all.extend(boundaries);
        Ok(ChainComplex { ranks, boundaries: all })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `∂_n`; for `n` above the top this is the zero map out of `0`.
    pub fn boundary(&self, n: usize) -> SparseMatrix {
        match self.boundaries.get(n) {
            Some(b) => b.clone(),
            None => SparseMatrix::zeros(self.rank(n - 1), 0),
        }
    }

    pub fn boundary_ref(&self, n: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(n)
    }

    /// Returns the first `n` with `∂_n ∂_{n+1} != 0`.
    pub fn check_dd_zero(&self) -> std::result::Result<(), usize> {
        for n in 1..self.top_degree() {
            if !self.boundaries[n].mul(&self.boundaries[n + 1]).is_zero() {
                return Err(n);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ChainComplexJson {
        let boundaries = self.boundaries[1..]
            .iter()
            .map(|b| b.to_dense().into_iter().flatten().map(|v| v.to_string()).collect())
            .collect();
        ChainComplexJson { ranks: self.ranks.clone(), boundaries }
    }

    pub fn from_json(j: &ChainComplexJson) -> Result<Self> {
        if j.boundaries.len() + 1 != j.ranks.len() {
            return Err(invalid("need one boundary map per positive degree"));
        }
        let mut bs = Vec::new();
        for (k, flat) in j.boundaries.iter().enumerate() {
            let (r, c) = (j.ranks[k], j.ranks[k + 1]);
            if flat.len() != r * c {
                return Err(invalid(format!("boundary {} has {} entries, expected {}", k + 1, flat.len(), r * c)));
            }
            let vals: Vec<Int> = flat
                .iter()
                .map(|s| s.parse::<Int>().map_err(|e| invalid(format!("bad integer {s:?}: {e}"))))
                .collect::<Result<_>>()?;
            let dense: Vec<Vec<Int>> = vals.chunks(c.max(1)).take(r).map(|row| row.to_vec()).collect();
            let dense = if c == 0 { vec![Vec::new(); r] } else { dense };
            bs.push(SparseMatrix::from_dense(r, c, &dense));
        }
        ChainComplex::new(j.ranks.clone(), bs)
    }
}

/// `boundaries[k]` holds `∂_{k+1}` row-major, entries as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexJson {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<String>>,
}

/// Normalized chains of `X` through degree `d + 1`, enough to read off
/// homology in degrees `<= d`.
pub fn normalized_chains(x: &SSetFT, d: usize) -> Result<ChainComplex> {
    relative_chains(x, &SubComplex::empty(x), d)
}

/// Normalized chains of the pair `(X, A)` through degree `d + 1`.
pub fn relative_chains(x: &SSetFT, a: &SubComplex, d: usize) -> Result<ChainComplex> {
    x.require_trunc(d + 1)?;
    let top = d + 1;
    let index: Vec<Vec<Option<u32>>> = (0..=top)
        .map(|n| {
            let mut next = 0u32;
            (0..x.nondeg_counts()[n])
                .map(|s| {
                    if a.contains_nondeg(n, s) {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = index.iter().map(|l| l.iter().flatten().count()).collect();
    let boundaries = par::map_range(top, |k| {
        let n = k + 1;
        let cols = (0..x.nondeg_counts()[n])
            .filter(|&s| index[n][s].is_some())
            .map(|s| {
                x.nondeg_faces(n, s)
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_degenerate())
                    .filter_map(|(i, f)| {
                        let sign = if i % 2 == 0 { Int::ONE } else { -Int::ONE };
                        index[n - 1][f.base].map(|r| (r, sign))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(ranks[n - 1], cols)
    });
    ChainComplex::new(ranks, boundaries)
}

/// Chains of `X` relative to its basepoint.
pub fn reduced_chains(x: &SSetFT, d: usize) -> Result<ChainComplex> {
    relative_chains(x, &SubComplex::basepoint(x)?, d)
}

#[cfg(test)]
mod tests {
    use super::super::{product, simplicial_circle, simplicial_sphere, standard_simplex};
    use super::*;
    use crate::error::Error;

    #[test]
    fn circle_chains() {
        let c = normalized_chains(&simplicial_circle(2).unwrap(), 1).unwrap();
        assert_eq!(c.ranks(), &[1, 1, 0]);
        assert!(c.boundary(1).is_zero());
    }

    #[test]
    fn sphere_chains() {
        let c = normalized_chains(&simplicial_sphere(2, 3).unwrap(), 2).unwrap();
        assert_eq!(c.ranks(), &[1, 0, 1, 0]);
        assert!((1..=3).all(|n| c.boundary(n).is_zero()));
    }

    #[test]
    fn triangle_chains() {
        let c = normalized_chains(&standard_simplex(2, 3), 2).unwrap();
        assert_eq!(c.ranks(), &[3, 3, 1, 0]);
        // faces of [0,1,2] are [1,2], [0,2], [0,1]
        let d2 = c.boundary(2).to_dense();
        let col: Vec<i64> = d2.iter().map(|r| r[0].as_i64().unwrap()).collect();
        assert_eq!(col, vec![1, -1, 1]);
        c.check_dd_zero().unwrap();
    }

    #[test]
    fn truncation_is_enforced() {
        let r = normalized_chains(&simplicial_circle(1).unwrap(), 1);
        assert!(matches!(r, Err(Error::TruncationTooLow { trunc: 1, needed: 2 })));
    }

    #[test]
    fn product_chains_are_a_complex() {
        let p = product(&standard_simplex(2, 4), &simplicial_circle(4).unwrap()).unwrap();
        normalized_chains(&p, 3).unwrap().check_dd_zero().unwrap();
    }

    #[test]
    fn json_roundtrip() {
        let c = normalized_chains(&standard_simplex(2, 3), 2).unwrap();
        let j = c.to_json();
        assert_eq!(j.boundaries[0].len(), 9);
        assert_eq!(ChainComplex::from_json(&j).unwrap(), c);
    }
}
