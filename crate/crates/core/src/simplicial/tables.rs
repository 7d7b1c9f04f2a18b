use std::collections::HashMap;

use super::{DegSimplex, SSetFT, Surj};
use crate::error::{invalid, Result};

/// A truncated simplicial set given levelwise by explicit finite sets and
/// operator tables.
///
/// `face[n][i][x]` is `d_i` of the `x`-th `n`-simplex (defined for `n >= 1`),
/// and `degen[n][i][x]` is `s_i` of the `x`-th `n`-simplex (defined for
/// `n < top`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Levelwise {
    pub sizes: Vec<usize>,
    pub face: Vec<Vec<Vec<u32>>>,
    pub degen: Vec<Vec<Vec<u32>>>,
    pub basepoint: Option<u32>,
}

/// Eilenberg–Zilber data of a levelwise simplicial set.
#[derive(Clone, Debug)]
pub struct Encoded {
    pub sset: SSetFT,
    /// `normal_form[n][x]` is the simplex `x` written as `surj^*(base)`.
    pub normal_form: Vec<Vec<DegSimplex>>,
}

impl Levelwise {
    pub fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Enumerates every simplex of `x` up to dimension `top`.
    pub fn materialize(x: &SSetFT, top: usize) -> Result<(Levelwise, Vec<Vec<DegSimplex>>)> {
        x.require_trunc(top)?;
        let simplices: Vec<Vec<DegSimplex>> = (0..=top).map(|n| x.simplices(n)).collect();
        let index: Vec<HashMap<&DegSimplex, u32>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s, i as u32)).collect())
            .collect();
        let mut face = vec![Vec::new()];
        let mut degen = Vec::new();
        for n in 0..=top {
            if n >= 1 {
                face.push((0..=n).map(|i| simplices[n].iter().map(|s| index[n - 1][&x.face(s, i)]).collect()).collect());
            }
            if n < top {
                degen.push(
                    (0..=n).map(|i| simplices[n].iter().map(|s| index[n + 1][&x.degeneracy(s, i)]).collect()).collect(),
                );
            }
        }
        let basepoint = x.basepoint_simplex(0).map(|b| index[0][&b]);
        let sizes = simplices.iter().map(Vec::len).collect();
        Ok((Levelwise { sizes, face, degen, basepoint }, simplices))
    }

    /// `x` is degenerate at level `n` iff `x = s_i d_i x` for some `i < n`.
    pub fn degenerate_mask(&self) -> Vec<Vec<bool>> {
        (0..=self.top())
            .map(|n| {
                (0..self.sizes[n])
                    .map(|x| (0..n).any(|i| self.degen[n - 1][i][self.face[n][i][x] as usize] as usize == x))
                    .collect()
            })
            .collect()
    }

    /// Re-encodes in nondegenerate-base + surjection normal form.
    pub fn encode(&self) -> Result<Encoded> {
        let top = self.top();
        let mut nondeg_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
        let mut normal_form: Vec<Vec<DegSimplex>> = Vec::with_capacity(top + 1);
        let mut faces: Vec<Vec<Vec<DegSimplex>>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut idx = vec![None; self.sizes[n]];
            let mut nf = Vec::with_capacity(self.sizes[n]);
            let mut level_faces = Vec::new();
            for x in 0..self.sizes[n] {
                let split = (0..n).find_map(|i| {
                    let y = self.face[n][i][x] as usize;
                    (self.degen[n - 1][i][y] as usize == x).then_some((i, y))
                });
                match split {
                    Some((i, y)) => {
                        let below: &DegSimplex = &normal_form[n - 1][y];
                        nf.push(DegSimplex { base: below.base, surj: Surj::degeneracy(n - 1, i).then(&below.surj) });
                    }
                    None => {
                        let id = level_faces.len();
                        idx[x] = Some(id);
                        nf.push(DegSimplex::nondegenerate(n, id));
                        let fs: Vec<DegSimplex> = if n == 0 {
                            Vec::new()
                        } else {
                            (0..=n).map(|i| normal_form[n - 1][self.face[n][i][x] as usize].clone()).collect()
                        };
                        level_faces.push(fs);
                    }
                }
            }
            nondeg_index.push(idx);
            normal_form.push(nf);
            faces.push(level_faces);
        }
        let basepoint = match self.basepoint {
            Some(b) => Some(nondeg_index[0][b as usize].ok_or_else(|| invalid("basepoint vertex is degenerate"))?),
            None => None,
        };
        let sset = SSetFT::new(top, faces, basepoint)?;
        Ok(Encoded { sset, normal_form })
    }

    /// Checks the simplicial identities on every simplex (or on every
    /// `stride`-th one when a level is large).
    pub fn check_identities(&self, max_per_level: usize) -> std::result::Result<(), String> {
        let top = self.top();
        let d = |n: usize, i: usize, x: usize| self.face[n][i][x] as usize;
        let s = |n: usize, i: usize, x: usize| self.degen[n][i][x] as usize;
        for n in 0..=top {
            let stride = (self.sizes[n] / max_per_level.max(1)).max(1);
            for x in (0..self.sizes[n]).step_by(stride) {
                for j in 0..=n {
                    for i in 0..j {
                        if n >= 2 && d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x)) {
                            return Err(format!("d{i}d{j} at level {n}, simplex {x}"));
                        }
                    }
                }
                if n + 2 <= top {
                    for i in 0..=n {
                        for j in i..=n {
                            if s(n + 1, i, s(n, j, x)) != s(n + 1, j + 1, s(n, i, x)) {
                                return Err(format!("s{i}s{j} at level {n}, simplex {x}"));
                            }
                        }
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let y = s(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = d(n + 1, i, y);
                            let ok = if i == j || i == j + 1 {
                                lhs == x
                            } else if n == 0 {
                                true
                            } else if i < j {
                                lhs == s(n - 1, j - 1, d(n, i, x))
                            } else {
                                lhs == s(n - 1, j, d(n, i - 1, x))
                            };
                            if !ok {
                                return Err(format!("d{i}s{j} at level {n}, simplex {x}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{product, simplicial_sphere, standard_simplex};
    use super::*;

    #[test]
    fn materialize_then_encode_roundtrips() {
        for x in [standard_simplex(2, 3), simplicial_sphere(2, 3).unwrap()] {
            let (t, simplices) = Levelwise::materialize(&x, 3).unwrap();
            t.check_identities(usize::MAX).unwrap();
            let enc = t.encode().unwrap();
            assert_eq!(enc.sset, x);
            assert_eq!(enc.normal_form, simplices);
        }
    }

    #[test]
    fn product_tables_satisfy_identities() {
        let p = product(&standard_simplex(1, 3), &simplicial_sphere(2, 3).unwrap()).unwrap();
        let (t, _) = Levelwise::materialize(&p, 3).unwrap();
        t.check_identities(usize::MAX).unwrap();
        let mask = t.degenerate_mask();
        let nondeg: Vec<usize> = mask.iter().map(|l| l.iter().filter(|&&b| !b).count()).collect();
        assert_eq!(nondeg, p.nondeg_counts());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let (mut t, _) = Levelwise::materialize(&standard_simplex(2, 2), 2).unwrap();
        t.face[2][0][t.sizes[2] - 1] = 0;
        assert!(t.check_identities(usize::MAX).is_err());
    }
}
