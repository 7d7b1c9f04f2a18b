use super::{Encoded, Levelwise, SSetFT};
use crate::error::{invalid, Result};

/// A bisimplicial set with finite entries `X_{p,q}`, `p, q <= trunc`.
///
/// `p` is the horizontal degree and `q` the vertical one. Operator tables are
/// indexed `[p][q][i][x]`; horizontal faces land in `X_{p-1,q}`, vertical
/// faces in `X_{p,q-1}`, and degeneracies are defined whenever the target
/// degree stays within the truncation.
#[derive(Clone, Debug)]
pub struct BisimplicialFT {
    pub trunc: usize,
    pub sizes: Vec<Vec<usize>>,
    pub hface: Vec<Vec<Vec<Vec<u32>>>>,
    pub vface: Vec<Vec<Vec<Vec<u32>>>>,
    pub hdegen: Vec<Vec<Vec<Vec<u32>>>>,
    pub vdegen: Vec<Vec<Vec<Vec<u32>>>>,
    pub basepoint: Option<u32>,
}

impl BisimplicialFT {
    /// Checks shapes, the horizontal and vertical identities on each row and
    /// column, and that horizontal and vertical faces commute.
    pub fn validate(&self) -> Result<()> {
        let t = self.trunc;
        if self.sizes.len() != t + 1 || self.sizes.iter().any(|r| r.len() != t + 1) {
            return Err(invalid("bisimplicial grid has the wrong shape"));
        }
        for q in 0..=t {
            let row = self.row(q);
            row.check_identities(usize::MAX).map_err(|e| invalid(format!("row {q}: {e}")))?;
        }
        for p in 0..=t {
            let col = self.column(p);
            col.check_identities(usize::MAX).map_err(|e| invalid(format!("column {p}: {e}")))?;
        }
        for p in 1..=t {
            for q in 1..=t {
                for x in 0..self.sizes[p][q] {
                    for i in 0..=p {
                        for j in 0..=q {
                            let a = self.vface[p - 1][q][j][self.hface[p][q][i][x] as usize];
                            let b = self.hface[p][q - 1][i][self.vface[p][q][j][x] as usize];
                            if a != b {
                                return Err(invalid(format!("d^h_{i} and d^v_{j} do not commute at ({p},{q})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The simplicial set in row `q` (horizontal direction).
    pub fn row(&self, q: usize) -> Levelwise {
        let t = self.trunc;
        Levelwise {
            sizes: (0..=t).map(|p| self.sizes[p][q]).collect(),
            face: (0..=t).map(|p| if p == 0 { Vec::new() } else { self.hface[p][q].clone() }).collect(),
            degen: (0..t).map(|p| self.hdegen[p][q].clone()).collect(),
            basepoint: None,
        }
    }

    /// The simplicial set in column `p` (vertical direction).
    pub fn column(&self, p: usize) -> Levelwise {
        let t = self.trunc;
        Levelwise {
            sizes: (0..=t).map(|q| self.sizes[p][q]).collect(),
            face: (0..=t).map(|q| if q == 0 { Vec::new() } else { self.vface[p][q].clone() }).collect(),
            degen: (0..t).map(|q| self.vdegen[p][q].clone()).collect(),
            basepoint: None,
        }
    }

    /// `diag_n = X_{n,n}` with `d_i = d^h_i d^v_i` and `s_i = s^h_i s^v_i`.
    pub fn diagonal_tables(&self) -> Levelwise {
        let t = self.trunc;
        let face = (0..=t)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        self.vface[n][n][i]
                            .iter()
                            .map(|&y| self.hface[n][n - 1][i][y as usize])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degen = (0..t)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        self.vdegen[n][n][i]
                            .iter()
                            .map(|&y| self.hdegen[n][n + 1][i][y as usize])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Levelwise { sizes: (0..=t).map(|n| self.sizes[n][n]).collect(), face, degen, basepoint: self.basepoint }
    }

    pub fn diagonal(&self) -> Result<Encoded> {
        self.diagonal_tables().encode()
    }

    /// The bisimplicial set `X_{p,q} = X_p`, constant in the vertical direction.
    pub fn vertically_constant(x: &SSetFT) -> Result<BisimplicialFT> {
        let t = x.trunc();
        let (l, _) = Levelwise::materialize(x, t)?;
        let ident = |n: usize| (0..n as u32).collect::<Vec<u32>>();
        let grid = |f: &dyn Fn(usize, usize) -> Vec<Vec<u32>>| -> Vec<Vec<Vec<Vec<u32>>>> {
            (0..=t).map(|p| (0..=t).map(|q| f(p, q)).collect()).collect()
        };
        Ok(BisimplicialFT {
            trunc: t,
            sizes: (0..=t).map(|p| vec![l.sizes[p]; t + 1]).collect(),
            hface: grid(&|p, _| if p == 0 { Vec::new() } else { l.face[p].clone() }),
            vface: grid(&|p, q| if q == 0 { Vec::new() } else { vec![ident(l.sizes[p]); q + 1] }),
            hdegen: grid(&|p, _| if p < t { l.degen[p].clone() } else { Vec::new() }),
            vdegen: grid(&|p, q| if q < t { vec![ident(l.sizes[p]); q + 1] } else { Vec::new() }),
            basepoint: l.basepoint,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{find_isomorphism, simplicial_circle, standard_simplex};
    use super::*;

    #[test]
    fn diagonal_of_constant_is_original() {
        for x in [simplicial_circle(3).unwrap(), standard_simplex(2, 3)] {
            let b = BisimplicialFT::vertically_constant(&x).unwrap();
            b.validate().unwrap();
            let d = b.diagonal().unwrap();
            assert!(find_isomorphism(&d.sset, &x, true).is_some());
        }
    }
}
