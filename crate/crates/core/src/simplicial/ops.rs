use std::collections::HashMap;

use super::{DegSimplex, SSetFT, Surj};
use crate::error::{Error, Result};

/// A sub-simplicial set, recorded by its nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComplex {
    members: Vec<Vec<bool>>,
}

impl SubComplex {
    /// Fails with [`Error::NotASubcomplex`] unless the set is closed under faces.
    pub fn new(x: &SSetFT, members: Vec<Vec<bool>>) -> Result<SubComplex> {
        if members.len() != x.trunc() + 1 || members.iter().zip(x.nondeg_counts()).any(|(m, &c)| m.len() != c) {
            return Err(Error::NotASubcomplex("membership shape does not match".into()));
        }
        for (n, level) in members.iter().enumerate() {
            for (s, &inside) in level.iter().enumerate() {
                if !inside {
                    continue;
                }
                for f in x.nondeg_faces(n, s) {
                    if !members[f.base_dim()][f.base] {
                        return Err(Error::NotASubcomplex(format!("face {f:?} of x{n}_{s} is missing")));
                    }
                }
            }
        }
        Ok(SubComplex { members })
    }

    pub fn empty(x: &SSetFT) -> SubComplex {
        SubComplex { members: x.nondeg_counts().iter().map(|&c| vec![false; c]).collect() }
    }

    /// The basepoint vertex and its degeneracies.
    pub fn basepoint(x: &SSetFT) -> Result<SubComplex> {
        let b = x.require_basepoint()?;
        let mut a = SubComplex::empty(x);
        a.members[0][b] = true;
        Ok(a)
    }

    /// Closure under faces of the given nondegenerate simplices `(dim, index)`.
    pub fn generated_by(x: &SSetFT, simplices: &[(usize, usize)]) -> SubComplex {
        let mut a = SubComplex::empty(x);
        let mut stack = simplices.to_vec();
        while let Some((n, s)) = stack.pop() {
            if n > x.trunc() || a.members[n][s] {
                continue;
            }
            a.members[n][s] = true;
            stack.extend(x.nondeg_faces(n, s).iter().map(|f| (f.base_dim(), f.base)));
        }
        a
    }

    pub fn contains(&self, s: &DegSimplex) -> bool {
        self.members[s.base_dim()][s.base]
    }

    pub fn contains_nondeg(&self, n: usize, s: usize) -> bool {
        self.members[n][s]
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|l| l.iter().all(|&b| !b))
    }
}

/// New indices for the nondegenerate simplices that are not dropped.
fn renumber(x: &SSetFT, drop: impl Fn(usize, usize) -> bool, offset0: usize) -> Vec<Vec<Option<usize>>> {
    x.nondeg_counts()
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let mut next = if n == 0 { offset0 } else { 0 };
            (0..c)
                .map(|s| {
                    if drop(n, s) {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// `X/A`, pointed at the image of `A`. For empty `A` this adds a disjoint
/// basepoint.
pub fn quotient(x: &SSetFT, a: &SubComplex) -> Result<SSetFT> {
    SubComplex::new(x, a.members.clone())?;
    let new_index = renumber(x, |n, s| a.members[n][s], 1);
    let mut faces = vec![vec![Vec::new()]];
    faces[0].extend((0..new_index[0].iter().flatten().count()).map(|_| Vec::new()));
    for n in 1..=x.trunc() {
        let mut level = Vec::new();
        for s in 0..x.nondeg_counts()[n] {
            if a.members[n][s] {
                continue;
            }
            let fs = x
                .nondeg_faces(n, s)
                .iter()
                .map(|f| match new_index[f.base_dim()][f.base] {
                    Some(b) => DegSimplex { base: b, surj: f.surj.clone() },
                    None => DegSimplex { base: 0, surj: Surj::to_point(n - 1) },
                })
                .collect();
            level.push(fs);
        }
        faces.push(level);
    }
    SSetFT::new(x.trunc(), faces, Some(0))
}

/// Wedge sum at the basepoints. The common basepoint is vertex 0.
pub fn wedge(parts: &[SSetFT]) -> Result<SSetFT> {
    let trunc = parts.iter().map(SSetFT::trunc).min().unwrap_or(0);
    let mut faces: Vec<Vec<Vec<DegSimplex>>> = vec![Vec::new(); trunc + 1];
    faces[0].push(Vec::new());
    for x in parts {
        let b = x.require_basepoint()?;
        let offsets: Vec<usize> = faces.iter().map(Vec::len).collect();
        let idx = renumber(x, |n, s| n == 0 && s == b, 0);
        for n in 0..=trunc {
            for s in 0..x.nondeg_counts()[n] {
                if idx[n][s].is_none() {
                    continue;
                }
                let fs = x
                    .nondeg_faces(n, s)
                    .iter()
                    .map(|f| {
                        let base = match idx[f.base_dim()][f.base] {
                            Some(i) => offsets[f.base_dim()] + i,
                            None => 0,
                        };
                        DegSimplex { base, surj: f.surj.clone() }
                    })
                    .collect();
                faces[n].push(fs);
            }
        }
    }
    SSetFT::new(trunc, faces, Some(0))
}

/// Disjoint union, unpointed.
pub fn coproduct(parts: &[SSetFT]) -> Result<SSetFT> {
    let trunc = parts.iter().map(SSetFT::trunc).min().unwrap_or(0);
    let mut faces: Vec<Vec<Vec<DegSimplex>>> = vec![Vec::new(); trunc + 1];
    for x in parts {
        let offsets: Vec<usize> = faces.iter().map(Vec::len).collect();
        for n in 0..=trunc {
            for s in 0..x.nondeg_counts()[n] {
                let fs = x
                    .nondeg_faces(n, s)
                    .iter()
                    .map(|f| DegSimplex { base: offsets[f.base_dim()] + f.base, surj: f.surj.clone() })
                    .collect();
                faces[n].push(fs);
            }
        }
    }
    SSetFT::new(trunc, faces, None)
}

/// The pair `(a, b)` with common degeneracies split off: returns the
/// collapsing surjection and the reduced, jointly nondegenerate pair.
fn split_common(a: &DegSimplex, b: &DegSimplex) -> (Surj, DegSimplex, DegSimplex) {
    let (va, vb) = (a.surj.values(), b.surj.values());
    let n = va.len() - 1;
    let common: Vec<usize> = (0..n).filter(|&t| va[t] == va[t + 1] && vb[t] == vb[t + 1]).collect();
    if common.is_empty() {
        return (Surj::identity(n), a.clone(), b.clone());
    }
    let keep = |v: &[u8]| -> Surj {
        let vals = (0..=n).filter(|&t| t == 0 || !common.contains(&(t - 1))).map(|t| v[t]).collect();
        Surj::from_values(vals).expect("removing repeated values keeps a surjection")
    };
    let rho = Surj::from_degeneracies(n, &common).expect("distinct indices");
    (rho, DegSimplex { base: a.base, surj: keep(va) }, DegSimplex { base: b.base, surj: keep(vb) })
}

/// Cartesian product together with the nondegenerate pair behind each
/// nondegenerate simplex. The product is pointed when both factors are.
pub fn product_with_pairs(x: &SSetFT, y: &SSetFT) -> Result<(SSetFT, Vec<Vec<(DegSimplex, DegSimplex)>>)> {
    let trunc = x.trunc().min(y.trunc());
    let mut pairs: Vec<Vec<(DegSimplex, DegSimplex)>> = Vec::with_capacity(trunc + 1);
    let mut index: Vec<HashMap<(DegSimplex, DegSimplex), usize>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut level = Vec::new();
        for p in 0..=n {
            let sx = Surj::all(n, p);
            for q in (n - p)..=n {
                let sy = Surj::all(n, q);
                for a in &sx {
                    let da = a.degeneracies();
                    for b in &sy {
                        if b.degeneracies().iter().any(|i| da.contains(i)) {
                            continue;
                        }
                        for xb in 0..x.nondeg_counts()[p] {
                            for yb in 0..y.nondeg_counts()[q] {
                                level.push((
                                    DegSimplex { base: xb, surj: a.clone() },
                                    DegSimplex { base: yb, surj: b.clone() },
                                ));
                            }
                        }
                    }
                }
            }
        }
        level.sort();
        index.push(level.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect());
        pairs.push(level);
    }
    let mut faces = vec![vec![Vec::new(); pairs[0].len()]];
    for n in 1..=trunc {
        let level = pairs[n]
            .iter()
            .map(|(a, b)| {
                (0..=n)
                    .map(|i| {
                        let (rho, fa, fb) = split_common(&x.face(a, i), &y.face(b, i));
                        let base = index[rho.target_dim()][&(fa, fb)];
                        DegSimplex { base, surj: rho }
                    })
                    .collect()
            })
            .collect();
        faces.push(level);
    }
    let basepoint = match (x.basepoint(), y.basepoint()) {
        (Some(bx), Some(by)) => Some(index[0][&(DegSimplex::nondegenerate(0, bx), DegSimplex::nondegenerate(0, by))]),
        _ => None,
    };
    Ok((SSetFT::new(trunc, faces, basepoint)?, pairs))
}

pub fn product(x: &SSetFT, y: &SSetFT) -> Result<SSetFT> {
    Ok(product_with_pairs(x, y)?.0)
}

/// `X ∧ Y = (X × Y) / (X × * ∪ * × Y)`.
pub fn smash(x: &SSetFT, y: &SSetFT) -> Result<SSetFT> {
    let (bx, by) = (x.require_basepoint()?, y.require_basepoint()?);
    let (p, pairs) = product_with_pairs(x, y)?;
    let at = |s: &DegSimplex, b: usize| s.base_dim() == 0 && s.base == b;
    let members = pairs
        .iter()
        .map(|l| l.iter().map(|(a, c)| at(a, bx) || at(c, by)).collect())
        .collect();
    let a = SubComplex::new(&p, members)?;
    quotient(&p, &a)
}

/// `(X_0 ⊔ X_1 ⊔ …) / (A_0 ⊔ A_1 ⊔ …)`, assembled directly from the pairs.
pub fn quotient_of_coproduct(pairs: &[(SSetFT, SubComplex)]) -> Result<SSetFT> {
    let xs: Vec<SSetFT> = pairs.iter().map(|(x, _)| x.clone()).collect();
    let total = coproduct(&xs)?;
    let trunc = total.trunc();
    let mut members: Vec<Vec<bool>> = vec![Vec::new(); trunc + 1];
    for (_, a) in pairs {
        for (n, level) in members.iter_mut().enumerate() {
            level.extend_from_slice(&a.members[n]);
        }
    }
    quotient(&total, &SubComplex::new(&total, members)?)
}

#[cfg(test)]
mod tests {
    use super::super::{circle_bouquet, find_isomorphism, simplicial_circle, simplicial_sphere, standard_simplex};
    use super::*;

    fn boundary(n: usize, trunc: usize) -> (SSetFT, SubComplex) {
        let d = standard_simplex(n, trunc);
        let mut members: Vec<Vec<bool>> = d.nondeg_counts().iter().map(|&c| vec![true; c]).collect();
        members[n][0] = false;
        let a = SubComplex::new(&d, members).unwrap();
        (d, a)
    }

    #[test]
    fn interval_mod_endpoints_is_circle() {
        let (d, a) = boundary(1, 3);
        let q = quotient(&d, &a).unwrap();
        assert!(find_isomorphism(&q, &simplicial_circle(3).unwrap(), true).is_some());
    }

    #[test]
    fn simplex_mod_boundary_is_sphere() {
        let (d, a) = boundary(2, 3);
        let q = quotient(&d, &a).unwrap();
        assert!(find_isomorphism(&q, &simplicial_sphere(2, 3).unwrap(), true).is_some());
    }

    #[test]
    fn empty_quotient_adds_basepoint() {
        let d = standard_simplex(1, 1);
        let q = quotient(&d, &SubComplex::empty(&d)).unwrap();
        assert_eq!(q.nondeg_counts(), &[3, 1]);
        assert_eq!(q.num_components(), 2);
    }

    #[test]
    fn non_subcomplex_is_rejected() {
        let d = standard_simplex(1, 1);
        let members = vec![vec![false, false], vec![true]];
        assert!(matches!(SubComplex::new(&d, members), Err(Error::NotASubcomplex(_))));
    }

    #[test]
    fn wedge_of_one_circle() {
        let c = simplicial_circle(3).unwrap();
        let w = wedge(&[c.clone()]).unwrap();
        assert!(find_isomorphism(&w, &c, true).is_some());
        let w2 = wedge(&[c.clone(), c]).unwrap();
        assert!(find_isomorphism(&w2, &circle_bouquet(2, 3).unwrap(), true).is_some());
    }

    #[test]
    fn product_of_intervals_is_a_square() {
        let d = standard_simplex(1, 3);
        let p = product(&d, &d).unwrap();
        assert_eq!(p.nondeg_counts(), &[4, 5, 2, 0]);
        let t = product(&standard_simplex(1, 3), &standard_simplex(2, 3)).unwrap();
        // chains in the poset [1]×[2]: 6 points, 12 edges, 10 triangles, 3 tetrahedra
        assert_eq!(t.nondeg_counts(), &[6, 12, 10, 3]);
    }

    #[test]
    fn smash_of_circles_is_torus_quotient() {
        let c = simplicial_circle(3).unwrap();
        let s = smash(&c, &c).unwrap();
        // torus cells (1,3,2) minus the wedge (1,2,0) plus the new basepoint
        assert_eq!(s.nondeg_counts(), &[1, 1, 2, 0]);
    }
}
