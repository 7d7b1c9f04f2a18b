use std::fmt;

use crate::error::{invalid, Result};

/// A monotone surjection `[n] ->> [m]`, stored as its value list.
///
/// Every simplex of a simplicial set is `σ^*(y)` for a unique nondegenerate
/// `y` and a unique surjection `σ` (Eilenberg–Zilber). The positions `t`
/// with `σ(t) = σ(t+1)` are exactly the degeneracy indices `i_1 > … > i_r`
/// of the normal form `s_{i_1} … s_{i_r} y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surj(Vec<u8>);

impl Surj {
    pub fn identity(n: usize) -> Surj {
        Surj((0..=n as u8).collect())
    }

    /// The constant map `[n] -> [0]`.
    pub fn to_point(n: usize) -> Surj {
        Surj(vec![0; n + 1])
    }

    /// The codegeneracy `σ_i: [n+1] -> [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Surj {
        assert!(i <= n);
        Surj((0..=n as u8 + 1).map(|t| if t as usize > i { t - 1 } else { t }).collect())
    }

    /// Builds the surjection `[n] ->> [n - r]` of `s_{i_1} … s_{i_r}` from its
    /// degeneracy indices (any order, no repeats, each `< n`).
    pub fn from_degeneracies(n: usize, idx: &[usize]) -> Result<Surj> {
        let mut marks = vec![false; n];
        for &i in idx {
            if i >= n || marks[i] {
                return Err(invalid(format!("bad degeneracy index {i} for dimension {n}")));
            }
            marks[i] = true;
        }
        let mut v = Vec::with_capacity(n + 1);
        let mut cur = 0u8;
        v.push(0);
        for &m in &marks {
            if !m {
                cur += 1;
            }
            v.push(cur);
        }
        Ok(Surj(v))
    }

    pub fn from_values(values: Vec<u8>) -> Result<Surj> {
        if values.first() != Some(&0) || values.windows(2).any(|w| w[1] != w[0] && w[1] != w[0] + 1) {
            return Err(invalid("not a monotone surjection"));
        }
        Ok(Surj(values))
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    /// Degeneracy indices in strictly decreasing order.
    pub fn degeneracies(&self) -> Vec<usize> {
        (0..self.0.len() - 1).rev().filter(|&t| self.0[t] == self.0[t + 1]).collect()
    }

    pub fn source_dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        *self.0.last().expect("nonempty") as usize
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim() == self.target_dim()
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Surj) -> Surj {
        Surj(self.0.iter().map(|&t| other.0[t as usize]).collect())
    }

    /// Precomposes with the coface `δ_i: [n-1] -> [n]`.
    ///
    /// The composite is either surjective, giving `(σ∘δ_i, None)`, or it misses
    /// exactly one value `j`, in which case it factors as `δ_j ∘ σ'` and
    /// `(σ', Some(j))` is returned.
    pub fn face(&self, i: usize) -> (Surj, Option<usize>) {
        let n = self.source_dim();
        assert!(n >= 1 && i <= n);
        let v = self.0[i];
        let mut rest = self.0.clone();
        rest.remove(i);
        if rest.contains(&v) {
            (Surj(rest), None)
        } else {
            for t in rest.iter_mut() {
                if *t > v {
                    *t -= 1;
                }
            }
            (Surj(rest), Some(v as usize))
        }
    }

    /// All surjections `[n] ->> [m]`, ordered by their degeneracy sets.
    pub fn all(n: usize, m: usize) -> Vec<Surj> {
        assert!(m <= n);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn rec(start: usize, n: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<Surj>) {
            if left == 0 {
                out.push(Surj::from_degeneracies(n, chosen).expect("valid indices"));
                return;
            }
            for i in start..n {
                chosen.push(i);
                rec(i + 1, n, left - 1, chosen, out);
                chosen.pop();
            }
        }
        rec(0, n, n - m, &mut chosen, &mut out);
        out
    }
}

impl fmt::Debug for Surj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{:?}", self.degeneracies())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_indices_roundtrip() {
        let s = Surj::from_degeneracies(4, &[0, 2]).unwrap();
        assert_eq!(s.values(), &[0, 0, 1, 1, 2]);
        assert_eq!(s.degeneracies(), vec![2, 0]);
        assert_eq!(s.target_dim(), 2);
    }

    #[test]
    fn composite_of_codegeneracies_has_union_of_indices() {
        // s_3 s_1 y: apply σ_3 then σ_1
        let a = Surj::degeneracy(3, 3);
        let b = Surj::degeneracy(2, 1);
        assert_eq!(a.then(&b).degeneracies(), vec![3, 1]);
    }

    #[test]
    fn face_of_identity_misses_a_value() {
        let (s, miss) = Surj::identity(2).face(1);
        assert_eq!(miss, Some(1));
        assert!(s.is_identity());
        let (s, miss) = Surj::degeneracy(1, 1).face(2);
        assert_eq!(miss, None);
        assert!(s.is_identity());
    }

    #[test]
    fn counts_are_binomial() {
        assert_eq!(Surj::all(4, 2).len(), 6);
        assert_eq!(Surj::all(3, 3).len(), 1);
        assert_eq!(Surj::all(3, 0).len(), 1);
    }
}
