use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{GenTag, Presentation, Word};
use crate::error::{invalid, Result};

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinMonoid {
    size: usize,
    identity: usize,
    mult: Vec<Vec<usize>>,
}

impl FinMonoid {
    pub fn new(size: usize, identity: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        let m = FinMonoid { size, identity, mult };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        if n == 0 || self.identity >= n {
            return Err(invalid("monoid must be nonempty with an in-range identity"));
        }
        if self.mult.len() != n || self.mult.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(invalid("multiplication table has wrong shape or out-of-range entries"));
        }
        for a in 0..n {
            if self.mult[a][self.identity] != a || self.mult[self.identity][a] != a {
                return Err(invalid(format!("identity law fails at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                        return Err(invalid(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        FinMonoid { size: 1, identity: 0, mult: vec![vec![0]] }
    }

    /// Cyclic group of order `n` (element `i` is the `i`-th power).
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinMonoid { size: n, identity: 0, mult }
    }

    /// `{1, e}` with `e² = e`.
    pub fn idempotent() -> Self {
        FinMonoid { size: 2, identity: 0, mult: vec![vec![0, 1], vec![1, 1]] }
    }

    /// Direct product; element `(a, b)` has index `a * other.size + b`.
    pub fn product(&self, other: &FinMonoid) -> FinMonoid {
        let (n, k) = (self.size, other.size);
        let mult = (0..n * k)
            .map(|x| {
                (0..n * k)
                    .map(|y| self.mult[x / k][y / k] * k + other.mult[x % k][y % k])
                    .collect()
            })
            .collect();
        FinMonoid { size: n * k, identity: self.identity * k + other.identity, mult }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn inverse(&self, m: usize) -> Option<usize> {
        (0..self.size).find(|&k| self.mult[m][k] == self.identity && self.mult[k][m] == self.identity)
    }

    /// Elements with a two-sided inverse.
    pub fn invertible_elements(&self) -> BTreeSet<usize> {
        (0..self.size).filter(|&m| self.inverse(m).is_some()).collect()
    }

    pub fn is_group(&self) -> bool {
        self.invertible_elements().len() == self.size
    }

    /// Table presentation: one generator per non-identity element, rules
    /// `(a)(b) -> (ab)` with the identity read as the empty word.
    ///
    /// Returns the presentation and, for each element, its generator index.
    pub fn presentation(&self) -> (Presentation, Vec<Option<u32>>) {
        let mut gen_of = vec![None; self.size];
        let mut tags = Vec::new();
        for m in 0..self.size {
            if m != self.identity {
                gen_of[m] = Some(tags.len() as u32);
                tags.push(GenTag::Element(m));
            }
        }
        let word = |m: usize| gen_of[m].map(Word::letter).unwrap_or_default();
        let mut rels = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if a != self.identity && b != self.identity {
                    rels.push((word(a).concat(&word(b)), word(self.mult[a][b])));
                }
            }
        }
        let p = Presentation::new(tags, rels).expect("table relations use declared generators");
        (p, gen_of)
    }

    fn relabel(&self, perm: &[usize]) -> Vec<Vec<usize>> {
        // perm[old] = new
        let mut t = vec![vec![0; self.size]; self.size];
        for a in 0..self.size {
            for b in 0..self.size {
                t[perm[a]][perm[b]] = perm[self.mult[a][b]];
            }
        }
        t
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All monoids of order `n` up to isomorphism, identity at index 0.
pub fn enumerate_monoids(n: usize) -> Vec<FinMonoid> {
    assert!(n >= 1);
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let total = n.pow(free.len() as u32);
    let perms: Vec<Vec<usize>> = permutations(&(1..n).collect::<Vec<_>>())
        .into_iter()
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut mult = vec![vec![0; n]; n];
        for (a, row) in mult.iter_mut().enumerate() {
            row[0] = a;
        }
        for b in 0..n {
            mult[0][b] = b;
        }
        let mut c = code;
        for &(a, b) in &free {
            mult[a][b] = c % n;
            c /= n;
        }
        let m = FinMonoid { size: n, identity: 0, mult };
        if m.validate().is_err() {
            continue;
        }
        let canon = perms.iter().map(|p| m.relabel(p)).min().expect("at least one permutation");
        if seen.insert(canon.clone()) {
            out.push(FinMonoid { size: n, identity: 0, mult: canon });
        }
    }
    out
}
