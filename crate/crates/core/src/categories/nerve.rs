use std::collections::HashMap;

use super::FinCat;
use crate::error::{invalid, Result};
use crate::simplicial::{BisimplicialFT, DegSimplex, SSetFT, Surj};

/// Composable chains `x_0 -> x_1 -> … -> x_p` of length `p >= 1`, in
/// lexicographic order. With `nondeg_only` identities are skipped.
pub fn chains(c: &FinCat, p: usize, nondeg_only: bool) -> Vec<Vec<usize>> {
    assert!(p >= 1);
    let usable: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !(nondeg_only && c.is_identity(f))).collect();
    let mut out: Vec<Vec<usize>> = usable.iter().map(|&f| vec![f]).collect();
    for _ in 1..p {
        let mut next = Vec::new();
        for ch in &out {
            let end = c.tgt(*ch.last().expect("nonempty"));
            for &g in &usable {
                if c.src(g) == end {
                    let mut v = ch.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// `d_i` of a chain of length `p >= 2`.
fn chain_face(c: &FinCat, ch: &[usize], i: usize) -> Vec<usize> {
    let p = ch.len();
    let mut v = Vec::with_capacity(p - 1);
    if i == 0 {
        v.extend_from_slice(&ch[1..]);
    } else if i == p {
        v.extend_from_slice(&ch[..p - 1]);
    } else {
        v.extend_from_slice(&ch[..i - 1]);
        v.push(c.then(ch[i - 1], ch[i]).expect("chain is composable"));
        v.extend_from_slice(&ch[i + 1..]);
    }
    v
}

/// Vertex `i` of a chain.
fn chain_vertex(c: &FinCat, ch: &[usize], i: usize) -> usize {
    if i < ch.len() {
        c.src(ch[i])
    } else {
        c.tgt(ch[ch.len() - 1])
    }
}

/// Nerve of `C` truncated at `d`. Vertices are the objects; a chain is
/// nondegenerate when it contains no identity, and an identity in position
/// `j` (1-based) records the degeneracy `s_{j-1}`.
pub fn nerve(c: &FinCat, d: usize) -> SSetFT {
    let levels: Vec<Vec<Vec<usize>>> = (1..=d).map(|p| chains(c, p, true)).collect();
    let index: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i)).collect())
        .collect();
    let encode = |ch: Vec<usize>| -> DegSimplex {
        let n = ch.len();
        let degs: Vec<usize> = (0..n).filter(|&j| c.is_identity(ch[j])).collect();
        let surj = Surj::from_degeneracies(n, &degs).expect("distinct positions");
        let rest: Vec<usize> = ch.iter().copied().filter(|&f| !c.is_identity(f)).collect();
        let base = if rest.is_empty() { c.src(ch[0]) } else { index[rest.len() - 1][rest.as_slice()] };
        DegSimplex { base, surj }
    };
    let mut faces = vec![vec![Vec::new(); c.num_objects()]];
    for (k, level) in levels.iter().enumerate() {
        let p = k + 1;
        faces.push(
            level
                .iter()
                .map(|ch| {
                    (0..=p)
                        .map(|i| {
                            if p == 1 {
                                DegSimplex::nondegenerate(0, chain_vertex(c, ch, 1 - i))
                            } else {
                                encode(chain_face(c, ch, i))
                            }
                        })
                        .collect()
                })
                .collect(),
        );
    }
    SSetFT::new(d, faces, c.basepoint()).expect("nerves satisfy the simplicial identities")
}

/// A functor between finite categories, as object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FinCat) -> Functor {
        Functor { objects: (0..c.num_objects()).collect(), morphisms: (0..c.num_morphisms()).collect() }
    }

    /// Checks endpoints, identities, and composition.
    pub fn check(&self, from: &FinCat, to: &FinCat) -> std::result::Result<(), String> {
        if self.objects.len() != from.num_objects() || self.morphisms.len() != from.num_morphisms() {
            return Err("maps have the wrong size".into());
        }
        if self.objects.iter().any(|&x| x >= to.num_objects()) || self.morphisms.iter().any(|&f| f >= to.num_morphisms()) {
            return Err("maps leave the target".into());
        }
        for f in 0..from.num_morphisms() {
            let g = self.morphisms[f];
            if to.src(g) != self.objects[from.src(f)] || to.tgt(g) != self.objects[from.tgt(f)] {
                return Err(format!("morphism {} lands on wrong endpoints", from.morphism_name(f)));
            }
        }
        for x in 0..from.num_objects() {
            if self.morphisms[from.identity(x)] != to.identity(self.objects[x]) {
                return Err(format!("identity of {} not preserved", from.object_name(x)));
            }
        }
        for f in 0..from.num_morphisms() {
            for g in 0..from.num_morphisms() {
                if let Some(h) = from.then(f, g) {
                    if to.then(self.morphisms[f], self.morphisms[g]) != Some(self.morphisms[h]) {
                        return Err(format!(
                            "composite of {} and {} not preserved",
                            from.morphism_name(f),
                            from.morphism_name(g)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphisms[f]).collect(),
        }
    }
}

/// A truncated simplicial object in finite categories.
///
/// `face[n][i]` is `d_i: C_n -> C_{n-1}` for `n >= 1` and `degen[n][i]` is
/// `s_i: C_n -> C_{n+1}` for `n < trunc`.
#[derive(Clone, Debug)]
pub struct SFinCat {
    pub levels: Vec<FinCat>,
    pub face: Vec<Vec<Functor>>,
    pub degen: Vec<Vec<Functor>>,
}

impl SFinCat {
    pub fn constant(c: &FinCat, trunc: usize) -> SFinCat {
        let id = Functor::identity(c);
        SFinCat {
            levels: vec![c.clone(); trunc + 1],
            face: (0..=trunc).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degen: (0..trunc).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    /// Structure maps are functors and satisfy the simplicial identities.
    pub fn validate(&self) -> Result<()> {
        let t = self.trunc();
        for n in 1..=t {
            for (i, f) in self.face[n].iter().enumerate() {
                f.check(&self.levels[n], &self.levels[n - 1]).map_err(|e| invalid(format!("d{i} at level {n}: {e}")))?;
            }
        }
        for n in 0..t {
            for (i, s) in self.degen[n].iter().enumerate() {
                s.check(&self.levels[n], &self.levels[n + 1]).map_err(|e| invalid(format!("s{i} at level {n}: {e}")))?;
            }
        }
        for n in 2..=t {
            for j in 1..=n {
                for i in 0..j {
                    if self.face[n][j].then(&self.face[n - 1][i]) != self.face[n][i].then(&self.face[n - 1][j - 1]) {
                        return Err(invalid(format!("d{i}d{j} identity fails at level {n}")));
                    }
                }
            }
        }
        for n in 0..t {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.degen[n][j].then(&self.face[n + 1][i]);
                    let expected = if i == j || i == j + 1 {
                        Functor::identity(&self.levels[n])
                    } else if n == 0 {
                        continue;
                    } else if i < j {
                        self.face[n][i].then(&self.degen[n - 1][j - 1])
                    } else {
                        self.face[n][i - 1].then(&self.degen[n - 1][j])
                    };
                    if lhs != expected {
                        return Err(invalid(format!("d{i}s{j} identity fails at level {n}")));
                    }
                }
                if n + 1 < t {
                    for i in 0..=j {
                        let a = self.degen[n][j].then(&self.degen[n + 1][i]);
                        let b = self.degen[n][i].then(&self.degen[n + 1][j + 1]);
                        if a != b {
                            return Err(invalid(format!("s{i}s{j} identity fails at level {n}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Levelwise nerve: entry `[p][q]` holds the `p`-chains of the level-`q`
/// category (objects for `p = 0`). The horizontal direction is the nerve
/// direction; the vertical operators apply the structure functors.
pub fn nerve_scat(c: &SFinCat, d: usize) -> BisimplicialFT {
    nerve_scat_with_chains(c, d).0
}

/// Chain lists indexed `[q][p]`; a `0`-chain is the one-element list `[x]`.
pub type ChainGrid = Vec<Vec<Vec<Vec<usize>>>>;

/// [`nerve_scat`] together with the chain behind every entry.
pub fn nerve_scat_with_chains(c: &SFinCat, d: usize) -> (BisimplicialFT, ChainGrid) {
    let t = d.min(c.trunc());
    // all[q][p]: p-chains at level q, with index
    let all: Vec<Vec<Vec<Vec<usize>>>> = (0..=t)
        .map(|q| {
            let cat = &c.levels[q];
            (0..=t)
                .map(|p| if p == 0 { (0..cat.num_objects()).map(|x| vec![x]).collect() } else { chains(cat, p, false) })
                .collect()
        })
        .collect();
    let index: Vec<Vec<HashMap<&[usize], u32>>> = all
        .iter()
        .map(|lq| lq.iter().map(|l| l.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i as u32)).collect()).collect())
        .collect();
    let sizes: Vec<Vec<usize>> = (0..=t).map(|p| (0..=t).map(|q| all[q][p].len()).collect()).collect();
    let mut hface = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut vface = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut hdegen = vec![vec![Vec::new(); t + 1]; t + 1];
    let mut vdegen = vec![vec![Vec::new(); t + 1]; t + 1];
    for q in 0..=t {
        let cat = &c.levels[q];
        for p in 0..=t {
            let here = &all[q][p];
            if p >= 1 {
                hface[p][q] = (0..=p)
                    .map(|i| {
                        here.iter()
                            .map(|ch| {
                                if p == 1 {
                                    index[q][0][[chain_vertex(cat, ch, 1 - i)].as_slice()]
                                } else {
                                    index[q][p - 1][chain_face(cat, ch, i).as_slice()]
                                }
                            })
                            .collect()
                    })
                    .collect();
            }
            if p < t {
                hdegen[p][q] = (0..=p)
                    .map(|i| {
                        here.iter()
                            .map(|ch| {
                                if p == 0 {
                                    return index[q][1][[cat.identity(ch[0])].as_slice()];
                                }
                                let mut v = ch.clone();
                                v.insert(i, cat.identity(chain_vertex(cat, ch, i)));
                                index[q][p + 1][v.as_slice()]
                            })
                            .collect()
                    })
                    .collect();
            }
            let apply = |f: &Functor, target: usize| -> Vec<u32> {
                here.iter()
                    .map(|ch| {
                        let v: Vec<usize> =
                            if p == 0 { vec![f.objects[ch[0]]] } else { ch.iter().map(|&m| f.morphisms[m]).collect() };
                        index[target][p][v.as_slice()]
                    })
                    .collect()
            };
            if q >= 1 {
                vface[p][q] = c.face[q].iter().map(|f| apply(f, q - 1)).collect();
            }
            if q < t {
                vdegen[p][q] = c.degen[q].iter().map(|f| apply(f, q + 1)).collect();
            }
        }
    }
    let basepoint = c.levels[0].basepoint().map(|b| b as u32);
    (BisimplicialFT { trunc: t, sizes, hface, vface, hdegen, vdegen, basepoint }, all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::FinMonoid;
    use crate::simplicial::{find_isomorphism, standard_simplex};

    #[test]
    fn nerve_of_discrete_is_discrete() {
        let n = nerve(&FinCat::discrete(3), 3);
        assert_eq!(n.nondeg_counts(), &[3, 0, 0, 0]);
    }

    #[test]
    fn nerve_of_interval_is_simplex() {
        let n = nerve(&FinCat::poset(1), 3);
        assert!(find_isomorphism(&n, &standard_simplex(1, 3), true).is_some());
        let n2 = nerve(&FinCat::poset(2), 3);
        assert!(find_isomorphism(&n2, &standard_simplex(2, 3), true).is_some());
    }

    #[test]
    fn nerve_of_z2_counts() {
        let n = nerve(&FinCat::from_monoid(&FinMonoid::cyclic(2)), 3);
        assert_eq!(n.nondeg_counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn constant_scat_is_vertically_constant() {
        let c = FinCat::from_monoid(&FinMonoid::cyclic(2));
        let s = SFinCat::constant(&c, 3);
        s.validate().unwrap();
        let b = nerve_scat(&s, 3);
        b.validate().unwrap();
        let d = b.diagonal().unwrap();
        assert!(find_isomorphism(&d.sset, &nerve(&c, 3), true).is_some());
    }
}
