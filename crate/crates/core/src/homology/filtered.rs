use std::collections::HashMap;

use super::{homology_groups, HomologyGroup};
use crate::actions::FilteredMonoidFamily;
use crate::error::{invalid, Error, Result};
use crate::int::Int;
use crate::presentations::Letter;
use crate::simplicial::{ChainComplex, SparseMatrix};

/// Simplex budget used when none is given.
pub const DEFAULT_BUDGET: usize = 4_000_000;

/// Chains of `diag N(G)` for a presented simplicial monoid `G`, restricted to
/// tuples of total normal-form length at most `length_cutoff`, in degrees up
/// to `degree_cutoff + 1`.
#[derive(Clone, Debug)]
pub struct FilteredNerveJob {
    pub family: FilteredMonoidFamily,
    pub length_cutoff: usize,
    pub degree_cutoff: usize,
    /// Largest number of candidate tuples enumerated across all degrees.
    pub budget: usize,
}

impl FilteredNerveJob {
    pub fn new(family: FilteredMonoidFamily, length_cutoff: usize, degree_cutoff: usize) -> FilteredNerveJob {
        FilteredNerveJob { family, length_cutoff, degree_cutoff, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: usize) -> FilteredNerveJob {
        self.budget = budget;
        self
    }
}

type Tuple = Vec<Vec<Letter>>;

fn length(t: &[Vec<Letter>]) -> usize {
    t.iter().map(Vec::len).sum()
}

/// `d_i` of a `p`-tuple at level `p`: letterwise `d_i`, then drop the first
/// entry (`i = 0`), drop the last (`i = p`), or multiply entries `i - 1, i`.
fn face(f: &FilteredMonoidFamily, p: usize, i: usize, t: &[Vec<Letter>]) -> Tuple {
    let mapped: Tuple = t.iter().map(|w| f.face_word(p, i, w)).collect();
    if i == 0 {
        return mapped[1..].to_vec();
    }
    if i == p {
        return mapped[..p - 1].to_vec();
    }
    let mut out = Vec::with_capacity(p - 1);
    out.extend_from_slice(&mapped[..i - 1]);
    let mut prod = mapped[i - 1].clone();
    f.levels[p - 1].reduce_append(&mut prod, &mapped[i]);
    out.push(prod);
    out.extend_from_slice(&mapped[i + 1..]);
    out
}

/// `s_j` of a `(p - 1)`-tuple: letterwise `s_j`, then an identity at position `j`.
fn degeneracy(f: &FilteredMonoidFamily, p: usize, j: usize, t: &[Vec<Letter>]) -> Tuple {
    let mut out: Tuple = t.iter().map(|w| f.degen_word(p - 1, j, w)).collect();
    out.insert(j, Vec::new());
    out
}

/// `t = s_j d_j t` for some `j`; only positions holding `ε` can qualify.
fn is_degenerate(f: &FilteredMonoidFamily, p: usize, t: &[Vec<Letter>]) -> bool {
    (0..p).any(|j| t[j].is_empty() && degeneracy(f, p, j, &face(f, p, j, t)) == t)
}

/// Number of `p`-tuples of total length at most `k`, given the number of
/// normal forms of each length.
fn count_tuples(layer: &[usize], p: usize, k: usize) -> usize {
    // ways[r]: tuples so far with total length r
    let mut ways = vec![0usize; k + 1];
    ways[0] = 1;
    for _ in 0..p {
        let mut next = vec![0usize; k + 1];
        for (r, &w) in ways.iter().enumerate() {
            for (l, &c) in layer.iter().enumerate().take(k + 1 - r) {
                next[r + l] = next[r + l].saturating_add(w.saturating_mul(c));
            }
        }
        ways = next;
    }
    ways.iter().fold(0usize, |a, &b| a.saturating_add(b))
}

fn extend(layers: &[Vec<Vec<Letter>>], prefix: &mut Tuple, left: usize, slots: usize, out: &mut Vec<Tuple>) {
    if slots == 0 {
        out.push(prefix.clone());
        return;
    }
    for (l, words) in layers.iter().enumerate().take(left + 1) {
        for w in words {
            prefix.push(w.clone());
            extend(layers, prefix, left - l, slots - 1, out);
            prefix.pop();
        }
    }
}

/// Nondegenerate `p`-simplices of the filtered diagonal.
fn simplices(f: &FilteredMonoidFamily, p: usize, k: usize) -> Result<Vec<Tuple>> {
    if p == 0 {
        return Ok(vec![Vec::new()]);
    }
    let layers: Vec<Vec<Vec<Letter>>> =
        f.levels[p].ball_by_length(k)?.into_iter().map(|l| l.into_iter().map(|w| w.0).collect()).collect();
    let firsts: Vec<(usize, &Vec<Letter>)> =
        layers.iter().enumerate().flat_map(|(l, ws)| ws.iter().map(move |w| (l, w))).collect();
    let chunks = crate::par::map(&firsts, |&(l, w)| {
        let mut out = Vec::new();
        let mut prefix = vec![w.clone()];
        extend(&layers, &mut prefix, k - l, p - 1, &mut out);
        out.retain(|t| !is_degenerate(f, p, t));
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Normalized chains of the length-`k` filtration of `diag N(G)`.
///
/// Fails with [`Error::CutoffOverflow`] when the candidate tuples exceed the
/// budget, and reports an error if some face is longer than its simplex,
/// which would mean the filtration is not a subcomplex.
pub fn filtered_bm_chains(job: &FilteredNerveJob) -> Result<ChainComplex> {
    let (f, k, top) = (&job.family, job.length_cutoff, job.degree_cutoff + 1);
    if top > f.trunc() {
        return Err(Error::TruncationTooLow { trunc: f.trunc(), needed: top });
    }
    if k == 0 {
        return Err(invalid("length cutoff must be positive"));
    }
    let mut needed = 0usize;
    for p in 1..=top {
        let layer: Vec<usize> = f.levels[p].ball_by_length(k)?.iter().map(Vec::len).collect();
        needed = needed.saturating_add(count_tuples(&layer, p, k));
    }
    if needed > job.budget {
        return Err(Error::CutoffOverflow { budget: job.budget, needed });
    }
    let levels: Vec<Vec<Tuple>> = (0..=top).map(|p| simplices(f, p, k)).collect::<Result<_>>()?;
    let index: Vec<HashMap<&Tuple, u32>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, t)| (t, i as u32)).collect()).collect();
    let boundaries = crate::par::map_range(top, |q| -> Result<SparseMatrix> {
        let p = q + 1;
        let cols = levels[p]
            .iter()
            .map(|t| {
                let mut col = Vec::with_capacity(p + 1);
                for i in 0..=p {
                    let y = face(f, p, i, t);
                    if length(&y) > length(t) {
                        return Err(invalid(format!("face d{i} lengthens a {p}-simplex")));
                    }
                    if let Some(&r) = index[p - 1].get(&y) {
                        col.push((r, if i % 2 == 0 { Int::ONE } else { -Int::ONE }));
                    }
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        Ok(SparseMatrix::from_columns(levels[p - 1].len(), cols))
    });
    let boundaries = boundaries.into_iter().collect::<Result<_>>()?;
    ChainComplex::new(levels.iter().map(Vec::len).collect(), boundaries)
}

/// Homology of the filtration that stopped changing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized {
    /// `H_0, …, H_d`, unreduced.
    pub groups: Vec<HomologyGroup>,
    /// The first of the two consecutive cutoffs that agreed.
    pub cutoff: usize,
    /// Groups at every cutoff tried, starting at `k0`.
    pub history: Vec<(usize, Vec<HomologyGroup>)>,
}

/// Raises the cutoff from `k0` until two consecutive cutoffs give the same
/// groups in degrees `<= d`. The result is empirical: agreement at two
/// cutoffs does not prove agreement at all larger ones.
pub fn stabilize(family: &FilteredMonoidFamily, d: usize, k0: usize, budget: usize) -> Result<Stabilized> {
    let mut history: Vec<(usize, Vec<HomologyGroup>)> = Vec::new();
    let mut k = k0.max(1);
    loop {
        let job = FilteredNerveJob { family: family.clone(), length_cutoff: k, degree_cutoff: d, budget };
        let groups = homology_groups(&filtered_bm_chains(&job)?);
        if let Some((_, prev)) = history.last() {
            if *prev == groups {
                history.push((k, groups.clone()));
                return Ok(Stabilized { groups, cutoff: k - 1, history });
            }
        }
        history.push((k, groups));
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::MonoidKind;
    use crate::presentations::{FinMonoid, Presentation};

    #[test]
    fn trivial_family_is_a_point() {
        let f = FilteredMonoidFamily::constant(&Presentation::free(Vec::new()), 3).unwrap();
        let c = filtered_bm_chains(&FilteredNerveJob::new(f.clone(), 1, 2)).unwrap();
        assert_eq!(c.ranks(), &[1, 0, 0, 0]);
        let s = stabilize(&f, 2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.cutoff, 1);
        assert_eq!(s.groups, vec![HomologyGroup::free(1), HomologyGroup::default(), HomologyGroup::default()]);
    }

    #[test]
    fn constant_z2_gives_bz2() {
        let (p, _) = FinMonoid::cyclic(2).presentation();
        let f = FilteredMonoidFamily::constant(&p, 4).unwrap();
        let c = filtered_bm_chains(&FilteredNerveJob::new(f, 4, 3)).unwrap();
        c.check_dd_zero().unwrap();
        let h = homology_groups(&c);
        assert_eq!(h[1], HomologyGroup::cyclic(2));
        assert_eq!(h[2], HomologyGroup::default());
        assert_eq!(h[3], HomologyGroup::cyclic(2));
    }

    #[test]
    fn free_monoid_on_one_generator() {
        let f = FilteredMonoidFamily::constant(&MonoidKind::N.presentation(), 3).unwrap();
        let c = filtered_bm_chains(&FilteredNerveJob::new(f, 3, 2)).unwrap();
        let h = homology_groups(&c);
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::default()]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = FilteredMonoidFamily::constant(&MonoidKind::N.presentation(), 3).unwrap();
        let job = FilteredNerveJob::new(f, 3, 2).with_budget(5);
        assert!(matches!(filtered_bm_chains(&job), Err(Error::CutoffOverflow { budget: 5, .. })));
    }
}
