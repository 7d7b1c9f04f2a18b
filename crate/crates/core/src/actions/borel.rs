use super::SMAction;
use crate::categories::{nerve_scat_with_chains, FinCat, Functor, SFinCat};
use crate::error::{Error, Result};
use crate::simplicial::{relative_chains, BisimplicialFT, ChainComplex, Encoded, SubComplex};

/// `N(X//M)` levelwise, with its diagonal and the subobjects `X` (chains of
/// identities) and `N(pt//M)` (chains at the basepoint).
#[derive(Clone, Debug)]
pub struct BorelModel {
    pub grid: BisimplicialFT,
    pub diagonal: Encoded,
    pub x_sub: SubComplex,
    pub pt_sub: SubComplex,
    pub union_sub: SubComplex,
}

impl BorelModel {
    /// Chains of `diag N(X//M) / (X ∪ N(pt//M))` through degree `d + 1`.
    pub fn cofiber_chains(&self, d: usize) -> Result<ChainComplex> {
        relative_chains(&self.diagonal.sset, &self.union_sub, d)
    }
}

fn structure_functor(
    a: &SMAction,
    n: usize,
    target: usize,
    objects: &[u32],
    elem: impl Fn(usize) -> usize,
) -> Functor {
    let (k, kt) = (a.monoid(n).size(), a.monoid(target).size());
    Functor {
        objects: objects.iter().map(|&x| x as usize).collect(),
        morphisms: (0..objects.len() * k).map(|f| objects[f / k] as usize * kt + elem(f % k)).collect(),
    }
}

/// The Borel model of `a` through simplicial degree `top`.
pub fn borel_model(a: &SMAction, top: usize) -> Result<BorelModel> {
    if top > a.top() {
        return Err(Error::TruncationTooLow { trunc: a.top(), needed: top });
    }
    let levels: Vec<FinCat> = crate::par::map_range(top + 1, |n| a.level(n).action_category());
    let tables = a.tables();
    let face = (0..=top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| structure_functor(a, n, n - 1, &tables.face[n][i], |e| a.monoid_face(n, i, e)))
                .collect()
        })
        .collect();
    let degen = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| structure_functor(a, n, n + 1, &tables.degen[n][i], |e| a.monoid_degen(n, i, e)))
                .collect()
        })
        .collect();
    let scat = SFinCat { levels, face, degen };
    scat.validate()?;
    let (grid, chains) = nerve_scat_with_chains(&scat, top);
    let diagonal = grid.diagonal()?;
    let x = &diagonal.sset;
    let mut in_x: Vec<Vec<bool>> = x.nondeg_counts().iter().map(|&c| vec![false; c]).collect();
    let mut in_pt = in_x.clone();
    for n in 0..=top {
        let cat = &scat.levels[n];
        for (s, nf) in diagonal.normal_form[n].iter().enumerate() {
            if nf.is_degenerate() {
                continue;
            }
            let ch = &chains[n][n][s];
            let (identities, at_pt) = if n == 0 {
                (true, ch[0] == a.basepoint(0))
            } else {
                (ch.iter().all(|&f| cat.is_identity(f)), cat.src(ch[0]) == a.basepoint(n))
            };
            in_x[n][nf.base] = identities;
            in_pt[n][nf.base] = at_pt;
        }
    }
    let union: Vec<Vec<bool>> =
        in_x.iter().zip(&in_pt).map(|(a, b)| a.iter().zip(b).map(|(&p, &q)| p || q).collect()).collect();
    Ok(BorelModel {
        x_sub: SubComplex::new(x, in_x)?,
        pt_sub: SubComplex::new(x, in_pt)?,
        union_sub: SubComplex::new(x, union)?,
        grid,
        diagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::MAction;
    use crate::presentations::FinMonoid;
    use crate::simplicial::simplicial_circle;

    #[test]
    fn trivial_monoid_gives_x() {
        let s1 = simplicial_circle(3).unwrap();
        let a = SMAction::trivial(&s1, &FinMonoid::trivial()).unwrap();
        let b = borel_model(&a, 3).unwrap();
        assert_eq!(b.diagonal.sset.nondeg_counts(), s1.nondeg_counts());
        assert!(b.x_sub.contains_nondeg(1, 0));
    }

    #[test]
    fn point_gives_bm() {
        let a = SMAction::from_discrete(&MAction::trivial(FinMonoid::cyclic(2), 1), 3).unwrap();
        let b = borel_model(&a, 3).unwrap();
        // nondegenerate chains of BZ/2: (t, …, t)
        assert_eq!(b.diagonal.sset.nondeg_counts(), &[1, 1, 1, 1]);
        assert!(b.pt_sub.contains_nondeg(3, 0));
        assert!(!b.x_sub.contains_nondeg(1, 0));
    }

    #[test]
    fn truncation_is_checked() {
        let a = SMAction::from_discrete(&MAction::bad_idempotent(), 2).unwrap();
        assert!(matches!(borel_model(&a, 3), Err(Error::TruncationTooLow { .. })));
        assert!(borel_model(&a, 2).is_ok());
    }
}
