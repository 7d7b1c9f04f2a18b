//! Integer homology of chain complexes and word-length-filtered nerves of
//! presented simplicial monoids.

mod filtered;
mod snf;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::simplicial::ChainComplex;

pub use filtered::{filtered_bm_chains, stabilize, FilteredNerveJob, Stabilized, DEFAULT_BUDGET};
pub use snf::{smith_normal_form, sparse_invariant_factors};

/// `Z^betti ⊕ Z/t_1 ⊕ … ⊕ Z/t_r` with `t_1 | … | t_r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<Int>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> HomologyGroup {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn cyclic(n: i64) -> HomologyGroup {
        HomologyGroup { betti: 0, torsion: vec![Int::from(n)] }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Removes one free summand, as when passing to reduced homology in
    /// degree zero.
    pub fn drop_free(&self) -> HomologyGroup {
        HomologyGroup { betti: self.betti.saturating_sub(1), torsion: self.torsion.clone() }
    }

    /// Parses the [`Display`](fmt::Display) form, e.g. `Z^2 + Z/2 + Z/4` or `0`.
    pub fn parse(s: &str) -> Option<HomologyGroup> {
        let mut g = HomologyGroup::default();
        if s.trim() == "0" {
            return Some(g);
        }
        for part in s.split('+').map(str::trim) {
            if let Some(n) = part.strip_prefix("Z/") {
                g.torsion.push(n.parse().ok()?);
            } else if part == "Z" {
                g.betti += 1;
            } else {
                g.betti += part.strip_prefix("Z^")?.parse::<usize>().ok()?;
            }
        }
        g.torsion.sort();
        Some(g)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn factors(c: &ChainComplex, n: usize) -> Vec<Int> {
    match c.boundary_ref(n) {
        Some(b) if n > 0 && !b.is_zero() => sparse_invariant_factors(b),
        _ => Vec::new(),
    }
}

fn group(rank: usize, outgoing: &[Int], incoming: &[Int]) -> HomologyGroup {
    HomologyGroup {
        betti: rank - outgoing.len() - incoming.len(),
        torsion: incoming.iter().filter(|t| !t.is_unit()).cloned().collect(),
    }
}

/// `H_n = ker ∂_n / im ∂_{n+1}`; needs `n + 1 <= top_degree`.
pub fn homology(c: &ChainComplex, n: usize) -> Result<HomologyGroup> {
    if n + 1 > c.top_degree() {
        return Err(Error::DegreeOutOfRange { degree: n, top: c.top_degree() });
    }
    let (out, inc) = crate::par::join(|| factors(c, n), || factors(c, n + 1));
    Ok(group(c.rank(n), &out, &inc))
}

/// `H_0, …, H_{top - 1}`.
pub fn homology_groups(c: &ChainComplex) -> Vec<HomologyGroup> {
    let f = crate::par::map_range(c.top_degree() + 1, |n| factors(c, n));
    (0..c.top_degree()).map(|n| group(c.rank(n), &f[n], &f[n + 1])).collect()
}

/// Reduced homology from the homology of a connected or nonempty complex.
pub fn reduce(groups: &[HomologyGroup]) -> Vec<HomologyGroup> {
    groups.iter().enumerate().map(|(n, g)| if n == 0 { g.drop_free() } else { g.clone() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{nerve, FinCat};
    use crate::presentations::FinMonoid;
    use crate::simplicial::{normalized_chains, simplicial_sphere, standard_simplex};

    #[test]
    fn spheres_and_simplices() {
        let s2 = normalized_chains(&simplicial_sphere(2, 3).unwrap(), 2).unwrap();
        assert_eq!(homology(&s2, 2).unwrap(), HomologyGroup::free(1));
        let d2 = normalized_chains(&standard_simplex(2, 3), 2).unwrap();
        assert_eq!(homology(&d2, 1).unwrap(), HomologyGroup::default());
        assert!(matches!(homology(&d2, 3), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn classifying_space_of_z2() {
        let bz2 = nerve(&FinCat::from_monoid(&FinMonoid::cyclic(2)), 4);
        let c = normalized_chains(&bz2, 3).unwrap();
        let h = homology_groups(&c);
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup::cyclic(2));
        assert_eq!(h[2], HomologyGroup::default());
        assert_eq!(h[3], HomologyGroup::cyclic(2));
        assert_eq!(homology(&c, 1).unwrap(), h[1]);
    }

    #[test]
    fn display_roundtrip() {
        let g = HomologyGroup { betti: 2, torsion: vec![Int::from(2), Int::from(4)] };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(HomologyGroup::parse(&g.to_string()), Some(g));
        assert_eq!(HomologyGroup::parse("0"), Some(HomologyGroup::default()));
        assert_eq!(HomologyGroup::parse("Z"), Some(HomologyGroup::free(1)));
    }
}
