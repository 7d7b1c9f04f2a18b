//! Finite categories, their nerves, and universal monoids.
//!
//! Composition is stored in diagrammatic order: `then(f, g)` is `g ∘ f`,
//! defined when `tgt(f) = src(g)`.

mod nerve;
mod universal;
mod wedge;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::presentations::FinMonoid;
use crate::simplicial::UnionFind;

pub use nerve::{chains, nerve, nerve_scat, nerve_scat_with_chains, ChainGrid, Functor, SFinCat};
pub use universal::{
    reduced_u_coproduct_decomposition, reduced_universal_monoid, universal_monoid, verify_universal_property,
    UniversalMonoid,
};
pub use wedge::{choose_isos, wedge_decompose, WedgeCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
    basepoint: Option<usize>,
}

/// A morphism `name: src -> tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

impl FinCat {
    /// `then(f, g)` must return `g ∘ f`; it is only called on composable pairs.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        identity: Vec<usize>,
        then: impl Fn(usize, usize) -> usize,
        basepoint: Option<usize>,
    ) -> Result<FinCat> {
        let n = morphisms.len();
        if morphisms.iter().any(|m| m.src >= objects.len() || m.tgt >= objects.len()) {
            return Err(invalid("morphism endpoint is not an object"));
        }
        let src: Vec<usize> = morphisms.iter().map(|m| m.src).collect();
        let tgt: Vec<usize> = morphisms.iter().map(|m| m.tgt).collect();
        let compose = (0..n)
            .map(|f| (0..n).map(|g| (tgt[f] == src[g]).then(|| then(f, g))).collect())
            .collect();
        FinCat::from_table(objects, morphisms, identity, compose, basepoint)
    }

    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        identity: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
        basepoint: Option<usize>,
    ) -> Result<FinCat> {
        let c = FinCat {
            src: morphisms.iter().map(|m| m.src).collect(),
            tgt: morphisms.iter().map(|m| m.tgt).collect(),
            morphisms: morphisms.into_iter().map(|m| m.name).collect(),
            objects,
            identity,
            compose,
            basepoint,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        if self.identity.len() != no || self.compose.len() != nm || self.compose.iter().any(|r| r.len() != nm) {
            return Err(invalid("identity or composition table has the wrong shape"));
        }
        if self.basepoint.is_some_and(|b| b >= no) {
            return Err(invalid("basepoint is not an object"));
        }
        if self.src.iter().chain(&self.tgt).any(|&x| x >= no) {
            return Err(invalid("morphism endpoint is not an object"));
        }
        for (x, &i) in self.identity.iter().enumerate() {
            if i >= nm || self.src[i] != x || self.tgt[i] != x {
                return Err(invalid(format!("identity of object {x} is not an endomorphism of it")));
            }
        }
        for f in 0..nm {
            for g in 0..nm {
                let composable = self.tgt[f] == self.src[g];
                match self.compose[f][g] {
                    None if composable => return Err(invalid(format!("composite of {f} and {g} missing"))),
                    Some(_) if !composable => return Err(invalid(format!("{f} and {g} are not composable"))),
                    Some(h) if h >= nm || self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] => {
                        return Err(invalid(format!("composite of {f} and {g} has wrong endpoints")));
                    }
                    _ => {}
                }
            }
            if self.compose[self.identity[self.src[f]]][f] != Some(f) || self.compose[f][self.identity[self.tgt[f]]] != Some(f)
            {
                return Err(invalid(format!("identity law fails at morphism {f}")));
            }
        }
        for f in 0..nm {
            for g in 0..nm {
                let Some(fg) = self.compose[f][g] else { continue };
                for h in 0..nm {
                    let Some(gh) = self.compose[g][h] else { continue };
                    if self.compose[fg][h] != self.compose[f][gh] {
                        return Err(invalid(format!("associativity fails at ({f},{g},{h})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// One-object category of a monoid; morphism `i` is element `i` and
    /// `then(a, b) = a·b`.
    pub fn from_monoid(m: &FinMonoid) -> FinCat {
        let morphisms = (0..m.size()).map(|i| MorphismSpec { name: format!("m{i}"), src: 0, tgt: 0 }).collect();
        FinCat::new(vec!["*".into()], morphisms, vec![m.identity()], |a, b| m.mul(a, b), Some(0))
            .expect("monoid tables give categories")
    }

    /// Discrete category on `n` objects, pointed at object 0 when `n > 0`.
    pub fn discrete(n: usize) -> FinCat {
        let morphisms = (0..n).map(|x| MorphismSpec { name: format!("1_{x}"), src: x, tgt: x }).collect();
        FinCat::new((0..n).map(|x| x.to_string()).collect(), morphisms, (0..n).collect(), |f, _| f, (n > 0).then_some(0))
            .expect("discrete category is valid")
    }

    /// The poset `[n] = {0 < 1 < … < n}`.
    pub fn poset(n: usize) -> FinCat {
        let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let morphisms = pairs.iter().map(|&(i, j)| MorphismSpec { name: format!("{i}<={j}"), src: i, tgt: j }).collect();
        FinCat::new(
            (0..=n).map(|x| x.to_string()).collect(),
            morphisms,
            (0..=n).map(|x| index[&(x, x)]).collect(),
            |f, g| index[&(pairs[f].0, pairs[g].1)],
            Some(0),
        )
        .expect("posets are categories")
    }

    /// Two objects `x, y` and mutually inverse `c: x -> y`, `c⁻¹: y -> x`,
    /// pointed at `x`.
    pub fn iso_pair() -> FinCat {
        // 0 = 1_x, 1 = 1_y, 2 = c, 3 = c⁻¹
        let ends = [(0, 0), (1, 1), (0, 1), (1, 0)];
        let names = ["1_x", "1_y", "c", "c^-1"];
        let morphisms = ends
            .iter()
            .zip(names)
            .map(|(&(s, t), n)| MorphismSpec { name: n.into(), src: s, tgt: t })
            .collect();
        let by_ends = |s: usize, t: usize| ends.iter().position(|&e| e == (s, t)).expect("hom sets are singletons");
        FinCat::new(vec!["x".into(), "y".into()], morphisms, vec![0, 1], |f, g| by_ends(ends[f].0, ends[g].1), Some(0))
            .expect("iso pair is a groupoid")
    }

    /// Disjoint union, pointed at the first part's basepoint.
    pub fn coproduct(parts: &[FinCat]) -> FinCat {
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut identity = Vec::new();
        let mut offsets = Vec::new();
        for (k, c) in parts.iter().enumerate() {
            let (oo, om) = (objects.len(), morphisms.len());
            offsets.push(om);
            objects.extend(c.objects.iter().map(|o| format!("{o}.{k}")));
            identity.extend(c.identity.iter().map(|&i| i + om));
            morphisms.extend((0..c.num_morphisms()).map(|f| MorphismSpec {
                name: format!("{}.{k}", c.morphisms[f]),
                src: c.src[f] + oo,
                tgt: c.tgt[f] + oo,
            }));
        }
        let n = morphisms.len();
        let mut compose = vec![vec![None; n]; n];
        for (k, c) in parts.iter().enumerate() {
            let om = offsets[k];
            for f in 0..c.num_morphisms() {
                for g in 0..c.num_morphisms() {
                    compose[f + om][g + om] = c.compose[f][g].map(|h| h + om);
                }
            }
        }
        let basepoint = parts.first().and_then(|c| c.basepoint);
        FinCat::from_table(objects, morphisms, identity, compose, basepoint).expect("coproduct of categories")
    }

    /// Full subcategory on `objs` (in the given order), with the original
    /// index of each of its morphisms. The basepoint is kept if included.
    pub fn full_subcategory(&self, objs: &[usize]) -> (FinCat, Vec<usize>) {
        let mut obj_index = vec![None; self.num_objects()];
        for (i, &o) in objs.iter().enumerate() {
            obj_index[o] = Some(i);
        }
        let kept: Vec<usize> = (0..self.num_morphisms())
            .filter(|&f| obj_index[self.src[f]].is_some() && obj_index[self.tgt[f]].is_some())
            .collect();
        let mut mor_index = vec![usize::MAX; self.num_morphisms()];
        for (i, &f) in kept.iter().enumerate() {
            mor_index[f] = i;
        }
        let morphisms = kept
            .iter()
            .map(|&f| MorphismSpec {
                name: self.morphisms[f].clone(),
                src: obj_index[self.src[f]].unwrap(),
                tgt: obj_index[self.tgt[f]].unwrap(),
            })
            .collect();
        let sub = FinCat::new(
            objs.iter().map(|&o| self.objects[o].clone()).collect(),
            morphisms,
            objs.iter().map(|&o| mor_index[self.identity[o]]).collect(),
            |f, g| mor_index[self.compose[kept[f]][kept[g]].expect("composable")],
            self.basepoint.and_then(|b| obj_index[b]),
        )
        .expect("full subcategories are categories");
        (sub, kept)
    }

    pub fn with_basepoint(mut self, basepoint: Option<usize>) -> Result<FinCat> {
        self.basepoint = basepoint;
        self.validate()?;
        Ok(self)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g ∘ f`, if composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f][g]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn require_basepoint(&self) -> Result<usize> {
        self.basepoint.ok_or(Error::NoBasepoint)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.num_morphisms()).filter(|&f| self.src[f] == x && self.tgt[f] == y).collect()
    }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// smallest object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.num_objects());
        for f in 0..self.num_morphisms() {
            uf.union(self.src[f], self.tgt[f]);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.num_objects() {
            groups.entry(uf.find(x)).or_default().push(x);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// `End(x)` as a monoid, with the morphism behind each element.
    pub fn end_monoid(&self, x: usize) -> (FinMonoid, Vec<usize>) {
        let elems = self.hom(x, x);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mult = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.compose[a][b].expect("endomorphisms compose")]).collect())
            .collect();
        let m = FinMonoid::new(elems.len(), pos[&self.identity[x]], mult).expect("End(x) is a monoid");
        (m, elems)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (s, t) = (self.src[f], self.tgt[f]);
        self.hom(t, s)
            .into_iter()
            .find(|&g| self.compose[f][g] == Some(self.identity[s]) && self.compose[g][f] == Some(self.identity[t]))
    }

    pub fn is_isomorphism(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// Some isomorphism `x -> y`, if one exists.
    pub fn find_iso(&self, x: usize, y: usize) -> Option<usize> {
        self.hom(x, y).into_iter().find(|&f| self.is_isomorphism(f))
    }

    /// Whether every two objects in a common component are isomorphic.
    pub fn equivalent_to_totally_disconnected(&self) -> bool {
        let comps = self.components();
        let pairs: Vec<(usize, usize)> = comps
            .iter()
            .flat_map(|c| c.iter().skip(1).map(move |&y| (c[0], y)))
            .collect();
        crate::par::map(&pairs, |&(x, y)| self.find_iso(x, y).is_some()).into_iter().all(|b| b)
    }

    pub fn to_json(&self) -> FinCatJson {
        let morphisms = (0..self.num_morphisms())
            .map(|f| MorphismJson {
                id: self.morphisms[f].clone(),
                src: self.objects[self.src[f]].clone(),
                tgt: self.objects[self.tgt[f]].clone(),
            })
            .collect();
        let identities =
            (0..self.num_objects()).map(|x| (self.objects[x].clone(), self.morphisms[self.identity[x]].clone())).collect();
        let mut compose = Vec::new();
        for f in 0..self.num_morphisms() {
            for g in 0..self.num_morphisms() {
                if let Some(h) = self.compose[f][g] {
                    compose.push([self.morphisms[f].clone(), self.morphisms[g].clone(), self.morphisms[h].clone()]);
                }
            }
        }
        FinCatJson {
            objects: self.objects.clone(),
            morphisms,
            identities,
            compose,
            basepoint: self.basepoint.map(|b| self.objects[b].clone()),
        }
    }

    pub fn from_json(j: &FinCatJson) -> Result<FinCat> {
        let obj: HashMap<&str, usize> = j.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mor: HashMap<&str, usize> = j.morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        if obj.len() != j.objects.len() || mor.len() != j.morphisms.len() {
            return Err(invalid("duplicate object or morphism id"));
        }
        let lookup = |map: &HashMap<&str, usize>, k: &str, what: &str| {
            map.get(k).copied().ok_or_else(|| invalid(format!("unknown {what} {k:?}")))
        };
        let mut morphisms = Vec::new();
        for m in &j.morphisms {
            morphisms.push(MorphismSpec {
                name: m.id.clone(),
                src: lookup(&obj, &m.src, "object")?,
                tgt: lookup(&obj, &m.tgt, "object")?,
            });
        }
        let mut identity = vec![usize::MAX; j.objects.len()];
        for (o, m) in &j.identities {
            identity[lookup(&obj, o, "object")?] = lookup(&mor, m, "morphism")?;
        }
        if identity.contains(&usize::MAX) {
            return Err(invalid("every object needs an identity"));
        }
        let n = morphisms.len();
        let mut compose = vec![vec![None; n]; n];
        for [f, g, h] in &j.compose {
            let (f, g, h) = (lookup(&mor, f, "morphism")?, lookup(&mor, g, "morphism")?, lookup(&mor, h, "morphism")?);
            if compose[f][g].replace(h).is_some_and(|old| old != h) {
                return Err(invalid("composition given twice with different results"));
            }
        }
        let basepoint = match &j.basepoint {
            Some(b) => Some(lookup(&obj, b, "object")?),
            None => None,
        };
        FinCat::from_table(j.objects.clone(), morphisms, identity, compose, basepoint)
    }
}

/// `compose` entries `[f, g, h]` mean `h = g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
    pub basepoint: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `a -> b` with no inverse, pointed at `a`.
    pub(crate) fn arrow() -> FinCat {
        FinCat::poset(1)
    }

    #[test]
    fn components_and_ends() {
        assert_eq!(FinCat::discrete(3).components().len(), 3);
        let z3 = FinMonoid::cyclic(3);
        let (m, _) = FinCat::from_monoid(&z3).end_monoid(0);
        assert_eq!(m, z3);
    }

    #[test]
    fn equivalence_to_totally_disconnected() {
        assert!(FinCat::from_monoid(&FinMonoid::idempotent()).equivalent_to_totally_disconnected());
        assert!(FinCat::iso_pair().equivalent_to_totally_disconnected());
        assert!(!arrow().equivalent_to_totally_disconnected());
        assert!(!arrow().is_isomorphism(1));
    }

    #[test]
    fn bad_tables_are_rejected() {
        let spec = |n: &str, s, t| MorphismSpec { name: n.into(), src: s, tgt: t };
        // e: x -> x with e∘e = 1 declared but identity law broken
        let r = FinCat::new(vec!["x".into()], vec![spec("1", 0, 0), spec("e", 0, 0)], vec![0], |_, _| 1, None);
        assert!(r.is_err());
    }

    #[test]
    fn json_roundtrip() {
        for c in [FinCat::iso_pair(), FinCat::poset(2), FinCat::coproduct(&[FinCat::discrete(1), FinCat::iso_pair()])] {
            let text = serde_json::to_string(&c.to_json()).unwrap();
            let back = FinCat::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn full_subcategory_of_poset() {
        let (sub, kept) = FinCat::poset(2).full_subcategory(&[0, 2]);
        assert_eq!(sub.num_morphisms(), 3);
        assert_eq!(kept.len(), 3);
        assert_eq!(sub.basepoint(), Some(0));
    }
}
