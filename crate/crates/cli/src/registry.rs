//! Named instances.

use jmx_core::actions::{MAction, MonoidKind, SMAction};
use jmx_core::categories::{FinCat, MorphismSpec};
use jmx_core::homology::HomologyGroup;
use jmx_core::presentations::FinMonoid;
use jmx_core::simplicial::{circle_bouquet, simplicial_circle, simplicial_sphere, DegSimplex, SSetFT};
use jmx_core::Result;
use serde::Serialize;

/// What an instance carries. Spaces and actions are built on demand at the
/// truncation a computation needs.
#[derive(Clone)]
pub enum Payload {
    Action(fn(usize) -> Result<SMAction>),
    Tensor { space: fn(usize) -> Result<SSetFT>, monoid: MonoidKind },
    Category(fn() -> FinCat),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Action,
    Tensor,
    CategoryLemma,
}

/// Expected reduced homology in one degree, with the space it is read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub degree: usize,
    pub group: HomologyGroup,
    pub source: &'static str,
}

#[derive(Clone)]
pub struct Instance {
    pub key: &'static str,
    pub description: &'static str,
    pub payload: Payload,
    /// Homology degree checked when none is requested.
    pub degree: usize,
    pub expected: Vec<Expected>,
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Action(_) => Kind::Action,
            Payload::Tensor { .. } => Kind::Tensor,
            Payload::Category(_) => Kind::CategoryLemma,
        }
    }
}

fn expected(groups: &[&str], source: &'static str) -> Vec<Expected> {
    groups
        .iter()
        .enumerate()
        .map(|(degree, g)| Expected { degree, group: HomologyGroup::parse(g).expect("valid group"), source })
        .collect()
}

fn s0(top: usize) -> Result<SSetFT> {
    simplicial_sphere(0, top)
}

fn s1(top: usize) -> Result<SSetFT> {
    simplicial_circle(top)
}

fn wu_s0_z2(top: usize) -> Result<SMAction> {
    SMAction::trivial(&s0(top)?, &FinMonoid::cyclic(2))
}

/// `Z/2` swapping the two loops of `S¹ ∨ S¹`.
pub fn swap_circles(top: usize) -> Result<SMAction> {
    SMAction::from_constant(&circle_bouquet(2, top)?, &FinMonoid::cyclic(2), |g, n, s| {
        DegSimplex::nondegenerate(n, if n == 1 && g == 1 { 1 - s } else { s })
    })
}

fn mxg_e_z2_wedge(top: usize) -> Result<SMAction> {
    swap_circles(top)?.mxg_extend(&FinMonoid::idempotent())
}

fn bad_idempotent(top: usize) -> Result<SMAction> {
    SMAction::from_discrete(&MAction::bad_idempotent(), top)?.with_element_names(vec!["1".into(), "e".into()])
}

/// `Z/2` swapping `a` and `b` in `{*, a, b}`.
pub fn antipodal() -> MAction {
    MAction::new(
        FinMonoid::cyclic(2),
        vec!["*".into(), "a".into(), "b".into()],
        0,
        vec![vec![0, 0], vec![1, 2], vec![2, 1]],
    )
    .expect("swap is an action")
}

fn carlsson_z2_s0(top: usize) -> Result<SMAction> {
    SMAction::from_discrete(&antipodal(), top)?.with_element_names(vec!["1".into(), "t".into()])
}

/// `pt` with `End(pt) = {1, e}` and two arrows `t, t' = t∘e` to a second object.
fn idempotent_collapse() -> FinCat {
    let spec = |n: &str, s, t| MorphismSpec { name: n.into(), src: s, tgt: t };
    let ms = vec![spec("1", 0, 0), spec("e", 0, 0), spec("t", 0, 1), spec("t'", 0, 1), spec("1a", 1, 1)];
    let table = |f: usize, g: usize| match (f, g) {
        (0, g) => g,
        (f, 0) | (f, 4) => f,
        (4, g) => g,
        (1, 1) => 1,
        _ => 3,
    };
    FinCat::new(vec!["pt".into(), "a".into()], ms, vec![0, 4], table, Some(0)).expect("valid category")
}

/// Three mutually isomorphic objects with automorphism group `Z/2`: an orbit
/// of `Z/2 × Z/3` on which only `Z/3` acts.
fn z2_groupoid3() -> FinCat {
    let act = (0..4).map(|x| (0..6).map(|e| if x == 0 { 0 } else { 1 + (x - 1 + e % 3) % 3 }).collect()).collect();
    let names = ["*", "x1", "x2", "x3"].map(String::from).to_vec();
    let a = MAction::new(FinMonoid::cyclic(2).product(&FinMonoid::cyclic(3)), names, 0, act).expect("Z/3 rotates the orbit");
    a.action_category().full_subcategory(&[1, 2, 3]).0.with_basepoint(Some(0)).expect("object 0 exists")
}

pub fn registry() -> Vec<Instance> {
    vec![
        Instance {
            key: "wu_s0_z2",
            description: "Z/2 acting trivially on S^0",
            payload: Payload::Action(wu_s0_z2),
            degree: 3,
            expected: expected(&["0", "Z/2", "0", "Z/2", "0", "Z/2"], "BZ/2"),
        },
        Instance {
            key: "mxg_e_z2_wedge",
            description: "{1,e} x Z/2 acting on S^1 v S^1, Z/2 swapping the circles and e acting trivially",
            payload: Payload::Action(mxg_e_z2_wedge),
            degree: 2,
            expected: Vec::new(),
        },
        Instance {
            key: "bad_idempotent",
            description: "{1,e} acting on {*,a,b} by a.e = b.e = b; no invertible witness for (a,e)",
            payload: Payload::Action(bad_idempotent),
            degree: 2,
            expected: Vec::new(),
        },
        Instance {
            key: "carlsson_z2_s0",
            description: "Z/2 swapping the two points of S^0 with a disjoint basepoint",
            payload: Payload::Action(carlsson_z2_s0),
            degree: 3,
            expected: Vec::new(),
        },
        Instance {
            key: "wu_s1_z2",
            description: "S^1 tensor Z/2",
            payload: Payload::Tensor { space: s1, monoid: MonoidKind::Finite(FinMonoid::cyclic(2)) },
            degree: 4,
            expected: expected(&["0", "0", "Z/2", "0", "Z/2", "0"], "S^1 ^ BZ/2"),
        },
        Instance {
            key: "james_s1",
            description: "S^1 tensor N, the James construction on S^1",
            payload: Payload::Tensor { space: s1, monoid: MonoidKind::N },
            degree: 3,
            expected: expected(&["0", "0", "Z", "0", "0"], "S^2"),
        },
        Instance {
            key: "milnor_s1",
            description: "S^1 tensor Z, Milnor's free group construction on S^1",
            payload: Payload::Tensor { space: s1, monoid: MonoidKind::Z },
            degree: 3,
            expected: expected(&["0", "0", "Z", "0", "0"], "S^2"),
        },
        Instance {
            key: "bn_circle",
            description: "S^0 tensor N, the constant free monoid on one generator",
            payload: Payload::Tensor { space: s0, monoid: MonoidKind::N },
            degree: 2,
            expected: expected(&["0", "Z", "0", "0"], "S^1"),
        },
        Instance {
            key: "cat_arrow",
            description: "the poset [1]",
            payload: Payload::Category(|| FinCat::poset(1)),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_poset2",
            description: "the poset [2]",
            payload: Payload::Category(|| FinCat::poset(2)),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_iso_pair",
            description: "two objects joined by an isomorphism",
            payload: Payload::Category(FinCat::iso_pair),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_z2",
            description: "one object with endomorphisms Z/2",
            payload: Payload::Category(|| FinCat::from_monoid(&FinMonoid::cyclic(2))),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_z2_plus_z2",
            description: "coproduct of two copies of Z/2",
            payload: Payload::Category(|| {
                let z2 = FinCat::from_monoid(&FinMonoid::cyclic(2));
                FinCat::coproduct(&[z2.clone(), z2])
            }),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_point_plus_iso_pair",
            description: "a point and a separate isomorphism pair",
            payload: Payload::Category(|| FinCat::coproduct(&[FinCat::discrete(1), FinCat::iso_pair()])),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_idempotent_collapse",
            description: "basepoint with an idempotent endomorphism e and arrows t, t∘e to a second object",
            payload: Payload::Category(idempotent_collapse),
            degree: 0,
            expected: Vec::new(),
        },
        Instance {
            key: "cat_z2_groupoid3",
            description: "three isomorphic objects with automorphism group Z/2",
            payload: Payload::Category(z2_groupoid3),
            degree: 0,
            expected: Vec::new(),
        },
    ]
}

pub fn find(key: &str) -> Option<Instance> {
    registry().into_iter().find(|i| i.key == key)
}

/// Corollary names and the instance each one runs on.
pub const COROLLARIES: [(&str, &str); 4] =
    [("james", "james_s1"), ("milnor_b", "milnor_s1"), ("wu", "wu_s1_z2"), ("bn_circle", "bn_circle")];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique_and_payloads_build() {
        let r = registry();
        let mut keys: Vec<&str> = r.iter().map(|i| i.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), r.len());
        for i in &r {
            match &i.payload {
                Payload::Action(f) => {
                    f(3).unwrap();
                }
                Payload::Tensor { space, .. } => {
                    space(3).unwrap();
                }
                Payload::Category(f) => {
                    f();
                }
            }
        }
    }

    #[test]
    fn groupoid_has_three_isomorphic_objects() {
        let c = z2_groupoid3();
        assert_eq!(c.num_objects(), 3);
        assert!(c.is_connected() && c.equivalent_to_totally_disconnected());
        assert_eq!(c.end_monoid(0).0.size(), 2);
    }
}
