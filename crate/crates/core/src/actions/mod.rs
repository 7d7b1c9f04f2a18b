//! Pointed right monoid actions and the constructions built from them.

mod borel;
mod jmx;
mod simplicial_action;

use serde::{Deserialize, Serialize};

use crate::categories::{FinCat, MorphismSpec};
use crate::error::{invalid, Error, Result};
use crate::presentations::FinMonoid;

pub use borel::{borel_model, BorelModel};
pub use jmx::{
    jmx, jmx_level, tensor_equals_jmx_trivial, tensor_product, u_of_action_category_iso, FilteredMonoidFamily,
    MonoidKind,
};
pub use simplicial_action::{SMAction, SMActionJson};

/// A right action of a finite monoid on a pointed finite set.
///
/// `act[x][m]` is `x·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MAction {
    monoid: FinMonoid,
    elements: Vec<String>,
    basepoint: usize,
    act: Vec<Vec<usize>>,
}

impl MAction {
    pub fn new(monoid: FinMonoid, elements: Vec<String>, basepoint: usize, act: Vec<Vec<usize>>) -> Result<MAction> {
        let a = MAction { monoid, elements, basepoint, act };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let (n, k) = (self.elements.len(), self.monoid.size());
        if self.basepoint >= n {
            return Err(invalid("basepoint is not an element"));
        }
        if self.act.len() != n || self.act.iter().any(|r| r.len() != k || r.iter().any(|&y| y >= n)) {
            return Err(invalid("action table has the wrong shape"));
        }
        for x in 0..n {
            if self.act[x][self.monoid.identity()] != x {
                return Err(invalid(format!("{}·1 ≠ {}", self.elements[x], self.elements[x])));
            }
            for m in 0..k {
                for l in 0..k {
                    if self.act[self.act[x][m]][l] != self.act[x][self.monoid.mul(m, l)] {
                        return Err(invalid(format!("(x·m)·k ≠ x·(mk) at x = {}, m = {m}, k = {l}", self.elements[x])));
                    }
                }
            }
        }
        if self.act[self.basepoint].iter().any(|&y| y != self.basepoint) {
            return Err(invalid("basepoint is not fixed"));
        }
        Ok(())
    }

    /// Trivial action on `{*, x_1, …, x_{n-1}}`.
    pub fn trivial(monoid: FinMonoid, n: usize) -> MAction {
        let elements = (0..n).map(|i| if i == 0 { "*".to_string() } else { format!("x{i}") }).collect();
        let act = (0..n).map(|x| vec![x; monoid.size()]).collect();
        MAction { monoid, elements, basepoint: 0, act }
    }

    /// `M = {1, e}` acting on `{*, a, b}` by `a·e = b·e = b`. The hypothesis of
    /// the cofiber theorem fails at `(a, e)`.
    pub fn bad_idempotent() -> MAction {
        let act = vec![vec![0, 0], vec![1, 2], vec![2, 2]];
        MAction::new(FinMonoid::idempotent(), vec!["*".into(), "a".into(), "b".into()], 0, act)
            .expect("idempotent action is valid")
    }

    pub fn monoid(&self) -> &FinMonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn act(&self, x: usize, m: usize) -> usize {
        self.act[x][m]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// `X//M`. Morphism `x·|M| + m` is `(x, m): x -> x·m`, and `(x, m)` then
    /// `(x·m, k)` is `(x, mk)`.
    pub fn action_category(&self) -> FinCat {
        let k = self.monoid.size();
        let morphisms = (0..self.size() * k)
            .map(|f| {
                let (x, m) = (f / k, f % k);
                MorphismSpec { name: format!("({},m{m})", self.elements[x]), src: x, tgt: self.act[x][m] }
            })
            .collect();
        FinCat::new(
            self.elements.clone(),
            morphisms,
            (0..self.size()).map(|x| x * k + self.monoid.identity()).collect(),
            |f, g| (f / k) * k + self.monoid.mul(f % k, g % k),
            Some(self.basepoint),
        )
        .expect("action categories are categories")
    }

    /// Whether `(x, m)` is an isomorphism of `X//M`, by search for an inverse.
    pub fn iso_criterion_holds(&self, x: usize, m: usize) -> bool {
        let k = self.monoid.size();
        self.action_category().is_isomorphism(x * k + m)
    }

    /// First pair `(x, m)` with no invertible `k` satisfying `x·m = x·k`.
    pub fn hypothesis_witness(&self) -> Option<(usize, usize)> {
        let units = self.monoid.invertible_elements();
        (0..self.size())
            .flat_map(|x| (0..self.monoid.size()).map(move |m| (x, m)))
            .find(|&(x, m)| !units.iter().any(|&k| self.act[x][m] == self.act[x][k]))
    }

    pub fn theorem_hypothesis(&self) -> bool {
        self.hypothesis_witness().is_none()
    }

    /// The hypothesis holds iff `X//M` is equivalent to a totally
    /// disconnected category. Disagreement is reported as an error.
    pub fn hypothesis_equiv_check(&self) -> Result<bool> {
        let h = self.theorem_hypothesis();
        let e = self.action_category().equivalent_to_totally_disconnected();
        if h != e {
            return Err(Error::EquivalenceViolated(format!("hypothesis {h}, equivalence {e} on {:?}", self.act)));
        }
        Ok(h)
    }

    /// `M × G` acting through `G`: `x·(m, g) = x·g`. Element `(m, g)` has
    /// index `m·|G| + g`.
    pub fn mxg_extend(m: &FinMonoid, g_action: &MAction) -> Result<MAction> {
        let g = &g_action.monoid;
        if let Some(bad) = (0..g.size()).find(|&e| g.inverse(e).is_none()) {
            return Err(Error::GNotAGroup(bad));
        }
        let prod = m.product(g);
        let act = g_action.act.iter().map(|row| (0..prod.size()).map(|e| row[e % g.size()]).collect()).collect();
        MAction::new(prod, g_action.elements.clone(), g_action.basepoint, act)
    }

    /// Every action of `monoid` on `{0, …, n-1}` fixing the basepoint `0`.
    pub fn enumerate_pointed(monoid: &FinMonoid, n: usize) -> Vec<MAction> {
        let k = monoid.size();
        let free: Vec<(usize, usize)> = (1..n)
            .flat_map(|x| (0..k).filter(|&m| m != monoid.identity()).map(move |m| (x, m)))
            .collect();
        let total = n.pow(free.len() as u32);
        let elements: Vec<String> = (0..n).map(|i| if i == 0 { "*".into() } else { format!("x{i}") }).collect();
        let mut out = Vec::new();
        for code in 0..total {
            let mut act: Vec<Vec<usize>> = (0..n).map(|x| vec![x; k]).collect();
            let mut c = code;
            for &(x, m) in &free {
                act[x][m] = c % n;
                c /= n;
            }
            if let Ok(a) = MAction::new(monoid.clone(), elements.clone(), 0, act) {
                out.push(a);
            }
        }
        out
    }

    pub fn to_json(&self) -> MActionJson {
        MActionJson {
            monoid: self.monoid.clone(),
            set: PointedSetJson { elements: self.elements.clone(), basepoint: self.elements[self.basepoint].clone() },
            act: self.act.clone(),
        }
    }

    pub fn from_json(j: &MActionJson) -> Result<MAction> {
        j.monoid.validate()?;
        let basepoint = j
            .set
            .elements
            .iter()
            .position(|e| *e == j.set.basepoint)
            .ok_or_else(|| invalid(format!("basepoint {:?} is not an element", j.set.basepoint)))?;
        MAction::new(j.monoid.clone(), j.set.elements.clone(), basepoint, j.act.clone())
    }
}

/// `act[x][m]` is the index of `x·m` in `set.elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MActionJson {
    pub monoid: FinMonoid,
    pub set: PointedSetJson,
    pub act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedSetJson {
    pub elements: Vec<String>,
    pub basepoint: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_actions() {
        let a = MAction::trivial(FinMonoid::trivial(), 2);
        let c = a.action_category();
        assert_eq!(c.num_morphisms(), 2);
        assert_eq!(c.components().len(), 2);
        let z = MAction::trivial(FinMonoid::cyclic(2), 2);
        let (end, _) = z.action_category().end_monoid(1);
        assert!(end.is_group() && end.size() == 2);
        assert!(z.theorem_hypothesis());
    }

    #[test]
    fn idempotent_action_fails_hypothesis() {
        let a = MAction::bad_idempotent();
        assert!(!a.iso_criterion_holds(1, 1));
        assert!(a.iso_criterion_holds(1, 0));
        assert_eq!(a.hypothesis_witness(), Some((1, 1)));
        assert!(!a.hypothesis_equiv_check().unwrap());
    }

    #[test]
    fn group_actions_satisfy_hypothesis() {
        let z3 = FinMonoid::cyclic(3);
        let act = vec![vec![0, 0, 0], vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]];
        let a = MAction::new(z3, (0..4).map(|i| i.to_string()).collect(), 0, act).unwrap();
        assert!(a.hypothesis_equiv_check().unwrap());
        assert!((0..4).all(|x| (0..3).all(|m| a.iso_criterion_holds(x, m))));
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let z2 = FinMonoid::cyclic(2);
        // basepoint moved
        assert!(MAction::new(z2.clone(), vec!["*".into(), "a".into()], 0, vec![vec![0, 1], vec![1, 1]]).is_err());
        // a·t·t ≠ a
        assert!(MAction::new(z2, vec!["*".into(), "a".into()], 0, vec![vec![0, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn mxg_extension() {
        let swap = MAction::new(
            FinMonoid::cyclic(2),
            vec!["*".into(), "a".into(), "b".into()],
            0,
            vec![vec![0, 0], vec![1, 2], vec![2, 1]],
        )
        .unwrap();
        let e = MAction::mxg_extend(&FinMonoid::idempotent(), &swap).unwrap();
        assert!(!e.monoid().is_group());
        assert!(e.theorem_hypothesis());
        assert!(matches!(
            MAction::mxg_extend(&FinMonoid::trivial(), &MAction::bad_idempotent()),
            Err(Error::GNotAGroup(1))
        ));
    }

    #[test]
    fn enumeration_counts() {
        // trivial monoid: one action per set size
        assert_eq!(MAction::enumerate_pointed(&FinMonoid::trivial(), 3).len(), 1);
        // Z/2 on {*, a}: a·t ∈ {a}, since a·t = * forces a = *·t = *
        assert_eq!(MAction::enumerate_pointed(&FinMonoid::cyclic(2), 2).len(), 1);
        // {1, e} on {*, a}: a·e ∈ {*, a}
        assert_eq!(MAction::enumerate_pointed(&FinMonoid::idempotent(), 2).len(), 2);
    }

    #[test]
    fn json_roundtrip() {
        let a = MAction::bad_idempotent();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(MAction::from_json(&serde_json::from_str(&text).unwrap()).unwrap(), a);
    }
}
