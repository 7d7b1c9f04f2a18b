use serde::{Deserialize, Serialize};

use super::MAction;
use crate::error::{invalid, Error, Result};
use crate::presentations::FinMonoid;
use crate::simplicial::{DegSimplex, Levelwise, SSetFT, SSetJson};

/// A pointed right simplicial `M`-set, stored levelwise up to `top`.
///
/// Level `n` is the action of `monoids[n]` on the `n`-simplices of `x`
/// (degenerate ones included). Face and degeneracy maps act on simplices
/// through `tables` and on monoid elements through `mface` / `mdegen`.
#[derive(Clone, Debug)]
pub struct SMAction {
    x: SSetFT,
    tables: Levelwise,
    simplices: Vec<Vec<DegSimplex>>,
    simplex_names: Vec<Vec<String>>,
    monoids: Vec<FinMonoid>,
    element_names: Vec<Vec<String>>,
    mface: Vec<Vec<Vec<usize>>>,
    mdegen: Vec<Vec<Vec<usize>>>,
    act: Vec<Vec<Vec<usize>>>,
}

fn default_element_names(m: &FinMonoid) -> Vec<String> {
    (0..m.size()).map(|i| if i == m.identity() { "1".into() } else { format!("m{i}") }).collect()
}

impl SMAction {
    /// A constant monoid acting on `x` through simplicial maps, specified on
    /// nondegenerate simplices: `act(m, n, s)` is the image of the `s`-th
    /// nondegenerate `n`-simplex under `m`.
    pub fn from_constant(
        x: &SSetFT,
        m: &FinMonoid,
        act: impl Fn(usize, usize, usize) -> DegSimplex,
    ) -> Result<SMAction> {
        let top = x.trunc();
        x.require_basepoint()?;
        let (tables, simplices) = Levelwise::materialize(x, top)?;
        let index: Vec<std::collections::HashMap<&DegSimplex, usize>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut acts = Vec::with_capacity(top + 1);
        for (n, level) in simplices.iter().enumerate() {
            let mut rows = Vec::with_capacity(level.len());
            for s in level {
                let mut row = Vec::with_capacity(m.size());
                for e in 0..m.size() {
                    let img = act(e, s.base_dim(), s.base);
                    if img.dim() != s.base_dim() {
                        return Err(invalid("action must preserve dimension"));
                    }
                    let full = DegSimplex { base: img.base, surj: s.surj.then(&img.surj) };
                    let i = *index[n].get(&full).ok_or_else(|| invalid("action leaves the simplicial set"))?;
                    row.push(i);
                }
                rows.push(row);
            }
            acts.push(rows);
        }
        let ident: Vec<usize> = (0..m.size()).collect();
        let a = SMAction {
            x: x.clone(),
            simplex_names: simplices.iter().map(|l| l.iter().map(|s| format!("{s:?}")).collect()).collect(),
            tables,
            simplices,
            monoids: vec![m.clone(); top + 1],
            element_names: vec![default_element_names(m); top + 1],
            mface: (0..=top).map(|n| vec![ident.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            mdegen: (0..top).map(|n| vec![ident.clone(); n + 1]).collect(),
            act: acts,
        };
        a.validate()?;
        Ok(a)
    }

    /// A set action viewed as a discrete simplicial action truncated at `top`.
    pub fn from_discrete(a: &MAction, top: usize) -> Result<SMAction> {
        let x = SSetFT::new(top, vec![vec![Vec::new(); a.size()]], Some(a.basepoint()))?;
        let mut s = SMAction::from_constant(&x, a.monoid(), |m, _, v| DegSimplex::nondegenerate(0, a.act(v, m)))?;
        for (n, names) in s.simplex_names.iter_mut().enumerate() {
            for (i, name) in names.iter_mut().enumerate() {
                let base = a.element_name(s.simplices[n][i].base);
                *name = if n == 0 { base.to_string() } else { format!("s0^{n}({base})") };
            }
        }
        Ok(s)
    }

    /// Trivial action of `m` on `x`.
    pub fn trivial(x: &SSetFT, m: &FinMonoid) -> Result<SMAction> {
        SMAction::from_constant(x, m, |_, n, s| DegSimplex::nondegenerate(n, s))
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Result<SMAction> {
        if self.monoids.iter().any(|m| m.size() != names.len()) {
            return Err(invalid("one name per monoid element"));
        }
        self.element_names = vec![names; self.monoids.len()];
        Ok(self)
    }

    pub fn top(&self) -> usize {
        self.tables.top()
    }

    pub fn space(&self) -> &SSetFT {
        &self.x
    }

    pub fn tables(&self) -> &Levelwise {
        &self.tables
    }

    pub fn simplices(&self, n: usize) -> &[DegSimplex] {
        &self.simplices[n]
    }

    pub fn monoid(&self, n: usize) -> &FinMonoid {
        &self.monoids[n]
    }

    pub fn monoid_face(&self, n: usize, i: usize, m: usize) -> usize {
        self.mface[n][i][m]
    }

    pub fn monoid_degen(&self, n: usize, i: usize, m: usize) -> usize {
        self.mdegen[n][i][m]
    }

    /// Index of the basepoint among the `n`-simplices.
    pub fn basepoint(&self, n: usize) -> usize {
        let mut b = self.tables.basepoint.expect("actions are pointed") as usize;
        for k in 0..n {
            b = self.tables.degen[k][0][b] as usize;
        }
        b
    }

    pub fn act(&self, n: usize, x: usize, m: usize) -> usize {
        self.act[n][x][m]
    }

    /// The action in simplicial degree `n`.
    pub fn level(&self, n: usize) -> MAction {
        MAction::new(self.monoids[n].clone(), self.simplex_names[n].clone(), self.basepoint(n), self.act[n].clone())
            .expect("levels are validated actions")
    }

    /// Monoid maps are homomorphisms, every level is an action, and the
    /// structure maps are equivariant: `d_i(x·m) = d_i(x)·d_i(m)`, likewise
    /// for `s_i`.
    pub fn validate(&self) -> Result<()> {
        let top = self.top();
        for n in 0..=top {
            MAction::new(self.monoids[n].clone(), self.simplex_names[n].clone(), self.basepoint(n), self.act[n].clone())
                .map_err(|e| invalid(format!("level {n}: {e}")))?;
        }
        let hom = |from: &FinMonoid, to: &FinMonoid, f: &[usize]| {
            f[from.identity()] == to.identity()
                && (0..from.size()).all(|a| (0..from.size()).all(|b| f[from.mul(a, b)] == to.mul(f[a], f[b])))
        };
        for n in 1..=top {
            for i in 0..=n {
                let f = &self.mface[n][i];
                if !hom(&self.monoids[n], &self.monoids[n - 1], f) {
                    return Err(invalid(format!("d{i} on the monoid at level {n} is not a homomorphism")));
                }
                for x in 0..self.tables.sizes[n] {
                    for m in 0..self.monoids[n].size() {
                        let lhs = self.tables.face[n][i][self.act[n][x][m]] as usize;
                        let rhs = self.act[n - 1][self.tables.face[n][i][x] as usize][f[m]];
                        if lhs != rhs {
                            return Err(invalid(format!("d{i} is not equivariant at level {n}")));
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for i in 0..=n {
                let s = &self.mdegen[n][i];
                if !hom(&self.monoids[n], &self.monoids[n + 1], s) {
                    return Err(invalid(format!("s{i} on the monoid at level {n} is not a homomorphism")));
                }
                for x in 0..self.tables.sizes[n] {
                    for m in 0..self.monoids[n].size() {
                        let lhs = self.tables.degen[n][i][self.act[n][x][m]] as usize;
                        let rhs = self.act[n + 1][self.tables.degen[n][i][x] as usize][s[m]];
                        if lhs != rhs {
                            return Err(invalid(format!("s{i} is not equivariant at level {n}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the theorem's hypothesis in every level, reporting the first
    /// failure with its witness.
    pub fn check_hypothesis(&self) -> Result<()> {
        for n in 0..=self.top() {
            if let Some((x, m)) = self.level(n).hypothesis_witness() {
                return Err(Error::HypothesisFails {
                    level: n,
                    x: self.simplex_names[n][x].clone(),
                    m: self.element_names[n][m].clone(),
                });
            }
        }
        Ok(())
    }

    pub fn theorem_hypothesis(&self) -> bool {
        self.check_hypothesis().is_ok()
    }

    pub fn to_json(&self) -> SMActionJson {
        SMActionJson {
            space: self.x.to_json(),
            top: self.top(),
            simplex_names: self.simplex_names.clone(),
            monoids: self.monoids.clone(),
            element_names: self.element_names.clone(),
            monoid_face: self.mface.clone(),
            monoid_degen: self.mdegen.clone(),
            act: self.act.clone(),
        }
    }

    pub fn from_json(j: &SMActionJson) -> Result<SMAction> {
        let x = SSetFT::from_json(&j.space)?;
        x.require_basepoint()?;
        let (tables, simplices) = Levelwise::materialize(&x, j.top)?;
        let levels = j.top + 1;
        if [j.simplex_names.len(), j.monoids.len(), j.element_names.len(), j.monoid_face.len(), j.act.len()]
            .iter()
            .any(|&l| l != levels)
            || j.monoid_degen.len() != j.top
        {
            return Err(invalid("one entry per level is required"));
        }
        for m in &j.monoids {
            m.validate()?;
        }
        for n in 0..levels {
            let ok_names = j.simplex_names[n].len() == tables.sizes[n] && j.element_names[n].len() == j.monoids[n].size();
            let ok_faces = j.monoid_face[n].len() == if n == 0 { 0 } else { n + 1 }
                && j.monoid_face[n].iter().all(|f| f.len() == j.monoids[n].size() && f.iter().all(|&e| e < j.monoids[n - 1].size()));
            let ok_degen = n == j.top
                || (j.monoid_degen[n].len() == n + 1
                    && j.monoid_degen[n].iter().all(|f| f.len() == j.monoids[n].size() && f.iter().all(|&e| e < j.monoids[n + 1].size())));
            if !ok_names || !ok_faces || !ok_degen {
                return Err(invalid(format!("level {n} has the wrong shape")));
            }
        }
        let a = SMAction {
            x,
            tables,
            simplices,
            simplex_names: j.simplex_names.clone(),
            monoids: j.monoids.clone(),
            element_names: j.element_names.clone(),
            mface: j.monoid_face.clone(),
            mdegen: j.monoid_degen.clone(),
            act: j.act.clone(),
        };
        a.validate()?;
        Ok(a)
    }

    /// `M × G` acting through the group `G`, levelwise.
    pub fn mxg_extend(&self, m: &FinMonoid) -> Result<SMAction> {
        let mut out = self.clone();
        for n in 0..=self.top() {
            let g = &self.monoids[n];
            if let Some(bad) = (0..g.size()).find(|&e| g.inverse(e).is_none()) {
                return Err(Error::GNotAGroup(bad));
            }
            let k = g.size();
            out.monoids[n] = m.product(g);
            out.act[n] = self.act[n].iter().map(|row| (0..m.size() * k).map(|e| row[e % k]).collect()).collect();
            let mnames = default_element_names(m);
            out.element_names[n] = (0..m.size() * k)
                .map(|e| format!("({},{})", mnames[e / k], self.element_names[n][e % k]))
                .collect();
        }
        let lift = |f: &[usize], k_from: usize, k_to: usize| -> Vec<usize> {
            (0..m.size() * k_from).map(|e| (e / k_from) * k_to + f[e % k_from]).collect()
        };
        for n in 1..=self.top() {
            for i in 0..=n {
                out.mface[n][i] = lift(&self.mface[n][i], self.monoids[n].size(), self.monoids[n - 1].size());
            }
        }
        for n in 0..self.top() {
            for i in 0..=n {
                out.mdegen[n][i] = lift(&self.mdegen[n][i], self.monoids[n].size(), self.monoids[n + 1].size());
            }
        }
        out.validate()?;
        Ok(out)
    }
}

/// Levelwise data of a simplicial action. Simplices of level `n` are listed
/// in the enumeration order of `space`, degenerate ones included, and
/// `act[n][x][m]` is the index of `x·m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMActionJson {
    pub space: SSetJson,
    pub top: usize,
    pub simplex_names: Vec<Vec<String>>,
    pub monoids: Vec<FinMonoid>,
    pub element_names: Vec<Vec<String>>,
    pub monoid_face: Vec<Vec<Vec<usize>>>,
    pub monoid_degen: Vec<Vec<Vec<usize>>>,
    pub act: Vec<Vec<Vec<usize>>>,
}
