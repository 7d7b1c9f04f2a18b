//! Monoid presentations by length-non-increasing rewrite systems.
//!
//! A [`Presentation`] is a set of generators plus oriented rules. Rules are
//! always oriented so the left side is larger in the length-then-shortlex
//! order, which makes every rewriting sequence terminate. Confluence is never
//! assumed: construction runs the critical-pair test and records the outcome,
//! and [`Presentation::normalize`] refuses to run on an unresolved system.

mod monoid;
mod ops;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use monoid::{enumerate_monoids, FinMonoid};
pub use ops::{ball_isomorphic, collapsed_presentation, free_monoid, free_product, reduced_free_monoid};

/// Index of a generator inside its owning presentation.
pub type Letter = u32;

/// A word in the generators. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Letter) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Length first, then lexicographic on generator indices.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Structured generator identity. Displayed canonically, never compared by
/// display string, so tagged copies in free products cannot collide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenTag {
    Named(String),
    /// Element of a finite monoid.
    Element(usize),
    /// Morphism of a finite category.
    Morphism(usize),
    /// Simplex `index` of the enumerated level-`dim` simplices.
    Simplex { dim: usize, index: usize },
    Pair(Box<GenTag>, Box<GenTag>),
    /// Generator of factor `usize` in a free product.
    Factor(usize, Box<GenTag>),
    /// Formal inverse.
    Inverse(Box<GenTag>),
}

impl fmt::Display for GenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTag::Named(s) => write!(f, "{s}"),
            GenTag::Element(i) => write!(f, "m{i}"),
            GenTag::Morphism(i) => write!(f, "f{i}"),
            GenTag::Simplex { dim, index } => write!(f, "x{dim}.{index}"),
            GenTag::Pair(a, b) => write!(f, "({a},{b})"),
            GenTag::Factor(i, t) => write!(f, "{t}@{i}"),
            GenTag::Inverse(t) => write!(f, "{t}^-1"),
        }
    }
}

/// An oriented rule `lhs -> rhs` with `rhs` strictly smaller in shortlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
}

impl RewriteRule {
    /// Orients the relation `a ~ b`; returns `None` when the two sides agree.
    pub fn orient(a: Word, b: Word) -> Option<RewriteRule> {
        match shortlex(&a.0, &b.0) {
            Ordering::Greater => Some(RewriteRule { lhs: a, rhs: b }),
            Ordering::Less => Some(RewriteRule { lhs: b, rhs: a }),
            Ordering::Equal => None,
        }
    }
}

/// Overlap whose two one-step reducts have different irreducible forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Confluence {
    Verified,
    Unresolved(Vec<CriticalPair>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub tag: GenTag,
    pub display: String,
}

impl Generator {
    pub fn new(tag: GenTag) -> Self {
        let display = tag.to_string();
        Generator { tag, display }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    generators: Vec<Generator>,
    rules: Vec<RewriteRule>,
    confluence: Confluence,
    /// Rule indices keyed by the last letter of their left side.
    by_last: Vec<Vec<u32>>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.rules == other.rules
            && self.confluence == other.confluence
    }
}

impl Presentation {
    /// Builds a presentation from unoriented relations and runs the
    /// confluence check.
    pub fn new<I>(generators: Vec<GenTag>, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word)>,
    {
        Self::with_generators(generators.into_iter().map(Generator::new).collect(), relations)
    }

    pub fn with_generators<I>(generators: Vec<Generator>, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word)>,
    {
        let n = generators.len() as u32;
        let mut seen = HashSet::new();
        let mut rules = Vec::new();
        for (a, b) in relations {
            for &g in a.0.iter().chain(b.0.iter()) {
                if g >= n {
                    return Err(Error::UnknownGenerator(g));
                }
            }
            if let Some(rule) = RewriteRule::orient(a, b) {
                if seen.insert(rule.clone()) {
                    rules.push(rule);
                }
            }
        }
        let mut p = Presentation {
            generators,
            rules,
            confluence: Confluence::Verified,
            by_last: Vec::new(),
        };
        p.index_rules();
        let pairs = p.critical_pairs();
        if !pairs.is_empty() {
            p.confluence = Confluence::Unresolved(pairs);
        }
        Ok(p)
    }

    /// Presentation with the given generators and no rules.
    pub fn free(generators: Vec<GenTag>) -> Self {
        Self::new(generators, std::iter::empty()).expect("rule-free presentation is valid")
    }

    fn index_rules(&mut self) {
        let mut by_last = vec![Vec::new(); self.generators.len()];
        for (i, r) in self.rules.iter().enumerate() {
            let last = *r.lhs.0.last().expect("rule left side is nonempty");
            by_last[last as usize].push(i as u32);
        }
        self.by_last = by_last;
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn confluence(&self) -> &Confluence {
        &self.confluence
    }

    pub fn is_confluent(&self) -> bool {
        self.confluence == Confluence::Verified
    }

    pub fn ensure_confluent(&self) -> Result<()> {
        match &self.confluence {
            Confluence::Verified => Ok(()),
            Confluence::Unresolved(p) => Err(Error::NotConfluent(p.len())),
        }
    }

    pub fn check_letters(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|&&g| g as usize >= self.generators.len()) {
            Some(&g) => Err(Error::UnknownGenerator(g)),
            None => Ok(()),
        }
    }

    /// Unique normal form of `w`.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        self.ensure_confluent()?;
        self.check_letters(&w.0)?;
        Ok(Word(self.reduce(&w.0)))
    }

    /// Rewrites `w` to an irreducible word. Unique only when the system is
    /// confluent; callers on hot paths validate that once up front.
    pub fn reduce(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
        self.reduce_stack(&mut out, &mut pending);
        out
    }

    /// Appends `w` to the irreducible word `out`, keeping it irreducible.
    pub fn reduce_append(&self, out: &mut Vec<Letter>, w: &[Letter]) {
        let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
        self.reduce_stack(out, &mut pending);
    }

    fn reduce_stack(&self, out: &mut Vec<Letter>, pending: &mut Vec<Letter>) {
        while let Some(c) = pending.pop() {
            out.push(c);
            if let Some(rule) = self.redex_at_end(out) {
                let rule = &self.rules[rule];
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.0.iter().rev());
            }
        }
    }

    /// Index of a rule whose left side is a suffix of `w`.
    fn redex_at_end(&self, w: &[Letter]) -> Option<usize> {
        let last = *w.last()? as usize;
        self.by_last[last].iter().map(|&r| r as usize).find(|&r| {
            let lhs = &self.rules[r].lhs.0;
            lhs.len() <= w.len() && &w[w.len() - lhs.len()..] == lhs.as_slice()
        })
    }

    /// `true` iff `w` contains no left side. Only the suffix ending at each
    /// position needs checking.
    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        (1..=w.len()).all(|end| self.redex_at_end(&w[..end]).is_none())
    }

    /// Overlaps and inclusions of left sides whose reducts do not rewrite to
    /// the same irreducible word.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut push = |overlap: Vec<Letter>, a: Vec<Letter>, b: Vec<Letter>| {
            let (na, nb) = (self.reduce(&a), self.reduce(&b));
            if na != nb {
                let key = (overlap.clone(), na.clone(), nb.clone());
                if seen.insert(key) {
                    out.push(CriticalPair {
                        overlap: Word(overlap),
                        left: Word(na),
                        right: Word(nb),
                    });
                }
            }
        };
        for (i, ri) in self.rules.iter().enumerate() {
            let li = &ri.lhs.0;
            for (j, rj) in self.rules.iter().enumerate() {
                let lj = &rj.lhs.0;
                // proper overlaps: suffix of li == prefix of lj
                for s in 1..li.len().min(lj.len()) {
                    if li[li.len() - s..] == lj[..s] {
                        let mut overlap = li.clone();
                        overlap.extend_from_slice(&lj[s..]);
                        let mut a = ri.rhs.0.clone();
                        a.extend_from_slice(&lj[s..]);
                        let mut b = li[..li.len() - s].to_vec();
                        b.extend_from_slice(&rj.rhs.0);
                        push(overlap, a, b);
                    }
                }
                // inclusion of lj inside li
                if i != j && lj.len() <= li.len() {
                    for p in 0..=li.len() - lj.len() {
                        if li[p..p + lj.len()] == lj[..] {
                            let a = ri.rhs.0.clone();
                            let mut b = li[..p].to_vec();
                            b.extend_from_slice(&rj.rhs.0);
                            b.extend_from_slice(&li[p + lj.len()..]);
                            push(li.clone(), a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal forms of length at most `k`, grouped by length.
    ///
    /// Prefixes of irreducible words are irreducible, so each length is
    /// obtained by extending the previous one by a single letter.
    pub fn ball_by_length(&self, k: usize) -> Result<Vec<Vec<Word>>> {
        self.ensure_confluent()?;
        let mut layers: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        let n = self.generators.len() as Letter;
        for _ in 0..k {
            let prev = layers.last().expect("nonempty");
            let next: Vec<Vec<Word>> = crate::par::map(prev, |w| {
                let mut ext = Vec::new();
                let mut buf = w.0.clone();
                buf.push(0);
                for g in 0..n {
                    *buf.last_mut().unwrap() = g;
                    if self.redex_at_end(&buf).is_none() {
                        ext.push(Word(buf.clone()));
                    }
                }
                ext
            });
            let next: Vec<Word> = next.into_iter().flatten().collect();
            if next.is_empty() {
                layers.push(next);
                break;
            }
            layers.push(next);
        }
        while layers.len() < k + 1 {
            layers.push(Vec::new());
        }
        Ok(layers)
    }

    /// All normal forms of length at most `k`.
    pub fn ball(&self, k: usize) -> Result<Vec<Word>> {
        Ok(self.ball_by_length(k)?.into_iter().flatten().collect())
    }

    /// Multiplication table of the presented monoid, when it has at most
    /// `limit` elements.
    pub fn to_fin_monoid(&self, limit: usize) -> Result<(FinMonoid, Vec<Word>)> {
        self.ensure_confluent()?;
        let mut elems = vec![Word::empty()];
        let mut index: HashMap<Word, usize> = HashMap::from([(Word::empty(), 0)]);
        let mut frontier = 0;
        while frontier < elems.len() {
            let w = elems[frontier].clone();
            frontier += 1;
            for g in 0..self.generators.len() as Letter {
                let mut v = w.0.clone();
                self.reduce_append(&mut v, &[g]);
                let v = Word(v);
                if !index.contains_key(&v) {
                    if elems.len() >= limit {
                        return Err(crate::error::invalid(format!(
                            "presented monoid has more than {limit} elements"
                        )));
                    }
                    index.insert(v.clone(), elems.len());
                    elems.push(v);
                }
            }
        }
        let mult = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let mut v = a.0.clone();
                        self.reduce_append(&mut v, &b.0);
                        index[&Word(v)]
                    })
                    .collect()
            })
            .collect();
        let m = FinMonoid::new(elems.len(), 0, mult)?;
        Ok((m, elems))
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| GeneratorJson { id: i as u32, display: g.display.clone() })
                .collect(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleJson { lhs: r.lhs.0.clone(), rhs: r.rhs.0.clone() })
                .collect(),
            confluence: if self.is_confluent() { "verified" } else { "unresolved" }.into(),
        }
    }

    /// Rebuilds a presentation from its JSON form. Generators come back as
    /// `Named` tags; the confluence status is recomputed, not trusted.
    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let mut gens = j.generators.clone();
        gens.sort_by_key(|g| g.id);
        if gens.iter().enumerate().any(|(i, g)| g.id as usize != i) {
            return Err(crate::error::invalid("generator ids must be 0..n"));
        }
        let generators = gens
            .into_iter()
            .map(|g| Generator { tag: GenTag::Named(g.display.clone()), display: g.display })
            .collect();
        Self::with_generators(
            generators,
            j.rules.iter().map(|r| (Word(r.lhs.clone()), Word(r.rhs.clone()))),
        )
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.0.iter()
            .map(|&g| self.generators[g as usize].display.as_str())
            .collect::<Vec<_>>()
            .join("·")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub id: u32,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<GeneratorJson>,
    pub rules: Vec<RuleJson>,
    pub confluence: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(n: usize) -> Vec<GenTag> {
        (0..n).map(|i| GenTag::Named(format!("g{i}"))).collect()
    }

    fn z2() -> Presentation {
        Presentation::new(vec![GenTag::Named("t".into())], [(Word(vec![0, 0]), Word::empty())])
            .unwrap()
    }

    #[test]
    fn empty_word_is_normal() {
        assert_eq!(z2().normalize(&Word::empty()).unwrap(), Word::empty());
    }

    #[test]
    fn z2_square_collapses() {
        let p = z2();
        assert_eq!(p.normalize(&Word(vec![0, 0, 0])).unwrap(), Word(vec![0]));
        assert_eq!(p.ball(5).unwrap().len(), 2);
    }

    #[test]
    fn unknown_generator_is_rejected() {
        assert_eq!(z2().normalize(&Word(vec![3])), Err(Error::UnknownGenerator(3)));
        assert!(Presentation::new(gens(1), [(Word(vec![1]), Word::empty())]).is_err());
    }

    #[test]
    fn non_confluent_system_is_flagged() {
        // ab -> a, ba -> b: aba rewrites to aa and to ab -> a
        let p = Presentation::new(
            gens(2),
            [(Word(vec![0, 1]), Word(vec![0])), (Word(vec![1, 0]), Word(vec![1]))],
        )
        .unwrap();
        assert!(!p.critical_pairs().is_empty());
        assert!(matches!(p.normalize(&Word(vec![0])), Err(Error::NotConfluent(_))));
        assert!(matches!(p.ball(1), Err(Error::NotConfluent(_))));
    }

    #[test]
    fn free_monoid_has_no_critical_pairs() {
        assert!(Presentation::free(gens(3)).critical_pairs().is_empty());
    }

    #[test]
    fn orientation_prefers_shorter_then_smaller() {
        let r = RewriteRule::orient(Word(vec![1]), Word(vec![0, 0])).unwrap();
        assert_eq!(r.lhs, Word(vec![0, 0]));
        let r = RewriteRule::orient(Word(vec![0]), Word(vec![1])).unwrap();
        assert_eq!(r.lhs, Word(vec![1]));
        assert!(RewriteRule::orient(Word(vec![2]), Word(vec![2])).is_none());
    }

    #[test]
    fn table_monoid_roundtrip() {
        let (m, elems) = z2().to_fin_monoid(10).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(elems, vec![Word::empty(), Word(vec![0])]);
        assert_eq!(m.mul(1, 1), 0);
    }

    #[test]
    fn json_roundtrip_recomputes_status() {
        let p = z2();
        let j = p.to_json();
        assert_eq!(j.confluence, "verified");
        let q = Presentation::from_json(&j).unwrap();
        assert_eq!(q.rules(), p.rules());
        assert!(q.is_confluent());
    }
}
