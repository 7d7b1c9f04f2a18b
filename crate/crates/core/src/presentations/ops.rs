use std::collections::{HashMap, HashSet};

use super::{GenTag, Generator, Letter, Presentation, Word};
use crate::error::{Error, Result};
use crate::simplicial::UnionFind;

/// Free monoid `J(S)`.
pub fn free_monoid(set: &[GenTag]) -> Presentation {
    Presentation::free(set.to_vec())
}

/// Reduced free monoid `J[S]` of a pointed set: the basepoint generator is
/// deleted, which realizes the cokernel of `J(pt) -> J(S)`.
pub fn reduced_free_monoid(set: &[GenTag], basepoint: usize) -> Presentation {
    assert!(basepoint < set.len(), "basepoint must be an element of the set");
    let gens = set
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != basepoint)
        .map(|(_, t)| t.clone())
        .collect();
    Presentation::free(gens)
}

/// Free product: disjoint union of generators (tagged by factor) and rules.
///
/// Factors share no letters, so no overlap crosses factors and the result is
/// confluent exactly when every factor is.
pub fn free_product(factors: &[Presentation]) -> Presentation {
    let mut generators = Vec::new();
    let mut rels = Vec::new();
    for (i, p) in factors.iter().enumerate() {
        let offset = generators.len() as Letter;
        for g in p.generators() {
            let tag = GenTag::Factor(i, Box::new(g.tag.clone()));
            generators.push(Generator { display: format!("{}@{i}", g.display), tag });
        }
        let shift = |w: &Word| Word(w.0.iter().map(|&g| g + offset).collect());
        for r in p.rules() {
            rels.push((shift(&r.lhs), shift(&r.rhs)));
        }
    }
    Presentation::with_generators(generators, rels).expect("shifted letters are in range")
}

/// Builds a presentation from relations, first collapsing every relation
/// that identifies a generator with another generator or with `ε`.
///
/// Generators found equal are rewritten to the smallest member of their class
/// (or deleted when the class contains `ε`); the substitution is applied to
/// all relations and repeated until no new identification appears, including
/// ones produced by two relations with the same longer side. Returns the
/// presentation and the normal form of each generator.
pub fn collapsed_presentation(tags: Vec<GenTag>, rels: &[(Vec<Letter>, Vec<Letter>)]) -> Result<(Presentation, Vec<Word>)> {
    let n = tags.len();
    for &g in rels.iter().flat_map(|(a, b)| a.iter().chain(b)) {
        if g as usize >= n {
            return Err(Error::UnknownGenerator(g));
        }
    }
    let eps = n;
    let mut uf = UnionFind::new(n + 1);
    let subst = |uf: &mut UnionFind, w: &[Letter]| -> Vec<Letter> {
        let e = uf.find(eps);
        w.iter().map(|&g| uf.find(g as usize)).filter(|&r| r != e).map(|r| r as Letter).collect()
    };
    let node = |w: &[Letter]| w.first().map_or(eps, |&g| g as usize);
    let mut current: Vec<(Vec<Letter>, Vec<Letter>)>;
    loop {
        let mut merged = false;
        let mut short_side: HashMap<Vec<Letter>, Vec<Letter>> = HashMap::new();
        current = Vec::with_capacity(rels.len());
        for (a, b) in rels {
            let (a, b) = (subst(&mut uf, a), subst(&mut uf, b));
            let (big, small) = if super::shortlex(&a, &b).is_lt() { (b, a) } else { (a, b) };
            if big.len() <= 1 {
                merged |= uf.union(node(&big), node(&small));
                continue;
            }
            if small.len() <= 1 {
                match short_side.get(&big) {
                    Some(prev) if *prev != small => merged |= uf.union(node(prev), node(&small)),
                    Some(_) => {}
                    None => {
                        short_side.insert(big.clone(), small.clone());
                    }
                }
            }
            current.push((big, small));
        }
        if !merged {
            break;
        }
    }
    let reps: Vec<Word> = (0..n).map(|g| Word(subst(&mut uf, &[g as Letter]))).collect();
    let mut all: Vec<(Word, Word)> = reps
        .iter()
        .enumerate()
        .filter(|(g, w)| w.0 != [*g as Letter])
        .map(|(g, w)| (Word::letter(g as Letter), w.clone()))
        .collect();
    all.extend(current.into_iter().map(|(a, b)| (Word(a), Word(b))));
    let p = Presentation::new(tags, all)?;
    Ok((p, reps))
}

fn apply_map(q: &Presentation, gmap: &[Word], w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &g in w {
        q.reduce_append(&mut out, &gmap[g as usize].0);
    }
    out
}

/// Ball-exact isomorphism check for the monoid map induced by `gmap`.
///
/// Fails with [`Error::IllDefinedMap`] when a rule of `p` is not sent to an
/// equality in `q`. Otherwise returns whether the map restricts to a bijection
/// from the radius-`k` ball of `p` onto the radius-`k` ball of `q`. This is a
/// necessary condition for an isomorphism, exact on the tested ball.
pub fn ball_isomorphic(p: &Presentation, q: &Presentation, gmap: &[Word], k: usize) -> Result<bool> {
    p.ensure_confluent()?;
    q.ensure_confluent()?;
    if gmap.len() != p.num_generators() {
        return Err(crate::error::invalid("generator map must cover every generator of the source"));
    }
    for w in gmap {
        q.check_letters(&w.0)?;
    }
    for r in p.rules() {
        let a = apply_map(q, gmap, &r.lhs.0);
        let b = apply_map(q, gmap, &r.rhs.0);
        if a != b {
            return Err(Error::IllDefinedMap(format!(
                "{} -> {}",
                p.format_word(&r.lhs),
                p.format_word(&r.rhs)
            )));
        }
    }
    let source = p.ball(k)?;
    let target_size = q.ball(k)?.len();
    if source.len() != target_size {
        return Ok(false);
    }
    let mut image = HashSet::with_capacity(source.len());
    for w in &source {
        let v = apply_map(q, gmap, &w.0);
        if v.len() > k || !image.insert(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(s: &str) -> GenTag {
        GenTag::Named(s.into())
    }

    fn z2(name: &str) -> Presentation {
        Presentation::new(vec![named(name)], [(Word(vec![0, 0]), Word::empty())]).unwrap()
    }

    #[test]
    fn reduced_free_on_point_is_trivial() {
        let p = reduced_free_monoid(&[named("*")], 0);
        assert_eq!(p.num_generators(), 0);
        assert_eq!(p.ball(3).unwrap().len(), 1);
    }

    #[test]
    fn reduced_free_ball_sizes() {
        let p = reduced_free_monoid(&[named("*"), named("a")], 0);
        assert_eq!(p.ball(2).unwrap(), vec![Word::empty(), Word(vec![0]), Word(vec![0, 0])]);
        assert_eq!(p.ball(3).unwrap().len(), 4);
        let q = free_monoid(&[named("a"), named("b")]);
        assert_eq!(q.ball(1).unwrap().len(), 3);
    }

    #[test]
    fn infinite_dihedral_ball() {
        let p = free_product(&[z2("s"), z2("t")]);
        assert!(p.is_confluent());
        let ball = p.ball(3).unwrap();
        assert_eq!(ball.len(), 7);
    }

    #[test]
    fn free_product_edge_cases() {
        let p = free_product(&[]);
        assert_eq!(p.ball(4).unwrap(), vec![Word::empty()]);
        let single = free_product(&[z2("t")]);
        let id: Vec<Word> = vec![Word::letter(0)];
        assert!(ball_isomorphic(&single, &z2("t"), &id, 4).unwrap());
    }

    #[test]
    fn identity_map_is_ball_iso() {
        let p = free_monoid(&[named("a"), named("b")]);
        let id: Vec<Word> = (0..2).map(Word::letter).collect();
        assert!(ball_isomorphic(&p, &p, &id, 4).unwrap());
    }

    #[test]
    fn collapsing_map_is_not_iso() {
        let p = free_monoid(&[named("a")]);
        let q = free_monoid(&[named("b")]);
        assert!(!ball_isomorphic(&p, &q, &[Word::empty()], 1).unwrap());
    }

    #[test]
    fn map_breaking_relation_is_ill_defined() {
        let p = z2("t");
        let q = free_monoid(&[named("a")]);
        assert!(matches!(
            ball_isomorphic(&p, &q, &[Word::letter(0)], 2),
            Err(Error::IllDefinedMap(_))
        ));
    }
}
