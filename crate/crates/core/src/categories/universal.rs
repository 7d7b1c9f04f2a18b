use super::FinCat;
use crate::error::{invalid, Error, Result};
use crate::presentations::{
    ball_isomorphic, collapsed_presentation, free_product, FinMonoid, GenTag, Letter, Presentation, Word,
};

/// A presented monoid together with the image of every morphism.
#[derive(Clone, Debug)]
pub struct UniversalMonoid {
    pub presentation: Presentation,
    /// Normal form of the image of each morphism.
    pub morphism_word: Vec<Word>,
}

/// `U(C)`: one generator per morphism, `1_x -> ε`, and `(f)(g) -> (g∘f)` for
/// composable non-identity pairs.
///
/// Pairs involving an identity are left out; they follow from `1_x -> ε`.
pub fn universal_monoid(c: &FinCat) -> UniversalMonoid {
    let tags = (0..c.num_morphisms()).map(GenTag::Morphism).collect();
    let word = |f: usize| if c.is_identity(f) { Word::empty() } else { Word::letter(f as Letter) };
    let mut rels = Vec::new();
    for x in 0..c.num_objects() {
        rels.push((Word::letter(c.identity(x) as Letter), Word::empty()));
    }
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.then(f, g) {
                rels.push((Word(vec![f as Letter, g as Letter]), word(h)));
            }
        }
    }
    let presentation = Presentation::new(tags, rels).expect("letters are morphisms");
    let morphism_word = (0..c.num_morphisms()).map(word).collect();
    UniversalMonoid { presentation, morphism_word }
}

/// `U[C]`: `U(C)` with every endomorphism of the basepoint sent to `ε`.
///
/// Generators are the morphisms outside `End(pt)`, in order. Deleting the
/// basepoint endomorphisms turns some composition rules into identifications
/// between generators, which are collapsed before the rewriting system is
/// built.
pub fn reduced_universal_monoid(c: &FinCat) -> Result<UniversalMonoid> {
    let pt = c.require_basepoint()?;
    let killed = |f: usize| c.src(f) == pt && c.tgt(f) == pt;
    let morphs: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !killed(f)).collect();
    let mut gen_of = vec![None; c.num_morphisms()];
    for (i, &f) in morphs.iter().enumerate() {
        gen_of[f] = Some(i as Letter);
    }
    let w = |f: usize| gen_of[f].into_iter().collect::<Vec<Letter>>();
    let mut rels = Vec::new();
    for x in 0..c.num_objects() {
        rels.push((w(c.identity(x)), Vec::new()));
    }
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.then(f, g) {
                rels.push(([w(f), w(g)].concat(), w(h)));
            }
        }
    }
    let tags = morphs.iter().map(|&f| GenTag::Morphism(f)).collect();
    let (presentation, reps) = collapsed_presentation(tags, &rels)?;
    let morphism_word = (0..c.num_morphisms())
        .map(|f| gen_of[f].map(|g| reps[g as usize].clone()).unwrap_or_default())
        .collect();
    Ok(UniversalMonoid { presentation, morphism_word })
}

/// Checks the universal property of `U[C]` for `ψ: C -> M` given on
/// morphisms: `ψ` must be a functor to the one-object category of `M`
/// killing `End(pt)`, and then the induced assignment on generators must
/// respect every rule of `U[C]`. The factorization is unique because each
/// generator is the image of a morphism, so `ψ̃` is pinned on generators.
pub fn verify_universal_property(c: &FinCat, m: &FinMonoid, psi: &[usize]) -> Result<bool> {
    let pt = c.require_basepoint()?;
    if psi.len() != c.num_morphisms() || psi.iter().any(|&v| v >= m.size()) {
        return Err(Error::NotAFunctor("assignment must send each morphism to an element".into()));
    }
    for x in 0..c.num_objects() {
        if psi[c.identity(x)] != m.identity() {
            return Err(Error::NotAFunctor(format!("identity of {} is not sent to 1", c.object_name(x))));
        }
    }
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            if let Some(h) = c.then(f, g) {
                if psi[h] != m.mul(psi[f], psi[g]) {
                    return Err(Error::NotAFunctor(format!(
                        "composite of {} and {} not preserved",
                        c.morphism_name(f),
                        c.morphism_name(g)
                    )));
                }
            }
        }
    }
    for f in c.hom(pt, pt) {
        if psi[f] != m.identity() {
            return Err(Error::DoesNotKillEndos(f));
        }
    }
    let u = reduced_universal_monoid(c)?;
    let (target, elem_gen) = m.presentation();
    let elem_word = |e: usize| elem_gen[e].map(Word::letter).unwrap_or_default();
    let gmap: Vec<Word> = u
        .presentation
        .generators()
        .iter()
        .map(|g| match g.tag {
            GenTag::Morphism(f) => elem_word(psi[f]),
            _ => unreachable!("U[C] generators are morphisms"),
        })
        .collect();
    for r in u.presentation.rules() {
        let image = |w: &Word| {
            let mut out = Vec::new();
            for &l in &w.0 {
                target.reduce_append(&mut out, &gmap[l as usize].0);
            }
            out
        };
        if image(&r.lhs) != image(&r.rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certifies `U[C] ≅ U[A_0] ∗ U(A_1) ∗ … ∗ U(A_r)` on the radius-`k` ball,
/// where `A_0` is the component of the basepoint.
pub fn reduced_u_coproduct_decomposition(c: &FinCat, k: usize) -> Result<bool> {
    let pt = c.require_basepoint()?;
    let mut comps = c.components();
    let base_idx = comps.iter().position(|cc| cc.contains(&pt)).expect("basepoint lies in a component");
    let base = comps.remove(base_idx);
    comps.insert(0, base);
    let mut factors = Vec::new();
    // factor and word in that factor for each morphism of C
    let mut image: Vec<Option<(usize, Word)>> = vec![None; c.num_morphisms()];
    for (i, objs) in comps.iter().enumerate() {
        let (sub, kept) = c.full_subcategory(objs);
        let u = if i == 0 { reduced_universal_monoid(&sub)? } else { universal_monoid(&sub) };
        for (j, &f) in kept.iter().enumerate() {
            image[f] = Some((i, u.morphism_word[j].clone()));
        }
        factors.push(u.presentation);
    }
    let offsets: Vec<Letter> = factors
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.num_generators() as Letter;
            Some(o)
        })
        .collect();
    let fp = free_product(&factors);
    let u = reduced_universal_monoid(c)?;
    let gmap: Vec<Word> = u
        .presentation
        .generators()
        .iter()
        .map(|g| match g.tag {
            GenTag::Morphism(f) => {
                let (i, w) = image[f].clone().ok_or_else(|| invalid("morphism outside every component"))?;
                Ok(Word(w.0.iter().map(|&l| l + offsets[i]).collect()))
            }
            _ => Err(invalid("U[C] generators are morphisms")),
        })
        .collect::<Result<_>>()?;
    ball_isomorphic(&u.presentation, &fp, &gmap, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::MorphismSpec;

    #[test]
    fn u_of_monoid_is_monoid() {
        for m in [FinMonoid::cyclic(3), FinMonoid::idempotent(), FinMonoid::cyclic(2).product(&FinMonoid::idempotent())] {
            let u = universal_monoid(&FinCat::from_monoid(&m));
            assert!(u.presentation.is_confluent());
            let (table, elem_gen) = m.presentation();
            let gmap: Vec<Word> = (0..m.size()).map(|e| elem_gen[e].map(Word::letter).unwrap_or_default()).collect();
            assert!(ball_isomorphic(&u.presentation, &table, &gmap, 4).unwrap());
        }
    }

    #[test]
    fn u_of_interval_is_free_on_one_generator() {
        let u = universal_monoid(&FinCat::poset(1));
        // no composable pair avoids identities, so the non-identity arrow is free
        let ball = u.presentation.ball(4).unwrap();
        assert_eq!(ball.len(), 5);
        assert!(u.presentation.rules().iter().all(|r| r.lhs.len() == 1));
    }

    #[test]
    fn u_of_discrete_is_trivial() {
        let u = universal_monoid(&FinCat::discrete(3));
        assert_eq!(u.presentation.ball(3).unwrap(), vec![Word::empty()]);
    }

    #[test]
    fn reduced_u_examples() {
        let one = reduced_universal_monoid(&FinCat::from_monoid(&FinMonoid::cyclic(3))).unwrap();
        assert_eq!(one.presentation.ball(3).unwrap().len(), 1);
        let disc = reduced_universal_monoid(&FinCat::discrete(2)).unwrap();
        assert_eq!(disc.presentation.ball(3).unwrap().len(), 1);
        let arrow = reduced_universal_monoid(&FinCat::poset(1)).unwrap();
        assert_eq!(arrow.presentation.ball(3).unwrap().len(), 4);
        assert!(matches!(
            reduced_universal_monoid(&FinCat::discrete(1).with_basepoint(None).unwrap()),
            Err(Error::NoBasepoint)
        ));
    }

    #[test]
    fn reduced_u_collapses_generators() {
        // pt with End = {1, e}, e idempotent, and t, t': pt -> a with t∘e = t'
        let spec = |n: &str, s, t| MorphismSpec { name: n.into(), src: s, tgt: t };
        let ms = vec![spec("1", 0, 0), spec("e", 0, 0), spec("t", 0, 1), spec("t'", 0, 1), spec("1a", 1, 1)];
        let table = |f: usize, g: usize| match (f, g) {
            (0, g) => g,
            (f, 0) | (f, 4) => f,
            (4, g) => g,
            (1, 1) => 1,
            (1, 2) | (1, 3) => 3,
            _ => unreachable!(),
        };
        let c = FinCat::new(vec!["pt".into(), "a".into()], ms, vec![0, 4], table, Some(0)).unwrap();
        let u = reduced_universal_monoid(&c).unwrap();
        assert!(u.presentation.is_confluent());
        assert_eq!(u.morphism_word[2], u.morphism_word[3]);
        assert_eq!(u.presentation.ball(3).unwrap().len(), 4);
    }

    #[test]
    fn universal_property_examples() {
        let arrow = FinCat::poset(1);
        let z2 = FinMonoid::cyclic(2);
        assert!(verify_universal_property(&arrow, &z2, &[0, 0, 0]).unwrap());
        // morphisms of [1]: 0<=0, 0<=1, 1<=1
        assert!(verify_universal_property(&arrow, &z2, &[0, 1, 0]).unwrap());
        let c = FinCat::from_monoid(&z2);
        assert!(matches!(verify_universal_property(&c, &z2, &[0, 1]), Err(Error::DoesNotKillEndos(1))));
        assert!(matches!(verify_universal_property(&arrow, &z2, &[1, 0, 0]), Err(Error::NotAFunctor(_))));
    }

    #[test]
    fn coproduct_decomposition_examples() {
        let z2 = FinCat::from_monoid(&FinMonoid::cyclic(2));
        let c = FinCat::coproduct(&[z2.clone(), z2]);
        assert!(reduced_u_coproduct_decomposition(&c, 4).unwrap());
        let u = reduced_universal_monoid(&c).unwrap();
        assert_eq!(u.presentation.ball(4).unwrap().len(), 2);
        let d = FinCat::coproduct(&[FinCat::discrete(1), FinCat::iso_pair()]);
        assert!(reduced_u_coproduct_decomposition(&d, 4).unwrap());
        assert!(reduced_u_coproduct_decomposition(&FinCat::poset(2), 4).unwrap());
    }
}
