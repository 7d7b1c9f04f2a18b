use super::{MAction, SMAction};
use crate::categories::reduced_universal_monoid;
use crate::error::{invalid, Error, Result};
use crate::presentations::{
    ball_isomorphic, collapsed_presentation, free_product, FinMonoid, GenTag, Letter, Presentation, Word,
};
use crate::simplicial::{Levelwise, SSetFT};

/// A truncated simplicial monoid given by one confluent presentation per
/// level, with structure maps sending each letter to a letter or to `ε`.
///
/// `face[n][i][g]` is `d_i(g)` for `n >= 1` (`face[0]` is empty) and
/// `degen[n][i][g]` is `s_i(g)` for `n < trunc`.
#[derive(Clone, Debug)]
pub struct FilteredMonoidFamily {
    pub levels: Vec<Presentation>,
    pub face: Vec<Vec<Vec<Option<Letter>>>>,
    pub degen: Vec<Vec<Vec<Option<Letter>>>>,
}

impl FilteredMonoidFamily {
    /// The constant family on `p`.
    pub fn constant(p: &Presentation, trunc: usize) -> Result<FilteredMonoidFamily> {
        let id: Vec<Option<Letter>> = (0..p.num_generators() as Letter).map(Some).collect();
        let f = FilteredMonoidFamily {
            levels: vec![p.clone(); trunc + 1],
            face: (0..=trunc).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degen: (0..trunc).map(|n| vec![id.clone(); n + 1]).collect(),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn truncate(&self, t: usize) -> Result<FilteredMonoidFamily> {
        if t > self.trunc() {
            return Err(Error::TruncationTooLow { trunc: self.trunc(), needed: t });
        }
        Ok(FilteredMonoidFamily {
            levels: self.levels[..=t].to_vec(),
            face: self.face[..=t].to_vec(),
            degen: self.degen[..t].to_vec(),
        })
    }

    fn apply(map: &[Option<Letter>], target: &Presentation, w: &[Letter]) -> Vec<Letter> {
        let letters: Vec<Letter> = w.iter().filter_map(|&g| map[g as usize]).collect();
        target.reduce(&letters)
    }

    /// Normal form of `d_i(w)` for a word `w` at level `n`.
    pub fn face_word(&self, n: usize, i: usize, w: &[Letter]) -> Vec<Letter> {
        Self::apply(&self.face[n][i], &self.levels[n - 1], w)
    }

    /// Normal form of `s_i(w)` for a word `w` at level `n`.
    pub fn degen_word(&self, n: usize, i: usize, w: &[Letter]) -> Vec<Letter> {
        Self::apply(&self.degen[n][i], &self.levels[n + 1], w)
    }

    /// Every level is confluent, the structure maps respect the rules, and the
    /// simplicial identities hold on generators.
    pub fn validate(&self) -> Result<()> {
        let t = self.trunc();
        if self.face.len() != t + 1 || self.degen.len() != t {
            return Err(invalid("structure maps have the wrong shape"));
        }
        for p in &self.levels {
            p.ensure_confluent()?;
        }
        let check_map = |map: &[Option<Letter>], from: &Presentation, to: &Presentation, what: String| -> Result<()> {
            if map.len() != from.num_generators() || map.iter().flatten().any(|&g| g as usize >= to.num_generators()) {
                return Err(invalid(format!("{what} does not map letters to letters")));
            }
            for r in from.rules() {
                if Self::apply(map, to, &r.lhs.0) != Self::apply(map, to, &r.rhs.0) {
                    return Err(Error::IllDefinedMap(format!("{what} breaks {}", from.format_word(&r.lhs))));
                }
            }
            Ok(())
        };
        for n in 1..=t {
            if self.face[n].len() != n + 1 {
                return Err(invalid(format!("level {n} needs {} faces", n + 1)));
            }
            for (i, map) in self.face[n].iter().enumerate() {
                check_map(map, &self.levels[n], &self.levels[n - 1], format!("d{i} at level {n}"))?;
            }
        }
        for n in 0..t {
            if self.degen[n].len() != n + 1 {
                return Err(invalid(format!("level {n} needs {} degeneracies", n + 1)));
            }
            for (i, map) in self.degen[n].iter().enumerate() {
                check_map(map, &self.levels[n], &self.levels[n + 1], format!("s{i} at level {n}"))?;
            }
        }
        for n in 0..=t {
            for g in 0..self.levels[n].num_generators() as Letter {
                let w = [g];
                for j in 1..=n {
                    for i in 0..j {
                        if n >= 2 && self.face_word(n - 1, i, &self.face_word(n, j, &w))
                            != self.face_word(n - 1, j - 1, &self.face_word(n, i, &w))
                        {
                            return Err(invalid(format!("d{i}d{j} identity fails at level {n}")));
                        }
                    }
                }
                if n < t {
                    for j in 0..=n {
                        let up = self.degen_word(n, j, &w);
                        for i in 0..=n + 1 {
                            let lhs = self.face_word(n + 1, i, &up);
                            let rhs = if i == j || i == j + 1 {
                                self.levels[n].reduce(&w)
                            } else if i < j {
                                self.degen_word(n - 1, j - 1, &self.face_word(n, i, &w))
                            } else {
                                self.degen_word(n - 1, j, &self.face_word(n, i - 1, &w))
                            };
                            if lhs != rhs {
                                return Err(invalid(format!("d{i}s{j} identity fails at level {n}")));
                            }
                        }
                        if n + 1 < t {
                            for i in 0..=j {
                                if self.degen_word(n + 1, i, &up)
                                    != self.degen_word(n + 1, j + 1, &self.degen_word(n, i, &w))
                                {
                                    return Err(invalid(format!("s{i}s{j} identity fails at level {n}")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Presentation of `J^M[X]` for a set action, with the letter behind each
/// generator.
fn jmx_pairs(a: &MAction) -> Result<(Presentation, Vec<Word>, Vec<(usize, usize)>)> {
    let (m, k) = (a.monoid(), a.monoid().size());
    let pairs: Vec<(usize, usize)> = (0..a.size())
        .filter(|&x| x != a.basepoint())
        .flat_map(|x| (0..k).filter(|&e| e != m.identity()).map(move |e| (x, e)))
        .collect();
    let mut letter = vec![None; a.size() * k];
    for (g, &(x, e)) in pairs.iter().enumerate() {
        letter[x * k + e] = Some(g as Letter);
    }
    let w = |x: usize, e: usize| letter[x * k + e].into_iter().collect::<Vec<Letter>>();
    let mut rels = Vec::new();
    for &(x, e) in &pairs {
        let y = a.act(x, e);
        for f in (0..k).filter(|&f| f != m.identity()) {
            rels.push(([w(x, e), w(y, f)].concat(), w(x, m.mul(e, f))));
        }
    }
    let tags = pairs
        .iter()
        .map(|&(x, e)| {
            GenTag::Pair(Box::new(GenTag::Named(a.element_name(x).to_string())), Box::new(GenTag::Element(e)))
        })
        .collect();
    let (p, reps) = collapsed_presentation(tags, &rels)?;
    p.ensure_confluent()?;
    let words = (0..a.size() * k).map(|f| letter[f].map(|g| reps[g as usize].clone()).unwrap_or_default()).collect();
    Ok((p, words, pairs))
}

/// `J^M[X]` for a set action: generators `(x, m)` with `x ≠ *`, `m ≠ 1`, and
/// rules `(x, m)(xm, k) = (x, mk)`, where `(*, m)` and `(x, 1)` are `ε`.
///
/// Also returns the normal form of each pair `(x, m)`, indexed `x·|M| + m`.
pub fn jmx_level(a: &MAction) -> Result<(Presentation, Vec<Word>)> {
    let (p, words, _) = jmx_pairs(a)?;
    Ok((p, words))
}

fn single(w: &Word) -> Result<Option<Letter>> {
    match w.0.as_slice() {
        [] => Ok(None),
        [g] => Ok(Some(*g)),
        _ => Err(invalid("structure map sends a generator to a longer word")),
    }
}

/// `J^M[X]` levelwise, with structure maps `(x, m) ↦ (d_i x, d_i m)`.
pub fn jmx(a: &SMAction) -> Result<FilteredMonoidFamily> {
    let top = a.top();
    let levels: Vec<(Presentation, Vec<Word>, Vec<(usize, usize)>)> =
        crate::par::map_range(top + 1, |n| jmx_pairs(&a.level(n))).into_iter().collect::<Result<_>>()?;
    let tables = a.tables();
    let letter_map = |n: usize, target: usize, obj: &[u32], elem: &dyn Fn(usize) -> usize| -> Result<Vec<Option<Letter>>> {
        let k = a.monoid(target).size();
        levels[n].2.iter().map(|&(x, e)| single(&levels[target].1[obj[x] as usize * k + elem(e)])).collect()
    };
    let mut face = vec![Vec::new()];
    for n in 1..=top {
        face.push(
            (0..=n)
                .map(|i| letter_map(n, n - 1, &tables.face[n][i], &|e| a.monoid_face(n, i, e)))
                .collect::<Result<_>>()?,
        );
    }
    let degen = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| letter_map(n, n + 1, &tables.degen[n][i], &|e| a.monoid_degen(n, i, e)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let f = FilteredMonoidFamily { levels: levels.into_iter().map(|l| l.0).collect(), face, degen };
    f.validate()?;
    Ok(f)
}

/// Discrete monoids accepted by [`tensor_product`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    Finite(FinMonoid),
    /// The natural numbers, free on one generator `t`.
    N,
    /// The integers, on `t` and `t⁻¹`.
    Z,
}

impl MonoidKind {
    pub fn presentation(&self) -> Presentation {
        match self {
            MonoidKind::Finite(m) => m.presentation().0,
            MonoidKind::N => Presentation::free(vec![GenTag::Named("t".into())]),
            MonoidKind::Z => {
                let t = GenTag::Named("t".into());
                Presentation::new(
                    vec![t.clone(), GenTag::Inverse(Box::new(t))],
                    vec![(Word(vec![0, 1]), Word::empty()), (Word(vec![1, 0]), Word::empty())],
                )
                .expect("two letters")
            }
        }
    }
}

fn basepoint_index(tables: &Levelwise, n: usize) -> Result<usize> {
    let mut b = tables.basepoint.ok_or(Error::NoBasepoint)? as usize;
    for k in 0..n {
        b = tables.degen[k][0][b] as usize;
    }
    Ok(b)
}

/// `X ⊗ M`: level `n` is the free product of one copy of `M` per non-basepoint
/// `n`-simplex of `X` (degenerate ones included). Generator `j` of the copy at
/// simplex `x` is sent by each structure map to generator `j` of the copy at
/// the image of `x`, or to `ε` at the basepoint.
pub fn tensor_product(x: &SSetFT, kind: &MonoidKind, top: usize) -> Result<FilteredMonoidFamily> {
    let (tables, _) = Levelwise::materialize(x, top)?;
    let copy = kind.presentation();
    let g = copy.num_generators();
    // copy_of[n][s]: position of simplex s among the non-basepoint n-simplices
    let copy_of: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|n| {
            let b = basepoint_index(&tables, n)?;
            let mut next = 0;
            Ok((0..tables.sizes[n])
                .map(|s| {
                    (s != b).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let levels: Vec<Presentation> = copy_of
        .iter()
        .map(|c| free_product(&vec![copy.clone(); c.iter().flatten().count()]))
        .collect();
    let letter_map = |n: usize, target: usize, obj: &[u32]| -> Vec<Option<Letter>> {
        let mut map = vec![None; levels[n].num_generators()];
        for (s, c) in copy_of[n].iter().enumerate() {
            if let Some(c) = c {
                for j in 0..g {
                    map[c * g + j] = copy_of[target][obj[s] as usize].map(|d| (d * g + j) as Letter);
                }
            }
        }
        map
    };
    let face = (0..=top)
        .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| letter_map(n, n - 1, &tables.face[n][i])).collect() })
        .collect();
    let degen = (0..top).map(|n| (0..=n).map(|i| letter_map(n, n + 1, &tables.degen[n][i])).collect()).collect();
    let f = FilteredMonoidFamily { levels, face, degen };
    f.validate()?;
    Ok(f)
}

/// Compares `J^M[X]` for the trivial action with `X ⊗ M` level by level on the
/// radius-`k` ball, under `(x, m) ↦ m` in the copy at `x`.
pub fn tensor_equals_jmx_trivial(x: &SSetFT, m: &FinMonoid, top: usize, k: usize) -> Result<bool> {
    let x = x.truncate(top);
    let a = SMAction::trivial(&x, m)?;
    let tensor = tensor_product(&x, &MonoidKind::Finite(m.clone()), top)?;
    let (_, elem_gen) = m.presentation();
    let g = m.size() - 1;
    for n in 0..=top {
        let level = a.level(n);
        let (p, _, pairs) = jmx_pairs(&level)?;
        let b = level.basepoint();
        let gmap: Vec<Word> = pairs
            .iter()
            .map(|&(s, e)| {
                let c = if s < b { s } else { s - 1 };
                Word::letter((c * g) as Letter + elem_gen[e].expect("non-identity element"))
            })
            .collect();
        if !ball_isomorphic(&p, &tensor.levels[n], &gmap, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares `J^M[X]` with `U[X//M]` on the radius-`k` ball, under
/// `(x, m) ↦` the morphism `(x, m)`.
pub fn u_of_action_category_iso(a: &MAction, k: usize) -> Result<bool> {
    let (p, _, pairs) = jmx_pairs(a)?;
    let u = reduced_universal_monoid(&a.action_category())?;
    let km = a.monoid().size();
    let gmap: Vec<Word> = pairs.iter().map(|&(x, e)| u.morphism_word[x * km + e].clone()).collect();
    ball_isomorphic(&p, &u.presentation, &gmap, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{simplicial_circle, simplicial_sphere};

    fn s0_z2() -> MAction {
        MAction::trivial(FinMonoid::cyclic(2), 2)
    }

    #[test]
    fn discrete_actions_with_collapsed_generators_validate() {
        for m in (1..=3).flat_map(crate::presentations::enumerate_monoids) {
            for a in (1..=3).flat_map(|n| MAction::enumerate_pointed(&m, n)) {
                jmx(&SMAction::from_discrete(&a, 2).unwrap()).unwrap();
            }
        }
    }

    #[test]
    fn s0_with_z2_is_z2() {
        let (p, words) = jmx_level(&s0_z2()).unwrap();
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.ball(4).unwrap().len(), 2);
        assert_eq!(words[3], Word::letter(0));
    }

    #[test]
    fn trivial_monoid_gives_free_reduced_monoid() {
        let (p, _) = jmx_level(&MAction::trivial(FinMonoid::trivial(), 3)).unwrap();
        assert_eq!(p.num_generators(), 0);
        assert_eq!(p.ball(3).unwrap(), vec![Word::empty()]);
    }

    #[test]
    fn idempotent_example_matches_u() {
        let a = MAction::bad_idempotent();
        assert!(u_of_action_category_iso(&a, 4).unwrap());
        assert!(u_of_action_category_iso(&s0_z2(), 4).unwrap());
        assert!(u_of_action_category_iso(&MAction::trivial(FinMonoid::trivial(), 2), 4).unwrap());
    }

    #[test]
    fn tensor_levels() {
        let s1 = simplicial_circle(3).unwrap();
        let james = tensor_product(&s1, &MonoidKind::N, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(james.levels[n].num_generators(), n);
            assert!(james.levels[n].rules().is_empty());
        }
        let milnor = tensor_product(&s1, &MonoidKind::Z, 2).unwrap();
        // free group on two generators: 1 + 4 + 12 reduced words
        assert_eq!(milnor.levels[2].ball(2).unwrap().len(), 17);
        let s0 = simplicial_sphere(0, 3).unwrap();
        let wu = tensor_product(&s0, &MonoidKind::Finite(FinMonoid::cyclic(2)), 3).unwrap();
        assert!(wu.levels.iter().all(|p| p.ball(4).unwrap().len() == 2));
    }

    #[test]
    fn tensor_matches_jmx_for_trivial_actions() {
        let z2 = FinMonoid::cyclic(2);
        assert!(tensor_equals_jmx_trivial(&simplicial_sphere(0, 3).unwrap(), &z2, 3, 4).unwrap());
        assert!(tensor_equals_jmx_trivial(&simplicial_circle(2).unwrap(), &z2, 2, 3).unwrap());
        assert!(tensor_equals_jmx_trivial(&crate::simplicial::point(2), &z2, 2, 4).unwrap());
    }

    #[test]
    fn jmx_family_of_simplicial_action() {
        let s1 = simplicial_circle(3).unwrap();
        let a = SMAction::trivial(&s1, &FinMonoid::cyclic(2)).unwrap();
        let f = jmx(&a).unwrap();
        assert_eq!(f.trunc(), 3);
        // level n: n non-basepoint simplices, one Z/2 each
        assert_eq!(f.levels[2].ball(2).unwrap().len(), 1 + 2 + 2);
    }

    #[test]
    fn constant_family_rejects_bad_shapes() {
        let p = MonoidKind::N.presentation();
        let mut f = FilteredMonoidFamily::constant(&p, 2).unwrap();
        f.face[1][0] = vec![Some(3)];
        assert!(f.validate().is_err());
    }
}
