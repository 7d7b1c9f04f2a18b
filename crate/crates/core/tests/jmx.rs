use jmx_core::actions::{jmx, tensor_equals_jmx_trivial, u_of_action_category_iso, MAction, SMAction};
use jmx_core::presentations::{enumerate_monoids, FinMonoid};
use jmx_core::simplicial::{simplicial_circle, simplicial_sphere};
use proptest::prelude::*;

fn corpus() -> Vec<MAction> {
    (1..=3)
        .flat_map(enumerate_monoids)
        .flat_map(|m| (1..=3).flat_map(move |n| MAction::enumerate_pointed(&m, n)))
        .collect()
}

fn small_monoids() -> Vec<FinMonoid> {
    (1..=3).flat_map(enumerate_monoids).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn jmx_levels_are_confluent_and_match_u(i in 0usize..93) {
        let a = &corpus()[i];
        prop_assert!(u_of_action_category_iso(a, 4).unwrap());
        let f = jmx(&SMAction::from_discrete(a, 2).unwrap()).unwrap();
        for p in &f.levels {
            prop_assert!(p.critical_pairs().is_empty());
        }
    }

    #[test]
    fn structure_maps_never_lengthen_words(m in 0usize..10, sphere in 0usize..2) {
        let x = if sphere == 0 { simplicial_sphere(0, 3).unwrap() } else { simplicial_circle(3).unwrap() };
        let f = jmx(&SMAction::trivial(&x, &small_monoids()[m]).unwrap()).unwrap();
        for n in 0..f.trunc() {
            for w in f.levels[n + 1].ball(4).unwrap() {
                for i in 0..=n + 1 {
                    prop_assert!(f.face_word(n + 1, i, &w.0).len() <= w.len());
                }
            }
            for w in f.levels[n].ball(4).unwrap() {
                for i in 0..=n {
                    prop_assert!(f.degen_word(n, i, &w.0).len() <= w.len());
                }
            }
        }
    }

    #[test]
    fn tensor_is_jmx_of_trivial_action(m in 0usize..10, sphere in 0usize..2) {
        let x = if sphere == 0 { simplicial_sphere(0, 2).unwrap() } else { simplicial_circle(2).unwrap() };
        prop_assert!(tensor_equals_jmx_trivial(&x, &small_monoids()[m], 2, 4).unwrap());
    }
}

#[test]
fn corpus_size() {
    assert_eq!(corpus().len(), 93);
}
