use jmx_core::actions::{borel_model, MAction, SMAction};
use jmx_core::categories::{nerve, FinCat};
use jmx_core::homology::{homology_groups, HomologyGroup};
use jmx_core::presentations::FinMonoid;
use jmx_core::simplicial::{coproduct, normalized_chains, point, simplicial_sphere};

fn g(s: &str) -> HomologyGroup {
    HomologyGroup::parse(s).unwrap()
}

#[test]
fn trivial_z2_on_s0_cofiber_is_bz2() {
    let a = SMAction::trivial(&simplicial_sphere(0, 4).unwrap(), &FinMonoid::cyclic(2)).unwrap();
    let b = borel_model(&a, 4).unwrap();
    let h = homology_groups(&b.cofiber_chains(3).unwrap());
    assert_eq!(h, vec![g("0"), g("Z/2"), g("0"), g("Z/2")]);
}

#[test]
fn trivial_z2_on_s0_total_space_is_two_copies_of_bz2() {
    let a = SMAction::trivial(&simplicial_sphere(0, 4).unwrap(), &FinMonoid::cyclic(2)).unwrap();
    let b = borel_model(&a, 4).unwrap();
    let bz2 = nerve(&FinCat::from_monoid(&FinMonoid::cyclic(2)), 4);
    let oracle = homology_groups(&normalized_chains(&coproduct(&[bz2.clone(), bz2]).unwrap(), 3).unwrap());
    assert_eq!(homology_groups(&normalized_chains(&b.diagonal.sset, 3).unwrap()), oracle);
}

/// The free orbit `{a, b}` contributes a contractible component.
#[test]
fn swap_on_two_points_adds_a_contractible_component() {
    let swap = MAction::new(
        FinMonoid::cyclic(2),
        vec!["*".into(), "a".into(), "b".into()],
        0,
        vec![vec![0, 0], vec![1, 2], vec![2, 1]],
    )
    .unwrap();
    let b = borel_model(&SMAction::from_discrete(&swap, 4).unwrap(), 4).unwrap();
    let bz2 = nerve(&FinCat::from_monoid(&FinMonoid::cyclic(2)), 4);
    let oracle = homology_groups(&normalized_chains(&coproduct(&[bz2, point(4)]).unwrap(), 3).unwrap());
    let h = homology_groups(&normalized_chains(&b.diagonal.sset, 3).unwrap());
    assert_eq!(h, oracle);
    assert_eq!(h, vec![g("Z^2"), g("Z/2"), g("0"), g("Z/2")]);
}
