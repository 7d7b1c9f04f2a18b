use jmx_core::categories::{nerve, FinCat};
use jmx_core::homology::{homology_groups, smith_normal_form, sparse_invariant_factors, HomologyGroup};
use jmx_core::int::Int;
use jmx_core::presentations::FinMonoid;
use jmx_core::simplicial::{circle_bouquet, normalized_chains, product, simplicial_sphere, ChainComplex, SparseMatrix};
use proptest::prelude::*;

fn det(a: &[Vec<i64>]) -> i64 {
    // Laplace expansion along the first row
    if a.len() == 1 {
        return a[0][0];
    }
    (0..a.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..n)
        .flat_map(|last| {
            choose(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// `d_k / d_{k-1}` where `d_k` is the gcd of all `k × k` minors.
fn oracle(a: &[Vec<i64>]) -> Vec<Int> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in choose(rows, k) {
            for cs in choose(cols, k) {
                let m: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd(g, det(&m));
            }
        }
        if g == 0 {
            break;
        }
        out.push(Int::from(g / prev));
        prev = g;
    }
    out
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn ints(a: &[Vec<i64>]) -> Vec<Vec<Int>> {
    a.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_matches_determinantal_divisors(a in matrix()) {
        let snf = smith_normal_form(&ints(&a));
        prop_assert_eq!(&snf, &oracle(&a));
        for w in snf.windows(2) {
            prop_assert!(w[1].div_rem(&w[0]).1.is_zero());
        }
        let sparse = SparseMatrix::from_dense(a.len(), a[0].len(), &ints(&a));
        prop_assert_eq!(sparse_invariant_factors(&sparse), snf);
    }
}

#[test]
fn snf_examples() {
    let m = |v: &[&[i64]]| v.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    assert_eq!(smith_normal_form(&ints(&m(&[&[2, 4], &[6, 8]]))), oracle(&m(&[&[2, 4], &[6, 8]])));
    assert!(smith_normal_form(&ints(&m(&[&[0, 0, 0]]))).is_empty());
}

fn permute(c: &ChainComplex, perms: &[Vec<usize>]) -> ChainComplex {
    let top = c.top_degree();
    let boundaries = (1..=top)
        .map(|n| {
            let b = c.boundary(n);
            let rows = c.rank(n - 1);
            let cols = (0..c.rank(n))
                .map(|j| {
                    let mut col: Vec<(u32, Int)> = b
                        .column(perms[n][j])
                        .iter()
                        .map(|(r, v)| (perms[n - 1].iter().position(|&p| p == *r as usize).unwrap() as u32, v.clone()))
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            SparseMatrix::from_columns(rows, cols)
        })
        .collect();
    ChainComplex::new(c.ranks().to_vec(), boundaries).unwrap()
}

fn spaces() -> Vec<ChainComplex> {
    let bz3 = nerve(&FinCat::from_monoid(&FinMonoid::cyclic(3)), 4);
    let torus = product(&simplicial_sphere(1, 3).unwrap(), &simplicial_sphere(1, 3).unwrap()).unwrap();
    vec![
        normalized_chains(&bz3, 3).unwrap(),
        normalized_chains(&torus, 2).unwrap(),
        normalized_chains(&circle_bouquet(3, 2).unwrap(), 1).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homology_ignores_basis_order(which in 0usize..3, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let c = &spaces()[which];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = c.ranks().iter().map(|&r| {
            let mut p: Vec<usize> = (0..r).collect();
            p.shuffle(&mut rng);
            p
        }).collect();
        let shuffled = permute(c, &perms);
        prop_assert!(shuffled.check_dd_zero().is_ok());
        prop_assert_eq!(homology_groups(&shuffled), homology_groups(c));
    }
}

#[test]
fn known_spaces() {
    let g = |s: &str| HomologyGroup::parse(s).unwrap();
    let h = spaces().iter().map(homology_groups).collect::<Vec<_>>();
    assert_eq!(h[0], vec![g("Z"), g("Z/3"), g("0"), g("Z/3")]);
    assert_eq!(h[1], vec![g("Z"), g("Z^2"), g("Z")]);
    assert_eq!(h[2], vec![g("Z"), g("Z^3")]);
}
