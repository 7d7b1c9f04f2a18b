//! Property suites over the registry and exhaustive small corpora.

use std::time::Instant;

use jmx_core::actions::{jmx, tensor_equals_jmx_trivial, u_of_action_category_iso, MAction, MonoidKind, SMAction};
use jmx_core::categories::{
    choose_isos, nerve, reduced_u_coproduct_decomposition, reduced_universal_monoid, universal_monoid, wedge_decompose,
    FinCat,
};
use jmx_core::homology::{homology_groups, smith_normal_form};
use jmx_core::int::Int;
use jmx_core::presentations::{enumerate_monoids, Presentation};
use jmx_core::simplicial::{
    circle_bouquet, find_isomorphism, normalized_chains, quotient, quotient_of_coproduct, reduced_chains,
    relative_chains, simplicial_circle, simplicial_sphere, standard_simplex, wedge, Levelwise, SSetFT, SubComplex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::registry::{registry, Payload};

/// Radius of the balls compared in isomorphism checks.
pub const RADIUS: usize = 4;
/// Truncation at which registry actions are unfolded for the suites.
const TOP: usize = 2;
const SEED: u64 = 0x6a6d78;

pub const SCOPES: [&str; 6] = ["presentations", "actions", "isomorphisms", "categories", "simplicial", "homology"];

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport { name: name.into(), ..SuiteReport::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result<T>(&mut self, r: jmx_core::Result<T>, ok: impl FnOnce(&T) -> bool, what: impl FnOnce() -> String) {
        match r {
            Ok(v) => self.check(ok(&v), what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(scope: &str) -> Option<SuiteReport> {
    let t = Instant::now();
    let mut r = match scope {
        "presentations" => presentations(),
        "actions" => actions(),
        "isomorphisms" => isomorphisms(),
        "categories" => categories(),
        "simplicial" => simplicial(),
        "homology" => homology(),
        _ => return None,
    };
    r.seconds = t.elapsed().as_secs_f64();
    Some(r)
}

fn registry_actions() -> Vec<(&'static str, SMAction)> {
    registry()
        .into_iter()
        .filter_map(|i| match i.payload {
            Payload::Action(f) => Some((i.key, f(TOP).expect("registry actions build"))),
            _ => None,
        })
        .collect()
}

fn pointed(c: FinCat) -> FinCat {
    if c.basepoint().is_some() {
        c
    } else {
        c.with_basepoint(Some(0)).expect("object 0 exists")
    }
}

/// Registry categories together with the levelwise action categories of the
/// registry actions.
fn registry_categories() -> Vec<(String, FinCat)> {
    let mut out: Vec<(String, FinCat)> = registry()
        .into_iter()
        .filter_map(|i| match i.payload {
            Payload::Category(f) => Some((i.key.to_string(), pointed(f()))),
            _ => None,
        })
        .collect();
    for (key, a) in registry_actions() {
        for n in 0..=a.top() {
            out.push((format!("{key}[{n}]//M"), a.level(n).action_category()));
        }
    }
    out
}

fn presentations() -> SuiteReport {
    let mut r = SuiteReport::new("presentations");
    let check = |r: &mut SuiteReport, what: String, p: &Presentation| {
        let pairs = p.critical_pairs();
        r.check(pairs.is_empty(), || format!("{what}: {} unresolved critical pairs", pairs.len()));
    };
    for (name, c) in registry_categories() {
        check(&mut r, format!("U({name})"), &universal_monoid(&c).presentation);
        match reduced_universal_monoid(&c) {
            Ok(u) => check(&mut r, format!("U[{name}]"), &u.presentation),
            Err(e) => r.check(false, || format!("U[{name}]: {e}")),
        }
    }
    for (key, a) in registry_actions() {
        match jmx(&a) {
            Ok(f) => {
                for (n, p) in f.levels.iter().enumerate() {
                    check(&mut r, format!("J^M[X] of {key}, level {n}"), p);
                }
            }
            Err(e) => r.check(false, || format!("J^M[X] of {key}: {e}")),
        }
    }
    r
}

/// All pointed actions of monoids of order `<= 3` on sets of size `<= 3`.
pub fn action_corpus() -> Vec<MAction> {
    (1..=3)
        .flat_map(enumerate_monoids)
        .flat_map(|m| (1..=3).flat_map(move |n| MAction::enumerate_pointed(&m, n)))
        .collect()
}

fn actions() -> SuiteReport {
    let mut r = SuiteReport::new("actions");
    let corpus = action_corpus();
    let (mut holds, mut converse_pairs, mut converse_failures) = (0usize, 0usize, 0usize);
    for a in &corpus {
        let k = a.monoid().size();
        let hyp = a.hypothesis_equiv_check();
        if matches!(hyp, Ok(true)) {
            holds += 1;
        }
        r.check_result(hyp, |_| true, || format!("hypothesis vs equivalence on {:?}", a.table()));
        for m in 0..k {
            let invertible = a.monoid().inverse(m).is_some();
            for x in 0..a.size() {
                let iso = a.iso_criterion_holds(x, m);
                if invertible {
                    r.check(iso, || format!("({x}, {m}) not an isomorphism on {:?}", a.table()));
                } else {
                    converse_pairs += 1;
                    converse_failures += usize::from(iso);
                }
            }
        }
    }
    r.notes.push(format!(
        "corpus: {} actions of {} monoids; hypothesis holds on {holds}",
        corpus.len(),
        (1..=3).map(|n| enumerate_monoids(n).len()).sum::<usize>()
    ));
    r.notes.push(format!(
        "converse: {converse_failures} of {converse_pairs} pairs (x, m) with m non-invertible are isomorphisms"
    ));
    r
}

fn isomorphisms() -> SuiteReport {
    let mut r = SuiteReport::new("isomorphisms");
    for (key, a) in registry_actions() {
        for n in 0..=a.top() {
            r.check_result(u_of_action_category_iso(&a.level(n), RADIUS), |ok| *ok, || {
                format!("J^M[X] vs U[X//M] for {key}, level {n}")
            });
        }
    }
    for i in registry() {
        if let Payload::Tensor { space, monoid: MonoidKind::Finite(m) } = &i.payload {
            let x = space(TOP).expect("registry spaces build");
            r.check_result(tensor_equals_jmx_trivial(&x, m, TOP, RADIUS), |ok| *ok, || {
                format!("X (x) M vs J^M[X] for {}", i.key)
            });
        }
    }
    let s0 = simplicial_sphere(0, TOP).expect("sphere");
    let z2 = jmx_core::presentations::FinMonoid::cyclic(2);
    r.check_result(tensor_equals_jmx_trivial(&s0, &z2, TOP, RADIUS), |ok| *ok, || "S^0 (x) Z/2 vs J^M[S^0]".into());
    for (name, c) in registry_categories() {
        r.check_result(reduced_u_coproduct_decomposition(&c, RADIUS), |ok| *ok, || {
            format!("U[C] as a free product over components of {name}")
        });
    }
    r
}

fn categories() -> SuiteReport {
    let mut r = SuiteReport::new("categories");
    let mut skipped = 0usize;
    for (name, c) in registry_categories() {
        for (ci, objs) in c.components().iter().enumerate() {
            let (sub, _) = c.full_subcategory(objs);
            if sub.num_objects() > 5 || !sub.equivalent_to_totally_disconnected() {
                skipped += 1;
                continue;
            }
            for x in 0..sub.num_objects() {
                let cert = choose_isos(&sub, x).and_then(|isos| wedge_decompose(&sub, x, &isos));
                match cert {
                    Ok(cert) => {
                        let v = cert.verify(&sub);
                        r.check(v.is_ok(), || format!("{name}, component {ci}, base {x}: {}", v.unwrap_err()));
                    }
                    Err(e) => r.check(false, || format!("{name}, component {ci}, base {x}: {e}")),
                }
            }
        }
    }
    r.notes.push(format!("{skipped} components not equivalent to a one-object category or too large"));
    r
}

fn sample_spaces() -> Vec<(String, SSetFT)> {
    let top = 3;
    let mut out = vec![
        ("S^1".to_string(), simplicial_circle(top).expect("circle")),
        ("S^2".to_string(), simplicial_sphere(2, top).expect("sphere")),
        ("S^1 v S^1".to_string(), circle_bouquet(2, top).expect("bouquet")),
        ("D[2]".to_string(), standard_simplex(2, top)),
        ("BZ/2".to_string(), nerve(&FinCat::from_monoid(&jmx_core::presentations::FinMonoid::cyclic(2)), top)),
        ("B[2]".to_string(), nerve(&FinCat::poset(2), top)),
    ];
    for (key, a) in registry_actions() {
        out.push((format!("{key} space"), a.space().clone()));
    }
    out
}

/// `(Δ[n], ∂Δ[n])`, `(Δ[n], vertex)`, and `(X, *)` pairs.
fn sample_pairs() -> Vec<(String, SSetFT, SubComplex)> {
    let top = 3;
    let mut out = Vec::new();
    for n in 1..=2 {
        let d = standard_simplex(n, top);
        let mut members: Vec<Vec<bool>> = d.nondeg_counts().iter().map(|&c| vec![true; c]).collect();
        members[n][0] = false;
        out.push((format!("(D[{n}], boundary)"), d.clone(), SubComplex::new(&d, members).expect("boundary")));
        let vertex = SubComplex::generated_by(&d, &[(0, 0)]);
        out.push((format!("(D[{n}], vertex)"), d.clone(), vertex));
        out.push((format!("(D[{n}], empty)"), d.clone(), SubComplex::empty(&d)));
    }
    for (name, x) in [
        ("S^1", simplicial_circle(top).expect("circle")),
        ("S^1 v S^1", circle_bouquet(2, top).expect("bouquet")),
        ("BZ/2", nerve(&FinCat::from_monoid(&jmx_core::presentations::FinMonoid::cyclic(2)), top)),
    ] {
        let base = SubComplex::basepoint(&x).expect("pointed");
        out.push((format!("({name}, *)"), x, base));
    }
    out
}

fn simplicial() -> SuiteReport {
    let mut r = SuiteReport::new("simplicial");
    for (name, x) in sample_spaces() {
        let top = x.trunc();
        r.check_result(
            Levelwise::materialize(&x, top),
            |(t, _)| t.check_identities(usize::MAX).is_ok(),
            || format!("simplicial identities on {name}"),
        );
        r.check_result(normalized_chains(&x, top - 1), |c| c.check_dd_zero().is_ok(), || format!("dd = 0 on {name}"));
    }
    for (key, a) in registry_actions() {
        let b = jmx_core::actions::borel_model(&a, TOP);
        r.check_result(b, |b| b.diagonal.sset.trunc() == TOP, || format!("Borel model of {key}"));
    }
    let pairs = sample_pairs();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..24 {
        let n = rng.gen_range(1..=3);
        let chosen: Vec<&(String, SSetFT, SubComplex)> = (0..n).map(|_| &pairs[rng.gen_range(0..pairs.len())]).collect();
        let names: Vec<&str> = chosen.iter().map(|p| p.0.as_str()).collect();
        let lhs = quotient_of_coproduct(&chosen.iter().map(|p| (p.1.clone(), p.2.clone())).collect::<Vec<_>>());
        let rhs = chosen.iter().map(|p| quotient(&p.1, &p.2)).collect::<jmx_core::Result<Vec<_>>>().and_then(|q| wedge(&q));
        match (lhs, rhs) {
            (Ok(l), Ok(w)) => {
                r.check(find_isomorphism(&l, &w, true).is_some(), || format!("quotient of coproduct vs wedge: {names:?}"))
            }
            (Err(e), _) | (_, Err(e)) => r.check(false, || format!("quotient of coproduct vs wedge {names:?}: {e}")),
        }
    }
    r
}

/// `det` of a square matrix by fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of the
/// `k × k` minors and the `k`-th factor is `d_k / d_{k-1}`.
pub fn determinantal_factors(a: &[Vec<i64>]) -> Vec<i64> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&i| cs.iter().map(|&j| i128::from(a[i][j])).collect()).collect();
                g = gcd(g, det(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(i64::try_from(g / prev).expect("small factors"));
        prev = g;
    }
    out
}

/// Seeded random integer matrices with entries in `[-9, 9]` and at most six
/// rows and columns, some of them low rank.
pub fn random_matrices(count: usize, seed: u64) -> Vec<Vec<Vec<i64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let mut a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            if rows > 1 && rng.gen_bool(0.3) {
                let (s, t) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
                let f = rng.gen_range(-2..=2);
                a[t] = (0..cols).map(|j| (a[s][j] * f).clamp(-9, 9)).collect();
            }
            a
        })
        .collect()
}

fn homology() -> SuiteReport {
    let mut r = SuiteReport::new("homology");
    for (n, a) in random_matrices(500, SEED).iter().enumerate() {
        let ints: Vec<Vec<Int>> = a.iter().map(|row| row.iter().map(|&v| Int::from(v)).collect()).collect();
        let snf = smith_normal_form(&ints);
        let oracle: Vec<Int> = determinantal_factors(a).into_iter().map(Int::from).collect();
        r.check(snf == oracle, || format!("matrix {n} {a:?}: SNF {snf:?}, oracle {oracle:?}"));
    }
    for (name, x, sub) in sample_pairs() {
        let d = x.trunc() - 1;
        let rel = relative_chains(&x, &sub, d).map(|c| homology_groups(&c));
        let quo = quotient(&x, &sub).and_then(|q| reduced_chains(&q, d)).map(|c| homology_groups(&c));
        match (rel, quo) {
            (Ok(a), Ok(b)) => r.check(a == b, || format!("{name}: relative {a:?}, quotient {b:?}")),
            (Err(e), _) | (_, Err(e)) => r.check(false, || format!("{name}: {e}")),
        }
    }
    r
}
