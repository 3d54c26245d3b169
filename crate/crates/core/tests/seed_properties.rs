mod common;

use common::fixture;
use lpalg::laurent::expand_in_initial;
use lpalg::mutation::{mutate, mutate_word, orbit};
use lpalg::poly::{Monomial, Poly};
use lpalg::seed::{
    denominator_support_violations, exchange_laurent, freeze, hat_is_maximal, hat_to_exchange, seeds_equivalent, validate_seed, LPSeed,
};
use proptest::prelude::*;

const ACTIVE: [&str; 3] = ["a", "b", "c"];

/// Exchange polynomial for position `i`: a nonzero constant plus one or two
/// monomials in the other variables, so it is never divisible by a variable.
fn exchange_strategy(i: usize, frozen: bool) -> impl Strategy<Value = Poly> {
    let total = if frozen { 4 } else { 3 };
    (
        prop_oneof![Just(1i64), Just(-1), Just(2)],
        prop::collection::vec((prop::collection::vec(0i32..=2, 3), -1i32..=1, prop_oneof![Just(1i64), Just(-1), Just(2)]), 1..=2),
    )
        .prop_map(move |(c0, terms)| {
            let mut p = Poly::constant(total, c0);
            for (mut e, z, c) in terms {
                e[i] = 0;
                if e.iter().all(|&x| x == 0) {
                    e[(i + 1) % 3] = 1;
                }
                if frozen {
                    e.push(z);
                }
                p.add_term(Monomial::from_slice(&e), c.into());
            }
            p
        })
        .prop_filter("nonconstant", |p| !p.is_constant())
}

fn seed_strategy() -> impl Strategy<Value = LPSeed> {
    any::<bool>()
        .prop_flat_map(|frozen| (Just(frozen), exchange_strategy(0, frozen), exchange_strategy(1, frozen), exchange_strategy(2, frozen)))
        .prop_filter_map("valid seed", |(frozen, f0, f1, f2)| {
            let fro = if frozen { vec!["z".to_string()] } else { vec![] };
            let s = LPSeed::new(ACTIVE.iter().map(|s| s.to_string()).collect(), fro, vec![f0, f1, f2]).ok()?;
            validate_seed(&s, true).valid.then_some(s)
        })
}

/// The same seed with every exchange polynomial rescaled by a unit.
fn rescaled(s: &LPSeed, signs: &[bool], zpow: &[i32]) -> LPSeed {
    let total = s.nvars();
    let exchange = s
        .exchange()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut f = if signs[i] { -f } else { f.clone() };
            if total > s.rank() {
                f = f.mul_monomial(&Monomial::var(total, s.rank()).pow(zpow[i]));
            }
            f
        })
        .collect::<Vec<Poly>>();
    // through the file format, so the expansions in the root ring are kept
    let mut v = s.to_json();
    for (i, f) in exchange.iter().enumerate() {
        v["exchange"][s.name(i)] = s.format(f).into();
    }
    LPSeed::from_json(&v).unwrap()
}

fn check_hat_invariants(s: &LPSeed) -> Result<(), TestCaseError> {
    let h = exchange_laurent(s).unwrap();
    let normalized: Vec<Poly> = s.exchange().iter().map(Poly::sign_normalized).collect();
    prop_assert_eq!(hat_to_exchange(&h, s.rank()), normalized);
    // the literal substitution oracle expands F_k^{deg_k F_j}; keep it cheap
    let moderate = (0..s.rank()).all(|k| s.exchange().iter().all(|f| f.degree_in(k) <= 8));
    if moderate {
        prop_assert!(hat_is_maximal(s, &h).unwrap());
    }
    prop_assert!(denominator_support_violations(s, &h).is_empty());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn hat_invariants_along_mutations(s in seed_strategy(), word in prop::collection::vec(0usize..3, 0..=3)) {
        check_hat_invariants(&s)?;
        let mut cur = s;
        for k in word {
            cur = mutate(&cur, k).unwrap();
            prop_assert!(validate_seed(&cur, false).valid);
            check_hat_invariants(&cur)?;
        }
    }

    #[test]
    fn mutation_is_an_involution(s in seed_strategy(), k in 0usize..3) {
        let back = mutate(&mutate(&s, k).unwrap(), k).unwrap();
        prop_assert!(seeds_equivalent(&s, &back, false).is_some());
    }

    #[test]
    fn mutation_respects_unit_rescaling(
        s in seed_strategy(),
        k in 0usize..3,
        signs in prop::collection::vec(any::<bool>(), 3),
        zpow in prop::collection::vec(-2i32..=2, 3),
    ) {
        let t = rescaled(&s, &signs, &zpow);
        prop_assert!(seeds_equivalent(&s, &t, false).is_some());
        let ms = mutate(&s, k).unwrap();
        let mt = mutate(&t, k).unwrap();
        prop_assert!(seeds_equivalent(&ms, &mt, false).is_some());
    }

    #[test]
    fn freezing_commutes_with_mutation(s in seed_strategy(), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let left = freeze(&mutate(&s, j).unwrap(), i).unwrap();
        let j2 = if j > i { j - 1 } else { j };
        let right = mutate(&freeze(&s, i).unwrap(), j2).unwrap();
        prop_assert!(seeds_equivalent(&left, &right, false).is_some());
    }

    #[test]
    fn expansions_ignore_repeated_letters(s in seed_strategy(), w in prop::collection::vec(0usize..3, 0..=2), k in 0usize..3, i in 0usize..3) {
        let mut wkk = w.clone();
        wkk.extend([k, k]);
        prop_assert_eq!(expand_in_initial(&s, &wkk, i).unwrap(), expand_in_initial(&s, &w, i).unwrap());
    }

    #[test]
    fn cluster_variables_are_laurent(s in seed_strategy(), w in prop::collection::vec(0usize..3, 1..=3)) {
        let t = mutate_word(&s.as_root(), &w).unwrap();
        for e in t.expansions() {
            prop_assert!(e.is_laurent(), "{} after {:?}", t.format_root(e), w);
        }
    }
}

/// Fixtures, their neighbours and unit rescalings of both.
fn population() -> Vec<LPSeed> {
    let mut out = Vec::new();
    for name in ["ex2_6", "ex2_16", "ex4_11", "ex4_24"] {
        let s = fixture(name);
        let n = s.rank();
        for t in orbit(&s, 1, false).unwrap().nodes {
            out.push(rescaled(&t, &vec![true; n], &vec![1; n]));
            out.push(t);
        }
    }
    out
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let pop = population();
    let m = pop.len();
    let eq: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| seeds_equivalent(&pop[i], &pop[j], false).is_some()).collect()).collect();
    let mut classes = 0;
    for i in 0..m {
        assert!(eq[i][i], "reflexive at {i}");
        for j in 0..m {
            assert_eq!(eq[i][j], eq[j][i], "symmetric at {i}, {j}");
            for k in 0..m {
                if eq[i][j] && eq[j][k] {
                    assert!(eq[i][k], "transitive at {i}, {j}, {k}");
                }
            }
        }
        if (0..i).all(|j| !eq[i][j]) {
            classes += 1;
        }
    }
    // each seed and its rescaling share a class
    assert_eq!(classes * 2, m);
}

#[test]
fn fixture_orbits_keep_the_hat_invariants() {
    for name in ["ex2_6", "ex2_16", "ex4_11", "ex4_24"] {
        for s in orbit(&fixture(name), 2, false).unwrap().nodes {
            check_hat_invariants(&s).unwrap();
            assert!(validate_seed(&s, false).valid);
        }
    }
}
