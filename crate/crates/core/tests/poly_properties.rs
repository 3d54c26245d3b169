use lpalg::poly::{exact_div, gcd, lex_first, monomial_content, substitute, Monomial, Poly, RationalFn};
use proptest::prelude::*;

const NVARS: usize = 4;

/// Sparse polynomial in `NVARS` variables of total degree at most 6 with
/// coefficients in [-9, 9].
fn poly_strategy(nvars: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0i32..=6, nvars), -9i64..=9), 1..=max_terms).prop_map(move |terms| {
        let mut p = Poly::zero(nvars);
        for (mut e, c) in terms {
            while e.iter().sum::<i32>() > 6 {
                let i = e.iter().enumerate().max_by_key(|(_, x)| **x).map(|(i, _)| i).unwrap();
                e[i] -= 1;
            }
            p.add_term(Monomial::from_slice(&e), c.into());
        }
        p
    })
}

fn nonzero(nvars: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(nvars, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn laurent_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, NVARS), -9i64..=9), 1..=5)
        .prop_map(|terms| {
            let mut p = Poly::zero(NVARS);
            for (e, c) in terms {
                p.add_term(Monomial::from_slice(&e), c.into());
            }
            p
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn exact_div_round_trip(p in nonzero(NVARS, 5), q in nonzero(NVARS, 4)) {
        let pq = &p * &q;
        prop_assert_eq!(exact_div(&pq, &q).unwrap(), Some(p.clone()));
        if let Some(r) = exact_div(&p, &q).unwrap() {
            prop_assert_eq!(&q * &r, p);
        }
    }

    #[test]
    fn lex_first_is_multiplicative(p in laurent_strategy(), q in laurent_strategy()) {
        let lp = lex_first(&p).unwrap();
        let lq = lex_first(&q).unwrap();
        prop_assert_eq!(lex_first(&(&p * &q)).unwrap(), lp.mul(&lq));
    }

    #[test]
    fn monomial_content_round_trip(p in laurent_strategy()) {
        let (m, q) = monomial_content(&p).unwrap();
        prop_assert_eq!(q.mul_term(&m), p);
        for v in 0..NVARS {
            prop_assert_eq!(q.min_degree_in(v), 0);
        }
    }

    #[test]
    fn identity_substitution(p in laurent_strategy(), v in 0..NVARS) {
        let r = substitute(&p, v, &RationalFn::var(NVARS, v)).unwrap();
        prop_assert_eq!(r.to_laurent(), Some(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn gcd_laws(a in nonzero(NVARS, 3), b in nonzero(NVARS, 3), c in nonzero(NVARS, 3), shared in nonzero(NVARS, 2)) {
        // a shared factor makes most gcds nontrivial
        let p = &a * &shared;
        let q = &b * &shared;
        let g = gcd(&p, &q).unwrap();
        prop_assert!(exact_div(&p, &g).unwrap().is_some());
        prop_assert!(exact_div(&q, &g).unwrap().is_some());
        prop_assert!(exact_div(&g, &shared).unwrap().is_some());
        prop_assert_eq!(&gcd(&q, &p).unwrap(), &g);
        let left = gcd(&g, &c).unwrap();
        let right = gcd(&p, &gcd(&q, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
