//! Independent oracles shared by the integration tests. They work from the
//! definitions with plain rational-function arithmetic and never call the
//! bounds module.

#![allow(dead_code)]

use lpalg::poly::{compose, parse_poly, Monomial, Poly, RationalFn};
use lpalg::seed::{exchange_laurent, LPSeed};
use rand::rngs::StdRng;
use rand::Rng;

pub fn fixture(name: &str) -> LPSeed {
    let text = match name {
        "ex2_6" => include_str!("../../fixtures/ex2_6.json"),
        "ex2_16" => include_str!("../../fixtures/ex2_16.json"),
        "ex4_11" => include_str!("../../fixtures/ex4_11.json"),
        "ex4_24" => include_str!("../../fixtures/ex4_24.json"),
        other => panic!("no LP fixture {other}"),
    };
    LPSeed::from_json_str(text).unwrap()
}

pub fn ratfn(p: &Poly) -> RationalFn {
    RationalFn::from_poly(p)
}

/// `x'_j = F̂_j / x_j` in the seed's own variables.
pub fn x_prime(s: &LPSeed, j: usize) -> RationalFn {
    let hat = exchange_laurent(s).unwrap();
    let total = s.nvars();
    ratfn(&hat.hat[j]).div(&RationalFn::var(total, j)).unwrap()
}

/// The field element `y` written in the adjacent cluster `μ_j(x)`, where the
/// new variable sits at position `j`: substitute `x_j = F̂_j / x'_j`.
pub fn in_adjacent_cluster(s: &LPSeed, j: usize, y: &RationalFn) -> RationalFn {
    let hat = exchange_laurent(s).unwrap();
    let total = s.nvars();
    let mut values: Vec<RationalFn> = (0..total).map(|v| RationalFn::var(total, v)).collect();
    values[j] = ratfn(&hat.hat[j]).div(&RationalFn::var(total, j)).unwrap();
    compose(y.num(), &values).unwrap().div(&compose(y.den(), &values).unwrap()).unwrap()
}

/// A reduced fraction is a Laurent polynomial iff its denominator is a
/// monomial with unit coefficient.
pub fn denominator_is_monomial(r: &RationalFn) -> bool {
    let d = r.den();
    d.num_terms() == 1 && d.terms().all(|(_, c)| c == &1.into() || c == &(-1).into())
}

/// The upper bound by definition: Laurent in the cluster and in each of the
/// `n` adjacent clusters.
pub fn upper_bound_oracle(s: &LPSeed, y: &RationalFn) -> bool {
    denominator_is_monomial(y) && (0..s.rank()).all(|j| denominator_is_monomial(&in_adjacent_cluster(s, j, y)))
}

/// `x^{(a)}` expanded with rational-function arithmetic.
pub fn standard_monomial(s: &LPSeed, a: &[i32]) -> Poly {
    let total = s.nvars();
    let mut r = RationalFn::one(total);
    for (i, &e) in a.iter().enumerate() {
        let base = if e >= 0 { RationalFn::var(total, i) } else { x_prime(s, i) };
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
    }
    assert!(denominator_is_monomial(&r));
    let sign = r.den().terms().next().map(|(_, c)| c.clone()).unwrap();
    let m = r.den().terms().next().map(|(m, _)| m.clone()).unwrap();
    r.num().mul_monomial(&m.inv()).scale(&sign)
}

/// Smallest active exponent vector of `p` by a linear scan, with its
/// coefficient in the frozen variables.
pub fn brute_lex_first(p: &Poly, rank: usize) -> (Vec<i32>, Poly) {
    let mut best: Option<Vec<i32>> = None;
    for (m, _) in p.terms() {
        let e = m.exps()[..rank].to_vec();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    }
    let best = best.expect("nonzero");
    let mut coeff = Poly::zero(p.nvars());
    for (m, c) in p.terms() {
        if m.exps()[..rank] == best[..] {
            let mut rest = m.exps().to_vec();
            rest[..rank].iter_mut().for_each(|e| *e = 0);
            coeff.add_term(Monomial::from_slice(&rest), c.clone());
        }
    }
    (best, coeff)
}

/// Random polynomial in one variable of a two-variable ring (plus an optional
/// frozen variable), with nonzero constant term so that it is not divisible by
/// the variable.
fn random_univariate(rng: &mut StdRng, var: &str, frozen: Option<&str>) -> String {
    let deg = rng.gen_range(1..=3);
    let mut terms = vec![format!("{}", rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 })];
    for d in 1..=deg {
        let c: i32 = rng.gen_range(-3..=3);
        if c == 0 && d < deg {
            continue;
        }
        let c = if c == 0 { 1 } else { c };
        let z = match frozen {
            Some(z) if rng.gen_bool(0.4) => format!("*{z}^{}", rng.gen_range(-1..=1)),
            _ => String::new(),
        };
        terms.push(format!("({c})*{var}^{d}{z}"));
    }
    terms.join(" + ")
}

/// Random rank-2 seed, with an occasional frozen variable.
pub fn random_rank2_seed(rng: &mut StdRng) -> LPSeed {
    loop {
        let frozen = rng.gen_bool(0.3);
        let (act, fro): (&[&str], &[&str]) = if frozen { (&["x1", "x2"], &["z"]) } else { (&["x1", "x2"], &[]) };
        let z = frozen.then_some("z");
        let f1 = random_univariate(rng, "x2", z);
        let f2 = random_univariate(rng, "x1", z);
        let Ok(s) = LPSeed::from_strings(act, fro, &[&f1, &f2]) else { continue };
        if lpalg::seed::validate_seed(&s, true).valid {
            return s;
        }
    }
}

/// Random sample in the field: a polynomial in `x_i^{±1}` and `x'_i`.
pub fn random_sample(rng: &mut StdRng, s: &LPSeed) -> RationalFn {
    let total = s.nvars();
    let mut acc = RationalFn::zero(total);
    for _ in 0..rng.gen_range(1..=3) {
        let mut t = RationalFn::from_poly(&Poly::constant(total, rng.gen_range(1i32..=2) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        for i in 0..s.rank() {
            let e: i32 = rng.gen_range(-1..=2);
            let base = if e >= 0 { RationalFn::var(total, i) } else { RationalFn::var(total, i).inv().unwrap() };
            for _ in 0..e.unsigned_abs() {
                t = t.mul(&base);
            }
            for _ in 0..rng.gen_range(0..=1) {
                t = t.mul(&x_prime(s, i));
            }
        }
        acc = acc.add(&t);
    }
    if acc.is_zero() {
        RationalFn::one(total)
    } else {
        acc
    }
}

pub fn poly(s: &str, names: &[&str]) -> Poly {
    parse_poly(s, names).unwrap()
}
