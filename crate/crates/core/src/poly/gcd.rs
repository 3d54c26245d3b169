//! Multivariate gcd over the integers by recursive primitive polynomial
//! remainder sequences, one variable at a time.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::division::exact_div_poly;
use super::sparse::Poly;
use crate::error::{Error, Result};

/// Greatest common divisor, normalized so that the integer content is positive and
/// the sign is canonical.
///
/// If both arguments are polynomials the gcd is taken in the polynomial ring
/// (common monomial factors included). Otherwise it is taken in the Laurent ring,
/// where monomials are units and the result has no monomial factor.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::Domain("gcd(0, 0) is undefined".into()));
    }
    let n = p.nvars();
    if p.is_zero() || q.is_zero() {
        let r = if p.is_zero() { q } else { p };
        return Ok(if r.is_polynomial() { normalize(r) } else { strip_monomial(r) });
    }
    let mp = p.min_exponents();
    let mq = q.min_exponents();
    let pp = p.mul_monomial(&mp.inv());
    let qq = q.mul_monomial(&mq.inv());
    let g = gcd_rec(&pp, &qq);
    if p.is_polynomial() && q.is_polynomial() {
        Ok(normalize(&g.mul_monomial(&mp.gcd(&mq))))
    } else {
        debug_assert_eq!(g.nvars(), n);
        Ok(g)
    }
}

/// True when `g` is ±1.
pub fn is_trivial_gcd(g: &Poly) -> bool {
    g.is_unit()
}

fn strip_monomial(p: &Poly) -> Poly {
    normalize(&p.mul_monomial(&p.min_exponents().inv()))
}

fn normalize(p: &Poly) -> Poly {
    p.sign_normalized()
}

/// Gcd of two polynomials with nonnegative exponents.
pub(crate) fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        let c = a.integer_content().gcd(&b.integer_content());
        return Poly::constant(a.nvars(), c);
    }
    if a == b || a == &-b {
        return normalize(a);
    }
    // cheap divisibility shortcut
    let (small, big) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if exact_div_poly(big, small).is_some() {
        return normalize(small);
    }

    let va = a.support_vars();
    let vb = b.support_vars();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_with_coeffs(b, a, v);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_with_coeffs(a, b, v);
    }
    // main variable: the common one of least degree
    let v = *va.iter().min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v)).expect("non-constant");

    let (ca, pa) = content_and_primitive(a, v);
    let (cb, pb) = content_and_primitive(b, v);
    let c = gcd_rec(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    normalize(&(&c * &g))
}

/// gcd(a, b) where `v` occurs in `b` but not in `a`: fold `a` against the
/// coefficients of `b` in `v`.
fn gcd_with_coeffs(a: &Poly, b: &Poly, v: usize) -> Poly {
    let mut g = a.clone();
    let coeffs = b.coeffs_in(v);
    let mut cs: Vec<&Poly> = coeffs.values().collect();
    cs.sort_by_key(|c| c.num_terms());
    for c in cs {
        g = gcd_rec(&g, c);
        if g.is_unit() {
            return Poly::one(a.nvars());
        }
    }
    normalize(&g)
}

/// Content with respect to `v` (gcd of the coefficients) and the primitive part.
pub(crate) fn content_and_primitive(p: &Poly, v: usize) -> (Poly, Poly) {
    let coeffs = p.coeffs_in(v);
    let mut cs: Vec<&Poly> = coeffs.values().collect();
    cs.sort_by_key(|c| c.num_terms());
    let mut g = Poly::zero(p.nvars());
    for c in cs {
        g = gcd_rec(&g, c);
        if g.is_unit() {
            break;
        }
    }
    if g.is_unit() {
        return (Poly::one(p.nvars()), p.clone());
    }
    let prim = exact_div_poly(p, &g).expect("content divides its polynomial");
    (g, prim)
}

fn lc_in(p: &Poly, v: usize) -> (i32, Poly) {
    let mut coeffs: BTreeMap<i32, Poly> = p.coeffs_in(v);
    let (d, c) = coeffs.pop_last().expect("nonzero");
    (d, c)
}

/// Sparse pseudo-remainder of `a` by `b` in `v`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (db, lb) = lc_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let (_, lr) = lc_in(&r, v);
        let shift = super::monomial::Monomial::var(r.nvars(), v).pow(dr - db);
        let t = &(&lr * b).mul_monomial(&shift);
        r = &(&lb * &r) - t;
    }
    r
}

/// Primitive PRS; both inputs primitive in `v` and of positive degree in `v`.
fn primitive_prs(mut a: Poly, mut b: Poly, v: usize) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return content_and_primitive(&a, v).1.sign_normalized();
        }
        if b.degree_in(v) == 0 {
            return Poly::one(a.nvars());
        }
        let r = prem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { content_and_primitive(&r, v).1 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(s: &str, vars: &[&str]) -> Poly {
        parse_poly(s, vars).unwrap()
    }

    #[test]
    fn univariate_common_root() {
        let v = ["x"];
        assert_eq!(gcd(&p("x^2-1", &v), &p("x^2-2*x+1", &v)).unwrap(), p("x-1", &v));
    }

    #[test]
    fn coprime_exchange_pair() {
        let v = ["a", "b", "c"];
        assert!(gcd(&p("a+c", &v), &p("a+(a+1)*b", &v)).unwrap().is_one());
    }

    #[test]
    fn zero_argument_conventions() {
        let v = ["x", "y"];
        assert_eq!(gcd(&p("-2*x-2", &v), &Poly::zero(2)).unwrap(), p("2*x+2", &v));
        assert!(gcd(&Poly::zero(2), &Poly::zero(2)).is_err());
    }

    #[test]
    fn monomial_and_integer_factors() {
        let v = ["x", "y"];
        assert_eq!(gcd(&p("6*x^2*y", &v), &p("4*x*y^3", &v)).unwrap(), p("2*x*y", &v));
        assert_eq!(gcd(&p("x^-1*(x+y)", &v), &p("y^-2*(x+y)*(x-y)", &v)).unwrap(), p("x+y", &v));
    }

    #[test]
    fn multivariate_shared_factor() {
        let v = ["x", "y", "z"];
        let g = p("x*y + z^2 - 3", &v);
        let a = &g * &p("x - y + 2", &v);
        let b = &g * &p("x*z + 1", &v);
        assert_eq!(gcd(&a, &b).unwrap(), g.sign_normalized());
    }
}
