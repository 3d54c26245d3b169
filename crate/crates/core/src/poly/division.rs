use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::{Monomial, Term};
use super::sparse::Poly;
use crate::error::{Error, Result};

/// Exact quotient `p / q`, or `None` when `q` does not divide `p`.
///
/// For two polynomials the division happens in the polynomial ring; as soon as
/// either argument carries a negative exponent it happens in the Laurent ring,
/// where monomials are units.
pub fn exact_div(p: &Poly, q: &Poly) -> Result<Option<Poly>> {
    if q.is_zero() {
        return Err(Error::Domain("division by the zero polynomial".into()));
    }
    if p.is_zero() {
        return Ok(Some(Poly::zero(p.nvars())));
    }
    let laurent = !(p.is_polynomial() && q.is_polynomial());
    let mp = p.min_exponents();
    let mq = q.min_exponents();
    let pp = p.mul_monomial(&mp.inv());
    let qq = q.mul_monomial(&mq.inv());
    let Some(s) = exact_div_poly(&pp, &qq) else {
        return Ok(None);
    };
    let shift = mp.div(&mq);
    if !laurent && !shift.is_polynomial() {
        return Ok(None);
    }
    Ok(Some(s.mul_monomial(&shift)))
}

/// Division of polynomials with nonnegative exponents by the lex leading term.
pub(crate) fn exact_div_poly(p: &Poly, q: &Poly) -> Option<Poly> {
    debug_assert!(!q.is_zero());
    if p.is_zero() {
        return Some(Poly::zero(p.nvars()));
    }
    if q.is_monomial() {
        let t = q.lex_first().expect("nonzero");
        if !t.monomial.divides(&p.min_exponents()) {
            return None;
        }
        if p.terms().any(|(_, c)| !c.is_multiple_of(&t.coeff)) {
            return None;
        }
        return Some(Poly::from_terms(p.nvars(), p.terms().map(|(m, c)| (m.div(&t.monomial), c / &t.coeff))));
    }
    let n = p.nvars();
    // the quotient's degree in each variable is fixed by the inputs
    let mut bound = Vec::with_capacity(n);
    for v in 0..n {
        let d = p.degree_in(v) - q.degree_in(v);
        if d < 0 {
            return None;
        }
        bound.push(d);
    }
    if q.num_terms() > p.num_terms() && q.total_degree() > p.total_degree() {
        return None;
    }
    let lead = q.lex_last().expect("nonzero");
    let mut rem = p.clone();
    let mut quot = Poly::zero(n);
    while let Some(lt) = rem.lex_last() {
        if !lead.monomial.divides(&lt.monomial) {
            return None;
        }
        let (qc, r) = lt.coeff.div_rem(&lead.coeff);
        if !r.is_zero() {
            return None;
        }
        let qm = lt.monomial.div(&lead.monomial);
        if qm.exps().iter().zip(&bound).any(|(e, b)| e > b) {
            return None;
        }
        for (m, c) in q.terms() {
            rem.add_term(m.mul(&qm), -(c * &qc));
        }
        quot.add_term(qm, qc);
    }
    Some(quot)
}

/// Split `p = m · q` where `m` is a signed Laurent monomial and `q` is a polynomial
/// whose every variable has minimum exponent 0 and whose sign is canonical.
pub fn monomial_content(p: &Poly) -> Result<(Term, Poly)> {
    monomial_content_in(p, |_| true)
}

/// As [`monomial_content`], but only variables selected by `select` are cleared.
pub fn monomial_content_in(p: &Poly, select: impl Fn(usize) -> bool) -> Result<(Term, Poly)> {
    if p.is_zero() {
        return Err(Error::Domain("monomial content of the zero polynomial".into()));
    }
    let mins = p.min_exponents();
    let mut m = Monomial::one(p.nvars());
    for v in 0..p.nvars() {
        if select(v) {
            m.exps_mut()[v] = mins.get(v);
        }
    }
    let q = p.mul_monomial(&m.inv());
    let (sign, q) = if q.is_sign_normalized() { (BigInt::one(), q) } else { (-BigInt::one(), -q) };
    Ok((Term::new(sign, m), q))
}

/// Primitive part with respect to integer content, sign normalized.
pub fn primitive_integer_part(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = p.integer_content();
    let q = if c.is_one() { p.clone() } else { p.div_scalar_exact(&c) };
    q.sign_normalized()
}

/// Unit of the Laurent ring relating `a` and `b`: returns `(±1, m)` with
/// `b = ±m · a`, where `m` is a monomial whose support is restricted by `allowed`.
pub fn unit_ratio(a: &Poly, b: &Poly, allowed: impl Fn(usize) -> bool) -> Option<Term> {
    if a.num_terms() != b.num_terms() || a.is_zero() {
        return None;
    }
    let ta = a.lex_first()?;
    let tb = b.lex_first()?;
    let sign = if ta.coeff == tb.coeff {
        BigInt::one()
    } else if ta.coeff == -tb.coeff.clone() {
        -BigInt::one()
    } else {
        return None;
    };
    let shift = tb.monomial.div(&ta.monomial);
    if shift.exps().iter().enumerate().any(|(i, &e)| e != 0 && !allowed(i)) {
        return None;
    }
    let candidate = a.mul_term(&Term::new(sign.clone(), shift.clone()));
    if &candidate == b {
        Some(Term::new(sign, shift))
    } else {
        None
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
    fn difference_of_squares() {
        let v = ["x"];
        assert_eq!(exact_div(&p("x^2-1", &v), &p("x-1", &v)).unwrap(), Some(p("x+1", &v)));
    }

    #[test]
    fn self_division_is_one() {
        let v = ["a", "b", "c"];
        assert_eq!(exact_div(&p("b+1", &v), &p("b+1", &v)).unwrap(), Some(Poly::one(3)));
    }

    #[test]
    fn substitution_residue_is_not_divisible() {
        let v = ["a", "bp", "c"];
        assert_eq!(exact_div(&p("a+c+bp", &v), &p("a+c", &v)).unwrap(), None);
    }

    #[test]
    fn zero_divisor_is_a_domain_error() {
        assert!(exact_div(&Poly::one(1), &Poly::zero(1)).is_err());
    }

    #[test]
    fn polynomial_semantics_for_polynomial_inputs() {
        let v = ["x"];
        assert_eq!(exact_div(&p("x", &v), &p("x^2", &v)).unwrap(), None);
        assert_eq!(exact_div(&p("x^-1", &v), &p("x", &v)).unwrap(), Some(p("x^-2", &v)));
    }

    #[test]
    fn monomial_content_clears_negative_exponents() {
        let v = ["ap", "b", "c"];
        let (m, q) = monomial_content(&p("ap^-1*c^-1 + c", &v)).unwrap();
        assert_eq!(Poly::term(m.coeff.clone(), m.monomial.clone()), p("ap^-1*c^-1", &v));
        assert_eq!(q, p("1 + ap*c^2", &v));
        let v2 = ["x1", "x2"];
        let (m, q) = monomial_content(&p("x1^-2*x2 + x1^-1", &v2)).unwrap();
        assert_eq!(m.monomial, Monomial::from_slice(&[-2, 0]));
        assert_eq!(q, p("x2 + x1", &v2));
    }

    #[test]
    fn monomial_content_sign_is_canonical() {
        let v = ["x", "y"];
        let (m, q) = monomial_content(&p("-x*y - x^2", &v)).unwrap();
        assert_eq!(m.coeff, BigInt::from(-1));
        assert!(q.is_sign_normalized());
        assert!(monomial_content(&Poly::zero(2)).is_err());
    }

    #[test]
    fn unit_ratio_detects_frozen_monomial_rescaling() {
        let v = ["a", "b", "c"];
        let r = unit_ratio(&p("b+1", &v), &p("-(b+1)*c^-1", &v), |i| i == 2).unwrap();
        assert_eq!(r.coeff, BigInt::from(-1));
        assert_eq!(r.monomial, Monomial::from_slice(&[0, 0, -1]));
        assert!(unit_ratio(&p("b+1", &v), &p("(b+1)*a", &v), |i| i == 2).is_none());
    }
}
