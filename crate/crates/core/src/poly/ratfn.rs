use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed};

use super::division::exact_div_poly;
use super::gcd::gcd_rec;
use super::monomial::Monomial;
use super::parse::{format_poly, needs_parens};
use super::sparse::Poly;
use crate::error::{Error, Result};

/// A reduced fraction `num / den` of polynomials with nonnegative exponents.
///
/// The representation is unique: `gcd(num, den) = 1`, `den` is sign-normalized,
/// and zero is `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn zero(nvars: usize) -> Self {
        RationalFn { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RationalFn { num: Poly::one(nvars), den: Poly::one(nvars) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RationalFn { num: Poly::var(nvars, i), den: Poly::one(nvars) }
    }

    /// Embed a Laurent polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        reduce_fraction(p, &Poly::one(p.nvars())).expect("nonzero denominator")
    }

    pub fn new(num: &Poly, den: &Poly) -> Result<Self> {
        reduce_fraction(num, den)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The denominator is a monomial with coefficient 1, so the value lies in
    /// the Laurent polynomial ring over the integers.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial() && self.den.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn to_laurent(&self) -> Option<Poly> {
        if !self.is_laurent() {
            return None;
        }
        let m = self.den.lex_first()?.monomial;
        Some(self.num.mul_monomial(&m.inv()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        reduce_fraction(&self.den, &self.num)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // reduced fractions stay reduced under powers
        Ok(RationalFn { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return reduce_fraction(&(&self.num + &other.num), &self.den).expect("nonzero");
        }
        let n = &(&self.num * &other.den) + &(&other.num * &self.den);
        reduce_fraction(&n, &(&self.den * &other.den)).expect("nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        reduce_fraction(&(&self.num * &other.num), &(&self.den * &other.den)).expect("nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        reduce_fraction(&(&self.num * &other.den), &(&self.den * &other.num))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        reduce_fraction(&(&self.num * p), &self.den).expect("nonzero")
    }

    /// `self = ±m · other` with `m` a monomial in variables selected by `allowed`.
    pub fn unit_ratio(&self, other: &Self, allowed: impl Fn(usize) -> bool) -> Option<(i8, Monomial)> {
        let q = self.div(other).ok()?;
        if !q.num.is_monomial() || !q.den.is_monomial() {
            return None;
        }
        let tn = q.num.lex_first()?;
        let td = q.den.lex_first()?;
        if !td.coeff.is_one() || !tn.coeff.abs().is_one() {
            return None;
        }
        let m = tn.monomial.div(&td.monomial);
        if m.exps().iter().enumerate().any(|(i, &e)| e != 0 && !allowed(i)) {
            return None;
        }
        Some((if tn.coeff.is_positive() { 1 } else { -1 }, m))
    }

    pub fn format<S: AsRef<str>>(&self, names: &[S]) -> String {
        let n = format_poly(&self.num, names);
        if self.den.is_one() {
            return n;
        }
        let d = format_poly(&self.den, names);
        let n = if needs_parens(&self.num) { format!("({n})") } else { n };
        let d = if self.den.num_terms() > 1 || d.contains('*') { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

/// Bring `num / den` (Laurent polynomials allowed) to lowest terms.
pub fn reduce_fraction(num: &Poly, den: &Poly) -> Result<RationalFn> {
    if den.is_zero() {
        return Err(Error::Domain("zero denominator".into()));
    }
    let n = num.nvars();
    if num.is_zero() {
        return Ok(RationalFn::zero(n));
    }
    // clear negative exponents and common monomial factors in one shift
    let mn = num.min_exponents();
    let md = den.min_exponents();
    let shift = mn.gcd(&md);
    let mut num = num.mul_monomial(&shift.inv());
    let mut den = den.mul_monomial(&shift.inv());

    let dm = den.min_exponents();
    let dprime = den.mul_monomial(&dm.inv());
    if !dprime.is_constant() {
        if let Some(q) = exact_div_poly(&num, &dprime) {
            num = q;
            den = Poly::monomial(dm);
        } else {
            let g = gcd_rec(&num, &den);
            if !g.is_unit() {
                num = exact_div_poly(&num, &g).expect("gcd divides");
                den = exact_div_poly(&den, &g).expect("gcd divides");
            }
        }
    }
    let c = num.integer_content().gcd(&den.integer_content());
    if !c.is_one() {
        num = num.div_scalar_exact(&c);
        den = den.div_scalar_exact(&c);
    }
    if !den.is_sign_normalized() {
        num = -num;
        den = -den;
    }
    Ok(RationalFn { num, den })
}

/// Substitute `var ← value` in a Laurent polynomial.
pub fn substitute(p: &Poly, var: usize, value: &RationalFn) -> Result<RationalFn> {
    let coeffs = p.coeffs_in(var);
    if coeffs.is_empty() {
        return Ok(RationalFn::zero(p.nvars()));
    }
    let lo = (*coeffs.keys().next().expect("nonempty")).min(0);
    let hi = (*coeffs.keys().next_back().expect("nonempty")).max(0);
    if lo < 0 && value.is_zero() {
        return Err(Error::Domain("negative power of a variable substituted by zero".into()));
    }
    if !p.depends_on(var) {
        return Ok(RationalFn::from_poly(p));
    }
    let (nv, dv) = (&value.num, &value.den);
    let mut num = Poly::zero(p.nvars());
    for (&e, c) in &coeffs {
        let t = &(c * &nv.pow((e - lo) as u32)) * &dv.pow((hi - e) as u32);
        num += &t;
    }
    let den = &nv.pow((-lo) as u32) * &dv.pow(hi as u32);
    reduce_fraction(&num, &den)
}

/// Simultaneous substitution `x_i ← values[i]` for every variable of `p`. The
/// result lives in the ring of the values.
pub fn compose(p: &Poly, values: &[RationalFn]) -> Result<RationalFn> {
    if values.len() != p.nvars() {
        return Err(Error::Domain(format!("compose: {} values for a ring of {} variables", values.len(), p.nvars())));
    }
    let target = values.first().map_or(0, RationalFn::nvars);
    if p.is_zero() {
        return Ok(RationalFn::zero(target));
    }
    let n = p.nvars();
    let mut a = vec![0i32; n];
    let mut b = vec![0i32; n];
    for (m, _) in p.terms() {
        for i in 0..n {
            a[i] = a[i].max(m.get(i));
            b[i] = b[i].max(-m.get(i));
        }
    }
    for i in 0..n {
        if b[i] > 0 && values[i].is_zero() {
            return Err(Error::Domain("negative power of a variable substituted by zero".into()));
        }
    }
    let mut cache: HashMap<(usize, bool, u32), Poly> = HashMap::new();
    let mut power = |i: usize, numer: bool, e: u32| -> Poly {
        cache
            .entry((i, numer, e))
            .or_insert_with(|| {
                let base = if numer { &values[i].num } else { &values[i].den };
                base.pow(e)
            })
            .clone()
    };
    let mut num = Poly::zero(target);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(target, c.clone());
        for i in 0..n {
            let e = m.get(i);
            let pn = (e + b[i]) as u32;
            let pd = (a[i] - e) as u32;
            if pn > 0 {
                t = &t * &power(i, true, pn);
            }
            if pd > 0 {
                t = &t * &power(i, false, pd);
            }
        }
        num += &t;
    }
    let mut den = Poly::one(target);
    for i in 0..n {
        if a[i] > 0 {
            den = &den * &power(i, false, a[i] as u32);
        }
        if b[i] > 0 {
            den = &den * &power(i, true, b[i] as u32);
        }
    }
    reduce_fraction(&num, &den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(s: &str, vars: &[&str]) -> Poly {
        parse_poly(s, vars).unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let v = ["x"];
        let r = reduce_fraction(&p("x^2-1", &v), &p("x-1", &v)).unwrap();
        assert_eq!(r.num(), &p("x+1", &v));
        assert!(r.den().is_one());
        let v = ["a", "b", "c"];
        let r = reduce_fraction(&p("(b+1)*a", &v), &p("a*c", &v)).unwrap();
        assert_eq!(r.num(), &p("b+1", &v));
        assert_eq!(r.den(), &p("c", &v));
    }

    #[test]
    fn denominator_sign_is_canonical() {
        let v = ["x", "y"];
        let r = reduce_fraction(&p("6*y", &v), &p("-4*x+4", &v)).unwrap();
        assert_eq!(r.num(), &p("-3*y", &v));
        assert_eq!(r.den(), &p("2*x-2", &v));
        assert!(reduce_fraction(&Poly::one(2), &Poly::zero(2)).is_err());
    }

    #[test]
    fn substitution_examples() {
        let v = ["ap", "b", "c"];
        let fb = p("ap + c", &v);
        let val = reduce_fraction(&Poly::one(3), &p("ap*c", &v)).unwrap();
        let r = substitute(&fb, 0, &val).unwrap();
        assert_eq!(r.num(), &p("1 + ap*c^2", &v));
        assert_eq!(r.den(), &p("ap*c", &v));

        let v = ["a", "bp", "c"];
        let fc = p("bp + 1", &v);
        let val = reduce_fraction(&p("a+c", &v), &p("bp", &v)).unwrap();
        let r = substitute(&fc, 1, &val).unwrap();
        assert_eq!(r.num(), &p("a+c+bp", &v));
        assert_eq!(r.den(), &p("bp", &v));
    }

    #[test]
    fn compose_matches_iterated_substitution() {
        let v = ["x", "y"];
        let f = p("x^2*y^-1 + 3*x - y", &v);
        let vals = [reduce_fraction(&p("y+1", &v), &p("x", &v)).unwrap(), reduce_fraction(&p("x-y", &v), &p("y^2+1", &v)).unwrap()];
        let direct = compose(&f, &vals).unwrap();
        // substitute through fresh variables to avoid capture
        let w = ["x", "y", "s", "t"];
        let f4 = f.extend_vars(2).permute_vars(&[2, 3, 0, 1]);
        let vals4: Vec<RationalFn> =
            vals.iter().map(|r| reduce_fraction(&r.num().extend_vars(2), &r.den().extend_vars(2)).unwrap()).collect();
        let s1 = substitute(&f4, 2, &vals4[0]).unwrap();
        let s2 = substitute(s1.num(), 3, &vals4[1]).unwrap();
        let d2 = substitute(s1.den(), 3, &vals4[1]).unwrap();
        let iter = s2.div(&d2).unwrap();
        assert_eq!(iter.format(&w), RationalFn::new(&direct.num().extend_vars(2), &direct.den().extend_vars(2)).unwrap().format(&w));
    }

    #[test]
    fn laurent_detection() {
        let v = ["a", "b", "c"];
        let r = reduce_fraction(&p("b+1", &v), &p("a*c", &v)).unwrap();
        assert!(r.is_laurent());
        assert_eq!(r.to_laurent().unwrap(), p("(b+1)*a^-1*c^-1", &v));
        assert_eq!(r.format(&v), "(b + 1)/(a*c)");
        let s = reduce_fraction(&p("b+1", &v), &p("2*a", &v)).unwrap();
        assert!(!s.is_laurent());
    }
}
