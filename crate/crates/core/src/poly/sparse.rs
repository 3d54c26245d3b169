use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Term};
use crate::error::{Error, Result};

/// Sparse multivariate Laurent polynomial over the integers.
///
/// Terms are kept in a map from exponent vector to a nonzero coefficient, ordered
/// lexicographically. Exponents may be negative; a value whose exponents are all
/// nonnegative is an ordinary polynomial (see [`Poly::is_polynomial`]). The same
/// carrier therefore serves both `Poly` and `LaurentPoly` roles, and the
/// conversion between them is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

pub type LaurentPoly = Poly;

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(c.into(), Monomial::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(BigInt::one(), Monomial::var(nvars, i))
    }

    pub fn term(coeff: BigInt, monomial: Monomial) -> Self {
        let nvars = monomial.nvars();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Poly { nvars, terms }
    }

    pub fn monomial(monomial: Monomial) -> Self {
        Self::term(BigInt::one(), monomial)
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// ±1.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.abs().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// All exponents nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: &Monomial, c: &BigInt) {
        if let Some(v) = self.terms.get_mut(m) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(m);
            }
        } else if !c.is_zero() {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    /// Smallest term in the lexicographic order (the "first" term).
    pub fn lex_first(&self) -> Option<Term> {
        self.terms.iter().next().map(|(m, c)| Term::new(c.clone(), m.clone()))
    }

    /// Largest term in the lexicographic order.
    pub fn lex_last(&self) -> Option<Term> {
        self.terms.iter().next_back().map(|(m, c)| Term::new(c.clone(), m.clone()))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Canonical sign convention: the coefficient of the lex-largest monomial is positive.
    pub fn is_sign_normalized(&self) -> bool {
        self.leading_coeff().is_none_or(|c| c.is_positive())
    }

    pub fn sign_normalized(&self) -> Poly {
        if self.is_sign_normalized() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect() }
    }

    pub fn mul_term(&self, t: &Term) -> Poly {
        if t.coeff.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.mul(&t.monomial), v * &t.coeff)).collect() }
    }

    /// Exact division of every coefficient by `c`; the caller guarantees divisibility.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    debug_assert!((v % c).is_zero());
                    (m.clone(), v / c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Highest exponent of `var` among the terms (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.get(var)).max().unwrap_or(0)
    }

    /// Lowest exponent of `var` among the terms (0 for the zero polynomial).
    pub fn min_degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.get(var)).min().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.get(var) != 0)
    }

    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.depends_on(v)).collect()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Gcd of the integer coefficients, nonnegative.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Decompose as `Σ c_e · var^e` with `c_e` free of `var`.
    pub fn coeffs_in(&self, var: usize) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.get(var);
            out.entry(e).or_insert_with(|| Poly::zero(self.nvars)).terms.insert(m.with(var, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &BTreeMap<i32, Poly>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (&e, c) in coeffs {
            for (m, v) in &c.terms {
                p.add_term(m.with(var, m.get(var) + e), v.clone());
            }
        }
        p
    }

    /// Substitute `var ← 0`. Fails when `var` appears with a negative exponent.
    pub fn eval_zero(&self, var: usize) -> Result<Poly> {
        if self.min_degree_in(var) < 0 {
            return Err(Error::Domain(format!("cannot set variable #{var} to zero: it occurs with a negative exponent")));
        }
        Ok(Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.get(var) == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
        })
    }

    /// Substitute `var ← value` where `value` is a Laurent polynomial; negative
    /// powers of `var` require `value` to be a monomial.
    pub fn substitute_poly(&self, var: usize, value: &Poly) -> Result<Poly> {
        let coeffs = self.coeffs_in(var);
        let lo = *coeffs.keys().next().unwrap_or(&0);
        let inv = if lo < 0 {
            if !value.is_monomial() {
                return Err(Error::Domain("negative power substituted by a non-monomial Laurent polynomial".into()));
            }
            let t = value.lex_first().expect("monomial");
            if !t.coeff.abs().is_one() {
                return Err(Error::Domain("negative power of a non-unit coefficient".into()));
            }
            Some(Poly::term(t.coeff.clone(), t.monomial.inv()))
        } else {
            None
        };
        let mut out = Poly::zero(self.nvars);
        let mut cache: BTreeMap<i32, Poly> = BTreeMap::new();
        for (&e, c) in &coeffs {
            let pw = cache
                .entry(e)
                .or_insert_with(|| if e >= 0 { value.pow(e as u32) } else { inv.as_ref().expect("checked").pow((-e) as u32) })
                .clone();
            out += &(c * &pw);
        }
        Ok(out)
    }

    /// Append `extra` fresh variables at the end.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly { nvars: self.nvars + extra, terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect() }
    }

    /// Drop variable `var`, which must not occur.
    pub fn remove_var(&self, var: usize) -> Result<Poly> {
        if self.depends_on(var) {
            return Err(Error::Domain(format!("variable #{var} still occurs")));
        }
        Ok(Poly { nvars: self.nvars - 1, terms: self.terms.iter().map(|(m, c)| (m.remove(var), c.clone())).collect() })
    }

    pub fn insert_var(&self, at: usize) -> Poly {
        Poly { nvars: self.nvars + 1, terms: self.terms.iter().map(|(m, c)| (m.insert(at, 0), c.clone())).collect() }
    }

    /// Reorder variables; `perm[new] = old`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        debug_assert_eq!(perm.len(), self.nvars);
        Poly::from_terms(perm.len(), self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())))
    }

    /// Move to a ring with `nvars` variables, sending old variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = Monomial::one(nvars);
                for (i, &t) in map.iter().enumerate() {
                    e.exps_mut()[t] += m.get(i);
                }
                (e, c.clone())
            }),
        )
    }

    /// Keep only terms selected by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term_ref(m, c);
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term_ref(m, c);
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms.iter().next().expect("one term");
            return self.mul_term(&Term::new(c.clone(), m.clone()));
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            return rhs.mul_term(&Term::new(c.clone(), m.clone()));
        }
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let q = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn coefficient_decomposition_roundtrips() {
        let p = &(&x(0) * &x(1)).pow(2) + &(&x(2) - &Poly::one(3));
        let cs = p.coeffs_in(1);
        assert_eq!(Poly::from_coeffs_in(3, 1, &cs), p);
    }

    #[test]
    fn sign_normalization_uses_lex_last() {
        let p = &Poly::one(3) - &x(0);
        assert!(!p.is_sign_normalized());
        assert_eq!(p.sign_normalized(), &x(0) - &Poly::one(3));
    }

    #[test]
    fn eval_zero_rejects_negative_powers() {
        let p = Poly::monomial(Monomial::from_slice(&[-1, 0, 0]));
        assert!(p.eval_zero(0).is_err());
        assert!(p.eval_zero(1).is_ok());
    }
}
