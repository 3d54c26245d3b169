use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use smallvec::SmallVec;

/// Exponent vector of a (Laurent) monomial, one entry per ring variable.
///
/// The derived ordering is lexicographic in the declared variable order:
/// `a < b` iff the first nonzero difference `b_j - a_j` is positive. The
/// "first" term of a polynomial is its smallest monomial under this order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exps_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// Componentwise `self <= other`, i.e. `self` divides `other` in the
    /// polynomial ring.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Split into (positive part, negative part), both with nonnegative
    /// exponents, so that `self = pos / neg`.
    pub fn split_sign(&self) -> (Monomial, Monomial) {
        let pos = self.0.iter().map(|&a| a.max(0)).collect();
        let neg = self.0.iter().map(|&a| (-a).max(0)).collect();
        (Monomial(pos), Monomial(neg))
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn with(&self, i: usize, e: i32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    pub fn extend(&self, extra: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(0, extra));
        Monomial(v)
    }

    pub fn remove(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(i);
        Monomial(v)
    }

    pub fn insert(&self, i: usize, e: i32) -> Monomial {
        let mut v = self.0.clone();
        v.insert(i, e);
        Monomial(v)
    }

    /// `perm[new] = old`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        Monomial(perm.iter().map(|&old| self.0[old]).collect())
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.cmp(other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A monomial together with its coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: BigInt,
    pub monomial: Monomial,
}

/// Laurent monomial with integer coefficient, as returned by `lex_first`.
pub type LaurentMonomial = Term;

impl Term {
    pub fn new(coeff: BigInt, monomial: Monomial) -> Self {
        Term { coeff, monomial }
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term { coeff: &self.coeff * &other.coeff, monomial: self.monomial.mul(&other.monomial) }
    }
}
