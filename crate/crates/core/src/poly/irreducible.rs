//! Budgeted irreducibility heuristic for integer polynomials.
//!
//! Every `Irreducible` verdict rests on a certificate (linear in some variable with
//! coprime coefficients, an exhaustive univariate factor search, or a degree
//! preserving specialization that is irreducible) and every `Reducible` verdict
//! carries a checked proper divisor. Anything else is `Unknown`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::division::{exact_div_poly, monomial_content_in};
use super::gcd::{content_and_primitive, gcd_rec};
use super::monomial::Monomial;
use super::sparse::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper, non-unit divisor.
    Reducible(Poly),
    /// ±1 times a monomial in unit variables.
    Unit,
    /// Work budget exhausted before a certificate was found.
    Unknown,
}

/// Classify `p` in `Z[x][u^{±1}]` where the variables selected by `unit_var`
/// are invertible. `budget` bounds the number of candidate factors tried.
pub fn irreducibility(p: &Poly, unit_var: impl Fn(usize) -> bool, budget: u64) -> Irreducibility {
    if p.is_zero() {
        return Irreducibility::Reducible(p.clone());
    }
    let n = p.nvars();
    let (_, q) = monomial_content_in(p, &unit_var).expect("nonzero");
    // any remaining negative exponent sits on a non-unit variable
    if !q.is_polynomial() {
        return Irreducibility::Unknown;
    }
    if q.is_monomial() {
        let t = q.lex_first().expect("nonzero");
        let deg = t.monomial.total_degree();
        if deg == 0 {
            return constant_verdict(&t.coeff, n, budget);
        }
        if deg == 1 && t.coeff.abs().is_one() {
            return Irreducibility::Irreducible;
        }
        let v = t.monomial.exps().iter().position(|&e| e > 0).expect("nonconstant");
        return Irreducibility::Reducible(Poly::var(n, v));
    }
    let mins = q.min_exponents();
    if let Some(v) = mins.exps().iter().position(|&e| e > 0) {
        return Irreducibility::Reducible(Poly::var(n, v));
    }
    let c = q.integer_content();
    if !c.is_one() {
        return Irreducibility::Reducible(Poly::constant(n, c));
    }
    let q = q.sign_normalized();
    let support = q.support_vars();

    // linear in some variable: q = A·v + B is irreducible iff gcd(A, B) = 1
    if let Some(&v) = support.iter().find(|&&v| q.degree_in(v) == 1) {
        let cs = q.coeffs_in(v);
        let a = &cs[&1];
        let b = cs.get(&0).cloned().unwrap_or_else(|| Poly::zero(n));
        let g = gcd_rec(a, &b);
        return if g.is_unit() { Irreducibility::Irreducible } else { Irreducibility::Reducible(g) };
    }

    for &v in &support {
        let (content, _) = content_and_primitive(&q, v);
        if !content.is_unit() {
            return Irreducibility::Reducible(content);
        }
    }

    let mut budget = Budget(budget);
    if support.len() == 1 {
        let v = support[0];
        let f = to_univariate(&q, v);
        return match univariate_factor(&f, &mut budget) {
            Search::Factor(g) => Irreducibility::Reducible(from_univariate(&g, n, v)),
            Search::None => Irreducibility::Irreducible,
            Search::Exhausted => Irreducibility::Unknown,
        };
    }

    if hilbert_certificate(&q, &support, &mut budget) {
        return Irreducibility::Irreducible;
    }
    match kronecker_factor(&q, &mut budget) {
        Some(g) => Irreducibility::Reducible(g),
        None => Irreducibility::Unknown,
    }
}

fn constant_verdict(c: &BigInt, n: usize, budget: u64) -> Irreducibility {
    let a = c.abs();
    if a.is_one() {
        return Irreducibility::Unit;
    }
    match smallest_prime_factor(&a, budget) {
        Some(p) if p == a => Irreducibility::Irreducible,
        Some(p) => Irreducibility::Reducible(Poly::constant(n, p)),
        None => Irreducibility::Unknown,
    }
}

fn smallest_prime_factor(a: &BigInt, budget: u64) -> Option<BigInt> {
    let mut d = BigInt::from(2);
    let mut steps = 0u64;
    while &(&d * &d) <= a {
        if (a % &d).is_zero() {
            return Some(d);
        }
        d += 1;
        steps += 1;
        if steps > budget.max(1000) * 10 {
            return None;
        }
    }
    Some(a.clone())
}

struct Budget(u64);

impl Budget {
    fn spend(&mut self, k: u64) -> bool {
        if self.0 < k {
            self.0 = 0;
            false
        } else {
            self.0 -= k;
            true
        }
    }
}

enum Search {
    Factor(Vec<BigInt>),
    None,
    Exhausted,
}

/// Dense coefficients, lowest degree first.
fn to_univariate(p: &Poly, v: usize) -> Vec<BigInt> {
    let d = p.degree_in(v).max(0) as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.get(v) as usize] += c;
    }
    out
}

fn from_univariate(f: &[BigInt], n: usize, v: usize) -> Poly {
    let p = Poly::from_terms(n, f.iter().enumerate().map(|(e, c)| (Monomial::var(n, v).pow(e as i32), c.clone())));
    p.sign_normalized()
}

fn eval(f: &[BigInt], t: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

fn trim(f: &mut Vec<BigInt>) {
    while f.len() > 1 && f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
}

fn udiv_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = f.len();
    let m = g.len();
    if m > n {
        return None;
    }
    let lead = g[m - 1].clone();
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for i in (0..=n - m).rev() {
        let c = &r[i + m - 1];
        if c.is_zero() {
            continue;
        }
        let (qc, rem) = c.div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        for j in 0..m {
            r[i + j] -= &qc * &g[j];
        }
        q[i] = qc;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn divisors(v: &BigInt, budget: &mut Budget) -> Option<Vec<BigInt>> {
    let a = v.abs();
    let limit = a.sqrt();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while d <= limit {
        if !budget.spend(1) {
            return None;
        }
        if (&a % &d).is_zero() {
            let other = &a / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Search for a factor of degree 1..=deg/2 of a primitive univariate
/// polynomial by Kronecker's method.
fn univariate_factor(f: &[BigInt], budget: &mut Budget) -> Search {
    let mut f = f.to_vec();
    trim(&mut f);
    let deg = f.len() - 1;
    if deg <= 1 {
        return Search::None;
    }
    if f[0].is_zero() {
        return Search::Factor(vec![BigInt::zero(), BigInt::one()]);
    }
    let mut exhausted = false;
    for d in 1..=deg / 2 {
        // sample points with small nonzero values; a root gives a linear factor
        let mut pool: Vec<(BigInt, BigInt)> = Vec::new();
        let mut k: i64 = 0;
        while pool.len() < 2 * d + 4 {
            let t = BigInt::from(if k % 2 == 0 { k / 2 } else { -(k / 2) - 1 });
            k += 1;
            let val = eval(&f, &t);
            if val.is_zero() {
                return Search::Factor(vec![-t, BigInt::one()]);
            }
            pool.push((t, val));
        }
        pool.sort_by_key(|a| a.1.abs());
        pool.truncate(d + 1);
        let mut divs = Vec::with_capacity(d + 1);
        for (_, val) in &pool {
            match divisors(val, budget) {
                Some(ds) => divs.push(ds),
                None => return Search::Exhausted,
            }
        }
        let pts: Vec<BigInt> = pool.iter().map(|(t, _)| t.clone()).collect();
        match search_combinations(&f, d, &pts, &divs, budget) {
            Search::Factor(g) => return Search::Factor(g),
            Search::Exhausted => exhausted = true,
            Search::None => {}
        }
        if exhausted {
            break;
        }
    }
    if exhausted {
        Search::Exhausted
    } else {
        Search::None
    }
}

fn search_combinations(f: &[BigInt], d: usize, pts: &[BigInt], divs: &[Vec<BigInt>], budget: &mut Budget) -> Search {
    let basis = LagrangeBasis::new(pts);
    // first value taken positive: factors are found up to sign
    let mut idx = vec![0usize; d + 1];
    let radix: Vec<usize> = divs.iter().enumerate().map(|(i, ds)| if i == 0 { ds.len() } else { 2 * ds.len() }).collect();
    let mut vals: Vec<BigInt> = vec![BigInt::zero(); d + 1];
    loop {
        if !budget.spend(1) {
            return Search::Exhausted;
        }
        for (i, &j) in idx.iter().enumerate() {
            let ds = &divs[i];
            vals[i] = if j < ds.len() { ds[j].clone() } else { -ds[j - ds.len()].clone() };
        }
        if let Some(g) = basis.interpolate(&vals) {
            if g.len() == d + 1 && !g[d].is_zero() && udiv_exact(f, &g).is_some() {
                return Search::Factor(g);
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Search::None;
            }
            idx[i] += 1;
            if idx[i] < radix[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Lagrange basis over fixed nodes, scaled to integers by a common denominator.
struct LagrangeBasis {
    rows: Vec<Vec<BigInt>>,
    denom: BigInt,
}

impl LagrangeBasis {
    fn new(pts: &[BigInt]) -> Self {
        let n = pts.len();
        let mut polys = Vec::with_capacity(n);
        let mut denoms = Vec::with_capacity(n);
        for i in 0..n {
            // ∏_{j≠i} (t − t_j) and ∏_{j≠i} (t_i − t_j)
            let mut basis = vec![BigInt::one()];
            let mut denom = BigInt::one();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = vec![BigInt::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * &pts[j];
                }
                basis = next;
                denom *= &pts[i] - &pts[j];
            }
            polys.push(basis);
            denoms.push(denom);
        }
        let l = denoms.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        let rows = polys
            .into_iter()
            .zip(&denoms)
            .map(|(p, d)| {
                let s = &l / d;
                p.into_iter().map(|c| c * &s).collect()
            })
            .collect();
        LagrangeBasis { rows, denom: l }
    }

    /// Interpolating polynomial; `None` unless all coefficients are integers.
    fn interpolate(&self, vals: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = vals.len();
        let mut out = Vec::with_capacity(n);
        // highest coefficient first so non-integral candidates fail fast
        for k in (0..n).rev() {
            let mut acc = BigInt::zero();
            for (i, v) in vals.iter().enumerate() {
                acc += v * &self.rows[i][k];
            }
            let (q, r) = acc.div_rem(&self.denom);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        out.reverse();
        trim(&mut out);
        Some(out)
    }
}

/// Try specializations of all but one variable that keep the degree in the
/// remaining variable; an irreducible image proves `q` irreducible (`q` is
/// primitive with respect to every variable here).
fn hilbert_certificate(q: &Poly, support: &[usize], budget: &mut Budget) -> bool {
    let n = q.nvars();
    let mut mains: Vec<usize> = support.to_vec();
    mains.sort_by_key(|&v| q.degree_in(v));
    for &v in &mains {
        let lc = q.coeffs_in(v).pop_last().expect("nonzero").1;
        let others: Vec<usize> = support.iter().copied().filter(|&w| w != v).collect();
        for attempt in 0..12i64 {
            if budget.0 == 0 {
                return false;
            }
            let point: Vec<BigInt> =
                others.iter().enumerate().map(|(i, _)| BigInt::from(specialization_value(attempt, i as i64))).collect();
            if !eval_at(&lc, &others, &point).is_some_and(|c| !c.is_zero()) {
                continue;
            }
            let mut f = vec![BigInt::zero(); q.degree_in(v) as usize + 1];
            for (e, c) in q.coeffs_in(v) {
                f[e as usize] = eval_at(&c, &others, &point).expect("polynomial");
            }
            let content = f.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if content.is_zero() {
                continue;
            }
            let f: Vec<BigInt> = f.iter().map(|c| c / &content).collect();
            if let Search::None = univariate_factor(&f, budget) {
                return true;
            }
        }
        let _ = n;
    }
    false
}

fn specialization_value(attempt: i64, i: i64) -> i64 {
    // deterministic spread of small integers, distinct per coordinate
    let base = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let s = base[((attempt + 3 * i) % 12) as usize];
    if (attempt + i) % 2 == 0 {
        s
    } else {
        -s + 1
    }
}

fn eval_at(p: &Poly, vars: &[usize], point: &[BigInt]) -> Option<BigInt> {
    let mut total = BigInt::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &v) in vars.iter().enumerate() {
            let e = m.get(v);
            if e < 0 {
                return None;
            }
            t *= num_traits::pow(point[i].clone(), e as usize);
        }
        total += t;
    }
    Some(total)
}

/// Kronecker substitution `x_i ← t^{D^i}` followed by a univariate factor
/// search; each univariate candidate is mapped back and checked by division.
fn kronecker_factor(q: &Poly, budget: &mut Budget) -> Option<Poly> {
    let n = q.nvars();
    let base = (0..n).map(|v| q.degree_in(v)).max().unwrap_or(0) as i64 + 1;
    let weights: Vec<i64> = (0..n).map(|v| base.checked_pow(v as u32).unwrap_or(i64::MAX)).collect();
    let image_deg: i64 = q.terms().map(|(m, _)| m.exps().iter().zip(&weights).map(|(&e, &w)| e as i64 * w).sum::<i64>()).max()?;
    if image_deg > 64 {
        return None;
    }
    let mut f = vec![BigInt::zero(); image_deg as usize + 1];
    for (m, c) in q.terms() {
        let e: i64 = m.exps().iter().zip(&weights).map(|(&e, &w)| e as i64 * w).sum();
        f[e as usize] += c;
    }
    let shift = f.iter().position(|c| !c.is_zero())?;
    let g: Vec<BigInt> = f[shift..].to_vec();
    // collect several univariate factors by repeated splitting
    let mut stack = vec![g];
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    while let Some(h) = stack.pop() {
        if h.len() <= 1 {
            continue;
        }
        match univariate_factor(&h, budget) {
            Search::Factor(a) => {
                let b = udiv_exact(&h, &a).expect("checked factor");
                stack.push(a);
                stack.push(b);
            }
            Search::None => found.push(h),
            Search::Exhausted => return None,
        }
    }
    // try products of subsets of the univariate factors, shifted by t^j
    let k = found.len();
    if k > 12 {
        return None;
    }
    for mask in 1u32..(1u32 << k) - 1 {
        if !budget.spend(1) {
            return None;
        }
        let mut prod = vec![BigInt::one()];
        for (i, h) in found.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = umul(&prod, h);
            }
        }
        for j in 0..=shift {
            let mut cand = vec![BigInt::zero(); j];
            cand.extend(prod.iter().cloned());
            for sign in [1, -1] {
                let c: Vec<BigInt> = cand.iter().map(|x| x * sign).collect();
                if let Some(p) = inverse_kronecker(&c, n, base) {
                    if p.is_constant() || p.is_monomial() {
                        continue;
                    }
                    if let Some(r) = exact_div_poly(q, &p) {
                        if !r.is_unit() {
                            return Some(p.sign_normalized());
                        }
                    }
                }
            }
        }
    }
    None
}

fn umul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn inverse_kronecker(f: &[BigInt], n: usize, base: i64) -> Option<Poly> {
    let mut p = Poly::zero(n);
    for (e, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut rest = e as i64;
        let mut m = Monomial::one(n);
        for v in 0..n {
            m.exps_mut()[v] = (rest % base).to_i32()?;
            rest /= base;
        }
        if rest != 0 {
            return None;
        }
        p.add_term(m, c.clone());
    }
    Some(p)
}
