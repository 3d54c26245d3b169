//! Cluster seeds `(x, y, B)` with tropical coefficients, matrix and
//! coefficient mutation, exchange binomials, matrix classes, and the bridge to
//! LP seeds.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{compose, parse_ratfn, Monomial, Poly, RationalFn};
use crate::seed::{validate_seed, IrreducibilityVerdict, LPSeed};

pub type ExchangeMatrix = Vec<Vec<i64>>;

/// Element of the tropical semifield on the coefficient generators, stored as
/// its exponent vector. Trivial coefficients use the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Tropical(pub Vec<i64>);

impl Tropical {
    pub fn one(m: usize) -> Self {
        Tropical(vec![0; m])
    }

    pub fn generator(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        Tropical(e)
    }

    pub fn mul(&self, o: &Tropical) -> Tropical {
        Tropical(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, e: i64) -> Tropical {
        Tropical(self.0.iter().map(|a| a * e).collect())
    }

    pub fn inv(&self) -> Tropical {
        self.pow(-1)
    }

    /// Auxiliary addition: componentwise minimum.
    pub fn oplus(&self, o: &Tropical) -> Tropical {
        Tropical(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    Principal,
    Trivial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterSeed {
    names: Vec<String>,
    coeff_names: Vec<String>,
    kind: CoefficientKind,
    y: Vec<Tropical>,
    b: ExchangeMatrix,
    root_names: Vec<String>,
    /// Cluster variables in the root ring (root cluster, then coefficient generators).
    expansions: Vec<RationalFn>,
}

fn check_square(b: &ExchangeMatrix) -> Result<usize> {
    let n = b.len();
    if n == 0 {
        return Err(Error::InvalidSeed("empty exchange matrix".into()));
    }
    if b.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidSeed("exchange matrix is not square".into()));
    }
    Ok(n)
}

impl ClusterSeed {
    /// Initial seed; principal coefficients use generators named `y1, …, yn`.
    pub fn new(vars: Vec<String>, b: ExchangeMatrix, kind: CoefficientKind) -> Result<Self> {
        let n = check_square(&b)?;
        if vars.len() != n {
            return Err(Error::InvalidSeed(format!("{} variables for a {n}x{n} matrix", vars.len())));
        }
        if !is_sign_skew_symmetric(&b) {
            return Err(Error::InvalidSeed("exchange matrix is not sign-skew-symmetric".into()));
        }
        let coeff_names: Vec<String> = match kind {
            CoefficientKind::Principal => (1..=n).map(|i| format!("y{i}")).collect(),
            CoefficientKind::Trivial => vec![],
        };
        let m = coeff_names.len();
        let y = match kind {
            CoefficientKind::Principal => (0..n).map(|i| Tropical::generator(m, i)).collect(),
            CoefficientKind::Trivial => vec![Tropical::one(0); n],
        };
        let root_names: Vec<String> = vars.iter().chain(&coeff_names).cloned().collect();
        for (i, a) in root_names.iter().enumerate() {
            if !crate::poly::is_valid_name(a) || root_names[..i].contains(a) {
                return Err(Error::InvalidSeed(format!("invalid or duplicate variable name {a:?}")));
            }
        }
        let total = root_names.len();
        Ok(ClusterSeed {
            expansions: (0..n).map(|i| RationalFn::var(total, i)).collect(),
            names: vars,
            coeff_names,
            kind,
            y,
            b,
            root_names,
        })
    }

    /// `{"vars": [...], "B": [[...]], "coeffs": "principal" | "trivial"}`, with
    /// optional `"y"` exponent vectors and `"root"`/`"expansions"` for
    /// non-initial seeds as written by [`ClusterSeed::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let vars: Vec<String> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("\"vars\" must be a list of names".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("\"vars\" entries must be strings".into())))
            .collect::<Result<_>>()?;
        let b: ExchangeMatrix =
            serde_json::from_value(v.get("B").cloned().unwrap_or(Value::Null)).map_err(|e| Error::Parse(format!("\"B\": {e}")))?;
        let kind = match v.get("coeffs").and_then(Value::as_str).unwrap_or("trivial") {
            "principal" => CoefficientKind::Principal,
            "trivial" => CoefficientKind::Trivial,
            other => return Err(Error::Parse(format!("unknown coefficient kind {other:?}"))),
        };
        let root_vars: Option<Vec<String>> = match v.get("root") {
            Some(r) => Some(serde_json::from_value(r.clone()).map_err(|e| Error::Parse(format!("\"root\": {e}")))?),
            None => None,
        };
        let mut s = ClusterSeed::new(root_vars.clone().unwrap_or_else(|| vars.clone()), b, kind)?;
        let n = s.rank();
        if let Some(y) = v.get("y") {
            let y: Vec<Vec<i64>> = serde_json::from_value(y.clone()).map_err(|e| Error::Parse(format!("\"y\": {e}")))?;
            if y.len() != n || y.iter().any(|e| e.len() != s.coeff_names.len()) {
                return Err(Error::Parse("\"y\" has the wrong shape".into()));
            }
            s.y = y.into_iter().map(Tropical).collect();
        }
        if root_vars.is_some() {
            let ex =
                v.get("expansions").and_then(Value::as_object).ok_or_else(|| Error::Parse("\"root\" requires \"expansions\"".into()))?;
            let names: Vec<&str> = s.root_names.iter().map(String::as_str).collect();
            s.expansions = vars
                .iter()
                .map(|x| {
                    let e = ex.get(x).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing expansion of {x}")))?;
                    parse_ratfn(e, &names)
                })
                .collect::<Result<_>>()?;
            s.names = vars;
        }
        Ok(s)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        ClusterSeed::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "vars": self.names,
            "B": self.b,
            "coeffs": self.kind,
        });
        if self.kind == CoefficientKind::Principal {
            v["y"] = json!(self.y.iter().map(|t| &t.0).collect::<Vec<_>>());
        }
        if !self.is_initial() {
            v["root"] = json!(self.root_names[..self.rank()]);
            let mut ex = serde_json::Map::new();
            for (nm, e) in self.names.iter().zip(&self.expansions) {
                ex.insert(nm.clone(), json!(e.format(&self.root_names)));
            }
            v["expansions"] = Value::Object(ex);
        }
        v
    }

    fn is_initial(&self) -> bool {
        let total = self.root_names.len();
        self.names[..] == self.root_names[..self.rank()] && self.expansions.iter().enumerate().all(|(i, e)| *e == RationalFn::var(total, i))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coeff_names(&self) -> &[String] {
        &self.coeff_names
    }

    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn y(&self) -> &[Tropical] {
        &self.y
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn root_names(&self) -> &[String] {
        &self.root_names
    }

    /// Cluster variables in the root cluster and coefficient generators.
    pub fn expansions(&self) -> &[RationalFn] {
        &self.expansions
    }

    /// Variable names of the polynomial ring of the exchange binomials.
    pub fn ring_names(&self) -> Vec<String> {
        self.names.iter().chain(&self.coeff_names).cloned().collect()
    }

    pub fn format(&self, p: &Poly) -> String {
        crate::poly::format_poly(p, &self.ring_names())
    }

    pub fn format_root(&self, r: &RationalFn) -> String {
        r.format(&self.root_names)
    }
}

pub fn is_sign_skew_symmetric(b: &ExchangeMatrix) -> bool {
    let n = b.len();
    (0..n).all(|i| (0..n).all(|j| (b[i][j] == 0 && b[j][i] == 0) || b[i][j] * b[j][i] < 0))
}

pub fn matrix_mutate(b: &ExchangeMatrix, k: usize) -> ExchangeMatrix {
    let n = b.len();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k { -b[i][j] } else { b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0) };
        }
    }
    out
}

/// Tropical evaluation of the coefficient mutation rule.
pub fn coeff_mutate(y: &[Tropical], b: &ExchangeMatrix, k: usize) -> Vec<Tropical> {
    let m = y[k].0.len();
    let one_plus = Tropical::one(m).oplus(&y[k]);
    y.iter()
        .enumerate()
        .map(|(i, yi)| if i == k { y[k].inv() } else { yi.mul(&y[k].pow(b[k][i].max(0))).mul(&one_plus.pow(-b[k][i])) })
        .collect()
}

fn coefficient_monomial(t: &Tropical, n: usize) -> Monomial {
    let mut e = vec![0i32; n];
    e.extend(t.0.iter().map(|&a| a as i32));
    Monomial::from_slice(&e)
}

/// `F_j = y_j/(1⊕y_j) ∏_{b_ij>0} x_i^{b_ij} + 1/(1⊕y_j) ∏_{b_ij<0} x_i^{-b_ij}`,
/// as polynomials in the cluster variables followed by the coefficient generators.
pub fn exchange_binomials(s: &ClusterSeed) -> Vec<Poly> {
    let n = s.rank();
    let m = s.coeff_names.len();
    let total = n + m;
    (0..n)
        .map(|j| {
            let one_plus = Tropical::one(m).oplus(&s.y[j]);
            let c_pos = s.y[j].mul(&one_plus.inv());
            let c_neg = one_plus.inv();
            let mut pos = vec![0i32; total];
            let mut neg = vec![0i32; total];
            for i in 0..n {
                let e = s.b[i][j];
                if e > 0 {
                    pos[i] = e as i32;
                } else if e < 0 {
                    neg[i] = (-e) as i32;
                }
            }
            let mp = Monomial::from_slice(&pos).mul(&coefficient_monomial(&c_pos, n));
            let mn = Monomial::from_slice(&neg).mul(&coefficient_monomial(&c_neg, n));
            Poly::from_terms(total, [(mp, BigInt::from(1)), (mn, BigInt::from(1))])
        })
        .collect()
}

fn fresh_name(s: &ClusterSeed, k: usize, expansion: &RationalFn) -> String {
    let total = s.root_names.len();
    let taken = |name: &str| s.names.iter().enumerate().any(|(j, x)| j != k && x == name) || s.coeff_names.iter().any(|c| c == name);
    for v in 0..s.rank() {
        if *expansion == RationalFn::var(total, v) && !taken(&s.root_names[v]) {
            return s.root_names[v].clone();
        }
    }
    let mut name = format!("{}'", s.names[k]);
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Mutation of the triple `(x, y, B)` in direction `k` (0-based).
pub fn cluster_mutate(s: &ClusterSeed, k: usize) -> Result<ClusterSeed> {
    let n = s.rank();
    if k >= n {
        return Err(Error::Domain(format!("direction {} out of range 1..={n}", k + 1)));
    }
    let total = s.root_names.len();
    let fk = &exchange_binomials(s)[k];
    let mut values = s.expansions.clone();
    values.extend((n..total).map(|v| RationalFn::var(total, v)));
    let new_var = compose(fk, &values)?.div(&s.expansions[k])?;
    let mut out = s.clone();
    out.names[k] = fresh_name(s, k, &new_var);
    out.expansions[k] = new_var;
    out.y = coeff_mutate(&s.y, &s.b, k);
    out.b = matrix_mutate(&s.b, k);
    Ok(out)
}

pub fn cluster_mutate_word(s: &ClusterSeed, word: &[usize]) -> Result<ClusterSeed> {
    let mut cur = s.clone();
    for &k in word {
        cur = cluster_mutate(&cur, k)?;
    }
    Ok(cur)
}

/// Γ(B) has an edge `i → j` iff `b_ij > 0`.
pub fn is_acyclic(b: &ExchangeMatrix) -> bool {
    let n = b.len();
    let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| b[i][j] > 0).count()).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
    let mut seen = 0;
    while let Some(i) = queue.pop_front() {
        seen += 1;
        for j in 0..n {
            if b[i][j] > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
    }
    seen == n
}

/// Minimal positive integer `D` with `d_i b_ij = -d_j b_ji`.
pub fn skew_symmetrizer(b: &ExchangeMatrix) -> Option<Vec<i64>> {
    let n = b.len();
    if !is_sign_skew_symmetric(b) {
        return None;
    }
    // d as fractions (num, den), fixed to 1 at the first vertex of each component
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (p, q) = d[i].expect("visited");
            for j in 0..n {
                if b[i][j] == 0 || d[j].is_some() {
                    continue;
                }
                // d_j = d_i · b_ij / (-b_ji)
                let (mut pj, mut qj) = (p * b[i][j].abs(), q * b[j][i].abs());
                let g = pj.gcd(&qj);
                pj /= g;
                qj /= g;
                d[j] = Some((pj, qj));
                comp.push(j);
                stack.push(j);
            }
        }
        let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(&d[i].expect("visited").1));
        let scaled: Vec<i64> = comp.iter().map(|&i| d[i].expect("visited").0 * (l / d[i].expect("visited").1)).collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &v) in comp.iter().zip(&scaled) {
            d[i] = Some((v / g, 1));
        }
    }
    let d: Vec<i64> = d.into_iter().map(|x| x.expect("assigned").0).collect();
    let ok = (0..n).all(|i| (0..n).all(|j| d[i] * b[i][j] == -d[j] * b[j][i]));
    ok.then_some(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TotalSssVerdict {
    /// Skew-symmetrizable, hence totally sign-skew-symmetric.
    Yes,
    NoCounterexampleToDepth {
        depth: usize,
        matrices: usize,
    },
    /// 1-based mutation word producing a matrix that is not sign-skew-symmetric.
    Counterexample {
        word: Vec<usize>,
    },
}

/// Search mutation classes breadth first for a matrix that is not sign-skew-symmetric.
pub fn is_totally_sss(b: &ExchangeMatrix, depth: usize) -> TotalSssVerdict {
    if !is_sign_skew_symmetric(b) {
        return TotalSssVerdict::Counterexample { word: vec![] };
    }
    if skew_symmetrizer(b).is_some() {
        return TotalSssVerdict::Yes;
    }
    let n = b.len();
    let mut seen: HashSet<ExchangeMatrix> = HashSet::from([b.clone()]);
    let mut frontier: Vec<(ExchangeMatrix, Vec<usize>)> = vec![(b.clone(), vec![])];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, w) in &frontier {
            for k in 0..n {
                if w.last() == Some(&k) {
                    continue;
                }
                let mk = matrix_mutate(m, k);
                let mut wk = w.clone();
                wk.push(k);
                if !is_sign_skew_symmetric(&mk) {
                    return TotalSssVerdict::Counterexample { word: wk.iter().map(|k| k + 1).collect() };
                }
                if seen.insert(mk.clone()) {
                    next.push((mk, wk));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    TotalSssVerdict::NoCounterexampleToDepth { depth, matrices: seen.len() }
}

/// A permutation σ (`σ[new] = old`) with `b_{σ(i),σ(j)} ≥ 0` for all `i > j`.
/// Exhaustive backtracking for rank at most 8, a topological order beyond.
pub fn acyclic_renumbering(b: &ExchangeMatrix) -> Option<Vec<usize>> {
    let n = b.len();
    if n > 8 {
        return topological_renumbering(b);
    }
    fn extend(b: &ExchangeMatrix, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = b.len();
        if perm.len() == n {
            return true;
        }
        for c in 0..n {
            if used[c] || perm.iter().any(|&p| b[c][p] < 0) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            if extend(b, perm, used) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(b, &mut perm, &mut used).then_some(perm)
}

fn topological_renumbering(b: &ExchangeMatrix) -> Option<Vec<usize>> {
    // later indices point to earlier ones: order sinks of `i → j iff b_ij > 0` first
    let n = b.len();
    let mut outdeg: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| b[i][j] > 0).count()).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| outdeg[i] == 0).collect();
    let mut perm = Vec::with_capacity(n);
    while let Some(j) = queue.pop_front() {
        perm.push(j);
        for i in 0..n {
            if b[i][j] > 0 {
                outdeg[i] -= 1;
                if outdeg[i] == 0 {
                    queue.push_back(i);
                }
            }
        }
    }
    let ok = perm.len() == n && (0..n).all(|i| (0..i).all(|j| b[perm[i]][perm[j]] >= 0));
    ok.then_some(perm)
}

/// Reorder the cluster (and `B`, `y` alongside) by `perm[new] = old`.
pub fn renumber(s: &ClusterSeed, perm: &[usize]) -> ClusterSeed {
    let mut out = s.clone();
    out.names = perm.iter().map(|&p| s.names[p].clone()).collect();
    out.expansions = perm.iter().map(|&p| s.expansions[p].clone()).collect();
    out.y = perm.iter().map(|&p| s.y[p].clone()).collect();
    out.b = perm.iter().map(|&p| perm.iter().map(|&q| s.b[p][q]).collect()).collect();
    out
}

/// LP seed with the cluster as active variables, the coefficient generators as
/// frozen variables and the exchange binomials as exchange polynomials. A
/// binomial that is reducible (or a unit) is rejected with its witness.
pub fn cluster_to_lp(s: &ClusterSeed) -> Result<LPSeed> {
    let n = s.rank();
    let lp = LPSeed::from_parts(
        s.ring_names(),
        n,
        exchange_binomials(s),
        s.root_names.clone(),
        n,
        s.expansions.iter().cloned().chain((n..s.root_names.len()).map(|v| RationalFn::var(s.root_names.len(), v))).collect(),
    );
    let report = validate_seed(&lp, true);
    for e in &report.entries {
        match &e.irreducibility {
            Some(IrreducibilityVerdict::Reducible { witness }) => {
                return Err(Error::Rejected(format!("F_{} = {} is reducible, factor {}", e.var, e.exchange, witness)))
            }
            Some(IrreducibilityVerdict::Unit) => return Err(Error::Rejected(format!("F_{} = {} is a unit", e.var, e.exchange))),
            _ => {}
        }
        if !e.is_valid(false) {
            return Err(Error::Rejected(format!("F_{} = {} breaks the seed axioms", e.var, e.exchange)));
        }
    }
    Ok(lp)
}

#[derive(Clone, Debug, Serialize)]
pub struct SameClusterReport {
    /// Per direction: `"equal"`, `"inverted"` or `"neither"`.
    pub branches: Vec<&'static str>,
    pub exchange_equal: bool,
    pub skew_symmetrizer: Option<Vec<i64>>,
    pub violations: Vec<String>,
}

/// Given `x_{i;2} = x_{σ(i);1}`, check that for every `k` either
/// `y_{k;2} = y_{σ(k);1}` and column `k` of `B_2` matches, or both are inverted,
/// and that `F_{i;2} = F_{σ(i);1}`. For skew-symmetrizable `B` also check
/// `d_k = d_{σ(k)}`, the first branch, and `b^2_{ik} d_{σ(k)} = b^1_{σ(i)σ(k)} d_k`.
pub fn probe_cluster_same_cluster(s1: &ClusterSeed, s2: &ClusterSeed, sigma: &[usize]) -> SameClusterReport {
    let n = s1.rank();
    let mut violations = Vec::new();
    for i in 0..n {
        if s2.expansions[i] != s1.expansions[sigma[i]] {
            violations.push(format!("precondition: x_{} is not x_{} of the first seed", i + 1, sigma[i] + 1));
        }
    }
    let mut branches = Vec::with_capacity(n);
    for k in 0..n {
        let col_eq = (0..n).all(|i| s2.b[i][k] == s1.b[sigma[i]][sigma[k]]);
        let col_neg = (0..n).all(|i| s2.b[i][k] == -s1.b[sigma[i]][sigma[k]]);
        let y_eq = s2.y[k] == s1.y[sigma[k]];
        let y_inv = s2.y[k] == s1.y[sigma[k]].inv();
        let branch = if y_eq && col_eq {
            "equal"
        } else if y_inv && col_neg {
            "inverted"
        } else {
            violations.push(format!("direction {}: neither branch of the dichotomy holds", k + 1));
            "neither"
        };
        branches.push(branch);
    }
    // F_{i;2} = F_{σ(i);1} after renaming x_{j;2} to x_{σ(j);1}
    let f1 = exchange_binomials(s1);
    let f2 = exchange_binomials(s2);
    let total = n + s1.coeff_names.len();
    let map: Vec<usize> = sigma.iter().copied().chain(n..total).collect();
    let exchange_equal = (0..n).all(|i| f2[i].embed(total, &map) == f1[sigma[i]]);
    if !exchange_equal {
        violations.push("exchange polynomials differ under σ".into());
    }
    let skew = skew_symmetrizer(&s1.b);
    if let Some(d) = &skew {
        for k in 0..n {
            if d[k] != d[sigma[k]] {
                violations.push(format!("d_{} != d_{}", k + 1, sigma[k] + 1));
            }
            if branches[k] != "equal" {
                violations.push(format!("direction {}: skew-symmetrizable seed takes the inverted branch", k + 1));
            }
            for i in 0..n {
                if s2.b[i][k] * d[sigma[k]] != s1.b[sigma[i]][sigma[k]] * d[k] {
                    violations.push(format!("matrix identity fails at ({}, {})", i + 1, k + 1));
                }
            }
        }
    }
    SameClusterReport { branches, exchange_equal, skew_symmetrizer: skew, violations }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClusterOrbitProbe {
    pub seeds: usize,
    pub coinciding_pairs: usize,
    pub violations: Vec<String>,
}

/// Enumerate all words up to `depth` without immediate repeats, find pairs of
/// seeds whose clusters coincide up to a permutation and probe each pair.
pub fn probe_cluster_orbit(s: &ClusterSeed, depth: usize) -> Result<ClusterOrbitProbe> {
    let n = s.rank();
    let mut seeds: Vec<(Vec<usize>, ClusterSeed)> = vec![(vec![], s.clone())];
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &u in &frontier {
            for k in 0..n {
                if seeds[u].0.last() == Some(&k) {
                    continue;
                }
                let child = cluster_mutate(&seeds[u].1, k)?;
                let mut w = seeds[u].0.clone();
                w.push(k);
                seeds.push((w, child));
                next.push(seeds.len() - 1);
            }
        }
        frontier = next;
    }
    let mut report = ClusterOrbitProbe { seeds: seeds.len(), ..Default::default() };
    for a in 0..seeds.len() {
        for b in a + 1..seeds.len() {
            let (s1, s2) = (&seeds[a].1, &seeds[b].1);
            let sigma: Option<Vec<usize>> = (0..n).map(|i| (0..n).find(|&j| s2.expansions[i] == s1.expansions[j])).collect();
            let Some(sigma) = sigma else { continue };
            report.coinciding_pairs += 1;
            let r = probe_cluster_same_cluster(s1, s2, &sigma);
            let fmt = |w: &[usize]| w.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
            report.violations.extend(r.violations.into_iter().map(|v| format!("[{}] vs [{}]: {v}", fmt(&seeds[a].0), fmt(&seeds[b].0))));
        }
    }
    Ok(report)
}
