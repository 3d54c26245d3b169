//! LP seeds: a cluster of active variables, trailing frozen (invertible)
//! variables, and one exchange polynomial per active variable.
//!
//! Variable order is the order of the seed file and fixes the lexicographic
//! order used throughout. Every seed also remembers the ring of the seed it was
//! mutated from (its *root*) and the expansion of each of its variables in that
//! ring, so cluster variables can be compared across mutations.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::budget::irreducibility_budget;
use crate::error::{Error, Result};
use crate::poly::{
    compose, exact_div, format_poly, irreducibility, is_valid_name, monomial_content_in, parse_poly_with, parse_ratfn, Irreducibility,
    Monomial, Poly, RationalFn,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPSeed {
    names: Vec<String>,
    n: usize,
    exchange: Vec<Poly>,
    root_names: Vec<String>,
    root_rank: usize,
    expansions: Vec<RationalFn>,
}

impl LPSeed {
    /// A fresh seed; it is its own root. Exchange polynomials are sign-normalized.
    pub fn new(active: Vec<String>, frozen: Vec<String>, exchange: Vec<Poly>) -> Result<Self> {
        let n = active.len();
        let names: Vec<String> = active.into_iter().chain(frozen).collect();
        check_names(&names)?;
        if exchange.len() != n {
            return Err(Error::InvalidSeed(format!("{} exchange polynomials for {} active variables", exchange.len(), n)));
        }
        for f in &exchange {
            if f.nvars() != names.len() {
                return Err(Error::InvalidSeed("exchange polynomial in the wrong ring".into()));
            }
            if f.is_zero() {
                return Err(Error::InvalidSeed("zero exchange polynomial".into()));
            }
        }
        let total = names.len();
        Ok(LPSeed {
            exchange: exchange.iter().map(Poly::sign_normalized).collect(),
            root_names: names.clone(),
            root_rank: n,
            expansions: (0..total).map(|i| RationalFn::var(total, i)).collect(),
            names,
            n,
        })
    }

    /// Build from string expressions, allowing negative exponents only on frozen variables.
    pub fn from_strings(active: &[&str], frozen: &[&str], exchange: &[&str]) -> Result<Self> {
        let names: Vec<&str> = active.iter().chain(frozen).copied().collect();
        let n = active.len();
        let polys = exchange.iter().map(|s| parse_poly_with(s, &names, |v| v >= n)).collect::<Result<Vec<_>>>()?;
        LPSeed::new(active.iter().map(|s| s.to_string()).collect(), frozen.iter().map(|s| s.to_string()).collect(), polys)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        LPSeed::from_json(&v)
    }

    /// Read the seed file format:
    /// `{"vars": [...], "frozen": [...], "exchange": {"a": "b+1", ...}}`, with
    /// optional `"root"` and `"expansions"` records written by [`LPSeed::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("seed must be a JSON object".into()))?;
        let active = string_list(obj.get("vars"), "vars")?;
        let frozen = match obj.get("frozen") {
            None | Some(Value::Null) => Vec::new(),
            other => string_list(other, "frozen")?,
        };
        let exch = obj.get("exchange").and_then(Value::as_object).ok_or_else(|| Error::Parse("missing \"exchange\" object".into()))?;
        let names: Vec<&str> = active.iter().chain(&frozen).map(String::as_str).collect();
        let n = active.len();
        for key in exch.keys() {
            if !active.contains(key) {
                return Err(Error::InvalidSeed(format!("exchange entry for non-active variable {key:?}")));
            }
        }
        let mut polys = Vec::with_capacity(n);
        for a in &active {
            let s =
                exch.get(a).and_then(Value::as_str).ok_or_else(|| Error::InvalidSeed(format!("missing exchange polynomial for {a:?}")))?;
            polys.push(parse_poly_with(s, &names, |v| v >= n)?);
        }
        let mut seed = LPSeed::new(active.clone(), frozen.clone(), polys)?;

        if let Some(root) = obj.get("root") {
            let ro = root.as_object().ok_or_else(|| Error::Parse("\"root\" must be an object".into()))?;
            let rv = string_list(ro.get("vars"), "root.vars")?;
            let rf = match ro.get("frozen") {
                None | Some(Value::Null) => Vec::new(),
                other => string_list(other, "root.frozen")?,
            };
            let root_rank = rv.len();
            let root_names: Vec<String> = rv.into_iter().chain(rf).collect();
            check_names(&root_names)?;
            if root_names.len() != seed.names.len() {
                return Err(Error::InvalidSeed("root ring has a different number of variables".into()));
            }
            let ex = obj
                .get("expansions")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("\"root\" given without \"expansions\"".into()))?;
            let rn: Vec<&str> = root_names.iter().map(String::as_str).collect();
            let mut expansions = Vec::with_capacity(seed.names.len());
            for name in &seed.names {
                let s = ex.get(name).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing expansion for {name:?}")))?;
                expansions.push(parse_ratfn(s, &rn)?);
            }
            seed.root_names = root_names;
            seed.root_rank = root_rank;
            seed.expansions = expansions;
        }
        Ok(seed)
    }

    pub fn to_json(&self) -> Value {
        let mut exch = Map::new();
        for i in 0..self.n {
            exch.insert(self.names[i].clone(), Value::String(self.format(&self.exchange[i])));
        }
        let mut out = json!({
            "vars": self.active_names(),
            "frozen": self.frozen_names(),
            "exchange": exch,
        });
        if !self.is_own_root() {
            let mut ex = Map::new();
            for (name, e) in self.names.iter().zip(&self.expansions) {
                ex.insert(name.clone(), Value::String(e.format(&self.root_names)));
            }
            out["root"] = json!({
                "vars": &self.root_names[..self.root_rank],
                "frozen": &self.root_names[self.root_rank..],
            });
            out["expansions"] = Value::Object(ex);
        }
        out
    }

    fn is_own_root(&self) -> bool {
        self.root_names == self.names
            && self.root_rank == self.n
            && self.expansions.iter().enumerate().all(|(i, e)| *e == RationalFn::var(self.nvars(), i))
    }

    /// Number of active variables.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Active plus frozen variables.
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn active_names(&self) -> &[String] {
        &self.names[..self.n]
    }

    pub fn frozen_names(&self) -> &[String] {
        &self.names[self.n..]
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        v >= self.n
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Resolve an active variable given by name or 1-based index.
    pub fn resolve_direction(&self, k: &str) -> Result<usize> {
        if let Some(i) = self.active_names().iter().position(|s| s == k) {
            return Ok(i);
        }
        match k.parse::<usize>() {
            Ok(i) if (1..=self.n).contains(&i) => Ok(i - 1),
            _ => Err(Error::Domain(format!("{k:?} is not an active variable of the seed"))),
        }
    }

    pub fn exchange(&self) -> &[Poly] {
        &self.exchange
    }

    pub fn root_names(&self) -> &[String] {
        &self.root_names
    }

    pub fn root_rank(&self) -> usize {
        self.root_rank
    }

    /// Expansion of each variable (active then frozen) in the root ring.
    pub fn expansions(&self) -> &[RationalFn] {
        &self.expansions
    }

    pub fn format(&self, p: &Poly) -> String {
        format_poly(p, &self.names)
    }

    pub fn format_root(&self, r: &RationalFn) -> String {
        r.format(&self.root_names)
    }

    /// Parse in the seed's ring; negative exponents only on frozen variables.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        parse_poly_with(s, &names, |v| v >= self.n)
    }

    /// Parse a Laurent polynomial in the seed's ring.
    pub fn parse_laurent(&self, s: &str) -> Result<Poly> {
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        parse_poly_with(s, &names, |_| true)
    }

    pub(crate) fn from_parts(
        names: Vec<String>,
        n: usize,
        exchange: Vec<Poly>,
        root_names: Vec<String>,
        root_rank: usize,
        expansions: Vec<RationalFn>,
    ) -> Self {
        LPSeed { names, n, exchange, root_names, root_rank, expansions }
    }

    /// Root-ring variables that are units for this seed: frozen variables whose
    /// expansion is a bare root variable.
    pub(crate) fn unit_root_vars(&self) -> Vec<bool> {
        let mut out = vec![false; self.root_names.len()];
        for e in &self.expansions[self.n..] {
            if e.den().is_one() && e.num().is_monomial() {
                let t = e.num().lex_first().expect("nonzero");
                if t.coeff == 1.into() && t.monomial.total_degree() == 1 && t.monomial.is_polynomial() {
                    let v = t.monomial.exps().iter().position(|&x| x == 1).expect("degree one");
                    out[v] = true;
                }
            }
        }
        out
    }

    /// The same seed, made its own root (expansions become the variables themselves).
    pub fn as_root(&self) -> LPSeed {
        let total = self.nvars();
        LPSeed {
            names: self.names.clone(),
            n: self.n,
            exchange: self.exchange.clone(),
            root_names: self.names.clone(),
            root_rank: self.n,
            expansions: (0..total).map(|i| RationalFn::var(total, i)).collect(),
        }
    }

    /// Same seed with a variable renamed.
    pub fn with_name(&self, i: usize, name: &str) -> Result<Self> {
        let mut s = self.clone();
        s.names[i] = name.to_string();
        check_names(&s.names)?;
        Ok(s)
    }
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if !is_valid_name(a) {
            return Err(Error::InvalidSeed(format!("invalid variable name {a:?}")));
        }
        if names[..i].contains(a) {
            return Err(Error::InvalidSeed(format!("duplicate variable name {a:?}")));
        }
    }
    Ok(())
}

fn string_list(v: Option<&Value>, field: &str) -> Result<Vec<String>> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("\"{field}\" must be a list of names")))?;
    arr.iter().map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse(format!("\"{field}\" entries must be strings")))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IrreducibilityVerdict {
    Irreducible,
    Reducible { witness: String },
    Unit,
    UnknownBudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub var: String,
    pub exchange: String,
    pub self_dependent: bool,
    /// Active variables dividing the polynomial.
    pub divisible_by: Vec<String>,
    /// Active variables carrying a negative exponent.
    pub negative_exponents: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducibility: Option<IrreducibilityVerdict>,
}

impl EntryReport {
    pub fn is_valid(&self, strict: bool) -> bool {
        let shape = !self.self_dependent && self.divisible_by.is_empty() && self.negative_exponents.is_empty();
        let irr = !strict || matches!(self.irreducibility, Some(IrreducibilityVerdict::Irreducible));
        shape && irr
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub strict: bool,
    pub valid: bool,
    /// Irreducibility was not checked.
    pub unchecked: bool,
    pub entries: Vec<EntryReport>,
}

impl ValidationReport {
    /// First reducibility witness, if any.
    pub fn witness(&self) -> Option<(&str, &str)> {
        self.entries.iter().find_map(|e| match &e.irreducibility {
            Some(IrreducibilityVerdict::Reducible { witness }) => Some((e.var.as_str(), witness.as_str())),
            _ => None,
        })
    }
}

pub fn irreducibility_verdict(s: &LPSeed, f: &Poly) -> IrreducibilityVerdict {
    match irreducibility(f, |v| s.is_frozen(v), irreducibility_budget()) {
        Irreducibility::Irreducible => IrreducibilityVerdict::Irreducible,
        Irreducibility::Reducible(w) => IrreducibilityVerdict::Reducible { witness: s.format(&w) },
        Irreducibility::Unit => IrreducibilityVerdict::Unit,
        Irreducibility::Unknown => IrreducibilityVerdict::UnknownBudgetExhausted,
    }
}

/// Check the seed axioms; `strict` adds the irreducibility heuristic.
pub fn validate_seed(s: &LPSeed, strict: bool) -> ValidationReport {
    let mut entries = Vec::with_capacity(s.n);
    for (i, f) in s.exchange.iter().enumerate() {
        let mut divisible_by = Vec::new();
        let mut negative_exponents = Vec::new();
        for j in 0..s.n {
            let lo = f.min_degree_in(j);
            if lo > 0 {
                divisible_by.push(s.names[j].clone());
            } else if lo < 0 {
                negative_exponents.push(s.names[j].clone());
            }
        }
        entries.push(EntryReport {
            var: s.names[i].clone(),
            exchange: s.format(f),
            self_dependent: f.depends_on(i),
            divisible_by,
            negative_exponents,
            irreducibility: strict.then(|| irreducibility_verdict(s, f)),
        });
    }
    let valid = entries.iter().all(|e| e.is_valid(strict));
    ValidationReport { strict, valid, unchecked: !strict, entries }
}

/// Reject seeds that break the shape axioms (irreducibility is not rechecked).
pub fn require_valid(s: &LPSeed) -> Result<()> {
    let r = validate_seed(s, false);
    if r.valid {
        return Ok(());
    }
    let e = r.entries.iter().find(|e| !e.is_valid(false)).expect("some invalid entry");
    let why = if e.self_dependent {
        format!("F_{} depends on {}", e.var, e.var)
    } else if !e.divisible_by.is_empty() {
        format!("F_{} is divisible by {}", e.var, e.divisible_by.join(", "))
    } else {
        format!("F_{} has negative exponents in {}", e.var, e.negative_exponents.join(", "))
    };
    Err(Error::InvalidSeed(why))
}

/// Exchange Laurent polynomials: `hat[j] = F_j / ∏_{k≠j} x_k^{a[k][j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatData {
    pub hat: Vec<Poly>,
    pub denom_exponents: Vec<Vec<u32>>,
}

impl HatData {
    /// `F̂_j = F_j` for every `j`.
    pub fn is_trivial(&self) -> bool {
        self.denom_exponents.iter().all(|row| row.iter().all(|&a| a == 0))
    }

    /// The monomial `F_j / F̂_j`.
    pub fn denominator(&self, j: usize, nvars: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        for (k, row) in self.denom_exponents.iter().enumerate() {
            m.exps_mut()[k] = row[j] as i32;
        }
        m
    }
}

/// `F_j|_{x_k ← F_k·u}` in the ring extended by `u`, which stands for `1/x'_k`.
fn substituted(fj: &Poly, fk: &Poly, k: usize) -> Result<Poly> {
    let total = fj.nvars();
    let u = Poly::var(total + 1, total);
    let value = &fk.extend_vars(1) * &u;
    fj.extend_vars(1).substitute_poly(k, &value)
}

/// `p` with its frozen monomial content and sign removed; divisibility by
/// exchange polynomials is taken up to these units.
fn unit_free(s: &LPSeed, p: &Poly) -> Result<Poly> {
    Ok(monomial_content_in(p, |v| v >= s.n && v < s.nvars())?.1)
}

/// Largest `a ≤ cap` with `f^a | p`.
fn max_power_dividing(p: &Poly, f: &Poly, cap: u32) -> Result<u32> {
    let mut a = 0;
    let mut cur = p.clone();
    while a < cap && !cur.is_zero() {
        match exact_div(&cur, f)? {
            Some(q) => {
                a += 1;
                cur = q;
            }
            None => break,
        }
    }
    Ok(a)
}

/// Largest `a` with `F_k^a` dividing `F_j|_{x_k ← F_k/x'_k}` (denominators
/// cleared). With `F_j = Σ_d c_d x_k^d` the coefficient of `x'_k^{D-d}` is
/// `c_d F_k^d`, so `a = min_d (d + ord_{F_k} c_d)`.
fn hat_exponent(s: &LPSeed, fj: &Poly, fk: &Poly, k: usize) -> Result<u32> {
    let fk = unit_free(s, fk)?;
    let mut best = u32::MAX;
    for (d, c) in fj.coeffs_in(k) {
        let d = d as u32;
        if d >= best {
            break;
        }
        best = d + max_power_dividing(&unit_free(s, &c)?, &fk, best - d)?;
    }
    Ok(if best == u32::MAX { 0 } else { best })
}

fn is_unit_of(s: &LPSeed, f: &Poly) -> bool {
    f.is_monomial()
        && f.lex_first().is_some_and(|t| {
            (t.coeff == 1.into() || t.coeff == (-1).into()) && t.monomial.exps().iter().enumerate().all(|(v, &e)| e == 0 || s.is_frozen(v))
        })
}

/// Compute the exchange Laurent polynomials.
pub fn exchange_laurent(s: &LPSeed) -> Result<HatData> {
    require_valid(s)?;
    let n = s.n;
    let total = s.nvars();
    let mut a = vec![vec![0u32; n]; n];
    for k in 0..n {
        let fk = &s.exchange[k];
        if is_unit_of(s, fk) {
            continue;
        }
        for j in 0..n {
            if j != k {
                a[k][j] = hat_exponent(s, &s.exchange[j], fk, k)?;
            }
        }
    }
    let hat = (0..n)
        .map(|j| {
            let mut m = Monomial::one(total);
            for (k, row) in a.iter().enumerate() {
                m.exps_mut()[k] = -(row[j] as i32);
            }
            s.exchange[j].mul_monomial(&m)
        })
        .collect();
    Ok(HatData { hat, denom_exponents: a })
}

/// Recover the exchange polynomials from their Laurent versions by clearing
/// active-variable monomials.
pub fn hat_to_exchange(h: &HatData, rank: usize) -> Vec<Poly> {
    h.hat.iter().map(|f| monomial_content_in(f, |v| v < rank).expect("nonzero").1).collect()
}

/// Maximality of every `a_{k,j}`: `F̂_j|_{x_k ← F_k/x'_k}` is not divisible by `F_k`.
pub fn hat_is_maximal(s: &LPSeed, h: &HatData) -> Result<bool> {
    for k in 0..s.n {
        if is_unit_of(s, &s.exchange[k]) {
            continue;
        }
        let fk_ext = unit_free(s, &s.exchange[k])?.extend_vars(1);
        for j in 0..s.n {
            if j == k {
                continue;
            }
            // F̂_j carries x_k^{-a}, so its substitution is divisible by F_k
            // exactly when F_k^{a+1} divides the substituted F_j
            let sub = unit_free(s, &substituted(&s.exchange[j], &s.exchange[k], k)?)?;
            let a = h.denom_exponents[k][j];
            if exact_div(&sub, &fk_ext.pow(a + 1))?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs `(i, k)` with `x_k ∈ F_i` but `x_i` occurring in `F_k / F̂_k`.
pub fn denominator_support_violations(s: &LPSeed, h: &HatData) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..s.n {
        for k in 0..s.n {
            if i != k && s.exchange[i].depends_on(k) && h.denom_exponents[i][k] != 0 {
                out.push((i, k));
            }
        }
    }
    out
}

/// Witness of seed equivalence: `x_{i;2} = ±m_i · x_{σ(i);1}` and
/// `F_{i;2} = ±m'_i · F_{σ(i);1}` with `m_i, m'_i` frozen monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub permutation: Vec<usize>,
    pub var_signs: Vec<i8>,
    pub exchange_signs: Vec<i8>,
}

/// Expansions of `s2`'s variables moved into the root ring of `s1` by name.
fn expansions_in(s1: &LPSeed, s2: &LPSeed) -> Option<Vec<RationalFn>> {
    if s1.root_names == s2.root_names {
        return Some(s2.expansions.clone());
    }
    let map: Option<Vec<usize>> = s2.root_names.iter().map(|nm| s1.root_names.iter().position(|x| x == nm)).collect();
    let map = map?;
    if s1.root_names.len() != s2.root_names.len() {
        return None;
    }
    let total = s1.root_names.len();
    Some(
        s2.expansions.iter().map(|e| RationalFn::new(&e.num().embed(total, &map), &e.den().embed(total, &map)).expect("nonzero")).collect(),
    )
}

/// Decide seed equivalence up to units and a renumbering σ; with `allow_permutation` off, σ is the identity.
pub fn seeds_equivalent(s1: &LPSeed, s2: &LPSeed, allow_permutation: bool) -> Option<Equivalence> {
    if s1.n != s2.n || s1.nvars() != s2.nvars() {
        return None;
    }
    let mut f1 = s1.frozen_names().to_vec();
    let mut f2 = s2.frozen_names().to_vec();
    f1.sort();
    f2.sort();
    if f1 != f2 {
        return None;
    }
    let e2 = expansions_in(s1, s2)?;
    let units = s1.unit_root_vars();
    let n = s1.n;
    // candidate images for each active variable of s2
    let mut cands: Vec<Vec<(usize, i8, Monomial)>> = Vec::with_capacity(n);
    for i in 0..n {
        let range: Vec<usize> = if allow_permutation { (0..n).collect() } else { vec![i] };
        let c: Vec<(usize, i8, Monomial)> =
            range.into_iter().filter_map(|j| e2[i].unit_ratio(&s1.expansions[j], |v| units[v]).map(|(sg, m)| (j, sg, m))).collect();
        if c.is_empty() {
            return None;
        }
        cands.push(c);
    }
    // frozen variables must agree by name and expansion
    let frozen_map: Vec<usize> = (n..s2.nvars()).map(|v| s1.index_of(&s2.names[v]).expect("same frozen names")).collect();
    for (off, &t) in frozen_map.iter().enumerate() {
        if e2[n + off] != s1.expansions[t] {
            return None;
        }
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_perm(s1, s2, &cands, &frozen_map, 0, &mut perm, &mut used)
}

fn search_perm(
    s1: &LPSeed,
    s2: &LPSeed,
    cands: &[Vec<(usize, i8, Monomial)>],
    frozen_map: &[usize],
    i: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Equivalence> {
    let n = s1.n;
    if i == n {
        return check_exchange_under(s1, s2, cands, frozen_map, perm);
    }
    for (j, _, _) in &cands[i] {
        if used[*j] {
            continue;
        }
        used[*j] = true;
        perm[i] = *j;
        if let Some(e) = search_perm(s1, s2, cands, frozen_map, i + 1, perm, used) {
            return Some(e);
        }
        used[*j] = false;
    }
    perm[i] = usize::MAX;
    None
}

fn check_exchange_under(
    s1: &LPSeed,
    s2: &LPSeed,
    cands: &[Vec<(usize, i8, Monomial)>],
    frozen_map: &[usize],
    perm: &[usize],
) -> Option<Equivalence> {
    let n = s1.n;
    let total = s1.nvars();
    // x_{i;2} = sign · (root monomial) · x_{σ(i);1}; express the root monomial in s1's frozen positions
    let mut var_signs = Vec::with_capacity(n);
    let mut var_units: Vec<Monomial> = Vec::with_capacity(n);
    for i in 0..n {
        let (_, sg, m) = cands[i].iter().find(|(j, _, _)| *j == perm[i]).expect("chosen candidate");
        var_signs.push(*sg);
        var_units.push(root_monomial_to_seed(s1, m)?);
    }
    let mut map: Vec<usize> = perm.to_vec();
    map.extend_from_slice(frozen_map);
    let mut exchange_signs = vec![0i8; n];
    for i in 0..n {
        let f2 = &s2.exchange[i];
        // rewrite F_{i;2} in s1's variables
        let mut img = Poly::zero(total);
        for (m, c) in f2.terms() {
            let mut coeff = c.clone();
            let mut mono = Monomial::one(total);
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                mono.exps_mut()[map[v]] += e;
                if v < n {
                    if var_signs[v] < 0 && e % 2 != 0 {
                        coeff = -coeff;
                    }
                    mono = mono.mul(&var_units[v].pow(e));
                }
            }
            img.add_term(mono, coeff);
        }
        let target = &s1.exchange[perm[i]];
        let r = crate::poly::unit_ratio(target, &img, |v| v >= n)?;
        exchange_signs[i] = if r.coeff > 0.into() { 1 } else { -1 };
    }
    Some(Equivalence { permutation: perm.to_vec(), var_signs, exchange_signs })
}

fn root_monomial_to_seed(s: &LPSeed, m: &Monomial) -> Option<Monomial> {
    let mut out = Monomial::one(s.nvars());
    for (rv, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let pos = (s.n..s.nvars()).find(|&p| s.expansions[p] == RationalFn::var(s.root_names.len(), rv))?;
        out.exps_mut()[pos] += e;
    }
    Some(out)
}

/// Sign-normalize every exchange polynomial and every expansion numerator.
pub fn canonicalize(s: &LPSeed) -> LPSeed {
    let mut out = s.clone();
    for f in &mut out.exchange {
        *f = f.sign_normalized();
    }
    for e in &mut out.expansions {
        if !e.num().is_sign_normalized() {
            *e = e.neg();
        }
    }
    out
}

/// Hashable representative of a seed's equivalence class. Units (signs and
/// frozen monomials) are stripped; in permutation mode positions are sorted
/// by their expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey(Vec<String>);

pub fn canonical_key(s: &LPSeed, allow_permutation: bool) -> SeedKey {
    let units = s.unit_root_vars();
    let rn = &s.root_names;
    let strip_root = |p: &Poly| -> Poly { monomial_content_in(p, |v| units[v]).expect("nonzero").1 };
    let exp_keys: Vec<String> = s
        .expansions
        .iter()
        .map(|e| {
            let num = strip_root(e.num());
            let den = strip_root(e.den());
            format!("{}|{}", format_poly(&num, rn), format_poly(&den, rn))
        })
        .collect();
    let n = s.n;
    let mut order: Vec<usize> = (0..n).collect();
    if allow_permutation {
        order.sort_by(|&a, &b| exp_keys[a].cmp(&exp_keys[b]));
    }
    // perm[new] = old over all positions; frozen positions fixed
    let mut perm = order.clone();
    perm.extend(n..s.nvars());
    let generic: Vec<String> = (0..s.nvars()).map(|i| format!("v{i}")).collect();
    let mut key = Vec::with_capacity(2 * n + (s.nvars() - n));
    for &old in &order {
        let f = s.exchange[old].permute_vars(&perm);
        let f = monomial_content_in(&f, |v| v >= n).expect("nonzero").1;
        key.push(exp_keys[old].clone());
        key.push(format_poly(&f, &generic));
    }
    key.extend(exp_keys[n..].iter().cloned());
    SeedKey(key)
}

/// Freeze active variable `i`: it moves to the end of the frozen list, `F_i`
/// is dropped and every other `F_j` is multiplied by the power of `x_i` in `F̂_j`.
pub fn freeze(s: &LPSeed, i: usize) -> Result<LPSeed> {
    if i >= s.n {
        return Err(Error::Domain(format!("variable #{} is not active", i + 1)));
    }
    let h = exchange_laurent(s)?;
    let total = s.nvars();
    // new order: active without i, old frozen, then x_i
    let mut perm: Vec<usize> = (0..s.n).filter(|&j| j != i).collect();
    perm.extend(s.n..total);
    perm.push(i);
    let mut exchange = Vec::with_capacity(s.n - 1);
    for j in 0..s.n {
        if j == i {
            continue;
        }
        let a = h.denom_exponents[i][j] as i32;
        let fj = s.exchange[j].mul_monomial(&Monomial::var(total, i).pow(-a));
        exchange.push(fj.permute_vars(&perm));
    }
    let names = perm.iter().map(|&p| s.names[p].clone()).collect();
    let expansions = perm.iter().map(|&p| s.expansions[p].clone()).collect();
    Ok(LPSeed::from_parts(names, s.n - 1, exchange, s.root_names.clone(), s.root_rank, expansions))
}

/// Expansion of an arbitrary seed polynomial in the root ring.
pub fn to_root(s: &LPSeed, p: &Poly) -> Result<RationalFn> {
    compose(p, &s.expansions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex26() -> LPSeed {
        LPSeed::from_strings(&["a", "b", "c"], &[], &["b+1", "a+c", "b+1"]).unwrap()
    }

    #[test]
    fn hat_of_running_example() {
        let s = ex26();
        let h = exchange_laurent(&s).unwrap();
        assert_eq!(s.format(&h.hat[0]), "b*c^-1 + c^-1");
        assert_eq!(s.format(&h.hat[1]), "a + c");
        assert_eq!(s.format(&h.hat[2]), "a^-1*b + a^-1");
        assert_eq!(hat_to_exchange(&h, 3), s.exchange().to_vec());
        assert!(hat_is_maximal(&s, &h).unwrap());
        assert!(denominator_support_violations(&s, &h).is_empty());
    }

    #[test]
    fn validation_flags_shape_errors() {
        let s = LPSeed::from_strings(&["x1", "x2"], &[], &["x1+1", "x1"]).unwrap();
        let r = validate_seed(&s, false);
        assert!(!r.valid);
        assert!(r.entries[0].self_dependent);
        assert_eq!(r.entries[1].divisible_by, vec!["x1".to_string()]);
        let ok = validate_seed(&ex26(), true);
        assert!(ok.valid && !ok.unchecked);
    }

    #[test]
    fn strict_validation_finds_reducible_binomial() {
        let s = LPSeed::from_strings(&["x1", "x2"], &[], &["x2^3+1", "x1^3+1"]).unwrap();
        let r = validate_seed(&s, true);
        assert!(!r.valid);
        assert_eq!(r.witness(), Some(("x1", "x2 + 1")));
    }

    #[test]
    fn equivalence_up_to_sign_and_swap() {
        let s = ex26();
        let neg = LPSeed::from_strings(&["a", "b", "c"], &[], &["b+1", "a+c", "b+1"]).unwrap();
        let mut neg = neg;
        neg.exchange[1] = -&neg.exchange[1];
        let e = seeds_equivalent(&s, &neg, false).unwrap();
        assert_eq!(e.exchange_signs, vec![1, -1, 1]);
        let swapped = LPSeed::from_strings(&["c", "b", "a"], &[], &["b+1", "a+c", "b+1"]).unwrap();
        assert!(seeds_equivalent(&s, &swapped, false).is_none());
        let e = seeds_equivalent(&s, &swapped, true).unwrap();
        assert_eq!(e.permutation, vec![2, 1, 0]);
        assert_eq!(canonical_key(&s, true), canonical_key(&swapped, true));
    }

    #[test]
    fn freezing_reads_exponents_from_each_hat() {
        let s = ex26();
        let f = freeze(&s, 2).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.frozen_names(), &["c".to_string()]);
        assert_eq!(f.format(&f.exchange()[0]), "b*c^-1 + c^-1");
        assert_eq!(f.format(&f.exchange()[1]), "a + c");
        assert!(freeze(&s, 3).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let s = LPSeed::from_strings(&["a", "b"], &["c"], &["(b+1)*c^-1", "a+c"]).unwrap();
        let v = s.to_json();
        assert_eq!(v["exchange"]["a"], "b*c^-1 + c^-1");
        let back = LPSeed::from_json(&v).unwrap();
        assert_eq!(back, s);
        assert!(LPSeed::from_json_str(r#"{"vars":["a"],"exchange":{"a":"a^-1"}}"#).is_err());
        assert!(LPSeed::from_json_str(r#"{"vars":["a","a"],"exchange":{"a":"1"}}"#).is_err());
    }
}
