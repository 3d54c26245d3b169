//! LP mutation, bounded orbits and the cluster-determines-seed probes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::base_budget;
use crate::error::{Error, Result};
use crate::poly::{exact_div, gcd, monomial_content, Monomial, Poly, RationalFn};
use crate::seed::{canonical_key, exchange_laurent, seeds_equivalent, HatData, LPSeed, SeedKey};

/// Mutate in direction `k` (0-based).
pub fn mutate(s: &LPSeed, k: usize) -> Result<LPSeed> {
    let h = exchange_laurent(s)?;
    mutate_with_hat(s, &h, k)
}

/// Mutation with precomputed exchange Laurent polynomials of `s`.
pub fn mutate_with_hat(s: &LPSeed, h: &HatData, k: usize) -> Result<LPSeed> {
    let n = s.rank();
    if k >= n {
        return Err(Error::Domain(format!("direction {} out of range 1..={n}", k + 1)));
    }
    // x'_k = F̂_k / x_k, tracked in the root ring; the sign is chosen so the
    // expansion's numerator is normalized, and the rewrite has to agree
    let mut hat_k = h.hat[k].clone();
    let hat_root = crate::poly::compose(&hat_k, s.expansions())?;
    let mut new_var = hat_root.div(&s.expansions()[k])?;
    if !new_var.num().is_sign_normalized() {
        new_var = new_var.neg();
        hat_k = -&hat_k;
    }
    let mut exchange = Vec::with_capacity(n);
    for (i, fi) in s.exchange().iter().enumerate() {
        if i == k || !fi.depends_on(k) {
            exchange.push(fi.clone());
            continue;
        }
        exchange.push(rewrite_dependent(s, fi, &hat_k, i, k)?);
    }
    let mut expansions = s.expansions().to_vec();
    expansions[k] = new_var;

    let mut names = s.names().to_vec();
    names[k] = fresh_name(s, k, &expansions[k]);
    Ok(LPSeed::from_parts(names, n, exchange, s.root_names().to_vec(), s.root_rank(), expansions))
}

/// Steps (i)-(iii) for an exchange polynomial that depends on `x_k`.
fn rewrite_dependent(s: &LPSeed, fi: &Poly, hat_k: &Poly, i: usize, k: usize) -> Result<Poly> {
    let total = s.nvars();
    let d = hat_k.eval_zero(i).map_err(|_| {
        Error::Consistency(format!(
            "F̂_{} cannot be evaluated at {} = 0 although {} occurs in F_{}",
            s.name(k),
            s.name(i),
            s.name(k),
            s.name(i)
        ))
    })?;
    if d.is_zero() {
        return Err(Error::Consistency(format!("F̂_{}|{}←0 vanishes", s.name(k), s.name(i))));
    }
    // position k now holds x'_k, so N_k = D · x_k^{-1} in the new variables
    let n_k = d.mul_monomial(&Monomial::var(total, k).pow(-1));
    let g = fi.substitute_poly(k, &n_k)?;
    let (_, d0) = monomial_content(&d)?;
    let mut h = g;
    loop {
        let (_, h0) = monomial_content(&h)?;
        let c = gcd(&h0, &d0)?;
        if c.is_unit() {
            break;
        }
        h = exact_div(&h, &c)?.ok_or_else(|| Error::Consistency("gcd does not divide its argument".into()))?;
    }
    Ok(monomial_content(&h)?.1)
}

fn fresh_name(s: &LPSeed, k: usize, expansion: &RationalFn) -> String {
    let root_total = s.root_names().len();
    let taken = |name: &str| s.names().iter().enumerate().any(|(j, x)| j != k && x == name);
    for v in 0..root_total {
        if *expansion == RationalFn::var(root_total, v) && !taken(&s.root_names()[v]) {
            return s.root_names()[v].clone();
        }
    }
    let mut name = format!("{}'", s.name(k));
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Left-to-right composition of mutations.
pub fn mutate_word(s: &LPSeed, word: &[usize]) -> Result<LPSeed> {
    let mut cur = s.clone();
    for &k in word {
        cur = mutate(&cur, k)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug)]
pub struct OrbitGraph {
    pub nodes: Vec<LPSeed>,
    /// `(from, direction, to)`, discovered from every expanded node.
    pub edges: Vec<(usize, usize, usize)>,
    /// BFS distance of each node from the start.
    pub depths: Vec<usize>,
    pub depth: usize,
    pub permutations: bool,
    pub truncated: bool,
}

impl OrbitGraph {
    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "permutations": self.permutations,
            "truncated": self.truncated,
            "nodes": self.nodes.iter().zip(&self.depths).enumerate().map(|(i, (s, d))| json!({
                "id": i,
                "distance": d,
                "seed": s.to_json(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(u, k, v)| json!([u, k + 1, v])).collect::<Vec<_>>(),
        })
    }
}

/// Breadth-first enumeration of seeds reachable in at most `depth` mutations,
/// merging equivalent seeds. Frontier nodes are mutated in parallel; insertion
/// is sequential in a fixed order, so the result matches a sequential run.
pub fn orbit(s: &LPSeed, depth: usize, permutations: bool) -> Result<OrbitGraph> {
    orbit_with_budget(s, depth, permutations, base_budget() as usize)
}

pub fn orbit_with_budget(s: &LPSeed, depth: usize, permutations: bool, max_nodes: usize) -> Result<OrbitGraph> {
    let n = s.rank();
    let mut nodes = vec![s.clone()];
    let mut depths = vec![0];
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    index.insert(canonical_key(s, permutations), 0);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut truncated = false;
    for d in 0..depth {
        let expanded: Vec<Result<Vec<LPSeed>>> = frontier
            .par_iter()
            .map(|&u| {
                let seed = &nodes[u];
                let h = exchange_laurent(seed)?;
                (0..n).map(|k| mutate_with_hat(seed, &h, k)).collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&u, children) in frontier.iter().zip(expanded) {
            for (k, child) in children?.into_iter().enumerate() {
                let key = canonical_key(&child, permutations);
                let v = match index.get(&key) {
                    Some(&v) => v,
                    None => {
                        if nodes.len() >= max_nodes {
                            truncated = true;
                            continue;
                        }
                        nodes.push(child);
                        depths.push(d + 1);
                        let v = nodes.len() - 1;
                        index.insert(key, v);
                        next.push(v);
                        v
                    }
                };
                edges.push((u, k, v));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(OrbitGraph { nodes, edges, depths, depth, permutations, truncated })
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub theorem: &'static str,
    pub nodes: (usize, usize),
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClusterProbeReport {
    pub pairs_checked: usize,
    pub same_cluster_pairs: usize,
    pub adjacent_cluster_pairs: usize,
    /// Set when a trivial exchange polynomial makes the adjacency check inapplicable.
    pub adjacency_skipped: bool,
    pub violations: Vec<Violation>,
}

/// Matching of the cluster of `b` into the cluster of `a` up to units:
/// `m[i] = Some(j)` when `x_{i;b} = unit · x_{j;a}`.
fn cluster_matching(a: &LPSeed, b: &LPSeed) -> Vec<Option<usize>> {
    let units = a.unit_root_vars();
    let n = a.rank();
    let mut used = vec![false; n];
    (0..n)
        .map(|i| {
            let j = (0..n).find(|&j| !used[j] && b.expansions()[i].unit_ratio(&a.expansions()[j], |v| units[v]).is_some());
            if let Some(j) = j {
                used[j] = true;
            }
            j
        })
        .collect()
}

fn has_trivial_exchange(s: &LPSeed) -> bool {
    s.exchange().iter().any(Poly::is_unit)
}

/// Scan all node pairs: equal clusters force equivalent seeds, and clusters
/// sharing `n - 1` variables force seeds that are equal or one mutation apart.
pub fn probe_cluster_determines_seed(g: &OrbitGraph) -> ClusterProbeReport {
    let m = g.nodes.len();
    let skip_adjacent = g.nodes.iter().any(has_trivial_exchange);
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    let results: Vec<(usize, usize, Vec<Violation>)> = pairs
        .par_iter()
        .map(|&(u, v)| {
            let a = &g.nodes[u];
            let b = &g.nodes[v];
            let n = a.rank();
            let matching = cluster_matching(a, b);
            let matched = matching.iter().filter(|x| x.is_some()).count();
            let mut out = Vec::new();
            let (mut same, mut adj) = (0, 0);
            if matched == n {
                same = 1;
                if seeds_equivalent(a, b, true).is_none() {
                    out.push(Violation {
                        theorem: "cluster-determines-seed",
                        nodes: (u, v),
                        detail: "clusters agree up to units but the seeds are not equivalent".into(),
                    });
                }
            } else if matched + 1 == n && n > 1 && !skip_adjacent {
                adj = 1;
                let hit: Vec<bool> = (0..n).map(|j| matching.contains(&Some(j))).collect();
                let k = hit.iter().position(|&h| !h).expect("one unmatched variable");
                let ok =
                    seeds_equivalent(a, b, true).is_some() || mutate(a, k).ok().is_some_and(|mk| seeds_equivalent(&mk, b, true).is_some());
                if !ok {
                    out.push(Violation {
                        theorem: "adjacent-clusters-one-mutation",
                        nodes: (u, v),
                        detail: format!("{} common cluster variables but not one mutation apart", n - 1),
                    });
                }
            }
            (same, adj, out)
        })
        .collect();
    let mut report = ClusterProbeReport { pairs_checked: pairs.len(), adjacency_skipped: skip_adjacent, ..Default::default() };
    for (s, a, v) in results {
        report.same_cluster_pairs += s;
        report.adjacent_cluster_pairs += a;
        report.violations.extend(v);
    }
    report
}
