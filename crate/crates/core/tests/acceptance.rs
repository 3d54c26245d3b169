//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use lpalg::bounds::{self, format_laurent, SeedContext};
use lpalg::cli;
use lpalg::cluster::{cluster_mutate, exchange_binomials, ClusterSeed};
use lpalg::mutation::{mutate, orbit, probe_cluster_determines_seed};
use lpalg::poly::format_poly;
use lpalg::seed::{canonical_key, canonicalize, freeze, seeds_equivalent, LPSeed};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use common::*;

type Outcome = std::result::Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    cli::run(std::iter::once("lpalg").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out) = run_cli(&a);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?} printed non-JSON ({e}): {out}"));
    (code, v)
}

fn c1_mutation_and_hat() -> Outcome {
    let (code, hat) = run_json(&["hat", "--seed", "ex2_6"]);
    check(code == 0, "hat exit status")?;
    check(hat["hat"] == json!({"a": "(b + 1)/c", "b": "a + c", "c": "(b + 1)/a"}), format!("hat = {}", hat["hat"]))?;
    let (code, m) = run_json(&["mutate", "--seed", "ex2_6", "-k", "a"]);
    check(code == 0, "mutate exit status")?;
    check(m["exchange"] == json!({"a'": "b + 1", "b": "a'*c^2 + 1", "c": "b + 1"}), format!("mutated exchange = {}", m["exchange"]))?;
    check(m["expansions"]["a'"] == json!("(b + 1)/(a*c)"), format!("a' = {}", m["expansions"]["a'"]))?;
    // the same seed built by hand, compared up to units
    let expected = LPSeed::from_strings(&["a'", "b", "c"], &[], &["b + 1", "a'*c^2 + 1", "b + 1"]).unwrap();
    let got = mutate(&fixture("ex2_6"), 0).unwrap();
    check(canonicalize(&got).exchange() == canonicalize(&expected).exchange(), "exchange differs from the hand-built seed")?;
    Ok("F̂ and μ_a match".into())
}

fn c2_freezing() -> Outcome {
    let s = fixture("ex2_6");
    let f = freeze(&s, 2).unwrap();
    let expected = fixture("ex2_16");
    check(f.frozen_names() == ["c".to_string()], "c is not frozen")?;
    check(seeds_equivalent(&f, &expected, false).is_some(), format!("frozen seed {}", f.to_json()))?;
    let (code, v) = run_json(&["freeze", "--seed", "ex2_6", "-k", "c"]);
    check(code == 0, "freeze exit status")?;
    let ex = &v["exchange"];
    let a = expected.parse_laurent(ex["a"].as_str().unwrap()).unwrap();
    let b = expected.parse_laurent(ex["b"].as_str().unwrap()).unwrap();
    check(
        a == expected.parse_laurent("(b + 1)*c^-1").unwrap() && b == expected.parse_laurent("a + c").unwrap(),
        format!("cli freeze {ex}"),
    )?;
    Ok("{(a,(b+1)/c),(b,a+c)} over Z[c^±1]".into())
}

fn c3_reducible_binomials() -> Outcome {
    let cs = ClusterSeed::from_json_str(include_str!("../fixtures/ex2_24.json")).unwrap();
    let ring = cs.ring_names();
    let f: Vec<String> = exchange_binomials(&cs).iter().map(|p| format_poly(p, &ring)).collect();
    check(f == ["x2^3 + 1", "x1^3 + 1"], format!("binomials {f:?}"))?;
    let (code, v) = run_json(&["cluster", "to-lp", "--seed", "ex2_24"]);
    check(code == 1, format!("to-lp exit status {code}"))?;
    check(v["rejected"] == json!(true) && v["factor"] == json!("x2 + 1"), format!("rejection {v}"))?;
    Ok("rejected with factor x2 + 1".into())
}

fn c4_condition_i_lost() -> Outcome {
    let (code, v) = run_json(&["mutate", "--seed", "ex4_11", "-k", "b", "--name", "d"]);
    check(code == 0, "mutate exit status")?;
    check(v["exchange"] == json!({"a": "d + 1", "d": "a + c", "c": "a + d + 1"}), format!("mutated exchange = {}", v["exchange"]))?;
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), v.to_string()).unwrap();
    let (code, r) = run_json(&["condition12", "--seed", f.path().to_str().unwrap()]);
    check(code == 1, "condition12 should report failure")?;
    check(r["i"]["holds"] == json!(false), "(i) holds")?;
    check(r["i"]["witnesses"] == json!(["F̂_c = F_c/a"]), format!("witnesses {}", r["i"]["witnesses"]))?;
    Ok("(i) fails with F̂_c = F_c/a".into())
}

fn c5_bounds_example() -> Outcome {
    let (code, r) = run_json(&["condition12", "--seed", "ex4_24"]);
    check(code == 0, "condition12 exit status")?;
    for clause in ["i", "ii", "iii", "iv"] {
        check(r[clause]["holds"] == json!(true), format!("clause ({clause}) fails"))?;
    }
    check(r["j_set"] == json!(["c"]), format!("J = {}", r["j_set"]))?;
    let s = fixture("ex4_24");
    let names = s.names().to_vec();
    for (g, want) in [("b'", "c*d/b"), ("c'", "(b*d + 1)/c"), ("d'", "1/d")] {
        let got = format_laurent(&bounds::phi(&s, g).unwrap(), &names);
        check(got == want, format!("φ({g}) = {got}"))?;
    }
    for (m, l) in [("d^-1", json!([0, 0, 1])), ("b^-1", json!([1, 1, 1]))] {
        let (code, v) = run_json(&["member", "--seed", "ex4_24", "--expr", m, "--which", "imphi"]);
        check(code == 0 && v["certified"] == json!(true), format!("{m} not certified"))?;
        check(v["monomials"][0][1] == l, format!("{m}: l = {}", v["monomials"][0][1]))?;
    }
    Ok("all clauses, J={c}, φ images and l-vectors".into())
}

fn c6_involution() -> Outcome {
    let mut assertions = 0;
    for name in ["ex2_6", "ex2_16", "ex4_11", "ex4_24"] {
        let s = fixture(name);
        for k in 0..s.rank() {
            let back = mutate(&mutate(&s, k).unwrap(), k).unwrap();
            check(seeds_equivalent(&s, &back, false).is_some(), format!("{name}: μ_{k}μ_{k} ≠ id"))?;
            check(canonical_key(&s, false) == canonical_key(&back, false), format!("{name}: canonical keys differ at {k}"))?;
            assertions += 2;
        }
    }
    let cs = ClusterSeed::from_json_str(include_str!("../fixtures/ex2_24.json")).unwrap();
    for k in 0..cs.rank() {
        let back = cluster_mutate(&cluster_mutate(&cs, k).unwrap(), k).unwrap();
        check(back.matrix() == cs.matrix() && back.y() == cs.y(), format!("ex2_24: matrix or coefficients differ at {k}"))?;
        check(back.expansions() == cs.expansions(), format!("ex2_24: cluster differs at {k}"))?;
        assertions += 2;
    }
    check(assertions >= 15, format!("only {assertions} assertions"))?;
    Ok(format!("{assertions} assertions"))
}

fn c7_laurent() -> Outcome {
    let mut words = 0;
    for name in ["ex2_6", "ex4_24"] {
        let (code, v) = run_json(&["laurent-check", "--seed", name, "--max-len", "4"]);
        check(code == 0 && v["all_laurent"] == json!(true), format!("{name}: {}", v["witnesses"]))?;
        check(v["truncated"] == json!(false), format!("{name}: truncated"))?;
        words += v["words_checked"].as_u64().unwrap();
    }
    Ok(format!("{words} words, every cluster variable Laurent"))
}

fn c8_cluster_probe() -> Outcome {
    let mut pairs = 0;
    for (name, depth) in [("ex2_6", 3), ("ex4_24", 2)] {
        let g = orbit(&fixture(name), depth, true).unwrap();
        check(!g.truncated, format!("{name}: orbit truncated"))?;
        let p = probe_cluster_determines_seed(&g);
        check(p.violations.is_empty(), format!("{name}: {:?}", p.violations))?;
        pairs += p.pairs_checked;
    }
    Ok(format!("{pairs} node pairs, no violations"))
}

fn c9_basis() -> Outcome {
    let s = fixture("ex4_24");
    let r = bounds::basis_check(&s, 2).unwrap();
    check(r.indices == 625 && r.injective && r.disagreements.is_empty(), format!("{r:?}"))?;
    // independent expansion and scan
    let ctx = SeedContext::new(&s).unwrap();
    let mut seen = std::collections::HashSet::new();
    for c in 0..625 {
        let a: Vec<i32> = (0..4).map(|i| (c / 5i32.pow(3 - i)) % 5 - 2).collect();
        let (lead, coeff) = brute_lex_first(&standard_monomial(&s, &a), 4);
        let (m, mc) = ctx.leading_index_map(&a).unwrap();
        check(m.exps()[..4] == lead[..] && mc == coeff, format!("leading term of x^{a:?}"))?;
        check(seen.insert(lead), format!("collision at {a:?}"))?;
    }
    Ok("625 indices, injective, matches brute force".into())
}

fn c10_duality() -> Outcome {
    let s = fixture("ex4_24");
    let samples = bounds::construct_samples(&s, 2, usize::MAX).unwrap();
    let r = bounds::probe_lower_equals_upper(&s, &samples).unwrap();
    check(r.condition_holds, "condition does not hold")?;
    check(r.budget_exhausted.is_empty(), format!("budget exhausted on {:?}", r.budget_exhausted))?;
    check(r.violations.is_empty(), format!("{:?}", r.violations))?;
    check(r.members > 0 && r.members < r.compared, "samples are all on one side")?;
    Ok(format!("{} samples ({} members) agree", r.compared, r.members))
}

fn c11_upper_invariance() -> Outcome {
    let s = fixture("ex4_24");
    let samples = bounds::construct_samples(&s, 2, usize::MAX).unwrap();
    let mut notes = Vec::new();
    for k in 0..s.rank() {
        let r = bounds::probe_upper_invariance(&s, k, &samples).unwrap();
        let keeps_i = SeedContext::new(&mutate(&s, k).unwrap()).unwrap().condition_i();
        match &r.skipped {
            Some(_) => {
                check(!keeps_i, format!("{} skipped although condition (i) survives", r.direction))?;
                notes.push(format!("{} skip", r.direction));
            }
            None => {
                check(keeps_i, format!("{} compared although condition (i) is lost", r.direction))?;
                check(r.violations.is_empty(), format!("{}: {:?}", r.direction, r.violations))?;
                check(r.compared > 0, "nothing compared")?;
                notes.push(format!("{} {} equal", r.direction, r.compared));
            }
        }
    }
    Ok(notes.join(", "))
}

fn c12_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut members, mut total) = (0, 0);
    for _ in 0..20 {
        let s = random_rank2_seed(&mut rng);
        let ctx = SeedContext::new(&s).unwrap();
        check(ctx.condition_i(), format!("F̂ ≠ F for {}", s.to_json()))?;
        for _ in 0..30 {
            let y = random_sample(&mut rng, &s);
            let got = ctx.upper_member_ratfn(&y).unwrap().member;
            let want = upper_bound_oracle(&s, &y);
            check(got == want, format!("{} on {}: {got} vs oracle {want}", y.format(s.names()), s.to_json()))?;
            members += got as usize;
            total += 1;
        }
    }
    check(members > 0 && members < total, "samples are all on one side")?;
    Ok(format!("{total} samples ({members} members) match"))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("exchange Laurent polynomials and mutation of the running seed", 1, c1_mutation_and_hat),
        ("freezing the running seed", 1, c2_freezing),
        ("reducible cluster binomials are rejected", 1, c3_reducible_binomials),
        ("mutation that loses condition (i)", 1, c4_condition_i_lost),
        ("bound conditions, φ and the W-monoid", 1, c5_bounds_example),
        ("mutation is an involution", 5, c6_involution),
        ("Laurent phenomenon to length 4", 60, c7_laurent),
        ("clusters determine seeds on bounded orbits", 120, c8_cluster_probe),
        ("standard monomial leading terms", 30, c9_basis),
        ("lower bound equals upper bound on samples", 120, c10_duality),
        ("upper bound invariant under mutation", 120, c11_upper_invariance),
        ("upper bound agrees with the definition", 60, c12_oracle),
    ];
    let mut failed = 0;
    for (i, (title, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let out = match out {
            Ok(note) if elapsed > Duration::from_secs(*limit) => Err(format!("{note}; took {elapsed:.2?}, limit {limit}s")),
            other => other,
        };
        match out {
            Ok(note) => println!("criterion {:>2} PASS  {title}: {note} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
