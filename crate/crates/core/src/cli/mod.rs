//! Command-line front end. Every verb loads its inputs, calls one library
//! operation and renders the report as text or, with `--json`, as JSON.
//!
//! Exit status: 0 on success or a clean report, 1 on a mathematical rejection
//! (invalid seed, non-member, failed condition, probe violation), 2 on usage,
//! I/O or parse errors.

pub mod fixtures;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, format_laurent, GeneratorRing, LowerVerdict, SeedContext};
use crate::budget::base_budget;
use crate::cluster::{self, ClusterSeed};
use crate::error::{Error, Result};
use crate::laurent::check_laurent_phenomenon;
use crate::mutation::{self, mutate, mutate_word};
use crate::poly::{parse_ratfn, Poly, RationalFn};
use crate::seed::{exchange_laurent, freeze, validate_seed, LPSeed};

pub use fixtures::{list_fixtures, Fixture, FixtureKind};

#[derive(Parser, Debug)]
#[command(name = "lpalg", version, about = "Exact computation with Laurent phenomenon seeds")]
struct Cli {
    /// Render reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct SeedArg {
    /// Seed file, or the name of a bundled fixture.
    #[arg(long)]
    seed: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the seed axioms; --strict adds the irreducibility test.
    Validate {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        strict: bool,
    },
    /// Exchange Laurent polynomials.
    Hat {
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Mutate in one direction (name or 1-based index).
    Mutate {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(short = 'k', long = "direction")]
        k: String,
        /// Name for the new variable.
        #[arg(long)]
        name: Option<String>,
    },
    /// Mutate along a comma-separated word of directions.
    MutateWord {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        word: String,
    },
    /// Freeze an active variable.
    Freeze {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(short = 'k', long = "var")]
        k: String,
    },
    /// Bounded mutation orbit, optionally probing cluster/seed coincidences.
    Orbit {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        permutations: Switch,
        /// Write the orbit graph as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Check that equal clusters give equivalent seeds and that clusters
        /// sharing all but one variable are one mutation apart.
        #[arg(long)]
        probe: bool,
    },
    /// Expand every cluster variable reachable by words up to --max-len in the
    /// initial cluster and check that each is a Laurent polynomial.
    LaurentCheck {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// The four bound conditions, clause by clause with witnesses.
    Condition12 {
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Membership of an expression in the upper bound, the lower bound, or the image of φ.
    Member {
        #[command(flatten)]
        seed: SeedArg,
        /// Expression in the cluster, the frozen variables and the primed
        /// variables x' = F̂/x.
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Standard-monomial leading terms over a box of indices.
    BasisCheck {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 2)]
        radius: i32,
    },
    /// Compare membership verdicts on constructed samples.
    Probe {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_enum)]
        kind: ProbeKind,
        /// Direction for upper-invariance; all directions when omitted.
        #[arg(short = 'k', long = "direction")]
        k: Option<String>,
        /// Mutation depth of the seeds supplying sample variables.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Number of sample variables used for degree-three products.
        #[arg(long, default_value_t = 64)]
        triples: usize,
    },
    /// Cluster seeds with exchange matrices.
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// List bundled fixtures and those found in --dir.
    Fixtures {
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Copy the bundled fixtures into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ClusterCmd {
    /// Matrix, coefficient and cluster mutation.
    Mutate {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(short = 'k', long = "direction")]
        k: String,
    },
    /// The LP seed of the exchange binomials; rejected when a binomial is reducible.
    ToLp {
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Matrix classes, binomials and the acyclic/coprime comparison.
    Check {
        #[command(flatten)]
        seed: SeedArg,
        /// Depth of the total sign-skew-symmetry search.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Also probe coinciding clusters up to this mutation depth.
        #[arg(long)]
        orbit_depth: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Upper,
    Lower,
    Imphi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    UpperInvariance,
    LowerEqualsUpper,
}

/// Rendered report and exit status.
struct Report {
    ok: bool,
    json: Value,
    text: String,
}

impl Report {
    fn new(ok: bool, json: Value, text: String) -> Self {
        Report { ok, json, text }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

/// Run the CLI on `argv` (including the program name) and return the exit
/// status with the rendered output.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli.cmd) {
        Ok(r) => {
            let mut out = if cli.json { serde_json::to_string_pretty(&r.json).expect("json") } else { r.text };
            if !out.ends_with('\n') {
                out.push('\n');
            }
            (if r.ok { 0 } else { 1 }, out)
        }
        Err(e) => {
            let code = match e {
                Error::InvalidSeed(_) | Error::Condition(_) | Error::Rejected(_) | Error::Consistency(_) => 1,
                Error::Domain(_) | Error::Parse(_) | Error::Io(_) => 2,
            };
            let out = if cli.json {
                serde_json::to_string_pretty(&json!({ "error": e.to_string() })).expect("json") + "\n"
            } else {
                format!("error: {e}\n")
            };
            (code, out)
        }
    }
}

fn read_seed_text(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")));
    }
    if let Some(f) = fixtures::bundled_fixture(arg) {
        return Ok(f.text);
    }
    Err(Error::Io(format!("{arg}: no such file or bundled fixture")))
}

fn load_lp(arg: &SeedArg) -> Result<LPSeed> {
    let text = read_seed_text(&arg.seed)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", arg.seed)))?;
    if v.get("B").is_some() {
        return Err(Error::Parse(format!("{}: a cluster seed where an LP seed was expected", arg.seed)));
    }
    LPSeed::from_json(&v)
}

fn load_cluster(arg: &SeedArg) -> Result<ClusterSeed> {
    let text = read_seed_text(&arg.seed)?;
    ClusterSeed::from_json_str(&text)
}

fn dispatch(cmd: &Cmd) -> Result<Report> {
    match cmd {
        Cmd::Validate { seed, strict } => cmd_validate(&load_lp(seed)?, *strict),
        Cmd::Hat { seed } => cmd_hat(&load_lp(seed)?),
        Cmd::Mutate { seed, k, name } => {
            let s = load_lp(seed)?;
            let k = s.resolve_direction(k)?;
            let mut m = mutate(&s, k)?;
            if let Some(name) = name {
                m = m.with_name(k, name)?;
            }
            Ok(seed_report(&m))
        }
        Cmd::MutateWord { seed, word } => {
            let s = load_lp(seed)?;
            let w = parse_word(word, |k| s.resolve_direction(k))?;
            Ok(seed_report(&mutate_word(&s, &w)?))
        }
        Cmd::Freeze { seed, k } => {
            let s = load_lp(seed)?;
            let i = s.resolve_direction(k)?;
            Ok(seed_report(&freeze(&s, i)?))
        }
        Cmd::Orbit { seed, depth, permutations, emit, probe } => {
            cmd_orbit(&load_lp(seed)?, *depth, *permutations == Switch::On, emit.as_deref(), *probe)
        }
        Cmd::LaurentCheck { seed, max_len } => cmd_laurent(&load_lp(seed)?, *max_len),
        Cmd::Condition12 { seed } => cmd_condition(&load_lp(seed)?),
        Cmd::Member { seed, expr, which } => cmd_member(&load_lp(seed)?, expr, *which),
        Cmd::BasisCheck { seed, radius } => cmd_basis(&load_lp(seed)?, *radius),
        Cmd::Probe { seed, kind, k, depth, triples } => cmd_probe(&load_lp(seed)?, *kind, k.as_deref(), *depth, *triples),
        Cmd::Cluster(c) => match c {
            ClusterCmd::Mutate { seed, k } => {
                let s = load_cluster(seed)?;
                let k = resolve_cluster_direction(&s, k)?;
                Ok(cluster_report(&cluster::cluster_mutate(&s, k)?))
            }
            ClusterCmd::ToLp { seed } => cmd_to_lp(&load_cluster(seed)?),
            ClusterCmd::Check { seed, depth, orbit_depth } => cmd_cluster_check(&load_cluster(seed)?, *depth, *orbit_depth),
        },
        Cmd::Fixtures { dir, export } => cmd_fixtures(dir.as_deref(), export.as_deref()),
    }
}

fn parse_word(word: &str, resolve: impl Fn(&str) -> Result<usize>) -> Result<Vec<usize>> {
    word.split(',').map(str::trim).filter(|t| !t.is_empty()).map(resolve).collect()
}

fn resolve_cluster_direction(s: &ClusterSeed, k: &str) -> Result<usize> {
    if let Some(i) = s.names().iter().position(|x| x == k) {
        return Ok(i);
    }
    match k.parse::<usize>() {
        Ok(i) if (1..=s.rank()).contains(&i) => Ok(i - 1),
        _ => Err(Error::Domain(format!("{k:?} is not a cluster variable of the seed"))),
    }
}

fn seed_text(s: &LPSeed) -> String {
    let mut t = String::new();
    if !s.frozen_names().is_empty() {
        let _ = writeln!(t, "frozen: {}", s.frozen_names().join(", "));
    }
    for i in 0..s.rank() {
        let _ = writeln!(t, "({}, {})", s.name(i), format_laurent(&s.exchange()[i], s.names()));
    }
    let total = s.nvars();
    let moved: Vec<usize> =
        (0..total).filter(|&i| s.root_names()[i] != s.name(i) || s.expansions()[i] != RationalFn::var(total, i)).collect();
    if !moved.is_empty() {
        let _ = writeln!(t, "in the initial cluster ({}):", s.root_names()[..s.root_rank()].join(", "));
        for i in moved {
            let _ = writeln!(t, "  {} = {}", s.name(i), s.format_root(&s.expansions()[i]));
        }
    }
    t
}

fn seed_report(s: &LPSeed) -> Report {
    Report::new(true, s.to_json(), seed_text(s))
}

fn cmd_validate(s: &LPSeed, strict: bool) -> Result<Report> {
    let r = validate_seed(s, strict);
    let mut t = String::new();
    for e in &r.entries {
        let mut notes = Vec::new();
        if e.self_dependent {
            notes.push(format!("depends on {}", e.var));
        }
        if !e.divisible_by.is_empty() {
            notes.push(format!("divisible by {}", e.divisible_by.join(", ")));
        }
        if !e.negative_exponents.is_empty() {
            notes.push(format!("negative exponents in {}", e.negative_exponents.join(", ")));
        }
        if let Some(v) = &e.irreducibility {
            notes.push(match v {
                crate::seed::IrreducibilityVerdict::Irreducible => "irreducible".into(),
                crate::seed::IrreducibilityVerdict::Reducible { witness } => format!("reducible, factor {witness}"),
                crate::seed::IrreducibilityVerdict::Unit => "a unit".into(),
                crate::seed::IrreducibilityVerdict::UnknownBudgetExhausted => "irreducibility unknown (budget exhausted)".into(),
            });
        }
        let status = if e.is_valid(strict) { "ok" } else { "INVALID" };
        let _ = writeln!(
            t,
            "F_{} = {}: {status}{}",
            e.var,
            e.exchange,
            if notes.is_empty() { String::new() } else { format!(" ({})", notes.join("; ")) }
        );
    }
    let _ = writeln!(t, "{}", if r.valid { "valid" } else { "invalid" });
    Ok(Report::new(r.valid, to_value(&r), t))
}

fn cmd_hat(s: &LPSeed) -> Result<Report> {
    let h = exchange_laurent(s)?;
    let mut hats = serde_json::Map::new();
    let mut dens = serde_json::Map::new();
    let mut t = String::new();
    for j in 0..s.rank() {
        let f = format_laurent(&h.hat[j], s.names());
        let d = Poly::monomial(h.denominator(j, s.nvars()));
        let _ = writeln!(t, "F̂_{} = {f}", s.name(j));
        hats.insert(s.name(j).into(), json!(f));
        dens.insert(s.name(j).into(), json!(s.format(&d)));
    }
    let _ = writeln!(t, "{}", if h.is_trivial() { "F̂ = F" } else { "F̂ ≠ F" });
    Ok(Report::new(true, json!({ "hat": hats, "denominators": dens, "trivial": h.is_trivial() }), t))
}

fn cmd_orbit(s: &LPSeed, depth: usize, perms: bool, emit: Option<&Path>, probe: bool) -> Result<Report> {
    let g = mutation::orbit(s, depth, perms)?;
    if let Some(path) = emit {
        let text = serde_json::to_string_pretty(&g.to_json())? + "\n";
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let mut t =
        format!("{} seeds, {} edges to depth {depth}{}\n", g.nodes.len(), g.edges.len(), if g.truncated { " (truncated)" } else { "" });
    for (i, (n, d)) in g.nodes.iter().zip(&g.depths).enumerate() {
        let body: Vec<String> =
            (0..n.rank()).map(|j| format!("({}, {})", n.name(j), format_laurent(&n.exchange()[j], n.names()))).collect();
        let _ = writeln!(t, "#{i} [{d}] {}", body.join(" "));
    }
    let mut js = json!({ "nodes": g.nodes.len(), "edges": g.edges.len(), "truncated": g.truncated });
    let mut ok = true;
    if probe {
        let p = mutation::probe_cluster_determines_seed(&g);
        let _ = writeln!(
            t,
            "probe: {} pairs, {} with equal clusters, {} sharing all but one variable{}, {} violations",
            p.pairs_checked,
            p.same_cluster_pairs,
            p.adjacent_cluster_pairs,
            if p.adjacency_skipped { " (adjacency check skipped)" } else { "" },
            p.violations.len()
        );
        for v in &p.violations {
            let _ = writeln!(t, "  {} #{} #{}: {}", v.theorem, v.nodes.0, v.nodes.1, v.detail);
        }
        ok = p.violations.is_empty();
        js["probe"] = to_value(&p);
    }
    if emit.is_none() {
        js["graph"] = g.to_json();
    }
    Ok(Report::new(ok, js, t))
}

fn cmd_laurent(s: &LPSeed, max_len: usize) -> Result<Report> {
    let r = check_laurent_phenomenon(s, max_len)?;
    let mut t = format!(
        "{} words up to length {max_len}{}: {}\n",
        r.words_checked,
        if r.truncated { " (budget reached)" } else { "" },
        if r.all_laurent { "every cluster variable is Laurent" } else { "non-Laurent variables found" }
    );
    for (w, v) in r.witnesses() {
        let _ = writeln!(t, "  word {:?}: {} = {}", w, v.var, v.expansion);
    }
    let js = json!({
        "max_len": r.max_len,
        "words_checked": r.words_checked,
        "truncated": r.truncated,
        "all_laurent": r.all_laurent,
        "witnesses": r.witnesses().map(|(w, v)| json!({ "word": w, "var": v.var, "expansion": v.expansion })).collect::<Vec<_>>(),
    });
    Ok(Report::new(r.all_laurent, js, t))
}

fn cmd_condition(s: &LPSeed) -> Result<Report> {
    let r = bounds::check_condition_1_2(s)?;
    let mut t = String::new();
    for (label, c) in [("(i)", &r.i), ("(ii)", &r.ii), ("(iii)", &r.iii), ("(iv)", &r.iv)] {
        let _ = writeln!(t, "{label:<6}{}", if c.holds { "holds" } else { "fails" });
        for w in &c.witnesses {
            let _ = writeln!(t, "      {w}");
        }
    }
    let lead: Vec<String> = r.leading.iter().map(|l| format!("M_{} = {}", l.var, l.monomial)).collect();
    let _ = writeln!(t, "leading: {}", lead.join(", "));
    let _ = writeln!(t, "J = {{{}}}", r.j_set.join(", "));
    let _ = writeln!(t, "{}", if r.holds { "all clauses hold" } else { "condition fails" });
    Ok(Report::new(r.holds, to_value(&r), t))
}

fn cmd_member(s: &LPSeed, expr: &str, which: Which) -> Result<Report> {
    let ctx = SeedContext::new(s)?;
    let names = s.names();
    if which == Which::Imphi {
        let parsed = parse_ratfn(expr, &names.iter().map(String::as_str).collect::<Vec<_>>())?;
        let y = parsed.to_laurent().ok_or_else(|| Error::Domain("the image of φ is tested on Laurent polynomials".into()))?;
        let v = ctx.im_phi_member(&y, base_budget() as usize)?;
        let mut t = String::new();
        for (m, l) in &v.monomials {
            let _ = writeln!(t, "{m}: in W with l = {l:?}");
        }
        for m in &v.uncertified {
            let _ = writeln!(t, "{m}: not in W");
        }
        if let Some(r) = &v.reduction {
            for (c, g) in r.terms.iter().take(8) {
                let _ = writeln!(t, "  + ({c}) * {g}");
            }
            if r.terms.len() > 8 {
                let _ = writeln!(t, "  + … ({} more terms)", r.terms.len() - 8);
            }
            match &r.stopped {
                Some(why) => {
                    let _ = writeln!(t, "generator search stopped after {} steps: {why}", r.steps);
                }
                None => {
                    let _ = writeln!(t, "generator search reached zero in {} steps", r.steps);
                }
            }
        }
        let _ = writeln!(t, "{}", if v.certified { "certified in Im(φ)" } else { "not certified" });
        return Ok(Report::new(v.certified, to_value(&v), t));
    }
    let g = GeneratorRing::new(s);
    let y = ctx.expand_generators(&g.parse(expr)?)?;
    let shown = y.to_laurent().map(|p| format_laurent(&p, names)).unwrap_or_else(|| y.format(names));
    match which {
        Which::Upper => {
            let v = ctx.upper_member_ratfn(&y)?;
            let mut t = format!("y = {shown}\n");
            if let Some(r) = &v.reason {
                let _ = writeln!(t, "{r}");
            }
            for c in &v.certificates {
                match c.failed {
                    Some(m) => {
                        let _ = writeln!(t, "{}: F̂_{}^{m} does not divide the coefficient of {}^-{m}", c.var, c.var, c.var);
                    }
                    None => {
                        let _ = writeln!(t, "{}: divisible for powers {:?}", c.var, c.divided);
                    }
                }
            }
            let _ = writeln!(t, "{}", if v.member { "member of the upper bound" } else { "not a member of the upper bound" });
            let mut js = to_value(&v);
            js["expansion"] = json!(shown);
            Ok(Report::new(v.member, js, t))
        }
        Which::Lower => {
            let v = ctx.lower_member(&y, base_budget() as usize)?;
            let mut t = format!("y = {shown}\n");
            match &v {
                LowerVerdict::Member(c) => {
                    for (a, coeff) in &c.terms {
                        let _ = writeln!(t, "  ({coeff}) * x^{a:?}");
                    }
                    let _ = writeln!(t, "member of the lower bound ({} steps)", c.steps);
                }
                LowerVerdict::NonMember { certificate } => {
                    let _ = writeln!(t, "not a member of the lower bound: {certificate}");
                }
                LowerVerdict::BudgetExhausted { steps } => {
                    let _ = writeln!(t, "undecided: budget exhausted after {steps} steps");
                }
            }
            let mut js = to_value(&v);
            js["expansion"] = json!(shown);
            Ok(Report::new(v.is_member(), js, t))
        }
        Which::Imphi => unreachable!(),
    }
}

fn cmd_basis(s: &LPSeed, radius: i32) -> Result<Report> {
    let r = bounds::basis_check(s, radius)?;
    let ok = r.injective && r.disagreements.is_empty();
    let t = format!(
        "{} indices with |a_i| <= {radius}: {}, {} disagreements with the expanded leading terms\n",
        r.indices,
        if r.injective { "injective" } else { "NOT injective" },
        r.disagreements.len()
    );
    Ok(Report::new(ok, to_value(&r), t))
}

fn cmd_probe(s: &LPSeed, kind: ProbeKind, k: Option<&str>, depth: usize, triples: usize) -> Result<Report> {
    let samples = bounds::construct_samples(s, depth, triples)?;
    match kind {
        ProbeKind::UpperInvariance => {
            let dirs: Vec<usize> = match k {
                Some(k) => vec![s.resolve_direction(k)?],
                None => (0..s.rank()).collect(),
            };
            let mut t = format!("{} samples\n", samples.len());
            let mut reports = Vec::new();
            let mut ok = true;
            for d in dirs {
                let r = bounds::probe_upper_invariance(s, d, &samples)?;
                match &r.skipped {
                    Some(why) => {
                        let _ = writeln!(t, "{}: skip ({why})", r.direction);
                    }
                    None => {
                        let _ = writeln!(
                            t,
                            "{}: {} compared, {} members, {} not Laurent in both clusters, {} violations",
                            r.direction,
                            r.compared,
                            r.members,
                            r.skipped_samples.len(),
                            r.violations.len()
                        );
                    }
                }
                for v in &r.violations {
                    let _ = writeln!(t, "  {}: {}", v.label, v.verdict);
                }
                ok &= r.violations.is_empty();
                reports.push(r);
            }
            Ok(Report::new(ok, json!({ "samples": samples.len(), "directions": reports }), t))
        }
        ProbeKind::LowerEqualsUpper => {
            let r = bounds::probe_lower_equals_upper(s, &samples)?;
            if !r.condition_holds {
                return Err(Error::Condition("the bound conditions do not hold for this seed".into()));
            }
            let mut t = format!(
                "{} samples, {} members, {} budget exhausted, {} disagreements\n",
                r.compared,
                r.members,
                r.budget_exhausted.len(),
                r.violations.len()
            );
            for v in &r.violations {
                let _ = writeln!(t, "  {}: {}", v.label, v.verdict);
            }
            Ok(Report::new(r.violations.is_empty() && r.budget_exhausted.is_empty(), to_value(&r), t))
        }
    }
}

fn cluster_text(s: &ClusterSeed) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "cluster: {}", s.names().join(", "));
    let _ = writeln!(t, "B:");
    for row in s.matrix() {
        let _ = writeln!(t, "  {}", row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "));
    }
    if !s.coeff_names().is_empty() {
        for (k, y) in s.y().iter().enumerate() {
            let mono: Vec<String> =
                y.0.iter()
                    .zip(s.coeff_names())
                    .filter(|(e, _)| **e != 0)
                    .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                    .collect();
            let _ = writeln!(t, "y_{} = {}", k + 1, if mono.is_empty() { "1".into() } else { mono.join("*") });
        }
    }
    let ring = s.ring_names();
    for (k, f) in cluster::exchange_binomials(s).iter().enumerate() {
        let _ = writeln!(t, "F_{} = {}", s.names()[k], crate::poly::format_poly(f, &ring));
    }
    for (k, e) in s.expansions().iter().enumerate() {
        if s.names()[k] != s.root_names()[k] || !e.den().is_one() {
            let _ = writeln!(t, "{} = {}", s.names()[k], s.format_root(e));
        }
    }
    t
}

fn cluster_report(s: &ClusterSeed) -> Report {
    let mut js = s.to_json();
    let ring = s.ring_names();
    let mut b = serde_json::Map::new();
    for (k, f) in cluster::exchange_binomials(s).iter().enumerate() {
        b.insert(s.names()[k].clone(), json!(crate::poly::format_poly(f, &ring)));
    }
    js["binomials"] = Value::Object(b);
    Report::new(true, js, cluster_text(s))
}

fn cmd_to_lp(s: &ClusterSeed) -> Result<Report> {
    match cluster::cluster_to_lp(s) {
        Ok(lp) => Ok(seed_report(&lp)),
        Err(Error::Rejected(why)) => {
            let factor = why.split_once("factor ").map(|(_, f)| f.to_string());
            Ok(Report::new(false, json!({ "rejected": true, "reason": why, "factor": factor }), format!("rejected: {why}\n")))
        }
        Err(e) => Err(e),
    }
}

fn cmd_cluster_check(s: &ClusterSeed, depth: usize, orbit_depth: Option<usize>) -> Result<Report> {
    let b = s.matrix();
    let mut t = cluster_text(s);
    let sss = cluster::is_sign_skew_symmetric(b);
    let d = cluster::skew_symmetrizer(b);
    let acyclic = cluster::is_acyclic(b);
    let renumbering = cluster::acyclic_renumbering(b);
    let total = cluster::is_totally_sss(b, depth);
    let _ = writeln!(t, "sign-skew-symmetric: {sss}");
    let _ = writeln!(t, "skew-symmetrizer: {}", d.as_ref().map(|d| format!("{d:?}")).unwrap_or_else(|| "none".into()));
    let _ = writeln!(t, "acyclic: {acyclic}");
    if let Some(p) = &renumbering {
        let names: Vec<&str> = p.iter().map(|&i| s.names()[i].as_str()).collect();
        let _ = writeln!(t, "acyclic numbering: {}", names.join(", "));
    }
    let _ = writeln!(
        t,
        "totally sign-skew-symmetric: {}",
        match &total {
            cluster::TotalSssVerdict::Yes => "yes".to_string(),
            cluster::TotalSssVerdict::NoCounterexampleToDepth { depth, matrices } =>
                format!("no counterexample to depth {depth} ({matrices} matrices)"),
            cluster::TotalSssVerdict::Counterexample { word } => format!("no, counterexample after {word:?}"),
        }
    );
    let mut ok = true;
    let mut js = json!({
        "seed": s.to_json(),
        "sign_skew_symmetric": sss,
        "skew_symmetrizer": d,
        "acyclic": acyclic,
        "acyclic_numbering": renumbering.map(|p| p.iter().map(|&i| s.names()[i].clone()).collect::<Vec<_>>()),
        "totally_sign_skew_symmetric": to_value(&total),
    });
    match bounds::cluster_condition_equivalence(s) {
        Ok(r) => {
            let _ = writeln!(
                t,
                "bound conditions for some numbering: {}; acyclic and coprime: {}; {}",
                r.condition,
                r.acyclic && r.coprime,
                if r.agree { "agree" } else { "DISAGREE" }
            );
            ok &= r.agree;
            js["condition_equivalence"] = to_value(&r);
        }
        Err(Error::Rejected(why)) => {
            let _ = writeln!(t, "no LP seed: {why}");
            js["condition_equivalence"] = json!({ "rejected": why });
        }
        Err(e) => return Err(e),
    }
    if let Some(depth) = orbit_depth {
        let p = cluster::probe_cluster_orbit(s, depth)?;
        let _ = writeln!(t, "orbit probe: {} seeds, {} coinciding pairs, {} violations", p.seeds, p.coinciding_pairs, p.violations.len());
        for v in &p.violations {
            let _ = writeln!(t, "  {v}");
        }
        ok &= p.violations.is_empty();
        js["orbit_probe"] = to_value(&p);
    }
    Ok(Report::new(ok, js, t))
}

fn cmd_fixtures(dir: Option<&Path>, export: Option<&Path>) -> Result<Report> {
    if let Some(out) = export {
        std::fs::create_dir_all(out)?;
        for f in fixtures::bundled() {
            std::fs::write(out.join(format!("{}.json", f.name)), &f.text)?;
        }
    }
    let all = list_fixtures(dir)?;
    let mut t = String::new();
    for f in &all {
        let kind = match f.kind {
            FixtureKind::Lp => "lp",
            FixtureKind::Cluster => "cluster",
        };
        let _ = writeln!(t, "{:<10} {:<8} {:<8} {}", f.name, kind, if f.source == "bundled" { "bundled" } else { "file" }, f.description);
    }
    Ok(Report::new(true, to_value(&all), t))
}
