use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use codegree::bounds::{
    bey_rhs, check_bey, de_caen_pi, ekr_l2_bound, parse_rational, sigma_kt, sigma_upper, t_star_l2_bound, to_decimal,
    L1Bound, Quantity, Rational,
};
use codegree::families::{build, FamilyKind, FamilySpec};
use codegree::iso::{isomorphism_classes, DEFAULT_LEAF_CAP};
use codegree::props::{self, PatternSpec, Witness};
use codegree::search::{max_co2, verify_claim, Claim, ClaimParams, ClaimValue, Constraint, Limits, Mode, SearchOptions, SearchProblem, Verdict};
use codegree::{Hypergraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::report::{num, opt_num, strings, Report, Status};
use crate::{BoundArgs, BoundKind, BudgetArgs, CheckArgs, Cli, Co2Args, Command, FamilyArgs, FamilyType, ModeArg, Prop, RandomArgs, SearchArgs, VerifyArgs};

const DECIMAL_DIGITS: usize = 6;

/// Worker count from `HX_THREADS`, default 1.
fn threads() -> Result<usize> {
    match std::env::var("HX_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => bail!("HX_THREADS must be a positive integer, got {v:?}"),
        },
    }
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<(Report, Status)> {
    let threads = threads()?;
    let name = match &cli.command {
        Command::Family(_) => "family",
        Command::Co2(_) => "co2",
        Command::Check(_) => "check",
        Command::Bound(_) => "bound",
        Command::Search(_) => "search",
        Command::Verify(_) => "verify",
        Command::Random(_) => "random",
    };
    let mut r = Report::new(name, argv, threads);
    let status = match &cli.command {
        Command::Family(a) => family(&mut r, a)?,
        Command::Co2(a) => co2(&mut r, a)?,
        Command::Check(a) => check(&mut r, a)?,
        Command::Bound(a) => bound(&mut r, a)?,
        Command::Search(a) => search(&mut r, a, threads)?,
        Command::Verify(a) => verify(&mut r, a, threads)?,
        Command::Random(a) => random(&mut r, a)?,
    };
    Ok((r, status))
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("{what} needs --{flag}"))
}

fn read(path: &std::path::Path) -> Result<Hypergraph> {
    Hypergraph::read(path).with_context(|| format!("reading {}", path.display()))
}

fn edge_text(e: VertexSet) -> String {
    e.vertices().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn rational(r: &mut Report, key: &str, v: &Rational) {
    r.output(key, num(v));
    if !v.is_integer() {
        r.output(&format!("{key}_decimal"), num(to_decimal(v, DECIMAL_DIGITS)));
    }
}

/// Writes `h` to the output file, or prints it when there is none.
fn emit_hypergraph(r: &mut Report, h: &Hypergraph, output: Option<&std::path::Path>) -> Result<()> {
    r.output("n", num(h.n())).output("k", num(h.k())).output("edges", num(h.len())).output("co2", num(h.co2()));
    match output {
        Some(path) => {
            h.write(path).with_context(|| format!("writing {}", path.display()))?;
            r.output("path", num(path.display()));
        }
        None => {
            r.output("hypergraph", num(h.to_text()));
            r.set_raw(h.to_text());
        }
    }
    Ok(())
}

fn family(r: &mut Report, a: &FamilyArgs) -> Result<Status> {
    let (n, k) = if a.kind == FamilyType::Fano {
        (a.n.unwrap_or(7), a.k.unwrap_or(3))
    } else {
        (need(a.n, "n", "family")?, need(a.k, "k", "family")?)
    };
    let kind = match a.kind {
        FamilyType::Star => FamilyKind::Star { t: a.t.unwrap_or(1) },
        FamilyType::B => FamilyKind::B { s: need(a.s, "s", "family --type b")? },
        FamilyType::Hm => FamilyKind::HiltonMilner { t: a.t.unwrap_or(1) },
        FamilyType::A => FamilyKind::A { t: a.t.unwrap_or(1) },
        FamilyType::Fano => FamilyKind::Fano,
        FamilyType::Complete => FamilyKind::Complete,
        FamilyType::Empty => FamilyKind::Empty,
    };
    r.input("type", num(format!("{:?}", a.kind).to_lowercase()))
        .input("n", num(n))
        .input("k", num(k))
        .input("t", opt_num(a.t))
        .input("s", opt_num(a.s));
    let h = build(&FamilySpec::new(kind, n, k))?;
    emit_hypergraph(r, &h, a.output.as_deref())?;
    Ok(Status::Ok)
}

fn co2(r: &mut Report, a: &Co2Args) -> Result<Status> {
    let h = read(&a.input)?;
    let ell = a.ell.unwrap_or(h.k() - 1);
    r.input("path", num(a.input.display())).input("ell", num(ell));
    let v = h.codegree_vector(ell)?;
    r.output("n", num(h.n()))
        .output("k", num(h.k()))
        .output("edges", num(h.len()))
        .output("ell", num(ell))
        .output("sum", num(v.sum()))
        .output("sum_squares", num(v.sum_squares()))
        .output("co2", num(h.co2()));
    if a.entries {
        let rows = v
            .nonzero()
            .map(|(rank, set, d)| {
                let mut m = Map::new();
                m.insert("rank".into(), num(rank));
                m.insert("set".into(), num(edge_text(set)));
                m.insert("codegree".into(), num(d));
                Value::Object(m)
            })
            .collect();
        r.output("entries", Value::Array(rows));
    }
    Ok(Status::Ok)
}

fn witness_edges(h: &Hypergraph, w: &Witness) -> Value {
    strings(w.edges.iter().map(|&i| edge_text(h.edges()[i])))
}

fn verdict(r: &mut Report, holds: bool) -> Status {
    r.output("holds", Value::Bool(holds));
    r.output("verdict", num(if holds { "PASS" } else { "FAIL" }));
    if holds {
        Status::Ok
    } else {
        Status::Fail
    }
}

fn check(r: &mut Report, a: &CheckArgs) -> Result<Status> {
    let h = read(&a.input)?;
    r.input("path", num(a.input.display())).input("prop", num(format!("{:?}", a.prop).to_lowercase()));
    let pattern = || -> Result<PatternSpec> {
        let text = a.pattern.as_deref().ok_or_else(|| anyhow!("this property needs --pattern KIND:LEN"))?;
        Ok(text.parse::<PatternSpec>()?)
    };
    Ok(match a.prop {
        Prop::Intersecting => {
            let t = a.t.unwrap_or(1);
            r.input("t", num(t));
            verdict(r, props::is_t_intersecting(&h, t))
        }
        Prop::Dwise => {
            let (d, t) = (need(a.d, "d", "dwise")?, a.t.unwrap_or(1));
            r.input("d", num(d)).input("t", num(t));
            let holds = props::is_d_wise_t_intersecting(&h, d, t)?;
            verdict(r, holds)
        }
        Prop::Nontrivial => {
            let t = a.t.unwrap_or(1);
            r.input("t", num(t));
            if !h.is_empty() {
                r.output("common_intersection", num(edge_text(props::common_intersection(&h)?)));
            }
            verdict(r, props::is_nontrivial_t_intersecting(&h, t))
        }
        Prop::Matching => {
            let w = props::matching(&h);
            r.output("matching_number", num(w.edges.len())).output("witness", witness_edges(&h, &w));
            match a.s {
                Some(s) => {
                    r.input("s", num(s));
                    verdict(r, w.edges.len() <= s as usize)
                }
                None => Status::Ok,
            }
        }
        Prop::Covering => {
            let cover = props::covering(&h);
            r.output("covering_number", num(cover.len())).output("cover", num(edge_text(cover)));
            match a.s {
                Some(s) => {
                    r.input("s", num(s));
                    verdict(r, cover.len() <= s)
                }
                None => Status::Ok,
            }
        }
        Prop::Free | Prop::Contains => {
            let p = pattern()?;
            r.input("pattern", num(p));
            let found = props::contains_pattern(&h, p)?;
            if let Some(w) = &found {
                r.output("witness", witness_edges(&h, w));
            }
            let holds = found.is_some() == (a.prop == Prop::Contains);
            verdict(r, holds)
        }
        Prop::Constraint => {
            let text = a.constraint.as_deref().ok_or_else(|| anyhow!("this property needs --constraint"))?;
            let c: Constraint = text.parse()?;
            r.input("constraint", num(&c));
            verdict(r, c.admits(&h)?)
        }
    })
}

fn bound(r: &mut Report, a: &BoundArgs) -> Result<Status> {
    let name = format!("{:?}", a.kind);
    r.input("kind", num(kebab(&name)));
    for (key, v) in [("n", a.n), ("k", a.k), ("t", a.t), ("s", a.s), ("u", a.u), ("ell", a.ell)] {
        if v.is_some() {
            r.input(key, opt_num(v));
        }
    }
    let nk = || -> Result<(u32, u32)> { Ok((need(a.n, "n", "this bound")?, need(a.k, "k", "this bound")?)) };
    match a.kind {
        BoundKind::Bey => match &a.input {
            Some(path) => {
                let h = read(path)?;
                let ell = a.ell.unwrap_or(h.k() - 1);
                r.input("path", num(path.display()));
                let rep = check_bey(&h, ell)?;
                r.output("n", num(rep.n)).output("k", num(rep.k)).output("ell", num(rep.ell)).output("edges", num(rep.edge_count));
                r.output("lhs", num(&rep.lhs));
                rational(r, "rhs", &rep.bey_rhs);
                rational(r, "slack", &rep.bey_slack);
                r.output("co2", num(&rep.co2));
                let named = rep
                    .named
                    .iter()
                    .map(|b| {
                        let mut m = Map::new();
                        m.insert("name".into(), num(&b.name));
                        m.insert(
                            "quantity".into(),
                            num(match b.quantity {
                                Quantity::EdgeCount => "edges",
                                Quantity::Co2 => "co2",
                            }),
                        );
                        m.insert("achieved".into(), num(&b.achieved));
                        m.insert("bound".into(), num(&b.bound));
                        m.insert("valid".into(), Value::Bool(b.valid));
                        m.insert("slack".into(), num(&b.slack));
                        Value::Object(m)
                    })
                    .collect();
                r.output("named", Value::Array(named));
            }
            None => {
                let (n, k) = nk()?;
                let ell = need(a.ell, "ell", "bey without a file")?;
                let m = need(a.m, "m", "bey without a file")?;
                r.input("m", num(m));
                rational(r, "rhs", &bey_rhs(n, k, ell, m)?);
            }
        },
        BoundKind::EkrL2 => {
            let (n, k) = nk()?;
            r.output("value", num(ekr_l2_bound(n, k)?));
        }
        BoundKind::TStarL2 => {
            let (n, k) = nk()?;
            r.output("value", num(t_star_l2_bound(n, k, need(a.t, "t", "t-star-l2")?)?));
        }
        BoundKind::Ekr | BoundKind::TEkr | BoundKind::Hm | BoundKind::THm | BoundKind::Emc | BoundKind::Fk => {
            let (n, k) = if a.kind == BoundKind::Fk { (0, need(a.k, "k", "fk")?) } else { nk()? };
            let t = if matches!(a.kind, BoundKind::TEkr | BoundKind::THm) { need(a.t, "t", "this bound")? } else { 1 };
            let s = if matches!(a.kind, BoundKind::Emc | BoundKind::Fk) { need(a.s, "s", "this bound")? } else { 1 };
            let u = if a.kind == BoundKind::Fk { need(a.u, "u", "fk")? } else { 0 };
            let v = L1Bound::from_name(&kebab(&name), n, k, t, s, u)?.evaluate()?;
            r.output("name", num(v.name)).output("n", num(v.n));
            rational(r, "value", &v.value);
            r.output("valid", Value::Bool(v.valid)).output("hypothesis", num(&v.hypothesis));
        }
        BoundKind::SigmaUpper => {
            let pi = parse_rational(a.pi.as_deref().ok_or_else(|| anyhow!("sigma-upper needs --pi"))?)?;
            r.input("pi", num(&pi));
            rational(r, "value", &sigma_upper(&pi, need(a.k, "k", "sigma-upper")?)?);
        }
        BoundKind::DeCaenPi => {
            rational(r, "value", &de_caen_pi(need(a.t, "t", "de-caen-pi")?, need(a.k, "k", "de-caen-pi")?)?);
        }
        BoundKind::SigmaKt => {
            rational(r, "value", &sigma_kt(need(a.t, "t", "sigma-kt")?, need(a.k, "k", "sigma-kt")?)?);
        }
    }
    Ok(Status::Ok)
}

// `TStarL2` -> `t-star-l2`
fn kebab(camel: &str) -> String {
    let mut out = String::new();
    for (i, c) in camel.chars().enumerate() {
        if c.is_ascii_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

fn limits(b: &BudgetArgs, threads: usize) -> Result<(Mode, Limits)> {
    let mut l = Limits { threads, allow_large_brute_force: b.allow_large, ..Limits::default() };
    if let Some(nodes) = b.node_budget {
        l.node_budget = nodes;
    }
    if let Some(secs) = b.time_limit {
        if !(secs.is_finite() && secs > 0.0) {
            bail!("--time-limit must be a positive number of seconds");
        }
        l.time_budget = Some(Duration::from_secs_f64(secs));
    }
    if let Some(m) = b.max_optima {
        l.max_optima = m;
    }
    let mode = match b.mode {
        ModeArg::Bnb => Mode::BranchAndBound,
        ModeArg::Brute => Mode::BruteForce,
    };
    Ok((mode, l))
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::BranchAndBound => "bnb",
        Mode::BruteForce => "brute",
    }
}

fn search(r: &mut Report, a: &SearchArgs, threads: usize) -> Result<Status> {
    let constraint: Constraint = a.constraint.parse()?;
    let (mode, limits) = limits(&a.budget, threads)?;
    let mut p = SearchProblem::new(a.n, a.k, constraint).with_mode(mode);
    p.limits = limits;
    if a.no_pruning {
        p.options = SearchOptions::no_pruning();
    }
    p.options.nontrivial = a.nontrivial;
    r.input("n", num(a.n))
        .input("k", num(a.k))
        .input("constraint", num(&p.constraint))
        .input("mode", num(mode_name(mode)))
        .input("nontrivial", opt_num(a.nontrivial))
        .input("pruning", Value::Bool(!a.no_pruning));
    let res = max_co2(&p)?;
    let classes = isomorphism_classes(&res.optima, DEFAULT_LEAF_CAP);
    r.output("value", opt_num(res.value))
        .output("optima_count", num(res.optima_count))
        .output("optima_stored", num(res.optima.len()))
        .output("iso_classes", opt_num(classes.map(|c| c.iter().max().map_or(0, |m| m + 1))))
        .output("optima", strings(res.optima.iter().map(Hypergraph::to_text)));
    r.certify("certified", Value::Bool(res.certified))
        .certify("optima_truncated", Value::Bool(res.optima_truncated()))
        .certify("nodes", num(res.stats.nodes))
        .certify("leaves", num(res.stats.leaves));
    Ok(if res.certified { Status::Ok } else { Status::Budget })
}

fn claim_value(v: &Option<ClaimValue>) -> Value {
    opt_num(v.as_ref())
}

fn opt_bool(b: Option<bool>) -> Value {
    b.map_or(Value::Null, Value::Bool)
}

fn verify(r: &mut Report, a: &VerifyArgs, threads: usize) -> Result<Status> {
    let claim: Claim = a.claim.parse()?;
    let (mode, limits) = limits(&a.budget, threads)?;
    let params = ClaimParams {
        s: a.s,
        t: a.t,
        mode,
        limits,
        search: !a.no_search,
        n_from: a.n_from,
        ..ClaimParams::new(a.n, a.k)
    };
    r.input("claim", num(claim))
        .input("n", num(a.n))
        .input("k", num(a.k))
        .input("s", opt_num(a.s))
        .input("t", opt_num(a.t))
        .input("mode", num(mode_name(mode)))
        .input("search", Value::Bool(!a.no_search))
        .input("n_from", opt_num(a.n_from));
    let rep = verify_claim(claim, &params)?;
    r.output("claim", num(rep.claim))
        .output("verdict", num(rep.verdict.name()))
        .output("claimed", claim_value(&rep.claimed))
        .output("computed", claim_value(&rep.computed));
    if let Some(d) = rep.computed_decimal(DECIMAL_DIGITS) {
        r.output("computed_decimal", num(d));
    }
    r.output("matches", opt_bool(rep.matches))
        .output("hypothesis", num(&rep.hypothesis))
        .output("hypothesis_holds", Value::Bool(rep.hypothesis_holds))
        .output("optima_count", opt_num(rep.optima_count))
        .output("iso_classes", opt_num(rep.iso_classes))
        .output("unique", opt_bool(rep.unique))
        .output("star_attains", opt_bool(rep.star_attains));
    if !rep.details.is_empty() {
        let m: Map<String, Value> = rep.details.iter().map(|(k, v)| (k.clone(), num(v))).collect();
        r.output("details", Value::Object(m));
    }
    if !rep.scan.is_empty() {
        let rows = rep
            .scan
            .iter()
            .map(|(n, ok)| {
                let mut m = Map::new();
                m.insert("n".into(), num(n));
                m.insert("confirmed".into(), Value::Bool(*ok));
                Value::Object(m)
            })
            .collect();
        r.output("scan", Value::Array(rows)).output("first_confirmed_n", opt_num(rep.first_confirmed_n));
    }
    r.output("certificates", strings(rep.certificates.iter().map(Hypergraph::to_text)));
    r.certify("certified", Value::Bool(rep.certified));
    if let Some(stats) = &rep.stats {
        r.certify("nodes", num(stats.nodes)).certify("leaves", num(stats.leaves));
    }
    Ok(match rep.verdict {
        Verdict::Pass | Verdict::Report => Status::Ok,
        Verdict::Fail => Status::Fail,
        Verdict::Inconclusive => Status::Budget,
    })
}

fn random(r: &mut Report, a: &RandomArgs) -> Result<Status> {
    Hypergraph::empty(a.n, a.k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    r.input("n", num(a.n)).input("k", num(a.k)).input("seed", num(a.seed));
    let all: Vec<VertexSet> = VertexSet::full(a.n).subsets(a.k).take(1 << 24).collect();
    if all.len() == 1 << 24 {
        bail!("C({}, {}) is too large to sample from", a.n, a.k);
    }
    let edges: Vec<VertexSet> = match (a.m, a.density) {
        (Some(m), None) => {
            if m > all.len() {
                bail!("--m {m} exceeds C({}, {}) = {}", a.n, a.k, all.len());
            }
            r.input("m", num(m));
            rand::seq::index::sample(&mut rng, all.len(), m).into_iter().map(|i| all[i]).collect()
        }
        (None, Some(p)) => {
            if !(0.0..=1.0).contains(&p) {
                bail!("--density must lie in [0, 1]");
            }
            r.input("density", num(p));
            all.into_iter().filter(|_| rng.gen_bool(p)).collect()
        }
        _ => bail!("random needs exactly one of --m or --density"),
    };
    let h = Hypergraph::new(a.n, a.k, edges)?;
    emit_hypergraph(r, &h, a.output.as_deref())?;
    Ok(Status::Ok)
}
