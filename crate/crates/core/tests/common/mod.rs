#![allow(dead_code)]

use codegree::binom::binom;
use codegree::props::{PatternKind, PatternSpec};
use codegree::{Hypergraph, VertexSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn set(v: &[u32]) -> VertexSet {
    VertexSet::from_vertices(v).unwrap()
}

pub fn graph(n: u32, k: u32, edges: &[&[u32]]) -> Hypergraph {
    Hypergraph::new(n, k, edges.iter().map(|e| set(e)).collect()).unwrap()
}

/// `m` distinct random k-sets of `[n]` (fewer if `C(n,k) < m`).
pub fn random_hypergraph(rng: &mut ChaCha8Rng, n: u32, k: u32, m: usize) -> Hypergraph {
    let total = binom(n, k);
    let m = m.min(total as usize);
    let mut edges: Vec<VertexSet> = Vec::with_capacity(m);
    while edges.len() < m {
        let e = VertexSet::unrank(rng.gen_range(0..total), k, n).unwrap();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, k, edges).unwrap()
}

/// Each k-set kept independently with probability `density`.
pub fn random_dense(rng: &mut ChaCha8Rng, n: u32, k: u32, density: f64) -> Hypergraph {
    let edges = VertexSet::full(n).subsets(k).filter(|_| rng.gen_bool(density)).collect();
    Hypergraph::new(n, k, edges).unwrap()
}

fn pair_rule(kind: PatternKind, adjacent: bool, inter: u32) -> bool {
    use PatternKind::*;
    match (kind, adjacent) {
        (LinearPath | LinearCycle, true) => inter == 1,
        (LinearPath | LinearCycle, false) => inter == 0,
        (MinimalPath | MinimalCycle, true) => inter >= 1,
        (MinimalPath | MinimalCycle, false) => inter == 0,
        (BergePath | BergeCycle, _) => true,
    }
}

// Distinct representatives v_i ∈ links[i], tried exhaustively.
fn distinct_choice(links: &[VertexSet], used: VertexSet) -> bool {
    match links.split_first() {
        None => true,
        Some((first, rest)) => first
            .difference(used)
            .vertices()
            .any(|v| distinct_choice(rest, used.with(v))),
    }
}

/// Whether the ordered edges realise the pattern, straight from the definitions.
pub fn realises(kind: PatternKind, seq: &[VertexSet]) -> bool {
    let s = seq.len();
    let cyclic = kind.is_cycle();
    let adjacent = |i: usize, j: usize| j == i + 1 || (cyclic && i == 0 && j == s - 1);
    for i in 0..s {
        for j in i + 1..s {
            if !pair_rule(kind, adjacent(i, j), seq[i].intersection_len(seq[j])) {
                return false;
            }
        }
    }
    let mut links: Vec<VertexSet> = (0..s - 1).map(|i| seq[i].intersection(seq[i + 1])).collect();
    if cyclic {
        links.push(seq[s - 1].intersection(seq[0]));
        if kind != PatternKind::BergeCycle {
            let all = seq.iter().fold(seq[0], |acc, e| acc.intersection(*e));
            if !all.is_empty() {
                return false;
            }
        }
    }
    distinct_choice(&links, VertexSet::EMPTY)
}

fn permutations(items: &mut Vec<VertexSet>, k: usize, f: &mut dyn FnMut(&[VertexSet]) -> bool) -> bool {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, f) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// Naive containment: every s-subset of edges in every order.
pub fn naive_contains(h: &Hypergraph, p: PatternSpec) -> bool {
    let s = p.len() as usize;
    let edges = h.edges();
    if edges.len() < s {
        return false;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        let mut chosen: Vec<VertexSet> = idx.iter().map(|&i| edges[i]).collect();
        if permutations(&mut chosen, 0, &mut |seq| realises(p.kind(), seq)) {
            return true;
        }
        // next s-combination
        let mut i = s;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < edges.len() - s + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Pattern lengths small enough for the naive oracle on `edges` edges.
pub fn oracle_lengths(kind: PatternKind, edges: usize) -> Vec<u32> {
    let lo = if kind.is_cycle() { 3 } else { 2 };
    let hi = if edges <= 30 { 5 } else { 4 };
    (lo..=hi).collect()
}

use codegree::search::{Constraint, Mode, SearchProblem};

/// `(n, k)` pairs with at most `max_universe` candidate edges and `n <= max_n`.
pub fn small_shapes(max_universe: u128, max_n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for k in 2..n {
            if binom(n, k) <= max_universe {
                out.push((n, k));
            }
        }
    }
    out
}

/// Number of constraint kinds `random_constraint_of` can draw.
pub const CONSTRAINT_KINDS: usize = 5;

fn random_pattern(rng: &mut ChaCha8Rng, n: u32, k: u32) -> Option<PatternSpec> {
    let mut feasible = Vec::new();
    for kind in PatternKind::ALL {
        let lo = if kind.is_cycle() { 3 } else { 2 };
        for len in lo..=5 {
            let p = PatternSpec::new(kind, len).unwrap();
            if p.check_feasible(n, k).is_ok() {
                feasible.push(p);
            }
        }
    }
    (!feasible.is_empty()).then(|| feasible[rng.gen_range(0..feasible.len())])
}

/// A random constraint of the given kind: t-intersecting, d-wise,
/// matching, pattern-free or a conjunction of two. Pattern-free falls
/// back to another kind when no pattern fits on `(n, k)`.
pub fn random_constraint_of(rng: &mut ChaCha8Rng, n: u32, k: u32, kind: usize) -> Constraint {
    match kind {
        0 => Constraint::TIntersecting(rng.gen_range(1..=k)),
        1 => Constraint::DWiseTIntersecting {
            d: rng.gen_range(2..=4),
            t: rng.gen_range(1..k),
        },
        2 => Constraint::MatchingAtMost(rng.gen_range(0..=3)),
        3 => match random_pattern(rng, n, k) {
            Some(p) => Constraint::PatternFree(p),
            None => {
                let other = rng.gen_range(0..3);
                random_constraint_of(rng, n, k, other)
            }
        },
        _ => {
            let a = rng.gen_range(0..4);
            let b = rng.gen_range(0..4);
            Constraint::Conjunction(vec![
                random_constraint_of(rng, n, k, a),
                random_constraint_of(rng, n, k, b),
            ])
        }
    }
}

/// A random problem of the given constraint kind; keeps every optimum.
pub fn random_problem_of(rng: &mut ChaCha8Rng, shapes: &[(u32, u32)], kind: usize) -> SearchProblem {
    let (n, k) = shapes[rng.gen_range(0..shapes.len())];
    let c = random_constraint_of(rng, n, k, kind);
    let mut p = SearchProblem::new(n, k, c);
    if let Some(t) = p.constraint.forced_intersection() {
        if t < k && rng.gen_bool(0.25) {
            p.options.nontrivial = Some(t);
        }
    }
    p.limits.max_optima = usize::MAX;
    p.limits.allow_large_brute_force = true;
    p
}

pub fn random_problem(rng: &mut ChaCha8Rng, shapes: &[(u32, u32)]) -> SearchProblem {
    let kind = rng.gen_range(0..CONSTRAINT_KINDS);
    random_problem_of(rng, shapes, kind)
}

/// Runs both engines and asserts they agree on value and every optimum.
pub fn assert_engines_agree(p: &SearchProblem) {
    let brute = codegree::search::max_co2(&p.clone().with_mode(Mode::BruteForce)).unwrap();
    let bnb = codegree::search::max_co2(&p.clone().with_mode(Mode::BranchAndBound)).unwrap();
    assert!(brute.certified && bnb.certified);
    assert_eq!(brute.value, bnb.value, "{} on n={} k={}", p.constraint, p.n, p.k);
    assert_eq!(brute.optima_count, bnb.optima_count, "{} on n={} k={}", p.constraint, p.n, p.k);
    assert_eq!(brute.optima, bnb.optima, "{} on n={} k={}", p.constraint, p.n, p.k);
}
