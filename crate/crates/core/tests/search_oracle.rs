mod common;

use codegree::search::{max_co2, Constraint, Mode, SearchOptions, SearchProblem};
use codegree::props::{PatternKind, PatternSpec};
use codegree::VertexSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn branch_and_bound_matches_brute_force() {
    let shapes = common::small_shapes(15, 9);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let p = common::random_problem(&mut rng, &shapes);
        common::assert_engines_agree(&p);
    }
}

#[test]
fn optima_are_maximal() {
    let shapes = common::small_shapes(20, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let mut p = common::random_problem(&mut rng, &shapes);
        p.options.nontrivial = None;
        let r = max_co2(&p).unwrap();
        for h in &r.optima {
            for e in VertexSet::full(p.n).subsets(p.k) {
                if !h.contains_edge(e) {
                    let bigger = h.with_edge(e).unwrap();
                    assert!(!p.constraint.admits(&bigger).unwrap(), "{} not maximal", p.constraint);
                }
            }
        }
    }
}

#[test]
fn pruning_never_changes_the_answer() {
    let shapes = common::small_shapes(21, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let p = common::random_problem(&mut rng, &shapes);
        let pruned = max_co2(&p).unwrap();
        let plain = max_co2(&SearchProblem {
            options: SearchOptions {
                nontrivial: p.options.nontrivial,
                ..SearchOptions::no_pruning()
            },
            ..p.clone()
        })
        .unwrap();
        assert_eq!((pruned.value, &pruned.optima), (plain.value, &plain.optima));
    }
}

#[test]
fn worker_counts_agree() {
    let cases = [
        (7, 3, Constraint::intersecting()),
        (7, 3, Constraint::PatternFree(PatternSpec::new(PatternKind::MinimalPath, 3).unwrap())),
        (6, 3, Constraint::MatchingAtMost(2)),
        (7, 2, Constraint::DWiseTIntersecting { d: 3, t: 1 }),
    ];
    for (n, k, c) in cases {
        let base = SearchProblem::new(n, k, c);
        let one = max_co2(&base.clone().with_threads(1)).unwrap();
        for threads in [2, 8] {
            let r = max_co2(&base.clone().with_threads(threads)).unwrap();
            assert_eq!(r.value, one.value);
            assert_eq!(r.optima, one.optima);
            assert_eq!(r.optima_count, one.optima_count);
            assert!(r.certified);
        }
    }
}

#[test]
fn brute_force_spec_examples() {
    let p = SearchProblem::new(6, 3, Constraint::PatternFree(PatternSpec::new(PatternKind::MinimalPath, 3).unwrap()))
        .with_mode(Mode::BruteForce);
    assert_eq!(max_co2(&p).unwrap().value, Some(90));
    for (n, k) in [(4, 2), (5, 2), (5, 3), (6, 4)] {
        let p = SearchProblem::new(n, k, Constraint::Conjunction(vec![])).with_mode(Mode::BruteForce);
        let want = (n - k + 1).pow(2) as u128 * codegree::binom::binom(n, k - 1);
        assert_eq!(max_co2(&p).unwrap().value, Some(want));
    }
}
