//! Exact maximisation of co2 over downward-closed families.
//!
//! Because co2 strictly increases with every added edge, optima are maximal
//! families. Branch-and-bound enumerates maximal families Bron–Kerbosch style
//! (chosen edges, candidates, excluded-but-addable edges) and prunes with the
//! codegree inequality at the largest edge count still reachable. Brute
//! force walks every feasible subfamily and serves as the oracle.

mod bnb;
mod brute;
mod claims;
mod constraint;
mod universe;

use std::time::Duration;

pub use claims::{verify_claim, Claim, ClaimParams, ClaimReport, ClaimValue, Verdict};
pub use constraint::Constraint;

use crate::error::{param, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    BruteForce,
    BranchAndBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    pub threads: usize,
    /// Optimal families kept; the smallest by edge-rank sequence win.
    pub max_optima: usize,
    /// Lets brute force run past 30 candidate edges.
    pub allow_large_brute_force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: 1_000_000_000,
            time_budget: None,
            threads: 1,
            max_optima: 64,
            allow_large_brute_force: false,
        }
    }
}

/// Switches for pruning rules plus an optional filter on reported families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub bound_pruning: bool,
    pub l1_caps: bool,
    pub maximality_pruning: bool,
    /// Only families whose common intersection is smaller than this count.
    /// With a t-intersecting constraint this restricts to nontrivial families.
    pub nontrivial: Option<u32>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            bound_pruning: true,
            l1_caps: true,
            maximality_pruning: true,
            nontrivial: None,
        }
    }
}

impl SearchOptions {
    pub fn no_pruning() -> Self {
        SearchOptions {
            bound_pruning: false,
            l1_caps: false,
            maximality_pruning: false,
            nontrivial: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: u32,
    pub k: u32,
    pub constraint: Constraint,
    pub mode: Mode,
    pub limits: Limits,
    pub options: SearchOptions,
}

impl SearchProblem {
    pub fn new(n: u32, k: u32, constraint: Constraint) -> Self {
        SearchProblem {
            n,
            k,
            constraint,
            mode: Mode::BranchAndBound,
            limits: Limits::default(),
            options: SearchOptions::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.limits.threads = threads;
        self
    }

    fn validate(&self) -> Result<()> {
        Hypergraph::empty(self.n, self.k)?;
        self.constraint.validate()?;
        if self.limits.threads == 0 {
            return param("need at least one worker thread");
        }
        if let Some(0) = self.options.nontrivial {
            return param("nontrivial filter needs t >= 1");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Best co2 found; `None` when no family passes the filter.
    pub value: Option<u128>,
    /// Optimal families in increasing edge-rank order, at most `max_optima`.
    pub optima: Vec<Hypergraph>,
    /// Optimal families seen in total.
    pub optima_count: u64,
    /// False when a budget ran out; `value` is then only a lower bound.
    pub certified: bool,
    pub stats: SearchStats,
    pub threads: usize,
}

impl SearchResult {
    pub fn optima_truncated(&self) -> bool {
        self.optima_count > self.optima.len() as u64
    }
}

/// Maximum co2 over families satisfying the problem's constraint.
pub fn max_co2(p: &SearchProblem) -> Result<SearchResult> {
    p.validate()?;
    let result = match p.mode {
        Mode::BruteForce => brute::run(p)?,
        Mode::BranchAndBound => bnb::run(p)?,
    };
    revalidate(p, &result)?;
    Ok(result)
}

/// Plain enumeration of every feasible subfamily.
pub fn brute_force_co2(p: &SearchProblem) -> Result<SearchResult> {
    max_co2(&SearchProblem {
        mode: Mode::BruteForce,
        ..p.clone()
    })
}

// Independent re-check of every reported optimum.
fn revalidate(p: &SearchProblem, r: &SearchResult) -> Result<()> {
    for h in &r.optima {
        assert!(p.constraint.admits(h)?, "search reported a family violating {}", p.constraint);
        assert_eq!(Some(h.co2()), r.value, "search reported a family with the wrong co2");
        if let Some(t) = p.options.nontrivial {
            let inter = crate::props::common_intersection(h)?;
            assert!(inter.len() < t, "search reported a trivial family");
        }
    }
    Ok(())
}
