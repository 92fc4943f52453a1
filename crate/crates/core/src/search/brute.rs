use std::time::Instant;

use crate::error::{param, Result};
use crate::vertex_set::VertexSet;

use super::universe::{filtered_out, Budget, Collector, Tracker, Universe, BUDGET_CHUNK};
use super::{SearchProblem, SearchResult};

const DEFAULT_LIMIT: usize = 30;

pub(super) fn run(p: &SearchProblem) -> Result<SearchResult> {
    let start = Instant::now();
    let u = Universe::new(p.n, p.k)?;
    if u.len() > DEFAULT_LIMIT && !p.limits.allow_large_brute_force {
        return param(format!(
            "brute force over C({},{}) = {} edges needs an explicit override (limit {DEFAULT_LIMIT})",
            p.n,
            p.k,
            u.len()
        ));
    }
    let budget = Budget::new(p, start);
    let mut walk = Walk {
        p,
        tracker: Tracker::new(&u),
        u: &u,
        budget: &budget,
        chosen: Vec::new(),
        family: Vec::new(),
        out: Collector::default(),
        pending: 0,
        stopped: false,
    };
    walk.visit(0);
    let out = walk.out;
    Ok(out.into_result(&u, p, !budget.exhausted(), start))
}

struct Walk<'a> {
    p: &'a SearchProblem,
    u: &'a Universe,
    budget: &'a Budget,
    tracker: Tracker,
    chosen: Vec<u32>,
    family: Vec<VertexSet>,
    out: Collector,
    pending: u64,
    stopped: bool,
}

impl Walk<'_> {
    // Decides edges from index `i` on; every feasible subfamily is one leaf.
    fn visit(&mut self, i: usize) {
        if self.stopped {
            return;
        }
        self.out.nodes += 1;
        self.pending += 1;
        if self.pending >= BUDGET_CHUNK {
            if !self.budget.charge(self.pending) {
                self.stopped = true;
                return;
            }
            self.pending = 0;
        }
        if i == self.u.len() {
            if !filtered_out(self.p, &self.family) {
                let cap = self.p.limits.max_optima;
                self.out.offer(self.tracker.co2, &self.chosen, cap);
            }
            return;
        }
        let e = self.u.edges[i];
        if self.p.constraint.admits_extension(&self.family, self.p.k, e) {
            self.tracker.add(self.u, i as u32);
            self.chosen.push(i as u32);
            self.family.push(e);
            self.visit(i + 1);
            self.family.pop();
            self.chosen.pop();
            self.tracker.remove(self.u, i as u32);
        }
        self.visit(i + 1);
    }
}
