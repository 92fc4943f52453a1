use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use crate::binom::binom;
use crate::error::{param, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

use super::{SearchProblem, SearchResult, SearchStats};

const MAX_UNIVERSE: u128 = 1 << 16;

/// All k-sets of `[n]` in colex order with their (k-1)-subset ranks.
pub(super) struct Universe {
    pub n: u32,
    pub k: u32,
    pub edges: Vec<VertexSet>,
    pub ridges: Vec<Vec<u32>>,
    pub ridge_count: usize,
}

impl Universe {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        let size = binom(n, k);
        if size > MAX_UNIVERSE {
            return param(format!("C({n},{k}) = {size} candidate edges is beyond exhaustive search"));
        }
        let edges: Vec<VertexSet> = VertexSet::full(n).subsets(k).collect();
        let ridges = edges
            .iter()
            .map(|e| e.subsets(k - 1).map(|s| s.rank() as u32).collect())
            .collect();
        Ok(Universe {
            n,
            k,
            edges,
            ridges,
            ridge_count: binom(n, k - 1) as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn hypergraph(&self, idx: &[u32]) -> Hypergraph {
        let edges = idx.iter().map(|&i| self.edges[i as usize]).collect();
        Hypergraph::from_sorted_unchecked(self.n, self.k, edges)
    }
}

/// Codegrees of the current family with its running co2.
#[derive(Clone)]
pub(super) struct Tracker {
    deg: Vec<u32>,
    pub co2: u128,
}

impl Tracker {
    pub fn new(u: &Universe) -> Self {
        Tracker {
            deg: vec![0; u.ridge_count],
            co2: 0,
        }
    }

    pub fn gain(&self, u: &Universe, e: u32) -> u128 {
        u.ridges[e as usize].iter().map(|&r| 2 * self.deg[r as usize] as u128 + 1).sum()
    }

    pub fn add(&mut self, u: &Universe, e: u32) {
        for &r in &u.ridges[e as usize] {
            let d = &mut self.deg[r as usize];
            self.co2 += 2 * *d as u128 + 1;
            *d += 1;
        }
    }

    pub fn remove(&mut self, u: &Universe, e: u32) {
        for &r in &u.ridges[e as usize] {
            let d = &mut self.deg[r as usize];
            *d -= 1;
            self.co2 -= 2 * *d as u128 + 1;
        }
    }
}

/// Node and time budgets shared by all workers.
pub(super) struct Budget {
    limit: u64,
    used: AtomicU64,
    deadline: Option<Instant>,
    exhausted: AtomicBool,
}

pub(super) const BUDGET_CHUNK: u64 = 1024;

impl Budget {
    pub fn new(p: &SearchProblem, start: Instant) -> Self {
        Budget {
            limit: p.limits.node_budget,
            used: AtomicU64::new(0),
            deadline: p.limits.time_budget.map(|d| start + d),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Charges `nodes` and reports whether work may continue.
    pub fn charge(&self, nodes: u64) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let used = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        let late = self.deadline.is_some_and(|d| Instant::now() >= d);
        if used > self.limit || late {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// Best value with the smallest optima seen by one worker.
#[derive(Default)]
pub(super) struct Collector {
    pub best: Option<u128>,
    pub optima: Vec<Vec<u32>>,
    pub count: u64,
    pub leaves: u64,
    pub nodes: u64,
}

impl Collector {
    /// Records a family; `idx` must be sorted.
    pub fn offer(&mut self, value: u128, idx: &[u32], cap: usize) {
        self.leaves += 1;
        match self.best {
            Some(b) if value < b => return,
            Some(b) if value == b => self.count += 1,
            _ => {
                self.best = Some(value);
                self.optima.clear();
                self.count = 1;
            }
        }
        let pos = self.optima.partition_point(|o| o.as_slice() < idx);
        if pos < cap {
            self.optima.insert(pos, idx.to_vec());
            self.optima.truncate(cap);
        }
    }

    pub fn merge(parts: Vec<Collector>, cap: usize) -> Collector {
        let best = parts.iter().filter_map(|c| c.best).max();
        let mut out = Collector {
            best,
            nodes: parts.iter().map(|c| c.nodes).sum(),
            leaves: parts.iter().map(|c| c.leaves).sum(),
            ..Collector::default()
        };
        for c in parts.into_iter().filter(|c| c.best == best && best.is_some()) {
            out.count += c.count;
            out.optima.extend(c.optima);
        }
        out.optima.sort_unstable();
        out.optima.dedup();
        out.optima.truncate(cap);
        out
    }

    pub fn into_result(self, u: &Universe, p: &SearchProblem, certified: bool, start: Instant) -> SearchResult {
        SearchResult {
            value: self.best,
            optima: self.optima.iter().map(|idx| u.hypergraph(idx)).collect(),
            optima_count: self.count,
            certified,
            stats: SearchStats {
                nodes: self.nodes,
                leaves: self.leaves,
                elapsed: start.elapsed(),
            },
            threads: p.limits.threads,
        }
    }
}

/// Whether the filter rejects the family with these edges.
pub(super) fn filtered_out(p: &SearchProblem, family: &[VertexSet]) -> bool {
    let Some(t) = p.options.nontrivial else {
        return false;
    };
    match family.split_first() {
        None => true,
        Some((first, rest)) => rest.iter().fold(*first, |acc, e| acc.intersection(*e)).len() >= t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracker_matches_core() {
        let u = Universe::new(6, 3).unwrap();
        let mut t = Tracker::new(&u);
        let picks = [0u32, 3, 7, 11, 19];
        for (i, &e) in picks.iter().enumerate() {
            let gain = t.gain(&u, e);
            let before = t.co2;
            t.add(&u, e);
            assert_eq!(t.co2 - before, gain);
            let mut idx = picks[..=i].to_vec();
            idx.sort_unstable();
            assert_eq!(t.co2, u.hypergraph(&idx).co2());
        }
        for &e in picks.iter().rev() {
            t.remove(&u, e);
        }
        assert_eq!(t.co2, 0);
    }

    #[test]
    fn collector_keeps_smallest() {
        let mut c = Collector::default();
        c.offer(5, &[3, 4], 2);
        c.offer(5, &[1, 2], 2);
        c.offer(5, &[2, 9], 2);
        assert_eq!(c.optima, vec![vec![1, 2], vec![2, 9]]);
        assert_eq!(c.count, 3);
        c.offer(4, &[0], 2);
        assert_eq!(c.count, 3);
        c.offer(6, &[7], 2);
        assert_eq!((c.best, c.count, c.optima.len()), (Some(6), 1, 1));
    }
}
