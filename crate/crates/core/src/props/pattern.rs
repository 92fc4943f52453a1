//! Berge, minimal and linear paths and cycles.
//!
//! An s-path has s edges. Every kind is described by the relation each
//! ordered pair of positions must satisfy plus a closing check on the whole
//! sequence, and containment is a backtracking search over ordered edge
//! sequences that tests each new position against all earlier ones.

use std::fmt;
use std::str::FromStr;

use super::{Witness, WitnessRole};
use crate::binom::binom;
use crate::error::{param, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    BergePath,
    BergeCycle,
    MinimalPath,
    MinimalCycle,
    LinearPath,
    LinearCycle,
}

impl PatternKind {
    pub const ALL: [PatternKind; 6] = [
        PatternKind::BergePath,
        PatternKind::BergeCycle,
        PatternKind::MinimalPath,
        PatternKind::MinimalCycle,
        PatternKind::LinearPath,
        PatternKind::LinearCycle,
    ];

    pub fn is_cycle(self) -> bool {
        matches!(
            self,
            PatternKind::BergeCycle | PatternKind::MinimalCycle | PatternKind::LinearCycle
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::BergePath => "berge-path",
            PatternKind::BergeCycle => "berge-cycle",
            PatternKind::MinimalPath => "minimal-path",
            PatternKind::MinimalCycle => "minimal-cycle",
            PatternKind::LinearPath => "linear-path",
            PatternKind::LinearCycle => "linear-cycle",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PatternKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown pattern kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSpec {
    kind: PatternKind,
    len: u32,
}

impl PatternSpec {
    /// `len` is the number of edges: at least 2 for paths, 3 for cycles.
    pub fn new(kind: PatternKind, len: u32) -> Result<Self> {
        let min = if kind.is_cycle() { 3 } else { 2 };
        if len < min {
            return param(format!("{kind} needs at least {min} edges, got {len}"));
        }
        if len > 16 {
            return param(format!("patterns longer than 16 edges are not supported, got {len}"));
        }
        Ok(PatternSpec { kind, len })
    }

    /// A path read as "an s-cycle with one edge deleted", i.e. with `s - 1` edges.
    pub fn path_by_deletion(kind: PatternKind, cycle_len: u32) -> Result<Self> {
        let path = match kind {
            PatternKind::BergePath | PatternKind::BergeCycle => PatternKind::BergePath,
            PatternKind::MinimalPath | PatternKind::MinimalCycle => PatternKind::MinimalPath,
            PatternKind::LinearPath | PatternKind::LinearCycle => PatternKind::LinearPath,
        };
        PatternSpec::new(path, cycle_len.saturating_sub(1))
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u32 {
        self.len
    }

    /// A lower bound on the vertices any realization with k-edges spans.
    /// Exact for the linear kinds.
    pub fn min_vertices(&self, k: u32) -> u32 {
        let s = self.len;
        match self.kind {
            PatternKind::LinearCycle => s * (k - 1),
            PatternKind::LinearPath => s * (k - 1) + 1,
            // the consecutive intersections are pairwise disjoint and each
            // edge holds two of them
            PatternKind::MinimalCycle => (s * k).div_ceil(2),
            PatternKind::MinimalPath => s * k - max_path_overlap(s, k),
            PatternKind::BergeCycle => s.max(k + 1),
            PatternKind::BergePath => (s - 1).max(k + 1),
        }
    }

    /// Rejects patterns that cannot occur in any k-graph on `[n]`.
    pub fn check_feasible(&self, n: u32, k: u32) -> Result<()> {
        let need = self.min_vertices(k);
        if n < need {
            return param(format!(
                "{self} with {k}-edges needs at least {need} vertices, only {n} available"
            ));
        }
        if binom(n, k) < self.len as u128 {
            return param(format!("{self} needs {} distinct edges", self.len));
        }
        Ok(())
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.len)
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// `kind:len`, e.g. `minimal-cycle:3`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, len) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("expected kind:len, got {s:?}")))?;
        let len = len
            .parse()
            .map_err(|_| Error::Parameter(format!("bad pattern length {len:?}")))?;
        PatternSpec::new(kind.parse()?, len)
    }
}

// Largest total size of the s-1 consecutive overlaps of a minimal s-path of
// k-sets: each overlap is in 1..=k-1 and two adjacent overlaps fit in one edge.
fn max_path_overlap(s: u32, k: u32) -> u32 {
    let sizes = 1..k;
    let mut best: Vec<u32> = sizes.clone().collect();
    for _ in 1..s - 1 {
        best = sizes
            .clone()
            .map(|cur| {
                sizes
                    .clone()
                    .filter(|prev| prev + cur <= k)
                    .map(|prev| best[prev as usize - 1] + cur)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
    }
    best.into_iter().max().unwrap_or(0)
}

/// First realization in lexicographic order of edge-index sequences.
pub fn contains_pattern(h: &Hypergraph, p: PatternSpec) -> Result<Option<Witness>> {
    p.check_feasible(h.n(), h.k())?;
    let mut finder = Finder::new(h.edges(), p);
    Ok(finder.search(None).then(|| Witness {
        role: WitnessRole::Pattern(p.kind),
        edges: finder.seq.clone(),
    }))
}

pub fn is_pattern_free(h: &Hypergraph, p: PatternSpec) -> Result<bool> {
    contains_pattern(h, p).map(|w| w.is_none())
}

/// Whether `family + e` contains the pattern, assuming `family` does not.
/// Only realizations using `e` are searched.
pub(crate) fn contains_pattern_through(family: &[VertexSet], e: VertexSet, p: PatternSpec) -> bool {
    if family.len() + 1 < p.len as usize {
        return false;
    }
    let mut edges = Vec::with_capacity(family.len() + 1);
    edges.extend_from_slice(family);
    edges.push(e);
    let idx = family.len();
    let mut finder = Finder::new(&edges, p);
    // cycles are rotation invariant and paths reversal invariant
    let positions = if p.kind.is_cycle() { 1 } else { p.len.div_ceil(2) };
    (0..positions as usize).any(|pos| finder.search(Some((pos, idx))))
}

struct Finder<'a> {
    edges: &'a [VertexSet],
    spec: PatternSpec,
    seq: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Finder<'a> {
    fn new(edges: &'a [VertexSet], spec: PatternSpec) -> Self {
        Finder {
            edges,
            spec,
            seq: Vec::with_capacity(spec.len as usize),
            used: vec![false; edges.len()],
        }
    }

    fn search(&mut self, forced: Option<(usize, usize)>) -> bool {
        self.seq.clear();
        self.used.iter_mut().for_each(|u| *u = false);
        if let Some((_, idx)) = forced {
            // reserved for its position
            self.used[idx] = true;
        }
        self.extend(forced)
    }

    fn extend(&mut self, forced: Option<(usize, usize)>) -> bool {
        let pos = self.seq.len();
        if pos == self.spec.len as usize {
            return self.closes();
        }
        if let Some((at, idx)) = forced {
            if at == pos {
                return self.try_push(idx, forced);
            }
        }
        for idx in 0..self.edges.len() {
            if !self.used[idx] && self.try_push(idx, forced) {
                return true;
            }
        }
        false
    }

    fn try_push(&mut self, idx: usize, forced: Option<(usize, usize)>) -> bool {
        let pos = self.seq.len();
        let e = self.edges[idx];
        let fits = self
            .seq
            .iter()
            .enumerate()
            .all(|(i, &j)| self.pair_ok(i, pos, self.edges[j], e));
        if !fits {
            return false;
        }
        self.seq.push(idx);
        self.used[idx] = true;
        let found = self.extend(forced);
        if !found {
            self.seq.pop();
            if !matches!(forced, Some((_, f)) if f == idx) {
                self.used[idx] = false;
            }
        }
        found
    }

    fn consecutive(&self, i: usize, j: usize) -> bool {
        let last = self.spec.len as usize - 1;
        j == i + 1 || (self.spec.kind.is_cycle() && i == 0 && j == last)
    }

    fn pair_ok(&self, i: usize, j: usize, a: VertexSet, b: VertexSet) -> bool {
        let meet = a.intersection_len(b);
        let consecutive = self.consecutive(i, j);
        match self.spec.kind {
            PatternKind::LinearPath | PatternKind::LinearCycle => {
                if consecutive {
                    meet == 1
                } else {
                    meet == 0
                }
            }
            PatternKind::MinimalPath | PatternKind::MinimalCycle => {
                if consecutive {
                    meet >= 1
                } else {
                    meet == 0
                }
            }
            PatternKind::BergePath | PatternKind::BergeCycle => !consecutive || meet >= 1,
        }
    }

    fn closes(&self) -> bool {
        let sets: Vec<VertexSet> = self.seq.iter().map(|&i| self.edges[i]).collect();
        let common = || sets.iter().fold(sets[0], |acc, e| acc.intersection(*e));
        match self.spec.kind {
            PatternKind::MinimalCycle | PatternKind::LinearCycle => common().is_empty(),
            PatternKind::MinimalPath | PatternKind::LinearPath => true,
            PatternKind::BergePath | PatternKind::BergeCycle => {
                let mut links: Vec<VertexSet> =
                    sets.windows(2).map(|w| w[0].intersection(w[1])).collect();
                if self.spec.kind == PatternKind::BergeCycle {
                    links.push(sets[sets.len() - 1].intersection(sets[0]));
                }
                has_distinct_representatives(&links)
            }
        }
    }
}

/// Hall-type check by augmenting paths: can each set pick its own vertex?
pub(crate) fn has_distinct_representatives(sets: &[VertexSet]) -> bool {
    fn augment(sets: &[VertexSet], i: usize, owner: &mut [Option<usize>; 64], seen: &mut u64) -> bool {
        for v in sets[i].vertices() {
            let bit = 1u64 << (v - 1);
            if *seen & bit != 0 {
                continue;
            }
            *seen |= bit;
            let slot = v as usize - 1;
            match owner[slot] {
                None => {
                    owner[slot] = Some(i);
                    return true;
                }
                Some(j) => {
                    if augment(sets, j, owner, seen) {
                        owner[slot] = Some(i);
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut owner = [None; 64];
    (0..sets.len()).all(|i| augment(sets, i, &mut owner, &mut 0))
}
