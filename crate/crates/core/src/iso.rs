//! Canonical labelling of small hypergraphs.
//!
//! Colour refinement followed by individualisation of the first non-trivial
//! cell; every discrete leaf yields a relabelled edge list and the smallest
//! one is the canonical form. There is no automorphism pruning, so the leaf
//! count is bounded by `cap` and highly symmetric inputs may give up.

use crate::binom::binom;
use crate::hypergraph::Hypergraph;
use crate::props;
use crate::vertex_set::VertexSet;

pub const DEFAULT_LEAF_CAP: u64 = 5_000_000;

/// Canonical representative: edges as sorted bitmasks after relabelling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: u32,
    pub k: u32,
    pub edges: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_hypergraph(&self) -> Hypergraph {
        let edges = self.edges.iter().map(|&b| VertexSet::from_bits(b)).collect();
        Hypergraph::from_sorted_unchecked(self.n, self.k, edges)
    }
}

/// `None` when more than `cap` leaves would be visited.
pub fn canonical_form(h: &Hypergraph, cap: u64) -> Option<CanonicalForm> {
    let n = h.n() as usize;
    let incidence: Vec<Vec<usize>> = (1..=n as u32)
        .map(|v| (0..h.len()).filter(|&i| h.edges()[i].contains(v)).collect())
        .collect();
    let mut search = Search {
        edges: h.edges(),
        incidence,
        best: None,
        leaves: 0,
        cap,
    };
    let colours = search.refine(vec![0; n]);
    search.descend(colours)?;
    Some(CanonicalForm {
        n: h.n(),
        k: h.k(),
        edges: search.best.expect("at least one leaf"),
    })
}

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph, cap: u64) -> Option<bool> {
    if a.n() != b.n() || a.k() != b.k() || a.len() != b.len() {
        return Some(false);
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Some(false);
    }
    Some(canonical_form(a, cap)? == canonical_form(b, cap)?)
}

/// Class index for each input, numbered by first appearance.
pub fn isomorphism_classes(hs: &[Hypergraph], cap: u64) -> Option<Vec<usize>> {
    let mut seen: Vec<CanonicalForm> = Vec::new();
    let mut out = Vec::with_capacity(hs.len());
    for h in hs {
        let form = canonical_form(h, cap)?;
        let idx = match seen.iter().position(|f| *f == form) {
            Some(i) => i,
            None => {
                seen.push(form);
                seen.len() - 1
            }
        };
        out.push(idx);
    }
    Some(out)
}

/// All k-sets through some fixed t-set.
pub fn is_full_t_star(h: &Hypergraph, t: u32) -> bool {
    let (n, k) = (h.n(), h.k());
    t >= 1
        && t <= k
        && h.len() as u128 == binom(n - t, k - t)
        && props::common_intersection(h).is_ok_and(|c| c.len() >= t)
}

struct Search<'a> {
    edges: &'a [VertexSet],
    incidence: Vec<Vec<usize>>,
    best: Option<Vec<u64>>,
    leaves: u64,
    cap: u64,
}

impl Search<'_> {
    // Equitable refinement; colours are dense ranks that respect the
    // incoming order.
    fn refine(&self, mut colours: Vec<u32>) -> Vec<u32> {
        let n = colours.len();
        loop {
            let cells = colours.iter().max().map_or(0, |&c| c + 1);
            let signatures: Vec<(u32, Vec<Vec<u32>>)> = (0..n)
                .map(|v| {
                    let mut around: Vec<Vec<u32>> = self.incidence[v]
                        .iter()
                        .map(|&i| {
                            let mut cs: Vec<u32> = self.edges[i]
                                .vertices()
                                .filter(|&u| u as usize != v + 1)
                                .map(|u| colours[u as usize - 1])
                                .collect();
                            cs.sort_unstable();
                            cs
                        })
                        .collect();
                    around.sort_unstable();
                    (colours[v], around)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<Vec<u32>>)> = signatures.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            colours = signatures
                .iter()
                .map(|s| distinct.binary_search(&s).expect("present") as u32)
                .collect();
            if distinct.len() as u32 == cells {
                return colours;
            }
        }
    }

    fn descend(&mut self, colours: Vec<u32>) -> Option<()> {
        let n = colours.len();
        let mut sizes = vec![0usize; n];
        for &c in &colours {
            sizes[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            return self.leaf(&colours);
        };
        for v in 0..n {
            if colours[v] as usize != target {
                continue;
            }
            // v gets its own cell just ahead of the rest of its old cell
            let split: Vec<u32> = colours
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c as usize == target && u != v))
                .collect();
            let dense = densify(split);
            let refined = self.refine(dense);
            self.descend(refined)?;
        }
        Some(())
    }

    fn leaf(&mut self, colours: &[u32]) -> Option<()> {
        self.leaves += 1;
        if self.leaves > self.cap {
            return None;
        }
        let perm: Vec<u32> = colours.iter().map(|&c| c + 1).collect();
        let mut form: Vec<u64> = self.edges.iter().map(|e| e.permute(&perm).bits()).collect();
        form.sort_unstable();
        if self.best.as_ref().is_none_or(|b| form < *b) {
            self.best = Some(form);
        }
        Some(())
    }
}

fn densify(values: Vec<u32>) -> Vec<u32> {
    let mut sorted = values.clone();
    sorted.sort_unstable();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") as u32)
        .collect()
}
