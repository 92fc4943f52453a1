//! Exact predicates and parameters of set families.

mod packing;
mod pattern;

pub use packing::{covering, covering_number, matching, matching_number};
pub use pattern::{contains_pattern, is_pattern_free, PatternKind, PatternSpec};
pub(crate) use packing::has_matching_of_size;
pub(crate) use pattern::contains_pattern_through;

use crate::error::{param, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessRole {
    Matching,
    Pattern(PatternKind),
}

/// Edge indices (into `Hypergraph::edges`) certifying a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub role: WitnessRole,
    pub edges: Vec<usize>,
}

/// Every two distinct edges share at least `t` vertices.
pub fn is_t_intersecting(h: &Hypergraph, t: u32) -> bool {
    edges_t_intersecting(h.edges(), t)
}

pub(crate) fn edges_t_intersecting(edges: &[VertexSet], t: u32) -> bool {
    edges
        .iter()
        .enumerate()
        .all(|(i, a)| edges[i + 1..].iter().all(|b| a.intersection_len(*b) >= t))
}

/// Every collection of at least two and at most `d` distinct edges has a
/// common intersection of size at least `t`.
pub fn is_d_wise_t_intersecting(h: &Hypergraph, d: u32, t: u32) -> Result<bool> {
    if d < 2 || t < 1 {
        return param(format!("d-wise t-intersecting needs d >= 2 and t >= 1, got d={d} t={t}"));
    }
    let edges = h.edges();
    Ok((0..edges.len()).all(|i| dwise_from(edges, i + 1, edges[i], 1, d, t)))
}

/// Whether `family + e` stays d-wise t-intersecting, given `family` already is.
pub(crate) fn dwise_extension_ok(family: &[VertexSet], e: VertexSet, d: u32, t: u32) -> bool {
    dwise_from(family, 0, e, 1, d, t)
}

// Extends a collection whose running intersection is `acc` (with `size`
// members) by members drawn from `edges[from..]`.
fn dwise_from(edges: &[VertexSet], from: usize, acc: VertexSet, size: u32, d: u32, t: u32) -> bool {
    if size == d {
        return true;
    }
    edges[from..].iter().enumerate().all(|(off, &f)| {
        let next = acc.intersection(f);
        next.len() >= t && dwise_from(edges, from + off + 1, next, size + 1, d, t)
    })
}

/// Intersection of all edges.
pub fn common_intersection(h: &Hypergraph) -> Result<VertexSet> {
    if h.is_empty() {
        return param("common intersection of an empty family is undefined");
    }
    Ok(h
        .edges()
        .iter()
        .fold(VertexSet::full(h.n()), |acc, e| acc.intersection(*e)))
}

/// t-intersecting and not contained in a t-star.
pub fn is_nontrivial_t_intersecting(h: &Hypergraph, t: u32) -> bool {
    is_t_intersecting(h, t) && common_intersection(h).is_ok_and(|c| c.len() < t)
}
