use std::fmt;

use crate::binom::binom;
use crate::error::{param, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: u32 = 64;

/// A subset of `[n]` (`n <= 64`) packed in one word.
///
/// Vertex `v` (1-based) lives in bit `v - 1`. Among sets of equal size the
/// numeric order of the masks is exactly the colex order, so `Ord` on
/// `VertexSet` is the canonical subset order everywhere in the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: u32) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        if lo > hi || lo == 0 {
            return VertexSet::EMPTY;
        }
        VertexSet(VertexSet::full(hi).0 & !VertexSet::full(lo - 1).0)
    }

    pub fn singleton(v: u32) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1u64 << (v - 1))
    }

    /// Builds a set from 1-based labels; labels outside `1..=64` are rejected.
    pub fn from_vertices(vertices: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &v in vertices {
            if !(1..=MAX_VERTICES).contains(&v) {
                return param(format!("vertex label {v} outside 1..=64"));
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn intersection_len(self, other: VertexSet) -> u32 {
        (self.0 & other.0).count_ones()
    }

    pub fn meets(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn with(self, v: u32) -> VertexSet {
        self.union(VertexSet::singleton(v))
    }

    pub fn without(self, v: u32) -> VertexSet {
        self.difference(VertexSet::singleton(v))
    }

    /// True when every element is in `1..=n`.
    pub fn within(self, n: u32) -> bool {
        self.is_subset(VertexSet::full(n))
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// Colex rank among the subsets of the same size.
    pub fn rank(self) -> u128 {
        self.vertices()
            .enumerate()
            .map(|(i, v)| binom(v - 1, i as u32 + 1))
            .sum()
    }

    /// Inverse of [`VertexSet::rank`] for `size`-subsets of `[n]`.
    pub fn unrank(rank: u128, size: u32, n: u32) -> Result<Self> {
        if n > MAX_VERTICES || size > n {
            return param(format!("cannot unrank {size}-subsets of [{n}]"));
        }
        if rank >= binom(n, size) {
            return param(format!(
                "rank {rank} out of range for {size}-subsets of [{n}] (count {})",
                binom(n, size)
            ));
        }
        let mut bits = 0u64;
        let mut rest = rank;
        let mut top = n;
        for i in (1..=size).rev() {
            // largest v with C(v - 1, i) <= rest
            let mut v = top;
            while binom(v - 1, i) > rest {
                v -= 1;
            }
            rest -= binom(v - 1, i);
            bits |= 1u64 << (v - 1);
            top = v - 1;
        }
        Ok(VertexSet(bits))
    }

    /// All `size`-subsets of this set, in colex order.
    pub fn subsets(self, size: u32) -> Subsets {
        Subsets::new(self, size)
    }

    /// Applies a relabelling `v -> perm[v - 1]` (1-based targets).
    pub fn permute(self, perm: &[u32]) -> VertexSet {
        let mut bits = 0u64;
        for v in self.vertices() {
            bits |= 1u64 << (perm[v as usize - 1] - 1);
        }
        VertexSet(bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Colex enumeration of the `size`-subsets of a ground set.
///
/// Works on positions inside the ground set, so it enumerates the
/// `C(|ground|, size)` subsets with Gosper's trick and scatters each one
/// back onto the ground elements.
#[derive(Clone, Debug)]
pub struct Subsets {
    ground: [u32; 64],
    ground_len: u32,
    size: u32,
    state: Option<u64>,
}

impl Subsets {
    fn new(ground: VertexSet, size: u32) -> Self {
        let mut elems = [0u32; 64];
        let mut len = 0;
        for v in ground.vertices() {
            elems[len] = v;
            len += 1;
        }
        let state = if size as usize > len {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some(if size == 64 { u64::MAX } else { (1u64 << size) - 1 })
        };
        Subsets {
            ground: elems,
            ground_len: len as u32,
            size,
            state,
        }
    }

    fn scatter(&self, positions: u64) -> VertexSet {
        if self.ground_len == 64 {
            return VertexSet(positions);
        }
        let mut bits = 0u64;
        let mut p = positions;
        while p != 0 {
            let i = p.trailing_zeros() as usize;
            bits |= 1u64 << (self.ground[i] - 1);
            p &= p - 1;
        }
        VertexSet(bits)
    }
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.state?;
        let out = self.scatter(cur);
        self.state = if self.size == 0 || self.size == self.ground_len {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let next = (((r ^ cur) >> 2) / c) | r;
                let limit = self.ground_len;
                if limit < 64 && next >> limit != 0 {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(out)
    }
}
