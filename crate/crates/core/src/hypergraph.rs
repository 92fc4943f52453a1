use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::binom::binom;
use crate::error::{param, Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A k-uniform hypergraph on `[n]` with edges kept sorted in colex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: u32,
    k: u32,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// The edgeless hypergraph.
    pub fn empty(n: u32, k: u32) -> Result<Self> {
        check_dims(n, k)?;
        Ok(Hypergraph { n, k, edges: Vec::new() })
    }

    /// Validates and sorts `edges`. Duplicates are an error.
    pub fn new(n: u32, k: u32, mut edges: Vec<VertexSet>) -> Result<Self> {
        check_dims(n, k)?;
        for e in &edges {
            check_edge(n, k, *e)?;
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("duplicate edge {}", w[0]));
        }
        Ok(Hypergraph { n, k, edges })
    }

    /// Builds from edges already known to be valid, distinct and sorted.
    pub(crate) fn from_sorted_unchecked(n: u32, k: u32, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == k && e.within(n)));
        Hypergraph { n, k, edges }
    }

    /// Every k-subset of `[n]` satisfying `keep`.
    pub fn from_filter(n: u32, k: u32, keep: impl Fn(VertexSet) -> bool) -> Result<Self> {
        check_dims(n, k)?;
        let total = binom(n, k);
        if total > 1 << 24 {
            return param(format!("C({n},{k}) = {total} k-sets is too many to enumerate"));
        }
        let edges = VertexSet::full(n).subsets(k).filter(|&e| keep(e)).collect();
        Ok(Hypergraph { n, k, edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Copy with one more edge.
    pub fn with_edge(&self, e: VertexSet) -> Result<Hypergraph> {
        check_edge(self.n, self.k, e)?;
        match self.edges.binary_search(&e) {
            Ok(_) => param(format!("edge {e} already present")),
            Err(pos) => {
                let mut edges = self.edges.clone();
                edges.insert(pos, e);
                Ok(Hypergraph { n: self.n, k: self.k, edges })
            }
        }
    }

    /// Copy with `e` removed (no-op if absent).
    pub fn without_edge(&self, e: VertexSet) -> Hypergraph {
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Hypergraph { n: self.n, k: self.k, edges }
    }

    /// Number of edges containing `s`.
    pub fn codegree(&self, s: VertexSet) -> u64 {
        self.edges.iter().filter(|e| s.is_subset(**e)).count() as u64
    }

    /// Codegrees of all `ell`-subsets of `[n]`.
    pub fn codegree_vector(&self, ell: u32) -> Result<CodegreeVector> {
        if ell > self.k {
            return param(format!("ell = {ell} exceeds k = {}", self.k));
        }
        let mut counts = BTreeMap::new();
        for (s, d) in sorted_subset_counts(&self.edges, ell) {
            counts.insert(s, d);
        }
        Ok(CodegreeVector { n: self.n, k: self.k, ell, counts })
    }

    /// `sum over ell-sets S of d(S)^2`.
    pub fn codegree_square_sum(&self, ell: u32) -> Result<u128> {
        if ell > self.k {
            return param(format!("ell = {ell} exceeds k = {}", self.k));
        }
        Ok(sorted_subset_counts(&self.edges, ell)
            .map(|(_, d)| (d as u128) * (d as u128))
            .sum())
    }

    /// Codegree squared sum over the (k-1)-sets.
    pub fn co2(&self) -> u128 {
        self.codegree_square_sum(self.k - 1).expect("k - 1 <= k")
    }

    /// `co2(H + e) - co2(H)`.
    pub fn co2_delta(&self, e: VertexSet) -> Result<u128> {
        check_edge(self.n, self.k, e)?;
        if self.contains_edge(e) {
            return param(format!("edge {e} already present"));
        }
        Ok(e.subsets(self.k - 1)
            .map(|s| 2 * self.codegree(s) as u128 + 1)
            .sum())
    }

    /// Relabels vertices by `perm` (`perm[v - 1]` is the new label of `v`).
    pub fn permuted(&self, perm: &[u32]) -> Hypergraph {
        let mut edges: Vec<_> = self.edges.iter().map(|e| e.permute(perm)).collect();
        edges.sort_unstable();
        Hypergraph { n: self.n, k: self.k, edges }
    }

    /// Vertex degrees, index `v - 1`.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n as usize];
        for e in &self.edges {
            for v in e.vertices() {
                deg[v as usize - 1] += 1;
            }
        }
        deg
    }

    /// Serializes to the text format: header `n k`, one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 3 * self.k as usize);
        writeln!(out, "{} {}", self.n, self.k).unwrap();
        for e in &self.edges {
            for (i, v) in e.vertices().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Line numbers in errors are 1-based.
    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut header: Option<(u32, u32)> = None;
        let mut edges: Vec<(usize, VertexSet)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(' ').collect();
            let nums = fields
                .iter()
                .map(|f| {
                    f.parse::<u32>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("expected a non-negative integer, found {f:?}"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            match header {
                None => {
                    if nums.len() != 2 {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "header must be `n k`".into(),
                        });
                    }
                    check_dims(nums[0], nums[1]).map_err(|e| Error::Parse {
                        line: line_no,
                        message: e.to_string(),
                    })?;
                    header = Some((nums[0], nums[1]));
                }
                Some((n, k)) => {
                    let fail = |message: String| Error::Parse { line: line_no, message };
                    if nums.len() != k as usize {
                        return Err(fail(format!("expected {k} vertices, found {}", nums.len())));
                    }
                    if nums.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(fail("vertex labels must be strictly increasing".into()));
                    }
                    if let Some(&v) = nums.iter().find(|&&v| v == 0 || v > n) {
                        return Err(fail(format!("vertex label {v} outside 1..={n}")));
                    }
                    let e = VertexSet::from_vertices(&nums).map_err(|e| fail(e.to_string()))?;
                    edges.push((line_no, e));
                }
            }
        }
        let (n, k) = header.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing `n k` header".into(),
        })?;
        let mut seen = BTreeMap::new();
        for &(line, e) in &edges {
            if let Some(first) = seen.insert(e, line) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge {e} (first on line {first})"),
                });
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: seen.into_keys().collect(),
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Hypergraph> {
        Hypergraph::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Codegrees of every `ell`-subset of `[n]`; zero entries are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodegreeVector {
    n: u32,
    k: u32,
    ell: u32,
    counts: BTreeMap<VertexSet, u64>,
}

impl CodegreeVector {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Number of coordinates, `C(n, ell)`.
    pub fn dimension(&self) -> u128 {
        binom(self.n, self.ell)
    }

    pub fn get(&self, s: VertexSet) -> u64 {
        self.counts.get(&s).copied().unwrap_or(0)
    }

    /// Entry at a colex rank.
    pub fn get_rank(&self, rank: u128) -> Result<u64> {
        Ok(self.get(VertexSet::unrank(rank, self.ell, self.n)?))
    }

    /// Nonzero entries as `(rank, set, codegree)` in rank order.
    pub fn nonzero(&self) -> impl Iterator<Item = (u128, VertexSet, u64)> + '_ {
        self.counts.iter().map(|(s, d)| (s.rank(), *s, *d))
    }

    /// Largest value any coordinate can take, `C(n - ell, k - ell)`.
    pub fn entry_cap(&self) -> u128 {
        binom(self.n - self.ell, self.k - self.ell)
    }

    /// The l1 norm.
    pub fn sum(&self) -> u128 {
        self.counts.values().map(|&d| d as u128).sum()
    }

    /// The squared l2 norm.
    pub fn sum_squares(&self) -> u128 {
        self.counts.values().map(|&d| (d as u128) * (d as u128)).sum()
    }
}

fn check_dims(n: u32, k: u32) -> Result<()> {
    if !(2..=MAX_VERTICES).contains(&n) {
        return param(format!("n = {n} outside 2..=64"));
    }
    if k < 2 || k >= n {
        return param(format!("uniformity k = {k} must satisfy 2 <= k < n = {n}"));
    }
    Ok(())
}

fn check_edge(n: u32, k: u32, e: VertexSet) -> Result<()> {
    if e.len() != k {
        return param(format!("edge {e} does not have {k} vertices"));
    }
    if !e.within(n) {
        return param(format!("edge {e} is not a subset of [{n}]"));
    }
    Ok(())
}

/// Multiset of all `ell`-subsets of the edges, collapsed to `(set, count)` in colex order.
fn sorted_subset_counts(edges: &[VertexSet], ell: u32) -> impl Iterator<Item = (VertexSet, u64)> {
    let mut all: Vec<VertexSet> = edges.iter().flat_map(|e| e.subsets(ell)).collect();
    all.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j] == all[i] {
            j += 1;
        }
        out.push((all[i], (j - i) as u64));
        i = j;
    }
    out.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> VertexSet {
        VertexSet::from_vertices(v).unwrap()
    }

    fn star(n: u32, k: u32) -> Hypergraph {
        Hypergraph::from_filter(n, k, |e| e.contains(1)).unwrap()
    }

    fn fano() -> Hypergraph {
        let lines = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
        Hypergraph::new(7, 3, lines.iter().map(|l| set(l)).collect()).unwrap()
    }

    #[test]
    fn codegree_examples() {
        let s = star(7, 3);
        assert_eq!(s.codegree(set(&[1, 2])), 5);
        assert_eq!(s.codegree(VertexSet::EMPTY), 15);
        let single = Hypergraph::new(7, 3, vec![set(&[1, 2, 3])]).unwrap();
        assert_eq!(single.codegree(set(&[5, 6])), 0);
        let f = fano();
        for pair in VertexSet::full(7).subsets(2) {
            assert_eq!(f.codegree(pair), 1, "pair {pair}");
        }
    }

    #[test]
    fn codegree_vector_examples() {
        let h = Hypergraph::new(5, 3, vec![set(&[1, 2, 3])]).unwrap();
        let v = h.codegree_vector(2).unwrap();
        assert_eq!(v.dimension(), 10);
        let nz: Vec<_> = v.nonzero().map(|(_, s, d)| (s, d)).collect();
        assert_eq!(nz, vec![(set(&[1, 2]), 1), (set(&[1, 3]), 1), (set(&[2, 3]), 1)]);
        assert_eq!(v.get_rank(3).unwrap(), 0);

        let k4 = Hypergraph::from_filter(4, 2, |_| true).unwrap();
        let deg = k4.codegree_vector(1).unwrap();
        for v in 1..=4 {
            assert_eq!(deg.get(VertexSet::singleton(v)), 3);
        }

        let s = star(7, 3).codegree_vector(2).unwrap();
        for pair in VertexSet::full(7).subsets(2) {
            let expect = if pair.contains(1) { 5 } else { 1 };
            assert_eq!(s.get(pair), expect);
        }
        assert!(star(7, 3).codegree_vector(4).is_err());
    }

    #[test]
    fn co2_examples() {
        assert_eq!(Hypergraph::empty(6, 3).unwrap().co2(), 0);
        assert_eq!(Hypergraph::new(4, 3, vec![set(&[1, 2, 3])]).unwrap().co2(), 3);
        assert_eq!(star(7, 3).co2(), 165);
        assert_eq!(fano().co2(), 21);
    }

    #[test]
    fn co2_delta_examples() {
        let empty = Hypergraph::empty(6, 3).unwrap();
        assert_eq!(empty.co2_delta(set(&[2, 4, 6])).unwrap(), 3);
        let h = Hypergraph::new(6, 3, vec![set(&[1, 2, 3])]).unwrap();
        assert_eq!(h.co2_delta(set(&[1, 2, 4])).unwrap(), 5);
        assert_eq!(h.with_edge(set(&[1, 2, 4])).unwrap().co2(), 8);
        assert!(h.co2_delta(set(&[1, 2, 3])).is_err());
        assert!(h.co2_delta(set(&[1, 2])).is_err());

        let full = star(7, 3);
        let minus = full.without_edge(set(&[1, 2, 3]));
        assert_eq!(minus.co2_delta(set(&[1, 2, 3])).unwrap(), 165 - minus.co2());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(Hypergraph::new(5, 3, vec![set(&[1, 2, 3]), set(&[1, 2, 3])]).is_err());
        assert!(Hypergraph::new(5, 3, vec![set(&[1, 2, 6])]).is_err());
        assert!(Hypergraph::new(5, 3, vec![set(&[1, 2])]).is_err());
        assert!(Hypergraph::empty(65, 3).is_err());
        assert!(Hypergraph::empty(5, 5).is_err());
        assert!(Hypergraph::empty(5, 1).is_err());
    }

    #[test]
    fn text_format() {
        let h = fano();
        let text = h.to_text();
        assert!(text.starts_with("7 3\n1 2 3\n"));
        assert_eq!(Hypergraph::from_text(&text).unwrap(), h);

        let with_comments = "# fano\n7 3\n# lines\n1 2 3\n1 4 5\n";
        assert_eq!(Hypergraph::from_text(with_comments).unwrap().len(), 2);
        assert_eq!(Hypergraph::from_text("5 3\n").unwrap().len(), 0);
    }

    #[test]
    fn text_format_errors() {
        let line_of = |t: &str| match Hypergraph::from_text(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("5 3\n1 2 3\n1 2 3\n"), 3);
        assert_eq!(line_of("5 3\n1 3 2\n"), 2);
        assert_eq!(line_of("5 3\n1 2\n"), 2);
        assert_eq!(line_of("5 3\n1 2 9\n"), 2);
        assert_eq!(line_of("5 3\n1  2 3\n"), 2);
        assert_eq!(line_of("5\n"), 1);
        assert_eq!(line_of("# nothing\n"), 1);
        assert_eq!(line_of("5 3\n1 2 x\n"), 2);
    }
}
