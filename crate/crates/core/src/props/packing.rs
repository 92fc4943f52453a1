use super::{Witness, WitnessRole};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Matching number ν: the most pairwise disjoint edges.
pub fn matching_number(h: &Hypergraph) -> usize {
    matching(h).edges.len()
}

/// A maximum matching, as edge indices in increasing order.
pub fn matching(h: &Hypergraph) -> Witness {
    let edges = h.edges();
    let mut packer = Packer::new(edges, h.k(), usize::MAX);
    packer.best = greedy_packing(edges);
    let all: Vec<usize> = (0..edges.len()).collect();
    packer.run(&all, &mut Vec::new());
    let mut best = packer.best;
    best.sort_unstable();
    Witness {
        role: WitnessRole::Matching,
        edges: best,
    }
}

/// Whether `edges` contains `size` pairwise disjoint members.
pub(crate) fn has_matching_of_size(edges: &[VertexSet], k: u32, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if edges.len() < size {
        return false;
    }
    let greedy = greedy_packing(edges);
    if greedy.len() >= size {
        return true;
    }
    let mut packer = Packer::new(edges, k, size);
    packer.best = greedy;
    let all: Vec<usize> = (0..edges.len()).collect();
    packer.run(&all, &mut Vec::new());
    packer.best.len() >= size
}

fn greedy_packing(edges: &[VertexSet]) -> Vec<usize> {
    let mut used = VertexSet::EMPTY;
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if !e.meets(used) {
            used = used.union(*e);
            out.push(i);
        }
    }
    out
}

struct Packer<'a> {
    edges: &'a [VertexSet],
    k: u32,
    target: usize,
    best: Vec<usize>,
}

impl<'a> Packer<'a> {
    fn new(edges: &'a [VertexSet], k: u32, target: usize) -> Self {
        Packer { edges, k, target, best: Vec::new() }
    }

    fn done(&self) -> bool {
        self.best.len() >= self.target
    }

    fn run(&mut self, avail: &[usize], chosen: &mut Vec<usize>) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if avail.is_empty() || self.done() {
            return;
        }
        let span = avail
            .iter()
            .fold(VertexSet::EMPTY, |acc, &i| acc.union(self.edges[i]));
        let room = avail.len().min((span.len() / self.k) as usize);
        if chosen.len() + room <= self.best.len() {
            return;
        }
        let first = avail[0];
        let e = self.edges[first];
        let rest: Vec<usize> = avail[1..]
            .iter()
            .copied()
            .filter(|&i| !self.edges[i].meets(e))
            .collect();
        chosen.push(first);
        self.run(&rest, chosen);
        chosen.pop();
        if !self.done() {
            self.run(&avail[1..], chosen);
        }
    }
}

/// Covering number τ: the fewest vertices meeting every edge.
pub fn covering_number(h: &Hypergraph) -> usize {
    covering(h).len() as usize
}

/// A minimum vertex cover.
pub fn covering(h: &Hypergraph) -> VertexSet {
    let edges = h.edges();
    let greedy = greedy_cover(edges, h.n());
    for size in 0..greedy.len() {
        if let Some(cover) = cover_within(edges, VertexSet::EMPTY, size) {
            return cover;
        }
    }
    greedy
}

fn greedy_cover(edges: &[VertexSet], n: u32) -> VertexSet {
    let mut cover = VertexSet::EMPTY;
    loop {
        let open: Vec<VertexSet> = edges.iter().copied().filter(|e| !e.meets(cover)).collect();
        if open.is_empty() {
            return cover;
        }
        let best = (1..=n)
            .max_by_key(|&v| (open.iter().filter(|e| e.contains(v)).count(), std::cmp::Reverse(v)))
            .expect("n >= 1");
        cover = cover.with(best);
    }
}

// Branches on the vertices of the first uncovered edge.
fn cover_within(edges: &[VertexSet], chosen: VertexSet, budget: u32) -> Option<VertexSet> {
    let Some(open) = edges.iter().find(|e| !e.meets(chosen)) else {
        return Some(chosen);
    };
    if budget == 0 {
        return None;
    }
    open.vertices()
        .find_map(|v| cover_within(edges, chosen.with(v), budget - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn set(v: &[u32]) -> VertexSet {
        VertexSet::from_vertices(v).unwrap()
    }

    // ν by trying every subfamily
    fn brute_matching(edges: &[VertexSet]) -> usize {
        (0u32..1 << edges.len())
            .filter(|mask| {
                let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).collect();
                chosen
                    .iter()
                    .enumerate()
                    .all(|(a, &i)| chosen[a + 1..].iter().all(|&j| !edges[i].meets(edges[j])))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    // τ by trying every vertex subset
    fn brute_cover(edges: &[VertexSet], n: u32) -> usize {
        (0u64..1 << n)
            .map(VertexSet::from_bits)
            .filter(|c| edges.iter().all(|e| e.meets(*c)))
            .map(|c| c.len() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching_number(&build(&FamilySpec::star(7, 3, 1)).unwrap()), 1);
        let two = Hypergraph::new(6, 3, vec![set(&[1, 2, 3]), set(&[4, 5, 6])]).unwrap();
        assert_eq!(matching_number(&two), 2);
        assert_eq!(matching(&two).edges, vec![0, 1]);
        assert_eq!(matching_number(&build(&FamilySpec::b(12, 3, 2)).unwrap()), 2);
        assert_eq!(matching_number(&Hypergraph::empty(6, 3).unwrap()), 0);
        assert_eq!(matching_number(&build(&FamilySpec::complete(9, 3)).unwrap()), 3);
    }

    #[test]
    fn covering_examples() {
        assert_eq!(covering_number(&build(&FamilySpec::star(7, 3, 1)).unwrap()), 1);
        assert_eq!(covering(&build(&FamilySpec::star(7, 3, 1)).unwrap()), set(&[1]));
        let fano = build(&FamilySpec::fano()).unwrap();
        assert_eq!(covering_number(&fano), 3);
        assert_eq!(brute_cover(fano.edges(), 7), 3);
        assert_eq!(covering_number(&build(&FamilySpec::b(12, 3, 2)).unwrap()), 2);
        assert_eq!(covering_number(&Hypergraph::empty(6, 3).unwrap()), 0);
    }

    #[test]
    fn b_matching_number_is_min_of_s_and_floor() {
        for n in 4..=10 {
            for k in 2..=3.min(n - 1) {
                for s in 1..=n {
                    let b = build(&FamilySpec::b(n, k, s)).unwrap();
                    assert_eq!(matching_number(&b) as u32, s.min(n / k), "B({n},{k},{s})");
                }
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_families() {
        let universe: Vec<VertexSet> = VertexSet::full(6).subsets(3).collect();
        // deterministic spread of subfamilies
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..300 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let edges: Vec<VertexSet> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| state >> (i % 64) & 1 == 1 && (state >> ((i * 7) % 64)) & 1 == 1)
                .map(|(_, e)| *e)
                .take(12)
                .collect();
            let h = Hypergraph::new(6, 3, edges).unwrap();
            let nu = matching_number(&h);
            let tau = covering_number(&h);
            assert_eq!(nu, brute_matching(h.edges()));
            assert_eq!(tau, brute_cover(h.edges(), 6));
            assert!(nu <= tau && tau <= 3 * nu);
            assert!(has_matching_of_size(h.edges(), 3, nu));
            assert!(!has_matching_of_size(h.edges(), 3, nu + 1));
        }
    }
}
