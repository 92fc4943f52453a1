//! The named extremal families and closed forms for their codegree squared sums.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::binom::binom_big;
use crate::error::{param, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Lines of the Fano plane on `[7]`.
pub const FANO_LINES: [[u32; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 5, 6],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Empty,
    Complete,
    /// All k-sets containing `[t]`.
    Star { t: u32 },
    /// All k-sets meeting `[s]`.
    B { s: u32 },
    /// `{F : [t] ⊆ F, F ∩ {t+1..k+1} ≠ ∅} ∪ {[k+1] \ {i} : i ∈ [t]}`.
    HiltonMilner { t: u32 },
    /// All k-sets with `|F ∩ [t+2]| >= t+1`.
    A { t: u32 },
    Fano,
    FromFile(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: u32,
    pub k: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: u32, k: u32) -> Self {
        FamilySpec { kind, n, k }
    }

    pub fn star(n: u32, k: u32, t: u32) -> Self {
        Self::new(FamilyKind::Star { t }, n, k)
    }

    pub fn b(n: u32, k: u32, s: u32) -> Self {
        Self::new(FamilyKind::B { s }, n, k)
    }

    pub fn hilton_milner(n: u32, k: u32, t: u32) -> Self {
        Self::new(FamilyKind::HiltonMilner { t }, n, k)
    }

    pub fn a(n: u32, k: u32, t: u32) -> Self {
        Self::new(FamilyKind::A { t }, n, k)
    }

    pub fn fano() -> Self {
        Self::new(FamilyKind::Fano, 7, 3)
    }

    pub fn complete(n: u32, k: u32) -> Self {
        Self::new(FamilyKind::Complete, n, k)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        if !matches!(self.kind, FamilyKind::FromFile(_)) && (k < 2 || k >= n || n > 64) {
            return param(format!("need 2 <= k < n <= 64, got n = {n}, k = {k}"));
        }
        match self.kind {
            FamilyKind::Star { t } if !(1..=k).contains(&t) => {
                param(format!("star needs 1 <= t <= k, got t = {t}"))
            }
            FamilyKind::B { s } if !(1..=n).contains(&s) => {
                param(format!("B needs 1 <= s <= n, got s = {s}"))
            }
            FamilyKind::HiltonMilner { t } if !(1..k).contains(&t) => {
                param(format!("Hilton-Milner family needs 1 <= t < k, got t = {t}"))
            }
            FamilyKind::A { t } if !(1..k).contains(&t) || n < t + 2 => {
                param(format!("A family needs 1 <= t <= k-1 and n >= t+2, got t = {t}"))
            }
            FamilyKind::Fano if (n, k) != (7, 3) => param("the Fano plane has n = 7, k = 3"),
            _ => Ok(()),
        }
    }
}

pub fn build(spec: &FamilySpec) -> Result<Hypergraph> {
    spec.validate()?;
    let (n, k) = (spec.n, spec.k);
    match &spec.kind {
        FamilyKind::Empty => Hypergraph::empty(n, k),
        FamilyKind::Complete => Hypergraph::from_filter(n, k, |_| true),
        FamilyKind::Star { t } => {
            let core = VertexSet::full(*t);
            Hypergraph::from_filter(n, k, |e| core.is_subset(e))
        }
        FamilyKind::B { s } => {
            let hit = VertexSet::full(*s);
            Hypergraph::from_filter(n, k, |e| e.meets(hit))
        }
        FamilyKind::HiltonMilner { t } => {
            let core = VertexSet::full(*t);
            let tail = VertexSet::interval(t + 1, k + 1);
            let top = VertexSet::full(k + 1);
            Hypergraph::from_filter(n, k, |e| {
                (core.is_subset(e) && e.meets(tail))
                    || (e.is_subset(top) && !core.is_subset(e))
            })
        }
        FamilyKind::A { t } => {
            let head = VertexSet::full(t + 2);
            Hypergraph::from_filter(n, k, |e| e.intersection_len(head) > *t)
        }
        FamilyKind::Fano => {
            let edges = FANO_LINES
                .iter()
                .map(|l| VertexSet::from_vertices(l))
                .collect::<Result<Vec<_>>>()?;
            Hypergraph::new(7, 3, edges)
        }
        FamilyKind::FromFile(path) => {
            let h = Hypergraph::read(path)?;
            if (h.n(), h.k()) != (n, k) && (n, k) != (0, 0) {
                return param(format!(
                    "{} holds n = {}, k = {} but n = {n}, k = {k} was requested",
                    path.display(),
                    h.n(),
                    h.k()
                ));
            }
            Ok(h)
        }
    }
}

/// Closed form `C(n-t, k-t) (t + (n-k+1)(k-t))` for the t-star.
pub fn co2_star_closed(n: u32, k: u32, t: u32) -> Result<BigInt> {
    if !(1..=k).contains(&t) || k >= n {
        return param(format!("star closed form needs 1 <= t <= k < n, got n={n} k={k} t={t}"));
    }
    let (n, k, t) = (n as i64, k as i64, t as i64);
    Ok(binom_big(n - t, k - t) * BigInt::from(t + (n - k + 1) * (k - t)))
}

/// Closed form `s^2 C(n-s, k-1) + (n-k+1)^2 (C(n, k-1) - C(n-s, k-1))` for `B(n, k, s)`.
pub fn co2_b_closed(n: u32, k: u32, s: u32) -> Result<BigInt> {
    if !(1..=n).contains(&s) || k >= n || k < 1 {
        return param(format!("B closed form needs 1 <= s <= n and k < n, got n={n} k={k} s={s}"));
    }
    let (n, k, s) = (n as i64, k as i64, s as i64);
    let avoid = binom_big(n - s, k - 1);
    let span = BigInt::from((n - k + 1) * (n - k + 1));
    Ok(BigInt::from(s * s) * &avoid + span * (binom_big(n, k - 1) - avoid))
}

/// Exact `|H(n, k, t)| = C(n-t, k-t) - C(n-k-1, k-t) + t`.
pub fn hilton_milner_size_closed(n: u32, k: u32, t: u32) -> BigInt {
    let (n, k, t) = (n as i64, k as i64, t as i64);
    binom_big(n - t, k - t) - binom_big(n - k - 1, k - t) + BigInt::from(t)
}

/// Exact `|A(n, k, t)| = (t+2) C(n-t-2, k-t-1) + C(n-t-2, k-t-2)`.
pub fn a_size_closed(n: u32, k: u32, t: u32) -> BigInt {
    let (n, k, t) = (n as i64, k as i64, t as i64);
    BigInt::from(t + 2) * binom_big(n - t - 2, k - t - 1) + binom_big(n - t - 2, k - t - 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySize {
    pub size: usize,
    /// For `A` and `H`: size over the main term `(t+2) C(n, k-t-1)`,
    /// respectively `(k-t+1) C(n, k-t-1)`.
    pub main_term_ratio: Option<BigRational>,
}

/// Size by explicit construction.
pub fn family_size(spec: &FamilySpec) -> Result<FamilySize> {
    let size = build(spec)?.len();
    let (n, k) = (spec.n as i64, spec.k as i64);
    let main_term = match spec.kind {
        FamilyKind::A { t } => Some(BigInt::from(t + 2) * binom_big(n, k - t as i64 - 1)),
        FamilyKind::HiltonMilner { t } => {
            Some(BigInt::from(k - t as i64 + 1) * binom_big(n, k - t as i64 - 1))
        }
        _ => None,
    };
    Ok(FamilySize {
        size,
        main_term_ratio: main_term.map(|m| BigRational::new(BigInt::from(size), m)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> VertexSet {
        VertexSet::from_vertices(v).unwrap()
    }

    #[test]
    fn sizes_by_construction() {
        assert_eq!(build(&FamilySpec::star(7, 3, 1)).unwrap().len(), 15);
        assert_eq!(build(&FamilySpec::b(7, 3, 2)).unwrap().len(), 25);
        assert_eq!(build(&FamilySpec::hilton_milner(7, 3, 1)).unwrap().len(), 13);
        assert_eq!(family_size(&FamilySpec::a(7, 3, 1)).unwrap().size, 13);
        assert_eq!(family_size(&FamilySpec::fano()).unwrap().size, 7);
        assert_eq!(build(&FamilySpec::complete(6, 3)).unwrap().len(), 20);
        assert!(build(&FamilySpec::new(FamilyKind::Empty, 6, 3)).unwrap().is_empty());
    }

    #[test]
    fn hilton_milner_shape() {
        let h = build(&FamilySpec::hilton_milner(8, 4, 1)).unwrap();
        assert!(h.contains_edge(set(&[2, 3, 4, 5])));
        assert!(h.contains_edge(set(&[1, 2, 6, 7])));
        assert!(!h.contains_edge(set(&[1, 6, 7, 8])));
        let h2 = build(&FamilySpec::hilton_milner(9, 4, 2)).unwrap();
        assert!(h2.contains_edge(set(&[2, 3, 4, 5])));
        assert!(h2.contains_edge(set(&[1, 3, 4, 5])));
        assert!(h2.contains_edge(set(&[1, 2, 3, 4])));
        assert!(!h2.contains_edge(set(&[1, 2, 6, 7])));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(co2_star_closed(7, 3, 1).unwrap(), BigInt::from(165));
        assert_eq!(co2_star_closed(7, 3, 3).unwrap(), BigInt::from(3));
        assert_eq!(co2_star_closed(11, 5, 5).unwrap(), BigInt::from(5));
        assert_eq!(co2_b_closed(7, 3, 2).unwrap(), BigInt::from(315));
        // s = n is the complete hypergraph
        assert_eq!(co2_b_closed(7, 3, 7).unwrap(), BigInt::from(25 * 21));
        assert!(co2_star_closed(7, 3, 4).is_err());
        assert!(co2_star_closed(7, 3, 0).is_err());
        assert!(co2_b_closed(7, 3, 8).is_err());
    }

    #[test]
    fn b_with_one_is_the_star() {
        for n in 3..=16 {
            for k in 2..n {
                assert_eq!(co2_b_closed(n, k, 1).unwrap(), co2_star_closed(n, k, 1).unwrap());
            }
        }
    }

    #[test]
    fn closed_sizes_match_construction() {
        for n in 4..=12 {
            for k in 2..n {
                for t in 1..k {
                    let hm = build(&FamilySpec::hilton_milner(n, k, t)).unwrap().len();
                    assert_eq!(BigInt::from(hm), hilton_milner_size_closed(n, k, t), "H({n},{k},{t})");
                    if n >= t + 2 {
                        let a = build(&FamilySpec::a(n, k, t)).unwrap().len();
                        assert_eq!(BigInt::from(a), a_size_closed(n, k, t), "A({n},{k},{t})");
                    }
                }
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(build(&FamilySpec::star(7, 3, 0)).is_err());
        assert!(build(&FamilySpec::b(7, 3, 8)).is_err());
        assert!(build(&FamilySpec::hilton_milner(7, 3, 3)).is_err());
        assert!(build(&FamilySpec::a(7, 3, 3)).is_err());
        assert!(build(&FamilySpec::new(FamilyKind::Fano, 8, 3)).is_err());
    }

    #[test]
    fn main_term_ratio_reported() {
        let a = family_size(&FamilySpec::a(7, 3, 1)).unwrap();
        // 13 / (3 * C(7,1))
        assert_eq!(a.main_term_ratio, Some(BigRational::new(13.into(), 21.into())));
        assert!(family_size(&FamilySpec::star(7, 3, 1)).unwrap().main_term_ratio.is_none());
    }
}
