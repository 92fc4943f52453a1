use std::fmt;
use std::str::FromStr;

use crate::binom::binom;
use crate::bounds::L1Bound;
use crate::error::{param, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::props::{self, PatternSpec};
use crate::vertex_set::VertexSet;

/// Downward-closed family properties the search can maximise over.
///
/// Text form: `t-intersecting:T`, `dwise:D:T`, `matching:S`,
/// `free:KIND:LEN`, joined with `&`; `none` is the empty conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    TIntersecting(u32),
    DWiseTIntersecting { d: u32, t: u32 },
    MatchingAtMost(u32),
    PatternFree(PatternSpec),
    Conjunction(Vec<Constraint>),
}

impl Constraint {
    pub fn intersecting() -> Self {
        Constraint::TIntersecting(1)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Constraint::TIntersecting(t) if *t == 0 => param("t-intersecting needs t >= 1"),
            Constraint::DWiseTIntersecting { d, t } if *d < 2 || *t == 0 => {
                param(format!("d-wise t-intersecting needs d >= 2 and t >= 1, got d={d} t={t}"))
            }
            Constraint::Conjunction(parts) => parts.iter().try_for_each(Constraint::validate),
            _ => Ok(()),
        }
    }

    /// Whether `h` satisfies the property.
    pub fn admits(&self, h: &Hypergraph) -> Result<bool> {
        Ok(match self {
            Constraint::TIntersecting(t) => props::is_t_intersecting(h, *t),
            Constraint::DWiseTIntersecting { d, t } => props::is_d_wise_t_intersecting(h, *d, *t)?,
            Constraint::MatchingAtMost(s) => props::matching_number(h) <= *s as usize,
            // a pattern that cannot fit on n vertices is vacuously avoided
            Constraint::PatternFree(p) => p.check_feasible(h.n(), h.k()).is_err() || props::is_pattern_free(h, *p)?,
            Constraint::Conjunction(parts) => {
                for c in parts {
                    if !c.admits(h)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Whether `family + e` satisfies the property, given that `family`
    /// does and `e` is not in it.
    pub fn admits_extension(&self, family: &[VertexSet], k: u32, e: VertexSet) -> bool {
        match self {
            Constraint::TIntersecting(t) => family.iter().all(|f| f.intersection_len(e) >= *t),
            Constraint::DWiseTIntersecting { d, t } => props::dwise_extension_ok(family, e, *d, *t),
            Constraint::MatchingAtMost(s) => {
                if *s == 0 {
                    return false;
                }
                let disjoint: Vec<VertexSet> = family.iter().copied().filter(|f| !f.meets(e)).collect();
                !props::has_matching_of_size(&disjoint, k, *s as usize)
            }
            Constraint::PatternFree(p) => !props::contains_pattern_through(family, e, *p),
            Constraint::Conjunction(parts) => parts.iter().all(|c| c.admits_extension(family, k, e)),
        }
    }

    /// Decided by a symmetric relation on pairs of edges (single edges always allowed).
    pub fn is_pairwise(&self) -> bool {
        match self {
            Constraint::TIntersecting(_) => true,
            Constraint::DWiseTIntersecting { d, .. } => *d == 2,
            Constraint::MatchingAtMost(s) => *s == 1,
            Constraint::PatternFree(_) => false,
            Constraint::Conjunction(parts) => parts.iter().all(Constraint::is_pairwise),
        }
    }

    /// The pair relation; meaningful only when `is_pairwise`.
    pub fn pair_ok(&self, a: VertexSet, b: VertexSet) -> bool {
        match self {
            Constraint::TIntersecting(t) | Constraint::DWiseTIntersecting { t, .. } => a.intersection_len(b) >= *t,
            Constraint::MatchingAtMost(_) => a.meets(b),
            Constraint::PatternFree(_) => true,
            Constraint::Conjunction(parts) => parts.iter().all(|c| c.pair_ok(a, b)),
        }
    }

    /// Largest t with the family forced to be t-intersecting, if any.
    pub fn forced_intersection(&self) -> Option<u32> {
        match self {
            Constraint::TIntersecting(t) | Constraint::DWiseTIntersecting { t, .. } => Some(*t),
            Constraint::MatchingAtMost(1) => Some(1),
            Constraint::MatchingAtMost(_) | Constraint::PatternFree(_) => None,
            Constraint::Conjunction(parts) => parts.iter().filter_map(Constraint::forced_intersection).max(),
        }
    }

    /// A proven cap on the number of edges, when one applies at `(n, k)`.
    pub fn edge_cap(&self, n: u32, k: u32) -> Option<u128> {
        let valid = |b: L1Bound| {
            b.evaluate()
                .ok()
                .filter(|v| v.valid)
                .map(|v| (v.value.numer() / v.value.denom()).try_into().expect("fits in u128"))
        };
        match self {
            Constraint::TIntersecting(t) | Constraint::DWiseTIntersecting { t, .. } => {
                if *t >= k {
                    Some(1)
                } else if *t == 1 {
                    valid(L1Bound::Ekr { n, k })
                } else {
                    valid(L1Bound::TEkr { n, k, t: *t })
                }
            }
            Constraint::MatchingAtMost(0) => Some(0),
            Constraint::MatchingAtMost(1) => valid(L1Bound::Ekr { n, k }),
            Constraint::MatchingAtMost(s) => {
                if *s >= n / k {
                    Some(binom(n, k))
                } else {
                    valid(L1Bound::Emc { n, k, s: *s })
                }
            }
            Constraint::PatternFree(_) => None,
            Constraint::Conjunction(parts) => parts.iter().filter_map(|c| c.edge_cap(n, k)).min(),
        }
    }

    /// Cap for families that are t-intersecting but not inside a t-star.
    pub(crate) fn nontrivial_edge_cap(&self, n: u32, k: u32, t: u32) -> Option<u128> {
        if self.forced_intersection() != Some(t) || t >= k {
            return None;
        }
        let bound = if t == 1 {
            L1Bound::HiltonMilner { n, k }
        } else {
            L1Bound::THiltonMilner { n, k, t }
        };
        let v = bound.evaluate().ok().filter(|v| v.valid)?;
        Some((v.value.numer() / v.value.denom()).try_into().expect("fits in u128"))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::TIntersecting(t) => write!(f, "t-intersecting:{t}"),
            Constraint::DWiseTIntersecting { d, t } => write!(f, "dwise:{d}:{t}"),
            Constraint::MatchingAtMost(s) => write!(f, "matching:{s}"),
            Constraint::PatternFree(p) => write!(f, "free:{p}"),
            Constraint::Conjunction(parts) if parts.is_empty() => f.write_str("none"),
            Constraint::Conjunction(parts) => {
                for (i, c) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("&")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "none" {
            return Ok(Constraint::Conjunction(Vec::new()));
        }
        if s.contains('&') {
            let parts = s.split('&').map(str::parse).collect::<Result<Vec<_>>>()?;
            return Ok(Constraint::Conjunction(parts));
        }
        let num = |x: &str| {
            x.parse::<u32>()
                .map_err(|_| Error::Parameter(format!("bad number {x:?} in constraint {s:?}")))
        };
        let fields: Vec<&str> = s.split(':').collect();
        match fields.as_slice() {
            ["intersecting"] => Ok(Constraint::TIntersecting(1)),
            ["t-intersecting", t] => Ok(Constraint::TIntersecting(num(t)?)),
            ["dwise", d, t] => Ok(Constraint::DWiseTIntersecting { d: num(d)?, t: num(t)? }),
            ["matching", m] => Ok(Constraint::MatchingAtMost(num(m)?)),
            ["free", kind, len] => Ok(Constraint::PatternFree(format!("{kind}:{len}").parse()?)),
            _ => param(format!(
                "unknown constraint {s:?}; expected intersecting, t-intersecting:T, dwise:D:T, matching:S, free:KIND:LEN or none"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};
    use crate::props::PatternKind;

    #[test]
    fn text_round_trip() {
        for s in [
            "t-intersecting:2",
            "dwise:3:1",
            "matching:2",
            "free:linear-cycle:3",
            "t-intersecting:1&free:minimal-path:3",
            "none",
        ] {
            let c: Constraint = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("intersecting".parse::<Constraint>().unwrap(), Constraint::intersecting());
        assert!("matching:x".parse::<Constraint>().is_err());
        assert!("free:loop:3".parse::<Constraint>().is_err());
    }

    #[test]
    fn extension_agrees_with_whole_check() {
        let p = PatternSpec::new(PatternKind::MinimalCycle, 3).unwrap();
        let constraints = [
            Constraint::TIntersecting(1),
            Constraint::TIntersecting(2),
            Constraint::DWiseTIntersecting { d: 3, t: 1 },
            Constraint::MatchingAtMost(1),
            Constraint::MatchingAtMost(2),
            Constraint::PatternFree(p),
            Constraint::Conjunction(vec![Constraint::MatchingAtMost(2), Constraint::PatternFree(p)]),
        ];
        let universe: Vec<VertexSet> = VertexSet::full(6).subsets(3).collect();
        for c in &constraints {
            // grow a family greedily and compare each step with the full check
            for start in 0..universe.len() {
                let mut family: Vec<VertexSet> = Vec::new();
                for i in 0..universe.len() {
                    let e = universe[(start + i * 7) % universe.len()];
                    if family.contains(&e) {
                        continue;
                    }
                    let mut with = family.clone();
                    with.push(e);
                    let whole = c.admits(&Hypergraph::new(6, 3, with).unwrap()).unwrap();
                    assert_eq!(c.admits_extension(&family, 3, e), whole, "{c} {family:?} + {e}");
                    if whole {
                        family.push(e);
                    }
                }
            }
        }
    }

    #[test]
    fn pairwise_relation() {
        let c = Constraint::MatchingAtMost(1);
        assert!(c.is_pairwise());
        assert!(!Constraint::MatchingAtMost(2).is_pairwise());
        let star = build(&FamilySpec::star(7, 3, 1)).unwrap();
        assert!(c.admits(&star).unwrap());
        let e = star.edges();
        assert!(e.iter().all(|a| e.iter().all(|b| c.pair_ok(*a, *b))));
    }

    #[test]
    fn caps() {
        assert_eq!(Constraint::intersecting().edge_cap(7, 3), Some(15));
        assert_eq!(Constraint::intersecting().edge_cap(5, 3), None);
        assert_eq!(Constraint::TIntersecting(2).edge_cap(12, 4), Some(45));
        assert_eq!(Constraint::MatchingAtMost(2).edge_cap(13, 3), Some(121));
        assert_eq!(Constraint::MatchingAtMost(3).edge_cap(8, 3), Some(56));
        assert_eq!(Constraint::MatchingAtMost(0).edge_cap(8, 3), Some(0));
        assert_eq!(Constraint::intersecting().nontrivial_edge_cap(7, 3, 1), Some(13));
        assert_eq!(Constraint::MatchingAtMost(2).nontrivial_edge_cap(7, 3, 1), None);
    }
}
