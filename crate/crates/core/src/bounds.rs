//! Exact evaluation of codegree inequalities and classical size bounds.
//!
//! Every value is an exact rational. Bounds whose hypotheses an instance
//! does not meet are still evaluated but come back with `valid == false`,
//! so callers can use them heuristically while certification requires the
//! flag.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binom::binom_big;
use crate::error::{param, Error, Result};
use crate::families::{a_size_closed, hilton_milner_size_closed};
use crate::hypergraph::Hypergraph;
use crate::props;

pub type Rational = BigRational;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parameter(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Decimal rendering with `digits` places, truncated toward zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r.numer() * &scale) / r.denom();
    let neg = r.is_negative();
    let abs = scaled.abs();
    let whole = &abs / &scale;
    let frac = &abs % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>digits$}")
    }
}

/// Right-hand side of the codegree inequality for ℓ-sets:
/// `C(k,ℓ)C(k-1,ℓ)/C(n-1,ℓ)·m² + C(k-1,ℓ-1)C(n-ℓ-1,k-ℓ)·m`.
pub fn bey_rhs(n: u32, k: u32, ell: u32, m: u64) -> Result<Rational> {
    if ell > k || k >= n {
        return param(format!("need 0 <= ell <= k < n, got n={n} k={k} ell={ell}"));
    }
    let (n, k, l) = (n as i64, k as i64, ell as i64);
    let m = int(m as i64);
    let quad = Rational::new(binom_big(k, l) * binom_big(k - 1, l), binom_big(n - 1, l));
    let lin = binom_big(k - 1, l - 1) * binom_big(n - l - 1, k - l);
    Ok(quad * rat(&m * &m) + rat(lin * m))
}

/// Which quantity a named bound caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    EdgeCount,
    Co2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBound {
    pub name: String,
    pub quantity: Quantity,
    pub achieved: BigInt,
    pub bound: Rational,
    pub valid: bool,
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub ell: u32,
    pub edge_count: usize,
    /// Sum of squared ℓ-set codegrees.
    pub lhs: BigInt,
    pub co2: BigInt,
    pub bey_rhs: Rational,
    pub bey_slack: Rational,
    pub named: Vec<NamedBound>,
}

/// Evaluates the ℓ-set codegree inequality on `h` together with every named
/// bound whose structural premise `h` meets.
///
/// # Panics
///
/// If the inequality fails, which can only mean an arithmetic bug.
pub fn check_bey(h: &Hypergraph, ell: u32) -> Result<BoundReport> {
    let (n, k) = (h.n(), h.k());
    let lhs = BigInt::from(h.codegree_square_sum(ell)?);
    let rhs = bey_rhs(n, k, ell, h.len() as u64)?;
    let slack = &rhs - rat(lhs.clone());
    assert!(
        !slack.is_negative(),
        "codegree inequality violated: n={n} k={k} ell={ell} lhs={lhs} rhs={rhs}"
    );
    let co2 = BigInt::from(h.co2());
    let mut named = Vec::new();
    let mut push = |name: &str, quantity: Quantity, bound: Rational, valid: bool| {
        let achieved = match quantity {
            Quantity::EdgeCount => BigInt::from(h.len()),
            Quantity::Co2 => co2.clone(),
        };
        let slack = &bound - rat(achieved.clone());
        named.push(NamedBound {
            name: name.to_string(),
            quantity,
            achieved,
            bound,
            valid,
            slack,
        });
    };
    if !h.is_empty() {
        // largest t for which h is t-intersecting (t <= k - 1)
        let t = (1..k).take_while(|&t| props::is_t_intersecting(h, t)).last();
        if let Some(t) = t {
            let ekr = L1Bound::Ekr { n, k }.evaluate()?;
            push("ekr", Quantity::EdgeCount, ekr.value, ekr.valid);
            push("ekr-l2", Quantity::Co2, rat(ekr_l2_bound(n, k)?), n >= 2 * k);
            if props::common_intersection(h)?.is_empty() {
                let hm = L1Bound::HiltonMilner { n, k }.evaluate()?;
                push("hm", Quantity::EdgeCount, hm.value, hm.valid);
            }
            if t >= 2 {
                let tekr = L1Bound::TEkr { n, k, t }.evaluate()?;
                push("t-ekr", Quantity::EdgeCount, tekr.value, tekr.valid);
                // only known beyond an unquantified threshold
                push("t-star-l2", Quantity::Co2, rat(t_star_l2_bound(n, k, t)?), false);
            }
        }
        let s = props::matching_number(h) as u32;
        let emc = L1Bound::Emc { n, k, s }.evaluate()?;
        push("emc", Quantity::EdgeCount, emc.value, emc.valid);
    }
    Ok(BoundReport {
        n,
        k,
        ell,
        edge_count: h.len(),
        lhs,
        co2,
        bey_rhs: rhs,
        bey_slack: slack,
        named,
    })
}

/// `C(n-1,k-1)(1 + (n-k+1)(k-1))`, the co2 of the full star.
pub fn ekr_l2_bound(n: u32, k: u32) -> Result<BigInt> {
    t_star_l2_bound(n, k, 1)
}

/// `C(n-t,k-t)(t + (n-k+1)(k-t))`, the co2 of the full t-star.
pub fn t_star_l2_bound(n: u32, k: u32, t: u32) -> Result<BigInt> {
    if t == 0 || t > k || k >= n {
        return param(format!("need 1 <= t <= k < n, got n={n} k={k} t={t}"));
    }
    let (n, k, t) = (n as i64, k as i64, t as i64);
    Ok(binom_big(n - t, k - t) * int(t + (n - k + 1) * (k - t)))
}

/// The classical edge-count bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum L1Bound {
    /// Intersecting families: `C(n-1,k-1)` for `n >= 2k`.
    Ekr { n: u32, k: u32 },
    /// t-intersecting families: `C(n-t,k-t)` for `n >= (t+1)(k-t+1)`.
    TEkr { n: u32, k: u32, t: u32 },
    /// Nontrivial intersecting families: `C(n-1,k-1) - C(n-k-1,k-1) + 1` for `n > 2k`.
    HiltonMilner { n: u32, k: u32 },
    /// Nontrivial t-intersecting families: `max(|A(n,k,t)|, |H(n,k,t)|)` for `n > (t+1)(k-t+1)`.
    THiltonMilner { n: u32, k: u32, t: u32 },
    /// Matching number at most `s`: `C(n,k) - C(n-s,k)` for `n >= (2s+1)k - s`.
    Emc { n: u32, k: u32, s: u32 },
    /// Matching number `s`, not coverable by `s` vertices, at
    /// `n = (u+s-1)(k-1) + s + k`:
    /// `C(n,k) - C(n-s,k) - (u-s-1)/u · C(n-s-k,k-1)` for `s, k >= 2`, `u >= s+1`.
    FranklKupavskii { k: u32, s: u32, u: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Value {
    pub name: &'static str,
    pub n: u32,
    pub value: Rational,
    pub valid: bool,
    pub hypothesis: String,
}

impl L1Bound {
    pub const NAMES: [&'static str; 6] = ["ekr", "t-ekr", "hm", "t-hm", "emc", "fk"];

    /// Builds a bound from its registry name; parameters not used by the
    /// bound are ignored.
    pub fn from_name(name: &str, n: u32, k: u32, t: u32, s: u32, u: u32) -> Result<L1Bound> {
        Ok(match name {
            "ekr" => L1Bound::Ekr { n, k },
            "t-ekr" => L1Bound::TEkr { n, k, t },
            "hm" => L1Bound::HiltonMilner { n, k },
            "t-hm" => L1Bound::THiltonMilner { n, k, t },
            "emc" => L1Bound::Emc { n, k, s },
            "fk" => L1Bound::FranklKupavskii { k, s, u },
            _ => return param(format!("unknown bound {name:?}; known: {}", Self::NAMES.join(", "))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            L1Bound::Ekr { .. } => "ekr",
            L1Bound::TEkr { .. } => "t-ekr",
            L1Bound::HiltonMilner { .. } => "hm",
            L1Bound::THiltonMilner { .. } => "t-hm",
            L1Bound::Emc { .. } => "emc",
            L1Bound::FranklKupavskii { .. } => "fk",
        }
    }

    pub fn evaluate(&self) -> Result<L1Value> {
        let need_dims = |n: u32, k: u32| {
            if k < 1 || k >= n {
                param(format!("need 1 <= k < n, got n={n} k={k}"))
            } else {
                Ok(())
            }
        };
        let (n, value, valid, hypothesis) = match *self {
            L1Bound::Ekr { n, k } => {
                need_dims(n, k)?;
                let v = binom_big(n as i64 - 1, k as i64 - 1);
                (n, rat(v), n >= 2 * k, "n >= 2k".to_string())
            }
            L1Bound::TEkr { n, k, t } => {
                need_dims(n, k)?;
                if t == 0 || t > k {
                    return param(format!("need 1 <= t <= k, got t={t}"));
                }
                let v = binom_big((n - t) as i64, (k - t) as i64);
                let valid = k > t && n >= (t + 1) * (k - t + 1);
                (n, rat(v), valid, "k > t and n >= (t+1)(k-t+1)".to_string())
            }
            L1Bound::HiltonMilner { n, k } => {
                need_dims(n, k)?;
                let (ni, ki) = (n as i64, k as i64);
                let v = binom_big(ni - 1, ki - 1) - binom_big(ni - ki - 1, ki - 1) + 1;
                (n, rat(v), n > 2 * k, "n > 2k".to_string())
            }
            L1Bound::THiltonMilner { n, k, t } => {
                need_dims(n, k)?;
                if t == 0 || t >= k {
                    return param(format!("need 1 <= t < k, got t={t}"));
                }
                let v = a_size_closed(n, k, t).max(hilton_milner_size_closed(n, k, t));
                let valid = n > (t + 1) * (k - t + 1);
                (n, rat(v), valid, "n > (t+1)(k-t+1)".to_string())
            }
            L1Bound::Emc { n, k, s } => {
                need_dims(n, k)?;
                if s == 0 {
                    return param("matching bound needs s >= 1");
                }
                let (ni, ki, si) = (n as i64, k as i64, s as i64);
                let v = binom_big(ni, ki) - binom_big(ni - si, ki);
                let valid = ni >= (2 * si + 1) * ki - si;
                (n, rat(v), valid, "n >= (2s+1)k - s".to_string())
            }
            L1Bound::FranklKupavskii { k, s, u } => {
                if u == 0 || k < 1 {
                    return param(format!("need u >= 1 and k >= 1, got k={k} u={u}"));
                }
                let n = (u + s - 1) * (k - 1) + s + k;
                let (ni, ki, si, ui) = (n as i64, k as i64, s as i64, u as i64);
                let base = binom_big(ni, ki) - binom_big(ni - si, ki);
                let cut = Rational::new(int(ui - si - 1), int(ui)) * rat(binom_big(ni - si - ki, ki - 1));
                let valid = s >= 2 && k >= 2 && u > s;
                (n, rat(base) - cut, valid, "s, k >= 2 and u >= s+1".to_string())
            }
        };
        Ok(L1Value {
            name: self.name(),
            n,
            value,
            valid,
            hypothesis,
        })
    }
}

/// `π(π/k + 1 - 1/k)`: the co2 density bound implied by a Turán density `π`.
pub fn sigma_upper(pi: &Rational, k: u32) -> Result<Rational> {
    if !pi.is_positive() || pi > &Rational::one() {
        return param(format!("Turán density must lie in (0, 1], got {pi}"));
    }
    if k < 2 {
        return param(format!("need k >= 2, got {k}"));
    }
    let k = rat(int(k as i64));
    Ok(pi * (pi / &k + Rational::one() - Rational::one() / k))
}

/// `1 - 1/C(t-1,k-1)`, the general Turán density bound for the complete k-graph on t vertices.
pub fn de_caen_pi(t: u32, k: u32) -> Result<Rational> {
    if k < 2 || t <= k {
        return param(format!("need t > k >= 2, got t={t} k={k}"));
    }
    let c = binom_big(t as i64 - 1, k as i64 - 1);
    Ok(Rational::one() - Rational::new(BigInt::one(), c))
}

/// `(1 - 1/C(t-1,k-1))(1 - 1/(k C(t-1,k-1)))`.
pub fn sigma_kt(t: u32, k: u32) -> Result<Rational> {
    if k < 2 || t <= k {
        return param(format!("need t > k >= 2, got t={t} k={k}"));
    }
    let c = rat(binom_big(t as i64 - 1, k as i64 - 1));
    let one = Rational::one();
    let kc = rat(int(k as i64)) * &c;
    Ok((&one - &one / c) * (&one - &one / kc))
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::EdgeCount => "edges",
            Quantity::Co2 => "co2",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, co2_star_closed, FamilySpec};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(int(p), int(q))
    }

    #[test]
    fn bey_rhs_examples() {
        assert_eq!(bey_rhs(3, 2, 1, 3).unwrap(), r(12, 1));
        assert_eq!(bey_rhs(7, 3, 2, 15).unwrap(), r(165, 1));
        assert_eq!(bey_rhs(5, 3, 2, 1).unwrap(), r(9, 2));
        assert!(bey_rhs(5, 3, 4, 1).is_err());
        assert!(bey_rhs(3, 3, 1, 1).is_err());
    }

    #[test]
    fn check_bey_examples() {
        let k4 = build(&FamilySpec::complete(4, 2)).unwrap();
        let rep = check_bey(&k4, 1).unwrap();
        assert_eq!(rep.lhs, int(36));
        assert_eq!(rep.bey_rhs, r(36, 1));
        assert!(rep.bey_slack.is_zero());

        let empty = Hypergraph::empty(6, 3).unwrap();
        let rep = check_bey(&empty, 2).unwrap();
        assert!(rep.lhs.is_zero() && rep.bey_rhs.is_zero());
        assert!(rep.named.is_empty());

        let fano = build(&FamilySpec::fano()).unwrap();
        let rep = check_bey(&fano, 2).unwrap();
        assert_eq!(rep.lhs, int(21));
        assert_eq!(rep.bey_rhs, r(329, 5));
        assert_eq!(rep.bey_slack, r(224, 5));
    }

    #[test]
    fn named_bounds_in_report() {
        let star = build(&FamilySpec::star(7, 3, 1)).unwrap();
        let rep = check_bey(&star, 2).unwrap();
        let ekr = rep.named.iter().find(|b| b.name == "ekr-l2").unwrap();
        assert!(ekr.valid && ekr.slack.is_zero());
        assert!(rep.named.iter().all(|b| !b.valid || !b.slack.is_negative()));
        let hm = build(&FamilySpec::hilton_milner(7, 3, 1)).unwrap();
        let rep = check_bey(&hm, 2).unwrap();
        let hm_bound = rep.named.iter().find(|b| b.name == "hm").unwrap();
        assert!(hm_bound.valid && hm_bound.slack.is_zero());
    }

    #[test]
    fn l2_bound_examples() {
        assert_eq!(ekr_l2_bound(7, 3).unwrap(), int(165));
        assert_eq!(ekr_l2_bound(6, 3).unwrap(), int(90));
        assert_eq!(ekr_l2_bound(5, 3).unwrap(), int(42));
        for k in 2..8 {
            assert_eq!(t_star_l2_bound(12, k, k).unwrap(), int(k as i64));
        }
        assert_eq!(t_star_l2_bound(9, 4, 1).unwrap(), ekr_l2_bound(9, 4).unwrap());
        assert!(t_star_l2_bound(9, 4, 5).is_err());
        for t in 1..=4 {
            let star = co2_star_closed(10, 4, t).unwrap();
            assert_eq!(t_star_l2_bound(10, 4, t).unwrap(), star);
        }
    }

    #[test]
    fn ekr_l2_is_bey_at_ekr_size() {
        for n in 3..=20u32 {
            for k in 2..n {
                let m = binom_big(n as i64 - 1, k as i64 - 1);
                let m: u64 = m.try_into().unwrap();
                assert_eq!(bey_rhs(n, k, k - 1, m).unwrap(), rat(ekr_l2_bound(n, k).unwrap()));
            }
        }
    }

    #[test]
    fn l1_registry_examples() {
        let ekr = L1Bound::Ekr { n: 7, k: 3 }.evaluate().unwrap();
        assert_eq!(ekr.value, r(15, 1));
        assert!(ekr.valid);
        let hm = L1Bound::HiltonMilner { n: 7, k: 3 }.evaluate().unwrap();
        assert_eq!(hm.value, r(13, 1));
        let tekr = L1Bound::TEkr { n: 12, k: 4, t: 2 }.evaluate().unwrap();
        assert_eq!(tekr.value, r(45, 1));
        assert!(tekr.valid);
        let early = L1Bound::TEkr { n: 8, k: 4, t: 2 }.evaluate().unwrap();
        assert!(!early.valid);
        assert!(!L1Bound::Ekr { n: 5, k: 3 }.evaluate().unwrap().valid);
        let emc = L1Bound::Emc { n: 13, k: 3, s: 2 }.evaluate().unwrap();
        assert_eq!(emc.value, r(286 - 165, 1));
        assert!(!L1Bound::Emc { n: 12, k: 3, s: 2 }.evaluate().unwrap().valid);
        assert!(emc.valid);
        let thm = L1Bound::THiltonMilner { n: 7, k: 3, t: 1 }.evaluate().unwrap();
        assert_eq!(thm.value, r(13, 1));
    }

    #[test]
    fn frankl_kupavskii() {
        // k = 2, s = 2, u = 3: n = 4*1 + 2 + 2 = 8
        let fk = L1Bound::FranklKupavskii { k: 2, s: 2, u: 3 }.evaluate().unwrap();
        assert_eq!(fk.n, 8);
        // C(8,2) - C(6,2) - 0 = 13
        assert_eq!(fk.value, r(13, 1));
        let fk = L1Bound::FranklKupavskii { k: 3, s: 2, u: 5 }.evaluate().unwrap();
        // n = 6*2 + 5 = 17; C(17,3) - C(15,3) - (2/5) C(12,2) = 680 - 455 - 132/5
        assert_eq!(fk.n, 17);
        assert_eq!(fk.value, r(225 * 5 - 132, 5));
        assert!(fk.valid);
        assert!(!L1Bound::FranklKupavskii { k: 3, s: 2, u: 2 }.evaluate().unwrap().valid);
        assert!(L1Bound::FranklKupavskii { k: 3, s: 2, u: 0 }.evaluate().is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_upper(&r(3, 4), 3).unwrap(), r(11, 16));
        assert_eq!(sigma_upper(&r(1, 1), 5).unwrap(), r(1, 1));
        assert_eq!(sigma_upper(&r(2, 3), 3).unwrap(), r(16, 27));
        assert!(sigma_upper(&r(0, 1), 3).is_err());
        assert!(sigma_upper(&r(-1, 2), 3).is_err());
        assert_eq!(de_caen_pi(4, 3).unwrap(), r(2, 3));
        assert_eq!(sigma_kt(4, 3).unwrap(), r(16, 27));
        for k in 2..10 {
            assert_eq!(de_caen_pi(k + 1, k).unwrap(), r(k as i64 - 1, k as i64));
        }
        assert!(de_caen_pi(3, 3).is_err());
        assert!(sigma_kt(3, 3).is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/4").unwrap(), r(3, 4));
        assert_eq!(parse_rational("6/8").unwrap().to_string(), "3/4");
        assert_eq!(parse_rational("5").unwrap().to_string(), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(to_decimal(&r(2, 3), 4), "0.6666");
        assert_eq!(to_decimal(&r(-7, 2), 2), "-3.50");
        assert_eq!(to_decimal(&r(5, 1), 0), "5");
    }
}
