//! Binomial coefficients.
//!
//! Two Pascal tables: a fixed `u128` table for every `n <= 128` (enough for
//! all subset ranks over at most 64 vertices), and a memoized arbitrary
//! precision table used by the bound evaluators.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub const SMALL_LIMIT: u32 = 128;

fn small_table() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(SMALL_LIMIT as usize + 1);
        for n in 0..=SMALL_LIMIT as usize {
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

/// `C(n, k)` for `n <= 128`, zero when `k > n`.
pub fn binom(n: u32, k: u32) -> u128 {
    assert!(n <= SMALL_LIMIT, "binom: n = {n} exceeds the u128 table");
    if k > n {
        0
    } else {
        small_table()[n as usize][k as usize]
    }
}

/// `C(n, k)` extended to signed arguments: zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binom_i(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binom(n as u32, k as u32)
    }
}

fn big_table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    static TABLE: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

/// Arbitrary precision `C(n, k)`; zero for negative arguments or `k > n`.
pub fn binom_big(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    {
        let rows = big_table().read().expect("binomial table poisoned");
        if n < rows.len() {
            return rows[n][k].clone();
        }
    }
    let mut rows = big_table().write().expect("binomial table poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("table starts non-empty");
        let len = prev.len() + 1;
        let mut row = Vec::with_capacity(len);
        row.push(BigInt::one());
        for j in 1..len - 1 {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows[n][k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(7, 3), 35);
        assert_eq!(binom(6, 2), 15);
        assert_eq!(binom(5, 7), 0);
        assert_eq!(binom(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binom_i(3, -1), 0);
    }

    #[test]
    fn big_matches_small() {
        for n in 0..=128i64 {
            for k in 0..=n {
                assert_eq!(binom_big(n, k), BigInt::from(binom(n as u32, k as u32)));
            }
        }
        assert_eq!(binom_big(4, 5), BigInt::zero());
        assert!(binom_big(300, 150) > BigInt::from(u128::MAX));
    }
}
