//! Independent brute-force ground truth.
//!
//! [`extremal_search`] exhaustively maximizes the number of size-`t`
//! transversals over all `t`-threshold monotone 3-CNFs on `n ≤ 6` variables
//! (with an optional mixed-width mode for `n ≤ 5`). [`verify_construction`]
//! checks a CNF against a claimed transversal number and count.

use crate::cnf::{full_mask, Clause, MonotoneCnf, Subsets};
use rayon::prelude::*;
use std::time::{Duration, Instant};
use thiserror::Error;

/// Cap on retained maximizing formulas.
const ARGMAX_CAP: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("exhaustive search supports n ≤ {1} in this mode, got n = {0}")]
    TooLarge(u32, u32),
    #[error("threshold t = {0} out of range 1..={1}")]
    BadThreshold(u32, u32),
}

/// Result of an exhaustive extremality search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: u32,
    pub t: u32,
    /// Θ(n,t,3): the maximum number of t-transversals.
    pub max_count: u32,
    /// Up to 32 maximizing formulas (deterministic: first in clause-subset
    /// enumeration order).
    pub argmax: Vec<MonotoneCnf>,
    pub elapsed: Duration,
}

/// Exhaustively computes Θ(n,t,3) over 3-uniform monotone CNFs for n ≤ 6.
///
/// 3-uniform formulas suffice for t ≤ n−2; the `t = n−2+i` boundary cases are
/// attained by the clique of all (3−i+1)-sets, which the mixed-width mode
/// confirms for n ≤ 5.
pub fn extremal_search(n: u32, t: u32) -> Result<SearchResult, SearchError> {
    search_over_widths(n, t, &[3], 6)
}

/// Exhaustive search allowing clause widths 1–3 (n ≤ 5: 2^25 clause subsets).
pub fn extremal_search_mixed(n: u32, t: u32) -> Result<SearchResult, SearchError> {
    search_over_widths(n, t, &[1, 2, 3], 5)
}

fn search_over_widths(
    n: u32,
    t: u32,
    widths: &[u32],
    n_cap: u32,
) -> Result<SearchResult, SearchError> {
    if n > n_cap {
        return Err(SearchError::TooLarge(n, n_cap));
    }
    if t == 0 || t > n {
        return Err(SearchError::BadThreshold(t, n));
    }
    let start = Instant::now();

    // Candidate clauses.
    let mut candidates: Vec<u64> = Vec::new();
    for &w in widths {
        if w <= n {
            candidates.extend(Subsets::new(n, w));
        }
    }
    let m = candidates.len();
    assert!(m <= 25, "clause candidate space too large for exhaustive search");

    // Targets: t-subsets (whose hits we count) and (t-1)-subsets (which must
    // each miss some clause for the formula to be t-threshold).
    let t_subsets: Vec<u64> = Subsets::new(n, t).collect();
    let small_subsets: Vec<u64> =
        if t == 1 { vec![0u64] } else { Subsets::new(n, t - 1).collect() };
    assert!(t_subsets.len() <= 64 && small_subsets.len() <= 64);

    // Per-clause bitsets over the target indices.
    let hits: Vec<u64> = candidates
        .iter()
        .map(|&c| bitset_where(&t_subsets, |s| s & c != 0))
        .collect();
    let avoids: Vec<u64> = candidates
        .iter()
        .map(|&c| bitset_where(&small_subsets, |s| s & c == 0))
        .collect();
    let all_small = full_mask(small_subsets.len() as u32);
    let all_t = full_mask(t_subsets.len() as u32);

    // Scan all 2^m clause subsets, keeping the best count and its witnesses.
    let total: u64 = 1u64 << m;
    let chunk: u64 = 1 << 16;
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let per_chunk: Vec<(u32, Vec<u64>)> = chunks
        .par_iter()
        .map(|&ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            let mut best: u32 = 0;
            let mut witnesses: Vec<u64> = Vec::new();
            for sub in lo..hi {
                let mut avoid_union = 0u64;
                let mut hit_inter = all_t;
                let mut bits = sub;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    avoid_union |= avoids[i];
                    hit_inter &= hits[i];
                }
                if avoid_union != all_small {
                    continue; // some (t-1)-subset is already a transversal
                }
                let count = hit_inter.count_ones();
                if count > best {
                    best = count;
                    witnesses.clear();
                }
                if count == best && witnesses.len() < ARGMAX_CAP {
                    witnesses.push(sub);
                }
            }
            (best, witnesses)
        })
        .collect();

    let max_count = per_chunk.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let mut argmax = Vec::new();
    for (best, witnesses) in &per_chunk {
        if *best == max_count {
            for &sub in witnesses {
                if argmax.len() >= ARGMAX_CAP {
                    break;
                }
                let clauses = (0..m)
                    .filter(|i| sub & (1 << i) != 0)
                    .map(|i| Clause(candidates[i]))
                    .collect();
                argmax.push(MonotoneCnf::new(n, clauses).expect("candidate clauses valid"));
            }
        }
    }

    Ok(SearchResult { n, t, max_count, argmax, elapsed: start.elapsed() })
}

fn bitset_where(targets: &[u64], pred: impl Fn(u64) -> bool) -> u64 {
    targets
        .iter()
        .enumerate()
        .filter(|(_, &s)| pred(s))
        .fold(0u64, |acc, (i, _)| acc | (1 << i))
}

/// True iff `cnf` has transversal number `expect_t` and exactly
/// `expect_count` transversals of that size (by brute force).
pub fn verify_construction(cnf: &MonotoneCnf, expect_t: u32, expect_count: u64) -> bool {
    cnf.transversal_number() == expect_t
        && cnf.brute_force_transversals(expect_t).len() as u64 == expect_count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_4_2_is_6() {
        let r = extremal_search(4, 2).unwrap();
        assert_eq!(r.max_count, 6);
        for f in &r.argmax {
            assert!(verify_construction(f, 2, 6));
        }
    }

    #[test]
    fn theta_3_1_is_3() {
        let r = extremal_search(3, 1).unwrap();
        assert_eq!(r.max_count, 3);
    }

    #[test]
    fn mixed_width_agrees_on_small_cases() {
        assert_eq!(extremal_search_mixed(4, 2).unwrap().max_count, 6);
        assert_eq!(extremal_search_mixed(4, 3).unwrap().max_count, 4);
        assert_eq!(extremal_search_mixed(3, 2).unwrap().max_count, 3);
    }

    #[test]
    fn size_limits_are_enforced() {
        assert!(matches!(extremal_search(7, 3), Err(SearchError::TooLarge(7, 6))));
        assert!(matches!(extremal_search_mixed(6, 3), Err(SearchError::TooLarge(6, 5))));
    }
}
