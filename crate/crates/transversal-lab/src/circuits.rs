//! Monotone depth-3 circuits for threshold functions.
//!
//! A Σ3 circuit here is an OR of depth-2 monotone sub-circuits, each given as
//! a t-threshold monotone CNF (an AND of ORs).  A t-threshold CNF accepts no
//! input of weight below t, and by monotonicity any input containing an
//! accepted weight-t set is accepted — so the OR computes the threshold
//! function exactly as soon as the union of accepted weight-t sets over all
//! sub-circuits is all C(n,t) of them.
//!
//! The builder exploits the symmetry of the threshold function: every
//! variable permutation of a t-threshold seed is again t-threshold, so a
//! greedy set cover by permuted seed copies suffices, and its size is at most
//! poly(n)·C(n,t)/Θ(n,t,3) while any such circuit needs at least
//! C(n,t)/Θ(n,t,3) sub-circuits.

use crate::classify::FormulaType;
use crate::cnf::{full_mask, Clause, MonotoneCnf, Subsets, Var};
use crate::constructions::FamilySpec;
use crate::oracle::extremal_search;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

const RNG_SEED: u64 = 0x5EED;
const RESTARTS: u32 = 8;
const RANDOM_CANDIDATES_PER_STEP: usize = 32;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("seed formula has transversal number {actual}, expected {expected}")]
    SeedMismatch { expected: u32, actual: u32 },
    #[error("no Θ(n,t,3) value is available for n={n}, t={t}")]
    UnknownTheta { n: u32, t: u32 },
    #[error("exhaustive verification supports n <= 20, got n = {0}")]
    TooLarge(u32),
}

/// An OR of depth-2 monotone sub-circuits computing the threshold function
/// T_{n,t} (1 iff at least t of the n inputs are 1).
#[derive(Debug, Clone)]
pub struct Sigma3Circuit {
    pub n: u32,
    pub t: u32,
    /// Each sub-circuit is a t-threshold monotone CNF on the n inputs.
    pub subcircuits: Vec<MonotoneCnf>,
}

impl Sigma3Circuit {
    pub fn size(&self) -> usize {
        self.subcircuits.len()
    }

    /// Evaluate the circuit on one input mask.
    pub fn eval(&self, input: u64) -> bool {
        self.subcircuits.iter().any(|c| c.is_transversal(input))
    }
}

/// Apply a variable permutation to a CNF: variable v maps to perm[v].
fn permute(cnf: &MonotoneCnf, perm: &[Var]) -> MonotoneCnf {
    let clauses = cnf
        .clauses()
        .iter()
        .map(|c| {
            let mut mask = 0u64;
            let mut m = c.0;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                mask |= 1u64 << perm[v];
                m &= m - 1;
            }
            Clause(mask)
        })
        .collect();
    MonotoneCnf::new(cnf.n(), clauses).expect("permutation preserves well-formedness")
}

fn apply_perm_mask(mask: u64, perm: &[Var]) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out |= 1u64 << perm[v];
        m &= m - 1;
    }
    out
}

/// A permutation sending the set bits of `from` onto the set bits of `to`
/// (in increasing order) and the remaining positions onto the remaining
/// positions in increasing order.
fn aligning_permutation(n: u32, from: u64, to: u64) -> Vec<Var> {
    let mut perm = vec![0; n as usize];
    let mut from_in: Vec<u32> = (0..n).filter(|&v| from >> v & 1 == 1).collect();
    let mut to_in: Vec<u32> = (0..n).filter(|&v| to >> v & 1 == 1).collect();
    let mut from_out: Vec<u32> = (0..n).filter(|&v| from >> v & 1 == 0).collect();
    let mut to_out: Vec<u32> = (0..n).filter(|&v| to >> v & 1 == 0).collect();
    for (f, t) in from_in.drain(..).zip(to_in.drain(..)) {
        perm[f as usize] = t;
    }
    for (f, t) in from_out.drain(..).zip(to_out.drain(..)) {
        perm[f as usize] = t;
    }
    perm
}

/// Greedily cover all weight-t inputs by permuted copies of a t-threshold
/// seed.  Deterministic: a fixed RNG seed drives the random restarts, each
/// step scoring a batch of random permutations plus one permutation aligned
/// to the first uncovered input.
pub fn build_threshold_circuit(
    n: u32,
    t: u32,
    seed: &MonotoneCnf,
) -> Result<Sigma3Circuit, CircuitError> {
    assert_eq!(seed.n(), n, "seed formula must be on n variables");
    let actual = seed.transversal_number();
    if actual != t {
        return Err(CircuitError::SeedMismatch { expected: t, actual });
    }
    let accepted = seed.brute_force_transversals(t).members;
    let mut targets: Vec<u64> = Vec::new();
    let mut sub = Subsets::new(n, t);
    while let Some(mask) = sub.next() {
        targets.push(mask);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut best: Option<Vec<Vec<Var>>> = None;
    for _ in 0..RESTARTS {
        let mut covered: HashSet<u64> = HashSet::new();
        let mut perms: Vec<Vec<Var>> = Vec::new();
        while covered.len() < targets.len() {
            let first_uncovered = targets
                .iter()
                .copied()
                .find(|m| !covered.contains(m))
                .expect("loop condition guarantees an uncovered target");
            let mut candidates: Vec<Vec<Var>> = Vec::new();
            for _ in 0..RANDOM_CANDIDATES_PER_STEP {
                let mut p: Vec<Var> = (0..n).collect();
                p.shuffle(&mut rng);
                candidates.push(p);
            }
            candidates.push(aligning_permutation(n, accepted[0], first_uncovered));
            let chosen = candidates
                .into_iter()
                .map(|p| {
                    let gain = accepted
                        .iter()
                        .filter(|&&m| !covered.contains(&apply_perm_mask(m, &p)))
                        .count();
                    (gain, p)
                })
                .max_by_key(|(gain, _)| *gain)
                .expect("candidate list is nonempty")
                .1;
            for &m in &accepted {
                covered.insert(apply_perm_mask(m, &chosen));
            }
            perms.push(chosen);
        }
        if best.as_ref().map_or(true, |b| perms.len() < b.len()) {
            best = Some(perms);
        }
    }
    let subcircuits = best
        .expect("at least one restart ran")
        .into_iter()
        .map(|p| permute(seed, &p))
        .collect();
    Ok(Sigma3Circuit { n, t, subcircuits })
}

/// Exhaustively check (over all 2^n inputs, n <= 20) that the circuit
/// accepts exactly the inputs of weight >= t.
pub fn verify_circuit(c: &Sigma3Circuit) -> Result<bool, CircuitError> {
    if c.n > 20 {
        return Err(CircuitError::TooLarge(c.n));
    }
    for input in 0..=full_mask(c.n) {
        let expected = input.count_ones() >= c.t;
        if c.eval(input) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Best known Θ(n,t,3) for the size lower bound.  The unrestricted maximum
/// equals the type-0 family count whenever the deficit s = 3t - n lies in
/// 0 <= s <= t or on the boundary rows s ∈ {2t-2, 2t-1, 2t}; outside those
/// regions the exhaustive oracle covers n <= 6.
fn known_theta(n: u32, t: u32) -> Option<BigInt> {
    if t >= 1 && n >= t {
        let s = 3 * t as i64 - n as i64;
        let t64 = t as i64;
        if (0..=t64).contains(&s) || s >= 2 * t64 - 2 {
            if let Ok(count) = crate::constructions::expected_count(FamilySpec {
                ftype: FormulaType::T0,
                s,
                t,
            }) {
                return Some(count);
            }
        }
    }
    if n <= 6 && t >= 1 && t <= n {
        if let Ok(res) = extremal_search(n, t) {
            return Some(BigInt::from(res.max_count));
        }
    }
    None
}

/// The lower bound ⌈C(n,t)/Θ(n,t,3)⌉ on any such circuit's size, paired with
/// the actual size.
pub fn size_bounds(c: &Sigma3Circuit) -> Result<(BigInt, usize), CircuitError> {
    let theta = known_theta(c.n, c.t).ok_or(CircuitError::UnknownTheta { n: c.n, t: c.t })?;
    let lower = crate::bounds::binomial(c.n, c.t).div_ceil(&theta);
    Ok((lower, c.size()))
}
