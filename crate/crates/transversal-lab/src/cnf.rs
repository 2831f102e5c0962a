//! Monotone CNF representation, normalization, restriction, and brute-force
//! transversal computation.
//!
//! The universe is capped at 64 variables so every clause and every variable
//! set fits in one `u64` bit mask; all set operations are O(1).

use thiserror::Error;

/// Maximum number of variables supported by the engine.
pub const MAX_VARS: u32 = 64;

/// A variable, identified by its 0-based index within the owning CNF's
/// universe.
pub type Var = u32;

/// Errors raised when building or manipulating CNFs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("universe of {0} variables exceeds the engine limit of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("clause width {0} out of range 1..=3")]
    BadClauseWidth(usize),
    #[error("variable index {0} out of range for universe of size {1}")]
    VarOutOfRange(Var, u32),
    #[error("duplicate variable in clause")]
    DuplicateVar,
}

/// Restriction produced an empty clause: the partial assignment cannot be
/// extended to any transversal. This signals a dead branch, not a fault.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unsatisfiable;

/// A monotone clause of width 1–3, stored as a bit mask over the universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(pub u64);

impl Clause {
    /// Builds a clause from distinct variable indices (1–3 of them).
    pub fn new(vars: &[Var]) -> Result<Self, CnfError> {
        if vars.is_empty() || vars.len() > 3 {
            return Err(CnfError::BadClauseWidth(vars.len()));
        }
        let mut mask = 0u64;
        for &v in vars {
            if v >= MAX_VARS {
                return Err(CnfError::VarOutOfRange(v, MAX_VARS));
            }
            if mask & (1 << v) != 0 {
                return Err(CnfError::DuplicateVar);
            }
            mask |= 1 << v;
        }
        Ok(Clause(mask))
    }

    /// Number of variables in the clause.
    pub fn width(self) -> u32 {
        self.0.count_ones()
    }

    /// The clause's variables in ascending order.
    pub fn vars(self) -> Vec<Var> {
        mask_to_vars(self.0)
    }

    /// True when `set` (a bit mask) intersects the clause.
    pub fn hit_by(self, set: u64) -> bool {
        self.0 & set != 0
    }
}

/// Ascending variable indices of a bit mask.
pub fn mask_to_vars(mask: u64) -> Vec<Var> {
    let mut m = mask;
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros();
        out.push(v);
        m &= m - 1;
    }
    out
}

/// Bit mask of a set of variable indices.
pub fn vars_to_mask(vars: &[Var]) -> u64 {
    vars.iter().fold(0u64, |m, &v| m | (1 << v))
}

/// A partial assignment: variables included in (set to 1) or excluded from
/// (set to 0) a prospective transversal. The two sets are disjoint.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    pub included: u64,
    pub excluded: u64,
}

impl PartialAssignment {
    pub fn new(included: u64, excluded: u64) -> Self {
        debug_assert_eq!(included & excluded, 0, "inconsistent partial assignment");
        PartialAssignment { included, excluded }
    }

    /// Include a single variable.
    pub fn include(v: Var) -> Self {
        PartialAssignment::new(1 << v, 0)
    }

    /// Exclude a single variable.
    pub fn exclude(v: Var) -> Self {
        PartialAssignment::new(0, 1 << v)
    }

    /// Union of two disjoint-domain partial assignments.
    pub fn merge(self, other: PartialAssignment) -> Self {
        PartialAssignment::new(self.included | other.included, self.excluded | other.excluded)
    }

    pub fn domain(self) -> u64 {
        self.included | self.excluded
    }

    pub fn is_consistent(self) -> bool {
        self.included & self.excluded == 0
    }
}

/// The set of size-`t` transversals of a CNF, each member a variable-index
/// bit mask. Members are pairwise distinct and sorted lexicographically by
/// their ascending index vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalSet {
    pub t: u32,
    pub members: Vec<u64>,
}

impl TransversalSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Sorts masks lexicographically by their ascending index vectors
/// (so {0,3} precedes {1,2}) and drops duplicates.
pub fn sort_member_masks(members: &mut Vec<u64>) {
    // Reversing the bits maps index i to bit 63-i, so comparing reversed
    // masks in DESCENDING numeric order compares index vectors in ascending
    // lexicographic order (the smallest differing index decides, and the set
    // containing it sorts first).
    members.sort_by_key(|&m| std::cmp::Reverse(m.reverse_bits()));
    members.dedup();
}

/// A monotone CNF: a universe of `n` variables and a collection of width-1..3
/// monotone clauses. After [`MonotoneCnf::normalize`] the clause set is an
/// antichain (no clause contains another) with no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneCnf {
    n: u32,
    clauses: Vec<Clause>,
}

impl MonotoneCnf {
    /// Builds a CNF without normalizing.
    pub fn new(n: u32, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        if n > MAX_VARS {
            return Err(CnfError::TooManyVariables(n as usize));
        }
        for c in &clauses {
            if let Some(&v) = c.vars().iter().max() {
                if v >= n {
                    return Err(CnfError::VarOutOfRange(v, n));
                }
            }
        }
        let mut clauses = clauses;
        clauses.sort();
        Ok(MonotoneCnf { n, clauses })
    }

    /// Convenience constructor from variable-index slices.
    pub fn from_clauses(n: u32, clauses: &[&[Var]]) -> Result<Self, CnfError> {
        let cs = clauses
            .iter()
            .map(|vs| Clause::new(vs))
            .collect::<Result<Vec<_>, _>>()?;
        MonotoneCnf::new(n, cs)
    }

    /// The empty CNF on `n` variables (every set is a transversal).
    pub fn empty(n: u32) -> Self {
        MonotoneCnf { n, clauses: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Deficit s = 3t − n for a given threshold t.
    pub fn deficit(&self, t: u32) -> i64 {
        3 * t as i64 - self.n as i64
    }

    /// Removes duplicate clauses and any clause that is a superset of another
    /// clause. A hit on the subset clause is a hit on the superset, so the
    /// transversal set is unchanged.
    pub fn normalize(&self) -> MonotoneCnf {
        let mut masks: Vec<u64> = self.clauses.iter().map(|c| c.0).collect();
        masks.sort();
        masks.dedup();
        let kept: Vec<Clause> = masks
            .iter()
            .filter(|&&a| !masks.iter().any(|&b| b != a && b & a == b))
            .map(|&m| Clause(m))
            .collect();
        MonotoneCnf { n: self.n, clauses: kept }
    }

    /// True when the clause set is duplicate-free and an antichain.
    pub fn is_normalized(&self) -> bool {
        self.clauses == self.normalize().clauses
    }

    /// Applies a partial assignment: clauses meeting an included variable are
    /// deleted, excluded variables are deleted from the remaining clauses, and
    /// the surviving variables are relabeled compactly. Returns the restricted
    /// CNF re-normalized; an emptied clause yields `Unsatisfiable`.
    pub fn restrict(&self, pa: PartialAssignment) -> Result<MonotoneCnf, Unsatisfiable> {
        self.restrict_with_map(pa).map(|(cnf, _)| cnf)
    }

    /// Like [`MonotoneCnf::restrict`], additionally returning the mapping
    /// `map[new_index] = old_index` from the restricted universe back to this
    /// CNF's universe.
    pub fn restrict_with_map(
        &self,
        pa: PartialAssignment,
    ) -> Result<(MonotoneCnf, Vec<Var>), Unsatisfiable> {
        debug_assert!(pa.is_consistent());
        let survivors = full_mask(self.n) & !pa.domain();
        let map = mask_to_vars(survivors);
        // old index -> new compact index
        let mut relabel = [0u32; MAX_VARS as usize];
        for (new, &old) in map.iter().enumerate() {
            relabel[old as usize] = new as u32;
        }
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for c in &self.clauses {
            if c.hit_by(pa.included) {
                continue;
            }
            let reduced = c.0 & !pa.excluded;
            if reduced == 0 {
                return Err(Unsatisfiable);
            }
            let mut mask = 0u64;
            let mut m = reduced;
            while m != 0 {
                let v = m.trailing_zeros();
                mask |= 1 << relabel[v as usize];
                m &= m - 1;
            }
            clauses.push(Clause(mask));
        }
        let cnf = MonotoneCnf { n: map.len() as u32, clauses }.normalize();
        Ok((cnf, map))
    }

    /// True iff `set` (a variable-index bit mask) intersects every clause.
    pub fn is_transversal(&self, set: u64) -> bool {
        self.clauses.iter().all(|c| c.hit_by(set))
    }

    /// The transversal number τ: size of a minimum transversal (0 for the
    /// empty CNF). Branch-and-bound over clauses with a greedy disjoint-clause
    /// matching lower bound for pruning; deterministic (branches on the
    /// lowest-index unsatisfied clause).
    pub fn transversal_number(&self) -> u32 {
        let masks: Vec<u64> = self.clauses.iter().map(|c| c.0).collect();
        debug_assert!(masks.iter().all(|&m| m != 0));
        let ub = greedy_upper_bound(&masks);
        tau_branch(&masks, ub)
    }

    /// All size-`t` transversals, found by iterating the C(n,t) subsets.
    pub fn brute_force_transversals(&self, t: u32) -> TransversalSet {
        assert!(t <= self.n, "t={} exceeds n={}", t, self.n);
        let mut members = Vec::new();
        if t == 0 {
            if self.clauses.is_empty() {
                members.push(0u64);
            }
        } else {
            for set in Subsets::new(self.n, t) {
                if self.is_transversal(set) {
                    members.push(set);
                }
            }
        }
        sort_member_masks(&mut members);
        TransversalSet { t, members }
    }

    /// Checks the critical-clause property: for every `x` in `trans` there is
    /// a clause `C` with `C ∩ trans = {x}`. Must hold whenever `trans` is a
    /// minimum transversal.
    pub fn verify_critical_clauses(&self, trans: u64) -> bool {
        debug_assert!(self.is_transversal(trans));
        let mut m = trans;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            if !self.clauses.iter().any(|c| c.0 & trans == bit) {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    /// Relabels this CNF onto `[offset, offset + n)` inside a universe of
    /// `total` variables (used by disjoint sums).
    pub fn shifted(&self, offset: u32, total: u32) -> Result<MonotoneCnf, CnfError> {
        if total > MAX_VARS {
            return Err(CnfError::TooManyVariables(total as usize));
        }
        let clauses = self.clauses.iter().map(|c| Clause(c.0 << offset)).collect();
        MonotoneCnf::new(total, clauses)
    }
}

/// Bit mask with the low `n` bits set.
pub fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over all size-`t` subsets of `{0,..,n-1}` as bit masks, in
/// ascending numeric (colexicographic) order via Gosper's hack.
pub struct Subsets {
    next: Option<u64>,
    limit: u64,
}

impl Subsets {
    pub fn new(n: u32, t: u32) -> Self {
        assert!(t >= 1 && t <= n && n <= MAX_VARS);
        Subsets { next: Some(full_mask(t)), limit: full_mask(n) }
    }
}

impl Iterator for Subsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur > self.limit {
            self.next = None;
            return None;
        }
        // Gosper's hack: next subset with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur.wrapping_add(c);
        self.next = if r == 0 {
            None
        } else {
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    }
}

/// Greedy maximal set of pairwise-disjoint clauses, taken in index order;
/// its cardinality lower-bounds the transversal number.
fn matching_lower_bound(masks: &[u64]) -> u32 {
    let mut used = 0u64;
    let mut count = 0;
    for &m in masks {
        if m & used == 0 {
            used |= m;
            count += 1;
        }
    }
    count
}

/// Greedy hitting set (always pick the first variable of the first unsatisfied
/// clause); its size upper-bounds the transversal number.
fn greedy_upper_bound(masks: &[u64]) -> u32 {
    let mut hit = 0u64;
    let mut count = 0;
    for &m in masks {
        if m & hit == 0 {
            hit |= m & m.wrapping_neg();
            count += 1;
        }
    }
    count
}

/// Exact minimum hitting-set size by branch-and-bound; `ub` is a known
/// attainable upper bound (the result is ≤ ub).
fn tau_branch(masks: &[u64], ub: u32) -> u32 {
    if masks.is_empty() {
        return 0;
    }
    if ub == 0 {
        // Caller claims 0 suffices, but clauses remain: impossible.
        unreachable!("upper bound 0 with unsatisfied clauses");
    }
    let lb = matching_lower_bound(masks);
    if lb >= ub {
        return ub;
    }
    let first = masks[0];
    let mut best = ub;
    let mut bit_iter = first;
    while bit_iter != 0 {
        let v = bit_iter & bit_iter.wrapping_neg();
        bit_iter &= bit_iter - 1;
        let reduced: Vec<u64> = masks.iter().copied().filter(|&m| m & v == 0).collect();
        let sub = tau_branch(&reduced, best - 1);
        if 1 + sub < best {
            best = 1 + sub;
            if best == lb {
                break;
            }
        }
    }
    best
}
