//! Enumeration of the minimum transversals of a t-threshold monotone CNF.
//!
//! Two strategies share a common recursion.  The generic strategy branches on
//! the variables of a single clause with disjoint inclusion/exclusion
//! prefixes.  The structured strategy classifies the formula by its 2-clause
//! pattern, locates a matching structural property, and applies that
//! property's branching rule: each printed rule row fixes a combination of
//! the rule's core variables (plus any forced companions), and synthetic
//! fallback rows cover the remaining core combinations so that the case
//! split is always exhaustive regardless of how sharp the row side
//! conditions are.
//!
//! Both strategies rely on the threshold invariant: when the root formula is
//! t-threshold, every node's residual formula is t_rem-threshold, so every
//! residual minimum transversal contains a variable of each clause and the
//! rule forcings apply.  The root threshold is verified up front.

use crate::bounds::{phi_upper, six_quarter_bound, BoundQuery, ExactValue, Parity, SixQuarterBound};
use crate::classify::{find_property, formula_type, FormulaType, PropertyMatch};
use crate::cnf::{
    full_mask, sort_member_masks, MonotoneCnf, PartialAssignment, TransversalSet, Var,
};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

/// Enumeration strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Classify the formula and branch by the matching structural rule.
    Structured,
    /// Branch on the variables of one clause at every node.
    Generic,
}

/// Counters collected during one enumeration.
#[derive(Debug, Clone, Default)]
pub struct EnumStats {
    /// Search-tree nodes visited (after unit propagation).
    pub nodes: u64,
    /// Branches abandoned without emitting a transversal.
    pub dead_branches: u64,
    /// Synthetic fallback branches taken at structured nodes.
    pub fallback_branches: u64,
    /// Nodes expanded by generic clause branching.
    pub generic_nodes: u64,
    /// Deepest node visited.
    pub max_depth: u32,
    /// Structured nodes per applied rule table.
    pub table_hits: BTreeMap<&'static str, u64>,
    /// Structured nodes per formula type.
    pub type_hist: BTreeMap<FormulaType, u64>,
}

/// Result of an enumeration run.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub set: TransversalSet,
    pub stats: EnumStats,
}

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("formula is not {claimed}-threshold: its transversal number is {actual}")]
    WrongThreshold { claimed: u32, actual: u32 },
    #[error("duplicate transversal emitted; branching cubes are not disjoint")]
    DuplicateEmitted,
}

/// Enumerate all minimum transversals of a `t`-threshold CNF.
///
/// Returns an error if τ(cnf) ≠ t.  The output members are masks over the
/// input variable numbering, sorted lexicographically as variable lists.
pub fn enumerate_min_transversals(
    cnf: &MonotoneCnf,
    t: u32,
    mode: Mode,
) -> Result<Enumeration, EnumError> {
    let actual = cnf.transversal_number();
    if actual != t {
        return Err(EnumError::WrongThreshold { claimed: t, actual });
    }
    let mut stats = EnumStats::default();
    let normal = cnf.normalize();
    let mut members = node(&normal, t, mode, 0, &mut stats);
    sort_member_masks(&mut members);
    if members.windows(2).any(|w| w[0] == w[1]) {
        return Err(EnumError::DuplicateEmitted);
    }
    Ok(Enumeration {
        set: TransversalSet { t, members },
        stats,
    })
}

/// Recursive work-horse: all t_rem-transversals of `cnf`, as masks over
/// `cnf`'s numbering.  `cnf` is normalized.
fn node(cnf: &MonotoneCnf, t_rem: u32, mode: Mode, depth: u32, stats: &mut EnumStats) -> Vec<u64> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(depth);

    // Unit propagation: every unit clause's variable is in every transversal.
    let unit_mask: u64 = cnf
        .clauses()
        .iter()
        .filter(|c| c.width() == 1)
        .fold(0, |m, c| m | c.0);
    if unit_mask != 0 {
        let forced = unit_mask.count_ones();
        if forced > t_rem {
            stats.dead_branches += 1;
            return Vec::new();
        }
        // Inclusion never empties a clause, so this cannot fail.
        let (child, map) = cnf
            .restrict_with_map(PartialAssignment::new(unit_mask, 0))
            .expect("inclusion-only restriction is always satisfiable");
        let sub = node(&child, t_rem - forced, mode, depth + 1, stats);
        return lift_all(sub, &map, unit_mask);
    }

    if cnf.num_clauses() == 0 {
        if t_rem == 0 {
            return vec![0];
        }
        // Unreachable when the root is t-threshold: a satisfied formula with
        // budget left would witness a transversal smaller than t.
        stats.dead_branches += 1;
        return Vec::new();
    }
    if t_rem == 0 {
        stats.dead_branches += 1;
        return Vec::new();
    }

    // Variables no longer occurring in any clause cannot be in a minimum
    // transversal of a t_rem-threshold formula: dropping one would leave a
    // smaller transversal.
    let used: u64 = cnf.clauses().iter().fold(0, |m, c| m | c.0);
    let unused = full_mask(cnf.n()) & !used;
    if unused != 0 {
        let (child, map) = cnf
            .restrict_with_map(PartialAssignment::new(0, unused))
            .expect("excluding clause-free variables is always satisfiable");
        let sub = node(&child, t_rem, mode, depth + 1, stats);
        return lift_all(sub, &map, 0);
    }

    if mode == Mode::Generic {
        return generic_branch(cnf, t_rem, mode, depth, stats);
    }

    let s = 3 * t_rem as i64 - cnf.n() as i64;
    if s < 1 {
        return generic_branch(cnf, t_rem, mode, depth, stats);
    }
    let ftype = formula_type(cnf);
    *stats.type_hist.entry(ftype).or_insert(0) += 1;
    match find_property(cnf, ftype, Parity::of(s)) {
        Some(pm) => structured_branch(cnf, t_rem, depth, &pm, stats),
        None => generic_branch(cnf, t_rem, mode, depth, stats),
    }
}

/// Branch on the variables of a minimum-width clause: branch i includes the
/// clause's i-th variable and excludes the earlier ones.
fn generic_branch(
    cnf: &MonotoneCnf,
    t_rem: u32,
    mode: Mode,
    depth: u32,
    stats: &mut EnumStats,
) -> Vec<u64> {
    stats.generic_nodes += 1;
    let clause = cnf
        .clauses()
        .iter()
        .min_by_key(|c| (c.width(), c.0))
        .expect("generic branching requires a clause");
    let vars = clause.vars();
    let mut out = Vec::new();
    let mut excluded = 0u64;
    for &v in &vars {
        let include = 1u64 << v;
        out.extend(restricted_branch(
            cnf,
            include,
            excluded,
            t_rem,
            mode,
            depth,
            stats,
        ));
        excluded |= include;
    }
    out
}

/// Apply one branch with the given included/excluded masks; returns the
/// lifted transversals of the branch.
fn restricted_branch(
    cnf: &MonotoneCnf,
    include: u64,
    exclude: u64,
    t_rem: u32,
    mode: Mode,
    depth: u32,
    stats: &mut EnumStats,
) -> Vec<u64> {
    if include & exclude != 0 {
        // Contradictory forcing: the branch covers no assignment.
        stats.dead_branches += 1;
        return Vec::new();
    }
    let forced = include.count_ones();
    if forced > t_rem {
        stats.dead_branches += 1;
        return Vec::new();
    }
    match cnf.restrict_with_map(PartialAssignment::new(include, exclude)) {
        Ok((child, map)) => {
            let sub = node(&child, t_rem - forced, mode, depth + 1, stats);
            lift_all(sub, &map, include)
        }
        Err(_) => {
            stats.dead_branches += 1;
            Vec::new()
        }
    }
}

/// Apply the branching rule of a matched structural property, adding
/// synthetic fallback rows for core combinations not covered by any printed
/// row.
fn structured_branch(
    cnf: &MonotoneCnf,
    t_rem: u32,
    depth: u32,
    pm: &PropertyMatch,
    stats: &mut EnumStats,
) -> Vec<u64> {
    let table = pm.table;
    *stats.table_hits.entry(table.id).or_insert(0) += 1;
    let core: Vec<Var> = table
        .core
        .iter()
        .map(|name| {
            pm.var(name)
                .unwrap_or_else(|| panic!("rule {} binds no core variable {name}", table.id))
        })
        .collect();
    let k = core.len();

    let mut out = Vec::new();
    // cubes[row] = (set positions, values) over the core, for coverage.
    let mut cubes: Vec<(u32, u32)> = Vec::with_capacity(table.rows.len());
    for row in table.rows {
        let mut include = 0u64;
        let mut exclude = 0u64;
        let mut cube_mask = 0u32;
        let mut cube_vals = 0u32;
        for &(name, value) in row.sets {
            let v = pm
                .var(name)
                .unwrap_or_else(|| panic!("rule {} binds no variable {name}", table.id));
            if value {
                include |= 1 << v;
            } else {
                exclude |= 1 << v;
            }
            if let Some(pos) = core.iter().position(|&c| c == v) {
                cube_mask |= 1 << pos;
                if value {
                    cube_vals |= 1 << pos;
                }
            }
        }
        cubes.push((cube_mask, cube_vals));
        out.extend(restricted_branch(
            cnf,
            include,
            exclude,
            t_rem,
            Mode::Structured,
            depth,
            stats,
        ));
    }
    // Fallback rows: any full core assignment not covered by a printed cube.
    for combo in 0u32..1 << k {
        if cubes
            .iter()
            .any(|&(mask, vals)| combo & mask == vals & mask)
        {
            continue;
        }
        let mut include = 0u64;
        let mut exclude = 0u64;
        for (pos, &v) in core.iter().enumerate() {
            if combo >> pos & 1 == 1 {
                include |= 1 << v;
            } else {
                exclude |= 1 << v;
            }
        }
        stats.fallback_branches += 1;
        out.extend(restricted_branch(
            cnf,
            include,
            exclude,
            t_rem,
            Mode::Structured,
            depth,
            stats,
        ));
    }
    out
}

/// Map branch-local masks back to the parent numbering and add the included
/// variables.
fn lift_all(masks: Vec<u64>, map: &[Var], include: u64) -> Vec<u64> {
    masks
        .into_iter()
        .map(|mut m| {
            let mut lifted = include;
            while m != 0 {
                let b = m.trailing_zeros();
                lifted |= 1u64 << map[b as usize];
                m &= m - 1;
            }
            lifted
        })
        .collect()
}

/// Outcome of certifying an enumeration against the closed-form bounds.
#[derive(Debug, Clone)]
pub struct BoundCertificate {
    /// Number of minimum transversals found.
    pub count: u64,
    /// Formula type of the (unit-free) root, if classifiable.
    pub ftype: Option<FormulaType>,
    /// Deficit s = 3t - n.
    pub s: i64,
    /// The per-type upper bound, when (ftype, s, t) lies in its validity
    /// region.
    pub phi: Option<ExactValue>,
    /// Whether the count respects the per-type bound (when applicable).
    pub within_phi: Option<bool>,
    /// Comparison of the count against 6^{n/4}, checked when t = ⌊n/2⌋.
    pub six_quarter: Option<(SixQuarterBound, Ordering)>,
    pub stats: EnumStats,
}

impl BoundCertificate {
    /// True iff no applicable bound is violated.
    pub fn certified(&self) -> bool {
        self.within_phi != Some(false)
            && !matches!(self.six_quarter, Some((_, Ordering::Greater)))
    }
}

/// Enumerate the minimum transversals and check the count against the
/// applicable closed-form bounds.
pub fn certify_bound(
    cnf: &MonotoneCnf,
    t: u32,
    mode: Mode,
) -> Result<BoundCertificate, EnumError> {
    let enumeration = enumerate_min_transversals(cnf, t, mode)?;
    let count = enumeration.set.len() as u64;
    let normal = cnf.normalize();
    let s = normal.deficit(t);
    let ftype = if normal.clauses().iter().all(|c| c.width() >= 2) {
        Some(formula_type(&normal))
    } else {
        None
    };
    let phi = ftype.and_then(|ft| phi_upper(BoundQuery { ftype: ft, s, t }).ok());
    let within_phi = phi
        .as_ref()
        .map(|bound| &ExactValue::from(BigInt::from(count)) <= bound);
    let six_quarter = if t == normal.n() / 2 {
        let bound = six_quarter_bound(normal.n());
        let ord = bound.compare(count);
        Some((bound, ord))
    } else {
        None
    };
    Ok(BoundCertificate {
        count,
        ftype,
        s,
        phi,
        within_phi,
        six_quarter,
        stats: enumeration.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_family, expected_count, FamilySpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cnf(n: u32, clauses: &[&[Var]]) -> MonotoneCnf {
        MonotoneCnf::from_clauses(n, clauses).unwrap()
    }

    fn check_both_modes(f: &MonotoneCnf) {
        let t = f.transversal_number();
        let expected = f.brute_force_transversals(t);
        for mode in [Mode::Structured, Mode::Generic] {
            let e = enumerate_min_transversals(f, t, mode).unwrap();
            assert_eq!(
                e.set.members, expected.members,
                "mode {mode:?} disagrees with brute force on n={} {:?}",
                f.n(),
                f.clauses()
            );
        }
    }

    #[test]
    fn rejects_wrong_threshold() {
        let f = cnf(3, &[&[0, 1, 2]]);
        assert!(matches!(
            enumerate_min_transversals(&f, 2, Mode::Structured),
            Err(EnumError::WrongThreshold { claimed: 2, actual: 1 })
        ));
    }

    #[test]
    fn trivial_formulas() {
        let f = cnf(3, &[&[0, 1, 2]]);
        let e = enumerate_min_transversals(&f, 1, Mode::Structured).unwrap();
        assert_eq!(e.set.members, vec![0b001, 0b010, 0b100]);
        let empty = MonotoneCnf::empty(0);
        let e = enumerate_min_transversals(&empty, 0, Mode::Generic).unwrap();
        assert_eq!(e.set.members, vec![0]);
    }

    #[test]
    fn unit_clauses_propagate() {
        let f = cnf(4, &[&[0], &[1, 2, 3]]);
        check_both_modes(&f);
    }

    #[test]
    fn family_counts_match() {
        let specs = [
            (FormulaType::T0, 0, 3),
            (FormulaType::T0, 1, 3),
            (FormulaType::T0, 2, 3),
            (FormulaType::T0, 3, 3),
            (FormulaType::T0, 4, 4),
            (FormulaType::T0, 5, 5),
            (FormulaType::T1, 1, 3),
            (FormulaType::T1, 2, 3),
            (FormulaType::T1, 3, 3),
            (FormulaType::T1, 4, 4),
            (FormulaType::T2o, 2, 3),
            (FormulaType::T2o, 3, 3),
            (FormulaType::T2o, 4, 4),
            (FormulaType::T2o, 5, 5),
            (FormulaType::T2d, 2, 3),
            (FormulaType::T2d, 3, 3),
            (FormulaType::T2d, 4, 4),
            (FormulaType::T2d, 5, 5),
        ];
        for (ftype, s, t) in specs {
            let spec = FamilySpec { ftype, s, t };
            let f = build_family(spec).unwrap();
            let e = enumerate_min_transversals(&f, t, Mode::Structured).unwrap();
            assert_eq!(
                BigInt::from(e.set.len()),
                expected_count(spec).unwrap(),
                "family {ftype} s={s} t={t}"
            );
            check_both_modes(&f);
        }
    }

    fn random_cnf(rng: &mut ChaCha8Rng, n: u32) -> MonotoneCnf {
        let m = rng.gen_range(1..=2 * n as usize);
        let mut clauses: Vec<Vec<Var>> = Vec::new();
        for _ in 0..m {
            let w = *[2, 3, 3, 3].get(rng.gen_range(0..4)).unwrap();
            let mut c: Vec<Var> = Vec::new();
            while c.len() < w {
                let v = rng.gen_range(0..n);
                if !c.contains(&v) {
                    c.push(v);
                }
            }
            clauses.push(c);
        }
        let refs: Vec<&[Var]> = clauses.iter().map(|c| c.as_slice()).collect();
        MonotoneCnf::from_clauses(n, &refs).unwrap()
    }

    #[test]
    fn differential_random_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..600 {
            let n = rng.gen_range(3..=10);
            let f = random_cnf(&mut rng, n);
            check_both_modes(&f);
        }
    }

    #[test]
    fn certificate_on_family() {
        let spec = FamilySpec { ftype: FormulaType::T2o, s: 4, t: 4 };
        let f = build_family(spec).unwrap();
        let cert = certify_bound(&f, 4, Mode::Structured).unwrap();
        assert_eq!(cert.count, 24);
        assert_eq!(cert.ftype, Some(FormulaType::T2o));
        assert_eq!(cert.s, 4);
        assert_eq!(cert.within_phi, Some(true));
        assert_eq!(cert.six_quarter.as_ref().unwrap().1, Ordering::Less);
        assert!(cert.certified());
    }

    #[test]
    fn node_budget_on_families() {
        // The structured search tree should stay within a small multiple of
        // the output size: nodes <= 10 * 6^{n/4}.
        for (ftype, s, t) in [
            (FormulaType::T0, 0, 5),
            (FormulaType::T0, 5, 5),
            (FormulaType::T1, 4, 5),
            (FormulaType::T2o, 5, 5),
            (FormulaType::T2d, 4, 5),
        ] {
            let f = build_family(FamilySpec { ftype, s, t }).unwrap();
            let e = enumerate_min_transversals(&f, t, Mode::Structured).unwrap();
            let budget = 10.0 * 6f64.powf(f.n() as f64 / 4.0);
            assert!(
                (e.stats.nodes as f64) <= budget,
                "{ftype} s={s} t={t}: {} nodes > {budget}",
                e.stats.nodes
            );
        }
    }
}
