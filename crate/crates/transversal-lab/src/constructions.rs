//! Generators for the named extremal building blocks and the parametric
//! families that attain the per-type bounds.
//!
//! Blocks are small set systems with a known transversal threshold and
//! minimum-transversal count: cliques `K_l^k` (all k-subsets of l elements),
//! the circular partition system `T_n^3`, defective variants of both obtained
//! by adding one or two 2-sets, the single 2-clause, and the special
//! construction for n = 3t - 1.  Families are disjoint sums of blocks chosen
//! by (type, deficit, threshold).

use crate::bounds::binomial;
use crate::classify::FormulaType;
use crate::cnf::{Clause, CnfError, MonotoneCnf, Var, MAX_VARS};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid construction parameters: {0}")]
    InvalidSpec(String),
    #[error("combined universe of {n} variables exceeds the {MAX_VARS}-variable limit")]
    CombinedUniverseTooLarge { n: u64 },
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidSpec(msg.into())
}

/// Kind of 2-set defect added to a base block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Defect {
    /// One 2-set.
    D1,
    /// Two overlapping 2-sets.
    D2o,
    /// Two disjoint 2-sets.
    D2d,
}

impl std::fmt::Display for Defect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Defect::D1 => "1",
            Defect::D2o => "2o",
            Defect::D2d => "2d",
        };
        write!(f, "{s}")
    }
}

/// A named building block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSpec {
    /// All k-subsets of l elements; threshold l - k + 1.
    CliqueLK { l: u32, k: u32 },
    /// Circular partition system on n elements; threshold n - 3.
    Turan3 { n: u32 },
    /// Clique K_l^3 plus defect 2-sets; threshold l - 2.
    CliqueDef { l: u32, defect: Defect },
    /// T_n^3 plus defect 2-sets placed to maximize the count; threshold n - 3.
    TuranDef { n: u32, defect: Defect },
    /// A single 2-clause on two elements; threshold 1.
    TwoClause,
    /// The 5-variable gadget plus t - 2 triangle cliques attaining
    /// 7·3^{t-2} minimum transversals on n = 3t - 1 variables.
    NThreeTMinus1 { t: u32 },
}

impl BlockSpec {
    /// Number of variables of the block.
    pub fn n(&self) -> u32 {
        match *self {
            BlockSpec::CliqueLK { l, .. } => l,
            BlockSpec::Turan3 { n } => n,
            BlockSpec::CliqueDef { l, .. } => l,
            BlockSpec::TuranDef { n, .. } => n,
            BlockSpec::TwoClause => 2,
            BlockSpec::NThreeTMinus1 { t } => 3 * t - 1,
        }
    }

    /// Transversal threshold of the block.
    pub fn threshold(&self) -> u32 {
        match *self {
            BlockSpec::CliqueLK { l, k } => l - k + 1,
            BlockSpec::Turan3 { n } => n - 3,
            BlockSpec::CliqueDef { l, .. } => l - 2,
            BlockSpec::TuranDef { n, .. } => n - 3,
            BlockSpec::TwoClause => 1,
            BlockSpec::NThreeTMinus1 { t } => t,
        }
    }
}

/// Part sizes for the circular partition, as equal as possible,
/// larger parts first.
fn turan_parts(n: u32) -> [Vec<Var>; 3] {
    let base = n / 3;
    let extra = n % 3;
    let mut parts: [Vec<Var>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut next = 0;
    for (i, part) in parts.iter_mut().enumerate() {
        let size = base + u32::from((i as u32) < extra);
        for _ in 0..size {
            part.push(next);
            next += 1;
        }
    }
    parts
}

fn turan3_clauses(n: u32) -> Vec<Vec<Var>> {
    let parts = turan_parts(n);
    let mut clauses = Vec::new();
    for i in 0..3 {
        let part = &parts[i];
        let next = &parts[(i + 1) % 3];
        // All 3-subsets within the part.
        for a in 0..part.len() {
            for b in a + 1..part.len() {
                for c in b + 1..part.len() {
                    clauses.push(vec![part[a], part[b], part[c]]);
                }
            }
        }
        // Every pair of the part with every variable of the next part.
        for a in 0..part.len() {
            for b in a + 1..part.len() {
                for &v in next {
                    clauses.push(vec![part[a], part[b], v]);
                }
            }
        }
    }
    clauses
}

fn k_subsets(l: u32, k: u32) -> Vec<Vec<Var>> {
    let mut out = Vec::new();
    let mut cur: Vec<Var> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next k-subset of {0..l} in lexicographic order.
        let mut i = k as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 <= l - (k - i as u32) {
                cur[i] += 1;
                for j in i + 1..k as usize {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Count the t-transversals of a clause list over n variables.
fn count_transversals(n: u32, clauses: &[Vec<Var>], t: u32) -> Result<u64> {
    let refs: Vec<&[Var]> = clauses.iter().map(|c| c.as_slice()).collect();
    let cnf = MonotoneCnf::from_clauses(n, &refs)?;
    Ok(cnf.brute_force_transversals(t).members.len() as u64)
}

/// All defect placements for the circular partition system, as lists of
/// 2-sets.  The defective system is defined by the placement that maximizes
/// the count, so we enumerate every placement of the requested shape.
fn turan_defect_candidates(n: u32, defect: Defect) -> Vec<Vec<Vec<Var>>> {
    let mut out = Vec::new();
    match defect {
        Defect::D1 => {
            for a in 0..n {
                for b in a + 1..n {
                    out.push(vec![vec![a, b]]);
                }
            }
        }
        Defect::D2o => {
            for a in 0..n {
                for b in 0..n {
                    for c in b + 1..n {
                        if b != a && c != a {
                            out.push(vec![vec![a, b], vec![a, c]]);
                        }
                    }
                }
            }
        }
        Defect::D2d => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in a..n {
                        for d in c + 1..n {
                            if (c, d) > (a, b) && c != a && c != b && d != a && d != b {
                                out.push(vec![vec![a, b], vec![c, d]]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Build a single block on variables 0..n.
pub fn build_block(spec: BlockSpec) -> Result<MonotoneCnf> {
    let clauses: Vec<Vec<Var>> = match spec {
        BlockSpec::CliqueLK { l, k } => {
            if k == 0 || k > 3 || l < k {
                return Err(invalid(format!("clique K({l},{k}) requires 1 <= k <= 3 and l >= k")));
            }
            k_subsets(l, k)
        }
        BlockSpec::Turan3 { n } => {
            if n < 4 {
                return Err(invalid(format!("partition system T3({n}) requires n >= 4")));
            }
            turan3_clauses(n)
        }
        BlockSpec::CliqueDef { l, defect } => {
            let min_l = match defect {
                Defect::D1 => 3,
                Defect::D2o => 3,
                Defect::D2d => 4,
            };
            if l < min_l {
                return Err(invalid(format!("defective clique Kdef({l},{defect}) requires l >= {min_l}")));
            }
            let mut clauses = k_subsets(l, 3);
            match defect {
                Defect::D1 => clauses.push(vec![0, 1]),
                Defect::D2o => {
                    clauses.push(vec![0, 1]);
                    clauses.push(vec![0, 2]);
                }
                Defect::D2d => {
                    clauses.push(vec![0, 1]);
                    clauses.push(vec![2, 3]);
                }
            }
            clauses
        }
        BlockSpec::TuranDef { n, defect } => {
            if n < 5 {
                return Err(invalid(format!("defective system Tdef({n},{defect}) requires n >= 5")));
            }
            if n > 12 {
                return Err(invalid(format!(
                    "defective system Tdef({n},{defect}) exceeds the supported search size n <= 12"
                )));
            }
            let base = turan3_clauses(n);
            let t = n - 3;
            let mut best: Option<(u64, Vec<Vec<Var>>)> = None;
            for extra in turan_defect_candidates(n, defect) {
                let mut clauses = base.clone();
                clauses.extend(extra.iter().cloned());
                let count = count_transversals(n, &clauses, t)?;
                if best.as_ref().map_or(true, |(c, _)| count > *c) {
                    best = Some((count, clauses));
                }
            }
            best.ok_or_else(|| invalid(format!("no defect placement available for Tdef({n},{defect})")))?.1
        }
        BlockSpec::TwoClause => vec![vec![0, 1]],
        BlockSpec::NThreeTMinus1 { t } => {
            if t < 2 {
                return Err(invalid("the 3t-1 construction requires t >= 2".to_string()));
            }
            if 3 * t - 1 > MAX_VARS {
                return Err(ConstructionError::CombinedUniverseTooLarge { n: (3 * t - 1) as u64 });
            }
            let mut clauses = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 2, 3]];
            for i in 0..t - 2 {
                let base = 5 + 3 * i;
                clauses.push(vec![base, base + 1, base + 2]);
            }
            clauses
        }
    };
    let n = spec.n();
    if n > MAX_VARS {
        return Err(ConstructionError::CombinedUniverseTooLarge { n: n as u64 });
    }
    let refs: Vec<&[Var]> = clauses.iter().map(|c| c.as_slice()).collect();
    Ok(MonotoneCnf::from_clauses(n, &refs)?)
}

/// Disjoint sum of blocks: shift each CNF onto fresh variables and
/// concatenate the clause lists.  An empty list yields the empty CNF on zero
/// variables.
pub fn disjoint_sum(blocks: &[MonotoneCnf]) -> Result<MonotoneCnf> {
    let total: u64 = blocks.iter().map(|b| b.n() as u64).sum();
    if total > MAX_VARS as u64 {
        return Err(ConstructionError::CombinedUniverseTooLarge { n: total });
    }
    let total = total as u32;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut offset = 0;
    for block in blocks {
        let shifted = block.shifted(offset, total)?;
        clauses.extend_from_slice(shifted.clauses());
        offset += block.n();
    }
    Ok(MonotoneCnf::new(total, clauses)?)
}

/// A parametric extremal family member: formula type, deficit s = 3t - n,
/// threshold t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub ftype: FormulaType,
    pub s: i64,
    pub t: u32,
}

/// The block recipe for a family member, before padding.
fn family_blocks(spec: FamilySpec) -> Result<Vec<BlockSpec>> {
    let FamilySpec { ftype, s, t } = spec;
    let t64 = t as i64;
    let err = || invalid(format!("no construction for type {ftype}, s={s}, t={t}"));
    use BlockSpec::*;
    use Defect::*;
    let k3 = |count: i64| -> Vec<BlockSpec> {
        (0..count).map(|_| CliqueLK { l: 3, k: 3 }).collect()
    };
    let k4 = CliqueLK { l: 4, k: 3 };
    // Boundary rows above s = t.
    if s > t64 {
        if s == 2 * t64 && t >= 1 {
            return Ok(vec![CliqueLK { l: t, k: 1 }]);
        }
        if s == 2 * t64 - 1 && t >= 1 {
            return Ok(vec![CliqueLK { l: t + 1, k: 2 }]);
        }
        if s == 2 * t64 - 2 {
            let block = match ftype {
                FormulaType::T0 => CliqueLK { l: t + 2, k: 3 },
                FormulaType::T1 => CliqueDef { l: t + 2, defect: D1 },
                FormulaType::T2o => CliqueDef { l: t + 2, defect: D2o },
                FormulaType::T2d => CliqueDef { l: t + 2, defect: D2d },
                _ => return Err(err()),
            };
            return Ok(vec![block]);
        }
        return Err(err());
    }
    match ftype {
        FormulaType::T0 => {
            if s <= 0 {
                Ok(k3(t64))
            } else if s == 1 {
                if t < 2 {
                    return Err(err());
                }
                let mut v = k3(t64 - 2);
                v.push(Turan3 { n: 5 });
                Ok(v)
            } else if s % 2 == 0 {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take((s / 2) as usize));
                Ok(v)
            } else {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 3) / 2) as usize));
                v.push(Turan3 { n: 6 });
                Ok(v)
            }
        }
        FormulaType::T1 => {
            if s <= 1 {
                if t < 1 {
                    return Err(err());
                }
                let mut v = vec![TwoClause];
                v.extend(k3(t64 - 1));
                Ok(v)
            } else if s % 2 == 0 {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 2) / 2) as usize));
                v.push(CliqueDef { l: 4, defect: D1 });
                Ok(v)
            } else {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 1) / 2) as usize));
                v.push(TwoClause);
                Ok(v)
            }
        }
        FormulaType::T2o => {
            if t == 1 && s <= 0 {
                Ok(vec![CliqueDef { l: 3, defect: D2o }])
            } else if s <= 2 {
                if t < 2 {
                    return Err(err());
                }
                let mut v = vec![CliqueDef { l: 4, defect: D2o }];
                v.extend(k3(t64 - 2));
                Ok(v)
            } else if s % 2 == 0 {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 2) / 2) as usize));
                v.push(CliqueDef { l: 4, defect: D2o });
                Ok(v)
            } else {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 3) / 2) as usize));
                v.push(TuranDef { n: 6, defect: D2o });
                Ok(v)
            }
        }
        FormulaType::T2d => {
            if s <= 2 {
                if t < 2 {
                    return Err(err());
                }
                let mut v = vec![TwoClause, TwoClause];
                v.extend(k3(t64 - 2));
                Ok(v)
            } else if s % 2 == 0 {
                if s < 4 || t < 4 {
                    return Err(err());
                }
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 4) / 2) as usize));
                v.push(CliqueDef { l: 4, defect: D1 });
                v.push(CliqueDef { l: 4, defect: D1 });
                Ok(v)
            } else {
                let mut v = k3(t64 - s);
                v.extend(std::iter::repeat(k4).take(((s - 3) / 2) as usize));
                v.push(CliqueDef { l: 4, defect: D1 });
                v.push(TwoClause);
                Ok(v)
            }
        }
        _ => Err(err()),
    }
}

/// Build the family member for (type, s, t).
///
/// For deficits below the natural deficit of the recipe the formula is padded
/// with unused variables so that the result has deficit exactly s (hence
/// n = 3t - s); padding variables never occur in a minimum transversal, so
/// the threshold and the count are unchanged.
pub fn build_family(spec: FamilySpec) -> Result<MonotoneCnf> {
    let blocks = family_blocks(spec)?;
    let built: Vec<MonotoneCnf> = blocks
        .into_iter()
        .map(build_block)
        .collect::<Result<_>>()?;
    let sum = disjoint_sum(&built)?;
    let target_deficit = spec.s.min(2 * spec.t as i64);
    let natural = 3 * spec.t as i64 - sum.n() as i64;
    if natural < target_deficit {
        return Err(invalid(format!(
            "recipe for type {}, s={}, t={} yields deficit {natural} (expected at least {target_deficit})",
            spec.ftype, spec.s, spec.t
        )));
    }
    let padded_n = (3 * spec.t as i64 - target_deficit) as u64;
    if padded_n > MAX_VARS as u64 {
        return Err(ConstructionError::CombinedUniverseTooLarge { n: padded_n });
    }
    Ok(MonotoneCnf::new(padded_n as u32, sum.clauses().to_vec())?)
}

/// Exact number of minimum transversals of the family member.
pub fn expected_count(spec: FamilySpec) -> Result<BigInt> {
    let FamilySpec { ftype, s, t } = spec;
    let t64 = t as i64;
    let err = || invalid(format!("no construction for type {ftype}, s={s}, t={t}"));
    let pow = |base: i64, e: i64| -> Result<BigInt> {
        let e = u32::try_from(e).map_err(|_| err())?;
        Ok(BigInt::from(base).pow(e))
    };
    if s > t64 {
        if s == 2 * t64 {
            return Ok(BigInt::from(1));
        }
        if s == 2 * t64 - 1 {
            return Ok(BigInt::from(t + 1));
        }
        if s == 2 * t64 - 2 {
            let full = binomial(t + 2, 2);
            return match ftype {
                FormulaType::T0 => Ok(full),
                FormulaType::T1 => Ok(full - 1),
                FormulaType::T2o | FormulaType::T2d => Ok(full - 2),
                _ => Err(err()),
            };
        }
        return Err(err());
    }
    match ftype {
        FormulaType::T0 => {
            if s <= 0 {
                Ok(pow(3, t64)?)
            } else if s == 1 {
                Ok(BigInt::from(7) * pow(3, t64 - 2)?)
            } else if s % 2 == 0 {
                Ok(pow(6, s / 2)? * pow(3, t64 - s)?)
            } else {
                Ok(BigInt::from(14) * pow(6, (s - 3) / 2)? * pow(3, t64 - s)?)
            }
        }
        FormulaType::T1 => {
            if s <= 1 {
                Ok(BigInt::from(2) * pow(3, t64 - 1)?)
            } else if s % 2 == 0 {
                Ok(BigInt::from(5) * pow(6, (s - 2) / 2)? * pow(3, t64 - s)?)
            } else {
                Ok(BigInt::from(2) * pow(6, (s - 1) / 2)? * pow(3, t64 - s)?)
            }
        }
        FormulaType::T2o | FormulaType::T2d => {
            if t == 1 && s <= 0 && ftype == FormulaType::T2o {
                Ok(BigInt::from(1))
            } else if s <= 2 {
                Ok(BigInt::from(4) * pow(3, t64 - 2)?)
            } else if s % 2 == 0 {
                match ftype {
                    FormulaType::T2o => {
                        Ok(BigInt::from(4) * pow(6, (s - 2) / 2)? * pow(3, t64 - s)?)
                    }
                    _ => Ok(BigInt::from(25) * pow(6, (s - 4) / 2)? * pow(3, t64 - s)?),
                }
            } else {
                Ok(BigInt::from(10) * pow(6, (s - 3) / 2)? * pow(3, t64 - s)?)
            }
        }
        _ => Err(err()),
    }
}

/// The special construction on n = 3t - 1 variables with 7·3^{t-2} minimum
/// transversals.
pub fn build_3t_minus_1(t: u32) -> Result<MonotoneCnf> {
    build_block(BlockSpec::NThreeTMinus1 { t })
}

/// Parse a construction spec string into a CNF.
///
/// Grammar (whitespace is ignored):
///
/// ```text
/// spec   := term ('+' term)*
/// term   := (INT '*')? atom
/// atom   := 'K(' INT ',' INT ')'        all-k-subsets clique K_l^k
///         | 'T3(' INT ')'               circular partition system T_n^3
///         | 'Kdef(' INT ',' DEFECT ')'  defective clique
///         | 'Tdef(' INT ',' DEFECT ')'  defective partition system
///         | 'P(s=' INT ',t=' INT ')'    type-0 family member
///         | 'fam(' TYPE ',s=' INT ',t=' INT ')'  family member by type
///         | 'n3tm1(t=' INT ')'          the n = 3t-1 construction
/// DEFECT := '1' | '2o' | '2d'
/// TYPE   := '0' | '1' | '2o' | '2d'
/// ```
///
/// A sum places its terms on disjoint fresh variables.
pub fn parse_spec(input: &str) -> Result<MonotoneCnf> {
    let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(invalid("empty construction spec"));
    }
    let mut parts: Vec<MonotoneCnf> = Vec::new();
    for term in cleaned.split('+') {
        let (mult, atom) = match term.split_once('*') {
            Some((m, rest)) => {
                let m: usize = m
                    .parse()
                    .map_err(|_| invalid(format!("bad multiplier in term {term:?}")))?;
                (m, rest)
            }
            None => (1, term),
        };
        if mult == 0 {
            return Err(invalid(format!("zero multiplier in term {term:?}")));
        }
        let cnf = parse_atom(atom)?;
        for _ in 0..mult {
            parts.push(cnf.clone());
        }
    }
    if parts.len() == 1 {
        Ok(parts.pop().expect("len checked"))
    } else {
        disjoint_sum(&parts)
    }
}

fn parse_defect(s: &str) -> Result<Defect> {
    match s {
        "1" => Ok(Defect::D1),
        "2o" => Ok(Defect::D2o),
        "2d" => Ok(Defect::D2d),
        _ => Err(invalid(format!("unknown defect {s:?} (expected 1, 2o, or 2d)"))),
    }
}

fn parse_ftype(s: &str) -> Result<FormulaType> {
    match s {
        "0" => Ok(FormulaType::T0),
        "1" => Ok(FormulaType::T1),
        "2o" => Ok(FormulaType::T2o),
        "2d" => Ok(FormulaType::T2d),
        _ => Err(invalid(format!(
            "unknown formula type {s:?} (expected 0, 1, 2o, or 2d)"
        ))),
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| invalid(format!("bad {what} in construction spec: {s:?}")))
}

fn parse_keyed(s: &str, key: &str) -> Result<i64> {
    let rest = s
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| invalid(format!("expected `{key}=<int>`, found {s:?}")))?;
    parse_int(rest, key)
}

fn parse_atom(atom: &str) -> Result<MonotoneCnf> {
    let open = atom
        .find('(')
        .ok_or_else(|| invalid(format!("malformed term {atom:?}")))?;
    let head = &atom[..open];
    let args = atom[open..]
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| invalid(format!("unbalanced parentheses in term {atom:?}")))?;
    let fields: Vec<&str> = args.split(',').collect();
    match (head, fields.as_slice()) {
        ("K", [l, k]) => build_block(BlockSpec::CliqueLK {
            l: parse_int(l, "l")?,
            k: parse_int(k, "k")?,
        }),
        ("T3", [n]) => build_block(BlockSpec::Turan3 { n: parse_int(n, "n")? }),
        ("Kdef", [l, d]) => build_block(BlockSpec::CliqueDef {
            l: parse_int(l, "l")?,
            defect: parse_defect(d)?,
        }),
        ("Tdef", [n, d]) => build_block(BlockSpec::TuranDef {
            n: parse_int(n, "n")?,
            defect: parse_defect(d)?,
        }),
        ("P", [s, t]) => build_family(FamilySpec {
            ftype: FormulaType::T0,
            s: parse_keyed(s, "s")?,
            t: parse_keyed(t, "t")? as u32,
        }),
        ("fam", [ty, s, t]) => build_family(FamilySpec {
            ftype: parse_ftype(ty)?,
            s: parse_keyed(s, "s")?,
            t: parse_keyed(t, "t")? as u32,
        }),
        ("n3tm1", [t]) => build_3t_minus_1(parse_keyed(t, "t")? as u32),
        _ => Err(invalid(format!("unknown construction {atom:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn check(cnf: &MonotoneCnf, t: u32, count: u64) {
        assert_eq!(cnf.transversal_number(), t, "threshold mismatch");
        assert_eq!(
            cnf.brute_force_transversals(t).members.len() as u64,
            count,
            "count mismatch"
        );
    }

    #[test]
    fn clique_blocks() {
        // K_l^k is an (l-k+1)-threshold with C(l, l-k+1) minimum transversals.
        for (l, k) in [(3, 3), (4, 3), (5, 3), (2, 2), (4, 2), (3, 1)] {
            let cnf = build_block(BlockSpec::CliqueLK { l, k }).unwrap();
            let t = l - k + 1;
            check(&cnf, t, binomial(l, t).to_u64().unwrap());
        }
    }

    #[test]
    fn partition_system_blocks() {
        for (n, count) in [(5, 7), (6, 14)] {
            let cnf = build_block(BlockSpec::Turan3 { n }).unwrap();
            check(&cnf, n - 3, count);
        }
    }

    #[test]
    fn defective_cliques() {
        let cases = [
            (3, Defect::D1, 2),
            (4, Defect::D1, 5),
            (3, Defect::D2o, 1),
            (4, Defect::D2o, 4),
            (4, Defect::D2d, 4),
            (5, Defect::D2o, 8),
            (5, Defect::D2d, 8),
        ];
        for (l, defect, count) in cases {
            let cnf = build_block(BlockSpec::CliqueDef { l, defect }).unwrap();
            check(&cnf, l - 2, count);
        }
    }

    #[test]
    fn defective_partition_systems() {
        let cases = [
            (5, Defect::D1, 6),
            (6, Defect::D1, 12),
            (5, Defect::D2o, 4),
            (6, Defect::D2o, 10),
            (7, Defect::D2o, 19),
            (5, Defect::D2d, 4),
            (6, Defect::D2d, 10),
            (7, Defect::D2d, 19),
        ];
        for (n, defect, count) in cases {
            let cnf = build_block(BlockSpec::TuranDef { n, defect }).unwrap();
            check(&cnf, n - 3, count);
        }
    }

    #[test]
    fn equal_count_exchange() {
        // K_3^3 + T_6^3 and K_4^3 + T_5^3 have the same threshold and count.
        let a = disjoint_sum(&[
            build_block(BlockSpec::CliqueLK { l: 3, k: 3 }).unwrap(),
            build_block(BlockSpec::Turan3 { n: 6 }).unwrap(),
        ])
        .unwrap();
        let b = disjoint_sum(&[
            build_block(BlockSpec::CliqueLK { l: 4, k: 3 }).unwrap(),
            build_block(BlockSpec::Turan3 { n: 5 }).unwrap(),
        ])
        .unwrap();
        check(&a, 4, 42);
        check(&b, 4, 42);
    }

    #[test]
    fn three_t_minus_one_counts() {
        // Counts frozen from brute force before this module existed:
        // 7·3^{t-2} for t = 2, 3, 4.
        for (t, count) in [(2, 7), (3, 21), (4, 63)] {
            let cnf = build_3t_minus_1(t).unwrap();
            assert_eq!(cnf.n(), 3 * t - 1);
            check(&cnf, t, count);
        }
    }

    /// Golden rows for the type-0 family.
    #[test]
    fn family_type_0() {
        let rows = [
            (3, 0, 1, 3),
            (6, 0, 2, 9),
            (5, 1, 2, 7),
            (8, 1, 3, 21),
            (4, 2, 2, 6),
            (7, 2, 3, 18),
            (6, 3, 3, 14),
            (9, 3, 4, 42),
            (8, 4, 4, 36),
            (5, 4, 3, 10),
            (4, 5, 3, 4),
            (10, 5, 5, 84),
            (3, 6, 3, 1),
        ];
        for (n, s, t, count) in rows {
            let spec = FamilySpec { ftype: FormulaType::T0, s, t };
            let cnf = build_family(spec).unwrap();
            assert_eq!(cnf.n() as i64, n, "n for s={s}, t={t}");
            check(&cnf, t, count);
            assert_eq!(expected_count(spec).unwrap(), BigInt::from(count));
        }
    }

    /// Golden rows for the type-1 family.
    #[test]
    fn family_type_1() {
        let rows = [
            (5, 1, 2, 6),
            (8, 1, 3, 18),
            (4, 2, 2, 5),
            (7, 2, 3, 15),
            (6, 3, 3, 12),
            (8, 4, 4, 30),
            (7, 8, 5, 20),
            (6, 6, 4, 14),
            (5, 7, 4, 5),
            (4, 8, 4, 1),
            (10, 5, 5, 72),
        ];
        for (n, s, t, count) in rows {
            let spec = FamilySpec { ftype: FormulaType::T1, s, t };
            let cnf = build_family(spec).unwrap();
            assert_eq!(cnf.n() as i64, n, "n for s={s}, t={t}");
            check(&cnf, t, count);
            assert_eq!(expected_count(spec).unwrap(), BigInt::from(count));
        }
    }

    /// Golden rows for the overlapping type-2 family.
    #[test]
    fn family_type_2o() {
        let rows = [
            (3, 0, 1, 1),
            (4, 2, 2, 4),
            (5, 1, 2, 4),
            (5, 4, 3, 8),
            (6, 3, 3, 10),
            (6, 6, 4, 13),
            (7, 2, 3, 12),
            (7, 8, 5, 19),
            (8, 4, 4, 24),
            (9, 3, 4, 30),
            (10, 5, 5, 60),
            (11, 4, 5, 72),
            (8, 10, 6, 26),
        ];
        for (n, s, t, count) in rows {
            let spec = FamilySpec { ftype: FormulaType::T2o, s, t };
            let cnf = build_family(spec).unwrap();
            assert_eq!(cnf.n() as i64, n, "n for s={s}, t={t}");
            check(&cnf, t, count);
            assert_eq!(expected_count(spec).unwrap(), BigInt::from(count));
        }
    }

    /// Golden rows for the disjoint type-2 family.
    #[test]
    fn family_type_2d() {
        let rows = [
            (4, 2, 2, 4),
            (5, 1, 2, 4),
            (5, 4, 3, 8),
            (6, 3, 3, 10),
            (6, 6, 4, 13),
            (7, 2, 3, 12),
            (8, 4, 4, 25),
            (9, 3, 4, 30),
            (10, 5, 5, 60),
            (11, 4, 5, 75),
            (6, 9, 5, 6),
        ];
        for (n, s, t, count) in rows {
            let spec = FamilySpec { ftype: FormulaType::T2d, s, t };
            let cnf = build_family(spec).unwrap();
            assert_eq!(cnf.n() as i64, n, "n for s={s}, t={t}");
            check(&cnf, t, count);
            assert_eq!(expected_count(spec).unwrap(), BigInt::from(count));
        }
    }

    #[test]
    fn padding_keeps_threshold_and_count() {
        // Type-1 recipe at s = 0 pads one unused variable to reach n = 3t.
        let spec = FamilySpec { ftype: FormulaType::T1, s: 0, t: 2 };
        let cnf = build_family(spec).unwrap();
        assert_eq!(cnf.n(), 6);
        check(&cnf, 2, 6);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(build_family(FamilySpec { ftype: FormulaType::T3, s: 0, t: 2 }).is_err());
        assert!(build_family(FamilySpec { ftype: FormulaType::T4, s: 2, t: 3 }).is_err());
        // Inside the gap t < s < 2t-2 no construction is stated.
        assert!(build_family(FamilySpec { ftype: FormulaType::T0, s: 5, t: 4 }).is_err());
        assert!(build_block(BlockSpec::CliqueLK { l: 2, k: 3 }).is_err());
    }

    #[test]
    fn spec_strings() {
        let cases = [
            ("K(4,3)", 4, 2, 6),
            ("T3(6)", 6, 3, 14),
            ("Kdef(4,2o)", 4, 2, 4),
            ("Tdef(6,2d)", 6, 3, 10),
            ("2*K(3,3) + K(4,3)", 10, 4, 54),
            ("P(s=1, t=2)", 5, 2, 7),
            ("fam(2d, s=4, t=4)", 8, 4, 25),
            ("n3tm1(t=3)", 8, 3, 21),
            ("K(2,2)+K(2,2)", 4, 2, 4),
        ];
        for (spec, n, t, count) in cases {
            let f = parse_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
            assert_eq!(f.n(), n, "{spec}");
            check(&f, t, count);
        }
        for bad in ["", "K(4)", "Q(3)", "K(4,3)+", "x*K(3,3)", "fam(9,s=1,t=2)"] {
            assert!(parse_spec(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn universe_cap_is_enforced() {
        let err = build_family(FamilySpec { ftype: FormulaType::T0, s: 0, t: 25 }).unwrap_err();
        assert!(matches!(err, ConstructionError::CombinedUniverseTooLarge { .. }));
    }
}
