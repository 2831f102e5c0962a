//! Formula typing and structural property detection.
//!
//! A normalized monotone 3-CNF with no unit clauses is typed by its width-2
//! clauses: none (type 0), one (type 1), two overlapping (type 2o), two
//! disjoint (type 2d), three with no variable common to all three (type 3),
//! and otherwise type 4 (at least four 2-clauses, or three sharing a
//! variable).  Within each type, [`find_property`] locates the first
//! structural anchor whose case table from [`crate::tables`] drives the
//! structured enumerator, returning the concrete variables bound to the
//! table's symbolic names.

use crate::bounds::Parity;
use crate::cnf::{mask_to_vars, Clause, MonotoneCnf, Var};
use crate::tables::{self, TableSpec};
use std::fmt;

/// Formula type by 2-clause structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaType {
    T0,
    T1,
    T2o,
    T2d,
    T3,
    T4,
}

impl fmt::Display for FormulaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormulaType::T0 => "0",
            FormulaType::T1 => "1",
            FormulaType::T2o => "2o",
            FormulaType::T2d => "2d",
            FormulaType::T3 => "3",
            FormulaType::T4 => "4",
        };
        write!(f, "{s}")
    }
}

/// Determine the formula type of a normalized CNF with no unit clauses.
pub fn formula_type(cnf: &MonotoneCnf) -> FormulaType {
    debug_assert!(cnf.clauses().iter().all(|c| c.width() >= 2));
    let twos: Vec<u64> = cnf
        .clauses()
        .iter()
        .filter(|c| c.width() == 2)
        .map(|c| c.0)
        .collect();
    match twos.len() {
        0 => FormulaType::T0,
        1 => FormulaType::T1,
        2 => {
            if twos[0] & twos[1] != 0 {
                FormulaType::T2o
            } else {
                FormulaType::T2d
            }
        }
        m => {
            let star = (0..cnf.n()).any(|v| {
                twos.iter().filter(|&&e| e >> v & 1 == 1).count() >= 3
            });
            if star || m >= 4 {
                FormulaType::T4
            } else {
                FormulaType::T3
            }
        }
    }
}

/// A named structural configuration, mostly used for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Configuration {
    /// Pair of variables together in at least three clauses.
    PairInGe3Clauses { a: Var, b: Var },
    /// Variable in at least three clauses whose companion pairs are distinct
    /// and share no variable.
    VarInGe3Clauses { a: Var },
    /// Pair of variables together in exactly two clauses.
    PairInExactly2 { a: Var, b: Var },
    /// Three 3-clauses pairwise sharing one variable, forming a triangle.
    Triangle { corners: [Var; 3] },
    /// A spine clause each of whose variables has exactly one arm clause.
    EConfig { spine: [Var; 3] },
    /// Variable occurring in exactly one clause.
    UniqueVar { a: Var },
    /// Path in the graph of 2-clauses.
    Path { vars: Vec<Var> },
    /// Cycle in the graph of 2-clauses.
    Cycle { vars: Vec<Var> },
}

/// A property match: a case table plus the variables bound to its anchors.
#[derive(Debug, Clone)]
pub struct PropertyMatch {
    pub table: &'static TableSpec,
    pub binding: Vec<(&'static str, Var)>,
}

impl PropertyMatch {
    pub fn id(&self) -> &'static str {
        self.table.id
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.binding.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// Occurrence index over a CNF.
struct Occ<'a> {
    cnf: &'a MonotoneCnf,
    by_var: Vec<Vec<usize>>,
}

impl<'a> Occ<'a> {
    fn new(cnf: &'a MonotoneCnf) -> Self {
        let mut by_var = vec![Vec::new(); cnf.n() as usize];
        for (i, c) in cnf.clauses().iter().enumerate() {
            for v in c.vars() {
                by_var[v as usize].push(i);
            }
        }
        Occ { cnf, by_var }
    }

    fn n(&self) -> Var {
        self.cnf.n()
    }

    fn clause(&self, i: usize) -> Clause {
        self.cnf.clauses()[i]
    }

    fn occ(&self, v: Var) -> usize {
        self.by_var[v as usize].len()
    }

    fn clauses_of(&self, v: Var) -> &[usize] {
        &self.by_var[v as usize]
    }

    /// Clause indices containing every variable of `mask`.
    fn with_all(&self, mask: u64) -> Vec<usize> {
        let v = mask.trailing_zeros();
        self.by_var[v as usize]
            .iter()
            .copied()
            .filter(|&i| self.clause(i).0 & mask == mask)
            .collect()
    }

    /// Companion mask of clause `i` with `mask` removed.
    fn companions(&self, i: usize, mask: u64) -> u64 {
        self.clause(i).0 & !mask
    }
}

fn bit(v: Var) -> u64 {
    1u64 << v
}

fn lowest(mask: u64) -> Var {
    debug_assert!(mask != 0);
    mask.trailing_zeros()
}

/// The two variables of a width-2 mask, in increasing order.
fn edge_vars(mask: u64) -> (Var, Var) {
    let a = mask.trailing_zeros();
    let b = 63 - mask.leading_zeros();
    (a, b)
}

type Binding = Vec<(&'static str, Var)>;

fn pm(table: &'static TableSpec, binding: Binding) -> Option<PropertyMatch> {
    Some(PropertyMatch { table, binding })
}

// ---------------------------------------------------------------------------
// Type 0 detectors.
// ---------------------------------------------------------------------------

fn find_p0_1(occ: &Occ) -> Option<PropertyMatch> {
    for a in 0..occ.n() {
        for b in a + 1..occ.n() {
            let pair = bit(a) | bit(b);
            let hits = occ.with_all(pair);
            if hits.len() < 3 {
                continue;
            }
            let thirds: Vec<Var> = hits[..3]
                .iter()
                .map(|&i| lowest(occ.companions(i, pair)))
                .collect();
            let always_with = |x: Var, y: Var| {
                occ.clauses_of(x).iter().all(|&i| occ.clause(i).0 >> y & 1 == 1)
            };
            let (aa, bb, variant_a) = if always_with(a, b) {
                (a, b, true)
            } else if always_with(b, a) {
                (b, a, true)
            } else {
                (a, b, false)
            };
            let table = if variant_a { &tables::P0_1A } else { &tables::P0_1B };
            return pm(
                table,
                vec![
                    ("a", aa),
                    ("b", bb),
                    ("c", thirds[0]),
                    ("d", thirds[1]),
                    ("e", thirds[2]),
                ],
            );
        }
    }
    None
}

fn find_p0_2(occ: &Occ) -> Option<PropertyMatch> {
    for a in 0..occ.n() {
        let cls = occ.clauses_of(a);
        if cls.len() < 3 {
            continue;
        }
        for i in 0..cls.len() {
            for j in i + 1..cls.len() {
                for k in j + 1..cls.len() {
                    let p1 = occ.companions(cls[i], bit(a));
                    let p2 = occ.companions(cls[j], bit(a));
                    let p3 = occ.companions(cls[k], bit(a));
                    if p1 != p2 && p1 != p3 && p2 != p3 && p1 & p2 & p3 == 0 {
                        return pm(&tables::P0_2, vec![("a", a)]);
                    }
                }
            }
        }
    }
    None
}

fn find_p0_3(occ: &Occ) -> Option<PropertyMatch> {
    for a in 0..occ.n() {
        for b in a + 1..occ.n() {
            let pair = bit(a) | bit(b);
            if occ.with_all(pair).len() == 2 && occ.occ(a) == 2 && occ.occ(b) == 2 {
                return pm(&tables::P0_3, vec![("a", a), ("b", b)]);
            }
        }
    }
    None
}

fn find_p0_4(occ: &Occ) -> Option<PropertyMatch> {
    let m = occ.cnf.num_clauses();
    for i in 0..m {
        for j in i + 1..m {
            let ij = occ.clause(i).0 & occ.clause(j).0;
            if ij.count_ones() != 1 {
                continue;
            }
            for k in j + 1..m {
                let jk = occ.clause(j).0 & occ.clause(k).0;
                let ik = occ.clause(i).0 & occ.clause(k).0;
                if jk.count_ones() != 1 || ik.count_ones() != 1 {
                    continue;
                }
                let (b, c, a) = (lowest(ij), lowest(jk), lowest(ik));
                if a == b || b == c || a == c {
                    continue;
                }
                let corners = bit(a) | bit(b) | bit(c);
                let d = lowest(occ.companions(i, corners));
                let e = lowest(occ.companions(j, corners));
                let fv = lowest(occ.companions(k, corners));
                if (bit(d) | bit(e) | bit(fv)) & corners != 0 {
                    continue;
                }
                if d == e && e == fv {
                    continue;
                }
                if occ.occ(a) != 2 || occ.occ(b) != 2 || occ.occ(c) != 2 {
                    continue;
                }
                return pm(
                    &tables::P0_4,
                    vec![("a", a), ("b", b), ("c", c), ("d", d), ("e", e), ("fv", fv)],
                );
            }
        }
    }
    None
}

fn find_p0_5(occ: &Occ) -> Option<PropertyMatch> {
    'spine: for (i, clause) in occ.cnf.clauses().iter().enumerate() {
        let spine = clause.vars();
        if spine.iter().any(|&v| occ.occ(v) != 2) {
            continue;
        }
        let mut arms = Vec::new();
        for &v in &spine {
            let &arm = occ.clauses_of(v).iter().find(|&&j| j != i)?;
            let comp = occ.companions(arm, bit(v));
            if comp & clause.0 != 0 || comp.count_ones() != 2 {
                continue 'spine;
            }
            arms.push(comp);
        }
        let names = [["d", "e"], ["fv", "g"], ["h", "i"]];
        let mut binding = vec![("a", spine[0]), ("b", spine[1]), ("c", spine[2])];
        for (arm, ns) in arms.iter().zip(names) {
            let (x, y) = edge_vars(*arm);
            binding.push((ns[0], x));
            binding.push((ns[1], y));
        }
        return pm(&tables::P0_5, binding);
    }
    None
}

fn find_p0_6(occ: &Occ) -> Option<PropertyMatch> {
    for a in 0..occ.n() {
        if occ.occ(a) != 1 {
            continue;
        }
        let i = occ.clauses_of(a)[0];
        let rest = occ.companions(i, bit(a));
        if rest.count_ones() != 2 {
            continue;
        }
        let (x, y) = edge_vars(rest);
        if occ.occ(x) == 1 || occ.occ(y) == 1 {
            // Both a and one companion are unique to this clause.
            let (b, c) = if occ.occ(x) == 1 { (x, y) } else { (y, x) };
            return pm(&tables::P0_6B, vec![("a", a), ("b", b), ("c", c)]);
        }
        let (b, c) = (x, y);
        let &bj = occ.clauses_of(b).iter().find(|&&j| j != i)?;
        let &cj = occ.clauses_of(c).iter().find(|&&j| j != i)?;
        let pb = occ.companions(bj, bit(b));
        let pc = occ.companions(cj, bit(c));
        if pb.count_ones() != 2 || pc.count_ones() != 2 || pb & pc != 0 {
            continue;
        }
        let (d, e) = edge_vars(pb);
        let (fv, g) = edge_vars(pc);
        return pm(
            &tables::P0_6A,
            vec![("a", a), ("b", b), ("c", c), ("d", d), ("e", e), ("fv", fv), ("g", g)],
        );
    }
    None
}

// ---------------------------------------------------------------------------
// Type 1 detector.
// ---------------------------------------------------------------------------

fn find_p1(occ: &Occ) -> Option<PropertyMatch> {
    let edge = occ.cnf.clauses().iter().find(|c| c.width() == 2)?;
    let (a, b) = edge_vars(edge.0);
    if occ.occ(a) == 1 {
        pm(&tables::P1_1, vec![("a", a), ("b", b)])
    } else if occ.occ(b) == 1 {
        pm(&tables::P1_1, vec![("a", b), ("b", a)])
    } else {
        pm(&tables::P1_2, vec![("a", a), ("b", b)])
    }
}

// ---------------------------------------------------------------------------
// Type 2o detectors.
// ---------------------------------------------------------------------------

struct Anchor2o {
    a: Var,
    b: Var,
    c: Var,
}

fn anchor_2o(occ: &Occ) -> Option<Anchor2o> {
    let twos: Vec<u64> = occ
        .cnf
        .clauses()
        .iter()
        .filter(|c| c.width() == 2)
        .map(|c| c.0)
        .collect();
    for i in 0..twos.len() {
        for j in i + 1..twos.len() {
            let common = twos[i] & twos[j];
            if common != 0 {
                let a = lowest(common);
                let b = lowest(twos[i] & !common);
                let c = lowest(twos[j] & !common);
                let (b, c) = (b.min(c), b.max(c));
                return Some(Anchor2o { a, b, c });
            }
        }
    }
    None
}

/// 3-clauses containing `v`, in clause order.
fn three_clauses_of(occ: &Occ, v: Var) -> Vec<usize> {
    occ.clauses_of(v)
        .iter()
        .copied()
        .filter(|&i| occ.clause(i).width() == 3)
        .collect()
}

fn find_p2o_even(occ: &Occ, an: &Anchor2o) -> Option<PropertyMatch> {
    let (a, b, c) = (an.a, an.b, an.c);
    // Property 1: the shared variable has a third clause.
    if occ.occ(a) >= 3 {
        return pm(&tables::P2O_1, vec![("a", a), ("b", b), ("c", c)]);
    }
    // Property 2: a partner occurs at least four times.
    for (x, _other) in [(b, c), (c, b)] {
        if occ.occ(x) < 4 {
            continue;
        }
        let cls = three_clauses_of(occ, x);
        let pairs: Vec<u64> = cls[..3].iter().map(|&i| occ.companions(i, bit(x))).collect();
        let common = pairs[0] & pairs[1] & pairs[2];
        if common != 0 {
            let d = lowest(common);
            let mut binding = vec![("a", a), ("b", x), ("d", d)];
            for (p, n) in pairs.iter().zip(["e", "g", "i"]) {
                binding.push((n, lowest(p & !bit(d))));
            }
            return pm(&tables::P2O_2C2, binding);
        }
        return pm(&tables::P2O_2C1, vec![("a", a), ("b", x)]);
    }
    // Property 3: a partner occurs only in its 2-clause.
    for (x, other) in [(b, c), (c, b)] {
        if occ.occ(x) == 1 {
            return pm(&tables::P2O_3, vec![("a", a), ("b", x), ("c", other)]);
        }
    }
    // Property 4: two clauses contain both partners.
    let joint = occ.with_all(bit(b) | bit(c));
    if joint.len() >= 2 {
        let d = lowest(occ.companions(joint[0], bit(b) | bit(c)));
        let e = lowest(occ.companions(joint[1], bit(b) | bit(c)));
        return pm(
            &tables::P2O_4,
            vec![("a", a), ("b", b), ("c", c), ("d", d), ("e", e)],
        );
    }
    // Property 5: one joint clause plus one separate clause on each side.
    if joint.len() == 1 && occ.occ(b) == 3 && occ.occ(c) == 3 {
        let d = lowest(occ.companions(joint[0], bit(b) | bit(c)));
        let sep = |x: Var| -> Option<u64> {
            let i = three_clauses_of(occ, x)
                .into_iter()
                .find(|&i| i != joint[0])?;
            Some(occ.companions(i, bit(x)))
        };
        let pb = sep(b)?;
        let pc = sep(c)?;
        if pb >> d & 1 == 1 {
            return pm(&tables::P2O_5C2, vec![("a", a), ("b", b), ("c", c), ("d", d)]);
        }
        if pc >> d & 1 == 1 {
            return pm(&tables::P2O_5C2, vec![("a", a), ("b", c), ("c", b), ("d", d)]);
        }
        return pm(&tables::P2O_5C1, vec![("a", a), ("b", b), ("c", c), ("d", d)]);
    }
    // Property 6: clauses {b,d,e},{c,d,e} with a shared companion pair, plus
    // another clause containing b but not c.
    for (x, other) in [(b, c), (c, b)] {
        for &i in &three_clauses_of(occ, x) {
            if occ.clause(i).0 >> other & 1 == 1 {
                continue;
            }
            let comp = occ.companions(i, bit(x));
            let mirror = comp | bit(other);
            if !occ.cnf.clauses().iter().any(|cl| cl.0 == mirror) {
                continue;
            }
            let extra = occ.clauses_of(x).iter().any(|&j| {
                j != i
                    && occ.clause(j).width() == 3
                    && occ.clause(j).0 >> other & 1 == 0
            });
            if extra {
                return pm(&tables::P2O_6, vec![("a", a), ("b", x), ("c", other)]);
            }
        }
    }
    // Properties 7 and 8: no joint clause; partners occur 3+3 or 3+2 times.
    if joint.is_empty() {
        let pairs_of = |x: Var| -> Vec<u64> {
            three_clauses_of(occ, x)
                .iter()
                .map(|&i| occ.companions(i, bit(x)))
                .collect()
        };
        if occ.occ(b) == 3 && occ.occ(c) == 3 {
            let (pb, pc) = (pairs_of(b), pairs_of(c));
            let all = [pb[0], pb[1], pc[0], pc[1]];
            let mult = |v: Var| all.iter().filter(|&&p| p >> v & 1 == 1).count();
            let best = (0..occ.n()).filter(|&v| mult(v) >= 3).max_by_key(|&v| mult(v));
            if let Some(d) = best {
                if mult(d) == 4 {
                    return pm(
                        &tables::P2O_7C3,
                        vec![
                            ("a", a),
                            ("b", b),
                            ("c", c),
                            ("d", d),
                            ("e", lowest(pb[0] & !bit(d))),
                            ("g", lowest(pb[1] & !bit(d))),
                            ("ep", lowest(pc[0] & !bit(d))),
                            ("gp", lowest(pc[1] & !bit(d))),
                        ],
                    );
                }
                // d lies in three of the four pairs: orient so both pairs on
                // the b side contain d.
                let (bb, cc, qb, qc) = if pb[0] >> d & 1 == 1 && pb[1] >> d & 1 == 1 {
                    (b, c, pb, pc)
                } else {
                    (c, b, pc, pb)
                };
                if qb[0] >> d & 1 == 1 && qb[1] >> d & 1 == 1 {
                    let with_d = qc.iter().find(|&&p| p >> d & 1 == 1)?;
                    return pm(
                        &tables::P2O_7C2,
                        vec![
                            ("a", a),
                            ("b", bb),
                            ("c", cc),
                            ("d", d),
                            ("e", lowest(qb[0] & !bit(d))),
                            ("g", lowest(qb[1] & !bit(d))),
                            ("ep", lowest(with_d & !bit(d))),
                        ],
                    );
                }
                // The three pairs containing d straddle both sides in a way
                // the printed sub-cases do not cover.
                return None;
            }
            return pm(&tables::P2O_7C1, vec![("a", a), ("b", b), ("c", c)]);
        }
        let counts = (occ.occ(b), occ.occ(c));
        if counts == (3, 2) || counts == (2, 3) {
            let (x, y) = if counts == (3, 2) { (b, c) } else { (c, b) };
            let (px, py) = (pairs_of(x), pairs_of(y));
            let common = px[0] & px[1] & py[0];
            if common != 0 {
                let d = lowest(common);
                return pm(
                    &tables::P2O_8C2,
                    vec![
                        ("a", a),
                        ("b", x),
                        ("c", y),
                        ("d", d),
                        ("e", lowest(px[0] & !bit(d))),
                        ("g", lowest(px[1] & !bit(d))),
                        ("ep", lowest(py[0] & !bit(d))),
                    ],
                );
            }
            let (dp, ep) = edge_vars(py[0]);
            return pm(
                &tables::P2O_8C1,
                vec![("a", a), ("b", x), ("c", y), ("dp", dp), ("ep", ep)],
            );
        }
    }
    // Properties 9 and 10: both partners occur exactly twice.
    if occ.occ(b) == 2 && occ.occ(c) == 2 {
        if joint.len() == 1 {
            let d = lowest(occ.companions(joint[0], bit(b) | bit(c)));
            let table = if occ.occ(d) == 1 { &tables::P2O_9C1 } else { &tables::P2O_9C2 };
            return pm(table, vec![("a", a), ("b", b), ("c", c), ("d", d)]);
        }
        let bi = three_clauses_of(occ, b);
        let (d, e) = edge_vars(occ.companions(bi[0], bit(b)));
        return pm(
            &tables::P2O_10,
            vec![("a", a), ("b", b), ("c", c), ("d", d), ("e", e)],
        );
    }
    None
}

// ---------------------------------------------------------------------------
// Type 2d detectors.
// ---------------------------------------------------------------------------

struct Anchor2d {
    /// The two disjoint 2-clauses as (low, high) variable pairs.
    e1: (Var, Var),
    e2: (Var, Var),
}

fn anchor_2d(occ: &Occ) -> Option<Anchor2d> {
    let twos: Vec<u64> = occ
        .cnf
        .clauses()
        .iter()
        .filter(|c| c.width() == 2)
        .map(|c| c.0)
        .collect();
    for i in 0..twos.len() {
        for j in i + 1..twos.len() {
            if twos[i] & twos[j] == 0 {
                return Some(Anchor2d {
                    e1: edge_vars(twos[i]),
                    e2: edge_vars(twos[j]),
                });
            }
        }
    }
    None
}

fn find_p2d(occ: &Occ, an: &Anchor2d) -> Option<PropertyMatch> {
    let quad = [an.e1.0, an.e1.1, an.e2.0, an.e2.1];
    let quad_mask: u64 = quad.iter().map(|&v| bit(v)).sum();
    let partner = |v: Var| -> (Var, Var, Var) {
        // Returns (partner, other edge low, other edge high).
        if v == an.e1.0 {
            (an.e1.1, an.e2.0, an.e2.1)
        } else if v == an.e1.1 {
            (an.e1.0, an.e2.0, an.e2.1)
        } else if v == an.e2.0 {
            (an.e2.1, an.e1.0, an.e1.1)
        } else {
            (an.e2.0, an.e1.0, an.e1.1)
        }
    };
    // Property 1: some edge variable occurs at least three times.
    let mut sorted = quad;
    sorted.sort_unstable();
    for &v in &sorted {
        if occ.occ(v) < 3 {
            continue;
        }
        let (b, c, d) = partner(v);
        let other_edge = bit(c) | bit(d);
        let cls: Vec<usize> = three_clauses_of(occ, v)
            .into_iter()
            .filter(|&i| occ.companions(i, bit(v)) != other_edge)
            .collect();
        if cls.len() < 2 {
            continue;
        }
        let pe = occ.companions(cls[0], bit(v));
        let pg = occ.companions(cls[1], bit(v));
        let common = pe & pg & other_edge;
        if common != 0 {
            let dv = lowest(common);
            let cv = if dv == c { d } else { c };
            return pm(
                &tables::P2D_1C2,
                vec![
                    ("a", v),
                    ("b", b),
                    ("c", cv),
                    ("d", dv),
                    ("fv", lowest(pe & !bit(dv))),
                    ("h", lowest(pg & !bit(dv))),
                ],
            );
        }
        return pm(&tables::P2D_1C1, vec![("a", v), ("b", b)]);
    }
    // Property 2: a clause joins the two edges.
    for clause in occ.cnf.clauses() {
        if clause.width() != 3 {
            continue;
        }
        let m = clause.0;
        let in1 = m & (bit(an.e1.0) | bit(an.e1.1));
        let in2 = m & (bit(an.e2.0) | bit(an.e2.1));
        if in1.count_ones() == 1 && in2.count_ones() == 1 {
            let a = lowest(in1);
            let (b, _, _) = partner(a);
            return pm(&tables::P2D_2, vec![("a", a), ("b", b)]);
        }
    }
    // Property 3: a pair {e,fv} outside the edges occurs in two clauses whose
    // third variables are edge variables.
    let m = occ.cnf.num_clauses();
    for i in 0..m {
        for j in i + 1..m {
            let (ci, cj) = (occ.clause(i), occ.clause(j));
            if ci.width() != 3 || cj.width() != 3 {
                continue;
            }
            let shared = ci.0 & cj.0;
            if shared.count_ones() != 2 || shared & quad_mask != 0 {
                continue;
            }
            let (g, h) = (lowest(ci.0 & !shared), lowest(cj.0 & !shared));
            if g == h || quad_mask >> g & 1 == 0 || quad_mask >> h & 1 == 0 {
                continue;
            }
            let same_edge = (bit(g) | bit(h)) == (bit(an.e1.0) | bit(an.e1.1))
                || (bit(g) | bit(h)) == (bit(an.e2.0) | bit(an.e2.1));
            let (e, fv) = edge_vars(shared);
            if !same_edge {
                let (pb, _, _) = partner(g);
                let (pd, _, _) = partner(h);
                return pm(
                    &tables::P2D_3C1,
                    vec![("a", g), ("b", pb), ("c", h), ("d", pd)],
                );
            }
            let outside = |v: Var| {
                occ.clauses_of(v)
                    .iter()
                    .any(|&k| k != i && k != j)
            };
            let table = if !outside(e) || !outside(fv) {
                &tables::P2D_3C2
            } else {
                &tables::P2D_3C3
            };
            return pm(table, vec![("a", g), ("b", h), ("e", e), ("fv", fv)]);
        }
    }
    // Property 4: some edge variable occurs only in its 2-clause.
    for &v in &sorted {
        if occ.occ(v) == 1 {
            let (b, _, _) = partner(v);
            return pm(&tables::P2D_4, vec![("a", v), ("b", b)]);
        }
    }
    // Property 5: all edge variables occur exactly twice.
    if quad.iter().all(|&v| occ.occ(v) == 2) {
        for (x, y) in [(an.e1.0, an.e1.1), (an.e2.0, an.e2.1)] {
            let &xi = three_clauses_of(occ, x).first()?;
            let &yi = three_clauses_of(occ, y).first()?;
            let px = occ.companions(xi, bit(x));
            let py = occ.companions(yi, bit(y));
            if px == py {
                continue;
            }
            let (e, fv) = edge_vars(px);
            let (g, h) = edge_vars(py);
            return pm(
                &tables::P2D_5,
                vec![("a", x), ("b", y), ("e", e), ("fv", fv), ("g", g), ("h", h)],
            );
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Type 3 detectors, by shape of the three 2-clauses.
// ---------------------------------------------------------------------------

enum Shape3 {
    Triangle([Var; 3]),
    /// Path a-b-c-d over the three edges.
    Path([Var; 4]),
    /// One edge disjoint from the two others.
    Isolated { edge: (Var, Var), o1: u64, o2: u64 },
}

fn shape_3(twos: &[u64]) -> Option<Shape3> {
    debug_assert_eq!(twos.len(), 3);
    let union = twos[0] | twos[1] | twos[2];
    let pairwise: Vec<u64> = vec![
        twos[0] & twos[1],
        twos[0] & twos[2],
        twos[1] & twos[2],
    ];
    if union.count_ones() == 3 && pairwise.iter().all(|&p| p != 0) {
        let mut corners = mask_to_vars(union);
        corners.sort_unstable();
        return Some(Shape3::Triangle([corners[0], corners[1], corners[2]]));
    }
    // An isolated edge is disjoint from both others.
    for i in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        if twos[i] & twos[others[0]] == 0 && twos[i] & twos[others[1]] == 0 {
            // Prefer path shape when the other two are also disjoint from
            // each other?  No: a path has no edge disjoint from both others,
            // so reaching here rules the path out.
            return Some(Shape3::Isolated {
                edge: edge_vars(twos[i]),
                o1: twos[others[0]],
                o2: twos[others[1]],
            });
        }
    }
    // Otherwise the edges form a path: find the middle edge.
    for i in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let s1 = twos[i] & twos[others[0]];
        let s2 = twos[i] & twos[others[1]];
        if s1 != 0 && s2 != 0 && s1 != s2 {
            let b = lowest(s1);
            let c = lowest(s2);
            let a = lowest(twos[others[0]] & !bit(b));
            let d = lowest(twos[others[1]] & !bit(c));
            return Some(Shape3::Path([a, b, c, d]));
        }
    }
    None
}

fn find_p3_triangle(occ: &Occ, corners: [Var; 3], edges: &[u64]) -> Option<PropertyMatch> {
    let outside = |v: Var| {
        occ.clauses_of(v)
            .iter()
            .filter(|&&i| !edges.contains(&occ.clause(i).0))
            .count()
    };
    let orient = |a: Var| -> Binding {
        let rest: Vec<Var> = corners.iter().copied().filter(|&v| v != a).collect();
        vec![("a", a), ("b", rest[0]), ("c", rest[1])]
    };
    if let Some(&a) = corners.iter().find(|&&v| outside(v) == 0) {
        return pm(&tables::P3T_1, orient(a));
    }
    for &a in corners.iter().filter(|&&v| outside(v) == 1) {
        let &i = occ
            .clauses_of(a)
            .iter()
            .find(|&&i| !edges.contains(&occ.clause(i).0))?;
        let comp = occ.companions(i, bit(a));
        let others: u64 = corners
            .iter()
            .filter(|&&v| v != a)
            .map(|&v| bit(v))
            .sum();
        if comp & others != 0 || comp.count_ones() != 2 {
            continue;
        }
        let (d, e) = edge_vars(comp);
        let mut binding = orient(a);
        binding.push(("d", d));
        binding.push(("e", e));
        return pm(&tables::P3T_2, binding);
    }
    if corners.iter().all(|&v| outside(v) >= 2) {
        return pm(&tables::P3T_3, orient(corners[0]));
    }
    None
}

fn find_p3_path(occ: &Occ, path: [Var; 4]) -> Option<PropertyMatch> {
    let [a, b, c, d] = path;
    let bind = |p: [Var; 4]| vec![("a", p[0]), ("b", p[1]), ("c", p[2]), ("d", p[3])];
    if occ.occ(b) == 2 {
        return pm(&tables::P3P_1, bind(path));
    }
    if occ.occ(c) == 2 {
        return pm(&tables::P3P_1, bind([d, c, b, a]));
    }
    pm(&tables::P3P_2, bind(path))
}

fn find_p3_isolated(
    occ: &Occ,
    edge: (Var, Var),
    o1: u64,
    o2: u64,
    parity: Parity,
) -> Option<PropertyMatch> {
    let (a0, b0) = edge;
    let edge_mask = bit(a0) | bit(b0);
    let other_vars = o1 | o2;
    let overlap = o1 & o2 != 0;
    match parity {
        Parity::Odd => {
            if overlap {
                return pm(&tables::P3IO_1, vec![("a", a0), ("b", b0)]);
            }
            if occ.occ(a0) == 1 {
                return pm(&tables::P3IO_2, vec![("a", a0), ("b", b0)]);
            }
            if occ.occ(b0) == 1 {
                return pm(&tables::P3IO_2, vec![("a", b0), ("b", a0)]);
            }
            pm(&tables::P3IO_3, vec![("a", a0), ("b", b0)])
        }
        Parity::Even => {
            // Case 1: an isolated-edge variable occurs nowhere else.
            if occ.occ(a0) == 1 {
                return pm(&tables::P3IE_1, vec![("a", a0), ("b", b0)]);
            }
            if occ.occ(b0) == 1 {
                return pm(&tables::P3IE_1, vec![("a", b0), ("b", a0)]);
            }
            // Cases 2 and 3: a 3-clause joins the isolated edge to the other
            // edges.
            for (v, w0) in [(a0, b0), (b0, a0)] {
                for &i in &three_clauses_of(occ, v) {
                    let comp = occ.companions(i, bit(v));
                    let touched = comp & other_vars;
                    if touched == 0 {
                        continue;
                    }
                    let w = lowest(touched);
                    let x_mask = comp & !bit(w);
                    if x_mask.count_ones() != 1 {
                        // Clause touches two edge variables; handled by the
                        // first of them below only if it is a single contact.
                        continue;
                    }
                    let x = lowest(x_mask);
                    if o1 >> w & 1 == 1 && o2 >> w & 1 == 1 {
                        let d = lowest(o1 & !bit(w));
                        let e = lowest(o2 & !bit(w));
                        return pm(
                            &tables::P3IE_3,
                            vec![("a", v), ("b", w0), ("c", w), ("d", d), ("e", e), ("x", x)],
                        );
                    }
                    let own = if o1 >> w & 1 == 1 { o1 } else { o2 };
                    let d = lowest(own & !bit(w));
                    return pm(
                        &tables::P3IE_2,
                        vec![("a", v), ("b", w0), ("c", w), ("d", d), ("x", x)],
                    );
                }
            }
            let clean = |comp: u64| comp & (edge_mask | other_vars) == 0;
            let free_clauses = |v: Var| -> Vec<u64> {
                three_clauses_of(occ, v)
                    .iter()
                    .map(|&i| occ.companions(i, bit(v)))
                    .filter(|&c| clean(c))
                    .collect()
            };
            if overlap {
                // Case 4: clause on the isolated edge avoiding all edge vars.
                for (v, w0) in [(a0, b0), (b0, a0)] {
                    if !free_clauses(v).is_empty() {
                        return pm(&tables::P3IE_4, vec![("a", v), ("b", w0)]);
                    }
                }
                return None;
            }
            // Cases 5 and 6: the other edges are disjoint.
            for (v, w0) in [(a0, b0), (b0, a0)] {
                let free = free_clauses(v);
                if free.len() >= 2 {
                    return pm(&tables::P3IE_6, vec![("a", v), ("b", w0)]);
                }
                let Some(&ij) = free.first() else { continue };
                for u in mask_to_vars(other_vars) {
                    for comp in free_clauses(u) {
                        if comp != ij {
                            let own = if o1 >> u & 1 == 1 { o1 } else { o2 };
                            let d = lowest(own & !bit(u));
                            return pm(
                                &tables::P3IE_5,
                                vec![("a", v), ("b", w0), ("c", u), ("d", d)],
                            );
                        }
                    }
                }
            }
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Type 4 detector.
// ---------------------------------------------------------------------------

fn find_p4(occ: &Occ, twos: &[u64]) -> Option<PropertyMatch> {
    let deg = |v: Var| twos.iter().filter(|&&e| e >> v & 1 == 1).count();
    if let Some(a) = (0..occ.n()).find(|&v| deg(v) >= 3) {
        let partners: Vec<Var> = twos
            .iter()
            .filter(|&&e| e >> a & 1 == 1)
            .take(3)
            .map(|&e| lowest(e & !bit(a)))
            .collect();
        return pm(
            &tables::P4_3,
            vec![("a", a), ("b", partners[0]), ("c", partners[1]), ("d", partners[2])],
        );
    }
    let intersecting = (0..twos.len())
        .any(|i| (i + 1..twos.len()).any(|j| twos[i] & twos[j] != 0));
    if !intersecting {
        let (a, b) = edge_vars(twos[0]);
        return pm(&tables::P4_1, vec![("a", a), ("b", b)]);
    }
    let a = (0..occ.n()).find(|&v| deg(v) == 2)?;
    let partners: Vec<Var> = twos
        .iter()
        .filter(|&&e| e >> a & 1 == 1)
        .map(|&e| lowest(e & !bit(a)))
        .collect();
    pm(&tables::P4_2, vec![("a", a), ("b", partners[0]), ("c", partners[1])])
}

// ---------------------------------------------------------------------------
// Entry points.
// ---------------------------------------------------------------------------

/// Locate the first applicable structural property for a normalized CNF of
/// the given type.  `parity` is the parity of the deficit 3t - n at the
/// current node; some property families exist only for one parity.
///
/// Returns `None` when no printed property applies; the enumerator then uses
/// generic clause branching (or, for type 2o, the shared-variable rule).
pub fn find_property(
    cnf: &MonotoneCnf,
    ftype: FormulaType,
    parity: Parity,
) -> Option<PropertyMatch> {
    let occ = Occ::new(cnf);
    let twos: Vec<u64> = cnf
        .clauses()
        .iter()
        .filter(|c| c.width() == 2)
        .map(|c| c.0)
        .collect();
    match ftype {
        FormulaType::T0 => find_p0_1(&occ)
            .or_else(|| find_p0_2(&occ))
            .or_else(|| find_p0_3(&occ))
            .or_else(|| find_p0_4(&occ))
            .or_else(|| find_p0_5(&occ))
            .or_else(|| find_p0_6(&occ)),
        FormulaType::T1 => find_p1(&occ),
        FormulaType::T2o => {
            let an = anchor_2o(&occ)?;
            let fallback = || {
                pm(
                    &tables::P2O_ODD,
                    vec![("a", an.a), ("b", an.b), ("c", an.c)],
                )
            };
            match parity {
                Parity::Odd => fallback(),
                Parity::Even => find_p2o_even(&occ, &an).or_else(fallback),
            }
        }
        FormulaType::T2d => {
            let an = anchor_2d(&occ)?;
            find_p2d(&occ, &an)
        }
        FormulaType::T3 => match shape_3(&twos)? {
            Shape3::Triangle(corners) => find_p3_triangle(&occ, corners, &twos),
            Shape3::Path(path) => find_p3_path(&occ, path),
            Shape3::Isolated { edge, o1, o2 } => {
                find_p3_isolated(&occ, edge, o1, o2, parity)
            }
        },
        FormulaType::T4 => find_p4(&occ, &twos),
    }
}

/// Report the first notable configuration of a normalized CNF, if any.
pub fn detect_configuration(cnf: &MonotoneCnf) -> Option<Configuration> {
    let occ = Occ::new(cnf);
    let twos: Vec<u64> = cnf
        .clauses()
        .iter()
        .filter(|c| c.width() == 2)
        .map(|c| c.0)
        .collect();
    if twos.len() >= 2 {
        // Describe the 2-clause graph: a cycle or the longest path.
        if let Some(shape) = (twos.len() == 3).then(|| shape_3(&twos)).flatten() {
            match shape {
                Shape3::Triangle(c) => {
                    return Some(Configuration::Cycle { vars: c.to_vec() })
                }
                Shape3::Path(p) => return Some(Configuration::Path { vars: p.to_vec() }),
                Shape3::Isolated { .. } => {}
            }
        }
    }
    for a in 0..cnf.n() {
        for b in a + 1..cnf.n() {
            if occ.with_all(bit(a) | bit(b)).len() >= 3 {
                return Some(Configuration::PairInGe3Clauses { a, b });
            }
        }
    }
    if find_p0_2(&occ).is_some() {
        let a = (0..cnf.n()).find(|&v| occ.occ(v) >= 3)?;
        return Some(Configuration::VarInGe3Clauses { a });
    }
    for a in 0..cnf.n() {
        for b in a + 1..cnf.n() {
            if occ.with_all(bit(a) | bit(b)).len() == 2 {
                return Some(Configuration::PairInExactly2 { a, b });
            }
        }
    }
    if let Some(m) = find_p0_4(&occ) {
        return Some(Configuration::Triangle {
            corners: [m.var("a")?, m.var("b")?, m.var("c")?],
        });
    }
    if let Some(m) = find_p0_5(&occ) {
        return Some(Configuration::EConfig {
            spine: [m.var("a")?, m.var("b")?, m.var("c")?],
        });
    }
    if let Some(a) = (0..cnf.n()).find(|&v| occ.occ(v) == 1) {
        return Some(Configuration::UniqueVar { a });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::MonotoneCnf;

    fn cnf(n: u32, clauses: &[&[Var]]) -> MonotoneCnf {
        MonotoneCnf::from_clauses(n, clauses).unwrap()
    }

    #[test]
    fn types_by_two_clause_count() {
        let f = cnf(6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(formula_type(&f), FormulaType::T0);
        let f = cnf(5, &[&[0, 1], &[2, 3, 4]]);
        assert_eq!(formula_type(&f), FormulaType::T1);
        let f = cnf(5, &[&[0, 1], &[0, 2], &[2, 3, 4]]);
        assert_eq!(formula_type(&f), FormulaType::T2o);
        let f = cnf(5, &[&[0, 1], &[2, 3], &[2, 3, 4]]);
        // {2,3,4} is a superset of {2,3}; normalize first.
        assert_eq!(formula_type(&f.normalize()), FormulaType::T2d);
        let f = cnf(6, &[&[0, 1], &[1, 2], &[2, 0]]);
        assert_eq!(formula_type(&f), FormulaType::T3);
        let f = cnf(6, &[&[0, 1], &[0, 2], &[0, 3]]);
        assert_eq!(formula_type(&f), FormulaType::T4);
        let f = cnf(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]);
        assert_eq!(formula_type(&f), FormulaType::T4);
    }

    #[test]
    fn star_of_three_two_clauses_is_type_4() {
        let f = cnf(4, &[&[0, 1], &[0, 2], &[0, 3]]);
        assert_eq!(formula_type(&f), FormulaType::T4);
        let m = find_property(&f, FormulaType::T4, Parity::Odd).unwrap();
        assert_eq!(m.id(), "P4_3");
        assert_eq!(m.var("a"), Some(0));
    }

    #[test]
    fn pair_in_three_clauses_variants() {
        // 0 always occurs with 1.
        let f = cnf(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_1A");
        assert_eq!((m.var("a"), m.var("b")), (Some(0), Some(1)));
        // Both 0 and 1 occur in clauses without the other.
        let f = cnf(
            9,
            &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4], &[0, 5, 6], &[1, 7, 8]],
        );
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_1B");
    }

    #[test]
    fn variant_a_swaps_to_the_covered_variable() {
        // 1 always occurs with 0, but 0 also occurs alone: variant A with
        // roles swapped.
        let f = cnf(7, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4], &[0, 5, 6]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_1A");
        assert_eq!((m.var("a"), m.var("b")), (Some(1), Some(0)));
    }

    #[test]
    fn high_degree_variable() {
        let f = cnf(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_2");
        assert_eq!(m.var("a"), Some(0));
    }

    #[test]
    fn pair_in_exactly_two_clauses() {
        let f = cnf(7, &[&[0, 1, 2], &[0, 1, 3], &[2, 4, 5], &[3, 5, 6]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_3");
        assert_eq!((m.var("a"), m.var("b")), (Some(0), Some(1)));
    }

    #[test]
    fn triangle_of_clauses() {
        let f = cnf(6, &[&[0, 1, 3], &[1, 2, 4], &[0, 2, 5]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_4");
    }

    #[test]
    fn spine_with_arms() {
        let f = cnf(
            9,
            &[&[0, 1, 2], &[0, 3, 4], &[1, 5, 6], &[2, 7, 8]],
        );
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_5");
        assert_eq!(m.var("a"), Some(0));
    }

    #[test]
    fn unique_variable_cases() {
        // 0 unique; 1 and 2 have separate further clauses.
        let f = cnf(7, &[&[0, 1, 2], &[1, 3, 4], &[2, 5, 6]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_6A");
        // 0 and 1 both unique.
        let f = cnf(5, &[&[0, 1, 2], &[2, 3, 4]]);
        let m = find_property(&f, FormulaType::T0, Parity::Even).unwrap();
        assert_eq!(m.id(), "P0_6B");
        assert_eq!(m.var("c"), Some(2));
    }

    #[test]
    fn type_1_properties() {
        let f = cnf(5, &[&[0, 1], &[2, 3, 4]]);
        let m = find_property(&f, FormulaType::T1, Parity::Even).unwrap();
        assert_eq!(m.id(), "P1_1");
        let f = cnf(5, &[&[0, 1], &[0, 2, 3], &[1, 2, 4]]);
        let m = find_property(&f, FormulaType::T1, Parity::Even).unwrap();
        assert_eq!(m.id(), "P1_2");
    }

    #[test]
    fn type_2o_odd_uses_shared_variable_rule() {
        let f = cnf(5, &[&[0, 1], &[0, 2], &[1, 3, 4]]);
        let m = find_property(&f, FormulaType::T2o, Parity::Odd).unwrap();
        assert_eq!(m.id(), "P2O_ODD");
        assert_eq!(m.var("a"), Some(0));
    }

    #[test]
    fn type_2o_even_properties() {
        let f = cnf(5, &[&[0, 1], &[0, 2], &[0, 3, 4]]);
        let m = find_property(&f, FormulaType::T2o, Parity::Even).unwrap();
        assert_eq!(m.id(), "P2O_1");
        // Partner occurring once.
        let f = cnf(5, &[&[0, 1], &[0, 2], &[2, 3, 4]]);
        let m = find_property(&f, FormulaType::T2o, Parity::Even).unwrap();
        assert_eq!(m.id(), "P2O_3");
        assert_eq!(m.var("b"), Some(1));
        // Two joint clauses on the partners.
        let f = cnf(
            7,
            &[&[0, 1], &[0, 2], &[1, 2, 3], &[1, 2, 4], &[3, 5, 6], &[4, 5, 6]],
        );
        let m = find_property(&f, FormulaType::T2o, Parity::Even).unwrap();
        assert_eq!(m.id(), "P2O_4");
    }

    #[test]
    fn type_2d_properties() {
        // Edge variable of degree three.
        let f = cnf(8, &[&[0, 1], &[2, 3], &[0, 4, 5], &[0, 6, 7]]);
        let m = find_property(&f, FormulaType::T2d, Parity::Even).unwrap();
        assert_eq!(m.id(), "P2D_1C1");
        // Joining clause.
        let f = cnf(5, &[&[0, 1], &[2, 3], &[0, 2, 4]]);
        let m = find_property(&f, FormulaType::T2d, Parity::Even).unwrap();
        assert_eq!(m.id(), "P2D_2");
        // Unique edge variable.
        let f = cnf(7, &[&[0, 1], &[2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]]);
        let m = find_property(&f, FormulaType::T2d, Parity::Even).unwrap();
        assert_eq!(m.id(), "P2D_4");
        assert_eq!(m.var("a"), Some(0));
    }

    #[test]
    fn type_3_shapes() {
        let f = cnf(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let m = find_property(&f, FormulaType::T3, Parity::Even).unwrap();
        assert_eq!(m.id(), "P3T_1");
        let f = cnf(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        let m = find_property(&f, FormulaType::T3, Parity::Even).unwrap();
        assert_eq!(m.id(), "P3P_1");
        // Isolated edge, odd parity, other edges overlapping.
        let f = cnf(5, &[&[0, 1], &[2, 3], &[2, 4]]);
        let m = find_property(&f, FormulaType::T3, Parity::Odd).unwrap();
        assert_eq!(m.id(), "P3IO_1");
    }

    #[test]
    fn type_4_properties() {
        let f = cnf(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]);
        let m = find_property(&f, FormulaType::T4, Parity::Odd).unwrap();
        assert_eq!(m.id(), "P4_1");
        let f = cnf(6, &[&[0, 1], &[0, 2], &[3, 4], &[3, 5]]);
        let m = find_property(&f, FormulaType::T4, Parity::Odd).unwrap();
        assert_eq!(m.id(), "P4_2");
    }
}
