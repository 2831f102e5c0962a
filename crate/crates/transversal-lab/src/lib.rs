//! Local-enumeration machinery for monotone 3-CNFs.
//!
//! The crate is organised around a single central object, [`cnf::MonotoneCnf`]:
//! a monotone CNF over at most 64 variables whose clauses have width 1–3.
//!
//! * [`cnf`] — representation, normalization, restriction, and brute-force
//!   transversal computation.
//! * [`mcnf`] — the `MCNF v1` text format (parse / serialize, byte-stable
//!   round-trips for normalized CNFs).
//! * [`constructions`] — generators for the named extremal building blocks
//!   (cliques, circular partition systems, defective variants) and the
//!   parametric families, together with their closed-form counts.
//! * [`bounds`] — exact rational evaluation of the per-type upper-bound
//!   formulas Φ_i(s,t) and related boundary values.
//! * [`classify`] — formula-type detection (T0/T1/T2o/T2d/T3/T4), structural
//!   configurations, and selection of the branching property that applies.
//! * [`tables`] — the encoded branching case tables (rows, deltas, expected
//!   types, certified fraction columns) plus the static table audit.
//! * [`enumerate`] — the structured branching enumerator of minimum-size
//!   transversals, with a generic clause-branching mode and bound
//!   certification.
//! * [`oracle`] — independent brute-force ground truth: exhaustive extremality
//!   search for n ≤ 6 and construction verification.
//! * [`circuits`] — monotone depth-3 (OR of 3-CNF) circuit construction for
//!   threshold functions, with exhaustive verification and size accounting.
//!
//! Variable indices are 0-based internally and 1-based in all external text.

pub mod bounds;
pub mod circuits;
pub mod classify;
pub mod cnf;
pub mod constructions;
pub mod enumerate;
pub mod mcnf;
pub mod oracle;
pub mod tables;

/// Number of worker threads to use, honoring the `TRANSVERSAL_LAB_JOBS`
/// environment variable (falls back to the rayon default when unset or
/// unparsable).
pub fn configured_jobs() -> Option<usize> {
    std::env::var("TRANSVERSAL_LAB_JOBS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
}
