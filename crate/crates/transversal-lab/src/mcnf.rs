//! The `MCNF v1` text format.
//!
//! ```text
//! c optional comment lines
//! p mcnf <n> <m>
//! <sorted 1-based variable indices of clause 1>
//! ...
//! <sorted 1-based variable indices of clause m>
//! ```
//!
//! Serialization emits no comments and sorts clause lines, so
//! parse → serialize round-trips are byte-stable for normalized CNFs.

use crate::cnf::{Clause, CnfError, MonotoneCnf, Var};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum McnfError {
    #[error("missing `p mcnf <n> <m>` header")]
    MissingHeader,
    #[error("malformed header line: {0:?}")]
    BadHeader(String),
    #[error("line {0}: malformed clause line: {1:?}")]
    BadClauseLine(usize, String),
    #[error("line {0}: variable index 0 (indices are 1-based)")]
    ZeroIndex(usize),
    #[error("expected {expected} clause lines, found {found}")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// Parses MCNF v1 text.
pub fn parse(input: &str) -> Result<MonotoneCnf, McnfError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));

    let (n, m) = match lines.next() {
        None => return Err(McnfError::MissingHeader),
        Some((_, header)) => {
            let fields: Vec<&str> = header.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "mcnf", n, m] => {
                    let n: u32 = n.parse().map_err(|_| McnfError::BadHeader(header.into()))?;
                    let m: usize = m.parse().map_err(|_| McnfError::BadHeader(header.into()))?;
                    (n, m)
                }
                _ => return Err(McnfError::BadHeader(header.into())),
            }
        }
    };

    let mut clauses = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let mut vars = Vec::new();
        for field in line.split_whitespace() {
            let idx: u64 = field
                .parse()
                .map_err(|_| McnfError::BadClauseLine(lineno, line.into()))?;
            if idx == 0 {
                return Err(McnfError::ZeroIndex(lineno));
            }
            vars.push((idx - 1) as Var);
        }
        let clause = Clause::new(&vars).map_err(McnfError::Cnf)?;
        clauses.push(clause);
    }
    if clauses.len() != m {
        return Err(McnfError::ClauseCountMismatch { expected: m, found: clauses.len() });
    }
    MonotoneCnf::new(n, clauses).map_err(McnfError::Cnf)
}

/// Serializes to MCNF v1 text (with trailing newline).
pub fn serialize(cnf: &MonotoneCnf) -> String {
    let mut out = format!("p mcnf {} {}\n", cnf.n(), cnf.num_clauses());
    for clause in cnf.clauses() {
        let line: Vec<String> = clause.vars().iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let f = MonotoneCnf::from_clauses(5, &[&[0, 1, 2], &[2, 3, 4], &[0, 1, 3]])
            .unwrap()
            .normalize();
        let text = serialize(&f);
        let g = parse(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(serialize(&g), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "c a comment\n\np mcnf 3 1\nc another\n1 2 3\n";
        let f = parse(text).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.num_clauses(), 1);
    }

    #[test]
    fn errors_are_reported() {
        assert_eq!(parse(""), Err(McnfError::MissingHeader));
        assert!(matches!(parse("p mcnf 3 2\n1 2 3\n"), Err(McnfError::ClauseCountMismatch { .. })));
        assert!(matches!(parse("p mcnf 3 1\n0 1\n"), Err(McnfError::ZeroIndex(_))));
        assert!(matches!(parse("p mcnf 3 1\n1 2 3 1\n"), Err(McnfError::Cnf(_))));
    }
}
