//! Text format for families.
//!
//! ```text
//! # comment
//! n=4
//! -
//! 1 2
//! 2 3 4
//! ```
//! The first non-comment line is `n=<int>`; each further non-empty line is one
//! set as strictly increasing 1-based elements, with `-` for the empty set.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{canonical_cmp, SetFamily, SetWord};

/// Parses a family file; duplicate sets collapse.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let (n, sets) = parse_sets(text)?;
    SetFamily::new(n, sets)
}

/// Parses a file in the family format without densifying (witness lists keep their order).
pub fn parse_sets(text: &str) -> Result<(usize, Vec<SetWord>)> {
    let mut n: Option<usize> = None;
    let mut sets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(ground) = n else {
            let value = line
                .strip_prefix("n=")
                .ok_or_else(|| Error::Parse { line: line_no, msg: "expected `n=<int>` header".into() })?;
            let v: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: line_no, msg: format!("bad ground size `{value}`") })?;
            if v == 0 {
                return Err(Error::EmptyGround);
            }
            n = Some(v);
            continue;
        };
        if line == "-" {
            sets.push(SetWord::EMPTY);
            continue;
        }
        let mut prev = 0u32;
        let mut elems = Vec::new();
        for tok in line.split_whitespace() {
            let e: u32 =
                tok.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("bad element `{tok}`") })?;
            if e == 0 || e as usize > ground {
                return Err(Error::ElementOutOfRange { element: e, n: ground });
            }
            if e <= prev {
                return Err(Error::Parse { line: line_no, msg: "elements must be strictly increasing".into() });
            }
            prev = e;
            elems.push(e);
        }
        sets.push(SetWord::from_elements(elems)?);
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing `n=<int>` header".into() })?;
    Ok((n, sets))
}

fn write_set(out: &mut String, s: SetWord) {
    if s.is_empty() {
        out.push('-');
    } else {
        let parts: Vec<String> = s.iter().map(|e| e.to_string()).collect();
        out.push_str(&parts.join(" "));
    }
    out.push('\n');
}

/// Writes `sets` in the given order.
pub fn format_sets(n: usize, sets: &[SetWord]) -> String {
    let mut out = String::new();
    writeln!(out, "n={n}").unwrap();
    for &s in sets {
        write_set(&mut out, s);
    }
    out
}

/// Writes a family in canonical order (size, then lexicographic).
pub fn format_family(f: &SetFamily) -> String {
    let mut sets: Vec<SetWord> = f.iter().collect();
    sets.sort_by(canonical_cmp);
    format_sets(f.n(), &sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let text = "# demo\nn=3\n-\n1\n\n1 2\n# trailing\n2 3\n1\n";
        let f = parse_family(text).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.len(), 4);
        assert_eq!(format_family(&f), "n=3\n-\n1\n1 2\n2 3\n");
        assert_eq!(parse_family(&format_family(&f)).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_family("1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_family("n=3\n2 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_family("n=3\n1 4\n"), Err(Error::ElementOutOfRange { element: 4, n: 3 })));
        assert!(matches!(parse_family("n=3\n1 x\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_family("# only\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_family("n=30\n"), Err(Error::DenseLimit { .. })));
    }
}
