//! Instance text format.
//!
//! ```text
//! # comment
//! n t
//! w_1 p_1
//! …
//! w_n p_n
//! ```

use std::fmt::Write as _;

use knapsack_core::instance::Item;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub capacity: u64,
    /// `(w_i, p_i)` in file order.
    pub items: Vec<(u64, u64)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing header line \"n t\"")]
    MissingHeader,
    #[error("header announces {expected} items, found {found}")]
    Count { expected: usize, found: usize },
}

impl InstanceFile {
    pub fn new(capacity: u64, items: Vec<(u64, u64)>) -> InstanceFile {
        InstanceFile { capacity, items }
    }

    pub fn items(&self) -> Vec<Item> {
        self.items.iter().map(|&(w, p)| Item::new(w, p)).collect()
    }

    pub fn total_weight(&self) -> u64 {
        self.items.iter().map(|&(w, _)| w).sum()
    }

    pub fn w_max(&self) -> u64 {
        self.items.iter().map(|&(w, _)| w).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(12 * (self.items.len() + 1));
        writeln!(out, "{} {}", self.items.len(), self.capacity).unwrap();
        for &(w, p) in &self.items {
            writeln!(out, "{w} {p}").unwrap();
        }
        out
    }
}

fn pair(line: usize, text: &str) -> Result<(u64, u64), ParseError> {
    let err = |msg: String| ParseError::Line { line, msg };
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<u64, ParseError> {
        let f = fields.next().ok_or_else(|| err(format!("missing {what}")))?;
        f.parse::<u64>()
            .map_err(|_| err(format!("{what} {f:?} is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = fields.next() {
        return Err(err(format!("unexpected field {extra:?}")));
    }
    Ok((a, b))
}

/// Parses an instance. Lines starting with `#` and blank lines are skipped.
pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, capacity) = pair(hl, header)?;
    let mut items = Vec::with_capacity(n.min(1 << 20) as usize);
    for (line, l) in lines {
        let (w, p) = pair(line, l)?;
        if w == 0 || p == 0 {
            return Err(ParseError::Line {
                line,
                msg: "weights and profits must be at least 1".into(),
            });
        }
        items.push((w, p));
    }
    if items.len() as u64 != n {
        return Err(ParseError::Count {
            expected: n as usize,
            found: items.len(),
        });
    }
    Ok(InstanceFile { capacity, items })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_example() {
        let f = parse_instance("3 6\n2 30\n3 40\n5 50\n").unwrap();
        assert_eq!(f.capacity, 6);
        assert_eq!(f.items, vec![(2, 30), (3, 40), (5, 50)]);
    }

    #[test]
    fn comments_and_empty_instance() {
        let f = parse_instance("# nothing here\n0 5\n").unwrap();
        assert_eq!(f, InstanceFile::new(5, vec![]));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_instance("1 5\n2 x\n"),
            Err(ParseError::Line { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("1 5\n2 3 4\n"),
            Err(ParseError::Line { line: 2, .. })
        ));
        assert!(matches!(parse_instance("1 5\n0 3\n"), Err(ParseError::Line { .. })));
        assert!(matches!(
            parse_instance("2 5\n1 3\n"),
            Err(ParseError::Count { expected: 2, found: 1 })
        ));
        assert_eq!(parse_instance("# only\n"), Err(ParseError::MissingHeader));
        assert!(parse_instance("-1 5\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = InstanceFile::new(9, vec![(1, 2), (7, 7)]);
        assert_eq!(f.to_text(), "2 9\n1 2\n7 7\n");
        assert_eq!(parse_instance(&f.to_text()).unwrap(), f);
    }
}
