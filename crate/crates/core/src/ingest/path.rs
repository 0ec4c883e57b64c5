//! AS-path line parsing and filtering.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::AsNumber;

/// Prepend-collapsed AS path, origin last. Never empty and never holds two
/// equal consecutive hops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AsPath(Vec<AsNumber>);

impl AsPath {
    pub fn hops(&self) -> &[AsNumber] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adjacent hop pairs, i.e. the AS links this path reveals.
    pub fn links(&self) -> impl Iterator<Item = (AsNumber, AsNumber)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

impl TryFrom<Vec<u32>> for AsPath {
    type Error = Rejection;

    /// Collapses prepending and rejects loops; used mostly by tests and
    /// programmatic callers.
    fn try_from(hops: Vec<u32>) -> Result<Self, Rejection> {
        collapse_and_check(hops.into_iter().map(AsNumber).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    AsSet,
    PrivateAsn,
    Loop,
    Malformed,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::AsSet => "as_set",
            Rejection::PrivateAsn => "private_asn",
            Rejection::Loop => "loop",
            Rejection::Malformed => "malformed",
        })
    }
}

/// Private-use, reserved and AS_TRANS numbers. A path carrying any of them
/// is not a public path.
pub fn is_private_asn(asn: AsNumber) -> bool {
    matches!(
        asn.0,
        0 | 23456 | 64512..=65534 | 65535 | 4_200_000_000..=4_294_967_294 | u32::MAX
    )
}

fn is_set_token(tok: &str) -> bool {
    tok.contains(['{', '}', ','])
}

/// Parses one data line of a path file.
///
/// Rejection reasons are checked as malformed, then AS set, then private
/// ASN, then loop, so every line gets exactly one deterministic reason.
pub fn parse_path_line(line: &str) -> Result<AsPath, Rejection> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Rejection::Malformed);
    }
    let mut has_set = false;
    let mut hops = Vec::with_capacity(tokens.len());
    for tok in &tokens {
        if is_set_token(tok) {
            has_set = true;
            continue;
        }
        match tok.parse::<u32>() {
            Ok(v) => hops.push(AsNumber(v)),
            Err(_) => return Err(Rejection::Malformed),
        }
    }
    if has_set {
        return Err(Rejection::AsSet);
    }
    if hops.iter().copied().any(is_private_asn) {
        return Err(Rejection::PrivateAsn);
    }
    collapse_and_check(hops)
}

fn collapse_and_check(mut hops: Vec<AsNumber>) -> Result<AsPath, Rejection> {
    if hops.is_empty() {
        return Err(Rejection::Malformed);
    }
    hops.dedup();
    let mut seen = HashSet::with_capacity(hops.len());
    if !hops.iter().all(|h| seen.insert(*h)) {
        return Err(Rejection::Loop);
    }
    Ok(AsPath(hops))
}

/// Per-reason line counts for one file or an aggregate of files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub total: u64,
    pub accepted: u64,
    pub as_set: u64,
    pub private_asn: u64,
    #[serde(rename = "loop")]
    pub loops: u64,
    pub malformed: u64,
}

impl FilterReport {
    pub fn record(&mut self, outcome: &Result<AsPath, Rejection>) {
        self.total += 1;
        match outcome {
            Ok(_) => self.accepted += 1,
            Err(Rejection::AsSet) => self.as_set += 1,
            Err(Rejection::PrivateAsn) => self.private_asn += 1,
            Err(Rejection::Loop) => self.loops += 1,
            Err(Rejection::Malformed) => self.malformed += 1,
        }
    }

    pub fn rejected(&self) -> u64 {
        self.as_set + self.private_asn + self.loops + self.malformed
    }

    pub fn is_balanced(&self) -> bool {
        self.accepted + self.rejected() == self.total
    }

    pub fn merge(&mut self, other: &FilterReport) {
        self.total += other.total;
        self.accepted += other.accepted;
        self.as_set += other.as_set;
        self.private_asn += other.private_asn;
        self.loops += other.loops;
        self.malformed += other.malformed;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hops(p: &AsPath) -> Vec<u32> {
        p.hops().iter().map(|a| a.0).collect()
    }

    #[test]
    fn accepts_and_collapses() {
        assert_eq!(hops(&parse_path_line("701 1239 3356").unwrap()), [701, 1239, 3356]);
        assert_eq!(hops(&parse_path_line("701 1239 1239 3356").unwrap()), [701, 1239, 3356]);
        assert_eq!(hops(&parse_path_line("  3356\t3356 ").unwrap()), [3356]);
    }

    #[test]
    fn rejection_reasons() {
        assert_eq!(parse_path_line("701 {64600,3356} 174"), Err(Rejection::AsSet));
        assert_eq!(parse_path_line("701 {3356} 174"), Err(Rejection::AsSet));
        assert_eq!(parse_path_line("701 64512 3356"), Err(Rejection::PrivateAsn));
        assert_eq!(parse_path_line("701 1239 701 174"), Err(Rejection::Loop));
        assert_eq!(parse_path_line(""), Err(Rejection::Malformed));
        assert_eq!(parse_path_line("701 abc 174"), Err(Rejection::Malformed));
        assert_eq!(parse_path_line("701 4294967296"), Err(Rejection::Malformed));
    }

    #[test]
    fn rejection_precedence() {
        // malformed beats AS set, AS set beats private, private beats loop
        assert_eq!(parse_path_line("x {1,2} 3"), Err(Rejection::Malformed));
        assert_eq!(parse_path_line("64512 {1,2} 3"), Err(Rejection::AsSet));
        assert_eq!(parse_path_line("1 64512 2 1"), Err(Rejection::PrivateAsn));
    }

    #[test]
    fn private_ranges() {
        for v in [0, 23456, 64512, 65000, 65534, 65535, 4_200_000_000, 4_294_967_294] {
            assert!(is_private_asn(AsNumber(v)), "{v}");
        }
        for v in [1, 701, 64511, 65536, 4_199_999_999, 397_000] {
            assert!(!is_private_asn(AsNumber(v)), "{v}");
        }
    }

    #[test]
    fn report_accounting() {
        let mut r = FilterReport::default();
        for line in ["1 2", "1 {2}", "1 64512", "1 2 1", "?", "3 3 4"] {
            r.record(&parse_path_line(line));
        }
        assert_eq!((r.total, r.accepted, r.as_set, r.private_asn, r.loops, r.malformed), (6, 2, 1, 1, 1, 1));
        assert!(r.is_balanced());
    }
}
