//! Dated snapshots and snapshot series.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::AsGraph;

/// Calendar month, rendered and parsed as `YYYY-MM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct YearMonth {
    year: u16,
    month: u8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid month {0:?}, expected YYYY-MM")]
pub struct YearMonthParseError(pub String);

impl YearMonth {
    pub fn new(year: u16, month: u8) -> Option<Self> {
        (1..=12).contains(&month).then_some(YearMonth { year, month })
    }

    pub fn year(self) -> u16 {
        self.year
    }

    pub fn month(self) -> u8 {
        self.month
    }

    fn ordinal(self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    /// Signed number of months from `origin` to `self`.
    pub fn months_since(self, origin: YearMonth) -> i64 {
        self.ordinal() - origin.ordinal()
    }

    pub fn add_months(self, n: i64) -> Option<YearMonth> {
        let o = self.ordinal() + n;
        if o < 0 {
            return None;
        }
        let year = u16::try_from(o / 12).ok()?;
        Some(YearMonth { year, month: (o % 12) as u8 + 1 })
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for YearMonth {
    type Err = YearMonthParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || YearMonthParseError(s.to_string());
        let b = s.as_bytes();
        if b.len() != 7 || b[4] != b'-' || !b[..4].iter().chain(&b[5..]).all(u8::is_ascii_digit) {
            return Err(err());
        }
        let year: u16 = s[..4].parse().map_err(|_| err())?;
        let month: u8 = s[5..].parse().map_err(|_| err())?;
        YearMonth::new(year, month).ok_or_else(err)
    }
}

impl TryFrom<String> for YearMonth {
    type Error = YearMonthParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<YearMonth> for String {
    fn from(d: YearMonth) -> String {
        d.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ipv4,
    Ipv6,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ipv4 => "ipv4",
            Family::Ipv6 => "ipv6",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ipv4" => Ok(Family::Ipv4),
            "ipv6" => Ok(Family::Ipv6),
            other => Err(format!("unknown address family {other:?}, expected ipv4 or ipv6")),
        }
    }
}

/// One month's merged topology.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub graph: AsGraph,
    pub date: YearMonth,
    pub monitor_set: String,
    pub family: Family,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("snapshot {date} is not after the previous snapshot {previous}")]
    OutOfOrder { date: YearMonth, previous: YearMonth },
    #[error("snapshot {date} is {found_family}/{found_set}, series is {family}/{set}")]
    Mismatch { date: YearMonth, family: Family, set: String, found_family: Family, found_set: String },
}

/// Snapshots of one family and monitor set, strictly increasing by date.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSeries {
    family: Family,
    monitor_set: String,
    snapshots: Vec<Snapshot>,
}

impl SnapshotSeries {
    pub fn new(family: Family, monitor_set: impl Into<String>) -> Self {
        SnapshotSeries { family, monitor_set: monitor_set.into(), snapshots: Vec::new() }
    }

    /// Sorts `snapshots` by date and builds a series. Fails on duplicate
    /// dates or mixed family/monitor set.
    pub fn from_snapshots(
        family: Family,
        monitor_set: impl Into<String>,
        mut snapshots: Vec<Snapshot>,
    ) -> Result<Self, SeriesError> {
        snapshots.sort_by_key(|s| s.date);
        let mut series = Self::new(family, monitor_set);
        for s in snapshots {
            series.push(s)?;
        }
        Ok(series)
    }

    pub fn push(&mut self, snapshot: Snapshot) -> Result<(), SeriesError> {
        if snapshot.family != self.family || snapshot.monitor_set != self.monitor_set {
            return Err(SeriesError::Mismatch {
                date: snapshot.date,
                family: self.family,
                set: self.monitor_set.clone(),
                found_family: snapshot.family,
                found_set: snapshot.monitor_set,
            });
        }
        if let Some(last) = self.snapshots.last() {
            if snapshot.date <= last.date {
                return Err(SeriesError::OutOfOrder { date: snapshot.date, previous: last.date });
            }
        }
        self.snapshots.push(snapshot);
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn monitor_set(&self) -> &str {
        &self.monitor_set
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn get(&self, date: YearMonth) -> Option<&Snapshot> {
        self.snapshots.binary_search_by_key(&date, |s| s.date).ok().map(|i| &self.snapshots[i])
    }

    pub fn dates(&self) -> impl Iterator<Item = YearMonth> + '_ {
        self.snapshots.iter().map(|s| s.date)
    }
}
