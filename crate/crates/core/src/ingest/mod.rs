//! Path-file ingestion: parse per-monitor AS-path dumps, filter them, and
//! merge all monitors of a month into one snapshot.
//!
//! On-disk layout is `<root>/<YYYY-MM>/<monitor_id>.paths`. Every path file
//! starts with a three-line header:
//!
//! ```text
//! # date: 2001-05
//! # monitor: oix
//! # family: ipv4
//! ```
//!
//! followed by one whitespace-separated AS path per line (origin last).
//! Further `#` lines are comments, blank lines are skipped.

mod path;
pub mod store;

pub use path::{is_private_asn, parse_path_line, AsPath, FilterReport, Rejection};

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::AsGraph;
use crate::snapshot::{Family, SeriesError, Snapshot, SnapshotSeries, YearMonth};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Header { path: PathBuf, line: usize, reason: String },
    #[error("{path}: header date {header} does not match directory {directory}")]
    DateMismatch { path: PathBuf, header: YearMonth, directory: YearMonth },
    #[error("{path}: header monitor {header:?} does not match file name {file:?}")]
    MonitorMismatch { path: PathBuf, header: String, file: String },
    #[error("monitor {monitor} ({date}, {family}) does not match {expected_date}, {expected_family}")]
    MixedInput { monitor: String, date: YearMonth, family: Family, expected_date: YearMonth, expected_family: Family },
    #[error("no monitor data to merge")]
    NoInput,
    #[error("{path}: {reason}")]
    MonitorSet { path: PathBuf, reason: String },
    #[error("no path files for monitor set {set:?} under {root}")]
    NoSnapshots { root: PathBuf, set: String },
    #[error("{path}: {reason}")]
    Store { path: PathBuf, reason: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> IngestError + '_ {
    move |source| IngestError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFileMeta {
    pub date: YearMonth,
    pub monitor_id: String,
    pub family: Family,
}

/// Result of parsing one path file.
#[derive(Debug, Clone)]
pub struct PathFile {
    pub meta: PathFileMeta,
    pub paths: Vec<AsPath>,
    pub report: FilterReport,
}

fn header_field<'a>(line: Option<&'a str>, key: &str, n: usize, path: &Path) -> Result<&'a str, IngestError> {
    let prefix = format!("# {key}: ");
    line.and_then(|l| l.strip_prefix(prefix.as_str())).map(str::trim_end).filter(|v| !v.is_empty()).ok_or_else(|| {
        IngestError::Header { path: path.to_path_buf(), line: n, reason: format!("expected \"{prefix}<value>\"") }
    })
}

/// Parses a path file from `reader`; `path` is only used in error messages.
pub fn parse_path_file<R: BufRead>(reader: R, path: &Path) -> Result<PathFile, IngestError> {
    let mut lines = reader.lines();
    let mut next = || lines.next().transpose().map_err(io_err(path));
    let l1 = next()?;
    let l2 = next()?;
    let l3 = next()?;
    let header_err = |line, reason: String| IngestError::Header { path: path.to_path_buf(), line, reason };

    let date_s = header_field(l1.as_deref(), "date", 1, path)?;
    let date = date_s.parse().map_err(|e| header_err(1, format!("{e}")))?;
    let monitor_id = header_field(l2.as_deref(), "monitor", 2, path)?.to_string();
    let family = header_field(l3.as_deref(), "family", 3, path)?.parse().map_err(|e| header_err(3, e))?;

    let mut report = FilterReport::default();
    let mut paths = Vec::new();
    while let Some(line) = next()? {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let outcome = parse_path_line(trimmed);
        report.record(&outcome);
        if let Ok(p) = outcome {
            paths.push(p);
        }
    }
    Ok(PathFile { meta: PathFileMeta { date, monitor_id, family }, paths, report })
}

pub fn read_path_file(path: &Path) -> Result<PathFile, IngestError> {
    let f = fs::File::open(path).map_err(io_err(path))?;
    parse_path_file(BufReader::new(f), path)
}

/// Graph whose edges are the adjacent hop pairs of `paths`.
///
/// Single-hop paths reveal no link and therefore add no node.
pub fn build_graph<'a, I>(paths: I) -> AsGraph
where
    I: IntoIterator<Item = &'a AsPath>,
{
    let mut g = AsGraph::new();
    for p in paths {
        for (u, v) in p.links() {
            g.add_edge(u, v);
        }
    }
    g
}

/// Merges the filtered paths of several monitors from the same month and
/// family into one snapshot labelled `monitor_set`.
pub fn merge_monitors(per_monitor: &[(PathFileMeta, Vec<AsPath>)], monitor_set: &str) -> Result<Snapshot, IngestError> {
    let (first, _) = per_monitor.first().ok_or(IngestError::NoInput)?;
    for (meta, _) in per_monitor {
        if meta.date != first.date || meta.family != first.family {
            return Err(IngestError::MixedInput {
                monitor: meta.monitor_id.clone(),
                date: meta.date,
                family: meta.family,
                expected_date: first.date,
                expected_family: first.family,
            });
        }
    }
    let graph = build_graph(per_monitor.iter().flat_map(|(_, paths)| paths));
    Ok(Snapshot { graph, date: first.date, monitor_set: monitor_set.to_string(), family: first.family })
}

/// Which monitors contribute to a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorSet {
    pub label: String,
    /// `None` selects every monitor found on disk.
    pub members: Option<BTreeSet<String>>,
}

impl MonitorSet {
    pub fn all() -> Self {
        MonitorSet { label: "ALL".into(), members: None }
    }

    pub fn of<I, S>(label: &str, members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        MonitorSet { label: label.into(), members: Some(members.into_iter().map(Into::into).collect()) }
    }

    pub fn contains(&self, monitor: &str) -> bool {
        self.members.as_ref().is_none_or(|m| m.contains(monitor))
    }

    /// Parses the monitor-set file format: a `# set: <name>` header, then
    /// one monitor id per line. A line holding only `*` selects all monitors.
    pub fn parse(text: &str, path: &Path) -> Result<Self, IngestError> {
        let err = |reason: &str| IngestError::MonitorSet { path: path.to_path_buf(), reason: reason.into() };
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let label = lines
            .next()
            .and_then(|l| l.strip_prefix("# set:"))
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .ok_or_else(|| err("expected \"# set: <name>\" header"))?
            .to_string();
        let mut members = BTreeSet::new();
        let mut wildcard = false;
        for l in lines.filter(|l| !l.starts_with('#')) {
            if l == "*" {
                wildcard = true;
            } else if l.contains(char::is_whitespace) || l.contains('/') {
                return Err(err(&format!("invalid monitor id {l:?}")));
            } else {
                members.insert(l.to_string());
            }
        }
        if wildcard {
            return Ok(MonitorSet { label, members: None });
        }
        if members.is_empty() {
            return Err(err("monitor set lists no monitors"));
        }
        Ok(MonitorSet { label, members: Some(members) })
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text, path)
    }
}

/// Filter accounting for one month of a loaded series.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthReport {
    pub date: YearMonth,
    pub monitors: Vec<String>,
    pub filter: FilterReport,
}

#[derive(Debug, Clone)]
pub struct LoadedSeries {
    pub series: SnapshotSeries,
    pub reports: Vec<MonthReport>,
}

/// Path files under `root` that belong to `set`, sorted by month and
/// monitor id.
pub fn discover_files(root: &Path, set: &MonitorSet) -> Result<Vec<(YearMonth, String, PathBuf)>, IngestError> {
    let mut out = Vec::new();
    for entry in fs::read_dir(root).map_err(io_err(root))? {
        let entry = entry.map_err(io_err(root))?;
        let dir = entry.path();
        let Some(date) = dir.file_name().and_then(|n| n.to_str()).and_then(|n| n.parse::<YearMonth>().ok()) else {
            continue;
        };
        if !dir.is_dir() {
            continue;
        }
        for f in fs::read_dir(&dir).map_err(io_err(&dir))? {
            let f = f.map_err(io_err(&dir))?.path();
            if f.extension().and_then(|e| e.to_str()) != Some("paths") {
                continue;
            }
            let Some(monitor) = f.file_stem().and_then(|s| s.to_str()) else { continue };
            if set.contains(monitor) {
                out.push((date, monitor.to_string(), f.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Loads every month under `root` restricted to `set` into a series.
pub fn load_series(root: &Path, set: &MonitorSet) -> Result<LoadedSeries, IngestError> {
    let files = discover_files(root, set)?;
    if files.is_empty() {
        return Err(IngestError::NoSnapshots { root: root.to_path_buf(), set: set.label.clone() });
    }
    let parsed: Vec<PathFile> = files
        .par_iter()
        .map(|(date, monitor, path)| {
            let pf = read_path_file(path)?;
            if pf.meta.date != *date {
                return Err(IngestError::DateMismatch { path: path.clone(), header: pf.meta.date, directory: *date });
            }
            if pf.meta.monitor_id != *monitor {
                return Err(IngestError::MonitorMismatch {
                    path: path.clone(),
                    header: pf.meta.monitor_id.clone(),
                    file: monitor.clone(),
                });
            }
            Ok(pf)
        })
        .collect::<Result<_, _>>()?;

    let family = parsed[0].meta.family;
    let mut snapshots = Vec::new();
    let mut reports = Vec::new();
    for month in parsed.chunk_by(|a, b| a.meta.date == b.meta.date) {
        let mut filter = FilterReport::default();
        let mut per_monitor = Vec::with_capacity(month.len());
        for pf in month {
            if pf.meta.family != family {
                return Err(IngestError::MixedInput {
                    monitor: pf.meta.monitor_id.clone(),
                    date: pf.meta.date,
                    family: pf.meta.family,
                    expected_date: pf.meta.date,
                    expected_family: family,
                });
            }
            filter.merge(&pf.report);
            per_monitor.push((pf.meta.clone(), pf.paths.clone()));
        }
        snapshots.push(merge_monitors(&per_monitor, &set.label)?);
        reports.push(MonthReport {
            date: month[0].meta.date,
            monitors: month.iter().map(|pf| pf.meta.monitor_id.clone()).collect(),
            filter,
        });
    }
    let series = SnapshotSeries::from_snapshots(family, set.label.clone(), snapshots)?;
    Ok(LoadedSeries { series, reports })
}
