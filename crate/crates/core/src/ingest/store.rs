//! Snapshot store: one edge-list file per month, `<dir>/<YYYY-MM>.edges`,
//! with the snapshot provenance carried in leading comment lines.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{io_err, IngestError};
use crate::graph::{read_edge_list, write_edge_list};
use crate::snapshot::{Family, Snapshot, SnapshotSeries, YearMonth};

pub const EXTENSION: &str = "edges";

pub fn snapshot_header(s: &Snapshot) -> Vec<String> {
    vec![
        format!("date: {}", s.date),
        format!("family: {}", s.family),
        format!("monitor-set: {}", s.monitor_set),
        format!("nodes: {}", s.graph.node_count()),
        format!("edges: {}", s.graph.edge_count()),
    ]
}

pub fn write_snapshot(s: &Snapshot, dir: &Path) -> Result<PathBuf, IngestError> {
    let path = dir.join(format!("{}.{EXTENSION}", s.date));
    let f = fs::File::create(&path).map_err(io_err(&path))?;
    let mut w = BufWriter::new(f);
    write_edge_list(&s.graph, &snapshot_header(s), &mut w).map_err(io_err(&path))?;
    w.flush().map_err(io_err(&path))?;
    Ok(path)
}

pub fn write_series(series: &SnapshotSeries, dir: &Path) -> Result<Vec<PathBuf>, IngestError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    series.snapshots().iter().map(|s| write_snapshot(s, dir)).collect()
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot, IngestError> {
    let store_err = |reason: String| IngestError::Store { path: path.to_path_buf(), reason };
    let f = fs::File::open(path).map_err(io_err(path))?;
    let mut date = None;
    let mut family = None;
    let mut set = None;
    for line in BufReader::new(f).lines() {
        let line = line.map_err(io_err(path))?;
        let Some(comment) = line.strip_prefix("# ") else { break };
        if let Some(v) = comment.strip_prefix("date: ") {
            date = Some(v.parse::<YearMonth>().map_err(|e| store_err(e.to_string()))?);
        } else if let Some(v) = comment.strip_prefix("family: ") {
            family = Some(v.parse::<Family>().map_err(store_err)?);
        } else if let Some(v) = comment.strip_prefix("monitor-set: ") {
            set = Some(v.to_string());
        }
    }
    let (Some(date), Some(family), Some(monitor_set)) = (date, family, set) else {
        return Err(store_err("missing date/family/monitor-set header".into()));
    };
    let f = fs::File::open(path).map_err(io_err(path))?;
    let graph = read_edge_list(BufReader::new(f)).map_err(|e| store_err(e.to_string()))?;
    Ok(Snapshot { graph, date, monitor_set, family })
}

/// Reads every `*.edges` snapshot in `dir`. If `dir` holds a `snapshots`
/// subdirectory (the layout `ingest` writes) that one is used instead.
pub fn read_series(dir: &Path) -> Result<SnapshotSeries, IngestError> {
    let nested = dir.join("snapshots");
    let dir = if nested.is_dir() { nested } else { dir.to_path_buf() };
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(io_err(&dir))?
        .map(|e| e.map(|e| e.path()).map_err(io_err(&dir)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some(EXTENSION))
        .collect();
    files.sort();
    let snapshots = files.iter().map(|p| read_snapshot(p)).collect::<Result<Vec<_>, _>>()?;
    let Some(first) = snapshots.first() else {
        return Err(IngestError::Store { path: dir, reason: "no .edges snapshots found".into() });
    };
    let (family, set) = (first.family, first.monitor_set.clone());
    Ok(SnapshotSeries::from_snapshots(family, set, snapshots)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AsGraph;

    #[test]
    fn store_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mk = |d: &str, edges: &[(u32, u32)]| Snapshot {
            graph: AsGraph::from_edges(edges.iter().copied()),
            date: d.parse().unwrap(),
            monitor_set: "Set52".into(),
            family: Family::Ipv4,
        };
        let series = SnapshotSeries::from_snapshots(
            Family::Ipv4,
            "Set52",
            vec![mk("2004-07", &[(1, 2), (2, 3)]), mk("2004-08", &[(1, 2), (2, 3), (3, 4_200_000_001)])],
        )
        .unwrap();
        write_series(&series, dir.path()).unwrap();
        let back = read_series(dir.path()).unwrap();
        assert_eq!(back, series);
    }

    #[test]
    fn missing_header_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("2004-07.edges"), "1 2\n").unwrap();
        assert!(matches!(read_series(dir.path()), Err(IngestError::Store { .. })));
    }
}
