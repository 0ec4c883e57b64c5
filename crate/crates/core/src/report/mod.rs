//! CSV interchange formats and the SVG plots derived from them.

pub mod svg;

use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crossnet::TunnelDistribution;
use crate::ingest::MonthReport;
use crate::metrics::{CcdfPoint, MetricRow};
use crate::phasefit::{month_of, PhaseFit, SeriesPoint};
use crate::snapshot::YearMonth;

pub const METRICS_HEADER: [&str; 9] = ["date", "N", "L", "k_max", "k_avg", "aspl", "C", "rho", "r"];

/// Numeric columns of the metrics CSV, in file order.
pub const METRIC_COLUMNS: [&str; 8] = ["N", "L", "k_max", "k_avg", "aspl", "C", "rho", "r"];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected CSV header {found:?}, expected {expected:?}")]
    Header { expected: String, found: String },
    #[error("unknown metric column '{0}' (expected one of N, L, k_max, k_avg, aspl, C, rho, r)")]
    UnknownColumn(String),
}

/// One line of the metrics CSV. Every value may be absent, which happens
/// when a month's snapshot could not be evaluated at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub date: YearMonth,
    #[serde(rename = "N")]
    pub nodes: Option<usize>,
    #[serde(rename = "L")]
    pub edges: Option<usize>,
    pub k_max: Option<usize>,
    pub k_avg: Option<f64>,
    pub aspl: Option<f64>,
    #[serde(rename = "C")]
    pub clustering: Option<f64>,
    pub rho: Option<f64>,
    pub r: Option<f64>,
}

impl MetricRecord {
    pub fn blank(date: YearMonth) -> Self {
        MetricRecord {
            date,
            nodes: None,
            edges: None,
            k_max: None,
            k_avg: None,
            aspl: None,
            clustering: None,
            rho: None,
            r: None,
        }
    }

    pub fn value(&self, column: &str) -> Result<Option<f64>, ReportError> {
        Ok(match column {
            "N" => self.nodes.map(|v| v as f64),
            "L" => self.edges.map(|v| v as f64),
            "k_max" => self.k_max.map(|v| v as f64),
            "k_avg" => self.k_avg,
            "aspl" => self.aspl,
            "C" => self.clustering,
            "rho" => self.rho,
            "r" => self.r,
            other => return Err(ReportError::UnknownColumn(other.to_string())),
        })
    }
}

impl From<&MetricRow> for MetricRecord {
    fn from(r: &MetricRow) -> Self {
        MetricRecord {
            date: r.date,
            nodes: Some(r.nodes),
            edges: Some(r.edges),
            k_max: Some(r.k_max),
            k_avg: Some(r.k_avg),
            aspl: r.aspl,
            clustering: r.clustering,
            rho: r.rho,
            r: r.r,
        }
    }
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<(), ReportError> {
    let found = rdr.headers()?;
    if found.iter().ne(expected.iter().copied()) {
        return Err(ReportError::Header {
            expected: expected.join(","),
            found: found.iter().collect::<Vec<_>>().join(","),
        });
    }
    Ok(())
}

pub fn write_metrics_csv<W: Write>(records: &[MetricRecord], w: W) -> Result<(), ReportError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(METRICS_HEADER)?;
    for r in records {
        wtr.write_record([
            r.date.to_string(),
            cell(r.nodes),
            cell(r.edges),
            cell(r.k_max),
            cell(r.k_avg),
            cell(r.aspl),
            cell(r.clustering),
            cell(r.rho),
            cell(r.r),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_metrics_csv<R: Read>(r: R) -> Result<Vec<MetricRecord>, ReportError> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &METRICS_HEADER)?;
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}

/// `(date, value)` pairs of one column, skipping empty cells.
pub fn metric_column(records: &[MetricRecord], column: &str) -> Result<Vec<(YearMonth, f64)>, ReportError> {
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        if let Some(v) = r.value(column)? {
            out.push((r.date, v));
        }
    }
    Ok(out)
}

pub fn write_ccdf_csv<W: Write>(ccdf: &[CcdfPoint], w: W) -> Result<(), ReportError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["k", "p"])?;
    for c in ccdf {
        wtr.write_record([c.k.to_string(), c.p.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_ccdf_csv<R: Read>(r: R) -> Result<Vec<CcdfPoint>, ReportError> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &["k", "p"])?;
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}

/// Rows `d,count,probability` followed by `# missing`, `# disconnected`
/// and `# aspl` summary lines.
pub fn write_tunnel_distribution_csv<W: Write>(d: &TunnelDistribution, mut w: W) -> Result<(), ReportError> {
    {
        let mut wtr = csv::Writer::from_writer(&mut w);
        wtr.write_record(["d", "count", "probability"])?;
        for (&dist, &count) in &d.counts {
            wtr.write_record([dist.to_string(), count.to_string(), d.probability(dist).to_string()])?;
        }
        wtr.flush()?;
    }
    writeln!(w, "# missing: {}", d.missing)?;
    writeln!(w, "# disconnected: {}", d.disconnected)?;
    writeln!(w, "# aspl: {}", cell(d.aspl))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TunnelRecord {
    pub date: YearMonth,
    pub aspl: Option<f64>,
    pub p1: f64,
    pub missing: u64,
    pub disconnected: u64,
}

impl TunnelRecord {
    /// `None` for an undated distribution.
    pub fn from_distribution(d: &TunnelDistribution) -> Option<Self> {
        Some(TunnelRecord {
            date: d.date?,
            aspl: d.aspl,
            p1: d.probability(1),
            missing: d.missing,
            disconnected: d.disconnected,
        })
    }
}

const TUNNEL_HEADER: [&str; 5] = ["date", "aspl", "p1", "missing", "disconnected"];

pub fn write_tunnel_series_csv<W: Write>(records: &[TunnelRecord], w: W) -> Result<(), ReportError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(TUNNEL_HEADER)?;
    for r in records {
        wtr.write_record([
            r.date.to_string(),
            cell(r.aspl),
            r.p1.to_string(),
            r.missing.to_string(),
            r.disconnected.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_tunnel_series_csv<R: Read>(r: R) -> Result<Vec<TunnelRecord>, ReportError> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &TUNNEL_HEADER)?;
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}

pub fn write_trajectory_csv<W: Write>(checkpoints: &[(usize, usize)], w: W) -> Result<(), ReportError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["N", "k_max"])?;
    for (n, k) in checkpoints {
        wtr.write_record([n.to_string(), k.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_trajectory_csv<R: Read>(r: R) -> Result<Vec<(usize, usize)>, ReportError> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &["N", "k_max"])?;
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}

pub const FILTER_HEADER: [&str; 8] =
    ["date", "monitors", "total", "accepted", "as_set", "private_asn", "loop", "malformed"];

/// One row per month; `monitors` is a `;`-separated list.
pub fn write_filter_summary_csv<W: Write>(months: &[MonthReport], w: W) -> Result<(), ReportError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(FILTER_HEADER)?;
    for m in months {
        let f = &m.filter;
        wtr.write_record([
            m.date.to_string(),
            m.monitors.join(";"),
            f.total.to_string(),
            f.accepted.to_string(),
            f.as_set.to_string(),
            f.private_asn.to_string(),
            f.loops.to_string(),
            f.malformed.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// One fitted point: the observed value and the value of the segment that
/// covers it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub date: YearMonth,
    pub x: i64,
    pub value: f64,
    pub segment: u8,
    pub trend: String,
    pub fitted: f64,
}

const FIT_HEADER: [&str; 6] = ["date", "x", "value", "segment", "trend", "fitted"];

/// Points whose month cannot be represented are skipped.
pub fn fit_records(origin: YearMonth, points: &[SeriesPoint], fit: &PhaseFit) -> Vec<FitRecord> {
    let split = fit.split.unwrap_or(points.len());
    points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let (segment, seg) = match fit.second_segment {
                Some(second) if i >= split => (2, second),
                _ => (1, fit.first_segment),
            };
            Some(FitRecord {
                date: month_of(origin, p.x)?,
                x: p.x,
                value: p.y,
                segment,
                trend: seg.trend().to_string(),
                fitted: seg.predict(p.x as f64),
            })
        })
        .collect()
}

pub fn write_fit_csv<W: Write>(records: &[FitRecord], w: W) -> Result<(), ReportError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(FIT_HEADER)?;
    for r in records {
        wtr.write_record([
            r.date.to_string(),
            r.x.to_string(),
            r.value.to_string(),
            r.segment.to_string(),
            r.trend.clone(),
            r.fitted.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_fit_csv<R: Read>(r: R) -> Result<Vec<FitRecord>, ReportError> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &FIT_HEADER)?;
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}
