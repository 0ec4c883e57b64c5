//! SVG renderings of the CSV outputs. Each function takes only the parsed
//! CSV rows, so `report` reproduces exactly what the original command wrote.

use asevo_core::report::svg::{date_chart, fit_chart, Chart, Curve};
use asevo_core::report::{metric_column, FitRecord, MetricRecord, TunnelRecord, METRIC_COLUMNS};

/// `(file name, svg)` per metric column that has at least one value.
pub fn metric_plots(records: &[MetricRecord]) -> Vec<(String, String)> {
    METRIC_COLUMNS
        .iter()
        .filter_map(|&col| {
            let values = metric_column(records, col).ok()?;
            (!values.is_empty()).then(|| (format!("{col}.svg"), date_chart(col, col, &values).render()))
        })
        .collect()
}

pub fn fit_plot(metric: &str, records: &[FitRecord]) -> String {
    fit_chart(metric, records).render()
}

pub fn tunnel_plot(records: &[TunnelRecord]) -> String {
    let values: Vec<_> = records.iter().filter_map(|r| r.aspl.map(|a| (r.date, a))).collect();
    date_chart("IPv6 links: mean IPv4 hop distance", "aspl", &values).render()
}

pub fn trajectory_plot(checkpoints: &[(usize, usize)]) -> String {
    let points: Vec<(f64, f64)> = checkpoints.iter().map(|&(n, k)| (n as f64, k as f64)).collect();
    Chart {
        title: "maximum degree growth".into(),
        x_label: "N".into(),
        y_label: "k_max".into(),
        curves: vec![Curve { label: "k_max".into(), points: points.clone() }],
        points,
        x_ticks: Vec::new(),
    }
    .render()
}
