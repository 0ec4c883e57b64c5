use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use asevo_core::crossnet::tunnel_series;
use asevo_core::generators::{even_checkpoints, grow_with_trajectory, GeneratorParams};
use asevo_core::graph::write_edge_list;
use asevo_core::ingest::store::{read_series, write_series, EXTENSION};
use asevo_core::ingest::{discover_files, load_series, MonitorSet};
use asevo_core::metrics::{degree_ccdf, metrics_series_diagnosed, AsplMode, MetricOptions};
use asevo_core::phasefit::{detect_phase_change, month_of, points_from_dated, FitError, PhaseOptions, PhaseReport};
use asevo_core::report::{
    fit_records, metric_column, read_fit_csv, read_metrics_csv, read_trajectory_csv, read_tunnel_series_csv,
    write_ccdf_csv, write_filter_summary_csv, write_fit_csv, write_metrics_csv, write_trajectory_csv,
    write_tunnel_distribution_csv, write_tunnel_series_csv, MetricRecord, TunnelRecord,
};
use asevo_core::YearMonth;
use serde_json::json;

use crate::args::{FitArgs, GenerateArgs, IngestArgs, MetricsArgs, ReportArgs, TunnelArgs};
use crate::manifest::{hash_file, FileHash, OutputDir};
use crate::plots;

fn show(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<(), asevo_core::report::ReportError>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

/// The `.edges` files `read_series` would load from `dir`.
fn store_files(dir: &Path) -> Result<(PathBuf, Vec<PathBuf>)> {
    let nested = dir.join("snapshots");
    let root = if nested.is_dir() { nested } else { dir.to_path_buf() };
    let mut files: Vec<PathBuf> = fs::read_dir(&root)
        .with_context(|| format!("reading {}", root.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some(EXTENSION))
        .collect();
    files.sort();
    Ok((root, files))
}

fn hash_store(dir: &Path, prefix: &str) -> Result<Vec<FileHash>> {
    let (root, files) = store_files(dir)?;
    files
        .iter()
        .map(|f| {
            hash_file(f, &root).map(|mut h| {
                h.path = format!("{prefix}{}", h.path);
                h
            })
        })
        .collect()
}

pub fn ingest(a: &IngestArgs) -> Result<()> {
    let set = match &a.monitors {
        Some(p) => MonitorSet::load(p)?,
        None => MonitorSet::all(),
    };
    let loaded = load_series(&a.input, &set)?;
    let mut out = OutputDir::create(&a.out)?;
    let snap_dir = out.path("snapshots");
    if snap_dir.is_dir() {
        for entry in fs::read_dir(&snap_dir)? {
            let p = entry?.path();
            if p.extension().and_then(|e| e.to_str()) == Some(EXTENSION) {
                fs::remove_file(&p).with_context(|| format!("removing stale {}", p.display()))?;
            }
        }
    }
    for path in write_series(&loaded.series, &snap_dir)? {
        let bytes = fs::read(&path)?;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        out.record(&format!("snapshots/{name}"), &bytes);
    }
    out.write("filter_summary.csv", &csv_bytes(|b| write_filter_summary_csv(&loaded.reports, b))?)?;

    let mut inputs: Vec<FileHash> =
        discover_files(&a.input, &set)?.iter().map(|(_, _, p)| hash_file(p, &a.input)).collect::<Result<_>>()?;
    if let Some(m) = &a.monitors {
        let mut h = hash_file(m, m.parent().unwrap_or(Path::new("")))?;
        h.path = format!("monitor-set/{}", h.path);
        inputs.push(h);
    }
    let config = json!({
        "input": show(&a.input),
        "out": show(&a.out),
        "monitors": a.monitors.as_deref().map(show),
        "monitor_set": set.label,
        "family": loaded.series.family().to_string(),
    });
    out.finish("ingest", config, inputs)?;

    for (snap, r) in loaded.series.snapshots().iter().zip(&loaded.reports) {
        println!(
            "{}: N={} L={} accepted {}/{} (as_set {}, private {}, loop {}, malformed {})",
            snap.date,
            snap.graph.node_count(),
            snap.graph.edge_count(),
            r.filter.accepted,
            r.filter.total,
            r.filter.as_set,
            r.filter.private_asn,
            r.filter.loops,
            r.filter.malformed
        );
    }
    Ok(())
}

pub fn metrics(a: &MetricsArgs) -> Result<()> {
    let aspl = AsplMode::parse(&a.aspl_mode, a.seed).map_err(anyhow::Error::msg)?;
    let opts = MetricOptions { aspl, k_min: a.kmin };
    let series = read_series(&a.input)?;
    let mut out = OutputDir::create(&a.out)?;

    let mut records = Vec::with_capacity(series.len());
    let mut warnings = String::new();
    for (date, result) in metrics_series_diagnosed(&series, &opts) {
        match result {
            Ok((row, issues)) => {
                for issue in issues {
                    warnings.push_str(&format!("{date}: {}: {}\n", issue.column, issue.error));
                }
                records.push(MetricRecord::from(&row));
            }
            Err(e) => {
                warnings.push_str(&format!("{date}: {e}; row left empty\n"));
                records.push(MetricRecord::blank(date));
            }
        }
    }
    for snap in series.snapshots() {
        if let Ok(ccdf) = snap.graph.giant_component().map_err(|_| ()).and_then(|g| degree_ccdf(&g).map_err(|_| ())) {
            out.write(&format!("ccdf/{}.csv", snap.date), &csv_bytes(|b| write_ccdf_csv(&ccdf, b))?)?;
        }
    }
    out.write("metrics.csv", &csv_bytes(|b| write_metrics_csv(&records, b))?)?;
    let structured = json!({
        "family": series.family().to_string(),
        "monitor_set": series.monitor_set(),
        "aspl_mode": aspl.to_string(),
        "kmin": a.kmin,
        "rows": records,
    });
    out.write("metrics.json", format!("{}\n", serde_json::to_string_pretty(&structured)?).as_bytes())?;
    out.write("warnings.txt", warnings.as_bytes())?;
    if a.plots {
        for (name, svg) in plots::metric_plots(&records) {
            out.write(&format!("plots/{name}"), svg.as_bytes())?;
        }
    }
    let config = json!({
        "input": show(&a.input),
        "out": show(&a.out),
        "aspl_mode": aspl.to_string(),
        "seed": a.seed,
        "kmin": a.kmin,
        "plots": a.plots,
    });
    out.finish("metrics", config, hash_store(&a.input, "")?)?;

    println!("{} months written to {}", records.len(), out_name(&a.out, "metrics.csv"));
    if !warnings.is_empty() {
        eprintln!("{} warning(s), see {}", warnings.lines().count(), out_name(&a.out, "warnings.txt"));
    }
    Ok(())
}

fn out_name(dir: &Path, file: &str) -> String {
    show(&dir.join(file))
}

fn read_dates(path: &Path) -> Result<Vec<YearMonth>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| l.parse().with_context(|| format!("{}:{}: invalid date {l:?}", path.display(), i + 1)))
        .collect()
}

fn explain_fit_error(e: FitError, metric: &str, origin: YearMonth) -> anyhow::Error {
    let date = |x: i64| month_of(origin, x).map(|d| d.to_string()).unwrap_or_else(|| format!("month index {x}"));
    match e {
        FitError::Domain { x, y } => anyhow::anyhow!(
            "column {metric} has non-positive value {y} at {}; exponential fitting needs positive values",
            date(x)
        ),
        FitError::InsufficientData { needed, found } => {
            anyhow::anyhow!("column {metric} has {found} usable points, at least {needed} are required")
        }
        other => anyhow::anyhow!("column {metric}: {other}"),
    }
}

pub fn fit(a: &FitArgs) -> Result<()> {
    let file = fs::File::open(&a.input).with_context(|| format!("opening {}", a.input.display()))?;
    let records = read_metrics_csv(BufReader::new(file)).with_context(|| format!("reading {}", a.input.display()))?;
    let Some(origin) = records.first().map(|r| r.date) else {
        bail!("{} has no rows", a.input.display());
    };
    let values = metric_column(&records, &a.metric)?;
    let excluded = match &a.exclude_dates {
        Some(p) => read_dates(p)?,
        None => Vec::new(),
    };
    let opts = PhaseOptions { min_segment: a.min_segment, parsimony: a.parsimony };
    let points = points_from_dated(origin, &values, &excluded);
    let fit = detect_phase_change(&points, &opts).map_err(|e| explain_fit_error(e, &a.metric, origin))?;
    let rows = fit_records(origin, &points, &fit);
    let report = PhaseReport::new(fit, &a.metric, origin, opts, excluded.clone());

    let mut out = OutputDir::create(&a.out)?;
    let stem = format!("fit_{}", a.metric);
    out.write(&format!("{stem}.json"), format!("{}\n", serde_json::to_string_pretty(&report)?).as_bytes())?;
    out.write(&format!("{stem}.csv"), &csv_bytes(|b| write_fit_csv(&rows, b))?)?;
    out.write(&format!("{stem}.svg"), plots::fit_plot(&a.metric, &rows).as_bytes())?;

    let mut inputs = vec![hash_file(&a.input, a.input.parent().unwrap_or(Path::new("")))?];
    if let Some(p) = &a.exclude_dates {
        let mut h = hash_file(p, p.parent().unwrap_or(Path::new("")))?;
        h.path = format!("exclude-dates/{}", h.path);
        inputs.push(h);
    }
    let config = json!({
        "input": show(&a.input),
        "out": show(&a.out),
        "metric": a.metric,
        "min_segment": a.min_segment,
        "parsimony": a.parsimony,
        "exclude_dates": a.exclude_dates.as_deref().map(show),
        "excluded": excluded.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    });
    out.finish("fit", config, inputs)?;
    println!("{}: {} ({})", a.metric, report.summary, report.fit.pattern);
    Ok(())
}

pub fn resolve_params(a: &GenerateArgs) -> GeneratorParams {
    let mut p = GeneratorParams::defaults(a.model, a.nodes, a.seed);
    if let Some(m) = a.m {
        p.m = m;
    }
    p.m0 = a.m0.unwrap_or(p.m.max(3));
    if let Some(v) = a.p {
        p.p = v;
    }
    if let Some(v) = a.q {
        p.q = v;
    }
    if let Some(v) = a.beta {
        p.beta = v;
    }
    if let Some(v) = a.delta {
        p.delta = v;
    }
    p
}

pub fn generate(a: &GenerateArgs) -> Result<()> {
    let params = resolve_params(a);
    params.validate()?;
    let checkpoints = even_checkpoints(params.m0, params.n_target, a.checkpoints);
    let (graph, trajectory) = grow_with_trajectory(&params, &checkpoints)?;

    let mut out = OutputDir::create(&a.out)?;
    let header = vec![
        format!("model: {}", params.model),
        format!("seed: {}", params.seed),
        format!("nodes: {}", graph.node_count()),
        format!("edges: {}", graph.edge_count()),
    ];
    let mut edges = Vec::new();
    write_edge_list(&graph, &header, &mut edges)?;
    out.write("graph.edges", &edges)?;
    out.write("trajectory.csv", &csv_bytes(|b| write_trajectory_csv(&trajectory.checkpoints, b))?)?;
    out.write("trajectory.svg", plots::trajectory_plot(&trajectory.checkpoints).as_bytes())?;
    let config = json!({
        "out": show(&a.out),
        "params": params,
        "checkpoints": a.checkpoints,
    });
    out.finish("generate", config, Vec::new())?;
    let (n, k) = trajectory.checkpoints.last().copied().unwrap_or((graph.node_count(), 0));
    println!("{}: N={n} L={} k_max={k}", params.model, graph.edge_count());
    Ok(())
}

pub fn tunnel(a: &TunnelArgs) -> Result<()> {
    let s6 = read_series(&a.ipv6)?;
    let s4 = read_series(&a.ipv4)?;
    let dists = tunnel_series(&s6, &s4)?;
    let mut out = OutputDir::create(&a.out)?;
    let mut records = Vec::with_capacity(dists.len());
    for d in &dists {
        let rec = TunnelRecord::from_distribution(d).context("distribution without a date")?;
        out.write(&format!("distributions/{}.csv", rec.date), &csv_bytes(|b| write_tunnel_distribution_csv(d, b))?)?;
        records.push(rec);
    }
    out.write("tunnel_series.csv", &csv_bytes(|b| write_tunnel_series_csv(&records, b))?)?;
    out.write("tunnel_aspl.svg", plots::tunnel_plot(&records).as_bytes())?;
    let mut inputs = hash_store(&a.ipv6, "ipv6/")?;
    inputs.extend(hash_store(&a.ipv4, "ipv4/")?);
    let config = json!({
        "ipv6": show(&a.ipv6),
        "ipv4": show(&a.ipv4),
        "out": show(&a.out),
    });
    out.finish("tunnel", config, inputs)?;
    for r in &records {
        let aspl = r.aspl.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
        println!("{}: aspl {aspl} p1 {:.4} missing {} disconnected {}", r.date, r.p1, r.missing, r.disconnected);
    }
    Ok(())
}

pub fn report(a: &ReportArgs) -> Result<()> {
    let out_dir = a.out.clone().unwrap_or_else(|| a.input.join("report"));
    let mut out = OutputDir::create(&out_dir)?;
    let mut inputs = Vec::new();
    let open = |name: &str| -> Result<Option<(PathBuf, BufReader<fs::File>)>> {
        let p = a.input.join(name);
        if !p.is_file() {
            return Ok(None);
        }
        let f = fs::File::open(&p).with_context(|| format!("opening {}", p.display()))?;
        Ok(Some((p, BufReader::new(f))))
    };

    if let Some((p, r)) = open("metrics.csv")? {
        let records = read_metrics_csv(r).with_context(|| format!("reading {}", p.display()))?;
        for (name, svg) in plots::metric_plots(&records) {
            out.write(&format!("plots/{name}"), svg.as_bytes())?;
        }
        inputs.push(hash_file(&p, &a.input)?);
    }
    if let Some((p, r)) = open("tunnel_series.csv")? {
        let records = read_tunnel_series_csv(r).with_context(|| format!("reading {}", p.display()))?;
        out.write("tunnel_aspl.svg", plots::tunnel_plot(&records).as_bytes())?;
        inputs.push(hash_file(&p, &a.input)?);
    }
    if let Some((p, r)) = open("trajectory.csv")? {
        let t = read_trajectory_csv(r).with_context(|| format!("reading {}", p.display()))?;
        out.write("trajectory.svg", plots::trajectory_plot(&t).as_bytes())?;
        inputs.push(hash_file(&p, &a.input)?);
    }
    let mut fits: Vec<(String, PathBuf)> = fs::read_dir(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter_map(|p| {
            let name = p.file_name()?.to_str()?.to_string();
            let metric = name.strip_prefix("fit_")?.strip_suffix(".csv")?.to_string();
            Some((metric, p))
        })
        .collect();
    fits.sort();
    for (metric, p) in fits {
        let f = fs::File::open(&p).with_context(|| format!("opening {}", p.display()))?;
        let rows = read_fit_csv(BufReader::new(f)).with_context(|| format!("reading {}", p.display()))?;
        out.write(&format!("fit_{metric}.svg"), plots::fit_plot(&metric, &rows).as_bytes())?;
        inputs.push(hash_file(&p, &a.input)?);
    }
    if inputs.is_empty() {
        bail!("{} holds no metrics.csv, fit_*.csv, tunnel_series.csv or trajectory.csv", a.input.display());
    }
    let n = inputs.len();
    let config = json!({ "input": show(&a.input), "out": show(&out_dir) });
    out.finish("report", config, inputs)?;
    println!("plots for {n} CSV file(s) written to {}", out_dir.display());
    Ok(())
}
