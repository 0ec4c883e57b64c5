use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use asevo_core::ingest::store::read_series;
use asevo_core::report::{read_trajectory_csv, write_metrics_csv, MetricRecord};
use asevo_core::YearMonth;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn asevo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asevo")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = asevo(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn fail(args: &[&str]) -> String {
    let out = asevo(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ingest(corpus: &str, set: Option<&str>, out: &Path) {
    let input = fixtures().join(corpus);
    let mut args = vec!["ingest", "--input", s(&input), "--out", s(out)];
    let set_path = set.map(|n| fixtures().join("sets").join(n));
    if let Some(p) = &set_path {
        args.extend(["--monitors", s(p)]);
    }
    ok(&args);
}

fn edge_set(dir: &Path, idx: usize) -> BTreeSet<(u32, u32)> {
    read_series(dir).unwrap().snapshots()[idx].graph.edges().into_iter().map(|(u, v)| (u.0, v.0)).collect()
}

#[test]
fn ingest_writes_snapshots_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let all = tmp.path().join("all");
    ingest("corpus", Some("all.txt"), &all);
    let names: Vec<String> = fs::read_dir(all.join("snapshots"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert_eq!(names, ["2004-01.edges", "2004-02.edges", "2004-03.edges"]);
    let summary = fs::read_to_string(all.join("filter_summary.csv")).unwrap();
    assert_eq!(summary.lines().next().unwrap(), "date,monitors,total,accepted,as_set,private_asn,loop,malformed");
    assert_eq!(summary.lines().nth(1).unwrap(), "2004-01,lax;oix;rrc00,13,5,2,3,2,1");
    assert!(all.join("manifest.json").is_file());

    let oix = tmp.path().join("oix");
    ingest("corpus", Some("oix.txt"), &oix);
    for i in 0..3 {
        assert!(edge_set(&oix, i).is_subset(&edge_set(&all, i)));
    }
    assert!(edge_set(&oix, 0).len() < edge_set(&all, 0).len());
}

#[test]
fn ingest_failure_names_the_file() {
    let tmp = tempfile::tempdir().unwrap();
    let err = fail(&["ingest", "--input", s(&fixtures().join("broken")), "--out", s(tmp.path())]);
    assert!(err.contains("broken/2004-02/oix.paths"), "{err}");
}

#[test]
fn metrics_rows_and_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let tri = tmp.path().join("tri");
    ingest("triangle", None, &tri);
    let met = tmp.path().join("tri_metrics");
    ok(&["metrics", "--input", s(&tri), "--out", s(&met)]);
    let csv = fs::read_to_string(met.join("metrics.csv")).unwrap();
    assert_eq!(csv, "date,N,L,k_max,k_avg,aspl,C,rho,r\n2004-01,3,3,2,2,1,1,,\n");
    let warnings = fs::read_to_string(met.join("warnings.txt")).unwrap();
    assert!(warnings.contains("2004-01: rho:") && warnings.contains("2004-01: r:"), "{warnings}");

    let store = tmp.path().join("store");
    ingest("corpus", None, &store);
    let run = |dir: &Path| {
        ok(&["metrics", "--input", s(&store), "--out", s(dir), "--plots"]);
        (fs::read(dir.join("metrics.csv")).unwrap(), fs::read(dir.join("plots/N.svg")).unwrap())
    };
    let out = tmp.path().join("m");
    let first = run(&out);
    let second = run(&out);
    assert_eq!(first, second);
    let text = String::from_utf8(first.0).unwrap();
    let n: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(n, ["7", "8", "10"]);
}

#[test]
fn empty_month_becomes_blank_row() {
    let tmp = tempfile::tempdir().unwrap();
    let store = tmp.path().join("rej");
    ingest("rejected", None, &store);
    let met = tmp.path().join("met");
    ok(&["metrics", "--input", s(&store), "--out", s(&met)]);
    assert_eq!(fs::read_to_string(met.join("metrics.csv")).unwrap().lines().nth(1), Some("2005-06,,,,,,,,"));
    assert!(fs::read_to_string(met.join("warnings.txt")).unwrap().contains("2005-06"));
}

fn write_column(path: &Path, values: &[f64]) {
    let origin = YearMonth::new(1997, 11).unwrap();
    let records: Vec<MetricRecord> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut r = MetricRecord::blank(origin.add_months(i as i64).unwrap());
            r.k_avg = Some(v);
            r.nodes = Some(10);
            r
        })
        .collect();
    write_metrics_csv(&records, fs::File::create(path).unwrap()).unwrap();
}

#[test]
fn fit_reports_pattern_and_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("metrics.csv");
    let knee = 43;
    let top = 3000.0 * (0.035f64 * (knee - 1) as f64).exp();
    let values: Vec<f64> = (1..=140)
        .map(|x| {
            let y = if x <= knee { 3000.0 * (0.035 * (x - 1) as f64).exp() } else { top + 217.0 * (x - knee) as f64 };
            y * (1.0 + 0.004 * (1.9 * x as f64).sin())
        })
        .collect();
    write_column(&csv, &values);
    let out = tmp.path().join("fit");
    ok(&["fit", "--input", s(&csv), "--out", s(&out), "--metric", "k_avg"]);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("fit_k_avg.json")).unwrap()).unwrap();
    assert_eq!(report["fit"]["pattern"], "ExpThenLinear");
    let bp = report["fit"]["breakpoint"].as_i64().unwrap();
    assert!((bp - knee as i64).abs() <= 2, "breakpoint {bp}");
    assert!(out.join("fit_k_avg.svg").is_file() && out.join("fit_k_avg.csv").is_file());

    // constant N column
    ok(&["fit", "--input", s(&csv), "--out", s(&out), "--metric", "N"]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("fit_N.json")).unwrap()).unwrap();
    assert_eq!(report["fit"]["pattern"], "SingleLinear");
    assert!(report["fit"]["first_segment"]["slope"].as_f64().unwrap().abs() < 1e-9);

    let mut zero = values.clone();
    zero[20] = 0.0;
    write_column(&csv, &zero);
    let err = fail(&["fit", "--input", s(&csv), "--out", s(&out), "--metric", "k_avg"]);
    assert!(err.contains("1999-07"), "{err}");

    write_column(&csv, &values[..8]);
    let err = fail(&["fit", "--input", s(&csv), "--out", s(&out), "--metric", "k_avg"]);
    assert!(err.contains("at least 12"), "{err}");
}

#[test]
fn fit_honours_exclusions() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("metrics.csv");
    let mut values: Vec<f64> = (1..=40).map(|x| 5.0 + 2.0 * x as f64).collect();
    values[10] = 400.0;
    write_column(&csv, &values);
    let excl = tmp.path().join("exclude.txt");
    fs::write(&excl, "# outliers\n1998-09\n").unwrap();
    let out = tmp.path().join("fit");
    ok(&["fit", "--input", s(&csv), "--out", s(&out), "--metric", "k_avg", "--exclude-dates", s(&excl)]);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("fit_k_avg.json")).unwrap()).unwrap();
    assert_eq!(report["excluded"], serde_json::json!(["1998-09"]));
    assert!((report["fit"]["first_segment"]["slope"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn generate_is_reproducible_and_validated() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |dir: &Path| {
        ok(&["generate", "--model", "ba", "--m", "2", "-n", "1000", "--seed", "7", "--out", s(dir)]);
        ["graph.edges", "trajectory.csv", "manifest.json"].map(|f| fs::read(dir.join(f)).unwrap())
    };
    let a = run(&tmp.path().join("g"));
    let b = run(&tmp.path().join("g"));
    assert_eq!(a, b);
    let traj = read_trajectory_csv(&a[1][..]).unwrap();
    assert_eq!(traj.last().unwrap().0, 1000);

    let err = fail(&[
        "generate",
        "--model",
        "ba",
        "--m",
        "4",
        "--m0",
        "3",
        "-n",
        "100",
        "--seed",
        "1",
        "--out",
        s(tmp.path()),
    ]);
    assert!(err.contains("parameter m"), "{err}");
    let err = fail(&[
        "generate",
        "--model",
        "ab",
        "--p",
        "0.6",
        "--q",
        "0.5",
        "-n",
        "100",
        "--seed",
        "1",
        "--out",
        s(tmp.path()),
    ]);
    assert!(err.contains("p+q"), "{err}");
}

#[test]
fn pfp_has_the_largest_hubs() {
    let tmp = tempfile::tempdir().unwrap();
    let mut total = std::collections::BTreeMap::new();
    let mut pfp_beats_ba = 0;
    for seed in 0..10u64 {
        let mut finals = std::collections::BTreeMap::new();
        for model in ["ba", "ab", "glp", "pfp"] {
            let dir = tmp.path().join(format!("{model}-{seed}"));
            ok(&["generate", "--model", model, "-n", "10000", "--seed", &seed.to_string(), "--out", s(&dir)]);
            let t = read_trajectory_csv(fs::File::open(dir.join("trajectory.csv")).unwrap()).unwrap();
            assert!(t.windows(2).all(|w| w[0].1 <= w[1].1 || model == "ab"));
            let k = t.last().unwrap().1;
            finals.insert(model, k);
            *total.entry(model).or_insert(0usize) += k;
        }
        if finals["pfp"] > finals["ba"] {
            pfp_beats_ba += 1;
        }
    }
    assert!(pfp_beats_ba >= 9);
    let best = total.iter().max_by_key(|(_, &k)| k).unwrap().0;
    assert_eq!(*best, "pfp", "{total:?}");
}

#[test]
fn tunnel_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let (v6, v4) = (tmp.path().join("v6"), tmp.path().join("v4"));
    ingest("tunnel/v6", None, &v6);
    ingest("tunnel/v4", None, &v4);
    let out = tmp.path().join("tun");
    ok(&["tunnel", "--ipv6", s(&v6), "--ipv4", s(&v4), "--out", s(&out)]);
    assert_eq!(
        fs::read_to_string(out.join("distributions/2008-03.csv")).unwrap(),
        "d,count,probability\n1,1,0.5\n2,1,0.5\n# missing: 0\n# disconnected: 0\n# aspl: 1.5\n"
    );
    assert_eq!(
        fs::read_to_string(out.join("tunnel_series.csv")).unwrap(),
        "date,aspl,p1,missing,disconnected\n2008-03,1.5,0.5,0,0\n"
    );
    assert!(out.join("tunnel_aspl.svg").is_file());

    let store = tmp.path().join("store");
    ingest("corpus", None, &store);
    let same = tmp.path().join("same");
    ok(&["tunnel", "--ipv6", s(&store), "--ipv4", s(&store), "--out", s(&same)]);
    let text = fs::read_to_string(same.join("tunnel_series.csv")).unwrap();
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(1) == Some("1")), "{text}");

    let err = fail(&["tunnel", "--ipv6", s(&v6), "--ipv4", s(&store), "--out", s(&tmp.path().join("x"))]);
    assert!(err.contains("2008-03..2008-03") && err.contains("2004-01..2004-03"), "{err}");
}

#[test]
fn report_reproduces_plots_from_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let store = tmp.path().join("store");
    ingest("corpus", None, &store);
    let met = tmp.path().join("met");
    ok(&["metrics", "--input", s(&store), "--out", s(&met), "--plots"]);
    ok(&["report", "--input", s(&met)]);
    for col in ["N", "L", "k_max", "aspl", "rho"] {
        let a = fs::read(met.join(format!("plots/{col}.svg"))).unwrap();
        let b = fs::read(met.join(format!("report/plots/{col}.svg"))).unwrap();
        assert_eq!(a, b, "{col}");
    }
    let err = fail(&["report", "--input", s(&store)]);
    assert!(err.contains("no metrics.csv"), "{err}");
}
