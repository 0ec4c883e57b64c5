//! Minimal static SVG charts: scattered data points plus optional curves.
//!
//! Output depends only on the input numbers, so re-rendering from the same
//! CSV yields the same bytes.

use std::fmt::Write;

use super::FitRecord;
use crate::phasefit::month_of;
use crate::snapshot::YearMonth;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const COLORS: [&str; 4] = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
    pub curves: Vec<Curve>,
    /// explicit x tick labels; numeric ticks are generated when empty
    pub x_ticks: Vec<(f64, String)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn nice_ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let raw = (hi - lo) / count as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        out.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    out
}

fn label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e6 || v.abs() < 1e-3) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

impl Chart {
    fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        let all = self.points.iter().chain(self.curves.iter().flat_map(|c| c.points.iter()));
        let mut b: Option<(f64, f64, f64, f64)> = None;
        for &(x, y) in all.filter(|(x, y)| x.is_finite() && y.is_finite()) {
            b = Some(match b {
                None => (x, x, y, y),
                Some((x0, x1, y0, y1)) => (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
            });
        }
        b.map(|(x0, x1, y0, y1)| {
            let pad = |lo: f64, hi: f64| if hi > lo { (lo, hi) } else { (lo - 1.0, hi + 1.0) };
            let (x0, x1) = pad(x0, x1);
            let (y0, y1) = pad(y0, y1);
            let m = (y1 - y0) * 0.05;
            (x0, x1, y0 - m, y1 + m)
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
        let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );
        let Some((x0, x1, y0, y1)) = self.bounds() else {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">no data</text>"#,
                LEFT + pw / 2.0,
                TOP + ph / 2.0
            );
            s.push_str("</svg>\n");
            return s;
        };
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

        for t in nice_ticks(y0, y1, 6) {
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT}" x2="{:.1}" y1="{:.2}" y2="{:.2}" stroke="#ddd"/><text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"##,
                LEFT + pw,
                sy(t),
                sy(t),
                LEFT - 6.0,
                sy(t) + 4.0,
                label(t)
            );
        }
        let x_ticks: Vec<(f64, String)> = if self.x_ticks.is_empty() {
            nice_ticks(x0, x1, 8).into_iter().map(|t| (t, label(t))).collect()
        } else {
            self.x_ticks.iter().filter(|(x, _)| *x >= x0 && *x <= x1).cloned().collect()
        };
        for (t, text) in x_ticks {
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" x2="{:.2}" y1="{:.1}" y2="{:.1}" stroke="black"/><text x="{:.2}" y="{:.1}" text-anchor="middle">{}</text>"#,
                sx(t),
                sx(t),
                TOP + ph,
                TOP + ph + 5.0,
                sx(t),
                TOP + ph + 19.0,
                escape(&text)
            );
        }
        for &(x, y) in self.points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()) {
            let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#1f77b4"/>"##, sx(x), sy(y));
        }
        for (i, c) in self.curves.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let pts: Vec<String> = c
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ =
                writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, pts.join(" "));
            let ly = TOP + 16.0 + 16.0 * i as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{:.1}" x2="{:.1}" y1="{ly:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                LEFT + 12.0,
                LEFT + 36.0,
                LEFT + 42.0,
                ly + 4.0,
                escape(&c.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Year ticks (every January) for a month-index axis where index 1 is
/// `origin`.
pub fn year_ticks(origin: YearMonth, x_min: i64, x_max: i64) -> Vec<(f64, String)> {
    let mut ticks: Vec<(f64, String)> = (x_min..=x_max)
        .filter_map(|x| month_of(origin, x).filter(|d| d.month() == 1).map(|d| (x as f64, d.year().to_string())))
        .collect();
    let stride = ticks.len().div_ceil(10).max(1);
    ticks = ticks.into_iter().step_by(stride).collect();
    ticks
}

/// Value-vs-date chart of one metric column.
pub fn date_chart(title: &str, y_label: &str, values: &[(YearMonth, f64)]) -> Chart {
    let Some(origin) = values.first().map(|(d, _)| *d) else {
        return Chart { title: title.into(), x_label: "date".into(), y_label: y_label.into(), ..Chart::default() };
    };
    let points: Vec<(f64, f64)> = values.iter().map(|(d, v)| ((d.months_since(origin) + 1) as f64, *v)).collect();
    let x_max = points.last().map(|p| p.0 as i64).unwrap_or(1);
    Chart {
        title: title.into(),
        x_label: "date".into(),
        y_label: y_label.into(),
        x_ticks: year_ticks(origin, 1, x_max),
        points,
        curves: Vec::new(),
    }
}

/// Data points plus one curve per fitted segment.
pub fn fit_chart(metric: &str, records: &[FitRecord]) -> Chart {
    let Some(first) = records.first() else {
        return Chart {
            title: format!("{metric} fit"),
            x_label: "date".into(),
            y_label: metric.into(),
            ..Chart::default()
        };
    };
    let origin = first.date.add_months(1 - first.x).unwrap_or(first.date);
    let points = records.iter().map(|r| (r.x as f64, r.value)).collect();
    let mut curves = Vec::new();
    for seg in records.chunk_by(|a, b| a.segment == b.segment) {
        let (a, b) = (&seg[0], &seg[seg.len() - 1]);
        curves.push(Curve {
            label: format!("{} {}..{}", a.trend, a.date, b.date),
            points: seg.iter().map(|r| (r.x as f64, r.fitted)).collect(),
        });
    }
    let x_max = records.iter().map(|r| r.x).max().unwrap_or(1);
    Chart {
        title: format!("{metric} fit"),
        x_label: "date".into(),
        y_label: metric.into(),
        x_ticks: year_ticks(origin, first.x, x_max),
        points,
        curves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ym(s: &str) -> YearMonth {
        s.parse().unwrap()
    }

    #[test]
    fn renders_deterministically() {
        let vals: Vec<_> = (0..30).map(|i| (ym("2003-11").add_months(i).unwrap(), (i * i) as f64)).collect();
        let a = date_chart("N", "N", &vals).render();
        let b = date_chart("N", "N", &vals).render();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<circle").count(), 30);
        assert!(a.contains(">2004<") && a.contains(">2005<"));
    }

    #[test]
    fn empty_and_flat_inputs() {
        let s = date_chart("x", "x", &[]).render();
        assert!(s.contains("no data"));
        let flat = date_chart("x", "x", &[(ym("2000-01"), 5.0), (ym("2000-02"), 5.0)]).render();
        assert!(!flat.contains("NaN"));
    }

    #[test]
    fn ticks_cover_range() {
        let t = nice_ticks(0.0, 97.0, 6);
        assert_eq!(t.first(), Some(&0.0));
        assert!(*t.last().unwrap() <= 97.0 && t.len() >= 4);
        assert_eq!(label(0.5), "0.5");
        assert_eq!(label(1200.0), "1200");
    }
}
