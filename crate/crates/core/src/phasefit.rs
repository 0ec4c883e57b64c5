//! Exponential/linear growth fits and single change-point detection.
//!
//! Points are indexed by sequential month number `x` (first month is 1).
//! Every candidate split of the series is fitted both as
//! exponential-then-linear and linear-then-exponential; the candidate with
//! the smallest total squared error (measured in the original `y` units)
//! wins, unless a single exponential or linear curve over the whole series
//! is nearly as good.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snapshot::YearMonth;
use crate::stats::least_squares;

/// Sums of squared error below this fraction of the total sum of squares
/// are treated as an exact fit.
const NEGLIGIBLE_SSE: f64 = 1e-18;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("insufficient data: need at least {needed} points, found {found}")]
    InsufficientData { needed: usize, found: usize },
    #[error("non-positive value {y} at month index {x}; exponential fitting needs y > 0")]
    Domain { x: i64, y: f64 },
    #[error("month indices must be strictly increasing (at {x})")]
    NotIncreasing { x: i64 },
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub x: i64,
    pub y: f64,
}

impl SeriesPoint {
    pub fn new(x: i64, y: f64) -> Self {
        SeriesPoint { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub sse: f64,
}

impl LinearFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// `y = scale * exp(rate * x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpFit {
    pub rate: f64,
    pub scale: f64,
    pub sse: f64,
}

impl ExpFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.scale * (self.rate * x).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Segment {
    Linear(LinearFit),
    Exponential(ExpFit),
}

impl Segment {
    pub fn sse(&self) -> f64 {
        match self {
            Segment::Linear(f) => f.sse,
            Segment::Exponential(f) => f.sse,
        }
    }

    pub fn predict(&self, x: f64) -> f64 {
        match self {
            Segment::Linear(f) => f.predict(x),
            Segment::Exponential(f) => f.predict(x),
        }
    }

    /// Trend wording used in summary tables.
    pub fn trend(&self) -> &'static str {
        match self {
            Segment::Linear(f) if f.slope < 0.0 => "linear decrease",
            Segment::Linear(_) => "linear growth",
            Segment::Exponential(f) if f.rate < 0.0 => "exponential decay",
            Segment::Exponential(_) => "exponential growth",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    ExpThenLinear,
    LinearThenExp,
    SingleExp,
    SingleLinear,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::ExpThenLinear => "ExpThenLinear",
            Pattern::LinearThenExp => "LinearThenExp",
            Pattern::SingleExp => "SingleExp",
            Pattern::SingleLinear => "SingleLinear",
        })
    }
}

/// Outcome of [`detect_phase_change`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseFit {
    pub pattern: Pattern,
    /// Month index of the last point of the first segment.
    pub breakpoint: Option<i64>,
    /// Number of points in the first segment.
    pub split: Option<usize>,
    pub first_segment: Segment,
    pub second_segment: Option<Segment>,
    /// Month-index range `[start, end]` covered by each segment.
    pub first_span: (i64, i64),
    pub second_span: Option<(i64, i64)>,
    pub total_sse: f64,
    pub single_linear_sse: f64,
    pub single_exp_sse: f64,
}

/// One evaluated (split, ordering) pair of the breakpoint scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub split: usize,
    pub pattern: Pattern,
    pub total_sse: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseOptions {
    /// Minimum number of points per segment (at least 3).
    pub min_segment: usize,
    /// A two-segment fit is kept only if its error is below this fraction of
    /// the best single-curve error.
    pub parsimony: f64,
}

impl Default for PhaseOptions {
    fn default() -> Self {
        PhaseOptions { min_segment: 6, parsimony: 0.5 }
    }
}

fn check_increasing(points: &[SeriesPoint]) -> Result<(), FitError> {
    match points.windows(2).find(|w| w[1].x <= w[0].x) {
        Some(w) => Err(FitError::NotIncreasing { x: w[1].x }),
        None => Ok(()),
    }
}

fn check_positive(points: &[SeriesPoint]) -> Result<(), FitError> {
    match points.iter().find(|p| !(p.y > 0.0)) {
        Some(p) => Err(FitError::Domain { x: p.x, y: p.y }),
        None => Ok(()),
    }
}

fn linear_unchecked(points: &[SeriesPoint]) -> LinearFit {
    let xs: Vec<f64> = points.iter().map(|p| p.x as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.y).collect();
    let (slope, intercept) = least_squares(&xs, &ys).expect("distinct x values");
    let sse = points.iter().map(|p| (p.y - (intercept + slope * p.x as f64)).powi(2)).sum();
    LinearFit { slope, intercept, sse }
}

fn exponential_unchecked(points: &[SeriesPoint]) -> ExpFit {
    let xs: Vec<f64> = points.iter().map(|p| p.x as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.y.ln()).collect();
    let (rate, log_scale) = least_squares(&xs, &ys).expect("distinct x values");
    let scale = log_scale.exp();
    let sse = points.iter().map(|p| (p.y - scale * (rate * p.x as f64).exp()).powi(2)).sum();
    ExpFit { rate, scale, sse }
}

/// Ordinary least squares of `y` on `x`.
pub fn fit_linear(points: &[SeriesPoint]) -> Result<LinearFit, FitError> {
    if points.len() < 2 {
        return Err(FitError::InsufficientData { needed: 2, found: points.len() });
    }
    check_increasing(points)?;
    Ok(linear_unchecked(points))
}

/// Least squares of `ln y` on `x`; the reported error is re-measured in the
/// original `y` units so it compares directly with [`fit_linear`].
pub fn fit_exponential(points: &[SeriesPoint]) -> Result<ExpFit, FitError> {
    if points.len() < 2 {
        return Err(FitError::InsufficientData { needed: 2, found: points.len() });
    }
    check_increasing(points)?;
    check_positive(points)?;
    Ok(exponential_unchecked(points))
}

fn validate(points: &[SeriesPoint], opts: &PhaseOptions) -> Result<(), FitError> {
    if opts.min_segment < 3 {
        return Err(FitError::InvalidOption(format!("min_segment must be at least 3, got {}", opts.min_segment)));
    }
    if !(opts.parsimony > 0.0 && opts.parsimony <= 1.0) {
        return Err(FitError::InvalidOption(format!("parsimony must be in (0, 1], got {}", opts.parsimony)));
    }
    let needed = 2 * opts.min_segment;
    if points.len() < needed {
        return Err(FitError::InsufficientData { needed, found: points.len() });
    }
    check_increasing(points)?;
    check_positive(points)
}

fn two_segment(points: &[SeriesPoint], split: usize, pattern: Pattern) -> (Segment, Segment) {
    let (a, b) = points.split_at(split);
    match pattern {
        Pattern::ExpThenLinear => {
            (Segment::Exponential(exponential_unchecked(a)), Segment::Linear(linear_unchecked(b)))
        }
        Pattern::LinearThenExp => {
            (Segment::Linear(linear_unchecked(a)), Segment::Exponential(exponential_unchecked(b)))
        }
        _ => unreachable!("single-segment pattern in two-segment scan"),
    }
}

/// Every admissible (split, ordering) candidate, splits ascending and
/// exponential-then-linear first within a split.
pub fn scan_candidates(points: &[SeriesPoint], opts: &PhaseOptions) -> Result<Vec<Candidate>, FitError> {
    validate(points, opts)?;
    let n = points.len();
    let mut out = Vec::with_capacity(2 * (n - 2 * opts.min_segment + 1));
    for split in opts.min_segment..=n - opts.min_segment {
        for pattern in [Pattern::ExpThenLinear, Pattern::LinearThenExp] {
            let (a, b) = two_segment(points, split, pattern);
            out.push(Candidate { split, pattern, total_sse: a.sse() + b.sse() });
        }
    }
    Ok(out)
}

/// Locates the single best growth-regime change in `points`.
pub fn detect_phase_change(points: &[SeriesPoint], opts: &PhaseOptions) -> Result<PhaseFit, FitError> {
    let candidates = scan_candidates(points, opts)?;
    let best = candidates
        .iter()
        .copied()
        .reduce(|best, c| if c.total_sse < best.total_sse { c } else { best })
        .expect("at least one admissible split");

    let lin = linear_unchecked(points);
    let exp = exponential_unchecked(points);
    let n = points.len();
    let span_all = (points[0].x, points[n - 1].x);

    let mean = points.iter().map(|p| p.y).sum::<f64>() / n as f64;
    let tss: f64 = points.iter().map(|p| (p.y - mean).powi(2)).sum();
    let floor = NEGLIGIBLE_SSE * tss;
    let (single, single_pattern) = if lin.sse <= exp.sse || lin.sse <= floor {
        (Segment::Linear(lin), Pattern::SingleLinear)
    } else {
        (Segment::Exponential(exp), Pattern::SingleExp)
    };

    if single.sse() > floor && best.total_sse < opts.parsimony * single.sse() {
        let (first, second) = two_segment(points, best.split, best.pattern);
        Ok(PhaseFit {
            pattern: best.pattern,
            breakpoint: Some(points[best.split - 1].x),
            split: Some(best.split),
            first_segment: first,
            second_segment: Some(second),
            first_span: (points[0].x, points[best.split - 1].x),
            second_span: Some((points[best.split].x, points[n - 1].x)),
            total_sse: first.sse() + second.sse(),
            single_linear_sse: lin.sse,
            single_exp_sse: exp.sse,
        })
    } else {
        Ok(PhaseFit {
            pattern: single_pattern,
            breakpoint: None,
            split: None,
            first_segment: single,
            second_segment: None,
            first_span: span_all,
            second_span: None,
            total_sse: single.sse(),
            single_linear_sse: lin.sse,
            single_exp_sse: exp.sse,
        })
    }
}

/// Maps month index `x` back to a calendar month; index 1 is `origin`.
pub fn month_of(origin: YearMonth, x: i64) -> Option<YearMonth> {
    origin.add_months(x - 1)
}

/// Builds fit input from dated values: `x` counts months from `origin`
/// (which is month 1), and dates listed in `exclude` are dropped.
pub fn points_from_dated(origin: YearMonth, values: &[(YearMonth, f64)], exclude: &[YearMonth]) -> Vec<SeriesPoint> {
    values
        .iter()
        .filter(|(d, _)| !exclude.contains(d))
        .map(|&(d, y)| SeriesPoint::new(d.months_since(origin) + 1, y))
        .collect()
}

/// One row of a phase-change summary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionRow {
    pub metric: String,
    pub before: String,
    pub after: Option<String>,
    pub break_date: Option<YearMonth>,
}

impl TransitionRow {
    /// `"<before> | <after>, break YYYY-MM"`, or `"<trend> | none, no break"`
    /// for a single-curve fit.
    pub fn summary(&self) -> String {
        match (&self.after, self.break_date) {
            (Some(after), Some(d)) => format!("{} | {after}, break {d}", self.before),
            (Some(after), None) => format!("{} | {after}, break unknown", self.before),
            _ => format!("{} | none, no break", self.before),
        }
    }
}

impl fmt::Display for TransitionRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.metric, self.summary())
    }
}

pub fn classify_transition(fit: &PhaseFit, metric: &str, origin: YearMonth) -> TransitionRow {
    TransitionRow {
        metric: metric.to_string(),
        before: fit.first_segment.trend().to_string(),
        after: fit.second_segment.map(|s| s.trend().to_string()),
        break_date: fit.breakpoint.and_then(|x| month_of(origin, x)),
    }
}

/// Serializable fit report: the fit itself plus the metric and calendar
/// context needed to read it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub metric: String,
    pub origin: YearMonth,
    pub break_date: Option<YearMonth>,
    pub summary: String,
    pub options: PhaseOptions,
    pub excluded: Vec<YearMonth>,
    pub fit: PhaseFit,
}

impl PhaseReport {
    pub fn new(
        fit: PhaseFit,
        metric: &str,
        origin: YearMonth,
        options: PhaseOptions,
        excluded: Vec<YearMonth>,
    ) -> Self {
        let row = classify_transition(&fit, metric, origin);
        PhaseReport {
            metric: metric.to_string(),
            origin,
            break_date: row.break_date,
            summary: row.summary(),
            options,
            excluded,
            fit,
        }
    }
}
