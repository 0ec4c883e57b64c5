//! Shared inputs for the benchmarks.

use asevo_core::generators::{generate, GeneratorParams};
use asevo_core::phasefit::SeriesPoint;
use asevo_core::AsGraph;

/// A BA graph with `n` nodes and two links per new node.
pub fn ba_graph(n: usize, seed: u64) -> AsGraph {
    generate(&GeneratorParams::ba(n, 2, seed)).expect("valid BA parameters")
}

/// Exponential growth for `knee` months, then linear growth up to `len`.
pub fn two_phase_series(len: i64, knee: i64) -> Vec<SeriesPoint> {
    let rate = 0.035;
    let at_knee = 3000.0 * (rate * (knee - 1) as f64).exp();
    (1..=len)
        .map(|x| {
            let y =
                if x <= knee { 3000.0 * (rate * (x - 1) as f64).exp() } else { at_knee + 217.0 * (x - knee) as f64 };
            SeriesPoint::new(x, y * (1.0 + 0.005 * (x as f64 * 1.3).sin()))
        })
        .collect()
}
