#![allow(dead_code)]

use a1tk_core::{Interval, StepWeight};
use proptest::prelude::*;

pub fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Step weights with 1..=max_cells cells, lengths in [0.01, 1] before
/// normalisation and values log-spread over [1e−2, 1e2].
pub fn step_weight(max_cells: usize) -> impl Strategy<Value = StepWeight> {
    prop::collection::vec((0.01f64..1.0, -2.0f64..2.0), 1..=max_cells).prop_map(|cells| {
        let (lengths, values): (Vec<f64>, Vec<f64>) = cells.into_iter().map(|(l, e)| (l, 10f64.powf(e))).unzip();
        StepWeight::from_cells(&lengths, &values).unwrap()
    })
}

/// Weights drawn from a small value alphabet so that ties and merges occur.
pub fn step_weight_with_ties(max_cells: usize) -> impl Strategy<Value = StepWeight> {
    prop::collection::vec((0.01f64..1.0, prop::sample::select(vec![0.5, 1.0, 2.0, 3.0])), 1..=max_cells).prop_map(
        |cells| {
            let (lengths, values): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
            StepWeight::from_cells(&lengths, &values).unwrap()
        },
    )
}

pub fn interval() -> impl Strategy<Value = Interval> {
    (0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("non-degenerate", |(a, b)| (a - b).abs() > 1e-6)
        .prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
}
