//! Labelled `(r, nc, value)` series used for sweeps and figure data.

use serde::{Deserialize, Serialize};

use crate::catalog::SpeedupModel;
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::model::{ChipBudget, PerformanceLaw, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub r: f64,
    pub nc: f64,
    pub value: f64,
}

/// Samples strictly increasing in `r` with finite values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedupCurve {
    label: String,
    samples: Vec<CurveSample>,
}

impl SpeedupCurve {
    pub fn new(label: impl Into<String>, samples: Vec<CurveSample>) -> Result<Self> {
        let label = label.into();
        for w in samples.windows(2) {
            if !(w[1].r > w[0].r) {
                return Err(domain(format!(
                    "curve `{label}`: samples must be strictly ordered by r ({} then {})",
                    w[0].r, w[1].r
                )));
            }
        }
        if let Some(bad) = samples.iter().find(|s| !s.value.is_finite()) {
            return Err(domain(format!("curve `{label}`: non-finite value at r = {}", bad.r)));
        }
        Ok(SpeedupCurve { label, samples })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample with the largest value (first one on ties).
    pub fn peak(&self) -> Option<CurveSample> {
        self.samples
            .iter()
            .copied()
            .fold(None, |best: Option<CurveSample>, s| match best {
                Some(b) if b.value >= s.value => Some(b),
                _ => Some(s),
            })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.value)
    }
}

/// Core sizes `1, 2, 4, ...` up to and including `n` (when `n` is a power of two).
pub fn power_of_two_grid(n: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = 1.0;
    while r <= n {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// `points` log-spaced core sizes from 1 to `n` inclusive.
pub fn log_grid(n: f64, points: usize) -> Vec<f64> {
    if points <= 1 || n <= 1.0 {
        return vec![1.0];
    }
    let ln = n.ln();
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| match i {
            0 => 1.0,
            i if i == points - 1 => n,
            i => (ln * i as f64 / last).exp(),
        })
        .collect()
}

/// Evaluates one model over an `r` grid.
pub fn model_curve(
    label: impl Into<String>,
    model: &SpeedupModel,
    n: f64,
    r_grid: &[f64],
    topology: Topology,
    law: PerformanceLaw,
    exec: Execution,
) -> Result<SpeedupCurve> {
    let samples = exec.try_map(r_grid, |&r| {
        let budget = ChipBudget::new(n, r)?;
        Ok::<_, Error>(CurveSample {
            r,
            nc: budget.cores(topology),
            value: model.evaluate(&budget, topology, law)?,
        })
    })?;
    SpeedupCurve::new(label, samples)
}
