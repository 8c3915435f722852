//! The three instrumented kernels: serial references, parallel schedules on
//! the simulated machine, and their declared transfer volumes.

pub mod black_scholes;
pub mod dmm;
pub mod fft;
pub mod inputs;
pub mod io;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use black_scholes::OptionPair;
use dmm::Matrix;

/// A functional result together with the cycles charged to produce it.
#[derive(Debug, Clone, PartialEq)]
pub struct Charged<T> {
    pub value: T,
    pub cycles: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorkloadKind {
    BlackScholes,
    Fft,
    Dmm,
}

impl WorkloadKind {
    pub const ALL: [WorkloadKind; 3] = [WorkloadKind::BlackScholes, WorkloadKind::Fft, WorkloadKind::Dmm];

    pub fn as_str(self) -> &'static str {
        match self {
            WorkloadKind::BlackScholes => "black-scholes",
            WorkloadKind::Fft => "fft",
            WorkloadKind::Dmm => "dmm",
        }
    }
}

impl fmt::Display for WorkloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WorkloadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WorkloadKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown workload `{s}` (expected black-scholes, fft or dmm)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommPattern {
    None,
    Butterfly,
    CannonShift,
}

/// A workload kind at a task size `N` (option pairs, complex samples, or
/// matrix elements per operand).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkloadSpec {
    kind: WorkloadKind,
    task_size: usize,
}

impl WorkloadSpec {
    pub fn new(kind: WorkloadKind, task_size: usize) -> Result<Self> {
        if task_size == 0 {
            return Err(Error::Config("task size must be positive".into()));
        }
        match kind {
            WorkloadKind::BlackScholes => {}
            WorkloadKind::Fft => {
                fft::log2_exact(task_size).map_err(|e| Error::Config(e.to_string()))?;
            }
            WorkloadKind::Dmm => {
                dmm::side_of(task_size).map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        Ok(WorkloadSpec { kind, task_size })
    }

    pub fn kind(&self) -> WorkloadKind {
        self.kind
    }

    pub fn task_size(&self) -> usize {
        self.task_size
    }

    /// Cycles of the serial run on one 1-BCE core.
    pub fn serial_cycles(&self) -> u64 {
        let n = self.task_size as u64;
        match self.kind {
            WorkloadKind::BlackScholes => black_scholes::CYCLES_PER_PAIR * n,
            WorkloadKind::Fft => fft::CYCLES_PER_ELEMENT_STAGE * n * u64::from(self.task_size.trailing_zeros()),
            WorkloadKind::Dmm => {
                let side = self.side() as u64;
                dmm::CYCLES_PER_MAC * side * side * side
            }
        }
    }

    /// Elements moved at sync-down plus sync-up on a multicore machine.
    pub fn sync_elements(&self) -> u64 {
        let n = self.task_size as u64;
        match self.kind {
            WorkloadKind::BlackScholes => {
                (black_scholes::INPUTS_PER_PAIR + black_scholes::OUTPUTS_PER_PAIR) as u64 * n
            }
            WorkloadKind::Fft => 2 * n,
            WorkloadKind::Dmm => 3 * n,
        }
    }

    pub fn comm_pattern(&self) -> CommPattern {
        match self.kind {
            WorkloadKind::BlackScholes => CommPattern::None,
            WorkloadKind::Fft => CommPattern::Butterfly,
            WorkloadKind::Dmm => CommPattern::CannonShift,
        }
    }

    fn side(&self) -> usize {
        (self.task_size as f64).sqrt().round() as usize
    }

    /// Checks that `nc` cores can share the task.
    pub fn check_cores(&self, nc: usize) -> Result<()> {
        if nc == 0 || nc > self.task_size {
            return Err(Error::Config(format!(
                "core count {nc} must be between 1 and the task size {}",
                self.task_size
            )));
        }
        match self.kind {
            WorkloadKind::BlackScholes => Ok(()),
            WorkloadKind::Fft => fft::check_partition(self.task_size, nc),
            WorkloadKind::Dmm => dmm::grid_side(self.side(), nc).map(|_| ()),
        }
    }

    /// Primary data units held by each core after sync-down: option pairs,
    /// complex samples, or elements of each operand block.
    pub fn partition(&self, nc: usize) -> Result<Vec<usize>> {
        self.check_cores(nc)?;
        Ok(match self.kind {
            WorkloadKind::BlackScholes => black_scholes::pair_ranges(self.task_size, nc)
                .into_iter()
                .map(|r| r.len())
                .collect(),
            WorkloadKind::Fft | WorkloadKind::Dmm => vec![self.task_size / nc; nc],
        })
    }

    /// `(sync_elements, comm_elements)` for a run on `nc` cores. A single
    /// core keeps everything local, so both are zero at `nc = 1`.
    pub fn declared_volumes(&self, nc: usize) -> Result<(u64, u64)> {
        self.check_cores(nc)?;
        if nc == 1 {
            return Ok((0, 0));
        }
        let n = self.task_size as u64;
        let comm = match self.kind {
            WorkloadKind::BlackScholes => 0,
            WorkloadKind::Fft => n * u64::from(nc.trailing_zeros()),
            WorkloadKind::Dmm => 2 * n * (nc as f64).sqrt().round() as u64,
        };
        Ok((self.sync_elements(), comm))
    }
}

/// Input data for one workload run.
#[derive(Debug, Clone, PartialEq)]
pub enum WorkloadInputs {
    BlackScholes(Vec<OptionPair>),
    Fft(Vec<Complex64>),
    Dmm { a: Matrix, b: Matrix },
}

impl WorkloadInputs {
    /// Seeded pseudo-random inputs of task size `task_size`.
    pub fn generate(spec: &WorkloadSpec, seed: u64) -> Self {
        let n = spec.task_size();
        match spec.kind() {
            WorkloadKind::BlackScholes => WorkloadInputs::BlackScholes(inputs::option_pairs(n, seed)),
            WorkloadKind::Fft => WorkloadInputs::Fft(inputs::complex_samples(n, seed)),
            WorkloadKind::Dmm => {
                let side = spec.side();
                WorkloadInputs::Dmm {
                    a: inputs::matrix(side, seed),
                    b: inputs::matrix(side, seed.wrapping_add(1)),
                }
            }
        }
    }

    pub fn kind(&self) -> WorkloadKind {
        match self {
            WorkloadInputs::BlackScholes(_) => WorkloadKind::BlackScholes,
            WorkloadInputs::Fft(_) => WorkloadKind::Fft,
            WorkloadInputs::Dmm { .. } => WorkloadKind::Dmm,
        }
    }

    pub fn task_size(&self) -> usize {
        match self {
            WorkloadInputs::BlackScholes(p) => p.len(),
            WorkloadInputs::Fft(s) => s.len(),
            WorkloadInputs::Dmm { a, .. } => a.side() * a.side(),
        }
    }

    pub fn spec(&self) -> Result<WorkloadSpec> {
        WorkloadSpec::new(self.kind(), self.task_size())
    }
}

/// Output data of one workload run.
#[derive(Debug, Clone, PartialEq)]
pub enum WorkloadOutput {
    BlackScholes(Vec<OptionPair>),
    Fft(Vec<Complex64>),
    Dmm(Matrix),
}

impl WorkloadOutput {
    /// Deviation from `reference` in the workload's own metric: largest
    /// absolute price difference, relative L2 error, or largest elementwise
    /// difference.
    pub fn deviation(&self, reference: &WorkloadOutput) -> Result<f64> {
        match (self, reference) {
            (WorkloadOutput::BlackScholes(a), WorkloadOutput::BlackScholes(b)) if a.len() == b.len() => Ok(a
                .iter()
                .zip(b)
                .map(|(x, y)| (x.call_price - y.call_price).abs().max((x.put_price - y.put_price).abs()))
                .fold(0.0, f64::max)),
            (WorkloadOutput::Fft(a), WorkloadOutput::Fft(b)) if a.len() == b.len() => {
                let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
                let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
                Ok(if den == 0.0 { num.sqrt() } else { (num / den).sqrt() })
            }
            (WorkloadOutput::Dmm(a), WorkloadOutput::Dmm(b)) if a.side() == b.side() => Ok(a.max_abs_diff(b)),
            _ => Err(Error::Simulation("output shape differs from the reference".into())),
        }
    }

    /// Largest acceptable [`deviation`](Self::deviation) from the serial reference.
    pub fn tolerance(kind: WorkloadKind) -> f64 {
        match kind {
            WorkloadKind::BlackScholes => 1e-9,
            WorkloadKind::Fft => 1e-9,
            WorkloadKind::Dmm => 1e-5,
        }
    }
}
