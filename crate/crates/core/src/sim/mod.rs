//! Cycle-level symmetric multicore simulation of the instrumented workloads.

pub mod machine;
pub mod trace;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSample, SpeedupCurve};
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::model::{speedup_sym, ChipBudget, PerformanceLaw, PowerLaw, WorkloadModel};
use crate::workloads::{black_scholes, dmm, fft, Charged, WorkloadInputs, WorkloadOutput, WorkloadSpec};
use machine::{Machine, MachineParams, TraceEvent};

/// Cycles spent in each execution phase; they add up to the run time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTrace {
    pub t_seq: u64,
    pub t_sync_down: u64,
    pub t_compute: u64,
    pub t_comm: u64,
    pub t_sync_up: u64,
}

impl PhaseTrace {
    pub fn total(&self) -> u64 {
        self.t_seq + self.t_sync_down + self.t_compute + self.t_comm + self.t_sync_up
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimConfig {
    task_size: usize,
    total_bce: Option<usize>,
    core_size: usize,
    #[serde(default = "default_exponent")]
    perf_exponent: f64,
    #[serde(default = "one")]
    transfer_cost: u64,
    #[serde(default = "one")]
    hop_cost: u64,
}

fn default_exponent() -> f64 {
    PerformanceLaw::POLLACK.exponent()
}

fn one() -> u64 {
    1
}

/// One simulated chip: `n` BCEs split into `n / r` cores of size `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSimConfig")]
pub struct SimConfig {
    task_size: usize,
    total_bce: usize,
    core_size: usize,
    perf_exponent: f64,
    transfer_cost: u64,
    hop_cost: u64,
}

impl TryFrom<RawSimConfig> for SimConfig {
    type Error = Error;

    fn try_from(raw: RawSimConfig) -> Result<Self> {
        let cfg = SimConfig {
            task_size: raw.task_size,
            total_bce: raw.total_bce.unwrap_or(raw.task_size),
            core_size: raw.core_size,
            perf_exponent: raw.perf_exponent,
            transfer_cost: raw.transfer_cost,
            hop_cost: raw.hop_cost,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl SimConfig {
    /// Defaults: `n = N`, square-root performance law, unit transfer and hop costs.
    pub fn new(task_size: usize, core_size: usize) -> Result<Self> {
        let cfg = SimConfig {
            task_size,
            total_bce: task_size,
            core_size,
            perf_exponent: default_exponent(),
            transfer_cost: 1,
            hop_cost: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.task_size == 0 || self.total_bce == 0 || self.core_size == 0 {
            return Err(Error::Config("task_size, total_bce and core_size must be positive".into()));
        }
        if !self.total_bce.is_multiple_of(self.core_size) {
            return Err(Error::Config(format!(
                "core_size {} does not divide total_bce {}",
                self.core_size, self.total_bce
            )));
        }
        if self.cores() > self.task_size {
            return Err(Error::Config(format!(
                "{} cores exceed the task size {}",
                self.cores(),
                self.task_size
            )));
        }
        PerformanceLaw::new(self.perf_exponent).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    pub fn with_total_bce(mut self, n: usize) -> Result<Self> {
        self.total_bce = n;
        self.validate()?;
        Ok(self)
    }

    pub fn with_core_size(mut self, r: usize) -> Result<Self> {
        self.core_size = r;
        self.validate()?;
        Ok(self)
    }

    pub fn with_perf_exponent(mut self, e: f64) -> Result<Self> {
        self.perf_exponent = e;
        self.validate()?;
        Ok(self)
    }

    pub fn with_costs(mut self, transfer_cost: u64, hop_cost: u64) -> Self {
        self.transfer_cost = transfer_cost;
        self.hop_cost = hop_cost;
        self
    }

    pub fn task_size(&self) -> usize {
        self.task_size
    }

    pub fn total_bce(&self) -> usize {
        self.total_bce
    }

    pub fn core_size(&self) -> usize {
        self.core_size
    }

    pub fn perf_exponent(&self) -> f64 {
        self.perf_exponent
    }

    pub fn transfer_cost(&self) -> u64 {
        self.transfer_cost
    }

    pub fn hop_cost(&self) -> u64 {
        self.hop_cost
    }

    pub fn cores(&self) -> usize {
        self.total_bce / self.core_size
    }

    pub fn law(&self) -> PerformanceLaw {
        PerformanceLaw::new(self.perf_exponent).expect("validated on construction")
    }

    fn machine_params(&self) -> MachineParams {
        MachineParams {
            cores: self.cores(),
            perf: (self.core_size as f64).powf(self.perf_exponent),
            transfer_cost: self.transfer_cost,
            hop_cost: self.hop_cost,
        }
    }
}

/// Measured times and intensities of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub t1_serial: u64,
    pub tmc: u64,
    pub ts_serial_equiv: u64,
    pub tc_serial_equiv: u64,
    pub f1_measured: f64,
    pub f2_measured: f64,
    pub speedup: f64,
}

/// Everything one parallel run produced.
#[derive(Debug, Clone)]
pub struct SimRun {
    pub config: SimConfig,
    pub report: SimReport,
    pub phases: PhaseTrace,
    pub sync_moved: u64,
    pub comm_moved: u64,
    pub events: Vec<TraceEvent>,
    pub output: WorkloadOutput,
}

/// Serial reference on one 1-BCE core.
pub fn run_serial(inputs: &WorkloadInputs) -> Result<Charged<WorkloadOutput>> {
    inputs.spec()?;
    Ok(match inputs {
        WorkloadInputs::BlackScholes(pairs) => {
            let c = black_scholes::black_scholes_serial(pairs)?;
            Charged { value: WorkloadOutput::BlackScholes(c.value), cycles: c.cycles }
        }
        WorkloadInputs::Fft(samples) => {
            let c = fft::fft_serial(samples)?;
            Charged { value: WorkloadOutput::Fft(c.value), cycles: c.cycles }
        }
        WorkloadInputs::Dmm { a, b } => {
            let c = dmm::dmm_serial(a, b)?;
            Charged { value: WorkloadOutput::Dmm(c.value), cycles: c.cycles }
        }
    })
}

pub fn run_parallel(inputs: &WorkloadInputs, config: &SimConfig, exec: Execution) -> Result<SimRun> {
    simulate(inputs, config, exec, false)
}

/// Like [`run_parallel`], additionally recording per-core trace events.
pub fn run_parallel_traced(inputs: &WorkloadInputs, config: &SimConfig, exec: Execution) -> Result<SimRun> {
    simulate(inputs, config, exec, true)
}

fn simulate(inputs: &WorkloadInputs, config: &SimConfig, exec: Execution, record: bool) -> Result<SimRun> {
    let spec = inputs.spec()?;
    if spec.task_size() != config.task_size() {
        return Err(Error::Config(format!(
            "config task_size {} does not match the {} input elements",
            config.task_size(),
            spec.task_size()
        )));
    }
    spec.check_cores(config.cores())?;
    let reference = run_serial(inputs)?;
    let params = config.machine_params();

    macro_rules! drive {
        ($machine:ident, $body:expr, $wrap:path) => {{
            let mut $machine = Machine::new(params, exec, record);
            let out = $body?;
            let stats = (
                $machine.clock(),
                $machine.phases(),
                $machine.sync_moved(),
                $machine.comm_moved(),
            );
            ($wrap(out), stats, $machine.into_events())
        }};
    }

    let (output, (clock, phases, sync_moved, comm_moved), events) = match inputs {
        WorkloadInputs::BlackScholes(pairs) => drive!(m, black_scholes::run_parallel(pairs, &mut m), WorkloadOutput::BlackScholes),
        WorkloadInputs::Fft(samples) => drive!(m, fft::run_parallel(samples, &mut m), WorkloadOutput::Fft),
        WorkloadInputs::Dmm { a, b } => drive!(m, dmm::run_parallel(a, b, &mut m), WorkloadOutput::Dmm),
    };

    let deviation = output.deviation(&reference.value)?;
    let tolerance = WorkloadOutput::tolerance(spec.kind());
    if !(deviation <= tolerance) {
        return Err(Error::Simulation(format!(
            "{} on {} cores deviates from the serial reference by {deviation:e} (tolerance {tolerance:e})",
            spec.kind(),
            config.cores()
        )));
    }

    let t1 = reference.cycles;
    let ts = sync_moved * config.transfer_cost();
    let tc = comm_moved * config.transfer_cost();
    let report = SimReport {
        t1_serial: t1,
        tmc: clock,
        ts_serial_equiv: ts,
        tc_serial_equiv: tc,
        f1_measured: tc as f64 / t1 as f64,
        f2_measured: ts as f64 / t1 as f64,
        speedup: t1 as f64 / clock as f64,
    };
    Ok(SimRun {
        config: *config,
        report,
        phases,
        sync_moved,
        comm_moved,
        events,
        output,
    })
}

/// `(f1, f2)` of a report.
pub fn measure_intensities(report: &SimReport) -> Result<(f64, f64)> {
    if report.t1_serial == 0 {
        return Err(domain("t1_serial is zero; intensities are undefined"));
    }
    let t1 = report.t1_serial as f64;
    Ok((report.tc_serial_equiv as f64 / t1, report.ts_serial_equiv as f64 / t1))
}

/// All divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|r| n.is_multiple_of(*r)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimPoint {
    pub r: usize,
    pub nc: usize,
    pub report: SimReport,
}

/// Results of a core-size sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimCurves {
    pub points: Vec<SimPoint>,
    /// Core sizes whose core count the workload cannot be partitioned over.
    pub skipped: Vec<usize>,
    pub law: PerformanceLaw,
    pub total_bce: usize,
}

impl SimCurves {
    fn curve(&self, label: &str, value: impl Fn(&SimPoint) -> f64) -> Result<SpeedupCurve> {
        let samples = self
            .points
            .iter()
            .map(|p| CurveSample {
                r: p.r as f64,
                nc: p.nc as f64,
                value: value(p),
            })
            .collect();
        SpeedupCurve::new(label, samples)
    }

    pub fn speedup(&self) -> Result<SpeedupCurve> {
        self.curve("sim_speedup", |p| p.report.speedup)
    }

    pub fn f1(&self) -> Result<SpeedupCurve> {
        self.curve("f1_measured", |p| p.report.f1_measured)
    }

    pub fn f2(&self) -> Result<SpeedupCurve> {
        self.curve("f2_measured", |p| p.report.f2_measured)
    }

    /// Symmetric model speedup with `f = 1` and the intensities measured at
    /// each point.
    pub fn overlay(&self) -> Result<SpeedupCurve> {
        let mut samples = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let w = WorkloadModel::new(
                1.0,
                PowerLaw::constant(p.report.f1_measured)?,
                PowerLaw::constant(p.report.f2_measured)?,
            )?;
            let budget = ChipBudget::new(self.total_bce as f64, p.r as f64)?;
            samples.push(CurveSample {
                r: p.r as f64,
                nc: p.nc as f64,
                value: speedup_sym(&budget, &w, self.law),
            });
        }
        SpeedupCurve::new("model_overlay", samples)
    }
}

/// Runs `inputs` at every core size in `r_values` (ascending divisors of
/// `base.total_bce()`), skipping sizes whose core count the workload cannot
/// be partitioned over.
pub fn speedup_curve_sim(
    inputs: &WorkloadInputs,
    base: &SimConfig,
    r_values: &[usize],
    exec: Execution,
) -> Result<SimCurves> {
    let spec: WorkloadSpec = inputs.spec()?;
    let mut runnable = Vec::new();
    let mut skipped = Vec::new();
    for &r in r_values {
        let cfg = base.with_core_size(r)?;
        if spec.check_cores(cfg.cores()).is_ok() {
            runnable.push(cfg);
        } else {
            skipped.push(r);
        }
    }
    let points = exec.try_map(&runnable, |cfg| {
        // the sweep already fans out; each machine runs its cores in turn
        let run = run_parallel(inputs, cfg, Execution::Sequential)?;
        Ok::<_, Error>(SimPoint {
            r: cfg.core_size(),
            nc: cfg.cores(),
            report: run.report,
        })
    })?;
    Ok(SimCurves {
        points,
        skipped,
        law: base.law(),
        total_bce: base.total_bce(),
    })
}
