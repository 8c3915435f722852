//! Multicore speedup modeling with inter-core communication and
//! sequential-to-parallel synchronization costs.
//!
//! - [`model`]: the extended Amdahl model for symmetric and asymmetric chips.
//! - [`baselines`]: Hill–Marty, Cassidy, Eyerman–Eeckhout and Gunther.
//! - [`optimize`]: optimal core size, asymptotic limits, sweeps and the
//!   schedule advisor.
//! - [`sim`] and [`workloads`]: a cycle-level symmetric multicore running
//!   Black–Scholes, FFT and dense matrix multiplication.
//!
//! ```
//! use mcspeedup_core::{speedup_sym, ChipBudget, PerformanceLaw, PowerLaw, WorkloadModel};
//!
//! let w = WorkloadModel::new(0.99, PowerLaw::new(0.001, 0.5)?, PowerLaw::constant(0.01)?)?;
//! let s = speedup_sym(&ChipBudget::new(256.0, 4.0)?, &w, PerformanceLaw::POLLACK);
//! assert!(s > 1.0 && s < 64.0);
//! # Ok::<(), mcspeedup_core::Error>(())
//! ```

// Negated comparisons are used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod catalog;
pub mod curve;
pub mod error;
pub mod exec;
pub mod model;
pub mod optimize;
pub mod sim;
pub mod workloads;

pub use catalog::{ModelName, SpeedupModel};
pub use curve::{CurveSample, SpeedupCurve};
pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{
    amdahl_speedup, extended_amdahl, perf_par, perf_seq, speedup, speedup_asym, speedup_sym, ChipBudget,
    PerformanceLaw, PowerLaw, Topology, WorkloadModel,
};
pub use sim::{measure_intensities, run_parallel, run_serial, speedup_curve_sim, SimConfig, SimReport};
pub use workloads::{WorkloadInputs, WorkloadKind, WorkloadSpec};
