//! JSON experiment configs, one schema per subcommand. Unknown keys are
//! rejected everywhere.

use mcspeedup_core::baselines::{CassidyParams, EEParams, GuntherParams};
use mcspeedup_core::curve::{log_grid, power_of_two_grid};
use mcspeedup_core::optimize::{IntensityPreset, SearchConfig};
use mcspeedup_core::sim::divisors;
use mcspeedup_core::workloads::inputs::DEFAULT_SEED;
use mcspeedup_core::{ModelName, PerformanceLaw, PowerLaw, Topology, WorkloadKind};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn zero_law() -> PowerLaw {
    PowerLaw::ZERO
}

fn default_gunther() -> GuntherParams {
    GuntherParams::new(0.001, 0.001).expect("valid constants")
}

/// Core sizes to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
#[derive(Default)]
pub enum RGrid {
    /// `1, 2, 4, ...` up to `n`.
    #[default]
    PowersOfTwo,
    /// Every integer divisor of `n`.
    Divisors,
    /// Log-spaced points from 1 to `n`.
    Log(usize),
    Values(Vec<f64>),
}


impl RGrid {
    pub fn resolve(&self, n: f64) -> Result<Vec<f64>, CliError> {
        let grid = match self {
            RGrid::PowersOfTwo => power_of_two_grid(n),
            RGrid::Divisors => {
                if n.fract() != 0.0 {
                    return Err(CliError::Config(format!("r_grid `divisors` needs an integer n, got {n}")));
                }
                divisors(n as usize).into_iter().map(|r| r as f64).collect()
            }
            RGrid::Log(points) if *points >= 2 => log_grid(n, *points),
            RGrid::Log(points) => {
                return Err(CliError::Config(format!("r_grid `log` needs at least 2 points, got {points}")))
            }
            RGrid::Values(v) => v.clone(),
        };
        if grid.is_empty() {
            return Err(CliError::Config("r_grid is empty".into()));
        }
        if let Some(bad) = grid.iter().find(|r| !(**r >= 1.0 && **r <= n)) {
            return Err(CliError::Config(format!("core size {bad} is outside [1, {n}]")));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config("r_grid values must be strictly increasing".into()));
        }
        Ok(grid)
    }
}

/// How `f` maps onto the Eyerman–Eeckhout parameter record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EeMapping {
    /// `f_seq = f`, `f_par_cs = 0.1 (1 - f)`, `f_par_ncs = 0.9 (1 - f)`,
    /// `p_cnt = p_cs = 0.1`: the figure parameter list taken literally.
    #[default]
    AsPrinted,
    /// Same split with `f_seq = 1 - f`, so `f` is the parallel fraction as
    /// in the other models.
    Complement,
}

impl EeMapping {
    pub fn params(self, f: f64) -> mcspeedup_core::Result<EEParams> {
        match self {
            EeMapping::AsPrinted => EEParams::figure_preset(f),
            EeMapping::Complement => EEParams::figure_preset(1.0 - f),
        }
    }
}

fn check_fs(fs: &[f64]) -> Result<(), CliError> {
    if fs.is_empty() {
        return Err(CliError::Config("`fs` must list at least one parallel fraction".into()));
    }
    if let Some(bad) = fs.iter().find(|f| !(**f >= 0.0 && **f <= 1.0)) {
        return Err(CliError::Config(format!("parallel fraction {bad} is outside [0, 1]")));
    }
    Ok(())
}

fn check_n(n: f64) -> Result<(), CliError> {
    if n >= 1.0 && n.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("n must be a finite value >= 1, got {n}")))
    }
}

/// `speedup`: speedup versus core size for several models and fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeedupConfig {
    pub n: f64,
    pub topology: Topology,
    #[serde(default)]
    pub perf_exponent: PerformanceLaw,
    pub fs: Vec<f64>,
    pub models: Vec<ModelName>,
    #[serde(default)]
    pub r_grid: RGrid,
    #[serde(default = "zero_law")]
    pub conn: PowerLaw,
    #[serde(default = "zero_law")]
    pub sync: PowerLaw,
    #[serde(default)]
    pub cassidy: CassidyParams,
    #[serde(default = "default_gunther")]
    pub gunther: GuntherParams,
    #[serde(default)]
    pub ee_mapping: EeMapping,
}

impl SpeedupConfig {
    pub fn validate(&self) -> Result<Vec<f64>, CliError> {
        check_n(self.n)?;
        check_fs(&self.fs)?;
        if self.models.is_empty() {
            return Err(CliError::Config("`models` must name at least one model".into()));
        }
        if let Some(m) = self.models.iter().find(|m| !m.supports(self.topology)) {
            return Err(CliError::Config(format!(
                "model `{m}` does not support the {} topology",
                self.topology
            )));
        }
        self.r_grid.resolve(self.n)
    }
}

/// Range `start, start + step, ...` up to and including `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let finite = self.start.is_finite() && self.stop.is_finite() && self.step.is_finite();
        if !finite || self.step <= 0.0 || self.stop < self.start {
            return Err(CliError::Config(format!(
                "range needs finite start <= stop and step > 0, got {self:?}"
            )));
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| self.start + i as f64 * self.step).collect())
    }
}

/// Maximum speedup versus the synchronization exponent `q` (`f1 = 0`,
/// `f2 = sync_coeff * nc^q`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyncSweepConfig {
    pub fs: Vec<f64>,
    pub q: Range,
    pub sync_coeff: f64,
}

/// Optimal core size versus `f` for named intensity presets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimalRSweepConfig {
    pub fs: Vec<f64>,
    pub presets: Vec<IntensityPreset>,
}

/// `optimal`: exactly one of the two sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimalConfig {
    pub n: f64,
    pub topology: Topology,
    #[serde(default)]
    pub perf_exponent: PerformanceLaw,
    #[serde(default)]
    pub search: SearchConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sync_sweep: Option<SyncSweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal_r_sweep: Option<OptimalRSweepConfig>,
}

impl OptimalConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_n(self.n)?;
        if self.search.grid_points < 512 {
            return Err(CliError::Config(format!(
                "search.grid_points must be at least 512, got {}",
                self.search.grid_points
            )));
        }
        match (&self.sync_sweep, &self.optimal_r_sweep) {
            (Some(s), None) => {
                check_fs(&s.fs)?;
                s.q.values()?;
                if !(s.sync_coeff >= 0.0 && s.sync_coeff.is_finite()) {
                    return Err(CliError::Config(format!("sync_coeff must be >= 0, got {}", s.sync_coeff)));
                }
                Ok(())
            }
            (None, Some(s)) => {
                check_fs(&s.fs)?;
                if s.presets.is_empty() {
                    return Err(CliError::Config("optimal_r_sweep needs at least one preset".into()));
                }
                Ok(())
            }
            _ => Err(CliError::Config(
                "exactly one of `sync_sweep` and `optimal_r_sweep` must be given".into(),
            )),
        }
    }
}

fn default_task_size() -> usize {
    256
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn one() -> u64 {
    1
}

/// `simulate`: core-size sweeps of the simulated workloads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub workloads: Vec<WorkloadKind>,
    #[serde(default = "default_task_size")]
    pub task_size: usize,
    /// Defaults to `task_size`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_bce: Option<usize>,
    #[serde(default)]
    pub perf_exponent: PerformanceLaw,
    #[serde(default = "one")]
    pub transfer_cost: u64,
    #[serde(default = "one")]
    pub hop_cost: u64,
    /// Defaults to every divisor of `total_bce`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core_sizes: Option<Vec<usize>>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Write one per-phase trace CSV per run.
    #[serde(default)]
    pub trace: bool,
    /// Write the workload inputs and serial reference outputs as CSV.
    #[serde(default)]
    pub write_data: bool,
}

impl SimulateConfig {
    pub fn total_bce(&self) -> usize {
        self.total_bce.unwrap_or(self.task_size)
    }

    pub fn validate(&self) -> Result<Vec<usize>, CliError> {
        if self.workloads.is_empty() {
            return Err(CliError::Config("`workloads` must name at least one workload".into()));
        }
        let n = self.total_bce();
        if n == 0 || self.task_size == 0 {
            return Err(CliError::Config("task_size and total_bce must be positive".into()));
        }
        let rs = match &self.core_sizes {
            Some(rs) => rs.clone(),
            None => divisors(n),
        };
        if rs.is_empty() || rs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config("core_sizes must be non-empty and strictly increasing".into()));
        }
        Ok(rs)
    }
}

/// `advise`: sequential-versus-parallel placement of one workload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdviseConfig {
    pub n: f64,
    pub f: f64,
    #[serde(default = "zero_law")]
    pub conn: PowerLaw,
    #[serde(default = "zero_law")]
    pub sync: PowerLaw,
    #[serde(default = "symmetric")]
    pub topology: Topology,
    #[serde(default)]
    pub perf_exponent: PerformanceLaw,
    #[serde(default)]
    pub search: SearchConfig,
}

fn symmetric() -> Topology {
    Topology::Symmetric
}

impl AdviseConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_n(self.n)?;
        check_fs(&[self.f])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_resolve() {
        assert_eq!(RGrid::PowersOfTwo.resolve(8.0).unwrap(), vec![1.0, 2.0, 4.0, 8.0]);
        assert_eq!(RGrid::Divisors.resolve(6.0).unwrap(), vec![1.0, 2.0, 3.0, 6.0]);
        assert_eq!(RGrid::Log(3).resolve(16.0).unwrap().len(), 3);
        assert!(RGrid::Values(vec![2.0, 1.0]).resolve(8.0).is_err());
        assert!(RGrid::Values(vec![0.5]).resolve(8.0).is_err());
        let g: RGrid = serde_json::from_str(r#"{"log": 9}"#).unwrap();
        assert_eq!(g, RGrid::Log(9));
        let g: RGrid = serde_json::from_str(r#""powers-of-two""#).unwrap();
        assert_eq!(g, RGrid::PowersOfTwo);
    }

    #[test]
    fn ranges_include_stop() {
        let r = Range { start: -2.0, stop: 1.0, step: 0.25 }.values().unwrap();
        assert_eq!(r.len(), 13);
        assert_eq!(*r.last().unwrap(), 1.0);
        assert!(Range { start: 1.0, stop: 0.0, step: 0.1 }.values().is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = serde_json::from_str::<AdviseConfig>("{\"n\": 256, \"f\": 0.9,\n \"colour\": 1}").unwrap_err();
        assert!(err.to_string().contains("colour"));
        assert_eq!(err.line(), 2);
    }

    #[test]
    fn optimal_needs_exactly_one_sweep() {
        let cfg: OptimalConfig = serde_json::from_str(r#"{"n": 256, "topology": "symmetric"}"#).unwrap();
        assert!(cfg.validate().is_err());
    }
}
