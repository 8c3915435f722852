//! Speedup model with sequential-to-parallel synchronization and inter-core
//! communication terms, for symmetric and asymmetric multicores.
//!
//! Chip resources are counted in base core equivalents (BCE). A core of size
//! `r` BCE delivers `r^e` performance (Pollack's rule for `e = 0.5`). The
//! workload is described by its parallel fraction `f`, its connectivity
//! intensity `f1(nc)` and its synchronization intensity `f2(nc)`, both power
//! laws in the core count `nc`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// `coeff * nc^exponent`, evaluated in the core count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPowerLaw")]
pub struct PowerLaw {
    coeff: f64,
    exponent: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPowerLaw {
    coeff: f64,
    exponent: f64,
}

impl TryFrom<RawPowerLaw> for PowerLaw {
    type Error = Error;
    fn try_from(raw: RawPowerLaw) -> Result<Self> {
        PowerLaw::new(raw.coeff, raw.exponent)
    }
}

impl PowerLaw {
    pub const ZERO: PowerLaw = PowerLaw {
        coeff: 0.0,
        exponent: 0.0,
    };

    pub fn new(coeff: f64, exponent: f64) -> Result<Self> {
        if !coeff.is_finite() || coeff < 0.0 {
            return Err(domain(format!("power-law coefficient must be finite and >= 0, got {coeff}")));
        }
        if !exponent.is_finite() {
            return Err(domain(format!("power-law exponent must be finite, got {exponent}")));
        }
        Ok(PowerLaw { coeff, exponent })
    }

    /// A constant intensity (exponent 0).
    pub fn constant(value: f64) -> Result<Self> {
        PowerLaw::new(value, 0.0)
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0.0
    }

    pub fn evaluate(&self, nc: f64) -> f64 {
        if self.coeff == 0.0 {
            0.0
        } else {
            self.coeff * nc.powf(self.exponent)
        }
    }
}

impl std::fmt::Display for PowerLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*nc^{}", self.coeff, self.exponent)
    }
}

/// Parallel fraction plus connectivity (`conn`, f1) and synchronization (`sync`, f2) intensities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWorkloadModel")]
pub struct WorkloadModel {
    f: f64,
    conn: PowerLaw,
    sync: PowerLaw,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkloadModel {
    f: f64,
    #[serde(default = "zero_law")]
    conn: PowerLaw,
    #[serde(default = "zero_law")]
    sync: PowerLaw,
}

fn zero_law() -> PowerLaw {
    PowerLaw::ZERO
}

impl TryFrom<RawWorkloadModel> for WorkloadModel {
    type Error = Error;
    fn try_from(raw: RawWorkloadModel) -> Result<Self> {
        WorkloadModel::new(raw.f, raw.conn, raw.sync)
    }
}

pub(crate) fn check_fraction(name: &str, f: f64) -> Result<()> {
    if (0.0..=1.0).contains(&f) {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in [0, 1], got {f}")))
    }
}

impl WorkloadModel {
    pub fn new(f: f64, conn: PowerLaw, sync: PowerLaw) -> Result<Self> {
        check_fraction("parallel fraction f", f)?;
        Ok(WorkloadModel { f, conn, sync })
    }

    /// Plain Amdahl workload: no synchronization or communication cost.
    pub fn amdahl(f: f64) -> Result<Self> {
        WorkloadModel::new(f, PowerLaw::ZERO, PowerLaw::ZERO)
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn conn(&self) -> PowerLaw {
        self.conn
    }

    pub fn sync(&self) -> PowerLaw {
        self.sync
    }

    pub fn with_f(self, f: f64) -> Result<Self> {
        WorkloadModel::new(f, self.conn, self.sync)
    }

    pub fn with_conn(self, conn: PowerLaw) -> Self {
        WorkloadModel { conn, ..self }
    }

    pub fn with_sync(self, sync: PowerLaw) -> Self {
        WorkloadModel { sync, ..self }
    }
}

/// Total chip resources `n` and core size `r`, both in BCE units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChipBudget {
    n: f64,
    r: f64,
}

impl ChipBudget {
    pub fn new(n: f64, r: f64) -> Result<Self> {
        if !n.is_finite() || n < 1.0 {
            return Err(domain(format!("total budget n must be finite and >= 1, got {n}")));
        }
        if !(r >= 1.0 && r <= n) {
            return Err(domain(format!("core size r must lie in [1, n = {n}], got {r}")));
        }
        Ok(ChipBudget { n, r })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Core count for the given topology: `n/r` symmetric, `n - r + 1` asymmetric.
    pub fn cores(&self, topology: Topology) -> f64 {
        match topology {
            Topology::Symmetric => self.n / self.r,
            Topology::Asymmetric => self.n - self.r + 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// `n/r` identical cores of size `r`.
    Symmetric,
    /// One core of size `r` plus `n - r` single-BCE cores.
    Asymmetric,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Symmetric => "symmetric",
            Topology::Asymmetric => "asymmetric",
        }
    }
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Single-core performance as a function of core size, `perf(r) = r^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PerformanceLaw {
    exponent: f64,
}

impl Default for PerformanceLaw {
    fn default() -> Self {
        PerformanceLaw::POLLACK
    }
}

impl TryFrom<f64> for PerformanceLaw {
    type Error = Error;
    fn try_from(exponent: f64) -> Result<Self> {
        PerformanceLaw::new(exponent)
    }
}

impl From<PerformanceLaw> for f64 {
    fn from(law: PerformanceLaw) -> f64 {
        law.exponent
    }
}

impl PerformanceLaw {
    /// Square-root law.
    pub const POLLACK: PerformanceLaw = PerformanceLaw { exponent: 0.5 };

    pub fn new(exponent: f64) -> Result<Self> {
        if exponent > 0.0 && exponent <= 1.0 {
            Ok(PerformanceLaw { exponent })
        } else {
            Err(domain(format!("performance exponent must lie in (0, 1], got {exponent}")))
        }
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// Unchecked evaluation, used once `r >= 1` is already established.
    #[inline]
    pub(crate) fn at(&self, r: f64) -> f64 {
        if self.exponent == 0.5 {
            r.sqrt()
        } else {
            r.powf(self.exponent)
        }
    }
}

pub fn perf_seq(r: f64, law: PerformanceLaw) -> Result<f64> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(domain(format!("core size r must be >= 1, got {r}")));
    }
    Ok(law.at(r))
}

/// Parallel-phase performance of the cores other than the sequential one.
pub fn perf_par(n: f64, r: f64, topology: Topology, law: PerformanceLaw) -> Result<f64> {
    let budget = ChipBudget::new(n, r)?;
    Ok(match topology {
        Topology::Symmetric => (budget.n - budget.r) / budget.r * law.at(budget.r),
        Topology::Asymmetric => budget.n - budget.r,
    })
}

fn check_cores(nc: f64) -> Result<()> {
    if nc >= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("core count must be >= 1, got {nc}")))
    }
}

/// Amdahl's law, `1 / (1 - f + f/nc)`. `nc` may be `f64::INFINITY`.
pub fn amdahl_speedup(f: f64, nc: f64) -> Result<f64> {
    check_fraction("parallel fraction f", f)?;
    check_cores(nc)?;
    Ok(1.0 / (1.0 - f + f / nc))
}

/// Amdahl's law with the connectivity and synchronization terms:
/// `1 / (1 - f + f/nc + f1(nc)/nc + f2(nc))`.
pub fn extended_amdahl(workload: &WorkloadModel, nc: f64) -> Result<f64> {
    check_cores(nc)?;
    Ok(1.0 / extended_denominator(workload, nc))
}

#[inline]
fn extended_denominator(w: &WorkloadModel, nc: f64) -> f64 {
    (1.0 - w.f) + w.f / nc + w.conn.evaluate(nc) / nc + w.sync.evaluate(nc)
}

/// Symmetric multicore speedup relative to one BCE core.
pub fn speedup_sym(budget: &ChipBudget, workload: &WorkloadModel, law: PerformanceLaw) -> f64 {
    let nc = budget.n / budget.r;
    law.at(budget.r) / extended_denominator(workload, nc)
}

/// Asymmetric multicore speedup relative to one BCE core.
pub fn speedup_asym(budget: &ChipBudget, workload: &WorkloadModel, law: PerformanceLaw) -> f64 {
    let (n, r) = (budget.n, budget.r);
    let perf = law.at(r);
    let nc = n - r + 1.0;
    let denom = (1.0 - workload.f)
        + workload.f * perf / (perf + n - r)
        + workload.conn.evaluate(nc) / nc
        + workload.sync.evaluate(nc);
    perf / denom
}

pub fn speedup(
    budget: &ChipBudget,
    workload: &WorkloadModel,
    law: PerformanceLaw,
    topology: Topology,
) -> f64 {
    match topology {
        Topology::Symmetric => speedup_sym(budget, workload, law),
        Topology::Asymmetric => speedup_asym(budget, workload, law),
    }
}
