//! The four comparison models recast over the same `(n, r, f)` framework:
//! Hill–Marty, Cassidy–Andreou, Eyerman–Eeckhout and Gunther's universal
//! scalability law.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{check_fraction, ChipBudget, PerformanceLaw, Topology};

/// Hill–Marty speedup.
pub fn hm_speedup(budget: &ChipBudget, f: f64, topology: Topology, law: PerformanceLaw) -> Result<f64> {
    check_fraction("parallel fraction f", f)?;
    let (n, r) = (budget.n(), budget.r());
    let perf = law.at(r);
    Ok(match topology {
        Topology::Symmetric => perf / ((1.0 - f) + f * r / n),
        Topology::Asymmetric => perf / ((1.0 - f) + f * perf / (perf + n - r)),
    })
}

/// Delay-cost parameters of the Cassidy–Andreou model. The L2 share of a
/// core is `1 - processor_fraction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCassidy")]
pub struct CassidyParams {
    fp: f64,
    g0: f64,
    beta: f64,
    k: f64,
    d1: f64,
    d2: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCassidy {
    fp: f64,
    g0: f64,
    beta: f64,
    k: f64,
    d1: f64,
    d2: f64,
}

impl TryFrom<RawCassidy> for CassidyParams {
    type Error = Error;
    fn try_from(r: RawCassidy) -> Result<Self> {
        CassidyParams::new(r.fp, r.g0, r.beta, r.k, r.d1, r.d2)
    }
}

impl Default for CassidyParams {
    /// `fp = 0.66` with placeholder memory constants (`g0 = 0.9`, `beta = 1`,
    /// `k = 0.5`, `d1 = 10`, `d2 = 100`). The memory constants are not
    /// calibrated against any published CMP.
    fn default() -> Self {
        CassidyParams {
            fp: 0.66,
            g0: 0.9,
            beta: 1.0,
            k: 0.5,
            d1: 10.0,
            d2: 100.0,
        }
    }
}

impl CassidyParams {
    pub fn new(fp: f64, g0: f64, beta: f64, k: f64, d1: f64, d2: f64) -> Result<Self> {
        if !(fp > 0.0 && fp <= 1.0) {
            return Err(domain(format!("processor area fraction fp must lie in (0, 1], got {fp}")));
        }
        check_fraction("g0", g0)?;
        if !(beta > 0.0 && k > 0.0) {
            return Err(domain(format!("beta and k must be positive, got beta={beta}, k={k}")));
        }
        if !(d1 > 0.0 && d2 >= d1 && d2.is_finite()) {
            return Err(domain(format!("access times must satisfy d2 >= d1 > 0, got d1={d1}, d2={d2}")));
        }
        Ok(CassidyParams { fp, g0, beta, k, d1, d2 })
    }

    pub fn fp(&self) -> f64 {
        self.fp
    }

    pub fn fc(&self) -> f64 {
        1.0 - self.fp
    }

    pub fn with_d2(self, d2: f64) -> Result<Self> {
        CassidyParams::new(self.fp, self.g0, self.beta, self.k, self.d1, d2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CassidyCost {
    /// Delay cost `J_D`.
    pub value: f64,
    /// The L2 miss fraction `k * A_L2^-1/2` exceeded 1 and was clamped.
    pub miss_clamped: bool,
}

pub fn cassidy_cost(budget: &ChipBudget, f: f64, params: &CassidyParams) -> Result<CassidyCost> {
    check_fraction("parallel fraction f", f)?;
    let r = budget.r();
    let nc = budget.n() / r;
    let area_proc = params.fp * r;
    let area_l2 = params.fc() * r;
    let raw_miss = if area_l2 > 0.0 {
        params.k / area_l2.sqrt()
    } else {
        f64::INFINITY
    };
    let miss_clamped = raw_miss > 1.0;
    let miss = raw_miss.clamp(0.0, 1.0);
    let per_instr = params.g0 * params.beta / area_proc.sqrt()
        + (1.0 - params.g0) * (1.0 - miss) * params.d1
        + (1.0 - params.g0) * miss * params.d2;
    Ok(CassidyCost {
        value: (1.0 - f + f / nc) * per_instr,
        miss_clamped,
    })
}

pub fn cassidy_speedup(budget: &ChipBudget, f: f64, params: &CassidyParams) -> Result<f64> {
    Ok(1.0 / cassidy_cost(budget, f, params)?.value)
}

/// Critical-section workload description of the Eyerman–Eeckhout model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEe")]
pub struct EEParams {
    f_seq: f64,
    f_par_cs: f64,
    f_par_ncs: f64,
    p_cnt: f64,
    p_cs: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEe {
    f_seq: f64,
    f_par_cs: f64,
    f_par_ncs: f64,
    p_cnt: f64,
    p_cs: f64,
}

impl TryFrom<RawEe> for EEParams {
    type Error = Error;
    fn try_from(r: RawEe) -> Result<Self> {
        EEParams::new(r.f_seq, r.f_par_cs, r.f_par_ncs, r.p_cnt, r.p_cs)
    }
}

impl EEParams {
    pub fn new(f_seq: f64, f_par_cs: f64, f_par_ncs: f64, p_cnt: f64, p_cs: f64) -> Result<Self> {
        for (name, v) in [
            ("f_seq", f_seq),
            ("f_par_cs", f_par_cs),
            ("f_par_ncs", f_par_ncs),
            ("p_cnt", p_cnt),
            ("p_cs", p_cs),
        ] {
            check_fraction(name, v)?;
        }
        let total = f_seq + f_par_cs + f_par_ncs;
        if (total - 1.0).abs() > 1e-9 {
            return Err(domain(format!("f_seq + f_par_cs + f_par_ncs must equal 1, got {total}")));
        }
        Ok(EEParams { f_seq, f_par_cs, f_par_ncs, p_cnt, p_cs })
    }

    /// Figure preset: `f_seq = x`, 90% of the remainder free of critical
    /// sections, 10% inside them, `p_cnt = p_cs = 0.1`.
    ///
    /// Note that `x` is used as the *sequential* fraction, exactly as the
    /// figure parameter list states, even though elsewhere `f` denotes the
    /// parallel fraction.
    pub fn figure_preset(x: f64) -> Result<Self> {
        check_fraction("f", x)?;
        EEParams::new(x, 0.1 * (1.0 - x), 0.9 * (1.0 - x), 0.1, 0.1)
    }

    /// No critical sections: `f_seq = 1 - f`, `f_par_ncs = f`.
    pub fn without_critical_sections(f: f64) -> Result<Self> {
        check_fraction("f", f)?;
        EEParams::new(1.0 - f, 0.0, f, 0.0, 0.0)
    }

    pub fn f_seq(&self) -> f64 {
        self.f_seq
    }
}

/// Average-thread and slowest-thread critical-section times.
pub fn ee_times(budget: &ChipBudget, p: &EEParams, topology: Topology, law: PerformanceLaw) -> (f64, f64) {
    let (n, r) = (budget.n(), budget.r());
    let perf = law.at(r);
    let avg_serial = p.f_par_cs * p.p_cnt * p.p_cs / perf;
    let avg_par = p.f_par_cs * (1.0 - p.p_cnt * p.p_cs) + p.f_par_ncs;
    let slw_serial = p.f_par_cs * p.p_cnt / perf;
    let slw_par = p.f_par_cs * (1.0 - p.p_cnt) + p.f_par_ncs;
    match topology {
        Topology::Symmetric => (
            avg_serial + r * avg_par / (n * perf),
            // divisor 2n*perf(r) as printed
            slw_serial + r * slw_par / (2.0 * n * perf),
        ),
        Topology::Asymmetric => {
            let par_perf = perf + n - r;
            (avg_serial + avg_par / par_perf, slw_serial + slw_par / (2.0 * par_perf))
        }
    }
}

pub fn ee_speedup(budget: &ChipBudget, params: &EEParams, topology: Topology, law: PerformanceLaw) -> f64 {
    let (t_avg, t_slw) = ee_times(budget, params, topology, law);
    1.0 / (params.f_seq / law.at(budget.r()) + t_avg.max(t_slw))
}

/// Contention (`alpha`) and coherency (`beta_c`) coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGunther")]
pub struct GuntherParams {
    alpha: f64,
    beta_c: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGunther {
    alpha: f64,
    beta_c: f64,
}

impl TryFrom<RawGunther> for GuntherParams {
    type Error = Error;
    fn try_from(r: RawGunther) -> Result<Self> {
        GuntherParams::new(r.alpha, r.beta_c)
    }
}

impl GuntherParams {
    pub fn new(alpha: f64, beta_c: f64) -> Result<Self> {
        if alpha >= 0.0 && beta_c >= 0.0 && alpha.is_finite() && beta_c.is_finite() {
            Ok(GuntherParams { alpha, beta_c })
        } else {
            Err(domain(format!("alpha and beta_c must be finite and >= 0, got {alpha}, {beta_c}")))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta_c(&self) -> f64 {
        self.beta_c
    }
}

/// Universal scalability law: `nc / (1 + alpha (nc-1) + beta_c nc (nc-1))`.
pub fn gunther_par_speedup(nc: f64, params: &GuntherParams) -> Result<f64> {
    if !(nc >= 1.0) {
        return Err(domain(format!("core count must be >= 1, got {nc}")));
    }
    Ok(nc / (1.0 + params.alpha * (nc - 1.0) + params.beta_c * nc * (nc - 1.0)))
}

pub fn gunther_sym_speedup(budget: &ChipBudget, f: f64, params: &GuntherParams, law: PerformanceLaw) -> Result<f64> {
    check_fraction("parallel fraction f", f)?;
    let perf = law.at(budget.r());
    let par = gunther_par_speedup(budget.n() / budget.r(), params)?;
    Ok(1.0 / ((1.0 - f) / perf + f / (perf * par)))
}
