//! Core-size optimization, asymptotic speedup limits, optimizer sweeps and a
//! synchronization/connectivity-aware scheduling advisor.

use serde::{Deserialize, Serialize};

use crate::baselines::hm_speedup;
use crate::catalog::SpeedupModel;
use crate::curve::log_grid;
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::model::{check_fraction, speedup, ChipBudget, PerformanceLaw, PowerLaw, Topology, WorkloadModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumResult {
    pub r_opt: f64,
    pub speedup_max: f64,
    /// `r_opt` sits on a boundary of `[1, n]`.
    pub clamped: bool,
    /// Divisor of `n` closest to `r_opt` (only when `n` is integral).
    pub nearest_divisor: Option<u64>,
}

impl OptimumResult {
    fn new(n: f64, r_opt: f64, speedup_max: f64, clamped: bool) -> Self {
        OptimumResult {
            r_opt,
            speedup_max,
            clamped,
            nearest_divisor: nearest_divisor(n, r_opt),
        }
    }
}

/// Divisor of `n` closest to `r` in log distance; `None` if `n` is not an integer.
pub fn nearest_divisor(n: f64, r: f64) -> Option<u64> {
    if n.fract() != 0.0 || n < 1.0 || n > u64::MAX as f64 {
        return None;
    }
    let n = n as u64;
    let target = r.max(1.0).ln();
    let mut best = (1u64, f64::INFINITY);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            for c in [d, n / d] {
                let dist = ((c as f64).ln() - target).abs();
                if dist < best.1 || (dist == best.1 && c < best.0) {
                    best = (c, dist);
                }
            }
        }
        d += 1;
    }
    Some(best.0)
}

/// Closed-form Hill–Marty symmetric optimum `n(1-f)/f`, clamped to `[1, n]`.
pub fn optimal_r_hm_sym(n: f64, f: f64, law: PerformanceLaw) -> Result<OptimumResult> {
    check_fraction("parallel fraction f", f)?;
    if !(n >= 1.0) {
        return Err(domain(format!("budget n must be >= 1, got {n}")));
    }
    let raw = if f == 0.0 { f64::INFINITY } else { n * (1.0 - f) / f };
    let r = raw.clamp(1.0, n);
    let clamped = raw <= 1.0 || raw >= n;
    let s = hm_speedup(&ChipBudget::new(n, r)?, f, Topology::Symmetric, law)?;
    Ok(OptimumResult::new(n, r, s, clamped))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchConfig {
    /// Log-spaced coarse samples over `[1, n]` (at least 512).
    pub grid_points: usize,
    /// Relative width of the final bracket on `r`.
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid_points: 1024,
            rel_tol: 1e-6,
            max_iter: 200,
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizes `speedup(r)` over `[1, n]`: coarse log grid, then golden-section
/// refinement inside the bracket around the best grid point.
pub fn optimal_r_numeric<F>(model: F, n: f64, config: &SearchConfig) -> Result<OptimumResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(n >= 1.0) || !n.is_finite() {
        return Err(domain(format!("budget n must be finite and >= 1, got {n}")));
    }
    let eval = |r: f64| -> Result<f64> {
        let v = model(r)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { r, value: v })
        }
    };

    let grid = log_grid(n, config.grid_points.max(512));
    if grid.len() == 1 {
        return Ok(OptimumResult::new(n, 1.0, eval(1.0)?, true));
    }
    let values = grid.iter().map(|&r| eval(r)).collect::<Result<Vec<_>>>()?;
    let best = values
        .iter()
        .enumerate()
        .fold(0, |b, (i, &v)| if v > values[b] { i } else { b });

    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(grid.len() - 1)];
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut v1 = eval(x1)?;
    let mut v2 = eval(x2)?;
    let mut iter = 0;
    while hi - lo > config.rel_tol * 0.5 * (hi + lo) && iter < config.max_iter {
        if v1 >= v2 {
            hi = x2;
            x2 = x1;
            v2 = v1;
            x1 = hi - INV_PHI * (hi - lo);
            v1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            v1 = v2;
            x2 = lo + INV_PHI * (hi - lo);
            v2 = eval(x2)?;
        }
        iter += 1;
    }

    // Candidates: the refined interior point and the bracket ends (which cover
    // a boundary optimum at 1 or n).
    let mid = 0.5 * (lo + hi);
    let mut cand = (grid[best], values[best]);
    for r in [mid, lo, hi] {
        let v = eval(r)?;
        if v > cand.1 {
            cand = (r, v);
        }
    }
    let (mut r_opt, mut s_opt) = cand;
    let clamped = if r_opt <= 1.0 + config.rel_tol {
        (r_opt, s_opt) = (1.0, eval(1.0)?.max(s_opt));
        true
    } else if r_opt >= n * (1.0 - config.rel_tol) {
        (r_opt, s_opt) = (n, eval(n)?.max(s_opt));
        true
    } else {
        false
    };
    Ok(OptimumResult::new(n, r_opt, s_opt, clamped))
}

/// Numeric optimum of a catalogued model.
pub fn optimal_r_model(
    model: &SpeedupModel,
    n: f64,
    topology: Topology,
    law: PerformanceLaw,
    config: &SearchConfig,
) -> Result<OptimumResult> {
    optimal_r_numeric(|r| model.at(n, r, topology, law), n, config)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitRegime {
    /// Overheads vanish; Amdahl's `1/(1-f)` bound.
    AmdahlBound,
    /// Constant overheads remain in the denominator.
    ConstantOverhead,
    /// Overheads grow without bound; speedup tends to 0.
    Vanishing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitResult {
    /// May be `f64::INFINITY` for `f = 1` without overheads.
    pub limit_value: f64,
    pub regime: LimitRegime,
}

enum Contribution {
    Vanishes,
    Constant(f64),
    Diverges,
}

/// Limit of `law^-1 * f1(nc)/nc` or of `f2(nc)`: `pivot` is the exponent at
/// which the term tends to a constant.
fn contribution(law: PowerLaw, pivot: f64) -> Contribution {
    if law.is_zero() || law.exponent() < pivot {
        Contribution::Vanishes
    } else if law.exponent() == pivot {
        Contribution::Constant(law.coeff())
    } else {
        Contribution::Diverges
    }
}

/// Limit of the extended Amdahl speedup as `nc -> inf`.
///
/// Generalizes the three published corner cases by composing the two
/// overhead terms independently: `f1(nc)/nc` vanishes for `p < 1`, tends to
/// `f1'` for `p = 1` and diverges for `p > 1`; `f2(nc)` vanishes for `q < 0`,
/// tends to `f2'` for `q = 0` and diverges for `q > 0`. Any divergent term
/// drives the speedup to 0.
pub fn asymptotic_limit(f: f64, conn: PowerLaw, sync: PowerLaw) -> Result<LimitResult> {
    check_fraction("parallel fraction f", f)?;
    let mut overhead = 0.0;
    for c in [contribution(conn, 1.0), contribution(sync, 0.0)] {
        match c {
            Contribution::Vanishes => {}
            Contribution::Constant(v) => overhead += v,
            Contribution::Diverges => {
                return Ok(LimitResult {
                    limit_value: 0.0,
                    regime: LimitRegime::Vanishing,
                })
            }
        }
    }
    let regime = if overhead == 0.0 {
        LimitRegime::AmdahlBound
    } else {
        LimitRegime::ConstantOverhead
    };
    Ok(LimitResult {
        limit_value: 1.0 / ((1.0 - f) + overhead),
        regime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleAdvice {
    pub decision: Decision,
    pub recommended_r: f64,
    pub recommended_cores: f64,
    pub expected_speedup: f64,
    /// Best configuration found for parallel execution, whether chosen or not.
    pub parallel_optimum: OptimumResult,
}

/// Chooses between the best parallel configuration and running everything on
/// a single `n`-BCE core. The single core pays no synchronization or
/// communication cost. Ties go to the single core.
pub fn advise_schedule(
    n: f64,
    workload: &WorkloadModel,
    topology: Topology,
    law: PerformanceLaw,
    config: &SearchConfig,
) -> Result<ScheduleAdvice> {
    let model = SpeedupModel::Ours(*workload);
    let par = optimal_r_model(&model, n, topology, law, config)?;
    let sequential = law.at(n);
    Ok(if par.speedup_max > sequential {
        ScheduleAdvice {
            decision: Decision::Parallel,
            recommended_r: par.r_opt,
            recommended_cores: ChipBudget::new(n, par.r_opt)?.cores(topology),
            expected_speedup: par.speedup_max,
            parallel_optimum: par,
        }
    } else {
        ScheduleAdvice {
            decision: Decision::Sequential,
            recommended_r: n,
            recommended_cores: 1.0,
            expected_speedup: sequential,
            parallel_optimum: par,
        }
    })
}

/// Re-evaluates the model behind an advice at its recommended configuration.
pub fn advice_speedup(
    advice: &ScheduleAdvice,
    n: f64,
    workload: &WorkloadModel,
    topology: Topology,
    law: PerformanceLaw,
) -> Result<f64> {
    match advice.decision {
        Decision::Sequential => crate::model::perf_seq(n, law),
        Decision::Parallel => Ok(speedup(
            &ChipBudget::new(n, advice.recommended_r)?,
            workload,
            law,
            topology,
        )),
    }
}

/// One optimizer result at sweep coordinate `x` (a `q` exponent or an `f`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub x: f64,
    pub optimum: OptimumResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSeries {
    pub label: String,
    pub points: Vec<SweepPoint>,
}

/// Maximum speedup versus the synchronization exponent `q`, with
/// `f1 = 0` and `f2 = f2' * nc^q`, against the Hill–Marty maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncSweep {
    pub n: f64,
    pub fs: Vec<f64>,
    pub qs: Vec<f64>,
    pub sync_coeff: f64,
    pub topology: Topology,
    pub law: PerformanceLaw,
    pub search: SearchConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncSweepResult {
    pub f: f64,
    /// Horizontal reference: Hill–Marty optimum at this `f`.
    pub hill_marty: OptimumResult,
    /// `x` is `q`.
    pub ours: SweepSeries,
}

impl SyncSweep {
    pub fn run(&self, exec: Execution) -> Result<Vec<SyncSweepResult>> {
        let jobs: Vec<(usize, Option<f64>)> = (0..self.fs.len())
            .flat_map(|i| std::iter::once((i, None)).chain(self.qs.iter().map(move |&q| (i, Some(q)))))
            .collect();
        let results = exec.try_map(&jobs, |&(i, q)| {
            let f = self.fs[i];
            match q {
                None => hill_marty_optimum(self.n, f, self.topology, self.law, &self.search),
                Some(q) => {
                    let w = WorkloadModel::new(f, PowerLaw::ZERO, PowerLaw::new(self.sync_coeff, q)?)?;
                    optimal_r_model(&SpeedupModel::Ours(w), self.n, self.topology, self.law, &self.search)
                }
            }
        })?;
        let mut it = results.into_iter();
        Ok(self
            .fs
            .iter()
            .map(|&f| {
                let hill_marty = it.next().expect("reference result");
                let points = self
                    .qs
                    .iter()
                    .map(|&q| SweepPoint {
                        x: q,
                        optimum: it.next().expect("sweep result"),
                    })
                    .collect();
                SyncSweepResult {
                    f,
                    hill_marty,
                    ours: SweepSeries {
                        label: format!("ours__f={f}"),
                        points,
                    },
                }
            })
            .collect())
    }
}

/// Hill–Marty optimum: closed form for symmetric chips, numeric otherwise.
pub fn hill_marty_optimum(
    n: f64,
    f: f64,
    topology: Topology,
    law: PerformanceLaw,
    search: &SearchConfig,
) -> Result<OptimumResult> {
    match topology {
        // closed form assumes the square-root law
        Topology::Symmetric if law == PerformanceLaw::POLLACK => optimal_r_hm_sym(n, f, law),
        _ => optimal_r_model(&SpeedupModel::HillMarty { f }, n, topology, law, search),
    }
}

/// Named connectivity/synchronization intensities for optimal-r sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntensityPreset {
    pub label: String,
    pub conn: PowerLaw,
    pub sync: PowerLaw,
}

/// Optimal core size versus `f` for several intensity presets plus the
/// Hill–Marty reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalRSweep {
    pub n: f64,
    pub fs: Vec<f64>,
    pub presets: Vec<IntensityPreset>,
    pub topology: Topology,
    pub law: PerformanceLaw,
    pub search: SearchConfig,
}

impl OptimalRSweep {
    /// First series is the Hill–Marty reference, then one per preset; `x` is `f`.
    pub fn run(&self, exec: Execution) -> Result<Vec<SweepSeries>> {
        let series_count = self.presets.len() + 1;
        let jobs: Vec<(usize, usize)> = (0..series_count)
            .flat_map(|s| (0..self.fs.len()).map(move |i| (s, i)))
            .collect();
        let results = exec.try_map(&jobs, |&(s, i)| {
            let f = self.fs[i];
            if s == 0 {
                hill_marty_optimum(self.n, f, self.topology, self.law, &self.search)
            } else {
                let p = &self.presets[s - 1];
                let w = WorkloadModel::new(f, p.conn, p.sync)?;
                optimal_r_model(&SpeedupModel::Ours(w), self.n, self.topology, self.law, &self.search)
            }
        })?;
        let mut it = results.into_iter();
        Ok((0..series_count)
            .map(|s| SweepSeries {
                label: if s == 0 {
                    "hill-marty".to_string()
                } else {
                    format!("ours__{}", self.presets[s - 1].label)
                },
                points: self
                    .fs
                    .iter()
                    .map(|&f| SweepPoint {
                        x: f,
                        optimum: it.next().expect("sweep result"),
                    })
                    .collect(),
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const LAW: PerformanceLaw = PerformanceLaw::POLLACK;

    fn fig6(f: f64) -> WorkloadModel {
        WorkloadModel::new(f, PowerLaw::new(0.001, 0.5).unwrap(), PowerLaw::constant(0.01).unwrap()).unwrap()
    }

    fn numeric(model: SpeedupModel, n: f64, t: Topology) -> OptimumResult {
        optimal_r_model(&model, n, t, LAW, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn analytic_hm_optimum() {
        let o = optimal_r_hm_sym(256.0, 0.5, LAW).unwrap();
        assert_eq!(o.r_opt, 256.0);
        assert!(o.clamped);
        assert_eq!(o.speedup_max, 16.0);

        let o = optimal_r_hm_sym(256.0, 0.95, LAW).unwrap();
        assert_relative_eq!(o.r_opt, 13.473684210526317, max_relative = 1e-12);
        assert!(!o.clamped);
        assert_eq!(o.nearest_divisor, Some(16));

        let o = optimal_r_hm_sym(256.0, 0.999, LAW).unwrap();
        assert_eq!(o.r_opt, 1.0);
        assert!(o.clamped);

        let o = optimal_r_hm_sym(256.0, 0.0, LAW).unwrap();
        assert_eq!(o.r_opt, 256.0);
        assert!(o.clamped);
    }

    #[test]
    fn numeric_matches_analytic_hm() {
        for n in [64.0, 256.0, 1024.0] {
            for f in [0.5, 0.9, 0.95, 0.99, 0.999] {
                let a = optimal_r_hm_sym(n, f, LAW).unwrap();
                let b = numeric(SpeedupModel::HillMarty { f }, n, Topology::Symmetric);
                assert!((b.r_opt - a.r_opt).abs() <= 0.02 * a.r_opt, "n={n} f={f}: {} vs {}", b.r_opt, a.r_opt);
                assert!((b.speedup_max - a.speedup_max).abs() <= 1e-3 * a.speedup_max);
                assert_eq!(a.clamped, b.clamped, "n={n} f={f}");
            }
        }
    }

    #[test]
    fn ours_prefers_larger_cores() {
        let o = numeric(SpeedupModel::Ours(fig6(0.999)), 256.0, Topology::Symmetric);
        assert!(o.r_opt > 1.0 && !o.clamped);
        let hm = optimal_r_hm_sym(256.0, 0.999, LAW).unwrap();
        assert!(o.speedup_max < hm.speedup_max);
    }

    #[test]
    fn sequential_workload_uses_largest_core() {
        for m in [
            SpeedupModel::Ours(WorkloadModel::amdahl(0.0).unwrap()),
            SpeedupModel::HillMarty { f: 0.0 },
            SpeedupModel::Gunther {
                f: 0.0,
                params: crate::baselines::GuntherParams::new(0.001, 0.001).unwrap(),
            },
        ] {
            let o = numeric(m, 256.0, Topology::Symmetric);
            assert_eq!(o.r_opt, 256.0);
            assert!(o.clamped);
            assert_relative_eq!(o.speedup_max, 16.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn numeric_is_deterministic_and_dominates_endpoints() {
        let m = SpeedupModel::Ours(fig6(0.99));
        let a = numeric(m, 256.0, Topology::Asymmetric);
        let b = numeric(m, 256.0, Topology::Asymmetric);
        assert_eq!(a, b);
        for r in [1.0, 256.0] {
            assert!(a.speedup_max >= m.at(256.0, r, Topology::Asymmetric, LAW).unwrap());
        }
    }

    #[test]
    fn non_finite_model_is_reported() {
        let err = optimal_r_numeric(|r| Ok(if r > 100.0 { f64::NAN } else { r }), 256.0, &SearchConfig::default());
        match err {
            Err(Error::NonFinite { r, .. }) => assert!(r > 100.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_budget() {
        let o = optimal_r_numeric(|r| Ok(r.sqrt()), 1.0, &SearchConfig::default()).unwrap();
        assert_eq!(o.r_opt, 1.0);
        assert_eq!(o.nearest_divisor, Some(1));
    }

    #[test]
    fn nearest_divisors() {
        assert_eq!(nearest_divisor(256.0, 13.47), Some(16));
        assert_eq!(nearest_divisor(256.0, 5.0), Some(4));
        assert_eq!(nearest_divisor(100.0, 7.0), Some(5));
        assert_eq!(nearest_divisor(10.5, 3.0), None);
    }

    #[test]
    fn limits() {
        let l = asymptotic_limit(0.95, PowerLaw::new(0.01, 0.5).unwrap(), PowerLaw::new(0.01, -1.0).unwrap()).unwrap();
        assert_eq!(l.regime, LimitRegime::AmdahlBound);
        assert_relative_eq!(l.limit_value, 20.0, max_relative = 1e-12);

        let l = asymptotic_limit(0.95, PowerLaw::new(0.01, 1.0).unwrap(), PowerLaw::constant(0.01).unwrap()).unwrap();
        assert_eq!(l.regime, LimitRegime::ConstantOverhead);
        assert_relative_eq!(l.limit_value, 14.285714285714285, max_relative = 1e-12);

        for p in [0.0, 1.0, 3.0] {
            let l = asymptotic_limit(0.99, PowerLaw::new(0.01, p).unwrap(), PowerLaw::new(0.01, 0.5).unwrap()).unwrap();
            assert_eq!(l.regime, LimitRegime::Vanishing);
            assert_eq!(l.limit_value, 0.0);
        }

        // mixed: p < 1 with q = 0
        let l = asymptotic_limit(0.9, PowerLaw::new(5.0, 0.5).unwrap(), PowerLaw::constant(0.1).unwrap()).unwrap();
        assert_eq!(l.regime, LimitRegime::ConstantOverhead);
        assert_relative_eq!(l.limit_value, 5.0, max_relative = 1e-12);

        // zero coefficients never diverge
        let l = asymptotic_limit(0.5, PowerLaw::new(0.0, 4.0).unwrap(), PowerLaw::new(0.0, 2.0).unwrap()).unwrap();
        assert_eq!(l.regime, LimitRegime::AmdahlBound);
        assert_eq!(l.limit_value, 2.0);

        let l = asymptotic_limit(1.0, PowerLaw::ZERO, PowerLaw::ZERO).unwrap();
        assert_eq!(l.limit_value, f64::INFINITY);
    }

    #[test]
    fn advisor_decisions() {
        let cfg = SearchConfig::default();
        let w = WorkloadModel::amdahl(0.999).unwrap();
        let a = advise_schedule(256.0, &w, Topology::Symmetric, LAW, &cfg).unwrap();
        assert_eq!(a.decision, Decision::Parallel);
        assert_eq!(a.recommended_r, 1.0);
        assert_eq!(a.recommended_cores, 256.0);

        let w = WorkloadModel::new(0.999, PowerLaw::ZERO, PowerLaw::constant(1.0).unwrap()).unwrap();
        let a = advise_schedule(256.0, &w, Topology::Symmetric, LAW, &cfg).unwrap();
        assert_eq!(a.decision, Decision::Sequential);
        assert_eq!(a.expected_speedup, 16.0);
        assert_eq!(a.recommended_cores, 1.0);

        // f1 = nc: every parallel configuration is capped at sqrt(r)/2 <= 8.
        let w = WorkloadModel::new(0.999, PowerLaw::new(1.0, 1.0).unwrap(), PowerLaw::ZERO).unwrap();
        let a = advise_schedule(256.0, &w, Topology::Symmetric, LAW, &cfg).unwrap();
        assert_eq!(a.decision, Decision::Sequential);
        assert_relative_eq!(a.parallel_optimum.speedup_max, 8.0, max_relative = 1e-9);

        // A milder linear connectivity keeps parallel execution but on fewer, larger cores.
        let w = WorkloadModel::new(0.999, PowerLaw::new(0.01, 1.0).unwrap(), PowerLaw::ZERO).unwrap();
        let a = advise_schedule(256.0, &w, Topology::Symmetric, LAW, &cfg).unwrap();
        assert_eq!(a.decision, Decision::Parallel);
        assert!(a.recommended_r > 2.0 && a.recommended_cores < 128.0);
    }

    #[test]
    fn advice_is_reproducible() {
        let cfg = SearchConfig::default();
        for (f, c) in [(0.5, 0.0), (0.9, 0.01), (0.999, 0.05), (0.999, 2.0)] {
            for t in [Topology::Symmetric, Topology::Asymmetric] {
                let w = WorkloadModel::new(f, PowerLaw::new(0.001, 0.5).unwrap(), PowerLaw::constant(c).unwrap()).unwrap();
                let a = advise_schedule(256.0, &w, t, LAW, &cfg).unwrap();
                assert_eq!(advice_speedup(&a, 256.0, &w, t, LAW).unwrap(), a.expected_speedup);
            }
        }
    }

    #[test]
    fn sync_sweep_shapes() {
        let sweep = SyncSweep {
            n: 256.0,
            fs: vec![0.5, 0.99],
            qs: vec![-2.0, -1.0, 0.0, 0.5, 1.0],
            sync_coeff: 0.01,
            topology: Topology::Symmetric,
            law: LAW,
            search: SearchConfig::default(),
        };
        let seq = sweep.run(Execution::Sequential).unwrap();
        assert_eq!(seq, sweep.run(Execution::Parallel).unwrap());
        for res in &seq {
            let vals: Vec<f64> = res.ours.points.iter().map(|p| p.optimum.speedup_max).collect();
            assert!(vals.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{vals:?}");
            assert!(vals.iter().all(|&v| v <= res.hill_marty.speedup_max * (1.0 + 1e-9)));
        }
        let f05 = &seq[0];
        let at_q_minus_2 = f05.ours.points[0].optimum.speedup_max;
        assert!((f05.hill_marty.speedup_max - at_q_minus_2) / f05.hill_marty.speedup_max < 0.05);
    }
}
