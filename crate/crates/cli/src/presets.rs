//! Built-in experiment configs for the published figures.

use mcspeedup_core::baselines::{CassidyParams, GuntherParams};
use mcspeedup_core::optimize::{IntensityPreset, SearchConfig};
use mcspeedup_core::workloads::inputs::DEFAULT_SEED;
use mcspeedup_core::{ModelName, PerformanceLaw, PowerLaw, Topology, WorkloadKind};

use crate::config::{
    EeMapping, OptimalConfig, OptimalRSweepConfig, RGrid, Range, SimulateConfig, SpeedupConfig, SyncSweepConfig,
};
use crate::CliError;

pub const NAMES: [&str; 8] = ["fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13"];

/// Parallel fractions of the speedup figures.
pub const FIGURE_FS: [f64; 4] = [0.5, 0.95, 0.99, 0.999];

#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    Speedup(SpeedupConfig),
    Optimal(OptimalConfig),
    Simulate(SimulateConfig),
}

impl Preset {
    pub fn command(&self) -> &'static str {
        match self {
            Preset::Speedup(_) => "speedup",
            Preset::Optimal(_) => "optimal",
            Preset::Simulate(_) => "simulate",
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Preset::Speedup(c) => serde_json::to_string_pretty(c),
            Preset::Optimal(c) => serde_json::to_string_pretty(c),
            Preset::Simulate(c) => serde_json::to_string_pretty(c),
        };
        v.expect("presets serialize")
    }
}

fn law(c: f64, e: f64) -> PowerLaw {
    PowerLaw::new(c, e).expect("valid preset power law")
}

fn speedup_figure(topology: Topology, models: Vec<ModelName>) -> SpeedupConfig {
    SpeedupConfig {
        n: 256.0,
        topology,
        perf_exponent: PerformanceLaw::POLLACK,
        fs: FIGURE_FS.to_vec(),
        models,
        r_grid: RGrid::PowersOfTwo,
        conn: law(0.001, 0.5),
        sync: law(0.01, 0.0),
        cassidy: CassidyParams::default(),
        gunther: GuntherParams::new(0.001, 0.001).expect("valid constants"),
        ee_mapping: EeMapping::AsPrinted,
    }
}

fn sync_figure(topology: Topology) -> OptimalConfig {
    OptimalConfig {
        n: 256.0,
        topology,
        perf_exponent: PerformanceLaw::POLLACK,
        search: SearchConfig::default(),
        sync_sweep: Some(SyncSweepConfig {
            fs: FIGURE_FS.to_vec(),
            q: Range { start: -2.0, stop: 1.0, step: 0.25 },
            sync_coeff: 0.01,
        }),
        optimal_r_sweep: None,
    }
}

/// `0.5, 0.55, ..., 0.95, 0.96, ..., 0.99, 0.995, 0.999`.
pub fn dense_fs() -> Vec<f64> {
    let mut fs: Vec<f64> = (0..10).map(|i| (50.0 + 5.0 * f64::from(i)) / 100.0).collect();
    fs.extend([0.96, 0.97, 0.98, 0.99, 0.995, 0.999]);
    fs
}

fn optimal_r_figure(presets: Vec<IntensityPreset>) -> OptimalConfig {
    OptimalConfig {
        n: 256.0,
        topology: Topology::Symmetric,
        perf_exponent: PerformanceLaw::POLLACK,
        search: SearchConfig::default(),
        sync_sweep: None,
        optimal_r_sweep: Some(OptimalRSweepConfig { fs: dense_fs(), presets }),
    }
}

fn simulate_figure() -> SimulateConfig {
    SimulateConfig {
        workloads: WorkloadKind::ALL.to_vec(),
        task_size: 256,
        total_bce: None,
        perf_exponent: PerformanceLaw::POLLACK,
        transfer_cost: 1,
        hop_cost: 1,
        core_sizes: None,
        seed: DEFAULT_SEED,
        trace: false,
        write_data: false,
    }
}

pub fn lookup(name: &str) -> Result<Preset, CliError> {
    let exponents = [0.5, 0.75, 1.0];
    Ok(match name {
        "fig6" => Preset::Speedup(speedup_figure(Topology::Symmetric, ModelName::ALL.to_vec())),
        "fig7" => Preset::Speedup(speedup_figure(
            Topology::Asymmetric,
            vec![ModelName::Ours, ModelName::HillMarty, ModelName::EyermanEeckhout],
        )),
        "fig8" | "fig9" => Preset::Simulate(simulate_figure()),
        "fig10" => Preset::Optimal(sync_figure(Topology::Symmetric)),
        "fig11" => Preset::Optimal(sync_figure(Topology::Asymmetric)),
        "fig12" => Preset::Optimal(optimal_r_figure(
            exponents
                .iter()
                .map(|&p| IntensityPreset {
                    label: format!("f1=0.001nc^{p}"),
                    conn: law(0.001, p),
                    sync: law(0.01, 0.0),
                })
                .collect(),
        )),
        "fig13" => Preset::Optimal(optimal_r_figure(
            exponents
                .iter()
                .map(|&q| IntensityPreset {
                    label: format!("f2=0.01nc^{q}"),
                    conn: law(0.001, 0.5),
                    sync: law(0.01, q),
                })
                .collect(),
        )),
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}` (available: {})",
                NAMES.join(", ")
            )))
        }
    })
}
