//! The subcommands. Each returns the files it wrote, in write order.

use std::fs;
use std::path::{Path, PathBuf};

use mcspeedup_core::curve::model_curve;
use mcspeedup_core::optimize::{advise_schedule, OptimalRSweep, ScheduleAdvice, SyncSweep};
use mcspeedup_core::sim::trace::write_trace;
use mcspeedup_core::sim::{run_parallel_traced, SimCurves};
use mcspeedup_core::workloads::io::{write_complex_samples, write_matrices, write_option_pairs};
use mcspeedup_core::workloads::WorkloadOutput;
use mcspeedup_core::{
    run_serial, speedup_curve_sim, Execution, ModelName, SimConfig, SimReport, SpeedupModel, WorkloadInputs,
    WorkloadKind, WorkloadModel, WorkloadSpec,
};
use serde::Serialize;

use crate::config::{AdviseConfig, OptimalConfig, SimulateConfig, SpeedupConfig};
use crate::format::{series_label, sig10, Table};
use crate::CliError;

fn write(out: &Path, name: &str, contents: &[u8], written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let path = out.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Failure(format!("writing {}: {e}", path.display())))?;
    written.push(path);
    Ok(())
}

fn write_json<T: Serialize>(out: &Path, name: &str, value: &T, written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("records serialize");
    text.push('\n');
    write(out, name, text.as_bytes(), written)
}

/// The model a `(name, f)` column evaluates.
pub fn bind_model(cfg: &SpeedupConfig, name: ModelName, f: f64) -> Result<SpeedupModel, CliError> {
    Ok(match name {
        ModelName::Ours => SpeedupModel::Ours(WorkloadModel::new(f, cfg.conn, cfg.sync)?),
        ModelName::HillMarty => SpeedupModel::HillMarty { f },
        ModelName::Cassidy => SpeedupModel::Cassidy { f, params: cfg.cassidy },
        ModelName::EyermanEeckhout => SpeedupModel::EyermanEeckhout(cfg.ee_mapping.params(f)?),
        ModelName::Gunther => SpeedupModel::Gunther { f, params: cfg.gunther },
    })
}

/// Speedup versus `r`: columns `r`, `nc`, then one per `(model, f)`.
pub fn speedup_table(cfg: &SpeedupConfig, exec: Execution) -> Result<Table, CliError> {
    let grid = cfg.validate()?;
    let mut models = Vec::new();
    for &name in &cfg.models {
        for &f in &cfg.fs {
            models.push((series_label(name.as_str(), f), bind_model(cfg, name, f)?));
        }
    }
    let mut curves = Vec::with_capacity(models.len());
    for (label, model) in &models {
        curves.push(model_curve(label.clone(), model, cfg.n, &grid, cfg.topology, cfg.perf_exponent, exec)?);
    }
    let mut header = vec!["r".to_string(), "nc".to_string()];
    header.extend(models.iter().map(|(l, _)| l.clone()));
    let mut table = Table::new(header);
    for (i, &r) in grid.iter().enumerate() {
        let mut row = vec![r, curves[0].samples()[i].nc];
        row.extend(curves.iter().map(|c| c.samples()[i].value));
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_speedup(cfg: &SpeedupConfig, out: &Path, exec: Execution) -> Result<Vec<PathBuf>, CliError> {
    let table = speedup_table(cfg, exec)?;
    let mut written = Vec::new();
    write(out, "speedup.csv", table.to_csv().as_bytes(), &mut written)?;
    Ok(written)
}

/// Tables of the `optimal` command, keyed by file name.
pub fn optimal_tables(cfg: &OptimalConfig, exec: Execution) -> Result<Vec<(&'static str, Table)>, CliError> {
    cfg.validate()?;
    if let Some(s) = &cfg.sync_sweep {
        let sweep = SyncSweep {
            n: cfg.n,
            fs: s.fs.clone(),
            qs: s.q.values()?,
            sync_coeff: s.sync_coeff,
            topology: cfg.topology,
            law: cfg.perf_exponent,
            search: cfg.search,
        };
        let results = sweep.run(exec)?;
        let mut header = vec!["q".to_string()];
        for res in &results {
            header.push(series_label("ours", res.f));
            header.push(series_label("hill-marty", res.f));
        }
        let mut speed = Table::new(header.clone());
        let mut ropt = Table::new(header);
        for (i, &q) in sweep.qs.iter().enumerate() {
            let mut srow = vec![q];
            let mut rrow = vec![q];
            for res in &results {
                let p = res.ours.points[i].optimum;
                srow.extend([p.speedup_max, res.hill_marty.speedup_max]);
                rrow.extend([p.r_opt, res.hill_marty.r_opt]);
            }
            speed.push(srow);
            ropt.push(rrow);
        }
        return Ok(vec![("max_speedup_vs_q.csv", speed), ("optimal_r_vs_q.csv", ropt)]);
    }
    let s = cfg.optimal_r_sweep.as_ref().expect("validated: one sweep present");
    let sweep = OptimalRSweep {
        n: cfg.n,
        fs: s.fs.clone(),
        presets: s.presets.clone(),
        topology: cfg.topology,
        law: cfg.perf_exponent,
        search: cfg.search,
    };
    let series = sweep.run(exec)?;
    let mut header = vec!["f".to_string()];
    header.extend(series.iter().map(|s| s.label.clone()));
    let mut ropt = Table::new(header.clone());
    let mut speed = Table::new(header);
    for (i, &f) in sweep.fs.iter().enumerate() {
        let mut rrow = vec![f];
        let mut srow = vec![f];
        for s in &series {
            rrow.push(s.points[i].optimum.r_opt);
            srow.push(s.points[i].optimum.speedup_max);
        }
        ropt.push(rrow);
        speed.push(srow);
    }
    Ok(vec![("optimal_r_vs_f.csv", ropt), ("max_speedup_vs_f.csv", speed)])
}

pub fn cmd_optimal(cfg: &OptimalConfig, out: &Path, exec: Execution) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    for (name, table) in optimal_tables(cfg, exec)? {
        write(out, name, table.to_csv().as_bytes(), &mut written)?;
    }
    Ok(written)
}

#[derive(Debug, Clone, Serialize)]
struct ReportRecord {
    r: usize,
    nc: usize,
    report: SimReport,
}

/// Per-workload summary of a simulated sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSummary {
    pub workload: WorkloadKind,
    pub task_size: usize,
    pub t1_serial: u64,
    /// Synchronization intensity of the multicore runs (it does not depend
    /// on the core count once there is more than one core).
    pub f2_measured: f64,
    pub peak_r: usize,
    pub peak_speedup: f64,
    pub skipped_core_sizes: Vec<usize>,
}

fn summarize(kind: WorkloadKind, task_size: usize, curves: &SimCurves) -> Result<SimSummary, CliError> {
    let first = curves
        .points
        .first()
        .ok_or_else(|| CliError::Config(format!("no requested core size can run {kind}")))?;
    let f2 = curves
        .points
        .iter()
        .find(|p| p.nc > 1)
        .map_or(0.0, |p| p.report.f2_measured);
    let peak = curves.speedup()?.peak().expect("non-empty curve");
    Ok(SimSummary {
        workload: kind,
        task_size,
        t1_serial: first.report.t1_serial,
        f2_measured: f2,
        peak_r: peak.r as usize,
        peak_speedup: peak.value,
        skipped_core_sizes: curves.skipped.clone(),
    })
}

/// Sweep table: one row per run core size.
pub fn simulation_table(curves: &SimCurves) -> Result<Table, CliError> {
    let overlay = curves.overlay()?;
    let mut t = Table::new(
        [
            "r",
            "nc",
            "sim_speedup",
            "model_overlay",
            "f1_measured",
            "f2_measured",
            "t1_serial",
            "tmc",
            "ts_serial_equiv",
            "tc_serial_equiv",
        ]
        .map(String::from)
        .to_vec(),
    );
    for (p, m) in curves.points.iter().zip(overlay.samples()) {
        let rep = &p.report;
        t.push(vec![
            p.r as f64,
            p.nc as f64,
            rep.speedup,
            m.value,
            rep.f1_measured,
            rep.f2_measured,
            rep.t1_serial as f64,
            rep.tmc as f64,
            rep.ts_serial_equiv as f64,
            rep.tc_serial_equiv as f64,
        ]);
    }
    Ok(t)
}

pub fn simulate_workload(
    cfg: &SimulateConfig,
    kind: WorkloadKind,
    exec: Execution,
) -> Result<(WorkloadInputs, SimConfig, SimCurves), CliError> {
    let rs = cfg.validate()?;
    let spec = WorkloadSpec::new(kind, cfg.task_size)?;
    let inputs = WorkloadInputs::generate(&spec, cfg.seed);
    let base = SimConfig::new(cfg.task_size, 1)?
        .with_total_bce(cfg.total_bce())?
        .with_perf_exponent(cfg.perf_exponent.exponent())?
        .with_costs(cfg.transfer_cost, cfg.hop_cost);
    let curves = speedup_curve_sim(&inputs, &base, &rs, exec)?;
    Ok((inputs, base, curves))
}

fn write_data(
    out: &Path,
    kind: WorkloadKind,
    inputs: &WorkloadInputs,
    written: &mut Vec<PathBuf>,
) -> Result<(), CliError> {
    let reference = run_serial(inputs)?.value;
    let mut inbuf = Vec::new();
    let mut outbuf = Vec::new();
    match (inputs, &reference) {
        (WorkloadInputs::BlackScholes(pairs), WorkloadOutput::BlackScholes(priced)) => {
            write_option_pairs(&mut inbuf, pairs)?;
            write_option_pairs(&mut outbuf, priced)?;
        }
        (WorkloadInputs::Fft(samples), WorkloadOutput::Fft(spectrum)) => {
            write_complex_samples(&mut inbuf, samples)?;
            write_complex_samples(&mut outbuf, spectrum)?;
        }
        (WorkloadInputs::Dmm { a, b }, WorkloadOutput::Dmm(c)) => {
            write_matrices(&mut inbuf, &[("a", a), ("b", b)])?;
            write_matrices(&mut outbuf, &[("c", c)])?;
        }
        _ => unreachable!("serial output kind follows the input kind"),
    }
    write(out, &format!("{kind}_inputs.csv"), &inbuf, written)?;
    write(out, &format!("{kind}_reference.csv"), &outbuf, written)
}

pub fn cmd_simulate(cfg: &SimulateConfig, out: &Path, exec: Execution) -> Result<(Vec<PathBuf>, Vec<SimSummary>), CliError> {
    cfg.validate()?;
    let mut written = Vec::new();
    let mut summaries = Vec::new();
    for &kind in &cfg.workloads {
        let (inputs, base, curves) = simulate_workload(cfg, kind, exec)?;
        summaries.push(summarize(kind, cfg.task_size, &curves)?);
        write(out, &format!("{kind}.csv"), simulation_table(&curves)?.to_csv().as_bytes(), &mut written)?;
        let records: Vec<ReportRecord> = curves
            .points
            .iter()
            .map(|p| ReportRecord { r: p.r, nc: p.nc, report: p.report })
            .collect();
        write_json(out, &format!("{kind}_reports.json"), &records, &mut written)?;
        if cfg.trace {
            for p in &curves.points {
                let run = run_parallel_traced(&inputs, &base.with_core_size(p.r)?, Execution::Sequential)?;
                let mut buf = Vec::new();
                write_trace(&mut buf, &run.events)?;
                write(out, &format!("{kind}_trace_r{}.csv", p.r), &buf, &mut written)?;
            }
        }
        if cfg.write_data {
            write_data(out, kind, &inputs, &mut written)?;
        }
    }
    write_json(out, "summary.json", &summaries, &mut written)?;
    Ok((written, summaries))
}

pub fn advise(cfg: &AdviseConfig) -> Result<ScheduleAdvice, CliError> {
    cfg.validate()?;
    let w = WorkloadModel::new(cfg.f, cfg.conn, cfg.sync)?;
    Ok(advise_schedule(cfg.n, &w, cfg.topology, cfg.perf_exponent, &cfg.search)?)
}

pub fn cmd_advise(cfg: &AdviseConfig, out: &Path) -> Result<(Vec<PathBuf>, ScheduleAdvice), CliError> {
    let advice = advise(cfg)?;
    let mut written = Vec::new();
    write_json(out, "advice.json", &advice, &mut written)?;
    Ok((written, advice))
}

/// One-line human summary of an advice record.
pub fn describe_advice(a: &ScheduleAdvice) -> String {
    format!(
        "decision={} r={} cores={} expected_speedup={}",
        match a.decision {
            mcspeedup_core::optimize::Decision::Parallel => "parallel",
            mcspeedup_core::optimize::Decision::Sequential => "sequential",
        },
        sig10(a.recommended_r),
        sig10(a.recommended_cores),
        sig10(a.expected_speedup)
    )
}
