use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mcspeedup_cli::commands::speedup_table;
use mcspeedup_cli::presets::{lookup, Preset};
use mcspeedup_core::{speedup_sym, ChipBudget, Execution, PerformanceLaw, PowerLaw, WorkloadModel};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcspeedup"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let out = dir.to_str().unwrap();
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", out]);
    run(&all)
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn fig6_column_matches_library_call() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["speedup", "--preset", "fig6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(dir.path(), "speedup.csv");
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&header[..3], ["r", "nc", "ours__f=0.5"]);
    assert!(header.contains(&"gunther__f=0.999"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    let w = WorkloadModel::new(0.5, PowerLaw::new(0.001, 0.5).unwrap(), PowerLaw::constant(0.01).unwrap()).unwrap();
    let direct = speedup_sym(&ChipBudget::new(256.0, 1.0).unwrap(), &w, PerformanceLaw::POLLACK);
    assert_eq!(first[0], 1.0);
    assert!((first[2] - direct).abs() <= 1e-9 * direct);
}

#[test]
fn fig6_high_parallelism_peak_below_reference() {
    let Preset::Speedup(cfg) = lookup("fig6").unwrap() else { unreachable!() };
    let t = speedup_table(&cfg, Execution::Sequential).unwrap();
    let col = |name: &str| t.header().iter().position(|h| h == name).unwrap();
    let peak = |c: usize| t.rows().iter().map(|r| r[c]).fold(f64::MIN, f64::max);
    assert!(peak(col("ours__f=0.999")) < peak(col("hill-marty__f=0.999")));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_strategies() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (cmd, preset) in [("speedup", "fig7"), ("optimal", "fig12"), ("simulate", "fig8")] {
        assert!(run_in(a.path(), &[cmd, "--preset", preset]).status.success());
        assert!(run_in(b.path(), &[cmd, "--preset", preset, "--sequential"]).status.success());
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 8);
    for name in names {
        let name = name.to_str().unwrap();
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
}

#[test]
fn simulate_reports_table_intensities() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["simulate", "--preset", "fig8"]);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("black-scholes: t1_serial=143360 f2_measured=0.01428571429"));
    assert!(stdout.contains("fft: t1_serial=10240 f2_measured=0.05 "));
    assert!(stdout.contains("dmm: t1_serial=8192 f2_measured=0.09375 "));
    assert!(stdout.contains("dmm: skipped core sizes [2, 8, 32, 128]"));
    let reports: serde_json::Value = serde_json::from_str(&read(dir.path(), "fft_reports.json")).unwrap();
    let first = &reports[0]["report"];
    let mut keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["f1_measured", "f2_measured", "speedup", "t1_serial", "tc_serial_equiv", "tmc", "ts_serial_equiv"]
    );
    assert_eq!(first["f1_measured"], 0.2);
}

#[test]
fn simulate_writes_traces_and_data() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.json");
    fs::write(
        &cfg,
        r#"{"workloads": ["dmm"], "task_size": 16, "core_sizes": [1, 4, 16], "trace": true, "write_data": true}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = run(&["simulate", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let trace = read(&out, "dmm_trace_r1.csv");
    assert!(trace.starts_with("phase,start_cycle,end_cycle,core_id,elements_moved\nsync_down,0,"));
    assert!(trace.contains("\ncomm,"));
    assert_eq!(read(&out, "dmm_trace_r16.csv").lines().filter(|l| l.starts_with("sync")).count(), 0);
    // one record per matrix element
    assert_eq!(read(&out, "dmm_inputs.csv").lines().count(), 1 + 2 * 16);
    assert_eq!(read(&out, "dmm_reference.csv").lines().count(), 1 + 16);
}

#[test]
fn optimal_presets_write_series_per_preset() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), &["optimal", "--preset", "fig10"]).status.success());
    let csv = read(dir.path(), "max_speedup_vs_q.csv");
    assert!(csv.starts_with("q,ours__f=0.5,hill-marty__f=0.5,"));
    assert_eq!(csv.lines().count(), 14);
    assert!(run_in(dir.path(), &["optimal", "--preset", "fig13"]).status.success());
    let header = read(dir.path(), "optimal_r_vs_f.csv").lines().next().unwrap().to_string();
    assert_eq!(header, "f,hill-marty,ours__f2=0.01nc^0.5,ours__f2=0.01nc^0.75,ours__f2=0.01nc^1");
}

#[test]
fn advise_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"n": 256, "f": 0.999, "sync": {"coeff": 1, "exponent": 0}}"#, "sequential", Some(16.0)),
        (r#"{"n": 256, "f": 0.999}"#, "parallel", None),
        (r#"{"n": 256, "f": 0.5, "conn": {"coeff": 0.01, "exponent": 1}}"#, "sequential", Some(16.0)),
    ];
    for (i, (json, decision, speedup)) in cases.into_iter().enumerate() {
        let cfg = dir.path().join(format!("a{i}.json"));
        fs::write(&cfg, json).unwrap();
        let out = dir.path().join(format!("o{i}"));
        let o = run(&["advise", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        let advice: serde_json::Value = serde_json::from_str(&read(&out, "advice.json")).unwrap();
        assert_eq!(advice["decision"], decision);
        if let Some(s) = speedup {
            assert_eq!(advice["expected_speedup"], s);
        } else {
            assert!(advice["expected_speedup"].as_f64().unwrap() > 16.0);
        }
    }
}

#[test]
fn config_errors_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, "{\n  \"n\": 256,\n  \"f\": 0.9,\n  \"colour\": 3\n}").unwrap();
    let o = run(&["advise", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("colour") && err.contains("line 4"), "{err}");

    fs::write(&cfg, r#"{"n": 256, "topology": "asymmetric", "fs": [0.5], "models": ["gunther"]}"#).unwrap();
    let o = run(&["speedup", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    fs::write(&cfg, r#"{"n": 256, "topology": "symmetric", "fs": [1.5], "models": ["ours"]}"#).unwrap();
    let o = run(&["speedup", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    fs::write(&cfg, r#"{"workloads": ["fft"], "task_size": 100}"#).unwrap();
    let o = run(&["simulate", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    fs::write(&cfg, r#"{"workloads": ["matmul"]}"#).unwrap();
    let o = run(&["simulate", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = run_in(dir.path(), &["advise", "--preset", "fig6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_in(dir.path(), &["speedup", "--preset", "fig99"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["speedup", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = run(&["speedup", "--preset", "fig7", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn preset_command_prints_a_loadable_config() {
    let o = run(&["preset", "fig11"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig11.json");
    fs::write(&cfg, &o.stdout).unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(run(&["optimal", "--config", cfg.to_str().unwrap(), "--out", a.to_str().unwrap()]).status.success());
    assert!(run(&["optimal", "--preset", "fig11", "--out", b.to_str().unwrap()]).status.success());
    assert_eq!(read(&a, "max_speedup_vs_q.csv"), read(&b, "max_speedup_vs_q.csv"));
}
