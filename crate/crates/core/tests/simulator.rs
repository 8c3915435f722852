use mcspeedup_core::sim::{divisors, run_parallel_traced, SimCurves};
use mcspeedup_core::workloads::inputs::DEFAULT_SEED;
use mcspeedup_core::workloads::{WorkloadOutput, WorkloadSpec};
use mcspeedup_core::{
    run_parallel, run_serial, speedup_curve_sim, Execution, SimConfig, WorkloadInputs, WorkloadKind,
};
use num_complex::Complex64;

const N: usize = 256;

fn inputs(kind: WorkloadKind) -> WorkloadInputs {
    WorkloadInputs::generate(&WorkloadSpec::new(kind, N).unwrap(), DEFAULT_SEED)
}

fn sweep(kind: WorkloadKind) -> SimCurves {
    speedup_curve_sim(&inputs(kind), &SimConfig::new(N, 1).unwrap(), &divisors(N), Execution::default()).unwrap()
}

/// Runnable core sizes of a workload at `N = 256`.
fn runnable(kind: WorkloadKind) -> Vec<usize> {
    let spec = WorkloadSpec::new(kind, N).unwrap();
    divisors(N).into_iter().filter(|r| spec.check_cores(N / r).is_ok()).collect()
}

fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}

#[test]
fn serial_cycles_match_closed_forms() {
    let cycles = |k| run_serial(&inputs(k)).unwrap().cycles;
    assert_eq!(cycles(WorkloadKind::Fft), 10240);
    assert_eq!(cycles(WorkloadKind::Dmm), 8192);
    assert_eq!(cycles(WorkloadKind::BlackScholes), 143_360);
}

#[test]
fn conservation_and_moved_equals_declared() {
    for kind in WorkloadKind::ALL {
        let spec = WorkloadSpec::new(kind, N).unwrap();
        for r in runnable(kind) {
            let cfg = SimConfig::new(N, r).unwrap();
            let run = run_parallel(&inputs(kind), &cfg, Execution::Sequential).unwrap();
            assert_eq!(run.report.tmc, run.phases.total(), "{kind} r={r}");
            let (sync, comm) = spec.declared_volumes(cfg.cores()).unwrap();
            assert_eq!((run.sync_moved, run.comm_moved), (sync, comm), "{kind} r={r}");
            if cfg.cores() == 1 {
                assert_eq!(run.phases.t_sync_down + run.phases.t_sync_up + run.phases.t_comm, 0);
            }
        }
    }
}

#[test]
fn deterministic_across_strategies_and_repeats() {
    for kind in WorkloadKind::ALL {
        let cfg = SimConfig::new(N, 4).unwrap();
        let a = run_parallel(&inputs(kind), &cfg, Execution::Sequential).unwrap();
        let b = run_parallel(&inputs(kind), &cfg, Execution::Parallel).unwrap();
        let c = run_parallel(&inputs(kind), &cfg, Execution::Parallel).unwrap();
        assert_eq!(a.report, b.report);
        assert_eq!(b.report, c.report);
        assert_eq!(a.output, b.output);
    }
}

#[test]
fn parallel_outputs_match_oracles() {
    let fft_in = inputs(WorkloadKind::Fft);
    let WorkloadInputs::Fft(samples) = &fft_in else { unreachable!() };
    let want = dft(samples);
    let den: f64 = want.iter().map(|y| y.norm_sqr()).sum();
    let dmm_in = inputs(WorkloadKind::Dmm);
    let WorkloadInputs::Dmm { a, b } = &dmm_in else { unreachable!() };
    let s = a.side();
    let bs_in = inputs(WorkloadKind::BlackScholes);

    for r in runnable(WorkloadKind::Fft) {
        let run = run_parallel(&fft_in, &SimConfig::new(N, r).unwrap(), Execution::Sequential).unwrap();
        let WorkloadOutput::Fft(y) = run.output else { unreachable!() };
        let num: f64 = y.iter().zip(&want).map(|(p, q)| (p - q).norm_sqr()).sum();
        assert!((num / den).sqrt() <= 1e-3, "fft r={r}");
    }
    for r in runnable(WorkloadKind::Dmm) {
        let run = run_parallel(&dmm_in, &SimConfig::new(N, r).unwrap(), Execution::Sequential).unwrap();
        let WorkloadOutput::Dmm(c) = run.output else { unreachable!() };
        for i in 0..s {
            for j in 0..s {
                let mut acc = 0.0;
                for k in 0..s {
                    acc += a.get(i, k) * b.get(k, j);
                }
                assert!((c.get(i, j) - acc).abs() <= 1e-5, "dmm r={r} ({i},{j})");
            }
        }
    }
    for r in runnable(WorkloadKind::BlackScholes) {
        let run = run_parallel(&bs_in, &SimConfig::new(N, r).unwrap(), Execution::Sequential).unwrap();
        let WorkloadOutput::BlackScholes(priced) = run.output else { unreachable!() };
        assert_eq!(priced.len(), N);
        for p in &priced {
            assert!((p.call_price - p.put_price - p.parity_gap()).abs() <= 1e-4, "bs r={r}");
        }
    }
}

#[test]
fn connectivity_properties() {
    for kind in WorkloadKind::ALL {
        let curves = sweep(kind);
        let f1: Vec<f64> = curves.f1().unwrap().values().collect();
        assert!(f1.windows(2).all(|w| w[1] <= w[0]), "{kind}: {f1:?}");
        if kind == WorkloadKind::BlackScholes {
            assert!(f1.iter().all(|&v| v == 0.0));
        }
    }
    let dmm = sweep(WorkloadKind::Dmm);
    assert!((dmm.points[0].report.f1_measured - 1.0).abs() <= 0.05);
    let fft = sweep(WorkloadKind::Fft);
    assert!((fft.points[0].report.f1_measured - 0.2).abs() < 1e-12);
}

#[test]
fn speedup_curves_peak_inside_and_follow_the_model() {
    for kind in WorkloadKind::ALL {
        let curves = sweep(kind);
        let sim = curves.speedup().unwrap();
        let overlay = curves.overlay().unwrap();
        let peak = sim.peak().unwrap();
        assert!(peak.r > 1.0 && peak.r < N as f64, "{kind}: peak at r={}", peak.r);
        for (s, m) in sim.samples().iter().zip(overlay.samples()) {
            let rel = (s.value - m.value).abs() / s.value;
            assert!(rel <= 0.15, "{kind} r={}: sim {} model {}", s.r, s.value, m.value);
        }
        assert_eq!(sim.samples().last().unwrap().value, 16.0);
    }
}

#[test]
fn trace_events_cover_the_run() {
    let run = run_parallel_traced(&inputs(WorkloadKind::Fft), &SimConfig::new(N, 16).unwrap(), Execution::Sequential)
        .unwrap();
    let end = run.events.iter().map(|e| e.end_cycle).max().unwrap();
    assert_eq!(end, run.report.tmc);
    let moved: u64 = run.events.iter().map(|e| e.elements_moved).sum();
    assert_eq!(moved, run.sync_moved + run.comm_moved);
    assert!(run.events.iter().all(|e| e.start_cycle <= e.end_cycle));
}

#[test]
fn hop_cost_scales_exchange_time_only() {
    let base = SimConfig::new(N, 1).unwrap();
    let slow = base.with_costs(1, 4);
    let a = run_parallel(&inputs(WorkloadKind::Fft), &base, Execution::Sequential).unwrap();
    let b = run_parallel(&inputs(WorkloadKind::Fft), &slow, Execution::Sequential).unwrap();
    assert_eq!(b.phases.t_comm, 4 * a.phases.t_comm);
    assert_eq!(b.phases.t_sync_down, a.phases.t_sync_down);
    assert_eq!(a.report.f1_measured, b.report.f1_measured);
}
