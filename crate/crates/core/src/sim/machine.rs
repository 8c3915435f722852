//! Barrier-synchronized symmetric multicore with private memories, a single
//! sync channel to the last-level shared memory, and a permutation switch.
//!
//! Time advances in lock step: every operation is a barrier, its duration is
//! that of the slowest participating core. Data really moves between the
//! private memories, so element counts are observed rather than declared.

use serde::{Deserialize, Serialize};

use super::PhaseTrace;
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    SyncDown,
    Compute,
    Comm,
    SyncUp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub phase: Phase,
    pub start_cycle: u64,
    pub end_cycle: u64,
    pub core_id: usize,
    pub elements_moved: u64,
}

/// A block sent through the switch; `tag` lets the receiver place it.
#[derive(Debug, Clone, PartialEq)]
pub struct Message<T> {
    pub src: usize,
    pub dst: usize,
    pub tag: u8,
    pub payload: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineParams {
    pub cores: usize,
    /// Core performance in BCE units (operations per cycle).
    pub perf: f64,
    pub transfer_cost: u64,
    pub hop_cost: u64,
}

/// Cycles for `work` unit operations at `perf` operations per cycle.
pub(crate) fn burst_cycles(work: u64, perf: f64) -> u64 {
    if work == 0 {
        return 0;
    }
    let exact = work as f64 / perf;
    // absorb rounding noise when work is an exact multiple of perf
    (exact - 1e-9 * exact.max(1.0)).ceil().max(1.0) as u64
}

#[derive(Debug)]
pub struct Machine<T> {
    params: MachineParams,
    exec: Execution,
    clock: u64,
    memories: Vec<Vec<T>>,
    phases: PhaseTrace,
    events: Vec<TraceEvent>,
    sync_moved: u64,
    comm_moved: u64,
    record: bool,
}

impl<T: Clone + Send + Sync> Machine<T> {
    pub fn new(params: MachineParams, exec: Execution, record_trace: bool) -> Self {
        Machine {
            params,
            exec,
            clock: 0,
            memories: (0..params.cores).map(|_| Vec::new()).collect(),
            phases: PhaseTrace::default(),
            events: Vec::new(),
            sync_moved: 0,
            comm_moved: 0,
            record: record_trace,
        }
    }

    pub fn cores(&self) -> usize {
        self.params.cores
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn phases(&self) -> PhaseTrace {
        self.phases
    }

    pub fn sync_moved(&self) -> u64 {
        self.sync_moved
    }

    pub fn comm_moved(&self) -> u64 {
        self.comm_moved
    }

    pub fn memory(&self, core: usize) -> &[T] {
        &self.memories[core]
    }

    pub fn into_events(self) -> Vec<TraceEvent> {
        self.events
    }

    fn push_event(&mut self, phase: Phase, start: u64, end: u64, core_id: usize, elements: u64) {
        if self.record {
            self.events.push(TraceEvent {
                phase,
                start_cycle: start,
                end_cycle: end,
                core_id,
                elements_moved: elements,
            });
        }
    }

    /// Channel transfer of `counts[k]` elements for each core in turn; the
    /// sequential core issues the transfers, so each element costs
    /// `transfer_cost / perf` cycles. Returns total cycles.
    fn serialized_transfer(&mut self, phase: Phase, counts: &[u64]) -> u64 {
        let start = self.clock;
        let mut cumulative = 0u64;
        let mut prev_end = start;
        for (k, &count) in counts.iter().enumerate() {
            cumulative += count;
            let end = start + burst_cycles(cumulative * self.params.transfer_cost, self.params.perf);
            self.push_event(phase, prev_end, end, k, count);
            prev_end = end;
        }
        self.sync_moved += cumulative;
        let spent = prev_end - start;
        self.clock = prev_end;
        spent
    }

    /// Downloads one block per core from shared memory into the private
    /// memories. A single-core machine already holds its data locally and
    /// pays nothing.
    pub fn sync_down(&mut self, blocks: Vec<Vec<T>>) -> Result<()> {
        if blocks.len() != self.params.cores {
            return Err(Error::Config(format!(
                "sync-down needs {} blocks, got {}",
                self.params.cores,
                blocks.len()
            )));
        }
        let counts: Vec<u64> = blocks.iter().map(|b| b.len() as u64).collect();
        for (mem, block) in self.memories.iter_mut().zip(blocks) {
            mem.extend(block);
        }
        if self.params.cores > 1 {
            let spent = self.serialized_transfer(Phase::SyncDown, &counts);
            self.phases.t_sync_down += spent;
        }
        Ok(())
    }

    /// Uploads what `extract` selects from each private memory.
    pub fn sync_up<F>(&mut self, extract: F) -> Result<Vec<Vec<T>>>
    where
        F: Fn(usize, &[T]) -> Vec<T>,
    {
        let blocks: Vec<Vec<T>> = self
            .memories
            .iter()
            .enumerate()
            .map(|(k, m)| extract(k, m))
            .collect();
        if self.params.cores > 1 {
            let counts: Vec<u64> = blocks.iter().map(|b| b.len() as u64).collect();
            let spent = self.serialized_transfer(Phase::SyncUp, &counts);
            self.phases.t_sync_up += spent;
        }
        Ok(blocks)
    }

    /// Every core runs `kernel` on its private memory; the closure returns
    /// the number of single-BCE operations it performed.
    pub fn compute<F>(&mut self, kernel: F)
    where
        F: Fn(usize, &mut Vec<T>) -> u64 + Sync + Send,
    {
        let work = self.exec.map_mut(&mut self.memories, |k, mem| kernel(k, mem));
        let start = self.clock;
        let mut slowest = 0;
        for (k, &w) in work.iter().enumerate() {
            let cycles = burst_cycles(w, self.params.perf);
            slowest = slowest.max(cycles);
            self.push_event(Phase::Compute, start, start + cycles, k, 0);
        }
        self.clock += slowest;
        self.phases.t_compute += slowest;
    }

    /// One switch permutation step. Links are full duplex, so a core is busy
    /// for the larger of what it sends and what it receives.
    pub fn exchange<D>(&mut self, messages: Vec<Message<T>>, deliver: D) -> Result<()>
    where
        D: Fn(&mut Vec<T>, Message<T>),
    {
        let nc = self.params.cores;
        let mut sent = vec![0u64; nc];
        let mut received = vec![0u64; nc];
        for m in &messages {
            if m.src >= nc || m.dst >= nc || m.src == m.dst {
                return Err(Error::Config(format!(
                    "invalid switch route {} -> {} on {nc} cores",
                    m.src, m.dst
                )));
            }
            sent[m.src] += m.payload.len() as u64;
            received[m.dst] += m.payload.len() as u64;
        }
        let start = self.clock;
        let per_element = self.params.transfer_cost * self.params.hop_cost;
        let mut slowest = 0;
        for k in 0..nc {
            let cycles = burst_cycles(sent[k].max(received[k]) * per_element, self.params.perf);
            slowest = slowest.max(cycles);
            self.push_event(Phase::Comm, start, start + cycles, k, sent[k]);
        }
        self.comm_moved += sent.iter().sum::<u64>();
        for m in messages {
            let dst = m.dst;
            deliver(&mut self.memories[dst], m);
        }
        self.clock += slowest;
        self.phases.t_comm += slowest;
        Ok(())
    }
}
