//! Radix-2 decimation-in-time FFT.
//!
//! The parallel schedule uses a block layout: after the bit-reversed
//! download, core `k` owns positions `[kB, (k+1)B)` with `B = N/nc`. The
//! first `log2 B` stages are local; each of the last `log2 nc` stages pairs
//! core `k` with core `k ^ (h/B)` through the switch.

use num_complex::Complex64;

use super::Charged;
use crate::error::{Error, Result};
use crate::sim::machine::{Machine, Message};

/// Cycles per output element per stage.
pub const CYCLES_PER_ELEMENT_STAGE: u64 = 5;

pub fn log2_exact(n: usize) -> Result<u32> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::Input(format!("FFT size must be a power of two, got {n}")))
    }
}

/// Twiddle table `w[j] = exp(-2 pi i j / n)` for `j < n/2`. Table setup is
/// not part of the charged cycle budget.
pub fn twiddles(n: usize) -> Vec<Complex64> {
    (0..n / 2)
        .map(|j| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect()
}

fn twiddle(table: &[Complex64], n: usize, half_span: usize, j: usize) -> Complex64 {
    // w_{2h}^j = w_n^{j * n / 2h}
    table[j * (n / (2 * half_span))]
}

pub fn bit_reverse_index(i: usize, bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - bits)
    }
}

pub fn fft_serial(samples: &[Complex64]) -> Result<Charged<Vec<Complex64>>> {
    let n = samples.len();
    let bits = log2_exact(n)?;
    let table = twiddles(n);
    let mut a: Vec<Complex64> = (0..n).map(|i| samples[bit_reverse_index(i, bits)]).collect();
    let mut cycles = 0;
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for j in 0..h {
                let w = twiddle(&table, n, h, j);
                let u = a[start + j];
                let t = w * a[start + j + h];
                a[start + j] = u + t;
                a[start + j + h] = u - t;
            }
        }
        cycles += CYCLES_PER_ELEMENT_STAGE * n as u64;
        h *= 2;
    }
    Ok(Charged { value: a, cycles })
}

pub(crate) fn check_partition(n: usize, nc: usize) -> Result<()> {
    log2_exact(n)?;
    if !nc.is_power_of_two() || nc > n {
        return Err(Error::Config(format!(
            "FFT of size {n} needs a power-of-two core count <= {n}, got {nc}"
        )));
    }
    Ok(())
}

/// Core memory: own block of `B` elements, then a receive buffer of `B`.
pub(crate) fn run_parallel(samples: &[Complex64], machine: &mut Machine<Complex64>) -> Result<Vec<Complex64>> {
    let n = samples.len();
    let nc = machine.cores();
    check_partition(n, nc)?;
    let bits = log2_exact(n)?;
    let block = n / nc;
    let table = twiddles(n);

    let blocks = (0..nc)
        .map(|k| {
            (k * block..(k + 1) * block)
                .map(|p| samples[bit_reverse_index(p, bits)])
                .collect()
        })
        .collect();
    machine.sync_down(blocks)?;

    // local stages: butterflies never leave a block
    machine.compute(|_, mem| {
        let mut h = 1;
        let mut stages = 0;
        while h < block {
            for start in (0..block).step_by(2 * h) {
                for j in 0..h {
                    let w = twiddle(&table, n, h, j);
                    let u = mem[start + j];
                    let t = w * mem[start + j + h];
                    mem[start + j] = u + t;
                    mem[start + j + h] = u - t;
                }
            }
            stages += 1;
            h *= 2;
        }
        mem.resize(2 * block, Complex64::default());
        CYCLES_PER_ELEMENT_STAGE * (block as u64) * stages
    });

    let mut h = block;
    while h < n {
        let stride = h / block;
        let messages = (0..nc)
            .map(|k| Message {
                src: k,
                dst: k ^ stride,
                tag: 0,
                payload: machine.memory(k)[..block].to_vec(),
            })
            .collect();
        machine.exchange(messages, |mem, msg| {
            mem[block..].copy_from_slice(&msg.payload);
        })?;

        machine.compute(|k, mem| {
            let lower = k & stride == 0;
            for j in 0..block {
                let p = k * block + j;
                let w = twiddle(&table, n, h, p % h);
                let (own, other) = (mem[j], mem[block + j]);
                mem[j] = if lower { own + w * other } else { other - w * own };
            }
            CYCLES_PER_ELEMENT_STAGE * block as u64
        });
        h *= 2;
    }

    let out = machine.sync_up(|_, mem| mem[..block].to_vec())?;
    Ok(out.into_iter().flatten().collect())
}
