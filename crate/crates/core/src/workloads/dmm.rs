//! Dense square matrix multiplication and its Cannon schedule.

use serde::{Deserialize, Serialize};

use super::Charged;
use crate::error::{Error, Result};
use crate::sim::machine::{Machine, Message};

/// Cycles per multiply-accumulate.
pub const CYCLES_PER_MAC: u64 = 2;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    side: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(side: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != side * side {
            return Err(Error::Input(format!(
                "a {side}x{side} matrix needs {} elements, got {}",
                side * side,
                data.len()
            )));
        }
        Ok(Matrix { side, data })
    }

    pub fn zeros(side: usize) -> Self {
        Matrix {
            side,
            data: vec![0.0; side * side],
        }
    }

    pub fn identity(side: usize) -> Self {
        let mut m = Matrix::zeros(side);
        for i in 0..side {
            m.data[i * side + i] = 1.0;
        }
        m
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.side + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.side + j] = v;
    }

    /// Copies the `b x b` block at block coordinates `(bi, bj)`.
    fn block(&self, bi: usize, bj: usize, b: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(b * b);
        for i in 0..b {
            let row = (bi * b + i) * self.side + bj * b;
            out.extend_from_slice(&self.data[row..row + b]);
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Side length of an `n`-element square matrix.
pub fn side_of(n: usize) -> Result<usize> {
    let side = (n as f64).sqrt().round() as usize;
    if side * side == n && n > 0 {
        Ok(side)
    } else {
        Err(Error::Input(format!("matrix element count {n} is not a perfect square")))
    }
}

pub fn dmm_serial(a: &Matrix, b: &Matrix) -> Result<Charged<Matrix>> {
    if a.side != b.side {
        return Err(Error::Input(format!(
            "shape mismatch: {0}x{0} times {1}x{1}",
            a.side, b.side
        )));
    }
    let s = a.side;
    let mut c = Matrix::zeros(s);
    let mut cycles = 0;
    for i in 0..s {
        for j in 0..s {
            let mut acc = 0.0;
            for k in 0..s {
                acc += a.get(i, k) * b.get(k, j);
                cycles += CYCLES_PER_MAC;
            }
            c.set(i, j, acc);
        }
    }
    Ok(Charged { value: c, cycles })
}

/// Grid side `q` for `nc` cores on a `side x side` problem.
pub(crate) fn grid_side(side: usize, nc: usize) -> Result<usize> {
    let q = (nc as f64).sqrt().round() as usize;
    if q * q != nc {
        return Err(Error::Config(format!("Cannon's algorithm needs a square core count, got {nc}")));
    }
    if !side.is_multiple_of(q) {
        return Err(Error::Config(format!(
            "a {q}x{q} core grid does not tile a {side}x{side} matrix"
        )));
    }
    Ok(q)
}

const TAG_A: u8 = 0;
const TAG_B: u8 = 1;

/// Core `(i, j) = (k / q, k % q)` starts with the pre-skewed operands
/// `A[i, i+j]` and `B[i+j, j]`. Each of the `q` steps multiplies the
/// resident blocks and then rotates A one core left and B one core up; the
/// final rotation restores the aligned layout. Memory: `[A | B | C]`.
pub(crate) fn run_parallel(a: &Matrix, b: &Matrix, machine: &mut Machine<f64>) -> Result<Matrix> {
    if a.side != b.side {
        return Err(Error::Input("shape mismatch".into()));
    }
    let side = a.side;
    let nc = machine.cores();
    let q = grid_side(side, nc)?;
    let bs = side / q;
    let area = bs * bs;

    let blocks = (0..nc)
        .map(|k| {
            let (i, j) = (k / q, k % q);
            let mut v = a.block(i, (i + j) % q, bs);
            v.extend(b.block((i + j) % q, j, bs));
            v
        })
        .collect();
    machine.sync_down(blocks)?;

    for step in 0..q {
        machine.compute(|_, mem| {
            if mem.len() < 3 * area {
                mem.resize(3 * area, 0.0);
            }
            let (ab, c) = mem.split_at_mut(2 * area);
            let (blk_a, blk_b) = ab.split_at(area);
            for i in 0..bs {
                for kk in 0..bs {
                    let aik = blk_a[i * bs + kk];
                    for j in 0..bs {
                        c[i * bs + j] += aik * blk_b[kk * bs + j];
                    }
                }
            }
            CYCLES_PER_MAC * (bs * bs * bs) as u64
        });
        if q == 1 {
            break;
        }
        let mut messages = Vec::with_capacity(2 * nc);
        for k in 0..nc {
            let (i, j) = (k / q, k % q);
            let mem = machine.memory(k);
            messages.push(Message {
                src: k,
                dst: i * q + (j + q - 1) % q,
                tag: TAG_A,
                payload: mem[..area].to_vec(),
            });
            messages.push(Message {
                src: k,
                dst: ((i + q - 1) % q) * q + j,
                tag: TAG_B,
                payload: mem[area..2 * area].to_vec(),
            });
        }
        machine.exchange(messages, |mem, msg| {
            let offset = if msg.tag == TAG_A { 0 } else { area };
            mem[offset..offset + area].copy_from_slice(&msg.payload);
        })?;
        debug_assert!(step < q);
    }

    let out = machine.sync_up(|_, mem| mem[2 * area..3 * area].to_vec())?;
    let mut c = Matrix::zeros(side);
    for (k, blk) in out.iter().enumerate() {
        let (bi, bj) = (k / q, k % q);
        for i in 0..bs {
            for j in 0..bs {
                c.set(bi * bs + i, bj * bs + j, blk[i * bs + j]);
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workloads::inputs::matrix;

    /// Independent oracle: column-oriented j-k-i loop over a transposed copy.
    fn oracle(a: &Matrix, b: &Matrix) -> Vec<f64> {
        let s = a.side();
        let bt: Vec<f64> = (0..s * s).map(|idx| b.get(idx % s, idx / s)).collect();
        let mut c = vec![0.0; s * s];
        for j in 0..s {
            for i in 0..s {
                let mut acc = 0.0;
                for k in 0..s {
                    acc += a.data()[i * s + k] * bt[j * s + k];
                }
                c[i * s + j] = acc;
            }
        }
        c
    }

    #[test]
    fn identity_and_zero() {
        let a = matrix(8, 3);
        let c = dmm_serial(&a, &Matrix::identity(8)).unwrap().value;
        assert_eq!(c, a);
        let z = dmm_serial(&Matrix::zeros(8), &a).unwrap().value;
        assert_eq!(z, Matrix::zeros(8));
    }

    #[test]
    fn random_product_matches_oracle() {
        let (a, b) = (matrix(16, 1), matrix(16, 2));
        let run = dmm_serial(&a, &b).unwrap();
        assert_eq!(run.cycles, 8192);
        let want = oracle(&a, &b);
        assert!(run.value.data().iter().zip(&want).all(|(x, y)| (x - y).abs() <= 1e-5));
    }

    #[test]
    fn shape_checks() {
        assert!(dmm_serial(&Matrix::zeros(4), &Matrix::zeros(5)).is_err());
        assert!(Matrix::new(3, vec![0.0; 8]).is_err());
        assert_eq!(side_of(256).unwrap(), 16);
        assert!(side_of(200).is_err());
        assert!(grid_side(16, 8).is_err());
        assert!(grid_side(15, 4).is_err());
        assert_eq!(grid_side(16, 64).unwrap(), 8);
    }
}
