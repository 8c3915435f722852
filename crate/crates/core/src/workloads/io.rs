//! CSV encoding of workload data: one record per option pair, complex
//! sample, or matrix element.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::black_scholes::OptionPair;
use super::dmm::Matrix;
use crate::error::{Error, Result};

pub fn write_option_pairs<W: Write>(w: W, pairs: &[OptionPair]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for p in pairs {
        wtr.serialize(p)?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.to_string()))
}

pub fn read_option_pairs<R: Read>(r: R) -> Result<Vec<OptionPair>> {
    csv::Reader::from_reader(r)
        .deserialize()
        .map(|rec| rec.map_err(Error::from))
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct SampleRecord {
    index: usize,
    re: f64,
    im: f64,
}

pub fn write_complex_samples<W: Write>(w: W, samples: &[Complex64]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for (index, s) in samples.iter().enumerate() {
        wtr.serialize(SampleRecord { index, re: s.re, im: s.im })?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Records must list indices `0..n` in order.
pub fn read_complex_samples<R: Read>(r: R) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for rec in csv::Reader::from_reader(r).deserialize() {
        let rec: SampleRecord = rec?;
        if rec.index != out.len() {
            return Err(Error::Input(format!("expected sample index {}, got {}", out.len(), rec.index)));
        }
        out.push(Complex64::new(rec.re, rec.im));
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
struct ElementRecord {
    matrix: String,
    row: usize,
    col: usize,
    value: f64,
}

/// Writes named matrices, row-major, into one table.
pub fn write_matrices<W: Write>(w: W, matrices: &[(&str, &Matrix)]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for (name, m) in matrices {
        let side = m.side();
        for (idx, &value) in m.data().iter().enumerate() {
            wtr.serialize(ElementRecord {
                matrix: (*name).to_string(),
                row: idx / side,
                col: idx % side,
                value,
            })?;
        }
    }
    wtr.flush().map_err(|e| Error::Csv(e.to_string()))
}

type Cell = (usize, usize, f64);

/// Reads named matrices in order of first appearance. Each matrix must be
/// complete and listed row-major.
pub fn read_matrices<R: Read>(r: R) -> Result<Vec<(String, Matrix)>> {
    let mut groups: Vec<(String, Vec<Cell>)> = Vec::new();
    for rec in csv::Reader::from_reader(r).deserialize() {
        let rec: ElementRecord = rec?;
        match groups.iter_mut().find(|(name, _)| *name == rec.matrix) {
            Some((_, cells)) => cells.push((rec.row, rec.col, rec.value)),
            None => groups.push((rec.matrix, vec![(rec.row, rec.col, rec.value)])),
        }
    }
    groups
        .into_iter()
        .map(|(name, cells)| {
            let side = super::dmm::side_of(cells.len())?;
            for (idx, &(row, col, _)) in cells.iter().enumerate() {
                if (row, col) != (idx / side, idx % side) {
                    return Err(Error::Input(format!(
                        "matrix `{name}`: element ({row}, {col}) out of row-major order"
                    )));
                }
            }
            let m = Matrix::new(side, cells.into_iter().map(|c| c.2).collect())?;
            Ok((name, m))
        })
        .collect()
}
