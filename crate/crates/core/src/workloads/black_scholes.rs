//! European call/put pricing with continuous dividend yield.

use serde::{Deserialize, Serialize};

use super::Charged;
use crate::error::{Error, Result};
use crate::sim::machine::Machine;

/// Cycles charged per priced call/put pair.
pub const CYCLES_PER_PAIR: u64 = 560;
/// Scalars downloaded per pair: spot, strike, expiry, rate, volatility, dividend yield.
pub const INPUTS_PER_PAIR: usize = 6;
/// Scalars uploaded per pair: call and put price.
pub const OUTPUTS_PER_PAIR: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptionPair {
    pub spot: f64,
    pub strike: f64,
    pub expiry: f64,
    pub rate: f64,
    pub volatility: f64,
    pub dividend_yield: f64,
    #[serde(default)]
    pub call_price: f64,
    #[serde(default)]
    pub put_price: f64,
}

impl OptionPair {
    pub fn new(spot: f64, strike: f64, expiry: f64, rate: f64, volatility: f64, dividend_yield: f64) -> Self {
        OptionPair {
            spot,
            strike,
            expiry,
            rate,
            volatility,
            dividend_yield,
            call_price: 0.0,
            put_price: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("spot", self.spot),
            ("strike", self.strike),
            ("expiry", self.expiry),
            ("volatility", self.volatility),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Input(format!("option {name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("rate", self.rate), ("dividend_yield", self.dividend_yield)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Input(format!("option {name} must be non-negative, got {v}")));
            }
        }
        Ok(())
    }

    fn to_scalars(self) -> [f64; INPUTS_PER_PAIR] {
        [self.spot, self.strike, self.expiry, self.rate, self.volatility, self.dividend_yield]
    }

    fn from_scalars(s: &[f64]) -> Self {
        OptionPair::new(s[0], s[1], s[2], s[3], s[4], s[5])
    }

    /// `call - put` implied by put-call parity.
    pub fn parity_gap(&self) -> f64 {
        self.spot * (-self.dividend_yield * self.expiry).exp() - self.strike * (-self.rate * self.expiry).exp()
    }
}

/// Standard normal CDF, Abramowitz & Stegun 26.2.17 (|error| < 7.5e-8).
pub fn cnd(x: f64) -> f64 {
    const P: f64 = 0.231_641_9;
    const B: [f64; 5] = [0.319_381_530, -0.356_563_782, 1.781_477_937, -1.821_255_978, 1.330_274_429];
    let t = 1.0 / (1.0 + P * x.abs());
    let poly = t * (B[0] + t * (B[1] + t * (B[2] + t * (B[3] + t * B[4]))));
    let pdf = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let tail = pdf * poly;
    if x >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Returns `(call, put)`.
pub fn price(o: &OptionPair) -> (f64, f64) {
    let sqrt_t = o.expiry.sqrt();
    let vol_t = o.volatility * sqrt_t;
    let d1 = ((o.spot / o.strike).ln() + (o.rate - o.dividend_yield + 0.5 * o.volatility * o.volatility) * o.expiry) / vol_t;
    let d2 = d1 - vol_t;
    let fwd_spot = o.spot * (-o.dividend_yield * o.expiry).exp();
    let disc_strike = o.strike * (-o.rate * o.expiry).exp();
    let call = fwd_spot * cnd(d1) - disc_strike * cnd(d2);
    let put = disc_strike * cnd(-d2) - fwd_spot * cnd(-d1);
    (call, put)
}

pub fn black_scholes_serial(pairs: &[OptionPair]) -> Result<Charged<Vec<OptionPair>>> {
    let mut cycles = 0;
    let mut out = Vec::with_capacity(pairs.len());
    for p in pairs {
        p.validate()?;
        let (call_price, put_price) = price(p);
        out.push(OptionPair { call_price, put_price, ..*p });
        cycles += CYCLES_PER_PAIR;
    }
    Ok(Charged { value: out, cycles })
}

/// Contiguous pair ranges, the first `len % nc` cores taking one extra pair.
pub(crate) fn pair_ranges(len: usize, nc: usize) -> Vec<std::ops::Range<usize>> {
    let base = len / nc;
    let extra = len % nc;
    let mut start = 0;
    (0..nc)
        .map(|k| {
            let size = base + usize::from(k < extra);
            let r = start..start + size;
            start += size;
            r
        })
        .collect()
}

/// Core memory: `6m` input scalars followed by `2m` output slots.
pub(crate) fn run_parallel(pairs: &[OptionPair], machine: &mut Machine<f64>) -> Result<Vec<OptionPair>> {
    for p in pairs {
        p.validate()?;
    }
    let ranges = pair_ranges(pairs.len(), machine.cores());
    let blocks = ranges
        .iter()
        .map(|r| pairs[r.clone()].iter().flat_map(|p| p.to_scalars()).collect())
        .collect();
    machine.sync_down(blocks)?;

    machine.compute(|_, mem| {
        let m = mem.len() / INPUTS_PER_PAIR;
        let mut outputs = Vec::with_capacity(OUTPUTS_PER_PAIR * m);
        for chunk in mem.chunks_exact(INPUTS_PER_PAIR) {
            let (c, p) = price(&OptionPair::from_scalars(chunk));
            outputs.extend([c, p]);
        }
        mem.extend(outputs);
        CYCLES_PER_PAIR * m as u64
    });

    let uploaded = machine.sync_up(|_, mem| {
        let m = mem.len() / (INPUTS_PER_PAIR + OUTPUTS_PER_PAIR);
        mem[INPUTS_PER_PAIR * m..].to_vec()
    })?;

    let mut out = Vec::with_capacity(pairs.len());
    for (range, prices) in ranges.into_iter().zip(uploaded) {
        for (p, cp) in pairs[range].iter().zip(prices.chunks_exact(OUTPUTS_PER_PAIR)) {
            out.push(OptionPair {
                call_price: cp[0],
                put_price: cp[1],
                ..*p
            });
        }
    }
    Ok(out)
}
