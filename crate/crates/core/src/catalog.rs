//! Uniform handle over the five speedup models so that optimizers and sweeps
//! can treat "speedup as a function of core size" generically.

use serde::{Deserialize, Serialize};

use crate::baselines::{
    cassidy_speedup, ee_speedup, gunther_sym_speedup, hm_speedup, CassidyParams, EEParams,
    GuntherParams,
};
use crate::error::{Error, Result};
use crate::model::{speedup, ChipBudget, PerformanceLaw, Topology, WorkloadModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelName {
    #[serde(rename = "ours")]
    Ours,
    #[serde(rename = "hill-marty")]
    HillMarty,
    #[serde(rename = "cassidy")]
    Cassidy,
    #[serde(rename = "eyerman-eeckhout")]
    EyermanEeckhout,
    #[serde(rename = "gunther")]
    Gunther,
}

impl ModelName {
    pub const ALL: [ModelName; 5] = [
        ModelName::Ours,
        ModelName::HillMarty,
        ModelName::Cassidy,
        ModelName::EyermanEeckhout,
        ModelName::Gunther,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::Ours => "ours",
            ModelName::HillMarty => "hill-marty",
            ModelName::Cassidy => "cassidy",
            ModelName::EyermanEeckhout => "eyerman-eeckhout",
            ModelName::Gunther => "gunther",
        }
    }

    pub fn supports(self, topology: Topology) -> bool {
        topology == Topology::Symmetric
            || !matches!(self, ModelName::Cassidy | ModelName::Gunther)
    }
}

impl std::fmt::Display for ModelName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ModelName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModelName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown model `{s}`")))
    }
}

/// A fully parameterized model: everything bound except the core size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpeedupModel {
    Ours(WorkloadModel),
    HillMarty { f: f64 },
    Cassidy { f: f64, params: CassidyParams },
    EyermanEeckhout(EEParams),
    Gunther { f: f64, params: GuntherParams },
}

impl SpeedupModel {
    pub fn name(&self) -> ModelName {
        match self {
            SpeedupModel::Ours(_) => ModelName::Ours,
            SpeedupModel::HillMarty { .. } => ModelName::HillMarty,
            SpeedupModel::Cassidy { .. } => ModelName::Cassidy,
            SpeedupModel::EyermanEeckhout(_) => ModelName::EyermanEeckhout,
            SpeedupModel::Gunther { .. } => ModelName::Gunther,
        }
    }

    pub fn evaluate(&self, budget: &ChipBudget, topology: Topology, law: PerformanceLaw) -> Result<f64> {
        if !self.name().supports(topology) {
            return Err(Error::Unsupported {
                model: self.name().as_str(),
                topology: topology.as_str(),
            });
        }
        match self {
            SpeedupModel::Ours(w) => Ok(speedup(budget, w, law, topology)),
            SpeedupModel::HillMarty { f } => hm_speedup(budget, *f, topology, law),
            SpeedupModel::Cassidy { f, params } => cassidy_speedup(budget, *f, params),
            SpeedupModel::EyermanEeckhout(p) => Ok(ee_speedup(budget, p, topology, law)),
            SpeedupModel::Gunther { f, params } => gunther_sym_speedup(budget, *f, params, law),
        }
    }

    /// Speedup at `(n, r)`.
    pub fn at(&self, n: f64, r: f64, topology: Topology, law: PerformanceLaw) -> Result<f64> {
        self.evaluate(&ChipBudget::new(n, r)?, topology, law)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in ModelName::ALL {
            assert_eq!(m.as_str().parse::<ModelName>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.as_str()));
        }
        assert!("amdahl".parse::<ModelName>().is_err());
    }

    #[test]
    fn asymmetric_support() {
        let m = SpeedupModel::Gunther {
            f: 0.9,
            params: GuntherParams::new(0.0, 0.0).unwrap(),
        };
        let err = m.at(256.0, 4.0, Topology::Asymmetric, PerformanceLaw::default());
        assert!(matches!(err, Err(Error::Unsupported { .. })));
        assert!(m.at(256.0, 4.0, Topology::Symmetric, PerformanceLaw::default()).is_ok());
    }
}
