//! JSON instance files.
//!
//! ```json
//! { "n": 3,
//!   "objective": { "type": "weighted_coverage",
//!                  "item_weights": [1, 1, 1], "covers": [[0, 1], [1, 2], [2]] },
//!   "matroid": { "type": "uniform", "rank": 2 },
//!   "alpha": 1 }
//! ```
//!
//! Explicit tables list `2^n` values in binary-counter order: entry `k` is the
//! value of the subset whose members are the set bits of `k`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::objective::{Family, Objective, DEFAULT_CACHE_CAPACITY};
use crate::set::GroundSet;
use crate::solvers::Instance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ObjectiveSpec {
    WeightedCoverage {
        item_weights: Vec<f64>,
        covers: Vec<Vec<usize>>,
    },
    FacilityLocation {
        values: Vec<Vec<f64>>,
    },
    Modular {
        weights: Vec<f64>,
    },
    Explicit {
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub objective: ObjectiveSpec,
    pub matroid: MatroidSpec,
    pub alpha: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty-printed JSON with a trailing newline. Floats use the shortest
    /// representation that reads back to the same value.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files always serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the instance. Explicit tables are checked for
    /// normalization, monotonicity, and submodularity.
    pub fn to_instance(&self) -> Result<Instance> {
        let n = self.n;
        let objective = match &self.objective {
            ObjectiveSpec::WeightedCoverage {
                item_weights,
                covers,
            } => Objective::weighted_coverage(item_weights.clone(), covers.clone())?,
            ObjectiveSpec::FacilityLocation { values } => {
                Objective::facility_location(values.clone())?
            }
            ObjectiveSpec::Modular { weights } => Objective::modular(weights.clone())?,
            ObjectiveSpec::Explicit { values } => Objective::explicit(n, values.clone())?,
        };
        if objective.n() != n {
            return Err(Error::InvalidInstance(format!(
                "objective describes {} elements but n = {n}",
                objective.n()
            )));
        }
        let matroid = match &self.matroid {
            MatroidSpec::Uniform { rank } => Matroid::uniform(n, *rank)?,
            MatroidSpec::Partition { blocks, capacities } => {
                Matroid::partition(n, blocks.clone(), capacities.clone())?
            }
        };
        let ground = match &self.labels {
            Some(labels) if labels.len() != n => {
                return Err(Error::InvalidInstance(format!(
                    "{} labels for {n} elements",
                    labels.len()
                )))
            }
            Some(labels) => GroundSet::with_labels(labels.clone()),
            None => GroundSet::new(n),
        };
        Instance::new(
            ground,
            objective.with_cache(DEFAULT_CACHE_CAPACITY),
            matroid,
            self.alpha,
        )
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let objective = match inst.objective().family() {
            Family::WeightedCoverage {
                item_weights,
                covers,
            } => ObjectiveSpec::WeightedCoverage {
                item_weights: item_weights.clone(),
                covers: covers.clone(),
            },
            Family::FacilityLocation { values } => ObjectiveSpec::FacilityLocation {
                values: values.clone(),
            },
            Family::Modular { weights } => ObjectiveSpec::Modular {
                weights: weights.clone(),
            },
            Family::ExplicitTable { values } => ObjectiveSpec::Explicit {
                values: values.clone(),
            },
        };
        let matroid = match inst.matroid().blocks() {
            None => MatroidSpec::Uniform {
                rank: inst.matroid().rank(),
            },
            Some((blocks, capacities)) => MatroidSpec::Partition {
                blocks: blocks.iter().map(|b| b.as_slice().to_vec()).collect(),
                capacities: capacities.to_vec(),
            },
        };
        InstanceFile {
            n: inst.n(),
            objective,
            matroid,
            alpha: inst.alpha(),
            labels: inst.ground().labels().map(<[String]>::to_vec),
        }
    }
}
