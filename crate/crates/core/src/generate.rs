//! Seeded random instances.
//!
//! All randomness comes from a ChaCha8 stream seeded with the 64-bit seed via
//! `SeedableRng::seed_from_u64`, so a given configuration always produces the
//! same file.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{InstanceFile, MatroidSpec, ObjectiveSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Coverage,
    FacilityLocation,
    Modular,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [
        FamilyKind::Coverage,
        FamilyKind::FacilityLocation,
        FamilyKind::Modular,
    ];
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Coverage => "coverage",
            FamilyKind::FacilityLocation => "facility",
            FamilyKind::Modular => "modular",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coverage" | "weighted_coverage" => Ok(FamilyKind::Coverage),
            "facility" | "facility_location" => Ok(FamilyKind::FacilityLocation),
            "modular" => Ok(FamilyKind::Modular),
            other => Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatroidKind {
    Uniform,
    /// Random partition into this many nonempty blocks.
    Partition {
        blocks: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub family: FamilyKind,
    pub n: usize,
    pub seed: u64,
    /// Coverage items or facility-location clients; defaults to `2n` and `n`.
    pub items: Option<usize>,
    pub matroid: MatroidKind,
    pub rank: usize,
    pub alpha: usize,
}

impl GenConfig {
    pub fn new(family: FamilyKind, n: usize, seed: u64) -> Self {
        GenConfig {
            family,
            n,
            seed,
            items: None,
            matroid: MatroidKind::Uniform,
            rank: n.min(3),
            alpha: 1,
        }
    }
}

pub fn generate(cfg: &GenConfig) -> Result<InstanceFile> {
    let n = cfg.n;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if cfg.rank > n {
        return Err(Error::InvalidArgument(format!(
            "rank {} exceeds n = {n}",
            cfg.rank
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let objective = match cfg.family {
        FamilyKind::Coverage => {
            let m = cfg.items.unwrap_or(2 * n);
            if m == 0 {
                return Err(Error::InvalidArgument(
                    "coverage needs at least one item".into(),
                ));
            }
            let item_weights = (0..m).map(|_| rng.random::<f64>()).collect();
            let max_cover = m.div_ceil(3).max(1);
            let covers = (0..n)
                .map(|_| {
                    let size = rng.random_range(1..=max_cover);
                    let mut cover = sample(&mut rng, m, size).into_vec();
                    cover.sort_unstable();
                    cover
                })
                .collect();
            ObjectiveSpec::WeightedCoverage {
                item_weights,
                covers,
            }
        }
        FamilyKind::FacilityLocation => {
            let m = cfg.items.unwrap_or(n);
            if m == 0 {
                return Err(Error::InvalidArgument(
                    "facility location needs at least one client".into(),
                ));
            }
            let values = (0..n)
                .map(|_| (0..m).map(|_| rng.random::<f64>()).collect())
                .collect();
            ObjectiveSpec::FacilityLocation { values }
        }
        FamilyKind::Modular => ObjectiveSpec::Modular {
            weights: (0..n).map(|_| rng.random::<f64>()).collect(),
        },
    };
    let matroid = match cfg.matroid {
        MatroidKind::Uniform => MatroidSpec::Uniform { rank: cfg.rank },
        MatroidKind::Partition { blocks } => random_partition(&mut rng, n, blocks, cfg.rank)?,
    };
    Ok(InstanceFile {
        n,
        objective,
        matroid,
        alpha: cfg.alpha,
        labels: None,
    })
}

/// Shuffles the ground set into `k` nonempty blocks, then spreads `rank` units
/// of capacity over blocks that still have room.
fn random_partition(rng: &mut ChaCha8Rng, n: usize, k: usize, rank: usize) -> Result<MatroidSpec> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "cannot split {n} elements into {k} nonempty blocks"
        )));
    }
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = (0..k)
        .map(|b| {
            let lo = b * n / k;
            let hi = (b + 1) * n / k;
            let mut block = ids[lo..hi].to_vec();
            block.sort_unstable();
            block
        })
        .collect();
    blocks.sort();
    let mut capacities = vec![0usize; k];
    for _ in 0..rank {
        let open: Vec<usize> = (0..k)
            .filter(|&b| capacities[b] < blocks[b].len())
            .collect();
        let b = open[rng.random_range(0..open.len())];
        capacities[b] += 1;
    }
    Ok(MatroidSpec::Partition { blocks, capacities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{check_monotone, check_normalized, check_submodular};

    #[test]
    fn generated_files_load_and_pass_checkers() {
        for family in FamilyKind::ALL {
            for seed in [1, 7, 42] {
                let mut cfg = GenConfig::new(family, 8, seed);
                cfg.matroid = MatroidKind::Partition { blocks: 3 };
                cfg.rank = 4;
                let inst = generate(&cfg).unwrap().to_instance().unwrap();
                assert_eq!(inst.matroid().rank(), 4);
                let f = inst.objective();
                assert!(check_normalized(f));
                assert!(check_monotone(f).unwrap());
                assert!(check_submodular(f).unwrap());
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig::new(FamilyKind::Coverage, 8, 1);
        assert_eq!(
            generate(&cfg).unwrap().to_json(),
            generate(&cfg).unwrap().to_json()
        );
        let other = GenConfig::new(FamilyKind::Coverage, 8, 2);
        assert_ne!(
            generate(&cfg).unwrap().to_json(),
            generate(&other).unwrap().to_json()
        );
    }

    #[test]
    fn invalid_params() {
        assert!(generate(&GenConfig::new(FamilyKind::Modular, 0, 1)).is_err());
        let mut cfg = GenConfig::new(FamilyKind::Modular, 3, 1);
        cfg.rank = 4;
        assert!(generate(&cfg).is_err());
        let mut cfg = GenConfig::new(FamilyKind::Modular, 3, 1);
        cfg.matroid = MatroidKind::Partition { blocks: 4 };
        assert!(generate(&cfg).is_err());
        let mut cfg = GenConfig::new(FamilyKind::Coverage, 3, 1);
        cfg.items = Some(0);
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn family_names_parse() {
        for family in FamilyKind::ALL {
            assert_eq!(family.to_string().parse::<FamilyKind>().unwrap(), family);
        }
        assert!("cubic".parse::<FamilyKind>().is_err());
    }
}
