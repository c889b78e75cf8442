//! Uniform and partition matroids: independence, rank, base enumeration, and
//! the basis-exchange bijection between two bases.

use serde::Serialize;

use crate::combinatorics::{binomial, unrank};
use crate::error::{Error, Result};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<ElementSet>,
        capacities: Vec<usize>,
        block_of: Vec<usize>,
    },
}

/// An independence system over `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    kind: Kind,
}

impl Matroid {
    /// Sets of at most `rank` elements are independent.
    pub fn uniform(n: usize, rank: usize) -> Result<Self> {
        if rank > n {
            return Err(Error::InvalidInstance(format!(
                "uniform rank {rank} exceeds ground set size {n}"
            )));
        }
        Ok(Matroid {
            n,
            kind: Kind::Uniform { rank },
        })
    }

    /// Disjoint blocks covering `0..n`, at most `capacities[i]` elements from block `i`.
    pub fn partition(n: usize, blocks: Vec<Vec<usize>>, capacities: Vec<usize>) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::InvalidInstance(format!(
                "{} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        let mut canonical = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.into_iter().enumerate() {
            let size = block.len();
            let set = ElementSet::from_ids(block);
            if set.len() != size {
                return Err(Error::InvalidInstance(format!(
                    "block {b} lists an element twice"
                )));
            }
            set.check_within(n)?;
            for x in set.iter() {
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidInstance(format!(
                        "element {x} appears in blocks {} and {b}",
                        block_of[x]
                    )));
                }
                block_of[x] = b;
            }
            if capacities[b] > set.len() {
                return Err(Error::InvalidInstance(format!(
                    "block {b} has capacity {} but only {} elements",
                    capacities[b],
                    set.len()
                )));
            }
            canonical.push(set);
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidInstance(format!(
                "element {x} belongs to no block"
            )));
        }
        Ok(Matroid {
            n,
            kind: Kind::Partition {
                blocks: canonical,
                capacities,
                block_of,
            },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn type_name(&self) -> &'static str {
        match self.kind {
            Kind::Uniform { .. } => "uniform",
            Kind::Partition { .. } => "partition",
        }
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            Kind::Uniform { rank } => *rank,
            Kind::Partition { capacities, .. } => capacities.iter().sum(),
        }
    }

    pub fn blocks(&self) -> Option<(&[ElementSet], &[usize])> {
        match &self.kind {
            Kind::Uniform { .. } => None,
            Kind::Partition {
                blocks, capacities, ..
            } => Some((blocks, capacities)),
        }
    }

    /// Block index of `x` for partition matroids.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        match &self.kind {
            Kind::Uniform { .. } => None,
            Kind::Partition { block_of, .. } => block_of.get(x).copied(),
        }
    }

    pub fn is_independent(&self, s: &ElementSet) -> Result<bool> {
        s.check_within(self.n)?;
        Ok(self.independent_unchecked(s))
    }

    pub(crate) fn independent_unchecked(&self, s: &ElementSet) -> bool {
        match &self.kind {
            Kind::Uniform { rank } => s.len() <= *rank,
            Kind::Partition {
                capacities,
                block_of,
                ..
            } => {
                let mut counts = vec![0usize; capacities.len()];
                s.iter().all(|x| {
                    let b = block_of[x];
                    counts[b] += 1;
                    counts[b] <= capacities[b]
                })
            }
        }
    }

    /// Whether `current ∪ {x}` stays independent, given `current` is independent
    /// and does not contain `x`.
    pub(crate) fn can_extend(&self, current: &ElementSet, x: usize) -> bool {
        match &self.kind {
            Kind::Uniform { rank } => current.len() < *rank,
            Kind::Partition {
                capacities,
                block_of,
                ..
            } => {
                let b = block_of[x];
                current.iter().filter(|&y| block_of[y] == b).count() < capacities[b]
            }
        }
    }

    pub fn is_base(&self, s: &ElementSet) -> Result<bool> {
        Ok(s.len() == self.rank() && self.is_independent(s)?)
    }

    /// Number of bases, saturating at `u64::MAX`.
    pub fn base_count(&self) -> u64 {
        match &self.kind {
            Kind::Uniform { rank } => binomial(self.n, *rank),
            Kind::Partition {
                blocks, capacities, ..
            } => blocks
                .iter()
                .zip(capacities)
                .map(|(b, &c)| binomial(b.len(), c))
                .fold(1u64, u64::saturating_mul),
        }
    }

    /// The `index`-th base. Uniform bases come in lexicographic order; partition
    /// bases in mixed-radix order over the per-block choices, last block fastest.
    pub fn base_at(&self, index: u64) -> ElementSet {
        match &self.kind {
            Kind::Uniform { rank } => {
                ElementSet::from_sorted_unchecked(unrank(self.n, *rank, index))
            }
            Kind::Partition {
                blocks, capacities, ..
            } => {
                let mut rest = index;
                let mut chosen = Vec::with_capacity(self.rank());
                for (block, &cap) in blocks.iter().zip(capacities).rev() {
                    let radix = binomial(block.len(), cap);
                    let digit = rest % radix;
                    rest /= radix;
                    chosen.extend(
                        unrank(block.len(), cap, digit)
                            .into_iter()
                            .map(|pos| block.as_slice()[pos]),
                    );
                }
                ElementSet::from_ids(chosen)
            }
        }
    }

    /// Builds a bijection `π: A → B` between two bases that is the identity on
    /// `A ∩ B` and keeps `(A ∖ {a}) ∪ {π(a)}` independent for every `a ∈ A`.
    ///
    /// Leftover elements are matched in ascending id order: globally for
    /// uniform matroids, within each block for partition matroids.
    pub fn exchange_bijection(&self, a: &ElementSet, b: &ElementSet) -> Result<ExchangeBijection> {
        for s in [a, b] {
            if !self.is_base(s)? {
                return Err(Error::NotABase(s.as_slice().to_vec()));
            }
        }
        let only_a = a.difference(b);
        let only_b = b.difference(a);
        let mut pairs: Vec<(usize, usize)> = a.intersection(b).iter().map(|x| (x, x)).collect();
        match &self.kind {
            Kind::Uniform { .. } => pairs.extend(only_a.iter().zip(only_b.iter())),
            Kind::Partition {
                blocks, block_of, ..
            } => {
                for blk in 0..blocks.len() {
                    let from = only_a.iter().filter(|&x| block_of[x] == blk);
                    let to = only_b.iter().filter(|&x| block_of[x] == blk);
                    pairs.extend(from.zip(to));
                }
            }
        }
        pairs.sort_unstable();
        Ok(ExchangeBijection { pairs })
    }

    /// Checks the three exchange-bijection invariants for `π` on base `A`:
    /// bijectivity onto its image, identity on `A ∩ π(A)`, and single-swap
    /// independence.
    pub fn verify_exchange(&self, a: &ElementSet, pi: &ExchangeBijection) -> bool {
        let domain = ElementSet::from_ids(pi.pairs.iter().map(|p| p.0));
        if domain != *a || domain.len() != pi.pairs.len() {
            return false;
        }
        let image = pi.image_set();
        if image.len() != pi.pairs.len() || image.check_within(self.n).is_err() {
            return false;
        }
        pi.pairs.iter().all(|&(x, y)| {
            if image.contains(x) && x != y {
                return false;
            }
            self.independent_unchecked(&a.without(x).with(y))
        })
    }
}

/// A mapping from the elements of one base to the elements of another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeBijection {
    /// `(a, π(a))` pairs sorted by `a`.
    pairs: Vec<(usize, usize)>,
}

impl ExchangeBijection {
    /// Wraps arbitrary pairs; use [`Matroid::verify_exchange`] to check them.
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        ExchangeBijection { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn image(&self, a: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&a, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_ids(self.pairs.iter().map(|p| p.1))
    }

    /// `{π(a) : a ∈ S}` for `S` inside the domain.
    pub fn map_set(&self, s: &ElementSet) -> ElementSet {
        s.iter().filter_map(|a| self.image(a)).collect()
    }
}
