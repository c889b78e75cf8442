//! Ground sets and canonical element subsets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground set `{0, …, n-1}`, optionally with a label per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Self {
        GroundSet { n, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        GroundSet {
            n: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels.as_ref()?.get(id).map(String::as_str)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The whole ground set as an `ElementSet`.
    pub fn all(&self) -> ElementSet {
        ElementSet((0..self.n).collect())
    }
}

/// A subset of the ground set in canonical form: strictly increasing ids.
///
/// The derived ordering is lexicographic on the sorted id list, which is the
/// tie-break order used by every solver and adversary in the crate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn empty() -> Self {
        ElementSet(Vec::new())
    }

    /// Builds a set from arbitrary ids, sorting and removing duplicates.
    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }

    /// Wraps an already strictly increasing id list.
    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        ElementSet(v)
    }

    /// Builds the set whose members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        ElementSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn max_id(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Fails unless every id is below `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.max_id() {
            Some(id) if id >= n => Err(Error::InvalidElement { id, n }),
            _ => Ok(()),
        }
    }

    pub fn with(&self, id: usize) -> ElementSet {
        match self.0.binary_search(&id) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut v = Vec::with_capacity(self.0.len() + 1);
                v.extend_from_slice(&self.0[..pos]);
                v.push(id);
                v.extend_from_slice(&self.0[pos..]);
                ElementSet(v)
            }
        }
    }

    pub fn without(&self, id: usize) -> ElementSet {
        ElementSet(self.0.iter().copied().filter(|&x| x != id).collect())
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| !other.contains(x))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.iter().chain(other.iter()))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// Bitmask form; only valid while every id is below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &x| m | (1u64 << x))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_ids(iter)
    }
}

impl<const N: usize> From<[usize; N]> for ElementSet {
    fn from(ids: [usize; N]) -> Self {
        ElementSet::from_ids(ids)
    }
}

impl std::fmt::Display for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}
