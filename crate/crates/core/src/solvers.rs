//! Myopic maximization, the marginal-gain greedy baseline, and the exhaustive
//! resilient optimum.

use std::fmt;

use serde::Serialize;

use crate::adversary::{
    best_available_removal, worst_case_removal_exact, RemovalResult, DEFAULT_REMOVAL_CAP,
};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::objective::Objective;
use crate::par;
use crate::set::{ElementSet, GroundSet};

/// Default cap on the number of bases the exhaustive solver scores.
pub const DEFAULT_BASE_CAP: u64 = 1_000_000;

const BASE_CHUNK: u64 = 64;

/// A resilient maximization problem: objective, matroid, and removal budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    ground: GroundSet,
    objective: Objective,
    matroid: Matroid,
    alpha: usize,
}

impl Instance {
    pub fn new(
        ground: GroundSet,
        objective: Objective,
        matroid: Matroid,
        alpha: usize,
    ) -> Result<Self> {
        let n = ground.len();
        if objective.n() != n || matroid.n() != n {
            return Err(Error::InvalidInstance(format!(
                "ground set has {n} elements, objective {} and matroid {}",
                objective.n(),
                matroid.n()
            )));
        }
        Ok(Instance {
            ground,
            objective,
            matroid,
            alpha,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Myopic,
    Greedy,
    Exact,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Myopic => "myopic",
            Algorithm::Greedy => "greedy",
            Algorithm::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub chosen: ElementSet,
    pub selection_order: Vec<usize>,
    pub algorithm: Algorithm,
    pub removal: RemovalResult,
    pub resilient_value: f64,
    /// Set when no feasible candidate remained before reaching full rank.
    pub truncated: bool,
}

/// Index of the largest score, ties to the smallest index. `None` scores are
/// infeasible candidates.
fn argmax_first(scores: &[Option<f64>]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, s) in scores.iter().enumerate() {
        if let Some(v) = *s {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

/// Shared selection loop: grows an independent set up to full rank, picking the
/// feasible candidate with the highest score each step.
fn grow<S>(inst: &Instance, algorithm: Algorithm, score: S) -> Solution
where
    S: Fn(usize, &ElementSet) -> f64 + Sync + Send,
{
    let matroid = &inst.matroid;
    let mut chosen = ElementSet::empty();
    let mut order = Vec::with_capacity(matroid.rank());
    let mut truncated = false;
    while chosen.len() < matroid.rank() {
        let scores = par::map_range(inst.n(), |x| {
            (!chosen.contains(x) && matroid.can_extend(&chosen, x)).then(|| score(x, &chosen))
        });
        let Some(x) = argmax_first(&scores) else {
            truncated = true;
            break;
        };
        chosen = chosen.with(x);
        order.push(x);
    }
    let removal = best_available_removal(&inst.objective, &chosen, inst.alpha, DEFAULT_REMOVAL_CAP);
    Solution {
        resilient_value: removal.value,
        chosen,
        selection_order: order,
        algorithm,
        removal,
        truncated,
    }
}

/// Repeatedly adds the feasible element with the largest singleton value
/// `f({a})` until the set is a base. Ties go to the smallest id.
pub fn solve_myopic(inst: &Instance) -> Solution {
    let f = &inst.objective;
    let singles: Vec<f64> = par::map_range(inst.n(), |x| f.singleton(x));
    grow(inst, Algorithm::Myopic, |x, _| singles[x])
}

/// Classical greedy: adds the feasible element with the largest marginal gain
/// `f(A ∪ {a}) − f(A)`. Ties go to the smallest id.
pub fn solve_greedy_marginal(inst: &Instance) -> Solution {
    let f = &inst.objective;
    grow(inst, Algorithm::Greedy, |x, chosen| {
        f.marginal_value(x, chosen.as_slice())
    })
}

/// Scores every base by its exact worst-case removal and returns the best,
/// ties to the lexicographically smallest base.
pub fn solve_exact_resilient(inst: &Instance, cap: u64) -> Result<Solution> {
    let matroid = &inst.matroid;
    let total = matroid.base_count();
    if total > cap {
        return Err(Error::BudgetExceeded {
            required: total,
            cap,
        });
    }
    let better = |cand: &(ElementSet, RemovalResult), best: &(ElementSet, RemovalResult)| {
        cand.1.value > best.1.value || (cand.1.value == best.1.value && cand.0 < best.0)
    };
    let chunks = total.div_ceil(BASE_CHUNK) as usize;
    let per_chunk = par::map_range(chunks, |c| -> Result<(ElementSet, RemovalResult)> {
        let start = c as u64 * BASE_CHUNK;
        let end = (start + BASE_CHUNK).min(total);
        let mut best: Option<(ElementSet, RemovalResult)> = None;
        for i in start..end {
            let base = matroid.base_at(i);
            let removal =
                worst_case_removal_exact(&inst.objective, &base, inst.alpha, DEFAULT_REMOVAL_CAP)?;
            let cand = (base, removal);
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
        Ok(best.expect("chunks are nonempty"))
    });
    let mut best: Option<(ElementSet, RemovalResult)> = None;
    for cand in per_chunk {
        let cand = cand?;
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
    }
    let (chosen, removal) = best.expect("every matroid has at least one base");
    Ok(Solution {
        selection_order: chosen.as_slice().to_vec(),
        resilient_value: removal.value,
        chosen,
        algorithm: Algorithm::Exact,
        removal,
        truncated: false,
    })
}
