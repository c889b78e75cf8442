//! Worst-case removals: the exact minimizer of `f(A ∖ B)` over `|B| ≤ α`, a
//! greedy heuristic, and the resilient value of a set.

use serde::Serialize;

use crate::combinatorics::{argmin_combination, binomial};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::set::ElementSet;

/// Default cap on the number of removals the exact adversary enumerates.
pub const DEFAULT_REMOVAL_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalResult {
    pub removed: ElementSet,
    pub remaining: ElementSet,
    pub value: f64,
    /// True when the removal came from exhaustive enumeration.
    pub exact: bool,
}

/// Minimizes `f(A ∖ B)` over removals `B ⊆ A` of size exactly `min(α, |A|)`.
///
/// Smaller removals never help the adversary under a monotone objective, so
/// only full-size ones are enumerated. Ties go to the lexicographically
/// smallest removed set.
pub fn worst_case_removal_exact(
    f: &Objective,
    a: &ElementSet,
    alpha: usize,
    cap: u64,
) -> Result<RemovalResult> {
    a.check_within(f.n())?;
    let k = alpha.min(a.len());
    let required = binomial(a.len(), k);
    if required > cap {
        return Err(Error::BudgetExceeded { required, cap });
    }
    let members = a.as_slice();
    let (value, removed_pos) =
        argmin_combination(a.len(), k, |pos| f.value(&remainder(members, pos)))
            .expect("at least one removal of size min(alpha, |A|)");
    let removed =
        ElementSet::from_sorted_unchecked(removed_pos.iter().map(|&p| members[p]).collect());
    Ok(RemovalResult {
        remaining: ElementSet::from_sorted_unchecked(remainder(members, &removed_pos)),
        removed,
        value,
        exact: true,
    })
}

/// `members` minus the entries at the sorted positions `pos`.
fn remainder(members: &[usize], pos: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(members.len() - pos.len());
    let mut skip = pos.iter().peekable();
    for (i, &x) in members.iter().enumerate() {
        if skip.peek() == Some(&&i) {
            skip.next();
        } else {
            out.push(x);
        }
    }
    out
}

/// Removes `min(α, |A|)` elements one at a time, each time the one whose
/// removal leaves the smallest value (ties to the smallest id).
pub fn worst_case_removal_greedy(
    f: &Objective,
    a: &ElementSet,
    alpha: usize,
) -> Result<RemovalResult> {
    a.check_within(f.n())?;
    let mut current = a.clone();
    let mut removed = Vec::new();
    for _ in 0..alpha.min(a.len()) {
        let (b, _) = current
            .iter()
            .map(|b| (b, f.value(current.without(b).as_slice())))
            .fold(None, |best: Option<(usize, f64)>, (b, v)| match best {
                Some((_, bv)) if bv <= v => best,
                _ => Some((b, v)),
            })
            .expect("current set is nonempty");
        removed.push(b);
        current = current.without(b);
    }
    Ok(RemovalResult {
        value: f.value(current.as_slice()),
        removed: ElementSet::from_ids(removed),
        remaining: current,
        exact: false,
    })
}

/// `min_{B ⊆ A, |B| ≤ α} f(A ∖ B)`, by exhaustive enumeration with the default cap.
pub fn resilient_value(f: &Objective, a: &ElementSet, alpha: usize) -> Result<f64> {
    Ok(worst_case_removal_exact(f, a, alpha, DEFAULT_REMOVAL_CAP)?.value)
}

/// Exact removal when it fits under `cap`, otherwise the greedy heuristic.
pub(crate) fn best_available_removal(
    f: &Objective,
    a: &ElementSet,
    alpha: usize,
    cap: u64,
) -> RemovalResult {
    match worst_case_removal_exact(f, a, alpha, cap) {
        Ok(r) => r,
        Err(_) => worst_case_removal_greedy(f, a, alpha).expect("ids already validated"),
    }
}
