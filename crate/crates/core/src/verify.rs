//! Certification of the `(1 − ν)` guarantee for myopic solutions, including
//! each intermediate inequality of the exchange argument behind it.

use serde::Serialize;

use crate::adversary::{worst_case_removal_exact, DEFAULT_REMOVAL_CAP};
use crate::error::{Error, Result};
use crate::matroid::ExchangeBijection;
use crate::objective::Curvature;
use crate::set::ElementSet;
use crate::solvers::{Algorithm, Instance, Solution};

/// Relative tolerance on every certified inequality.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

fn tolerance(scale: f64) -> f64 {
    RELATIVE_TOLERANCE * scale.abs().max(1.0)
}

fn at_least(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - tolerance(rhs)
}

/// Step-by-step evidence for the bound on a myopic solution `A`, compared with
/// an optimal resilient base `A*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofChainReport {
    /// Remainder `R(A)` after the worst-case removal.
    pub remainder: ElementSet,
    /// `f(R(A))`.
    pub eq4_lhs: f64,
    /// `(1 − ν) Σ_{a ∈ R(A)} f({a})`.
    pub eq4_rhs: f64,
    pub eq4_holds: bool,
    /// Exchange bijection `π: A → A*`.
    pub bijection: ExchangeBijection,
    /// Elements `a ∈ A` with `f({a}) < f({π(a)})`.
    pub eq5_violations: Vec<usize>,
    pub eq5_holds: bool,
    /// `(1 − ν) Σ_{a ∈ R(A)} f({π(a)})`.
    pub eq6_rhs: f64,
    pub eq6_holds: bool,
    /// `π(R(A)) ⊆ A*`.
    pub mapped_remainder: ElementSet,
    /// `(1 − ν) f(π(R(A)))`.
    pub eq7_rhs: f64,
    pub eq7_holds: bool,
    /// `f(π(R(A)))`.
    pub final_lhs: f64,
    /// `f(R(A*))`.
    pub final_rhs: f64,
    /// `|A* ∖ π(R(A))|`, the size of the removal implied by the mapped remainder.
    pub implied_removal_size: usize,
    /// Set when `α` exceeds the rank, so removals saturate at `|A|`.
    pub alpha_exceeds_rank: bool,
    pub final_holds: bool,
    pub all_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub nu: Curvature,
    /// `f(R(A))` for the myopic solution.
    pub value_sol: f64,
    /// `f(R(A*))`, the optimal resilient value.
    pub value_opt: f64,
    /// `(1 − ν) f(R(A*))`.
    pub bound: f64,
    /// `value_sol / value_opt`, defined as 1 when `value_opt = 0`.
    pub ratio: f64,
    pub theorem_holds: bool,
    pub proof_chain: ProofChainReport,
}

fn require_myopic(sol: &Solution) -> Result<()> {
    if sol.algorithm != Algorithm::Myopic {
        return Err(Error::WrongAlgorithm(sol.algorithm.to_string()));
    }
    Ok(())
}

/// Recomputes both resilient values with the exact adversary and checks
/// `f(R(A)) ≥ (1 − ν) f(R(A*))`, along with the full proof chain.
pub fn certify(inst: &Instance, sol: &Solution, opt: &Solution) -> Result<Certificate> {
    require_myopic(sol)?;
    let nu = inst.objective().curvature()?;
    let proof_chain = chain(inst, sol, opt, nu.nu)?;
    let value_sol = proof_chain.eq4_lhs;
    let value_opt = proof_chain.final_rhs;
    let bound = (1.0 - nu.nu) * value_opt;
    let ratio = if value_opt == 0.0 {
        1.0
    } else {
        value_sol / value_opt
    };
    Ok(Certificate {
        theorem_holds: at_least(value_sol, bound),
        nu,
        value_sol,
        value_opt,
        bound,
        ratio,
        proof_chain,
    })
}

/// Checks each inequality of the exchange argument individually.
pub fn check_proof_chain(
    inst: &Instance,
    sol: &Solution,
    opt: &Solution,
) -> Result<ProofChainReport> {
    require_myopic(sol)?;
    let nu = inst.objective().curvature()?;
    chain(inst, sol, opt, nu.nu)
}

fn chain(inst: &Instance, sol: &Solution, opt: &Solution, nu: f64) -> Result<ProofChainReport> {
    let f = inst.objective();
    let alpha = inst.alpha();
    let singleton = |x: usize| f.singleton(x);

    let removal_sol = worst_case_removal_exact(f, &sol.chosen, alpha, DEFAULT_REMOVAL_CAP)?;
    let removal_opt = worst_case_removal_exact(f, &opt.chosen, alpha, DEFAULT_REMOVAL_CAP)?;
    let remainder = removal_sol.remaining;
    let value_sol = removal_sol.value;

    let eq4_rhs = (1.0 - nu) * remainder.iter().map(singleton).fold(0.0, |acc, v| acc + v);
    let eq4_holds = at_least(value_sol, eq4_rhs);

    let bijection = inst
        .matroid()
        .exchange_bijection(&sol.chosen, &opt.chosen)?;
    let eq5_violations: Vec<usize> = bijection
        .pairs()
        .iter()
        .filter(|&&(a, b)| !at_least(singleton(a), singleton(b)))
        .map(|&(a, _)| a)
        .collect();

    let mapped_remainder = bijection.map_set(&remainder);
    let eq6_rhs = (1.0 - nu)
        * remainder
            .iter()
            .map(|a| singleton(bijection.image(a).expect("remainder lies in the domain")))
            .fold(0.0, |acc, v| acc + v);
    let mapped_value = f.value(mapped_remainder.as_slice());
    let eq7_rhs = (1.0 - nu) * mapped_value;
    let implied_removal_size = opt.chosen.len() - mapped_remainder.len();

    let final_holds = at_least(mapped_value, removal_opt.value)
        && implied_removal_size == alpha.min(opt.chosen.len());
    let eq5_holds = eq5_violations.is_empty();
    let eq6_holds = at_least(value_sol, eq6_rhs);
    let eq7_holds = at_least(value_sol, eq7_rhs);
    Ok(ProofChainReport {
        remainder,
        eq4_lhs: value_sol,
        eq4_rhs,
        eq4_holds,
        bijection,
        eq5_holds,
        eq5_violations,
        eq6_rhs,
        eq6_holds,
        mapped_remainder,
        eq7_rhs,
        eq7_holds,
        final_lhs: mapped_value,
        final_rhs: removal_opt.value,
        implied_removal_size,
        alpha_exceeds_rank: alpha > inst.matroid().rank(),
        final_holds,
        all_hold: eq4_holds && eq5_holds && eq6_holds && eq7_holds && final_holds,
    })
}

/// The myopic guarantee `1 − ν` next to the greedy-resilient factor `(1 − ν)/(1 + ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub myopic_bound: f64,
    pub greedy_resilient_bound: f64,
}

pub fn bound_constants(nu: f64) -> Result<BoundConstants> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::InvalidArgument(format!(
            "curvature {nu} is outside [0, 1]"
        )));
    }
    Ok(BoundConstants {
        myopic_bound: 1.0 - nu,
        greedy_resilient_bound: (1.0 - nu) / (1.0 + nu),
    })
}
