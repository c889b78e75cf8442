//! Resilient monotone submodular maximization under matroid constraints.
//!
//! The myopic solver picks elements by their stand-alone value `f({a})`
//! rather than by marginal gain. Against an adversary that deletes the worst
//! `α` chosen elements, its solution keeps at least a `1 − ν` fraction of the
//! optimal resilient value, where `ν` is the total curvature of `f`. The
//! [`verify`] module checks that guarantee, step by step, against exhaustive
//! oracles.

pub mod adversary;
pub mod bench;
pub mod combinatorics;
pub mod error;
pub mod generate;
pub mod instance;
pub mod matroid;
pub mod objective;
pub mod par;
pub mod set;
pub mod solvers;
pub mod verify;

pub use adversary::{
    resilient_value, worst_case_removal_exact, worst_case_removal_greedy, RemovalResult,
};
pub use error::{Error, Result};
pub use instance::InstanceFile;
pub use matroid::{ExchangeBijection, Matroid};
pub use objective::{check_monotone, check_normalized, check_submodular, Curvature, Objective};
pub use set::{ElementSet, GroundSet};
pub use solvers::{
    solve_exact_resilient, solve_greedy_marginal, solve_myopic, Algorithm, Instance, Solution,
};
pub use verify::{bound_constants, certify, check_proof_chain, Certificate, ProofChainReport};
