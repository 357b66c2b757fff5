//! Character lattices of rank 4 with a Galois action by signed permutations,
//! the divisor test, and the case sweeps over transitive images in `S₄`.

use alloc::string::String;

use thiserror::Error;

use crate::arith::ArithError;

pub mod divisor;
pub mod engine;
pub mod perm;
pub mod poly;
pub mod sweeps;

pub use divisor::{divisor_candidates, divisor_test, invariant_tensor_check, is_divisor_candidate};
pub use engine::{
    analyze_case, analyze_case_in, recheck, stable_subspaces, torus_field, CaseVerdict, Certificate, Component,
    Lead, StableFamily, Verdict,
};
pub use perm::{transitive_subgroups_s4, GenPerm, Perm4, SignedGroup, TransitiveFamily};
pub use poly::Poly;
pub use sweeps::{run_cases, sweep_a4, sweep_dim1, sweep_klein4, sweep_order4, SweepCase};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorusError {
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("matrix is not a signed permutation matrix")]
    NotGeneralizedPermutation,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("survivor in a group that is not dihedral of order 8: {0}")]
    Unclassified(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("case {case_id}: expected {expected}, got {actual}")]
    Mismatch {
        case_id: String,
        expected: &'static str,
        actual: &'static str,
    },
}
