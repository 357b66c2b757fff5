//! The divisor test and invariant-tensor membership.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::lattice::{ivec, IntLattice, IntVec};

/// The 24 vectors with two zero coordinates and two coordinates in `{±1}`,
/// ordered by position pair and then by signs `++, +−, −+, −−`.
pub fn divisor_candidates() -> Vec<IntVec> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in i + 1..4 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = [0i64; 4];
                v[i] = si;
                v[j] = sj;
                out.push(ivec(&v));
            }
        }
    }
    out
}

pub fn is_divisor_candidate(v: &[BigInt]) -> bool {
    let zeros = v.iter().filter(|x| **x == BigInt::from(0)).count();
    let units = v
        .iter()
        .filter(|x| **x == BigInt::from(1) || **x == BigInt::from(-1))
        .count();
    v.len() == 4 && zeros == 2 && units == 2
}

/// Returns the first candidate vector contained in `l`, if any.
pub fn divisor_test(l: &IntLattice) -> Option<IntVec> {
    assert_eq!(l.ambient_rank(), 4, "divisor test needs ambient rank 4");
    divisor_candidates().into_iter().find(|v| l.contains(v))
}

/// Whether `Σ nᵢ f_{σᵢ}` lies in `delta`.
pub fn invariant_tensor_check(delta: &IntLattice, exponents: &[i64; 4]) -> bool {
    assert_eq!(delta.ambient_rank(), 4, "invariant tensor check needs ambient rank 4");
    delta.contains_i64(exponents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let l = IntLattice::from_i64(&[alloc::vec![1, 0, 1, 0], alloc::vec![0, 1, 0, 1]], 4);
        assert_eq!(divisor_test(&l), Some(ivec(&[1, 0, 1, 0])));
        let l = IntLattice::from_i64(&[alloc::vec![1, 2, 3, 4]], 4);
        assert_eq!(divisor_test(&l), None);
        let l = IntLattice::from_i64(&[alloc::vec![-1, 1, -2, 2], alloc::vec![2, 2, 1, 1]], 4);
        assert_eq!(divisor_test(&l), None);
        assert_eq!(divisor_candidates().len(), 24);
        assert!(divisor_candidates().iter().all(|v| is_divisor_candidate(v)));
    }

    #[test]
    fn tensor_membership() {
        let d = IntLattice::from_i64(&[alloc::vec![1, 0, 1, 0]], 4);
        assert!(invariant_tensor_check(&d, &[1, 0, 1, 0]));
        assert!(!invariant_tensor_check(&d, &[1, 0, 0, 0]));
        let d = IntLattice::from_i64(&[alloc::vec![-1, 1, -2, 2], alloc::vec![2, 2, 1, 1]], 4);
        assert!(invariant_tensor_check(&d, &[1, 3, -1, 3]));
    }
}
