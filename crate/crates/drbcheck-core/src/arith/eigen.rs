//! Characteristic polynomials and eigenspaces over a multiquadratic field.

use alloc::vec;
use alloc::vec::Vec;

use super::{int, rat, ArithError, ExactMatrix, FieldElement, MultiQuadField, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenspace {
    pub value: FieldElement,
    pub multiplicity: usize,
    pub basis: Vec<Vec<FieldElement>>,
}

/// Coefficients `c₀, …, cₙ` (constant term first) of `det(t·I − m)`.
pub fn charpoly(m: &ExactMatrix) -> Vec<FieldElement> {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    let t = m.zero_elem().clone();
    let mut c = vec![t.zero_like(); n + 1];
    c[n] = t.one_like();
    let mut mk = ExactMatrix::zeros(n, n, &t);
    let id = ExactMatrix::identity(n, &t);
    for k in 1..=n {
        mk = m.mul(&mk).add(&id.scale(&c[n - k + 1]));
        let tr = m.mul(&mk).trace();
        c[n - k] = tr.scale(&rat(-1, k as i64));
    }
    c
}

fn eval(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.zero_like();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Divides `p` by `(t − r)`, assuming `r` is a root.
fn deflate(p: &[FieldElement], r: &FieldElement) -> Vec<FieldElement> {
    let n = p.len() - 1;
    let mut q = vec![r.zero_like(); n];
    let mut carry = r.zero_like();
    for i in (0..n).rev() {
        carry = p[i + 1].add(&carry.mul(r));
        q[i] = carry.clone();
    }
    q
}

/// Candidate roots `(α·b_S + β·b_T)/2` with `α, β ∈ {−2,…,2}`, which
/// contain every root of unity of order dividing 8 or 6 expressible in the
/// field together with the values `±√d`.
pub fn root_candidates(field: &MultiQuadField) -> Vec<FieldElement> {
    let deg = field.degree();
    let half = rat(1, 2);
    let mut out = vec![field.zero()];
    for s in 0..deg {
        for a in [-2i64, -1, 1, 2] {
            out.push(field.basis(s).scale(&int(a)).scale(&half));
        }
    }
    for s in 0..deg {
        for t in s + 1..deg {
            for a in [-2i64, -1, 1, 2] {
                for b in [-2i64, -1, 1, 2] {
                    let v = field
                        .basis(s)
                        .scale(&int(a))
                        .add(&field.basis(t).scale(&int(b)))
                        .scale(&half);
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Eigenvalues with exact eigenbases.
///
/// Fails with [`ArithError::DoesNotSplit`] if the characteristic polynomial
/// is not a product of linear factors drawn from [`root_candidates`].
pub fn eigen_decompose(m: &ExactMatrix) -> Result<Vec<Eigenspace>, ArithError> {
    if !m.is_square() {
        return Err(ArithError::DimensionMismatch("eigenvalues of non-square matrix"));
    }
    let field = m.zero_elem().field().clone();
    let mut p = charpoly(m);
    let mut found: Vec<(FieldElement, usize)> = Vec::new();
    for r in root_candidates(&field) {
        if p.len() == 1 {
            break;
        }
        let mut mult = 0;
        while p.len() > 1 && eval(&p, &r).is_zero() {
            p = deflate(&p, &r);
            mult += 1;
        }
        if mult > 0 {
            found.push((r, mult));
        }
    }
    if p.len() > 1 {
        return Err(ArithError::DoesNotSplit);
    }
    let n = m.rows();
    let id = ExactMatrix::field_identity(n, &field);
    Ok(found
        .into_iter()
        .map(|(value, multiplicity)| {
            let basis = m.sub(&id.scale(&value)).kernel();
            Eigenspace {
                value,
                multiplicity,
                basis,
            }
        })
        .collect())
}
