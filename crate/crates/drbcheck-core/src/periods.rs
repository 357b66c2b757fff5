//! Formal period monomials c·∏ tᵢ^eᵢ over algebraically independent
//! transcendentals, diagonal Gross comparison matrices, and exponent-rank
//! bounds on transcendence degree.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{int, FieldElement, MultiQuadField, QMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeriodError {
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("transcendental bases differ: {0:?} vs {1:?}")]
    BasisMismatch(Vec<String>, Vec<String>),
    #[error("exponent vector has length {got}, basis has {expected}")]
    Length { expected: usize, got: usize },
    #[error("need 0 <= p <= n, got p = {p}, n = {n}")]
    BadDegrees { p: i64, n: i64 },
}

/// The default basis (b, 2πi).
pub fn default_basis() -> Vec<String> {
    vec!["b".to_string(), "2pi*i".to_string()]
}

/// Coefficient field for the Gross matrices.
pub fn coefficient_field() -> MultiQuadField {
    MultiQuadField::new(&[-1]).expect("Q(sqrt(-1))")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMonomial {
    pub coefficient: FieldElement,
    pub basis: Vec<String>,
    pub exponents: Vec<i64>,
}

impl PeriodMonomial {
    pub fn new(coefficient: FieldElement, basis: Vec<String>, exponents: Vec<i64>) -> Result<Self, PeriodError> {
        if coefficient.is_zero() {
            return Err(PeriodError::ZeroCoefficient);
        }
        if basis.len() != exponents.len() {
            return Err(PeriodError::Length { expected: basis.len(), got: exponents.len() });
        }
        Ok(PeriodMonomial { coefficient, basis, exponents })
    }

    /// 1·b^e₀·(2πi)^e₁.
    pub fn standard(b: i64, two_pi_i: i64) -> Self {
        PeriodMonomial {
            coefficient: coefficient_field().one(),
            basis: default_basis(),
            exponents: vec![b, two_pi_i],
        }
    }

    pub fn unit() -> Self {
        Self::standard(0, 0)
    }

    pub fn mul(&self, other: &PeriodMonomial) -> Result<PeriodMonomial, PeriodError> {
        if self.basis != other.basis {
            return Err(PeriodError::BasisMismatch(self.basis.clone(), other.basis.clone()));
        }
        Ok(PeriodMonomial {
            coefficient: self.coefficient.mul(&other.coefficient),
            basis: self.basis.clone(),
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        })
    }

    /// Multiplies the coefficient by a nonzero algebraic number.
    pub fn scale(&self, c: &FieldElement) -> Result<PeriodMonomial, PeriodError> {
        if c.is_zero() {
            return Err(PeriodError::ZeroCoefficient);
        }
        Ok(PeriodMonomial { coefficient: self.coefficient.mul(c), ..self.clone() })
    }

    pub fn is_algebraic(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for PeriodMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coefficient.is_one() || self.is_algebraic() {
            parts.push(format!("({})", self.coefficient));
        }
        for (name, &e) in self.basis.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => parts.push(format!("({name})")),
                _ => parts.push(format!("({name})^{e}")),
            }
        }
        f.write_str(&parts.join("*"))
    }
}

/// Diagonal period matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    pub diagonal: Vec<PeriodMonomial>,
}

impl PeriodMatrix {
    pub fn exponents(&self) -> Vec<Vec<i64>> {
        self.diagonal.iter().map(|m| m.exponents.clone()).collect()
    }
}

/// diag(b^p(2πi/b)^{n−p}, b^{n−p}(2πi/b)^p).
pub fn gross_matrix(p: i64, n: i64) -> Result<PeriodMatrix, PeriodError> {
    if p < 0 || p > n {
        return Err(PeriodError::BadDegrees { p, n });
    }
    Ok(PeriodMatrix {
        diagonal: vec![PeriodMonomial::standard(2 * p - n, n - p), PeriodMonomial::standard(n - 2 * p, p)],
    })
}

fn check_bases(ms: &[PeriodMonomial]) -> Result<(), PeriodError> {
    if let Some(first) = ms.first() {
        for m in ms {
            if m.basis != first.basis {
                return Err(PeriodError::BasisMismatch(first.basis.clone(), m.basis.clone()));
            }
        }
    }
    Ok(())
}

/// Rank over Q of the exponent vectors, a lower bound for the transcendence
/// degree of the field the monomials generate over Q̄.
pub fn trdeg_lower_bound(ms: &[PeriodMonomial]) -> Result<usize, PeriodError> {
    check_bases(ms)?;
    let rows: Vec<Vec<_>> = ms.iter().map(|m| m.exponents.iter().map(|&e| int(e)).collect()).collect();
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(QMatrix::rank_of(&rows, &int(0)))
}

/// Every monomial lies in Q̄·(2πi)^k on the basis (b, 2πi).
pub fn twisted_membership(ms: &[PeriodMonomial], k: i64) -> Result<bool, PeriodError> {
    check_bases(ms)?;
    if let Some(m) = ms.first() {
        if m.basis != default_basis() {
            return Err(PeriodError::BasisMismatch(default_basis(), m.basis.clone()));
        }
    }
    Ok(ms.iter().all(|m| m.exponents == [0, k]))
}

/// Lower bound on the dimension of the de Rham–Betti group of a rank-2
/// structure with comparison matrix `gross_matrix(p, n)`.
pub fn drb_dimension_bound(p: i64, n: i64) -> Result<usize, PeriodError> {
    trdeg_lower_bound(&gross_matrix(p, n)?.diagonal)
}

/// Summary used by the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct GrossReport {
    pub p: i64,
    pub n: i64,
    pub entries: Vec<String>,
    pub exponents: Vec<Vec<i64>>,
    pub trdeg_lower_bound: usize,
    /// Membership in Q̄·(2πi)^{n/2}, for even n.
    pub twisted: Option<bool>,
}

pub fn gross_report(p: i64, n: i64) -> Result<GrossReport, PeriodError> {
    let g = gross_matrix(p, n)?;
    let twisted = if n % 2 == 0 { Some(twisted_membership(&g.diagonal, n / 2)?) } else { None };
    Ok(GrossReport {
        p,
        n,
        entries: g.diagonal.iter().map(|m| m.to_string()).collect(),
        exponents: g.exponents(),
        trdeg_lower_bound: trdeg_lower_bound(&g.diagonal)?,
        twisted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gross_entries() {
        let g = gross_matrix(1, 4).unwrap();
        assert_eq!(g.exponents(), vec![vec![-2, 3], vec![2, 1]]);
        assert_eq!(g.diagonal[0].to_string(), "(b)^-2*(2pi*i)^3");
        assert_eq!(gross_matrix(0, 0).unwrap().exponents(), vec![vec![0, 0], vec![0, 0]]);
        assert!(gross_matrix(3, 2).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(drb_dimension_bound(1, 4).unwrap(), 2);
        assert_eq!(drb_dimension_bound(2, 4).unwrap(), 1);
        assert_eq!(trdeg_lower_bound(&[PeriodMonomial::unit()]).unwrap(), 0);
    }
}
