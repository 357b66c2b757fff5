//! Multiquadratic fields Q(√d₁,…,√dₖ) and their Galois groups.
//!
//! An element is stored as `2^k` rational coordinates; coordinate `S`
//! (a bitmask over the generators) is the coefficient of `∏_{i∈S} √dᵢ`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{rat, ArithError, Rational};

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    gens: Vec<i64>,
    // d_S for every mask S
    prods: Vec<BigInt>,
}

/// A field Q(√d₁,…,√dₖ) of degree `2^k`.
#[derive(Clone, Debug)]
pub struct MultiQuadField {
    data: Arc<FieldData>,
}

impl PartialEq for MultiQuadField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.gens == other.data.gens
    }
}

impl Eq for MultiQuadField {}

pub(crate) fn is_square_free(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

pub(crate) fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Splits a nonzero integer as `s² · d` with `d` square-free.
pub fn square_free_part(n: i64) -> (i64, i64) {
    assert!(n != 0, "square_free_part of zero");
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= m;
    (s as i64, sign * d as i64)
}

impl MultiQuadField {
    /// Builds Q(√d₁,…,√dₖ), rejecting degenerate generator lists.
    pub fn new(gens: &[i64]) -> Result<Self, ArithError> {
        if gens.is_empty() {
            return Err(ArithError::EmptyGenerators);
        }
        for &d in gens {
            if d == 0 || d == 1 {
                return Err(ArithError::NotSquareFree(d));
            }
        }
        if gens.len() > 16 {
            return Err(ArithError::TooManyGenerators(gens.len()));
        }
        let k = gens.len();
        let mut prods = vec![BigInt::one(); 1 << k];
        for mask in 1..(1usize << k) {
            let low = mask.trailing_zeros() as usize;
            prods[mask] = &prods[mask & (mask - 1)] * BigInt::from(gens[low]);
            if is_perfect_square(&prods[mask]) {
                return Err(ArithError::DependentGenerators(mask_gens(gens, mask)));
            }
        }
        if let Some(&d) = gens.iter().find(|&&d| !is_square_free(d)) {
            return Err(ArithError::NotSquareFree(d));
        }
        Ok(MultiQuadField {
            data: Arc::new(FieldData {
                gens: gens.to_vec(),
                prods,
            }),
        })
    }

    pub fn generators(&self) -> &[i64] {
        &self.data.gens
    }

    pub fn rank(&self) -> usize {
        self.data.gens.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.rank()
    }

    /// Product of the generators in `mask`.
    pub fn subset_product(&self, mask: usize) -> &BigInt {
        &self.data.prods[mask]
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(rat(n, 1))
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    /// The basis element `∏_{i∈mask} √dᵢ`.
    pub fn basis(&self, mask: usize) -> FieldElement {
        let mut e = self.zero();
        e.coords[mask] = Rational::one();
        e
    }

    /// `√dᵢ` for the i-th generator.
    pub fn sqrt_gen(&self, i: usize) -> FieldElement {
        self.basis(1 << i)
    }

    /// Finds `r · ∏_{i∈S} √dᵢ` squaring to `q`, if one exists.
    pub fn sqrt_rational(&self, q: &Rational) -> Option<FieldElement> {
        if q.is_zero() {
            return Some(self.zero());
        }
        for mask in 0..self.degree() {
            let t = q / Rational::from_integer(self.data.prods[mask].clone());
            if t.is_positive() && is_perfect_square(t.numer()) && is_perfect_square(t.denom()) {
                let r = Rational::new(t.numer().sqrt(), t.denom().sqrt());
                let mut e = self.zero();
                e.coords[mask] = r;
                return Some(e);
            }
        }
        None
    }

    /// Square root of an integer whose square-free part is a subset product.
    pub fn sqrt_int(&self, n: i64) -> Option<FieldElement> {
        self.sqrt_rational(&rat(n, 1))
    }

    pub fn galois_group(&self) -> Vec<GaloisElement> {
        (0..self.degree())
            .map(|neg| GaloisElement {
                rank: self.rank(),
                neg_mask: neg,
            })
            .collect()
    }

    /// The automorphism induced by complex conjugation: it negates exactly the
    /// square roots of negative generators.
    pub fn complex_conjugation(&self) -> GaloisElement {
        let mut neg = 0;
        for (i, &d) in self.data.gens.iter().enumerate() {
            if d < 0 {
                neg |= 1 << i;
            }
        }
        GaloisElement {
            rank: self.rank(),
            neg_mask: neg,
        }
    }

    /// Galois element negating the generators listed by index.
    pub fn galois_element(&self, negated: &[usize]) -> GaloisElement {
        let mut neg = 0;
        for &i in negated {
            assert!(i < self.rank(), "generator index out of range");
            neg |= 1 << i;
        }
        GaloisElement {
            rank: self.rank(),
            neg_mask: neg,
        }
    }
}

fn mask_gens(gens: &[i64], mask: usize) -> Vec<i64> {
    gens.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &d)| d)
        .collect()
}

/// An automorphism of a multiquadratic field, stored as the set of negated
/// generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaloisElement {
    rank: usize,
    neg_mask: usize,
}

impl GaloisElement {
    pub fn identity(rank: usize) -> Self {
        GaloisElement { rank, neg_mask: 0 }
    }

    pub fn from_signs(signs: &[i8]) -> Self {
        let mut neg = 0;
        for (i, &s) in signs.iter().enumerate() {
            assert!(s == 1 || s == -1, "signs must be ±1");
            if s == -1 {
                neg |= 1 << i;
            }
        }
        GaloisElement {
            rank: signs.len(),
            neg_mask: neg,
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.rank)
            .map(|i| if self.neg_mask >> i & 1 == 1 { -1 } else { 1 })
            .collect()
    }

    pub fn negated_mask(&self) -> usize {
        self.neg_mask
    }

    pub fn compose(&self, other: &GaloisElement) -> GaloisElement {
        assert_eq!(self.rank, other.rank);
        GaloisElement {
            rank: self.rank,
            neg_mask: self.neg_mask ^ other.neg_mask,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.neg_mask == 0
    }

    pub fn apply(&self, e: &FieldElement) -> FieldElement {
        assert_eq!(self.rank, e.field.rank(), "galois element from another field");
        let coords = e
            .coords
            .iter()
            .enumerate()
            .map(|(s, c)| {
                if (s & self.neg_mask).count_ones() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            field: e.field.clone(),
            coords,
        }
    }
}

/// Applies `g` to `e`.
pub fn apply_galois(g: &GaloisElement, e: &FieldElement) -> FieldElement {
    g.apply(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: MultiQuadField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &MultiQuadField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, mask: usize) -> &Rational {
        &self.coords[mask]
    }

    pub fn from_coords(field: &MultiQuadField, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), field.degree());
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check_field(&self, other: &FieldElement) {
        assert!(self.field == other.field, "field elements from different fields");
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_field(other);
        let n = self.coords.len();
        let mut out = vec![Rational::zero(); n];
        for (s, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let d = self.field.subset_product(s & t);
                out[s ^ t] += a * b * d;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords: out,
        }
    }

    /// Rational norm `∏_g g(x)`.
    pub fn norm(&self) -> Rational {
        let mut acc = self.field.one();
        for g in self.field.galois_group() {
            acc = acc.mul(&g.apply(self));
        }
        debug_assert!(acc.is_rational());
        acc.coords[0].clone()
    }

    pub fn inv(&self) -> Result<FieldElement, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let mut conj = self.field.one();
        for g in self.field.galois_group().iter().skip(1) {
            conj = conj.mul(&g.apply(self));
        }
        let n = self.mul(&conj);
        let n = n.to_rational().expect("norm is rational");
        Ok(conj.scale(&n.recip()))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sign under the real embedding that sends `√d` to the positive root for
    /// `d > 0` and to `i·√|d|` for `d < 0`.  Fails when the image is not real.
    pub fn real_sign(&self) -> Result<i8, ArithError> {
        let field = &self.field;
        let mut terms: Vec<(Rational, BigInt)> = Vec::new();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negs = mask_gens(field.generators(), mask)
                .iter()
                .filter(|&&d| d < 0)
                .count();
            if negs % 2 == 1 {
                return Err(ArithError::NotReal);
            }
            // i^negs · √|d_S|
            let sign = if negs % 4 == 2 { -c } else { c.clone() };
            terms.push((sign, field.subset_product(mask).abs()));
        }
        if terms.is_empty() {
            return Ok(0);
        }
        // interval refinement of Σ c·√n
        let mut bits = 8u32;
        loop {
            let scale = BigInt::one() << bits;
            let sq = &scale * &scale;
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (c, n) in &terms {
                let floor = (n * &sq).sqrt();
                let exact = &floor * &floor == n * &sq;
                let l = Rational::new(floor.clone(), scale.clone());
                let h = if exact {
                    l.clone()
                } else {
                    Rational::new(floor + 1, scale.clone())
                };
                if c.is_positive() {
                    lo += c * &l;
                    hi += c * &h;
                } else {
                    lo += c * &h;
                    hi += c * &l;
                }
            }
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            bits *= 2;
            if bits > 1 << 16 {
                return Err(ArithError::SignUndecided);
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "sqrt({})", self.field.subset_product(mask))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Formats a generator list such as `Q(sqrt(-1),sqrt(2))`.
pub fn field_name(field: &MultiQuadField) -> String {
    let parts: Vec<String> = field
        .generators()
        .iter()
        .map(|d| alloc::format!("sqrt({})", d))
        .collect();
    alloc::format!("Q({})", parts.join(","))
}
