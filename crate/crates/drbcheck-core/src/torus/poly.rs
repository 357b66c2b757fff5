//! Polynomials in the family parameters `x₁, x₂, y₁, y₂`, and rational
//! points of binary forms.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, Rational};
use crate::lattice::{primitive, IntVec};

pub const VARS: [&str; 4] = ["x1", "x2", "y1", "y2"];

/// A polynomial with rational coefficients in `x₁, x₂, y₁, y₂`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<[u8; 4], Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn add_term(&mut self, exps: [u8; 4], c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 4], &Rational)> {
        self.terms.iter()
    }

    /// Binary quadratic form `a·x₁² + b·x₁x₂ + c·x₂²` in the x or y pair.
    pub fn binary(coeffs: &[Rational; 3], y: bool) -> Poly {
        let mut p = Poly::zero();
        let off = if y { 2 } else { 0 };
        let mut e = [[0u8; 4]; 3];
        e[0][off] = 2;
        e[1][off] = 1;
        e[1][off + 1] = 1;
        e[2][off + 1] = 2;
        for k in 0..3 {
            p.add_term(e[k], coeffs[k].clone());
        }
        p
    }

    /// Bilinear form `Σ m[i][j]·xᵢ·yⱼ`.
    pub fn bilinear(m: &[[Rational; 2]; 2]) -> Poly {
        let mut p = Poly::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut e = [0u8; 4];
                e[i] = 1;
                e[2 + j] = 1;
                p.add_term(e, m[i][j].clone());
            }
        }
        p
    }

    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                for _ in 0..ek {
                    t *= &point[k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<Rational> = self.terms.values().cloned().collect();
        let prim = primitive(&coeffs);
        // leading term = largest exponent vector
        let lead_positive = prim.last().map_or(true, |x| x.is_positive());
        let mut p = Poly::zero();
        for (e, c) in self.terms.keys().zip(prim) {
            let c = if lead_positive { c } else { -c };
            p.add_term(*e, Rational::from_integer(c));
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        String::from(VARS[i])
                    } else {
                        alloc::format!("{}^{}", VARS[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == *n && &rd * &rd == *d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Primitive integer representative of a projective point, first nonzero
/// coordinate positive.
pub fn normalize_point(v: &[Rational]) -> IntVec {
    let mut p = primitive(v);
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
    }
    p
}

/// Rational zeros in P¹ of `a·s² + b·s·t + c·t²`, which must not vanish
/// identically.
pub fn binary_form_roots(coeffs: &[Rational; 3]) -> Vec<IntVec> {
    let [a, b, c] = coeffs;
    assert!(!(a.is_zero() && b.is_zero() && c.is_zero()), "zero binary form");
    let mut roots: Vec<IntVec> = Vec::new();
    let mut push = |v: [Rational; 2]| {
        let p = normalize_point(&v);
        if !roots.contains(&p) {
            roots.push(p);
        }
    };
    if a.is_zero() {
        // t·(b·s + c·t)
        push([int(1), int(0)]);
        if !b.is_zero() {
            push([-c.clone(), b.clone()]);
        }
    } else {
        let disc = b * b - int(4) * a * c;
        if let Some(r) = rational_sqrt(&disc) {
            let two_a = int(2) * a;
            push([(-b + &r) / &two_a, int(1)]);
            push([(-b - &r) / &two_a, int(1)]);
        }
    }
    roots.sort();
    roots
}

/// Evaluates `a·s² + b·s·t + c·t²`.
pub fn eval_binary(coeffs: &[Rational; 3], p: &[BigInt]) -> Rational {
    let s = Rational::from_integer(p[0].clone());
    let t = Rational::from_integer(p[1].clone());
    &coeffs[0] * &s * &s + &coeffs[1] * &s * &t + &coeffs[2] * &t * &t
}

/// The greatest common divisor of a list of integers, zero for an empty list.
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}
