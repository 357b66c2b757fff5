//! Integer lattices: Hermite and Smith normal forms, saturation, membership.
//!
//! The canonical basis is the row-style Hermite normal form: positive pivots,
//! entries above each pivot reduced into `[0, pivot)`, zero rows dropped.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

pub type IntVec = Vec<BigInt>;

pub fn ivec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A sublattice of `Z^n` given by its Hermite normal form basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntLattice {
    ambient: usize,
    basis: Vec<IntVec>,
}

impl IntLattice {
    pub fn from_rows(rows: &[IntVec], ambient: usize) -> Self {
        hnf(rows, ambient)
    }

    pub fn from_i64(rows: &[Vec<i64>], ambient: usize) -> Self {
        let rows: Vec<IntVec> = rows.iter().map(|r| ivec(r)).collect();
        hnf(&rows, ambient)
    }

    pub fn zero(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVec> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient rank");
        let mut rest: IntVec = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            // entries left of p are already zero in `rest` for a valid member
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&b[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(b) {
                *x -= &q * y;
            }
            coeffs.push(q);
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&ivec(v))
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_vec(b))?;
        }
        write!(f, "}}")
    }
}

pub fn format_vec(v: &[BigInt]) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = v.iter().map(|x| alloc::format!("{}", x)).collect();
    alloc::format!("({})", parts.join(","))
}

fn row_sub_mul(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

/// Row-style Hermite normal form of the row space of `rows`.
pub fn hnf(rows: &[IntVec], ambient: usize) -> IntLattice {
    let mut a: Vec<IntVec> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ambient, "row length differs from ambient rank");
            r.clone()
        })
        .collect();
    let m = a.len();
    let mut r = 0;
    for c in 0..ambient {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot = a[r].clone();
                row_sub_mul(&mut a[i], &pivot, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r).map_or(true, |row| row[c].is_zero()) {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = a[r].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&pivot[c]);
            row_sub_mul(&mut a[i], &pivot, &q);
        }
        r += 1;
    }
    a.truncate(r);
    IntLattice { ambient, basis: a }
}

/// Smith normal form `U·A·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Nonzero invariant factors `d₁ | d₂ | …`.
    pub factors: Vec<BigInt>,
    pub d: Vec<IntVec>,
    pub u: Vec<IntVec>,
    pub v: Vec<IntVec>,
    pub v_inv: Vec<IntVec>,
}

fn identity(n: usize) -> Vec<IntVec> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct SnfState {
    a: Vec<IntVec>,
    u: Vec<IntVec>,
    v: Vec<IntVec>,
    v_inv: Vec<IntVec>,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }
    // row_i -= q row_j
    fn row_op(&mut self, i: usize, j: usize, q: &BigInt) {
        let rj = self.a[j].clone();
        row_sub_mul(&mut self.a[i], &rj, q);
        let uj = self.u[j].clone();
        row_sub_mul(&mut self.u[i], &uj, q);
    }
    // col_i -= q col_j ; inverse acts on rows: row_j += q row_i
    fn col_op(&mut self, i: usize, j: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[j] * q;
            row[i] -= t;
        }
        let ri = self.v_inv[i].clone();
        let neg = -q;
        row_sub_mul(&mut self.v_inv[j], &ri, &neg);
    }
    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }
}

pub fn snf(rows: &[IntVec], cols: usize) -> Snf {
    let m = rows.len();
    let n = cols;
    let mut s = SnfState {
        a: rows.to_vec(),
        u: identity(m),
        v: identity(n),
        v_inv: identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s.a[i][j].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| s.a[i][j].abs() < s.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if s.a[i][t].is_zero() {
                    continue;
                }
                let q = s.a[i][t].div_floor(&s.a[t][t]);
                s.row_op(i, t, &q);
                if !s.a[i][t].is_zero() {
                    s.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if s.a[t][j].is_zero() {
                    continue;
                }
                let q = s.a[t][j].div_floor(&s.a[t][t]);
                s.col_op(j, t, &q);
                if !s.a[t][j].is_zero() {
                    s.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the remaining block
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&s.a[i][j] % &s.a[t][t]).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let neg_one = -BigInt::one();
                    s.row_op(t, i, &neg_one);
                }
                None => break,
            }
        }
        if s.a[t][t].is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..m.min(n))
        .map(|i| s.a[i][i].clone())
        .filter(|x| !x.is_zero())
        .collect();
    Snf {
        factors,
        d: s.a,
        u: s.u,
        v: s.v,
        v_inv: s.v_inv,
    }
}

/// The largest sublattice of `Z^n` with the same rational span.
pub fn saturate(l: &IntLattice) -> IntLattice {
    if l.rank() == 0 {
        return l.clone();
    }
    let s = snf(&l.basis, l.ambient);
    let r = s.factors.len();
    hnf(&s.v_inv[..r], l.ambient)
}

/// `[saturate(l) : l]`, the product of the invariant factors.
pub fn saturation_index(l: &IntLattice) -> BigInt {
    snf(&l.basis, l.ambient).factors.iter().product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCertificate {
    pub lattice: IntLattice,
    pub is_saturated: bool,
    /// `(v, q)` with `v ∉ L` and `q·v ∈ L`.
    pub witness: Option<(IntVec, BigInt)>,
}

pub fn saturation_certificate(l: &IntLattice) -> SaturationCertificate {
    let sat = saturate(l);
    if sat == *l {
        return SaturationCertificate {
            lattice: l.clone(),
            is_saturated: true,
            witness: None,
        };
    }
    let index = saturation_index(l);
    for b in sat.basis() {
        if l.contains(b) {
            continue;
        }
        let mut q = BigInt::from(2);
        while q <= index {
            let qb: IntVec = b.iter().map(|x| x * &q).collect();
            if l.contains(&qb) {
                return SaturationCertificate {
                    lattice: l.clone(),
                    is_saturated: false,
                    witness: Some((b.clone(), q)),
                };
            }
            q += 1;
        }
    }
    unreachable!("a saturation basis vector outside the lattice has finite order")
}

/// Clears denominators of a rational vector, returning a primitive integer
/// vector on the same line.
pub fn primitive(v: &[Rational]) -> IntVec {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// `span_Q(vectors) ∩ Z^n`.
pub fn rational_span_intersect(vectors: &[Vec<Rational>], ambient: usize) -> IntLattice {
    let rows: Vec<IntVec> = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.len(), ambient, "vector length differs from ambient rank");
            primitive(v)
        })
        .collect();
    saturate(&hnf(&rows, ambient))
}

/// Rank of a list of integer vectors over Q.
pub fn rank_of(vectors: &[IntVec], ambient: usize) -> usize {
    hnf(vectors, ambient).rank()
}
