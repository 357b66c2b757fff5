//! Signed permutation matrices of size 4 and the groups they generate.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{int, QMatrix, Rational};

use super::TorusError;

/// A permutation of `{0,1,2,3}`; `p[j]` is the image of `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Parses cycle notation on the symbols 1–4, e.g. `"(12)(34)"` or `"id"`.
    pub fn parse(s: &str) -> Result<Perm4, TorusError> {
        let mut p = [0u8, 1, 2, 3];
        let s = s.trim();
        if s == "id" || s == "()" {
            return Ok(Perm4(p));
        }
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| TorusError::Parse(s.into()))?;
            let close = open.find(')').ok_or_else(|| TorusError::Parse(s.into()))?;
            let cyc: Vec<u8> = open[..close]
                .chars()
                .map(|c| match c {
                    '1'..='4' => Ok(c as u8 - b'1'),
                    _ => Err(TorusError::Parse(s.into())),
                })
                .collect::<Result<_, _>>()?;
            for (i, &a) in cyc.iter().enumerate() {
                p[a as usize] = cyc[(i + 1) % cyc.len()];
            }
            rest = &open[close + 1..];
        }
        let mut seen = [false; 4];
        for &x in &p {
            if core::mem::replace(&mut seen[x as usize], true) {
                return Err(TorusError::Parse(s.into()));
            }
        }
        Ok(Perm4(p))
    }

    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::new();
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        if p.iter().all(|&x| !core::mem::replace(&mut seen[x as usize], true)) {
                            out.push(Perm4(p));
                        }
                    }
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut p = [0u8; 4];
        for (j, slot) in p.iter_mut().enumerate() {
            *slot = self.0[other.0[j] as usize];
        }
        Perm4(p)
    }

    pub fn inverse(&self) -> Perm4 {
        let mut p = [0u8; 4];
        for j in 0..4 {
            p[self.0[j] as usize] = j as u8;
        }
        Perm4(p)
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 0..4u8 {
            if seen[start as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.0[x as usize];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for x in c {
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A 4×4 matrix with one entry `±1` in each row and column.
///
/// Column `j` is `signs[j] · e_{perm[j]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenPerm {
    pub perm: Perm4,
    pub signs: [i8; 4],
}

impl GenPerm {
    pub const IDENTITY: GenPerm = GenPerm {
        perm: Perm4::IDENTITY,
        signs: [1; 4],
    };
    pub const MINUS_IDENTITY: GenPerm = GenPerm {
        perm: Perm4::IDENTITY,
        signs: [-1; 4],
    };

    pub fn new(perm: Perm4, signs: [i8; 4]) -> GenPerm {
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        GenPerm { perm, signs }
    }

    /// Lift of `perm` with the columns in `flips` negated.
    pub fn lift(perm: Perm4, flips: &[usize]) -> GenPerm {
        let mut signs = [1i8; 4];
        for &j in flips {
            signs[j] = -signs[j];
        }
        GenPerm { perm, signs }
    }

    pub fn from_rows(rows: &[[i64; 4]; 4]) -> Result<GenPerm, TorusError> {
        let mut perm = [0u8; 4];
        let mut signs = [0i8; 4];
        for j in 0..4 {
            let nz: Vec<usize> = (0..4).filter(|&i| rows[i][j] != 0).collect();
            if nz.len() != 1 || rows[nz[0]][j].abs() != 1 {
                return Err(TorusError::NotGeneralizedPermutation);
            }
            perm[j] = nz[0] as u8;
            signs[j] = rows[nz[0]][j] as i8;
        }
        let mut seen = [false; 4];
        for &x in &perm {
            if core::mem::replace(&mut seen[x as usize], true) {
                return Err(TorusError::NotGeneralizedPermutation);
            }
        }
        Ok(GenPerm {
            perm: Perm4(perm),
            signs,
        })
    }

    pub fn from_matrix(m: &QMatrix) -> Result<GenPerm, TorusError> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(TorusError::NotGeneralizedPermutation);
        }
        let mut rows = [[0i64; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let q = m.get(i, j);
                if !q.is_integer() || q.abs() > int(1) {
                    return Err(TorusError::NotGeneralizedPermutation);
                }
                *x = if q.is_zero() { 0 } else if *q > int(0) { 1 } else { -1 };
            }
        }
        GenPerm::from_rows(&rows)
    }

    pub fn rows(&self) -> [[i64; 4]; 4] {
        let mut r = [[0i64; 4]; 4];
        for j in 0..4 {
            r[self.perm.0[j] as usize][j] = self.signs[j] as i64;
        }
        r
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let rows: Vec<Vec<i64>> = self.rows().iter().map(|r| r.to_vec()).collect();
        QMatrix::from_ints(&rows)
    }

    /// Underlying permutation, forgetting signs.
    pub fn forgetful(&self) -> Perm4 {
        self.perm
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &GenPerm) -> GenPerm {
        let mut perm = [0u8; 4];
        let mut signs = [0i8; 4];
        for j in 0..4 {
            let k = other.perm.0[j] as usize;
            perm[j] = self.perm.0[k];
            signs[j] = other.signs[j] * self.signs[k];
        }
        GenPerm {
            perm: Perm4(perm),
            signs,
        }
    }

    pub fn neg(&self) -> GenPerm {
        let mut g = *self;
        for s in g.signs.iter_mut() {
            *s = -*s;
        }
        g
    }

    pub fn inverse(&self) -> GenPerm {
        let inv = self.perm.inverse();
        let mut signs = [0i8; 4];
        for j in 0..4 {
            // column j of the inverse: e_j ↦ s · e_{inv[j]} where M e_{inv[j]} = s' e_j
            signs[j] = self.signs[inv.0[j] as usize];
        }
        GenPerm { perm: inv, signs }
    }

    pub fn is_scalar(&self) -> bool {
        self.perm == Perm4::IDENTITY && self.signs.iter().all(|&s| s == self.signs[0])
    }

    pub fn order(&self) -> usize {
        let mut g = *self;
        let mut k = 1;
        while g != GenPerm::IDENTITY {
            g = g.mul(self);
            k += 1;
        }
        k
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = alloc::vec![BigInt::from(0); 4];
        for j in 0..4 {
            let x = &v[j];
            out[self.perm.0[j] as usize] = if self.signs[j] > 0 { x.clone() } else { -x };
        }
        out
    }

    pub fn apply_rational(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = alloc::vec![int(0); 4];
        for j in 0..4 {
            let x = &v[j];
            out[self.perm.0[j] as usize] = if self.signs[j] > 0 { x.clone() } else { -x };
        }
        out
    }

    /// One-line lattice text form: `4 4 / r1 / r2 / r3 / r4`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("4 4");
        for row in self.rows() {
            s.push_str(" /");
            for x in row {
                s.push_str(&alloc::format!(" {}", x));
            }
        }
        s
    }
}

impl fmt::Display for GenPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x)?;
            }
        }
        write!(f, "]")
    }
}

/// A finite group of signed permutations containing `−I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGroup {
    elements: Vec<GenPerm>,
}

impl SignedGroup {
    /// Closure of `gens ∪ {−I}` under multiplication.
    pub fn generate(gens: &[GenPerm]) -> SignedGroup {
        let mut set: BTreeSet<GenPerm> = BTreeSet::new();
        set.insert(GenPerm::IDENTITY);
        set.insert(GenPerm::MINUS_IDENTITY);
        let mut frontier: Vec<GenPerm> = set.iter().copied().collect();
        let mut all_gens: Vec<GenPerm> = gens.to_vec();
        all_gens.push(GenPerm::MINUS_IDENTITY);
        while let Some(g) = frontier.pop() {
            for h in &all_gens {
                let p = g.mul(h);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        SignedGroup {
            elements: set.into_iter().collect(),
        }
    }

    pub fn elements(&self) -> &[GenPerm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GenPerm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.mul(b))))
    }

    /// Image under the forgetful map.
    pub fn image(&self) -> Vec<Perm4> {
        let set: BTreeSet<Perm4> = self.elements.iter().map(|g| g.perm).collect();
        set.into_iter().collect()
    }

    pub fn involutions(&self) -> Vec<GenPerm> {
        self.elements.iter().copied().filter(|g| g.order() == 2).collect()
    }

    /// A presentation `a⁴ = x² = 1, axa = x` with `⟨a, x⟩` the whole group,
    /// if the group is dihedral of order 8.
    pub fn dihedral_presentation(&self) -> Option<(GenPerm, GenPerm)> {
        if self.order() != 8 || self.involutions().len() != 5 {
            return None;
        }
        for a in &self.elements {
            if a.order() != 4 {
                continue;
            }
            for x in &self.elements {
                if x.order() == 2 && a.mul(x).mul(a) == *x && SignedGroup::generate_plain(&[*a, *x]).len() == 8 {
                    return Some((*a, *x));
                }
            }
        }
        None
    }

    fn generate_plain(gens: &[GenPerm]) -> BTreeSet<GenPerm> {
        let mut set = BTreeSet::new();
        set.insert(GenPerm::IDENTITY);
        let mut frontier = alloc::vec![GenPerm::IDENTITY];
        while let Some(g) = frontier.pop() {
            for h in gens {
                let p = g.mul(h);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set
    }
}

/// Every subgroup of S₄ generated by at most two elements (which is all of them).
pub fn subgroups_s4() -> Vec<Vec<Perm4>> {
    subgroups_by(2)
}

/// Subgroups generated by at most `k ≤ 3` elements.
pub fn subgroups_by(k: usize) -> Vec<Vec<Perm4>> {
    let all = Perm4::all();
    let mut found: BTreeSet<Vec<Perm4>> = BTreeSet::new();
    let close = |gens: &[Perm4]| -> Vec<Perm4> {
        let mut set = BTreeSet::new();
        set.insert(Perm4::IDENTITY);
        let mut frontier = alloc::vec![Perm4::IDENTITY];
        while let Some(g) = frontier.pop() {
            for h in gens {
                let p = g.compose(h);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set.into_iter().collect()
    };
    found.insert(alloc::vec![Perm4::IDENTITY]);
    for a in &all {
        if k >= 1 {
            found.insert(close(&[*a]));
        }
        for b in &all {
            if k >= 2 {
                found.insert(close(&[*a, *b]));
            }
            if k >= 3 {
                for c in &all {
                    found.insert(close(&[*a, *b, *c]));
                }
            }
        }
    }
    found.into_iter().collect()
}

pub fn is_transitive(h: &[Perm4]) -> bool {
    let orbit: BTreeSet<u8> = h.iter().map(|p| p.0[0]).collect();
    orbit.len() == 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TransitiveFamily {
    Symmetric,
    Alternating,
    Klein,
    Cyclic4,
    Dihedral,
}

impl TransitiveFamily {
    pub fn name(&self) -> &'static str {
        match self {
            TransitiveFamily::Symmetric => "S4",
            TransitiveFamily::Alternating => "A4",
            TransitiveFamily::Klein => "V4",
            TransitiveFamily::Cyclic4 => "Z4",
            TransitiveFamily::Dihedral => "D4",
        }
    }
}

pub fn classify_transitive(h: &[Perm4]) -> Option<TransitiveFamily> {
    if !is_transitive(h) {
        return None;
    }
    let has_order4 = h.iter().any(|p| p.order() == 4);
    Some(match h.len() {
        24 => TransitiveFamily::Symmetric,
        12 => TransitiveFamily::Alternating,
        8 => TransitiveFamily::Dihedral,
        4 if has_order4 => TransitiveFamily::Cyclic4,
        4 => TransitiveFamily::Klein,
        n => unreachable!("transitive subgroup of S4 of order {}", n),
    })
}

/// Transitive subgroups of S₄ grouped by isomorphism family.
pub fn transitive_subgroups_s4() -> Vec<(TransitiveFamily, Vec<Vec<Perm4>>)> {
    let mut out: Vec<(TransitiveFamily, Vec<Vec<Perm4>>)> = Vec::new();
    for h in subgroups_s4() {
        if let Some(fam) = classify_transitive(&h) {
            match out.iter_mut().find(|(f, _)| *f == fam) {
                Some((_, list)) => list.push(h),
                None => out.push((fam, alloc::vec![h])),
            }
        }
    }
    out.sort_by_key(|(f, _)| *f);
    out
}
