//! Galois CM fields modeled by their Galois group with a central complex
//! conjugation, CM types, restriction multiplicities and primitivity.
//!
//! Embeddings are identified with group elements through a base point `i₀`:
//! `σ ↦ i₀∘σ`.  The embeddings restricting to the same embedding of the fixed
//! field `E^H` are then the left cosets `σH`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error("multiplication table is not a group")]
    NotAGroup,
    #[error("conjugation must be a central involution")]
    BadConjugation,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subset is not a CM type")]
    NotCmType,
    #[error("unknown element {0:?}")]
    UnknownElement(String),
}

/// A finite group given by its multiplication table, with a central
/// involution `τ`.  Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmFieldModel {
    pub name: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    tau: usize,
}

impl CmFieldModel {
    pub fn new(name: &str, names: Vec<String>, table: Vec<Vec<usize>>, tau: usize) -> Result<Self, CmError> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(CmError::NotAGroup);
        }
        let m = CmFieldModel {
            name: String::from(name),
            names,
            table,
            tau,
        };
        for a in 0..n {
            if m.mul(0, a) != a || m.mul(a, 0) != a || m.inverse(a).is_none() {
                return Err(CmError::NotAGroup);
            }
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(CmError::NotAGroup);
                    }
                }
            }
        }
        if tau >= n || tau == 0 || m.mul(tau, tau) != 0 || (0..n).any(|g| m.mul(tau, g) != m.mul(g, tau)) {
            return Err(CmError::BadConjugation);
        }
        Ok(m)
    }

    /// `D₄ = ⟨a, x | a⁴ = x² = 1, axa = x⟩`, `τ = a²`; element `a^k x^e` has
    /// index `k + 4e`.
    pub fn d4() -> Self {
        let idx = |k: usize, e: usize| k % 4 + 4 * (e % 2);
        let mut table = vec![vec![0; 8]; 8];
        for k in 0..4 {
            for e in 0..2 {
                for l in 0..4 {
                    for f in 0..2 {
                        let kk = if e == 0 { k + l } else { k + 4 - l };
                        table[idx(k, e)][idx(l, f)] = idx(kk, e + f);
                    }
                }
            }
        }
        let names = ["id", "a", "a2", "a3", "x", "ax", "a2x", "a3x"].map(String::from).to_vec();
        CmFieldModel::new("D4", names, table, idx(2, 0)).expect("D4 table")
    }

    /// `Z/n` with `τ = g^{n/2}`; `n` must be even.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 2 && n % 2 == 0, "cyclic CM model needs even order");
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => String::from("id"),
                1 => String::from("g"),
                _ => alloc::format!("g{}", i),
            })
            .collect();
        CmFieldModel::new(&alloc::format!("Z{}", n), names, table, n / 2).expect("cyclic table")
    }

    /// An imaginary quadratic field.
    pub fn z2() -> Self {
        CmFieldModel::cyclic(2)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.mul(a, b) == 0)
    }

    pub fn name_of(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Result<usize, CmError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CmError::UnknownElement(String::from(name)))
    }

    pub fn elements(&self, names: &[&str]) -> Result<BTreeSet<usize>, CmError> {
        names.iter().map(|n| self.element(n)).collect()
    }

    pub fn names_of(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&g| self.names[g].clone()).collect()
    }

    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(0);
        let mut frontier = vec![0usize];
        while let Some(g) = frontier.pop() {
            for &h in gens {
                let p = self.mul(g, h);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, h: &BTreeSet<usize>) -> bool {
        h.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, b))))
    }

    /// All subgroups, ordered by size and then elementwise.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = (0..self.order()).map(|g| self.closure(&[g])).collect();
        while let Some(h) = frontier.pop() {
            let key: Vec<usize> = h.iter().copied().collect();
            if !found.insert(key.clone()) {
                continue;
            }
            for g in 0..self.order() {
                if !h.contains(&g) {
                    let mut gens = key.clone();
                    gens.push(g);
                    frontier.push(self.closure(&gens));
                }
            }
        }
        let mut out: Vec<BTreeSet<usize>> = found.into_iter().map(|v| v.into_iter().collect()).collect();
        out.sort_by(|a, b| (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>())));
        out
    }

    /// Left cosets `σH`, ordered by their smallest element.
    pub fn left_cosets(&self, h: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        for g in 0..self.order() {
            if out.iter().any(|c| c.contains(&g)) {
                continue;
            }
            out.push(h.iter().map(|&k| self.mul(g, k)).collect());
        }
        out
    }

    /// Every CM type, optionally only those containing the identity.
    pub fn cm_types(&self, containing_id: bool) -> Vec<CmType> {
        let pairs: Vec<(usize, usize)> = (0..self.order())
            .filter_map(|g| {
                let t = self.mul(self.tau, g);
                (g < t).then_some((g, t))
            })
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let members: BTreeSet<usize> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(g, t))| if mask >> i & 1 == 0 { g } else { t })
                .collect();
            if containing_id && !members.contains(&0) {
                continue;
            }
            out.push(CmType { members });
        }
        out.sort_by(|a, b| a.members.iter().cmp(b.members.iter()));
        out
    }
}

/// The fixed field `E^H` of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldModel {
    pub subgroup: BTreeSet<usize>,
    pub is_cm: bool,
    pub is_totally_real: bool,
}

impl SubfieldModel {
    pub fn new(model: &CmFieldModel, subgroup: BTreeSet<usize>) -> Result<Self, CmError> {
        if !model.is_subgroup(&subgroup) {
            return Err(CmError::NotSubgroup);
        }
        let real = subgroup.contains(&model.tau());
        Ok(SubfieldModel {
            subgroup,
            is_cm: !real,
            is_totally_real: real,
        })
    }

    pub fn generated(model: &CmFieldModel, gens: &[&str]) -> Result<Self, CmError> {
        let g: Vec<usize> = gens.iter().map(|n| model.element(n)).collect::<Result<_, _>>()?;
        SubfieldModel::new(model, model.closure(&g))
    }

    /// Degree of `E^H` over Q.
    pub fn degree(&self, model: &CmFieldModel) -> usize {
        model.order() / self.subgroup.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CmType {
    pub members: BTreeSet<usize>,
}

impl CmType {
    pub fn new(model: &CmFieldModel, members: BTreeSet<usize>) -> Result<Self, CmError> {
        let ok = members.len() * 2 == model.order()
            && members.iter().all(|&g| g < model.order() && !members.contains(&model.mul(model.tau(), g)));
        if ok {
            Ok(CmType { members })
        } else {
            Err(CmError::NotCmType)
        }
    }

    pub fn from_names(model: &CmFieldModel, names: &[&str]) -> Result<Self, CmError> {
        CmType::new(model, model.elements(names)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    pub cosets: Vec<BTreeSet<usize>>,
    pub counts: Vec<usize>,
}

impl MultiplicityVector {
    /// Counts in decreasing order.
    pub fn multiset(&self) -> Vec<usize> {
        let mut m = self.counts.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }
}

pub fn restrict_multiplicities(model: &CmFieldModel, phi: &CmType, h: &SubfieldModel) -> MultiplicityVector {
    let cosets = model.left_cosets(&h.subgroup);
    let counts = cosets.iter().map(|c| c.intersection(&phi.members).count()).collect();
    MultiplicityVector { cosets, counts }
}

/// `None` if `phi` is primitive, otherwise the smallest proper CM subfield
/// whose cosets `phi` is a union of.
pub fn is_primitive(model: &CmFieldModel, phi: &CmType) -> Option<SubfieldModel> {
    for h in model.subgroups() {
        if h.len() == 1 || h.len() == model.order() || h.contains(&model.tau()) {
            continue;
        }
        let sub = SubfieldModel::new(model, h).expect("enumerated subgroup");
        let mv = restrict_multiplicities(model, phi, &sub);
        if mv.counts.iter().all(|&c| c == 0 || c == sub.subgroup.len()) {
            return Some(sub);
        }
    }
    None
}

/// The CM type on `E` induced from the cosets of `h` listed in `chosen`.
pub fn induce(model: &CmFieldModel, h: &SubfieldModel, chosen: &[usize]) -> BTreeSet<usize> {
    let cosets = model.left_cosets(&h.subgroup);
    chosen.iter().flat_map(|&i| cosets[i].iter().copied()).collect()
}

/// Whether the multiplicities on a quartic CM subfield form `{2,0,1,1}`.
pub fn quartic_multiplicity_predicate(mult: &MultiplicityVector) -> bool {
    mult.multiset() == [2, 1, 1, 0]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurvivingType {
    pub phi: Vec<String>,
    pub k1_mults: Vec<usize>,
    pub k2_mults: Vec<usize>,
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D4Report {
    pub model: String,
    pub normalization: String,
    pub types_with_id: usize,
    pub surviving_types: Vec<SurvivingType>,
    /// Exactly four survivors, each with `K₂`-multiplicities `{1,1,1,1}` or `{2,0,2,0}`.
    pub verified: bool,
}

/// Filters CM types on the D₄ model by the quartic condition on
/// `K₁ = E^⟨x⟩` and reports their multiplicities on `K₂ = E^⟨ax⟩`.
pub fn d4_analysis() -> D4Report {
    let model = CmFieldModel::d4();
    let k1 = SubfieldModel::generated(&model, &["x"]).expect("subgroup");
    let k2 = SubfieldModel::generated(&model, &["ax"]).expect("subgroup");
    let types = model.cm_types(true);
    let mut surviving = Vec::new();
    for phi in &types {
        let m1 = restrict_multiplicities(&model, phi, &k1);
        if !quartic_multiplicity_predicate(&m1) {
            continue;
        }
        let m2 = restrict_multiplicities(&model, phi, &k2);
        surviving.push(SurvivingType {
            phi: model.names_of(&phi.members),
            k1_mults: m1.counts,
            k2_mults: m2.counts,
            primitive: is_primitive(&model, phi).is_none(),
        });
    }
    let verified = surviving.len() == 4
        && surviving.iter().all(|s| {
            let mut m = s.k2_mults.clone();
            m.sort_unstable();
            m == [1, 1, 1, 1] || m == [0, 0, 2, 2]
        });
    D4Report {
        model: model.name.clone(),
        normalization: String::from("id in Phi"),
        types_with_id: types.len(),
        surviving_types: surviving,
        verified,
    }
}

/// Automorphisms of the model fixing `τ`, as permutations of element indices.
pub fn automorphisms(model: &CmFieldModel) -> Vec<Vec<usize>> {
    let n = model.order();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 1, &mut |p| {
        let hom = (0..n).all(|a| (0..n).all(|b| p[model.mul(a, b)] == model.mul(p[a], p[b])));
        if hom && p[model.tau()] == model.tau() {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_relations() {
        let m = CmFieldModel::d4();
        let a = m.element("a").unwrap();
        let x = m.element("x").unwrap();
        assert_eq!(m.mul(m.mul(a, x), a), x);
        assert_eq!(m.mul(a, x), m.element("ax").unwrap());
        assert_eq!(m.tau(), m.element("a2").unwrap());
        assert_eq!(m.subgroups().len(), 10);
    }

    #[test]
    fn multiplicity_examples() {
        let m = CmFieldModel::d4();
        let phi = CmType::from_names(&m, &["id", "x", "a", "a3x"]).unwrap();
        let k1 = SubfieldModel::generated(&m, &["x"]).unwrap();
        let k2 = SubfieldModel::generated(&m, &["ax"]).unwrap();
        assert_eq!(restrict_multiplicities(&m, &phi, &k1).multiset(), [2, 1, 1, 0]);
        assert_eq!(restrict_multiplicities(&m, &phi, &k2).multiset(), [1, 1, 1, 1]);
        let z = CmFieldModel::z2();
        let phi = CmType::from_names(&z, &["id"]).unwrap();
        let whole = SubfieldModel::new(&z, [0].into_iter().collect()).unwrap();
        assert_eq!(restrict_multiplicities(&z, &phi, &whole).counts, [1, 0]);
    }

    #[test]
    fn rejects_non_cm_type() {
        let m = CmFieldModel::d4();
        assert_eq!(CmType::from_names(&m, &["id", "a2", "x", "ax"]), Err(CmError::NotCmType));
        assert_eq!(
            SubfieldModel::new(&m, [0, 1].into_iter().collect()),
            Err(CmError::NotSubgroup)
        );
    }
}
