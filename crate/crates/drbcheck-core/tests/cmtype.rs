use std::collections::BTreeSet;

use drbcheck_core::cmtype::*;

fn set(m: &CmFieldModel, names: &[&str]) -> BTreeSet<usize> {
    m.elements(names).unwrap()
}

fn survivors_for(m: &CmFieldModel, k1: &SubfieldModel) -> BTreeSet<BTreeSet<usize>> {
    m.cm_types(true)
        .into_iter()
        .filter(|phi| quartic_multiplicity_predicate(&restrict_multiplicities(m, phi, k1)))
        .map(|phi| phi.members)
        .collect()
}

#[test]
fn d4_analysis_finds_four_types() {
    let r = d4_analysis();
    assert!(r.verified);
    assert_eq!(r.types_with_id, 8);
    assert_eq!(r.surviving_types.len(), 4);
    let phis: Vec<Vec<String>> = r.surviving_types.iter().map(|s| s.phi.clone()).collect();
    let has = |names: &[&str]| {
        let mut v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let m = CmFieldModel::d4();
        v.sort_by_key(|n| m.element(n).unwrap());
        phis.contains(&v)
    };
    assert!(has(&["id", "x", "a", "a3x"]));
    assert!(has(&["id", "a2x", "a3", "a3x"]));
    assert!(has(&["id", "x", "a3", "ax"]));
    for s in &r.surviving_types {
        let mut k2 = s.k2_mults.clone();
        k2.sort();
        let mut k1 = s.k1_mults.clone();
        k1.sort();
        assert_eq!(k1, [0, 1, 1, 2]);
        assert!(k2 == [1, 1, 1, 1] || k2 == [0, 0, 2, 2]);
    }
}

#[test]
fn primitivity_matches_coset_union_oracle() {
    for m in [CmFieldModel::d4(), CmFieldModel::cyclic(4), CmFieldModel::cyclic(8)] {
        // proper subgroups avoiding τ, found by brute force over all subsets
        let n = m.order();
        let mut subs: Vec<BTreeSet<usize>> = Vec::new();
        for mask in 0u32..(1 << n) {
            let h: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if h.len() > 1 && h.len() < n && !h.contains(&m.tau()) && m.is_subgroup(&h) {
                subs.push(h);
            }
        }
        for phi in m.cm_types(false) {
            let induced = subs.iter().any(|h| {
                phi.members
                    .iter()
                    .all(|&g| h.iter().all(|&k| phi.members.contains(&m.mul(g, k))))
            });
            assert_eq!(is_primitive(&m, &phi).is_some(), induced, "{:?}", phi);
        }
    }
    let r = d4_analysis();
    let m = CmFieldModel::d4();
    for s in &r.surviving_types {
        let names: Vec<&str> = s.phi.iter().map(|x| x.as_str()).collect();
        let w = is_primitive(&m, &CmType::from_names(&m, &names).unwrap()).unwrap();
        let mut k2 = s.k2_mults.clone();
        k2.sort();
        if k2 == [0, 0, 2, 2] {
            assert_eq!(w.subgroup, set(&m, &["id", "ax"]));
        } else {
            assert_ne!(w.subgroup, set(&m, &["id", "ax"]));
        }
    }
}

#[test]
fn brute_force_cm_type_count() {
    let m = CmFieldModel::d4();
    // every subset of the 8 elements, kept when it meets each {σ, τσ} once
    let mut count = 0;
    let mut with_id = 0;
    for mask in 0u32..256 {
        let s: BTreeSet<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
        if CmType::new(&m, s.clone()).is_ok() {
            count += 1;
            if s.contains(&0) {
                with_id += 1;
            }
        }
    }
    assert_eq!(count, 16);
    assert_eq!(with_id, 8);
    assert_eq!(m.cm_types(true).len(), 8);
    assert_eq!(m.cm_types(false).len(), 16);
}

#[test]
fn primitivity_examples() {
    let m = CmFieldModel::d4();
    let phi = CmType::from_names(&m, &["id", "x", "a3", "ax"]).unwrap();
    let w = is_primitive(&m, &phi).expect("induced");
    assert_eq!(w.subgroup, set(&m, &["id", "ax"]));
    assert_eq!(restrict_multiplicities(&m, &phi, &w).multiset(), [2, 2, 0, 0]);

    let z = CmFieldModel::z2();
    assert!(is_primitive(&z, &CmType::from_names(&z, &["id"]).unwrap()).is_none());

    let c4 = CmFieldModel::cyclic(4);
    assert!(is_primitive(&c4, &CmType::from_names(&c4, &["id", "g"]).unwrap()).is_none());
    // the only proper nontrivial subgroup contains τ
    let proper: Vec<_> = c4.subgroups().into_iter().filter(|h| h.len() == 2).collect();
    assert_eq!(proper, vec![set(&c4, &["id", "g2"])]);
}

#[test]
fn quartic_predicate() {
    let m = CmFieldModel::d4();
    let k1 = SubfieldModel::generated(&m, &["x"]).unwrap();
    let mv = |names: &[&str]| restrict_multiplicities(&m, &CmType::from_names(&m, names).unwrap(), &k1);
    assert!(quartic_multiplicity_predicate(&mv(&["id", "x", "a", "a3x"])));
    let k2 = SubfieldModel::generated(&m, &["ax"]).unwrap();
    let phi = CmType::from_names(&m, &["id", "x", "a", "a3x"]).unwrap();
    assert!(!quartic_multiplicity_predicate(&restrict_multiplicities(&m, &phi, &k2)));
    let phi = CmType::from_names(&m, &["id", "x", "a3", "ax"]).unwrap();
    assert!(!quartic_multiplicity_predicate(&restrict_multiplicities(&m, &phi, &k2)));
}

#[test]
fn structural_properties() {
    for m in [CmFieldModel::d4(), CmFieldModel::cyclic(4), CmFieldModel::cyclic(6), CmFieldModel::z2()] {
        let cm_subs: Vec<SubfieldModel> = m
            .subgroups()
            .into_iter()
            .map(|h| SubfieldModel::new(&m, h).unwrap())
            .filter(|s| s.is_cm)
            .collect();
        for phi in m.cm_types(false) {
            let conj: BTreeSet<usize> = phi.members.iter().map(|&g| m.mul(m.tau(), g)).collect();
            assert!(conj.is_disjoint(&phi.members));
            assert_eq!(conj.len() + phi.members.len(), m.order());
            for sub in &cm_subs {
                let mv = restrict_multiplicities(&m, &phi, sub);
                for (i, c) in mv.cosets.iter().enumerate() {
                    let tc: BTreeSet<usize> = c.iter().map(|&g| m.mul(m.tau(), g)).collect();
                    let j = mv.cosets.iter().position(|d| *d == tc).unwrap();
                    assert_ne!(i, j);
                    assert_eq!(mv.counts[i] + mv.counts[j], sub.subgroup.len());
                }
            }
            if let Some(w) = is_primitive(&m, &phi) {
                let mv = restrict_multiplicities(&m, &phi, &w);
                let chosen: Vec<usize> = (0..mv.counts.len()).filter(|&i| mv.counts[i] > 0).collect();
                assert_eq!(induce(&m, &w, &chosen), phi.members);
            }
        }
    }
}

#[test]
fn survivors_are_equivariant_under_automorphisms() {
    let m = CmFieldModel::d4();
    let auts = automorphisms(&m);
    assert_eq!(auts.len(), 8);
    let k1 = SubfieldModel::generated(&m, &["x"]).unwrap();
    let base = survivors_for(&m, &k1);
    for f in &auts {
        let image = |s: &BTreeSet<usize>| -> BTreeSet<usize> { s.iter().map(|&g| f[g]).collect() };
        let fk1 = SubfieldModel::new(&m, image(&k1.subgroup)).unwrap();
        let mapped: BTreeSet<BTreeSet<usize>> = base.iter().map(image).collect();
        assert_eq!(survivors_for(&m, &fk1), mapped);
    }
    // a ↦ a³ with x fixed preserves ⟨x⟩, hence the survivor set
    let a3 = m.element("a3").unwrap();
    let x = m.element("x").unwrap();
    let f = auts
        .iter()
        .find(|f| f[m.element("a").unwrap()] == a3 && f[x] == x)
        .unwrap();
    let mapped: BTreeSet<BTreeSet<usize>> = base.iter().map(|s| s.iter().map(|&g| f[g]).collect()).collect();
    assert_eq!(mapped, base);
    // a ↦ a³, x ↦ ax moves ⟨x⟩ to ⟨ax⟩ and does not preserve it
    let ax = m.element("ax").unwrap();
    let g = auts
        .iter()
        .find(|f| f[m.element("a").unwrap()] == a3 && f[x] == ax)
        .unwrap();
    let mapped: BTreeSet<BTreeSet<usize>> = base.iter().map(|s| s.iter().map(|&h| g[h]).collect()).collect();
    assert_ne!(mapped, base);
}

#[test]
fn rejects_bad_models() {
    let names = vec!["id".to_string(), "g".to_string(), "g2".to_string()];
    let table = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
    assert_eq!(CmFieldModel::new("Z3", names, table, 1), Err(CmError::BadConjugation));
}
