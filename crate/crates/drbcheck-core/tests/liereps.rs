use drbcheck_core::arith::{int, QMatrix, Rational};
use drbcheck_core::liereps::*;
use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Positive roots of the root system with Cartan matrix `c`
/// (c[i][j] = ⟨βⱼ, βᵢ∨⟩), in simple-root coordinates, by reflection closure.
fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = c.len();
    let mut roots: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut k = 0;
    while k < roots.len() {
        let b = roots[k].clone();
        for i in 0..r {
            let pair: i64 = (0..r).map(|j| b[j] * c[i][j]).sum();
            let mut s = b.clone();
            s[i] -= pair;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !roots.contains(&s) {
                roots.push(s);
            }
        }
        k += 1;
    }
    roots
}

/// Dimension as Π ⟨λ+ρ, γ⟩ / ⟨ρ, γ⟩ over positive coroots γ, where the
/// coroots form the dual system with Cartan matrix `dual`.
fn weyl_product(dual: &[Vec<i64>], w: &[u64]) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for g in positive_roots(dual) {
        num *= g.iter().zip(w).map(|(&c, &m)| c as u128 * (m as u128 + 1)).sum::<u128>();
        den *= g.iter().map(|&c| c as u128).sum::<u128>();
    }
    assert_eq!(num % den, 0);
    num / den
}

fn dual_cartan(t: AlgebraType) -> Vec<Vec<i64>> {
    match t {
        AlgebraType::A1 => vec![vec![2]],
        AlgebraType::A1xA1 => vec![vec![2, 0], vec![0, 2]],
        AlgebraType::A2 => vec![vec![2, -1], vec![-1, 2]],
        AlgebraType::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        // B2 with α₂ short: coroot α₁∨ short
        AlgebraType::B2 => vec![vec![2, -2], vec![-1, 2]],
        // G2 with α₁ short: coroot α₂∨ short
        AlgebraType::G2 => vec![vec![2, -1], vec![-3, 2]],
    }
}

#[test]
fn weyl_dim_matches_coroot_product() {
    assert_eq!(positive_roots(&dual_cartan(AlgebraType::G2)).len(), 6);
    assert_eq!(positive_roots(&dual_cartan(AlgebraType::B2)).len(), 4);
    assert_eq!(positive_roots(&dual_cartan(AlgebraType::A3)).len(), 6);
    for t in AlgebraType::ALL {
        let c = dual_cartan(t);
        let r = t.rank();
        for idx in 0..7u64.pow(r as u32) {
            let w: Vec<u64> = (0..r).map(|i| idx / 7u64.pow(i as u32) % 7).collect();
            assert_eq!(weyl_dim(t, &w).unwrap(), weyl_product(&c, &w), "{t} {w:?}");
        }
    }
}

#[test]
fn weyl_dim_is_strictly_monotone() {
    for t in AlgebraType::ALL {
        let r = t.rank();
        for idx in 0..6u64.pow(r as u32) {
            let w: Vec<u64> = (0..r).map(|i| idx / 6u64.pow(i as u32) % 6).collect();
            let d = weyl_dim(t, &w).unwrap();
            for i in 0..r {
                let mut up = w.clone();
                up[i] += 1;
                assert!(weyl_dim(t, &up).unwrap() > d, "{t} {w:?} coordinate {i}");
            }
        }
    }
}

#[test]
fn searches_in_dimension_four() {
    assert_eq!(weyl_dim(AlgebraType::B2, &[0, 1]).unwrap(), 4);
    assert!(search_dim(AlgebraType::A2, 4).solutions.is_empty());
    assert!(search_dim(AlgebraType::G2, 4).solutions.is_empty());
    assert_eq!(search_dim(AlgebraType::A1, 4).solutions, vec![vec![3]]);
    let a3 = search_dim(AlgebraType::A3, 4).solutions;
    assert_eq!(a3, vec![vec![1, 0, 0], vec![0, 0, 1]]);
    for t in AlgebraType::ALL {
        for target in 1..=12 {
            let res = search_dim(t, target);
            for w in &res.solutions {
                assert_eq!(weyl_dim(t, w).unwrap(), target as u128);
            }
            // exhaustive over a wider box
            let r = t.rank();
            let side = target + 3;
            let count = (0..side.pow(r as u32))
                .filter(|idx| {
                    let w: Vec<u64> = (0..r).map(|i| idx / side.pow(i as u32) % side).collect();
                    weyl_dim(t, &w).unwrap() == target as u128
                })
                .count();
            assert_eq!(count, res.solutions.len(), "{t} {target}");
        }
    }
}

#[test]
fn classification_has_four_entries() {
    let c = classify_dim4_faithful().unwrap();
    let got: Vec<(AlgebraType, Vec<u64>)> = c.reps.iter().map(|r| (r.algebra, r.highest_weight.clone())).collect();
    assert_eq!(
        got,
        vec![
            (AlgebraType::A1, vec![3]),
            (AlgebraType::A1xA1, vec![1, 1]),
            (AlgebraType::A3, vec![1, 0, 0]),
            (AlgebraType::B2, vec![0, 1]),
        ]
    );
    for r in &c.reps {
        assert_eq!(r.module.dim(), 4);
        assert!(r.module.is_faithful(r.algebra.lie_dim()));
    }
    assert!(c.excluded.iter().any(|(n, why)| n == "D4" && why.contains("28")));
    assert!(c.excluded.iter().any(|(n, _)| n == "A1xA1 [3, 0]"));
    assert!(c.excluded.iter().any(|(n, _)| n == "A1xA2"));
    assert!(c.candidates.iter().all(|(_, d)| *d <= 15));
    let a3 = c.reps.iter().find(|r| r.algebra == AlgebraType::A3).unwrap();
    assert_eq!(a3.module.image_dim(), 15);
}

#[test]
fn three_invariant_tensors() {
    let checks = named_invariants().unwrap();
    assert_eq!(checks.len(), 3);
    for c in &checks {
        assert!(c.passed(), "{}", c.name);
        assert_eq!(c.invariant_dim, 1, "{}", c.name);
    }
    assert_eq!(checks[0].expected_text, "3 v0∧v3 - v1∧v2");
    assert_eq!(checks[2].expected_text, "e1∧e3 + e2∧e4");
    // invariant space of the wedge is exactly the stated line
    let inv = invariant_space(&wedge2_module(&sl2_irrep(3)).unwrap());
    assert_eq!(inv, vec![[0, 0, 3, -1, 0, 0].map(int).to_vec()]);
}

#[test]
fn sp4_form_matches_symplectic_matrix() {
    let sp = sp4_standard();
    let s = symplectic_s();
    for (_, x) in &sp.generators {
        assert!(x.transpose().mul(&s).add(&s.mul(x)).is_zero());
        assert!(x.trace() == int(0));
    }
    // dimension of {x : xᵗs + sx = 0} over the reals
    let mut a = DMatrix::<f64>::zeros(16, 16);
    let sf = |i: usize, j: usize| s.get(i, j).to_f64().unwrap();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                a[(i * 4 + j, k * 4 + i)] += sf(k, j);
                a[(i * 4 + j, k * 4 + j)] += sf(i, k);
            }
        }
    }
    assert_eq!(16 - a.rank(1e-9), 10);
}

fn float_rank(w: &WeightModule) -> usize {
    let n = w.dim();
    let g = w.generators.len();
    let mut a = DMatrix::<f64>::zeros(n * g, n);
    for (k, (_, m)) in w.generators.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                a[(k * n + i, j)] = m.get(i, j).to_f64().unwrap();
            }
        }
    }
    a.rank(1e-8)
}

#[test]
fn clebsch_gordan_extremal_case() {
    for m in 0..=4 {
        for mp in 0..=4 {
            let t = tensor_module(&sl2_irrep(m), &sl2_irrep(mp)).unwrap();
            let inv = invariant_space(&t);
            assert_eq!(inv.len(), usize::from(m == mp), "V({m})⊗V({mp})");
            assert_eq!(t.dim() - float_rank(&t), inv.len());
            for v in &inv {
                assert!(is_invariant(&t, v));
            }
        }
    }
}

#[test]
fn end_and_wedge_invariants_by_float_kernel() {
    let mods = vec![
        end_module(&sl2_irrep(3)).unwrap(),
        wedge2_module(&sl2_irrep(3)).unwrap(),
        wedge2_module(&sp4_standard()).unwrap(),
        end_module(&sl_standard(4)).unwrap(),
        tensor_module(&box_module(&sl2_irrep(1), &sl2_irrep(1)).unwrap(), &box_module(&sl2_irrep(1), &sl2_irrep(1)).unwrap())
            .unwrap(),
    ];
    for w in &mods {
        let inv = invariant_space(w);
        assert_eq!(w.dim() - float_rank(w), inv.len(), "{}", w.name);
    }
}

#[test]
fn modules_satisfy_brackets() {
    let v1 = sl2_irrep(1);
    let b = box_module(&v1, &sl2_irrep(2)).unwrap();
    assert_eq!(b.sl2_factors.len(), 2);
    b.verify_brackets().unwrap();
    dual_module(&sl2_irrep(4)).verify_brackets().unwrap();
    assert!(tensor_module(&v1, &sp4_standard()).is_err());
    // a module with a broken relation is rejected
    let mut gens = sl2_irrep(2).generators;
    gens[1].1 = gens[1].1.scale(&int(2));
    let labels = (0..3).map(|i| format!("v{i}")).collect();
    assert!(matches!(WeightModule::new("bad", labels, gens, vec![[0, 1, 2]]), Err(LieError::Bracket(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn product_dimension_is_multiplicative(a in 0u64..8, b in 0u64..8) {
        let d = weyl_dim(AlgebraType::A1xA1, &[a, b]).unwrap();
        prop_assert_eq!(d, weyl_dim(AlgebraType::A1, &[a]).unwrap() * weyl_dim(AlgebraType::A1, &[b]).unwrap());
        let m = box_module(&sl2_irrep(a as usize), &sl2_irrep(b as usize)).unwrap();
        prop_assert_eq!(m.dim() as u128, d);
    }
}

#[test]
fn block_sl_fixes_top_wedges() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    assert!(weil_wedge_fixed_by_block_sl(&[2, 2], 20, &mut rng).unwrap());
    assert!(weil_wedge_fixed_by_block_sl(&[3, 3], 10, &mut rng).unwrap());
    assert!(weil_wedge_fixed_by_block_sl(&[1, 1, 1, 1], 5, &mut rng).unwrap());
    assert!(weil_wedge_fixed_by_block_sl(&[2, 3], 1, &mut rng).is_err());

    let id = QMatrix::q_identity(4);
    assert_eq!(block_wedge_scalars(&id, &[2, 2]), Some(vec![int(1), int(1)]));

    let scaled = block_diagonal(&[QMatrix::from_ints(&[vec![2, 5], vec![0, 1]]), QMatrix::q_identity(2)]);
    assert_eq!(block_wedge_scalars(&scaled, &[2, 2]), Some(vec![int(2), int(1)]));

    // a matrix mixing blocks moves the top wedge off its line
    let mixing = QMatrix::from_ints(&[vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    assert_eq!(block_wedge_scalars(&mixing, &[2, 2]), None);
}

#[test]
fn wedge_image_agrees_with_float_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let g = block_diagonal(&[random_unimodular(2, &mut rng), random_unimodular(2, &mut rng)]);
        let gf = DMatrix::<f64>::from_fn(4, 4, |i, j| g.get(i, j).to_f64().unwrap());
        assert!((gf.determinant() - 1.0).abs() < 1e-9);
        for (t, c) in wedge_image(&g, &[0, 1]) {
            let minor = DMatrix::<f64>::from_fn(2, 2, |i, j| gf[(t[i], j)]);
            assert!((minor.determinant() - c.to_f64().unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn weil_layers_over_divisor_chains_of_eight() {
    let chains = divisor_chains(8);
    assert_eq!(chains.len(), 10);
    for (big, small) in chains {
        let l = weil_layer(big, small, 8).unwrap();
        assert!(l.holds(), "({big}, {small}, 8)");
        assert!(weil_layer_identity(big, small, 8).unwrap());
        // each monomial has size 8 / deg_k and they partition the basis
        let mut all: Vec<usize> = l.direct.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
        assert!(l.direct.iter().all(|s| s.len() == 8 / small));
    }
    let trivial = weil_layer(2, 2, 8).unwrap();
    assert_eq!(trivial.direct, [vec![0, 1, 2, 3], vec![4, 5, 6, 7]].into_iter().collect());
    assert!(weil_layer_identity(4, 2, 8).unwrap());
    assert!(weil_layer_identity(8, 2, 8).unwrap());
    assert!(weil_layer(4, 3, 8).is_err());
    assert!(weil_layer(3, 1, 8).is_err());
}

#[test]
fn invariant_formatting() {
    let w = wedge2_module(&sl2_irrep(3)).unwrap();
    let v: Vec<Rational> = [0, 0, -1, 0, 0, 2].map(int).to_vec();
    assert_eq!(w.format_vector(&v), "-v0∧v3 + 2 v2∧v3");
}
