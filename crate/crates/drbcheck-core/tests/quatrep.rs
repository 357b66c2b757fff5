use drbcheck_core::arith::{int, ExactMatrix, FieldElement, Matrix, QMatrix, Rational};
use drbcheck_core::liereps::{box_module, sl2_irrep};
use drbcheck_core::quatrep::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE: [(i64, i64, i64); 10] = [
    (-1, -2, -3),
    (-2, -1, -3),
    (-3, -1, -2),
    (-1, -2, -5),
    (-1, -3, -7),
    (-2, -3, -5),
    (-3, -7, -11),
    (-5, -1, -2),
    (-1, -5, -6),
    (-7, -2, -15),
];

fn default_rep() -> AntiWeilRep {
    let (dp, d, a) = DEFAULT_PARAMS;
    build_antiweil_rep(dp, d, a).unwrap()
}

fn rational_mu(rep: &AntiWeilRep) -> Vec<QMatrix> {
    rep.mu_rational().unwrap().into_iter().map(|(_, m)| m).collect()
}

#[test]
fn quaternion_multiplication_table() {
    for (a, b) in [(-1, -1), (-3, 1), (2, 5), (-7, -2)] {
        let q = QuaternionAlgebra::over_q(int(a), int(b));
        let u = |p| q.unit(p);
        let m = |x: &Vec<Rational>, y: &Vec<Rational>| q.mul(x, y);
        let sc = |c: i64, v: &Vec<Rational>| v.iter().map(|x| x * int(c)).collect::<Vec<_>>();
        assert_eq!(m(&u(1), &u(1)), sc(a, &u(0)));
        assert_eq!(m(&u(2), &u(2)), sc(b, &u(0)));
        assert_eq!(m(&u(1), &u(2)), u(3));
        assert_eq!(m(&u(2), &u(1)), sc(-1, &u(3)));
        assert_eq!(m(&u(3), &u(3)), sc(-a * b, &u(0)));
        assert!(q.is_associative());
    }
    let e = QuaternionAlgebra::over_quadratic(int(-2), int(-3), int(1));
    assert_eq!(e.basis_names(), ["1", "i", "j", "k", "J", "Ji", "Jj", "Jk"]);
    assert_eq!(e.basis_product(4, 4), (0, int(-2)));
    assert_eq!(e.trace_zero_basis(), vec![1, 2, 3, 5, 6, 7]);
}

#[test]
fn split_quaternions_match_matrices() {
    // a = 1, b = 1: i ↦ diag(1,-1), j ↦ [[0,1],[1,0]] is an isomorphism to M₂(Q)
    let q = QuaternionAlgebra::over_q(int(1), int(1));
    let i = QMatrix::from_ints(&[vec![1, 0], vec![0, -1]]);
    let j = QMatrix::from_ints(&[vec![0, 1], vec![1, 0]]);
    let basis = [QMatrix::q_identity(2), i.clone(), j.clone(), i.mul(&j)];
    let to_mat = |v: &[Rational]| {
        v.iter()
            .zip(&basis)
            .fold(QMatrix::q_zeros(2, 2), |acc, (c, m)| acc.add(&m.scale(c)))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let x: Vec<Rational> = (0..4).map(|_| int(rng.gen_range(-5..=5))).collect();
        let y: Vec<Rational> = (0..4).map(|_| int(rng.gen_range(-5..=5))).collect();
        assert_eq!(to_mat(&q.mul(&x, &y)), to_mat(&x).mul(&to_mat(&y)));
    }
}

#[test]
fn sl2_triples_in_quaternions() {
    for (a, l) in [(-1, -1), (-3, 2), (5, 1), (4, -7), (-12, 3)] {
        let t = sl2_triple(a, l).unwrap();
        assert_eq!(t.bracket_checks().len(), 3);
        assert!(t.bracket_checks().iter().all(|c| c.holds), "{a} {l}");
        assert_eq!(&t.sqrt_a.mul(&t.sqrt_a), &t.field.from_int(a));
    }
    // λ·x̄ = y for a < 0
    for (a, l) in [(-1, -1), (-3, 2), (-5, 7)] {
        assert!(sl2_triple(a, l).unwrap().conjugation_relation());
    }
    assert!(matches!(sl2_triple(0, 1), Err(QuatError::Zero)));
}

#[test]
fn e_a1_gives_fifteen_brackets() {
    for (d, a) in [(-2, -3), (-1, -2), (3, -5), (-6, 2)] {
        let f = e_a1_triples(d, a).unwrap();
        let checks = f.bracket_checks();
        assert_eq!(checks.len(), 15);
        assert!(checks.iter().all(|c| c.holds), "{d} {a}");
        // the six elements are independent over F
        assert_eq!(Matrix::rank_of(&f.elements, &f.field.zero()), 6);
        // every element has trace zero: no 1 or J component
        for e in &f.elements {
            assert!(e[0].is_zero() && e[4].is_zero());
        }
    }
    let f = e_a1_triples(-2, -3).unwrap();
    let c = f.bracket_checks();
    let hx = c.iter().find(|c| c.left == "(h,0)" && c.right == "(x,0)").unwrap();
    assert_eq!(hx.expected, "2(x,0)");
    let mixed = c.iter().find(|c| c.left == "(x,0)" && c.right == "(0,y)").unwrap();
    assert_eq!(mixed.expected, "0");
}

#[test]
fn sum_of_cartans_is_pure_j() {
    let f = e_a1_triples(-2, -3).unwrap();
    let s: Vec<FieldElement> = f.elements[0].iter().zip(&f.elements[1]).map(|(x, y)| x.add(y)).collect();
    for p in 0..4 {
        assert!(s[p].is_zero());
    }
    assert!(!s[5].is_zero());
}

#[test]
fn blocks_match_box_product() {
    let rep = default_rep();
    let v1 = sl2_irrep(1);
    let bx = box_module(&v1, &v1).unwrap();
    // v(1,1), v(-1,-1), v(1,-1), v(-1,1) ↔ v0⊠v0, v1⊠v1, v0⊠v1, v1⊠v0
    let perm = [0, 3, 1, 2];
    for (l, name) in PAIR_NAMES.iter().enumerate() {
        let b = bx.action(name).unwrap();
        let t = &rep.actions[l];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(t.get(r, c), b.get(perm[r], perm[c]), "{name}");
                assert_eq!(t.get(r + 4, c + 4), b.get(perm[r], perm[c]));
                assert!(t.get(r, c + 4).is_zero() && t.get(r + 4, c).is_zero());
            }
        }
    }
}

#[test]
fn rational_mu_is_a_k_linear_lie_homomorphism() {
    for (dp, d, a) in [SAMPLE[0], SAMPLE[4], SAMPLE[9]] {
        let rep = build_antiweil_rep(dp, d, a).unwrap();
        let mu = rational_mu(&rep);
        let alg = &rep.lie.algebra;
        let tz = alg.trace_zero_basis();
        for (pi, &p) in tz.iter().enumerate() {
            assert_eq!(mu[pi].mul(&rep.j_action), rep.j_action.mul(&mu[pi]));
            for (qi, &q) in tz.iter().enumerate() {
                let br = alg.bracket(&alg.unit(p), &alg.unit(q));
                let want = tz
                    .iter()
                    .enumerate()
                    .fold(QMatrix::q_zeros(8, 8), |acc, (ri, &r)| acc.add(&mu[ri].scale(&br[r])));
                assert_eq!(mu[pi].bracket(&mu[qi]), want, "{dp} {d} {a}");
            }
        }
    }
}

#[test]
fn rational_gram_is_invariant_and_hermitian() {
    for (dp, d, a) in SAMPLE {
        let rep = build_antiweil_rep(dp, d, a).unwrap();
        let g = rep.gram_rational().unwrap();
        assert_eq!(g.transpose(), g.neg());
        assert!(!g.det().is_zero());
        for m in rational_mu(&rep) {
            assert!(m.transpose().mul(&g).add(&g.mul(&m)).is_zero());
        }
        // φ(Jv, w) = φ(v, J̄w) = −φ(v, Jw)
        let j = &rep.j_action;
        assert!(j.transpose().mul(&g).add(&g.mul(j)).is_zero());
    }
}

/// Span of the orbit of `v` under the algebra generated by `gens`.
fn cyclic_span(gens: &[QMatrix], v: Vec<Rational>) -> usize {
    let mut span = vec![v];
    let mut frontier = span.clone();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.mul_vec(&x);
            let mut trial = span.clone();
            trial.push(y.clone());
            if QMatrix::rank_of(&trial, &int(0)) > span.len() {
                span.push(y.clone());
                frontier.push(y);
            }
        }
    }
    span.len()
}

#[test]
fn every_sampled_vector_generates_v() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (dp, d, a) in [SAMPLE[0], SAMPLE[6]] {
        let rep = build_antiweil_rep(dp, d, a).unwrap();
        let mut gens = rational_mu(&rep);
        gens.push(rep.j_action.clone());
        for i in 0..8 {
            let e: Vec<Rational> = (0..8).map(|j| int((i == j) as i64)).collect();
            assert_eq!(cyclic_span(&gens, e), 8);
        }
        for _ in 0..20 {
            let v: Vec<Rational> = (0..8).map(|_| int(rng.gen_range(-4..=4))).collect();
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            assert_eq!(cyclic_span(&gens, v), 8);
        }
    }
}

#[test]
fn commutant_is_the_field_k() {
    let rep = default_rep();
    let mut gens = rational_mu(&rep);
    gens.push(rep.j_action.clone());
    // X ↦ XM − MX stacked over generators, X flattened row-major
    let mut rows = Vec::new();
    for m in &gens {
        for r in 0..8 {
            for c in 0..8 {
                let mut row = vec![int(0); 64];
                for k in 0..8 {
                    row[r * 8 + k] += m.get(k, c);
                    row[k * 8 + c] -= m.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let ker = QMatrix::from_rows(rows, &int(0)).kernel();
    assert_eq!(ker.len(), 2);
    let flat = |m: &QMatrix| (0..8).flat_map(|i| m.row(i)).collect::<Vec<_>>();
    let mut span = ker.clone();
    span.push(flat(&QMatrix::q_identity(8)));
    span.push(flat(&rep.j_action));
    assert_eq!(QMatrix::rank_of(&span, &int(0)), 2);
    // without J the commutant over Q has dimension 4
    let mu = rational_mu(&rep);
    let mut rows = Vec::new();
    for m in &mu {
        for r in 0..8 {
            for c in 0..8 {
                let mut row = vec![int(0); 64];
                for k in 0..8 {
                    row[r * 8 + k] += m.get(k, c);
                    row[k * 8 + c] -= m.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    assert_eq!(QMatrix::from_rows(rows, &int(0)).kernel().len(), 4);
}

#[test]
fn default_triple_passes_everything() {
    let (dp, d, a) = DEFAULT_PARAMS;
    let r = verify_antiweil(dp, d, a).unwrap();
    assert!(r.passed());
    assert_eq!(r.equivariance.checks, 144);
    assert!(r.equivariance.failures.is_empty());
    assert!(r.equivariance.basis_table_matches);
    assert!(r.equivariance.lie_table_matches);
    assert_eq!(r.symplectic.descent_checks, 192);
    assert_eq!(r.irreducibility.patterns.len(), 16);
    assert!(r.irreducibility.patterns.iter().all(|p| p.moved_by.contains(&2)));
    // g₁ and g₃ preserve the all-v and all-w choices
    assert_eq!(r.irreducibility.patterns[0].moved_by, vec![2]);
    assert_eq!(r.irreducibility.patterns[15].moved_by, vec![2]);
    assert_eq!(r.phi_values.len(), 4);
    assert_eq!(r.center.end_dim, 2);
    assert_eq!(r.center.wedge_dim, 1);
}

#[test]
fn sampled_triples_pass() {
    for (dp, d, a) in SAMPLE {
        let r = verify_antiweil(dp, d, a).unwrap();
        assert!(r.passed(), "{dp} {d} {a}");
    }
}

#[test]
fn square_rescaling_of_a_is_invisible() {
    let base = verify_antiweil(-1, -2, -3).unwrap();
    for a in [-12, -27, -75] {
        let r = verify_antiweil(-1, -2, a).unwrap();
        assert!(r.passed());
        assert_eq!(r.field, base.field);
        assert_eq!(r.irreducibility, base.irreducibility);
        assert_eq!(
            (r.equivariance.basis_table_matches, r.equivariance.lie_table_matches),
            (true, true)
        );
    }
}

#[test]
fn worked_examples() {
    let rep = default_rep();
    // g₁∘(h,0) = −(0,h)
    assert_eq!(GALOIS_LIE_TABLE[0][0], (-1, 1));
    assert_eq!(rep.regenerated_lie_table().unwrap()[0][0], (-1, 1));
    // g₂ fixes (h,0) and swaps v with w, so both sides reduce to (h,0)·v(1,1)
    let (lhs, rhs) = equivariance_sides(&rep, &rep.galois[1], 0, 0);
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, rep.basis.col(0));
    // every equivariance instance, recomputed with explicit inverse Galois maps
    for g in &rep.galois {
        assert!(g.compose(g).is_identity());
    }
}

#[test]
fn galois_basis_matrices_are_consistent() {
    let rep = default_rep();
    // Γ_g = B⁻¹ g(B) satisfies g(Γ_g)·Γ_g = 1 and is the signed permutation
    // of the table on the v side
    for (gi, g) in rep.galois.iter().enumerate() {
        let gamma: ExactMatrix = rep.basis_inv.mul(&rep.basis.apply_galois(g));
        let id = ExactMatrix::field_identity(8, &rep.field);
        assert_eq!(gamma.apply_galois(g).mul(&gamma), id);
        for c in 0..4 {
            let (s, r) = GALOIS_BASIS_TABLE[gi][c];
            for row in 0..8 {
                let want = if row == r { rep.field.from_int(s as i64) } else { rep.field.zero() };
                assert_eq!(gamma.get(row, c), &want);
            }
        }
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(matches!(build_antiweil_rep(1, -2, -3), Err(QuatError::NotNegative(1))));
    assert!(matches!(build_antiweil_rep(-1, -2, 0), Err(QuatError::NotNegative(0))));
    assert!(matches!(build_antiweil_rep(-1, -2, -2), Err(QuatError::Arith(_))));
    assert!(matches!(build_antiweil_rep(-1, -2, 2), Err(QuatError::NotNegative(2))));
    // a = −2·2²: dependent generators
    assert!(matches!(build_antiweil_rep(-1, -2, -8), Err(QuatError::Arith(_))));
}
