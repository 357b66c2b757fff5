//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use drbcheck_core::arith::{eigen_decompose, rat, FieldElement, MultiQuadField};
use drbcheck_core::cmtype::d4_analysis;
use drbcheck_core::lattice::{hnf, ivec, saturate, saturation_index, IntLattice, IntVec};
use drbcheck_core::liereps::{
    classify_dim4_faithful, divisor_chains, named_invariants, search_dim, weil_layer_identity, weyl_dim, AlgebraType,
};
use drbcheck_core::periods::{gross_matrix, trdeg_lower_bound, twisted_membership};
use drbcheck_core::positivity::{default_x, run_case, sample_form, weil_family_check, CaseOutcome};
use drbcheck_core::quatrep::{verify_antiweil, DEFAULT_PARAMS};
use drbcheck_core::torus::divisor::{divisor_test, is_divisor_candidate};
use drbcheck_core::torus::sweeps::{
    analyze_sweep_case, cases_a4, cases_dim1, cases_klein4, cases_order4, check_case, CaseKind, SweepCase,
};
use drbcheck_core::torus::{analyze_case, recheck, torus_field, transitive_subgroups_s4, GenPerm, Perm4, Verdict};
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config::with_cases(cases), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Subgroups of S₄ by closing every pair of elements.
fn brute_subgroups() -> BTreeSet<Vec<Perm4>> {
    let all = Perm4::all();
    let mut out = BTreeSet::new();
    for a in &all {
        for b in &all {
            let mut set: BTreeSet<Perm4> = [*a, *b].into_iter().collect();
            loop {
                let prods: Vec<Perm4> = set.iter().flat_map(|x| set.iter().map(move |y| x.compose(y))).collect();
                let before = set.len();
                set.extend(prods);
                if set.len() == before {
                    break;
                }
            }
            out.insert(set.into_iter().collect());
        }
    }
    out
}

fn c1() -> Outcome {
    let t = transitive_subgroups_s4();
    let names: Vec<&str> = t.iter().map(|(f, _)| f.name()).collect();
    ensure(names == ["S4", "A4", "V4", "Z4", "D4"], format!("families {names:?}"))?;
    let counts: Vec<usize> = t.iter().map(|(_, l)| l.len()).collect();
    ensure(counts == [1, 1, 1, 3, 3], format!("counts {counts:?}"))?;
    let transitive: Vec<Vec<Perm4>> = brute_subgroups()
        .into_iter()
        .filter(|h| h.iter().map(|p| p.0[0]).collect::<BTreeSet<u8>>().len() == 4)
        .collect();
    ensure(transitive.len() == 9, format!("brute force found {}", transitive.len()))?;
    let mine: BTreeSet<Vec<Perm4>> = t
        .iter()
        .flat_map(|(_, l)| l.iter().map(|h| h.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()))
        .collect();
    ensure(mine == transitive.into_iter().collect(), "brute force disagrees")?;
    Ok("5 families, 9 subgroups, brute force agrees".into())
}

fn run_all(cases: &[SweepCase]) -> Result<Vec<(SweepCase, Verdict)>, String> {
    cases
        .iter()
        .map(|c| {
            let v = check_case(c).map_err(|e| e.to_string())?;
            if let CaseKind::Lattice = c.kind {
                recheck(&c.gens, &v).map_err(|e| format!("{}: {e}", c.case_id))?;
            }
            Ok((c.clone(), v.verdict))
        })
        .collect()
}

fn c2() -> Outcome {
    let cases = cases_dim1();
    for c in &cases {
        let v = analyze_sweep_case(c).map_err(|e| e.to_string())?;
        ensure(v.verdict == Verdict::RejectedDivisorTest, format!("{} {}", c.case_id, v.verdict.as_str()))?;
        let t = v.certificate.transport.ok_or("no transport")?;
        ensure(t.kernel_elements.iter().all(|k| is_divisor_candidate(k)), "kernel element fails")?;
    }
    Ok(format!("{} cases rejected by the divisor test", cases.len()))
}

fn c3() -> Outcome {
    let rs = run_all(&cases_order4())?;
    ensure(rs.iter().all(|(_, v)| *v != Verdict::SurvivesD4), "a case survives")?;
    let f = torus_field();
    let m1 = GenPerm::from_rows(&[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]).map_err(|e| e.to_string())?;
    let es = eigen_decompose(&m1.to_qmatrix().to_field(&f)).map_err(|e| e.to_string())?;
    let minus = es.iter().find(|e| e.value == f.from_int(-1)).ok_or("no eigenvalue -1")?;
    ensure(minus.basis.len() == 1, "eigenspace of -1 is not a line")?;
    let v = &minus.basis[0];
    let scale = f.from_int(-1).div(&v[0]).map_err(|e| e.to_string())?;
    let scaled: Vec<FieldElement> = v.iter().map(|x| x.mul(&scale)).collect();
    let want: Vec<FieldElement> = [-1, 1, -1, 1].iter().map(|&k| f.from_int(k)).collect();
    ensure(scaled == want, "eigenvector differs from (-1,1,-1,1)")?;
    let m2 = GenPerm::lift(Perm4::parse("(1432)").map_err(|e| e.to_string())?, &[0]);
    let v = analyze_case("m2", &[m2]).map_err(|e| e.to_string())?;
    ensure(v.verdict == Verdict::RejectedNoDescent, "M2 not REJECTED_NO_DESCENT")?;
    let w = v.certificate.orbit_witness.ok_or("no orbit witness")?;
    ensure(w.field == "Q(sqrt(-1),sqrt(2))", format!("field {}", w.field))?;
    Ok(format!("{} cases rejected; M1 eigenvector (-1,1,-1,1); M2 no descent over {}", rs.len(), w.field))
}

fn c4() -> Outcome {
    let rs = run_all(&cases_klein4())?;
    let survivors: Vec<&str> =
        rs.iter().filter(|(_, v)| *v == Verdict::SurvivesD4).map(|(c, _)| c.case_id.as_str()).collect();
    ensure(survivors == ["k4.p0.p2", "k4.p0.p3"], format!("survivors {survivors:?}"))?;
    for (c, _) in rs.iter().filter(|(_, v)| *v == Verdict::SurvivesD4) {
        let v = analyze_sweep_case(c).map_err(|e| e.to_string())?;
        let s = v.certificate.survivor.ok_or("no survivor")?;
        let (x, _) = s.params.ok_or("no parameters")?;
        ensure(x == ivec(&[1, 2]), format!("x = {x:?}"))?;
        ensure(divisor_test(&s.lattice).is_none(), "witness fails the divisor test")?;
        for g in &c.gens {
            for b in s.lattice.basis() {
                ensure(s.lattice.contains(&g.apply(b)), "witness lattice not stable")?;
            }
        }
    }
    Ok(format!("{} cases match, SURVIVES_D4 exactly for k4.p0.p2 and k4.p0.p3 with (x1,x2) = (1,2)", rs.len()))
}

fn c5() -> Outcome {
    let rs = run_all(&cases_a4())?;
    let q = rs.iter().filter(|(c, _)| c.case_id.starts_with("a4.q.")).count();
    ensure(q == 8, format!("{q} (P0,Q,Ri) branches"))?;
    ensure(rs.iter().all(|(_, v)| *v == Verdict::RejectedRank), "a branch is not REJECTED_RANK")?;
    Ok(format!("8 (P0,Q,Ri) branches REJECTED_RANK, {} with Q' as well", rs.len() - q))
}

fn c6() -> Outcome {
    let r = d4_analysis();
    ensure(r.surviving_types.len() == 4, format!("{} types", r.surviving_types.len()))?;
    for t in &r.surviving_types {
        let mut k1 = t.k1_mults.clone();
        k1.sort_unstable();
        ensure(k1 == [0, 1, 1, 2], format!("K1 {:?}", t.k1_mults))?;
        let mut k2 = t.k2_mults.clone();
        k2.sort_unstable();
        ensure(k2 == [1, 1, 1, 1] || k2 == [0, 0, 2, 2], format!("K2 {:?}", t.k2_mults))?;
        ensure(t.phi.iter().any(|p| p == "id"), "type misses id")?;
    }
    ensure(r.verified, "report not verified")?;
    Ok("4 types with K1 {2,0,1,1}, all failing K2".into())
}

fn c7() -> Outcome {
    let c = classify_dim4_faithful().map_err(|e| e.to_string())?;
    ensure(c.reps.len() == 4, format!("{} reps", c.reps.len()))?;
    for r in &c.reps {
        r.module.verify_brackets().map_err(|e| e.to_string())?;
        ensure(r.module.dim() == 4 && r.module.is_faithful(r.algebra.lie_dim()), "not faithful of dim 4")?;
    }
    ensure(search_dim(AlgebraType::A2, 4).solutions.is_empty(), "A2 has a 4-dim irrep")?;
    ensure(search_dim(AlgebraType::G2, 4).solutions.is_empty(), "G2 has a 4-dim irrep")?;
    ensure(weyl_dim(AlgebraType::B2, &[0, 1]).map_err(|e| e.to_string())? == 4, "weyl_dim(B2,(0,1)) != 4")?;
    let names: Vec<String> = c.reps.iter().map(|r| r.description.clone()).collect();
    Ok(format!("{}", names.join("; ")))
}

fn c8() -> Outcome {
    let checks = named_invariants().map_err(|e| e.to_string())?;
    ensure(checks.len() == 3, "expected three invariants")?;
    for c in &checks {
        ensure(c.in_invariant_space && c.annihilated, format!("{} fails", c.name))?;
    }
    Ok(checks.iter().map(|c| c.expected_text.clone()).collect::<Vec<_>>().join("; "))
}

fn c9() -> Outcome {
    let (dp, d, a) = DEFAULT_PARAMS;
    let r = verify_antiweil(dp, d, a).map_err(|e| e.to_string())?;
    ensure(r.brackets.len() == 15 && r.brackets.iter().all(|b| b.holds), "bracket identity fails")?;
    ensure(r.equivariance.checks == 144 && r.equivariance.passed(), "equivariance fails")?;
    ensure(r.symplectic.passed(), format!("symplectic fails {:?}", r.symplectic.failures))?;
    ensure(r.irreducibility.irreducible, "irreducibility fails")?;
    ensure(r.passed(), "report fails")?;
    Ok(format!(
        "15 brackets, 144 equivariance, {} descent, {} invariance, {} adjointness checks; irreducible",
        r.symplectic.descent_checks, r.symplectic.invariance_checks, r.symplectic.adjointness_checks
    ))
}

fn c10() -> Outcome {
    let runs: [(&str, Option<i64>); 5] = [
        ("deg4-imaginary", None),
        ("deg4-real", None),
        ("antiweil-imaginary", Some(-1)),
        ("antiweil-imaginary", Some(1)),
        ("antiweil-real", None),
    ];
    for (name, lambda) in runs {
        let out = run_case(name, lambda.map(|l| rat(l, 1)), None).map_err(|e| e.to_string())?;
        match out {
            CaseOutcome::Feasibility { verdict, rechecked, .. } => {
                ensure(verdict.is_infeasible() && rechecked, format!("{name} {lambda:?} not a rechecked refutation"))?
            }
            CaseOutcome::Family(_) => return Err(format!("{name} returned a family report")),
        }
    }
    let r = weil_family_check(&default_x()).map_err(|e| e.to_string())?;
    ensure(r.s_value == rat(-2, 1), format!("S = {}", r.s_value))?;
    ensure(r.positive_definite, "induced form not definite")?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let s = sample_form(&r.induced, 100, &mut rng);
    ensure(s.samples == 100 && s.positive == 100, format!("{} of {} samples positive", s.positive, s.samples))?;
    let minors: Vec<String> = r.minors.iter().map(|m| m.to_string()).collect();
    Ok(format!("4 refutations rechecked; S = -2, minors [{}], 100/100 samples positive", minors.join(", ")))
}

fn c11() -> Outcome {
    let g14 = gross_matrix(1, 4).map_err(|e| e.to_string())?;
    let g24 = gross_matrix(2, 4).map_err(|e| e.to_string())?;
    let t = trdeg_lower_bound(&g14.diagonal).map_err(|e| e.to_string())?;
    ensure(t == 2, format!("trdeg {t}"))?;
    ensure(twisted_membership(&g24.diagonal, 2).map_err(|e| e.to_string())?, "gross(2,4) not twisted")?;
    ensure(!twisted_membership(&g14.diagonal, 2).map_err(|e| e.to_string())?, "gross(1,4) twisted")?;
    Ok("trdeg(gross(1,4)) = 2; gross(2,4) twisted, gross(1,4) not".into())
}

fn hnf_suite() -> Result<(), String> {
    let strat = (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-20i64..=20, n), 0..=5)));
    runner(1000)
        .run(&strat, |(n, rows)| {
            let input: Vec<IntVec> = rows.iter().map(|r| ivec(r)).collect();
            let l = hnf(&input, n);
            prop_assert_eq!(&hnf(l.basis(), n), &l);
            prop_assert!(input.iter().all(|r| l.contains(r)));
            let s = saturate(&l);
            prop_assert_eq!(&saturate(&s), &s);
            prop_assert!(s.is_saturated() && s.contains_lattice(&l) && s.rank() == l.rank());
            prop_assert_eq!(saturation_index(&l).is_one(), l.is_saturated());
            Ok(())
        })
        .map_err(|e| format!("hnf/saturation: {e}"))
}

fn element(f: MultiQuadField) -> impl Strategy<Value = FieldElement> + Clone {
    prop::collection::vec((-6i64..=6, 1i64..=4), 8).prop_map(move |c| {
        (0..8).fold(f.zero(), |acc, m| acc.add(&f.basis(m).scale(&rat(c[m].0, c[m].1))))
    })
}

fn field_suite() -> Result<usize, String> {
    let f = MultiQuadField::new(&[-1, 2, -3]).map_err(|e| e.to_string())?;
    let group = f.galois_group();
    let e = element(f.clone());
    runner(256)
        .run(&(e.clone(), e.clone(), e), |(a, b, c)| {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            for g in &group {
                prop_assert_eq!(g.apply(&a.mul(&b)), g.apply(&a).mul(&g.apply(&b)));
                prop_assert_eq!(g.apply(&a.add(&b)), g.apply(&a).add(&g.apply(&b)));
                prop_assert_eq!(g.apply(&g.apply(&a)), a.clone());
            }
            Ok(())
        })
        .map_err(|e| format!("field/Galois: {e}"))?;
    Ok(group.len())
}

fn sign_suite() -> Result<usize, String> {
    let mut checked = 0;
    for cases in [cases_dim1(), cases_order4(), cases_klein4(), cases_a4()] {
        for c in cases {
            for mask in 1u32..(1 << c.gens.len()) {
                let mut flipped = c.clone();
                flipped.gens =
                    c.gens.iter().enumerate().map(|(i, g)| if mask >> i & 1 == 1 { g.neg() } else { g.clone() }).collect();
                if let CaseKind::Transport { i, j, epsilon } = c.kind {
                    flipped.kind = CaseKind::Transport { i, j, epsilon: -epsilon };
                }
                let v = analyze_sweep_case(&flipped).map_err(|e| e.to_string())?;
                ensure(v.verdict == c.expected, format!("{} mask {mask}", c.case_id))?;
                checked += 1;
            }
        }
    }
    let strat = (prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3), prop::collection::vec(any::<bool>(), 4));
    runner(256)
        .run(&strat, |(rows, signs)| {
            let flip = |r: &Vec<i64>| -> Vec<i64> { r.iter().zip(&signs).map(|(x, &s)| if s { -x } else { *x }).collect() };
            let l = IntLattice::from_i64(&rows, 4);
            let lf = IntLattice::from_i64(&rows.iter().map(flip).collect::<Vec<_>>(), 4);
            prop_assert_eq!(divisor_test(&l).is_some(), divisor_test(&lf).is_some());
            Ok(())
        })
        .map_err(|e| format!("sign symmetry: {e}"))?;
    Ok(checked)
}

fn c12() -> Outcome {
    hnf_suite()?;
    let g = field_suite()?;
    let negations = sign_suite()?;
    let chains = divisor_chains(8);
    for &(big, small) in &chains {
        ensure(weil_layer_identity(big, small, 8).map_err(|e| e.to_string())?, format!("weil layer ({big},{small})"))?;
    }
    Ok(format!(
        "1000 HNF/saturation cases; field and {g}-element Galois checks; {negations} generator negations; {} divisor chains of 8",
        chains.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("transitive subgroups of S4", c1),
        ("dim1 sweep", c2),
        ("order4 sweep", c3),
        ("klein4 sweep", c4),
        ("A4 sweep", c5),
        ("D4 CM types", c6),
        ("dim4 classification", c7),
        ("invariant tensors", c8),
        ("anti-Weil representation", c9),
        ("positivity", c10),
        ("periods", c11),
        ("property suites", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match out {
            Ok(d) if secs < 60.0 => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d} (over 60 s)")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name} ({secs:.1}s): {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
