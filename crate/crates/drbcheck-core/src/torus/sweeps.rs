//! Case lists for the transitive images in `S₄` and their expected verdicts.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::divisor::is_divisor_candidate;
use super::engine::{analyze_case, empty_certificate, CaseVerdict, Transport, Verdict};
use super::perm::{GenPerm, Perm4, SignedGroup};
use super::TorusError;

#[derive(Clone, Debug, PartialEq)]
pub enum CaseKind {
    /// Stable rank-2 sublattices of the group generated by `gens`.
    Lattice,
    /// A rank-one quotient with `g·e_i = ε·e_j` for the single generator.
    Transport { i: usize, j: usize, epsilon: i8 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCase {
    pub case_id: String,
    pub gens: Vec<GenPerm>,
    pub expected: Verdict,
    pub table: &'static str,
    pub kind: CaseKind,
}

impl SweepCase {
    fn lattice(id: &str, gens: Vec<GenPerm>, expected: Verdict, table: &'static str) -> SweepCase {
        SweepCase {
            case_id: String::from(id),
            gens,
            expected,
            table,
            kind: CaseKind::Lattice,
        }
    }
}

fn m(rows: [[i64; 4]; 4]) -> GenPerm {
    GenPerm::from_rows(&rows).expect("signed permutation")
}

fn perm(s: &str) -> Perm4 {
    Perm4::parse(s).expect("cycle notation")
}

fn flip_tag(flips: &[usize]) -> String {
    let mut s = String::from("f");
    for k in 0..4 {
        s.push(if flips.contains(&k) { '1' } else { '0' });
    }
    s
}

/// Lifts with no flip, one flip, or two flips one of which is in position 0.
pub const LIFT_FLIPS: [&[usize]; 8] = [&[], &[0], &[1], &[2], &[3], &[0, 1], &[0, 2], &[0, 3]];

/// Whether each of the 16 lifts of `p` equals `±` one of `reps`.
pub fn verify_lift_reduction(p: Perm4, reps: &[GenPerm]) -> bool {
    (0..16u8).all(|mask| {
        let flips: Vec<usize> = (0..4).filter(|k| mask >> k & 1 == 1).collect();
        let g = GenPerm::lift(p, &flips);
        reps.iter().any(|r| *r == g || r.neg() == g)
    })
}

pub const P0: [[i64; 4]; 4] = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
pub const P1: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];
pub const P2: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]];
pub const P3: [[i64; 4]; 4] = [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]];
pub const P4: [[i64; 4]; 4] = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];
pub const Q1: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]];
pub const Q2: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]];
pub const Q3: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]];
/// Third generators over `⟨P₀, P₃⟩`.
pub const QQ1: [[i64; 4]; 4] = Q1;
pub const QQ2: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 0]];
pub const QQ3: [[i64; 4]; 4] = Q3;
/// Lifts of `(12)(34)` and `(14)(23)` for the mixed pairs.
pub const PP0: [[i64; 4]; 4] = [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
pub const PP1: [[i64; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
pub const PP2: [[i64; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]];
pub const QQM0: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]];
pub const QQM1: [[i64; 4]; 4] = P2;
pub const QQM2: [[i64; 4]; 4] = P4;

/// Rank-one quotients: for every pair `i < j` and sign `ε`, a transitive
/// signed 4-cycle moving `e_i` to `ε·e_j`.
pub fn cases_dim1() -> Vec<SweepCase> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for epsilon in [1i8, -1] {
                let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                let mut p = [0u8; 4];
                p[i] = j as u8;
                p[j] = rest[0] as u8;
                p[rest[0]] = rest[1] as u8;
                p[rest[1]] = i as u8;
                let mut signs = [1i8; 4];
                signs[i] = epsilon;
                let g = GenPerm::new(Perm4(p), signs);
                out.push(SweepCase {
                    case_id: alloc::format!("d1.f{}{}.{}", i + 1, j + 1, if epsilon > 0 { "plus" } else { "minus" }),
                    gens: vec![g],
                    expected: Verdict::RejectedDivisorTest,
                    table: "dim1",
                    kind: CaseKind::Transport { i, j, epsilon },
                });
            }
        }
    }
    out
}

/// Lifts of one generator of each cyclic subgroup of order 4.
pub fn cases_order4() -> Vec<SweepCase> {
    let mut out = Vec::new();
    for (tag, cyc) in [("c1432", "(1432)"), ("c1243", "(1243)"), ("c1324", "(1324)")] {
        for flips in LIFT_FLIPS {
            let expected = if flips.len() == 1 {
                Verdict::RejectedNoDescent
            } else {
                Verdict::RejectedDivisorTest
            };
            let g = GenPerm::lift(perm(cyc), flips);
            out.push(SweepCase::lattice(
                &alloc::format!("o4.{}.{}", tag, flip_tag(flips)),
                vec![g],
                expected,
                "order4",
            ));
        }
    }
    out
}

pub fn cases_klein4() -> Vec<SweepCase> {
    use Verdict::*;
    let mut out = Vec::new();
    for (tag, p) in [("g1", "(12)(34)"), ("g2", "(13)(24)"), ("g3", "(14)(23)")] {
        for k in 0..4 {
            out.push(SweepCase::lattice(
                &alloc::format!("k4.single.{}.{}", tag, flip_tag(&[k])),
                vec![GenPerm::lift(perm(p), &[k])],
                RejectedDivisorTest,
                "klein4.single",
            ));
        }
    }
    let pairs: [(&str, [[i64; 4]; 4], Verdict); 4] = [
        ("p1", P1, RejectedDivisorTest),
        ("p2", P2, SurvivesD4),
        ("p3", P3, SurvivesD4),
        ("p4", P4, RejectedRank),
    ];
    for (tag, q, v) in pairs {
        out.push(SweepCase::lattice(&alloc::format!("k4.p0.{}", tag), vec![m(P0), m(q)], v, "klein4.p0"));
    }
    let triples: [(&str, [[i64; 4]; 4], [[i64; 4]; 4], Verdict); 6] = [
        ("p2.q1", P2, Q1, RejectedRank),
        ("p2.q2", P2, Q2, RejectedDivisorTest),
        ("p2.q3", P2, Q3, RejectedDivisorTest),
        ("p3.qq1", P3, QQ1, RejectedRank),
        ("p3.qq2", P3, QQ2, RejectedDivisorTest),
        ("p3.qq3", P3, QQ3, RejectedDivisorTest),
    ];
    for (tag, a, b, v) in triples {
        out.push(SweepCase::lattice(
            &alloc::format!("k4.p0.{}", tag),
            vec![m(P0), m(a), m(b)],
            v,
            "klein4.p0",
        ));
    }
    let mixed: [(&str, [[i64; 4]; 4], [[i64; 4]; 4], Verdict); 6] = [
        ("pp0.qq0", PP0, QQM0, RejectedDivisorTest),
        ("pp0.qq1", PP0, QQM1, RejectedRank),
        ("pp1.qq0", PP1, QQM0, RejectedRank),
        ("pp1.qq2", PP1, QQM2, RejectedRank),
        ("pp2.qq2", PP2, QQM2, RejectedDivisorTest),
        ("pp2.qq1", PP2, QQM1, RejectedRank),
    ];
    for (tag, a, b, v) in mixed {
        out.push(SweepCase::lattice(
            &alloc::format!("k4.mixed.{}", tag),
            vec![m(a), m(b)],
            v,
            "klein4.mixed",
        ));
    }
    out
}

/// `(P₀, Q, Rᵢ)` and `(P₀, Q′, Rᵢ)` with `Rᵢ` the lifts of `(123)`.
pub fn cases_a4() -> Vec<SweepCase> {
    let mut out = Vec::new();
    for (tag, q) in [("q", P2), ("qq", P3)] {
        for (i, flips) in LIFT_FLIPS.iter().enumerate() {
            let r = GenPerm::lift(perm("(123)"), flips);
            out.push(SweepCase::lattice(
                &alloc::format!("a4.{}.r{}", tag, i),
                vec![m(P0), m(q), r],
                Verdict::RejectedRank,
                "a4",
            ));
        }
    }
    out
}

fn transport_verdict(case: &SweepCase, i: usize, j: usize, epsilon: i8) -> Result<CaseVerdict, TorusError> {
    let g = case.gens[0];
    let group = SignedGroup::generate(&case.gens);
    let image: Vec<Perm4> = group.image();
    if !super::perm::is_transitive(&image) {
        return Err(TorusError::Unsupported(String::from("action is not transitive")));
    }
    let mut ei = vec![BigInt::zero(); 4];
    ei[i] = BigInt::from(1);
    let mut ej = vec![BigInt::zero(); 4];
    ej[j] = BigInt::from(epsilon);
    if g.apply(&ei) != ej {
        return Err(TorusError::Internal(String::from("transport element does not move e_i to e_j")));
    }
    let mut minus = vec![BigInt::zero(); 4];
    minus[i] = BigInt::from(1);
    minus[j] = BigInt::from(-epsilon);
    let mut plus = vec![BigInt::zero(); 4];
    plus[i] = BigInt::from(1);
    plus[j] = BigInt::from(epsilon);
    let verdict = if is_divisor_candidate(&minus) && is_divisor_candidate(&plus) {
        Verdict::RejectedDivisorTest
    } else {
        return Err(TorusError::Internal(String::from("kernel element is not a divisor vector")));
    };
    let mut cert = empty_certificate(&group, None);
    cert.transport = Some(Transport {
        g,
        i,
        j,
        epsilon,
        kernel_elements: [minus, plus],
    });
    cert.reason = String::from("g acts on the rank-one quotient by a sign, so e_i - eps*e_j or e_i + eps*e_j is in the kernel");
    Ok(CaseVerdict {
        case_id: case.case_id.clone(),
        verdict,
        certificate: cert,
    })
}

/// Analyzes one case without comparing to its expected verdict.
pub fn analyze_sweep_case(case: &SweepCase) -> Result<CaseVerdict, TorusError> {
    match case.kind {
        CaseKind::Lattice => analyze_case(&case.case_id, &case.gens),
        CaseKind::Transport { i, j, epsilon } => transport_verdict(case, i, j, epsilon),
    }
}

/// Analyzes one case and fails on a verdict other than the expected one.
pub fn check_case(case: &SweepCase) -> Result<CaseVerdict, TorusError> {
    let v = analyze_sweep_case(case)?;
    if v.verdict != case.expected {
        return Err(TorusError::Mismatch {
            case_id: case.case_id.clone(),
            expected: case.expected.as_str(),
            actual: v.verdict.as_str(),
        });
    }
    Ok(v)
}

/// Runs `cases` in order and returns verdicts sorted by case id.
pub fn run_cases(cases: &[SweepCase]) -> Result<Vec<CaseVerdict>, TorusError> {
    let mut out = cases.iter().map(check_case).collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    Ok(out)
}

pub fn sweep_dim1() -> Result<Vec<CaseVerdict>, TorusError> {
    run_cases(&cases_dim1())
}

pub fn sweep_order4() -> Result<Vec<CaseVerdict>, TorusError> {
    run_cases(&cases_order4())
}

pub fn sweep_klein4() -> Result<Vec<CaseVerdict>, TorusError> {
    run_cases(&cases_klein4())
}

pub fn sweep_a4() -> Result<Vec<CaseVerdict>, TorusError> {
    run_cases(&cases_a4())
}
