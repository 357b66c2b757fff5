//! Stable rank-2 sublattices of `Z⁴` under a group of signed permutations.
//!
//! A case is decided through a lead element of the group:
//!
//! * four distinct eigenvalues: candidates are pairs of eigenlines whose span
//!   descends to Q;
//! * an involution with two-dimensional ±1 eigenspaces `E∓`: the pure
//!   eigenspaces are dismissed by the divisor test and the remaining planes
//!   are `span{u(x), w(y)}` with `u(x) ∈ E−`, `w(y) ∈ E+`, cut out by the
//!   parallelism conditions of every generator;
//! * two anticommuting elements squaring to `−I`: the planes would be modules
//!   over the definite quaternion algebra `(−1,−1)`, which has none.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{eigen_decompose, int, ExactMatrix, FieldElement, MultiQuadField, QMatrix, Rational};
use crate::lattice::{primitive, rational_span_intersect, IntLattice, IntVec};

use super::divisor::{divisor_test, is_divisor_candidate};
use super::perm::{GenPerm, SignedGroup};
use super::poly::{binary_form_roots, eval_binary, normalize_point, Poly};
use super::TorusError;

/// Largest `|a| + |b|` tried when searching a family for a surviving point.
pub const SEARCH_BOUND: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    RejectedDivisorTest,
    RejectedRank,
    RejectedNoDescent,
    SurvivesD4,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::RejectedDivisorTest => "REJECTED_DIVISOR_TEST",
            Verdict::RejectedRank => "REJECTED_RANK",
            Verdict::RejectedNoDescent => "REJECTED_NO_DESCENT",
            Verdict::SurvivesD4 => "SURVIVES_D4",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        Some(match s {
            "REJECTED_DIVISOR_TEST" => Verdict::RejectedDivisorTest,
            "REJECTED_RANK" => Verdict::RejectedRank,
            "REJECTED_NO_DESCENT" => Verdict::RejectedNoDescent,
            "SURVIVES_D4" => Verdict::SurvivesD4,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lead {
    Distinct(GenPerm),
    Involution(GenPerm),
    Quaternion(GenPerm, GenPerm),
}

/// A lattice together with the divisor-test vector it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorHit {
    pub lattice: IntLattice,
    pub witness: IntVec,
}

/// A solution component of the parametric system on `P¹ × P¹`.
#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    Point { x: IntVec, y: IntVec },
    /// `x` fixed, `y` free.
    FixedX { x: IntVec },
    /// `y` fixed, `x` free.
    FixedY { y: IntVec },
    /// `y = r·x`.
    Curve { r: [[Rational; 2]; 2] },
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rejection {
    /// Every member contains this vector.
    FixedVector { component: usize, witness: IntVec },
    Member { component: usize, hit: DivisorHit },
    /// A pure eigenspace of a lead that is not among the generators.
    Eigenspace { hit: DivisorHit },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Survivor {
    pub params: Option<(IntVec, IntVec)>,
    pub lattice: IntLattice,
    /// Generators `a, x` with `a⁴ = x² = 1`, `axa = x`.
    pub dihedral: (GenPerm, GenPerm),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitWitness {
    pub field: String,
    pub eigenvalues: Vec<String>,
    pub orbits: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub group_order: usize,
    pub lead: Option<Lead>,
    /// Pure eigenspaces of an involution lead, each containing a divisor vector.
    pub pre_rejected: Vec<DivisorHit>,
    /// Bases of `E−` and `E+` for an involution lead.
    pub family_bases: Option<([IntVec; 2], [IntVec; 2])>,
    pub constraints: Vec<Poly>,
    pub components: Vec<Component>,
    /// Finite candidates (distinct lead), stable under every generator.
    pub finite: Vec<IntLattice>,
    pub rejections: Vec<Rejection>,
    pub survivor: Option<Survivor>,
    pub orbit_witness: Option<OrbitWitness>,
    pub transport: Option<Transport>,
    pub reason: String,
}

/// An element `g` with `g·e_i = ε·e_j`; the kernel of a rank-one quotient then
/// contains `e_j − ε·s·e_i` for the sign `s` by which `g` acts on the quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    pub g: GenPerm,
    pub i: usize,
    pub j: usize,
    pub epsilon: i8,
    /// The kernel element for `s = +1` and for `s = −1`.
    pub kernel_elements: [IntVec; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseVerdict {
    pub case_id: String,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

/// A family of stable planes.
#[derive(Clone, Debug, PartialEq)]
pub enum StableFamily {
    Finite(IntLattice),
    Parametric {
        u_basis: [IntVec; 2],
        w_basis: [IntVec; 2],
        component: Component,
        constraints: Vec<Poly>,
    },
}

pub fn torus_field() -> MultiQuadField {
    MultiQuadField::new(&[-1, 2]).expect("Q(i, sqrt 2) is a valid field")
}

pub fn is_stable(l: &IntLattice, gens: &[GenPerm]) -> bool {
    gens.iter()
        .all(|g| l.basis().iter().all(|b| l.contains(&g.apply(b))))
}

fn to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Lattice of integer points in the F-span of `vectors`, if that span is
/// defined over Q.
pub fn descend(vectors: &[Vec<FieldElement>], field: &MultiQuadField) -> Option<IntLattice> {
    let k = vectors.len();
    let m = ExactMatrix::from_rows(vectors.to_vec(), &field.zero());
    let ann = m.kernel();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in &ann {
        for mask in 0..field.degree() {
            let row: Vec<Rational> = a.iter().map(|x| x.coord(mask).clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ker = if rows.is_empty() {
        QMatrix::q_identity(4).to_rows()
    } else {
        QMatrix::from_rows(rows, &int(0)).kernel()
    };
    if ker.len() != k {
        return None;
    }
    Some(rational_span_intersect(&ker, 4))
}

struct Distinct {
    eigenvalues: Vec<FieldElement>,
    lines: Vec<Vec<FieldElement>>,
}

fn distinct_eigen(g: &GenPerm, field: &MultiQuadField) -> Option<Distinct> {
    let m = g.to_qmatrix().to_field(field);
    let es = eigen_decompose(&m).ok()?;
    if es.len() != 4 || es.iter().any(|e| e.basis.len() != 1) {
        return None;
    }
    Some(Distinct {
        eigenvalues: es.iter().map(|e| e.value.clone()).collect(),
        lines: es.into_iter().map(|e| e.basis.into_iter().next().unwrap()).collect(),
    })
}

fn is_split_involution(g: &GenPerm) -> bool {
    if g.mul(g) != GenPerm::IDENTITY || g.is_scalar() {
        return false;
    }
    let m = g.to_qmatrix();
    m.sub(&QMatrix::q_identity(4)).kernel().len() == 2
}

fn choose_lead(gens: &[GenPerm], group: &SignedGroup, field: &MultiQuadField) -> Option<Lead> {
    let pool = gens.iter().chain(group.elements().iter());
    for g in pool {
        if g.is_scalar() {
            continue;
        }
        if is_split_involution(g) {
            return Some(Lead::Involution(*g));
        }
        if distinct_eigen(g, field).is_some() {
            return Some(Lead::Distinct(*g));
        }
    }
    let squares_minus: Vec<GenPerm> = group
        .elements()
        .iter()
        .copied()
        .filter(|g| g.mul(g) == GenPerm::MINUS_IDENTITY)
        .collect();
    for i in &squares_minus {
        for j in &squares_minus {
            if i.mul(j) == j.mul(i).neg() {
                return Some(Lead::Quaternion(*i, *j));
            }
        }
    }
    None
}

pub(crate) fn empty_certificate(group: &SignedGroup, lead: Option<Lead>) -> Certificate {
    Certificate {
        group_order: group.order(),
        lead,
        pre_rejected: Vec::new(),
        family_bases: None,
        constraints: Vec::new(),
        components: Vec::new(),
        finite: Vec::new(),
        rejections: Vec::new(),
        survivor: None,
        orbit_witness: None,
        transport: None,
        reason: String::new(),
    }
}

/// Decides a case over `Q(i, √2)`.
pub fn analyze_case(case_id: &str, gens: &[GenPerm]) -> Result<CaseVerdict, TorusError> {
    analyze_case_in(case_id, gens, &torus_field())
}

pub fn analyze_case_in(case_id: &str, gens: &[GenPerm], field: &MultiQuadField) -> Result<CaseVerdict, TorusError> {
    if gens.is_empty() {
        return Err(TorusError::Unsupported(String::from("no generators")));
    }
    let group = SignedGroup::generate(gens);
    let lead = choose_lead(gens, &group, field).ok_or_else(|| {
        TorusError::Unsupported(alloc::format!(
            "no involution, distinct-eigenvalue or quaternion lead in a group of order {}",
            group.order()
        ))
    })?;
    let (verdict, certificate) = match lead {
        Lead::Distinct(g) => distinct_route(gens, &group, g, field)?,
        Lead::Involution(g) => involution_route(gens, &group, g)?,
        Lead::Quaternion(i, j) => {
            let mut c = empty_certificate(&group, Some(Lead::Quaternion(i, j)));
            c.reason = alloc::format!(
                "I = {} and J = {} satisfy I^2 = J^2 = -1 and IJ = -JI; they span the definite quaternion algebra (-1,-1) over Q, a division algebra, so no invariant plane exists",
                i, j
            );
            (Verdict::RejectedRank, c)
        }
    };
    Ok(CaseVerdict {
        case_id: String::from(case_id),
        verdict,
        certificate,
    })
}

fn decide_survivor(
    group: &SignedGroup,
    params: Option<(IntVec, IntVec)>,
    lattice: IntLattice,
) -> Result<Survivor, TorusError> {
    match group.dihedral_presentation() {
        Some(d) => Ok(Survivor {
            params,
            lattice,
            dihedral: d,
        }),
        None => Err(TorusError::Unclassified(alloc::format!(
            "surviving lattice {} in a group of order {} that is not dihedral",
            lattice,
            group.order()
        ))),
    }
}

fn distinct_route(
    gens: &[GenPerm],
    group: &SignedGroup,
    lead: GenPerm,
    field: &MultiQuadField,
) -> Result<(Verdict, Certificate), TorusError> {
    let d = distinct_eigen(&lead, field).expect("lead was chosen with distinct eigenvalues");
    let mut cert = empty_certificate(group, Some(Lead::Distinct(lead)));
    let mut descending = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            if let Some(l) = descend(&[d.lines[a].clone(), d.lines[b].clone()], field) {
                descending.push(l);
            }
        }
    }
    let stable: Vec<IntLattice> = descending.iter().filter(|l| is_stable(l, gens)).cloned().collect();
    cert.finite = stable.clone();
    if stable.is_empty() {
        if descending.is_empty() {
            cert.orbit_witness = Some(orbit_witness(&d.eigenvalues, field));
        }
        if descending.is_empty() && gens.len() == 1 {
            cert.reason = String::from("no pair of eigenlines spans a Galois-stable plane");
            return Ok((Verdict::RejectedNoDescent, cert));
        }
        cert.reason = String::from("no rational eigenline pair is stable under every generator");
        return Ok((Verdict::RejectedRank, cert));
    }
    for l in &stable {
        match divisor_test(l) {
            Some(w) => cert.rejections.push(Rejection::Member {
                component: 0,
                hit: DivisorHit {
                    lattice: l.clone(),
                    witness: w,
                },
            }),
            None => {
                cert.survivor = Some(decide_survivor(group, None, l.clone())?);
                cert.reason = String::from("a stable rational plane defeats the divisor test");
                return Ok((Verdict::SurvivesD4, cert));
            }
        }
    }
    cert.reason = String::from("every stable rational plane contains a divisor-test vector");
    Ok((Verdict::RejectedDivisorTest, cert))
}

pub fn orbit_witness(eigenvalues: &[FieldElement], field: &MultiQuadField) -> OrbitWitness {
    let group = field.galois_group();
    let orbits = eigenvalues
        .iter()
        .map(|lam| {
            let mut orb: Vec<usize> = Vec::new();
            for g in &group {
                let img = g.apply(lam);
                if let Some(k) = eigenvalues.iter().position(|e| *e == img) {
                    if !orb.contains(&k) {
                        orb.push(k);
                    }
                }
            }
            orb.sort_unstable();
            orb
        })
        .collect();
    OrbitWitness {
        field: crate::arith::field_name(field),
        eigenvalues: eigenvalues.iter().map(|e| alloc::format!("{}", e)).collect(),
        orbits,
    }
}

type Form = [Rational; 3];
type Bilinear = [[Rational; 2]; 2];

fn form_is_zero(f: &Form) -> bool {
    f.iter().all(Zero::is_zero)
}

fn bil_is_zero(b: &Bilinear) -> bool {
    b.iter().flatten().all(Zero::is_zero)
}

/// The forms cutting out the stable planes `span{u(x), w(y)}`.
pub struct ParametricSystem {
    pub u_basis: [IntVec; 2],
    pub w_basis: [IntVec; 2],
    pub x_forms: Vec<Form>,
    pub y_forms: Vec<Form>,
    pub bilinear: Vec<Bilinear>,
}

impl ParametricSystem {
    pub fn new(lead: &GenPerm, gens: &[GenPerm]) -> ParametricSystem {
        let m = lead.to_qmatrix();
        let id = QMatrix::q_identity(4);
        let minus = m.add(&id).kernel();
        let plus = m.sub(&id).kernel();
        assert!(minus.len() == 2 && plus.len() == 2, "lead is not a split involution");
        let a: Vec<IntVec> = minus.iter().map(|v| primitive(v)).collect();
        let b: Vec<IntVec> = plus.iter().map(|v| primitive(v)).collect();
        let cols: Vec<Vec<Rational>> = a.iter().chain(b.iter()).map(|v| to_rat(v)).collect();
        let basis = QMatrix::from_cols(&cols, &int(0));
        let binv = basis.inverse().expect("eigenvectors form a basis");
        let mut sys = ParametricSystem {
            u_basis: [a[0].clone(), a[1].clone()],
            w_basis: [b[0].clone(), b[1].clone()],
            x_forms: Vec::new(),
            y_forms: Vec::new(),
            bilinear: Vec::new(),
        };
        for g in gens {
            let t = binv.mul(&g.to_qmatrix()).mul(&basis);
            let e = |i: usize, j: usize| t.get(i, j).clone();
            // π−(N u) ∥ u
            let fa: Form = [-e(1, 0), e(0, 0) - e(1, 1), e(0, 1)];
            // π+(N w) ∥ w
            let fe: Form = [-e(3, 2), e(2, 2) - e(3, 3), e(2, 3)];
            // π+(N u) ∥ w : (Cx)₀ y₁ − (Cx)₁ y₀ with C = t[2..4, 0..2]
            let fc: Bilinear = [[-e(3, 0), e(2, 0)], [-e(3, 1), e(2, 1)]];
            // π−(N w) ∥ u : (Dy)₀ x₁ − (Dy)₁ x₀ with D = t[0..2, 2..4]
            let fd: Bilinear = [[-e(1, 2), -e(1, 3)], [e(0, 2), e(0, 3)]];
            if !form_is_zero(&fa) {
                sys.x_forms.push(fa);
            }
            if !form_is_zero(&fe) {
                sys.y_forms.push(fe);
            }
            if !bil_is_zero(&fc) {
                sys.bilinear.push(fc);
            }
            if !bil_is_zero(&fd) {
                sys.bilinear.push(fd);
            }
        }
        sys
    }

    pub fn u(&self, x: &[BigInt]) -> IntVec {
        (0..4)
            .map(|k| &x[0] * &self.u_basis[0][k] + &x[1] * &self.u_basis[1][k])
            .collect()
    }

    pub fn w(&self, y: &[BigInt]) -> IntVec {
        (0..4)
            .map(|k| &y[0] * &self.w_basis[0][k] + &y[1] * &self.w_basis[1][k])
            .collect()
    }

    /// Normalized, deduplicated constraint polynomials.
    pub fn constraints(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        let all = self
            .x_forms
            .iter()
            .map(|f| Poly::binary(f, false))
            .chain(self.y_forms.iter().map(|f| Poly::binary(f, true)))
            .chain(self.bilinear.iter().map(Poly::bilinear));
        for p in all {
            let n = p.normalized();
            if !out.contains(&n) {
                out.push(n);
            }
        }
        out
    }

    pub fn satisfied(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.x_forms.iter().all(|f| eval_binary(f, x).is_zero())
            && self.y_forms.iter().all(|f| eval_binary(f, y).is_zero())
            && self.bilinear.iter().all(|b| bil_eval(b, x, y).is_zero())
    }

    pub fn solve(&self) -> Vec<Component> {
        let xs = solve_side(&self.x_forms);
        let ys = solve_side(&self.y_forms);
        let mut comps = Vec::new();
        match (xs, ys) {
            (Some(xs), Some(ys)) => {
                for x in &xs {
                    for y in &ys {
                        if self.bilinear.iter().all(|b| bil_eval(b, x, y).is_zero()) {
                            comps.push(Component::Point { x: x.clone(), y: y.clone() });
                        }
                    }
                }
            }
            (Some(xs), None) => {
                for x in xs {
                    let cs: Vec<[Rational; 2]> = self.bilinear.iter().map(|b| bil_col(b, &x)).collect();
                    match span_of(&cs) {
                        Span::Zero => comps.push(Component::FixedX { x }),
                        Span::Line(c) => comps.push(Component::Point { x, y: perp(&c) }),
                        Span::Full => {}
                    }
                }
            }
            (None, Some(ys)) => {
                for y in ys {
                    let ds: Vec<[Rational; 2]> = self.bilinear.iter().map(|b| bil_row(b, &y)).collect();
                    match span_of(&ds) {
                        Span::Zero => comps.push(Component::FixedY { y }),
                        Span::Line(d) => comps.push(Component::Point { x: perp(&d), y }),
                        Span::Full => {}
                    }
                }
            }
            (None, None) => comps.extend(solve_bilinear(&self.bilinear)),
        }
        comps
    }
}

fn bil_eval(b: &Bilinear, x: &[BigInt], y: &[BigInt]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc += &b[i][j] * Rational::from_integer(&x[i] * &y[j]);
        }
    }
    acc
}

// Bᵀx, the linear form in y
fn bil_col(b: &Bilinear, x: &[BigInt]) -> [Rational; 2] {
    let xr = to_rat(x);
    [
        &b[0][0] * &xr[0] + &b[1][0] * &xr[1],
        &b[0][1] * &xr[0] + &b[1][1] * &xr[1],
    ]
}

// B y, the linear form in x
fn bil_row(b: &Bilinear, y: &[BigInt]) -> [Rational; 2] {
    let yr = to_rat(y);
    [
        &b[0][0] * &yr[0] + &b[0][1] * &yr[1],
        &b[1][0] * &yr[0] + &b[1][1] * &yr[1],
    ]
}

fn perp(c: &[Rational; 2]) -> IntVec {
    normalize_point(&[-c[1].clone(), c[0].clone()])
}

enum Span {
    Zero,
    Line([Rational; 2]),
    Full,
}

fn span_of(vs: &[[Rational; 2]]) -> Span {
    let nz: Vec<&[Rational; 2]> = vs.iter().filter(|v| !v[0].is_zero() || !v[1].is_zero()).collect();
    let Some(first) = nz.first() else {
        return Span::Zero;
    };
    for v in &nz[1..] {
        if &first[0] * &v[1] - &first[1] * &v[0] != Rational::zero() {
            return Span::Full;
        }
    }
    Span::Line((*first).clone())
}

/// `None` when there are no forms (the side is free).
fn solve_side(forms: &[Form]) -> Option<Vec<IntVec>> {
    let first = forms.first()?;
    let roots = binary_form_roots(first);
    Some(
        roots
            .into_iter()
            .filter(|r| forms.iter().all(|f| eval_binary(f, r).is_zero()))
            .collect(),
    )
}

fn solve_bilinear(bils: &[Bilinear]) -> Vec<Component> {
    if bils.is_empty() {
        return vec![Component::Full];
    }
    let mut comps = Vec::new();
    // x with Bᵀx = 0 for every form
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for b in bils {
        rows.push(vec![b[0][0].clone(), b[1][0].clone()]);
        rows.push(vec![b[0][1].clone(), b[1][1].clone()]);
    }
    let ker = QMatrix::from_rows(rows, &int(0)).kernel();
    let rank0: Option<IntVec> = ker.first().map(|v| normalize_point(v));
    if let Some(x) = &rank0 {
        comps.push(Component::FixedX { x: x.clone() });
    }
    // minors det[Bₖᵀx, Bₗᵀx] as binary forms in x
    let col = |b: &Bilinear| -> [[Rational; 2]; 2] {
        // entry [j][i]: coefficient of x_i in (Bᵀx)_j
        [
            [b[0][0].clone(), b[1][0].clone()],
            [b[0][1].clone(), b[1][1].clone()],
        ]
    };
    let mut minors: Vec<Form> = Vec::new();
    for k in 0..bils.len() {
        for l in k + 1..bils.len() {
            let p = col(&bils[k]);
            let q = col(&bils[l]);
            // (p0·x)(q1·x) − (p1·x)(q0·x)
            let f: Form = [
                &p[0][0] * &q[1][0] - &p[1][0] * &q[0][0],
                &p[0][0] * &q[1][1] + &p[0][1] * &q[1][0] - &p[1][0] * &q[0][1] - &p[1][1] * &q[0][0],
                &p[0][1] * &q[1][1] - &p[1][1] * &q[0][1],
            ];
            if !form_is_zero(&f) {
                minors.push(f);
            }
        }
    }
    if minors.is_empty() {
        let b = &bils[0];
        let c = col(b);
        let det = &c[0][0] * &c[1][1] - &c[0][1] * &c[1][0];
        if !det.is_zero() {
            // y ⊥ Bᵀx, i.e. y = J·Bᵀx with J = [[0,−1],[1,0]]
            let r = [
                [-c[1][0].clone(), -c[1][1].clone()],
                [c[0][0].clone(), c[0][1].clone()],
            ];
            comps.push(Component::Curve { r });
        } else {
            // Bᵀx is a multiple of a fixed vector
            let v = if !c[0][0].is_zero() || !c[1][0].is_zero() {
                [c[0][0].clone(), c[1][0].clone()]
            } else {
                [c[0][1].clone(), c[1][1].clone()]
            };
            comps.push(Component::FixedY { y: perp(&v) });
        }
        return comps;
    }
    for x in binary_form_roots(&minors[0]) {
        if !minors.iter().all(|f| eval_binary(f, &x).is_zero()) {
            continue;
        }
        if Some(&x) == rank0.as_ref() {
            continue;
        }
        let cs: Vec<[Rational; 2]> = bils.iter().map(|b| bil_col(b, &x)).collect();
        if let Span::Line(c) = span_of(&cs) {
            comps.push(Component::Point { x, y: perp(&c) });
        }
    }
    comps
}

/// Primitive points of P¹ ordered with positive coordinates first, then by
/// `|a| + |b|` and lexicographically.
pub fn search_points(bound: i64) -> Vec<IntVec> {
    let mut pts: Vec<(bool, i64, i64, i64)> = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a.abs() + b.abs() > bound || (a == 0 && b == 0) {
                continue;
            }
            if gcd(a, b) != 1 || a < 0 || (a == 0 && b < 0) {
                continue;
            }
            pts.push((!(a > 0 && b > 0), a.abs() + b.abs(), a, b));
        }
    }
    pts.sort_by(|p, q| (p.0, p.1, p.2, -p.3).cmp(&(q.0, q.1, q.2, -q.3)));
    pts.into_iter()
        .map(|(_, _, a, b)| vec![BigInt::from(a), BigInt::from(b)])
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a.abs(), b.abs());
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    x
}

fn apply_r(r: &[[Rational; 2]; 2], x: &[BigInt]) -> IntVec {
    let xr = to_rat(x);
    let y = [
        &r[0][0] * &xr[0] + &r[0][1] * &xr[1],
        &r[1][0] * &xr[0] + &r[1][1] * &xr[1],
    ];
    normalize_point(&y)
}

fn member_lattice(sys: &ParametricSystem, x: &[BigInt], y: &[BigInt]) -> IntLattice {
    rational_span_intersect(&[to_rat(&sys.u(x)), to_rat(&sys.w(y))], 4)
}

fn involution_route(gens: &[GenPerm], group: &SignedGroup, lead: GenPerm) -> Result<(Verdict, Certificate), TorusError> {
    let sys = ParametricSystem::new(&lead, gens);
    let mut cert = empty_certificate(group, Some(Lead::Involution(lead)));
    cert.family_bases = Some((sys.u_basis.clone(), sys.w_basis.clone()));
    cert.constraints = sys.constraints();
    let lead_is_generator = gens.contains(&lead);
    let mut pure_survivors = Vec::new();
    for basis in [&sys.u_basis, &sys.w_basis] {
        let l = rational_span_intersect(&[to_rat(&basis[0]), to_rat(&basis[1])], 4);
        match divisor_test(&l) {
            Some(w) if !lead_is_generator && is_stable(&l, gens) => cert.rejections.push(Rejection::Eigenspace {
                hit: DivisorHit { lattice: l, witness: w },
            }),
            Some(w) => cert.pre_rejected.push(DivisorHit { lattice: l, witness: w }),
            None => {
                if is_stable(&l, gens) {
                    pure_survivors.push(l);
                }
            }
        }
    }
    if let Some(l) = pure_survivors.into_iter().next() {
        cert.survivor = Some(decide_survivor(group, None, l)?);
        cert.reason = String::from("a pure eigenspace is stable and defeats the divisor test");
        return Ok((Verdict::SurvivesD4, cert));
    }
    let comps = sys.solve();
    cert.components = comps.clone();
    if comps.is_empty() && !cert.rejections.is_empty() {
        cert.reason = String::from("the only stable planes are eigenspaces of the lead and contain divisor-test vectors");
        return Ok((Verdict::RejectedDivisorTest, cert));
    }
    if comps.is_empty() {
        cert.reason = String::from("the constraints have no rational solution with x and y both nonzero");
        return Ok((Verdict::RejectedRank, cert));
    }
    let points = search_points(SEARCH_BOUND);
    for (ci, comp) in comps.iter().enumerate() {
        let members: Vec<(IntVec, IntVec)> = match comp {
            Component::Point { x, y } => vec![(x.clone(), y.clone())],
            Component::FixedX { x } => {
                let p = primitive(&to_rat(&sys.u(x)));
                if is_divisor_candidate(&p) {
                    cert.rejections.push(Rejection::FixedVector { component: ci, witness: p });
                    continue;
                }
                points.iter().map(|y| (x.clone(), y.clone())).collect()
            }
            Component::FixedY { y } => {
                let p = primitive(&to_rat(&sys.w(y)));
                if is_divisor_candidate(&p) {
                    cert.rejections.push(Rejection::FixedVector { component: ci, witness: p });
                    continue;
                }
                points.iter().map(|x| (x.clone(), y.clone())).collect()
            }
            Component::Curve { r } => points.iter().map(|x| (x.clone(), apply_r(r, x))).collect(),
            Component::Full => points
                .iter()
                .flat_map(|x| points.iter().map(move |y| (x.clone(), y.clone())))
                .collect(),
        };
        let single = matches!(comp, Component::Point { .. });
        let mut survivor = None;
        for (x, y) in &members {
            if !sys.satisfied(x, y) {
                return Err(TorusError::Internal(String::from("component member violates the constraints")));
            }
            let l = member_lattice(&sys, x, y);
            if !is_stable(&l, gens) {
                return Err(TorusError::Internal(String::from("component member is not stable")));
            }
            match divisor_test(&l) {
                Some(w) if single => cert.rejections.push(Rejection::Member {
                    component: ci,
                    hit: DivisorHit { lattice: l, witness: w },
                }),
                Some(_) => {}
                None => {
                    survivor = Some((x.clone(), y.clone(), l));
                    break;
                }
            }
        }
        match survivor {
            Some((x, y, l)) => {
                cert.survivor = Some(decide_survivor(group, Some((x, y)), l)?);
                cert.reason = String::from("a member of the family defeats the divisor test");
                return Ok((Verdict::SurvivesD4, cert));
            }
            None if single => {}
            None => {
                return Err(TorusError::Inconclusive(alloc::format!(
                    "family component {:?} has no uniform divisor vector and no survivor with |params| <= {}",
                    comp,
                    SEARCH_BOUND
                )))
            }
        }
    }
    cert.reason = String::from("every solution of the constraints contains a divisor-test vector");
    Ok((Verdict::RejectedDivisorTest, cert))
}

/// Stable families of rank-2 sublattices for the group generated by `gens`.
pub fn stable_subspaces(
    gens: &[GenPerm],
    target_rank: usize,
    field: &MultiQuadField,
) -> Result<Vec<StableFamily>, TorusError> {
    if target_rank != 2 {
        return Err(TorusError::Unsupported(alloc::format!("target rank {}", target_rank)));
    }
    let group = SignedGroup::generate(gens);
    match choose_lead(gens, &group, field) {
        Some(Lead::Distinct(g)) => {
            let d = distinct_eigen(&g, field).expect("distinct lead");
            let mut out = Vec::new();
            for a in 0..4 {
                for b in a + 1..4 {
                    if let Some(l) = descend(&[d.lines[a].clone(), d.lines[b].clone()], field) {
                        if is_stable(&l, gens) {
                            out.push(StableFamily::Finite(l));
                        }
                    }
                }
            }
            Ok(out)
        }
        Some(Lead::Involution(g)) => {
            let sys = ParametricSystem::new(&g, gens);
            let constraints = sys.constraints();
            Ok(sys
                .solve()
                .into_iter()
                .map(|c| match c {
                    Component::Point { x, y } => StableFamily::Finite(member_lattice(&sys, &x, &y)),
                    component => StableFamily::Parametric {
                        u_basis: sys.u_basis.clone(),
                        w_basis: sys.w_basis.clone(),
                        component,
                        constraints: constraints.clone(),
                    },
                })
                .collect())
        }
        Some(Lead::Quaternion(..)) => Ok(Vec::new()),
        None => Err(TorusError::Unsupported(String::from("no usable lead element"))),
    }
}

/// Re-checks a verdict certificate against the generators.
pub fn recheck(gens: &[GenPerm], v: &CaseVerdict) -> Result<(), String> {
    let c = &v.certificate;
    let group = SignedGroup::generate(gens);
    if group.order() != c.group_order {
        return Err(String::from("group order differs"));
    }
    let hit_ok = |h: &DivisorHit| h.lattice.contains(&h.witness) && is_divisor_candidate(&h.witness);
    for h in &c.pre_rejected {
        if !hit_ok(h) || h.lattice.rank() != 2 {
            return Err(alloc::format!("pre-rejected eigenspace {} fails re-check", h.lattice));
        }
    }
    match v.verdict {
        Verdict::RejectedDivisorTest => {
            if let Some(t) = &c.transport {
                let mut ei = vec![BigInt::zero(); 4];
                ei[t.i] = BigInt::from(1);
                let mut ej = vec![BigInt::zero(); 4];
                ej[t.j] = BigInt::from(t.epsilon);
                if t.g.apply(&ei) != ej || !group.contains(&t.g) {
                    return Err(String::from("transport element does not move e_i to e_j"));
                }
                if !t.kernel_elements.iter().all(|v| is_divisor_candidate(v)) {
                    return Err(String::from("kernel element is not a divisor vector"));
                }
                return Ok(());
            }
            if c.rejections.is_empty() {
                return Err(String::from("no rejection recorded"));
            }
            for r in &c.rejections {
                match r {
                    Rejection::Member { hit, .. } | Rejection::Eigenspace { hit } => {
                        if !hit_ok(hit) || !is_stable(&hit.lattice, gens) || divisor_test(&hit.lattice).is_none() {
                            return Err(alloc::format!("rejection of {} fails re-check", hit.lattice));
                        }
                    }
                    Rejection::FixedVector { witness, .. } => {
                        if !is_divisor_candidate(witness) {
                            return Err(String::from("fixed vector is not a divisor vector"));
                        }
                    }
                }
            }
            Ok(())
        }
        Verdict::SurvivesD4 => {
            let s = c.survivor.as_ref().ok_or("missing survivor")?;
            if !is_stable(&s.lattice, gens) || divisor_test(&s.lattice).is_some() || !s.lattice.is_saturated() {
                return Err(String::from("survivor fails re-check"));
            }
            let (a, x) = s.dihedral;
            if !(group.contains(&a) && group.contains(&x) && a.order() == 4 && x.order() == 2 && a.mul(&x).mul(&a) == x) {
                return Err(String::from("dihedral presentation fails re-check"));
            }
            if group.order() != 8 {
                return Err(String::from("group is not of order 8"));
            }
            Ok(())
        }
        Verdict::RejectedNoDescent => {
            let w = c.orbit_witness.as_ref().ok_or("missing orbit witness")?;
            // a 2-element union of Galois orbits would descend
            let small = w.orbits.iter().any(|o| o.len() <= 2);
            if small || gens.len() != 1 {
                return Err(String::from("orbit witness does not exclude descent"));
            }
            Ok(())
        }
        Verdict::RejectedRank => match c.lead.as_ref().ok_or("missing lead")? {
            Lead::Quaternion(i, j) => {
                if i.mul(i) == GenPerm::MINUS_IDENTITY && j.mul(j) == GenPerm::MINUS_IDENTITY && i.mul(j) == j.mul(i).neg() {
                    Ok(())
                } else {
                    Err(String::from("quaternion relations fail"))
                }
            }
            Lead::Involution(g) => {
                let sys = ParametricSystem::new(g, gens);
                if sys.constraints() != c.constraints {
                    return Err(String::from("constraints differ on recomputation"));
                }
                if !sys.solve().is_empty() {
                    return Err(String::from("constraints have solutions"));
                }
                Ok(())
            }
            Lead::Distinct(_) => {
                if c.finite.is_empty() {
                    Ok(())
                } else {
                    Err(String::from("stable candidates recorded under a rank verdict"))
                }
            }
        },
    }
}
