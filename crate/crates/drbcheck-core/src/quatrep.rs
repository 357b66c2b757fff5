//! Quaternion algebras Q(a,λ) and E(a,1), explicit sl(2) and sl(2)×sl(2)
//! triples, and the 8-dimensional anti-Weil representation with its Galois
//! descent, symplectic form and irreducibility checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{
    int, square_free_part, ArithError, ExactMatrix, FieldElement, GaloisElement, Matrix, MultiQuadField, QMatrix,
    Rational, Scalar, Solution,
};
use crate::liereps::{end_module, in_span, invariant_space, wedge2_module, LieError, WeightModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("parameter {0} must be a negative integer")]
    NotNegative(i64),
    #[error("parameter must be nonzero")]
    Zero,
    #[error("bracket identity fails: {0}")]
    Bracket(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

const NAMES: [&str; 8] = ["1", "i", "j", "k", "J", "Ji", "Jj", "Jk"];

/// Quaternion algebra with i² = a, j² = b, ij = −ji = k over Q, or over
/// Q(√D) with J the multiplication by √D. Elements are coordinate vectors
/// over the Q-basis 1, i, j, k (, J, Ji, Jj, Jk).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    pub a: Rational,
    pub b: Rational,
    pub d: Option<Rational>,
}

impl QuaternionAlgebra {
    pub fn over_q(a: Rational, b: Rational) -> Self {
        QuaternionAlgebra { a, b, d: None }
    }

    pub fn over_quadratic(d: Rational, a: Rational, b: Rational) -> Self {
        QuaternionAlgebra { a, b, d: Some(d) }
    }

    pub fn dim(&self) -> usize {
        if self.d.is_some() {
            8
        } else {
            4
        }
    }

    pub fn basis_names(&self) -> &'static [&'static str] {
        &NAMES[..self.dim()]
    }

    /// eₚ·e_q = c·e_r.
    pub fn basis_product(&self, p: usize, q: usize) -> (usize, Rational) {
        let (tp, sp) = (p % 4, p / 4);
        let (tq, sq) = (q % 4, q / 4);
        let (a, b) = (&self.a, &self.b);
        let (r, mut c) = match (tp, tq) {
            (0, t) | (t, 0) => (t, Rational::one()),
            (1, 1) => (0, a.clone()),
            (2, 2) => (0, b.clone()),
            (3, 3) => (0, -(a * b)),
            (1, 2) => (3, int(1)),
            (2, 1) => (3, int(-1)),
            (1, 3) => (2, a.clone()),
            (3, 1) => (2, -a.clone()),
            (2, 3) => (1, -b.clone()),
            (3, 2) => (1, b.clone()),
            _ => unreachable!(),
        };
        let mut s = sp + sq;
        if s == 2 {
            c *= self.d.clone().expect("J only exists over Q(sqrt D)");
            s = 0;
        }
        (r + 4 * s, c)
    }

    pub fn mul<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![x[0].zero_like(); n];
        for p in 0..n {
            if x[p].is_zero() {
                continue;
            }
            for q in 0..n {
                if y[q].is_zero() {
                    continue;
                }
                let (r, c) = self.basis_product(p, q);
                let term = x[p].mul(&y[q]).mul(&x[p].from_rational_like(&c));
                out[r] = out[r].add(&term);
            }
        }
        out
    }

    pub fn bracket<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        xy.iter().zip(&yx).map(|(p, q)| p.sub(q)).collect()
    }

    /// Basis indices spanning the trace-zero part.
    pub fn trace_zero_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|p| p % 4 != 0).collect()
    }

    pub fn unit(&self, p: usize) -> Vec<Rational> {
        (0..self.dim()).map(|q| if p == q { int(1) } else { int(0) }).collect()
    }

    /// (eₚe_q)e_r = eₚ(e_q e_r) on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let (e, u, w) = (self.unit(p), self.unit(q), self.unit(r));
                    if self.mul(&self.mul(&e, &u), &w) != self.mul(&e, &self.mul(&u, &w)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Brackets of trace-zero basis elements have no 1 or J component.
    pub fn trace_zero_closed(&self) -> bool {
        let tz = self.trace_zero_basis();
        tz.iter().all(|&p| {
            tz.iter().all(|&q| {
                let c = self.bracket(&self.unit(p), &self.unit(q));
                c.iter().enumerate().all(|(r, v)| r % 4 != 0 || Zero::is_zero(v))
            })
        })
    }
}

/// One bracket identity between named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub left: String,
    pub right: String,
    pub expected: String,
    pub holds: bool,
}

/// √n inside `field`, for n whose square-free part is a product of generators.
fn sqrt_in(field: &MultiQuadField, n: i64) -> Result<FieldElement, QuatError> {
    field.sqrt_int(n).ok_or(QuatError::Arith(ArithError::DoesNotSplit))
}

fn lift(field: &MultiQuadField, v: &[Rational]) -> Vec<FieldElement> {
    v.iter().map(|q| field.from_rational(q.clone())).collect()
}

fn scale_vec(c: &FieldElement, v: &[FieldElement]) -> Vec<FieldElement> {
    v.iter().map(|x| x.mul(c)).collect()
}

fn add_vec(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn galois_vec(g: &GaloisElement, v: &[FieldElement]) -> Vec<FieldElement> {
    v.iter().map(|x| g.apply(x)).collect()
}

fn format_vec(v: &[FieldElement], names: &[&str]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| format!("({c})*{n}"))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// h, x, y in Q(a,λ)° ⊗ Q(√a): h = i/√a, x = (j + k/√a)/(2λ), y = (j − k/√a)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct SL2Triple {
    pub algebra: QuaternionAlgebra,
    pub field: MultiQuadField,
    pub sqrt_a: FieldElement,
    pub h: Vec<FieldElement>,
    pub x: Vec<FieldElement>,
    pub y: Vec<FieldElement>,
}

pub fn sl2_triple(a: i64, lambda: i64) -> Result<SL2Triple, QuatError> {
    if a == 0 || lambda == 0 {
        return Err(QuatError::Zero);
    }
    let (_, d) = square_free_part(a);
    let field = MultiQuadField::new(&[if d == 1 { -1 } else { d }])?;
    let sqrt_a = sqrt_in(&field, a)?;
    let inv_sa = sqrt_a.inv()?;
    let alg = QuaternionAlgebra::over_q(int(a), int(lambda));
    let f = |v: &[i64]| -> Vec<FieldElement> { v.iter().map(|&c| field.from_int(c)).collect() };
    let i = f(&[0, 1, 0, 0]);
    let j = f(&[0, 0, 1, 0]);
    let k = f(&[0, 0, 0, 1]);
    let h = scale_vec(&inv_sa, &i);
    let kk = scale_vec(&inv_sa, &k);
    let x = scale_vec(
        &field.from_rational(Rational::new(1.into(), (2 * lambda).into())),
        &add_vec(&j, &kk),
    );
    let y = scale_vec(&field.from_rational(Rational::new(1.into(), 2.into())), &add_vec(&j, &scale_vec(&field.from_int(-1), &kk)));
    let t = SL2Triple { algebra: alg, field, sqrt_a, h, x, y };
    if let Some(bad) = t.bracket_checks().into_iter().find(|c| !c.holds) {
        return Err(QuatError::Bracket(format!("[{}, {}]", bad.left, bad.right)));
    }
    Ok(t)
}

impl SL2Triple {
    pub fn bracket_checks(&self) -> Vec<BracketCheck> {
        let alg = &self.algebra;
        let two = self.field.from_int(2);
        let m2 = self.field.from_int(-2);
        let mk = |l: &str, r: &str, e: &str, holds: bool| BracketCheck {
            left: l.to_string(),
            right: r.to_string(),
            expected: e.to_string(),
            holds,
        };
        vec![
            mk("x", "y", "h", alg.bracket(&self.x, &self.y) == self.h),
            mk("h", "x", "2x", alg.bracket(&self.h, &self.x) == scale_vec(&two, &self.x)),
            mk("h", "y", "-2y", alg.bracket(&self.h, &self.y) == scale_vec(&m2, &self.y)),
        ]
    }

    /// a < 0: λ·x̄ = y; a > 0: x̄ = x, with the bar the complex conjugation on
    /// coefficients.
    pub fn conjugation_relation(&self) -> bool {
        let c = self.field.complex_conjugation();
        let xb = galois_vec(&c, &self.x);
        if self.algebra.a < int(0) {
            scale_vec(&self.field.from_rational(self.algebra.b.clone()), &xb) == self.y
        } else {
            xb == self.x
        }
    }
}

pub const PAIR_NAMES: [&str; 6] = ["(h,0)", "(0,h)", "(x,0)", "(0,x)", "(y,0)", "(0,y)"];

/// Expected bracket of two elements of the sl(2)×sl(2) basis in
/// `PAIR_NAMES` order, as integer coordinates.
pub fn pair_bracket(p: usize, q: usize) -> [i64; 6] {
    let mut out = [0; 6];
    if p % 2 != q % 2 {
        return out;
    }
    let f = p % 2;
    let (h, x, y) = (f, 2 + f, 4 + f);
    let (kp, kq) = (p / 2, q / 2);
    match (kp, kq) {
        (0, 1) => out[x] = 2,
        (1, 0) => out[x] = -2,
        (0, 2) => out[y] = -2,
        (2, 0) => out[y] = 2,
        (1, 2) => out[h] = 1,
        (2, 1) => out[h] = -1,
        _ => {}
    }
    out
}

/// The six elements (h,0), (0,h), (x,0), (0,x), (y,0), (0,y) of
/// E(a,1)° ⊗ F for a field F containing √D and √a.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2PairForm {
    pub algebra: QuaternionAlgebra,
    pub field: MultiQuadField,
    pub sqrt_d: FieldElement,
    pub sqrt_a: FieldElement,
    pub elements: Vec<Vec<FieldElement>>,
}

impl Sl2PairForm {
    fn build(field: &MultiQuadField, d: i64, a: i64) -> Result<Self, QuatError> {
        let b = 1;
        let alg = QuaternionAlgebra::over_quadratic(int(d), int(a), int(b));
        let sd = sqrt_in(field, d)?;
        let sa = sqrt_in(field, a)?;
        let isd = sd.inv()?;
        let isa = sa.inv()?;
        let q = |n: i64, m: i64| field.from_rational(Rational::new(n.into(), m.into()));
        let mut unit = |p: usize| lift(field, &alg.unit(p));
        let (i, j, k, ji, jj, jk) = (unit(1), unit(2), unit(3), unit(5), unit(6), unit(7));
        let comb = |terms: &[(&FieldElement, &Vec<FieldElement>)]| -> Vec<FieldElement> {
            terms
                .iter()
                .fold(vec![field.zero(); 8], |acc, (c, v)| add_vec(&acc, &scale_vec(c, v)))
        };
        let half_sa = isa.mul(&q(1, 2));
        let half_sda = isa.mul(&isd).mul(&q(1, 2));
        let h0 = comb(&[(&half_sda, &ji), (&half_sa, &i)]);
        let h1 = comb(&[(&half_sda, &ji), (&half_sa.neg(), &i)]);
        // (J ± √D)(j ± k/√a) / (4b√D) and (J ± √D)(j ∓ k/√a) / (4√D)
        let quarter = |n: i64| q(1, 4 * n);
        let x_part = |sj: i64, sd_sign: i64, denom: i64| -> Vec<FieldElement> {
            let c_j_j = isd.mul(&quarter(denom));
            let c_j_k = isd.mul(&isa).mul(&quarter(denom)).mul(&field.from_int(sj));
            let c_j = quarter(denom).mul(&field.from_int(sd_sign));
            let c_k = isa.mul(&quarter(denom)).mul(&field.from_int(sj * sd_sign));
            comb(&[(&c_j_j, &jj), (&c_j_k, &jk), (&c_j, &j), (&c_k, &k)])
        };
        let x0 = x_part(1, 1, b);
        let x1 = x_part(-1, -1, b);
        let y0 = x_part(-1, 1, 1);
        let y1 = x_part(1, -1, 1);
        let _ = &mut unit;
        let form = Sl2PairForm {
            algebra: alg,
            field: field.clone(),
            sqrt_d: sd,
            sqrt_a: sa,
            elements: vec![h0, h1, x0, x1, y0, y1],
        };
        if let Some(bad) = form.bracket_checks().into_iter().find(|c| !c.holds) {
            return Err(QuatError::Bracket(format!("[{}, {}]", bad.left, bad.right)));
        }
        Ok(form)
    }

    /// The 15 brackets between distinct elements.
    pub fn bracket_checks(&self) -> Vec<BracketCheck> {
        let mut out = Vec::new();
        for p in 0..6 {
            for q in p + 1..6 {
                let got = self.algebra.bracket(&self.elements[p], &self.elements[q]);
                let e = pair_bracket(p, q);
                let want = (0..6).fold(vec![self.field.zero(); 8], |acc, r| {
                    add_vec(&acc, &scale_vec(&self.field.from_int(e[r]), &self.elements[r]))
                });
                out.push(BracketCheck {
                    left: PAIR_NAMES[p].to_string(),
                    right: PAIR_NAMES[q].to_string(),
                    expected: format_pair(&e),
                    holds: got == want,
                });
            }
        }
        out
    }

    /// Coordinates of a trace-zero element in the six-element basis.
    pub fn coordinates(&self, l: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let m = Matrix::from_cols(&self.elements, &self.field.zero());
        match m.solve(l).ok()? {
            Solution::Solution(c) => Some(c),
            Solution::NoSolution => None,
        }
    }

    /// Coordinates of g·(element p), with g acting on coefficients.
    pub fn galois_image(&self, g: &GaloisElement, p: usize) -> Vec<FieldElement> {
        self.coordinates(&galois_vec(g, &self.elements[p])).expect("the trace-zero part is Galois stable")
    }

    pub fn format_element(&self, p: usize) -> String {
        format_vec(&self.elements[p], self.algebra.basis_names())
    }
}

fn format_pair(e: &[i64; 6]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(PAIR_NAMES)
        .filter(|(c, _)| **c != 0)
        .map(|(c, n)| match c {
            1 => n.to_string(),
            -1 => format!("-{n}"),
            _ => format!("{c}{n}"),
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn sf(n: i64) -> i64 {
    square_free_part(n).1
}

/// E(a,1)° ⊗ Q(√D,√a) ≅ sl(2)×sl(2).
pub fn e_a1_triples(d: i64, a: i64) -> Result<Sl2PairForm, QuatError> {
    if d == 0 || a == 0 {
        return Err(QuatError::Zero);
    }
    let field = MultiQuadField::new(&[sf(d), sf(a)])?;
    Sl2PairForm::build(&field, d, a)
}

/// Basis labels of V ⊗ F: the weight basis of V_σ, then its image under g₂.
pub const VW_LABELS: [&str; 8] = [
    "v(1,1)", "v(-1,-1)", "v(1,-1)", "v(-1,1)", "w(1,1)", "w(-1,-1)", "w(1,-1)", "w(-1,1)",
];

type Signed = Option<(i8, usize)>;

/// Action of `PAIR_NAMES` on v(1,1), v(-1,-1), v(1,-1), v(-1,1); the same on
/// the w side.
pub const ACTION_TABLE: [[Signed; 4]; 6] = [
    [Some((1, 0)), Some((-1, 1)), Some((1, 2)), Some((-1, 3))],
    [Some((1, 0)), Some((-1, 1)), Some((-1, 2)), Some((1, 3))],
    [None, Some((1, 2)), None, Some((1, 0))],
    [None, Some((1, 3)), Some((1, 0)), None],
    [Some((1, 3)), None, Some((1, 1)), None],
    [Some((1, 2)), None, None, Some((1, 1))],
];

/// g₁, g₂, g₃ on v(1,1), v(-1,-1), v(1,-1), v(-1,1), as signed `VW_LABELS`
/// indices.
pub const GALOIS_BASIS_TABLE: [[(i8, usize); 4]; 3] = [
    [(-1, 1), (-1, 0), (1, 2), (1, 3)],
    [(1, 4), (1, 5), (1, 6), (1, 7)],
    [(-1, 1), (-1, 0), (-1, 3), (-1, 2)],
];

/// g₁, g₂, g₃ on `PAIR_NAMES`, as signed indices.
pub const GALOIS_LIE_TABLE: [[(i8, usize); 6]; 3] = [
    [(-1, 1), (-1, 0), (-1, 5), (-1, 4), (-1, 3), (-1, 2)],
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5)],
    [(-1, 0), (-1, 1), (1, 4), (1, 5), (1, 2), (1, 3)],
];

/// The representation of E(a,1)° on V = Q⁸ with K = Q(√D′) acting through
/// `j_action`. V ⊗ F has the basis `VW_LABELS`, stored as the columns of
/// `basis` in the coordinates of Q⁸.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiWeilRep {
    pub params: (i64, i64, i64),
    pub field: MultiQuadField,
    /// g₁ negates √D, g₂ negates √D′, g₃ negates √a.
    pub galois: [GaloisElement; 3],
    pub lie: Sl2PairForm,
    pub sqrt_dp: FieldElement,
    pub basis: ExactMatrix,
    pub basis_inv: ExactMatrix,
    pub j_action: QMatrix,
    /// `PAIR_NAMES` acting on the basis `VW_LABELS`.
    pub actions: Vec<QMatrix>,
    /// The same in the coordinates of Q⁸.
    pub std_actions: Vec<ExactMatrix>,
    /// φ on the basis `VW_LABELS`.
    pub gram_basis: ExactMatrix,
    /// φ in the coordinates of Q⁸.
    pub gram_std: ExactMatrix,
}

pub fn build_antiweil_rep(dp: i64, d: i64, a: i64) -> Result<AntiWeilRep, QuatError> {
    for p in [dp, d, a] {
        if p >= 0 {
            return Err(QuatError::NotNegative(p));
        }
    }
    let field = MultiQuadField::new(&[sf(dp), sf(d), sf(a)])?;
    let galois = [
        field.galois_element(&[1]),
        field.galois_element(&[0]),
        field.galois_element(&[2]),
    ];
    let lie = Sl2PairForm::build(&field, d, a)?;
    let sdp = sqrt_in(&field, dp)?;
    let sa = lie.sqrt_a.clone();
    let sad = sa.mul(&lie.sqrt_d);

    // K⁴ = Q⁴ ⊕ √D′·Q⁴; fᵢ = √D′eᵢ ⊕ eᵢ spans the √D′-eigenspace
    let mut j_action = QMatrix::q_zeros(8, 8);
    for i in 0..4 {
        j_action.set(i, 4 + i, int(dp));
        j_action.set(4 + i, i, int(1));
    }
    let f = |i: usize| -> Vec<FieldElement> {
        let mut v = vec![field.zero(); 8];
        v[i] = sdp.clone();
        v[4 + i] = field.one();
        v
    };
    let neg1 = field.from_int(-1);
    let v11 = add_vec(&scale_vec(&neg1, &f(0)), &scale_vec(&sad, &f(1)));
    let vmm = add_vec(&f(0), &scale_vec(&sad, &f(1)));
    let v1m = add_vec(&scale_vec(&neg1, &f(2)), &scale_vec(&sa, &f(3)));
    let vm1 = add_vec(&f(2), &scale_vec(&sa, &f(3)));
    let mut cols = vec![v11, vmm, v1m, vm1];
    for c in 0..4 {
        let w = galois_vec(&galois[1], &cols[c]);
        cols.push(w);
    }
    let basis = Matrix::from_cols(&cols, &field.zero());
    let basis_inv = basis.inverse()?;

    let actions: Vec<QMatrix> = ACTION_TABLE
        .iter()
        .map(|row| {
            let mut t = QMatrix::q_zeros(8, 8);
            for (c, e) in row.iter().enumerate() {
                if let Some((s, r)) = e {
                    t.set(*r, c, int(*s as i64));
                    t.set(*r + 4, c + 4, int(*s as i64));
                }
            }
            t
        })
        .collect();
    let std_actions = actions
        .iter()
        .map(|t| basis.mul(&t.to_field(&field)).mul(&basis_inv))
        .collect();

    let m = sdp.neg();
    let mut gram_basis = ExactMatrix::field_zeros(8, 8, &field);
    for (i, j, val) in [(1, 4, m.clone()), (0, 5, m.clone()), (3, 6, m.neg()), (2, 7, m.neg())] {
        gram_basis.set(i, j, val.clone());
        gram_basis.set(j, i, val.neg());
    }
    let gram_std = basis_inv.transpose().mul(&gram_basis).mul(&basis_inv);
    Ok(AntiWeilRep {
        params: (dp, d, a),
        field,
        galois,
        lie,
        sqrt_dp: sdp,
        basis,
        basis_inv,
        j_action,
        actions,
        std_actions,
        gram_basis,
        gram_std,
    })
}

impl AntiWeilRep {
    /// μ_F of an element given by coordinates in the six-element basis.
    pub fn action_of(&self, coords: &[FieldElement]) -> ExactMatrix {
        let mut m = ExactMatrix::field_zeros(8, 8, &self.field);
        for (c, a) in coords.iter().zip(&self.std_actions) {
            if !c.is_zero() {
                m = m.add(&a.scale(c));
            }
        }
        m
    }

    /// μ on the Q-basis i, j, k, Ji, Jj, Jk of E(a,1)°, over F.
    pub fn mu_on_q_basis(&self) -> Vec<(String, ExactMatrix)> {
        self.lie
            .algebra
            .trace_zero_basis()
            .into_iter()
            .map(|p| {
                let l = lift(&self.field, &self.lie.algebra.unit(p));
                let c = self.lie.coordinates(&l).expect("basis element lies in the span");
                (NAMES[p].to_string(), self.action_of(&c))
            })
            .collect()
    }

    /// μ over Q, when every matrix is rational.
    pub fn mu_rational(&self) -> Option<Vec<(String, QMatrix)>> {
        self.mu_on_q_basis()
            .into_iter()
            .map(|(n, m)| m.to_rational().map(|q| (n, q)))
            .collect()
    }

    pub fn gram_rational(&self) -> Option<QMatrix> {
        self.gram_std.to_rational()
    }

    /// g applied to basis vector `c`, in `VW_LABELS` coordinates.
    pub fn galois_on_basis(&self, g: &GaloisElement, c: usize) -> Vec<FieldElement> {
        let col = galois_vec(g, &self.basis.col(c));
        self.basis_inv.mul_vec(&col)
    }

    /// Regenerates the Galois table on v(·,·) from the explicit basis.
    pub fn regenerated_basis_table(&self) -> Option<[[(i8, usize); 4]; 3]> {
        let mut t = [[(0i8, 0usize); 4]; 3];
        for (gi, g) in self.galois.iter().enumerate() {
            for c in 0..4 {
                t[gi][c] = signed_unit(&self.galois_on_basis(g, c))?;
            }
        }
        Some(t)
    }

    /// Regenerates the Galois table on the six Lie elements from their
    /// explicit coefficients.
    pub fn regenerated_lie_table(&self) -> Option<[[(i8, usize); 6]; 3]> {
        let mut t = [[(0i8, 0usize); 6]; 3];
        for (gi, g) in self.galois.iter().enumerate() {
            for p in 0..6 {
                t[gi][p] = signed_unit(&self.lie.galois_image(g, p))?;
            }
        }
        Some(t)
    }

    /// The action on V ⊗ F in the `VW_LABELS` basis as a module over Q,
    /// with the center acting as diag(1,1,1,1,−1,−1,−1,−1) when requested.
    pub fn weight_module(&self, with_center: bool) -> Result<WeightModule, QuatError> {
        let mut gens: Vec<(String, QMatrix)> =
            PAIR_NAMES.iter().map(|n| n.to_string()).zip(self.actions.iter().cloned()).collect();
        if with_center {
            let mut z = QMatrix::q_identity(8);
            for i in 4..8 {
                z.set(i, i, int(-1));
            }
            gens.push(("z".to_string(), z));
        }
        let labels = VW_LABELS.iter().map(|s| s.to_string()).collect();
        Ok(WeightModule::new("V", labels, gens, vec![[0, 2, 4], [1, 3, 5]])?)
    }
}

fn signed_unit(v: &[FieldElement]) -> Option<(i8, usize)> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    match nz.as_slice() {
        [i] if v[*i].is_one() => Some((1, *i)),
        [i] if v[*i].neg().is_one() => Some((-1, *i)),
        _ => None,
    }
}

/// Outcome of g⁻¹∘μ_F(l)(g∘v) = μ_F(g⁻¹∘l)(v) over generators, Lie basis
/// and vector basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub checks: usize,
    pub failures: Vec<String>,
    pub basis_table_matches: bool,
    pub lie_table_matches: bool,
    pub mu_rational: bool,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.basis_table_matches && self.lie_table_matches && self.mu_rational
    }
}

/// One instance of the Galois equivariance identity, as (lhs, rhs).
pub fn equivariance_sides(
    rep: &AntiWeilRep,
    g: &GaloisElement,
    l: usize,
    b: usize,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    // Galois elements are involutions
    let ginv = *g;
    let v = rep.basis.col(b);
    let gv = galois_vec(g, &v);
    let lhs = galois_vec(&ginv, &rep.std_actions[l].mul_vec(&gv));
    let gl = rep.lie.galois_image(&ginv, l);
    let rhs = rep.action_of(&gl).mul_vec(&v);
    (lhs, rhs)
}

pub fn verify_galois_equivariance(rep: &AntiWeilRep) -> EquivarianceReport {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (gi, g) in rep.galois.iter().enumerate() {
        for l in 0..6 {
            for b in 0..8 {
                checks += 1;
                let (lhs, rhs) = equivariance_sides(rep, g, l, b);
                if lhs != rhs {
                    failures.push(format!("g{} {} {}", gi + 1, PAIR_NAMES[l], VW_LABELS[b]));
                }
            }
        }
    }
    EquivarianceReport {
        checks,
        failures,
        basis_table_matches: rep.regenerated_basis_table() == Some(GALOIS_BASIS_TABLE),
        lie_table_matches: rep.regenerated_lie_table() == Some(GALOIS_LIE_TABLE),
        mu_rational: rep.mu_rational().is_some(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticReport {
    pub antisymmetric: bool,
    pub nondegenerate: bool,
    pub isotropic: bool,
    pub rational: bool,
    pub descent_checks: usize,
    pub invariance_checks: usize,
    pub adjointness_checks: usize,
    pub central_checks: usize,
    pub failures: Vec<String>,
}

impl SymplecticReport {
    pub fn passed(&self) -> bool {
        self.antisymmetric && self.nondegenerate && self.isotropic && self.rational && self.failures.is_empty()
    }
}

fn bilinear(g: &ExactMatrix, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).fold(g.zero_elem().clone(), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// K acting on Q⁸: p + q√D′ ↦ p + qJ.
pub fn k_action(rep: &AntiWeilRep, p: i64, q: i64) -> QMatrix {
    QMatrix::q_identity(8).scale(&int(p)).add(&rep.j_action.scale(&int(q)))
}

pub fn verify_symplectic(rep: &AntiWeilRep) -> SymplecticReport {
    let f = &rep.field;
    let g = &rep.gram_std;
    let mut failures = Vec::new();
    let antisymmetric = g.transpose() == g.neg();
    let nondegenerate = !g.det().is_zero();
    let isotropic = (0..8).all(|i| (0..8).all(|j| (i < 4) != (j < 4) || rep.gram_basis.get(i, j).is_zero()));
    let rational = rep.gram_rational().is_some();

    let mut descent_checks = 0;
    for (gi, ge) in rep.galois.iter().enumerate() {
        for b in 0..8 {
            for c in 0..8 {
                descent_checks += 1;
                let (x, y) = (rep.basis.col(b), rep.basis.col(c));
                let lhs = bilinear(g, &galois_vec(ge, &x), &galois_vec(ge, &y));
                let rhs = ge.apply(&bilinear(g, &x, &y));
                if lhs != rhs {
                    failures.push(format!("descent g{} {} {}", gi + 1, VW_LABELS[b], VW_LABELS[c]));
                }
            }
        }
    }

    let gb = &rep.gram_basis;
    let mut invariance_checks = 0;
    for (l, t) in rep.actions.iter().enumerate() {
        let tf = t.to_field(f);
        let s = tf.transpose().mul(gb).add(&gb.mul(&tf));
        for b in 0..8 {
            for c in 0..8 {
                invariance_checks += 1;
                if !s.get(b, c).is_zero() {
                    failures.push(format!("invariance {} {} {}", PAIR_NAMES[l], VW_LABELS[b], VW_LABELS[c]));
                }
            }
        }
    }

    let unit = |i: usize| -> Vec<FieldElement> { (0..8).map(|j| if i == j { f.one() } else { f.zero() }).collect() };
    let on = |m: &QMatrix, v: &[FieldElement]| m.to_field(f).mul_vec(v);
    let mut adjointness_checks = 0;
    for (p, q) in [(0, 1), (1, 1), (2, -3)] {
        let k = k_action(rep, p, q);
        let kbar = k_action(rep, p, -q);
        for i in 0..8 {
            for j in 0..8 {
                adjointness_checks += 1;
                let (x, y) = (unit(i), unit(j));
                if bilinear(g, &on(&k, &x), &y) != bilinear(g, &x, &on(&kbar, &y)) {
                    failures.push(format!("adjointness {p}+{q}sqrt(D') e{i} e{j}"));
                }
            }
        }
    }
    let mut central_checks = 0;
    for q in [1, -2] {
        let k = k_action(rep, 0, q);
        for i in 0..8 {
            for j in 0..8 {
                central_checks += 1;
                let (x, y) = (unit(i), unit(j));
                let s = bilinear(g, &on(&k, &x), &y).add(&bilinear(g, &x, &on(&k, &y)));
                if !s.is_zero() {
                    failures.push(format!("central {q}sqrt(D') e{i} e{j}"));
                }
            }
        }
    }
    SymplecticReport {
        antisymmetric,
        nondegenerate,
        isotropic,
        rational,
        descent_checks,
        invariance_checks,
        adjointness_checks,
        central_checks,
        failures,
    }
}

/// Which side of a weight space a candidate line uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    V,
    W,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternOutcome {
    pub sides: [Side; 4],
    pub galois_stable: bool,
    /// Generators (1, 2 or 3) moving the span.
    pub moved_by: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityReport {
    /// Per weight: the J-stable lines are exactly v and w.
    pub j_lines_are_sides: Vec<bool>,
    /// Per weight: v + w is moved off its line by J.
    pub mixed_rejected: Vec<bool>,
    pub patterns: Vec<PatternOutcome>,
    pub irreducible: bool,
}

/// A subrepresentation meets each weight space in a J-stable line; those are
/// the v and w sides, and no choice of sides is Galois stable.
pub fn verify_irreducibility(rep: &AntiWeilRep) -> IrreducibilityReport {
    let f = &rep.field;
    let j_vw = rep.basis_inv.mul(&rep.j_action.to_field(f)).mul(&rep.basis);
    let mut j_lines_are_sides = Vec::new();
    let mut mixed_rejected = Vec::new();
    for l in 0..4 {
        let (v, w) = (l, l + 4);
        let diag = j_vw.get(v, w).is_zero()
            && j_vw.get(w, v).is_zero()
            && *j_vw.get(v, v) == rep.sqrt_dp
            && *j_vw.get(w, w) == rep.sqrt_dp.neg();
        let others_zero = (0..8).all(|r| r == v || r == w || (j_vw.get(r, v).is_zero() && j_vw.get(r, w).is_zero()));
        j_lines_are_sides.push(diag && others_zero);
        let mut mixed = vec![f.zero(); 8];
        mixed[v] = f.one();
        mixed[w] = f.one();
        let jm = j_vw.mul_vec(&mixed);
        let rank = Matrix::from_rows(vec![mixed, jm], &f.zero()).rank();
        mixed_rejected.push(rank == 2);
    }
    let mut patterns = Vec::new();
    for mask in 0..16u32 {
        let sides: [Side; 4] = core::array::from_fn(|l| if mask >> l & 1 == 1 { Side::W } else { Side::V });
        let chosen: Vec<usize> = (0..4).map(|l| if sides[l] == Side::W { l + 4 } else { l }).collect();
        let mut moved_by = Vec::new();
        for (gi, g) in rep.galois.iter().enumerate() {
            let stable = chosen.iter().all(|&c| {
                let img = rep.galois_on_basis(g, c);
                (0..8).all(|r| img[r].is_zero() || chosen.contains(&r))
            });
            if !stable {
                moved_by.push(gi + 1);
            }
        }
        patterns.push(PatternOutcome { sides, galois_stable: moved_by.is_empty(), moved_by });
    }
    let irreducible = j_lines_are_sides.iter().all(|&b| b)
        && mixed_rejected.iter().all(|&b| b)
        && patterns.iter().all(|p| !p.galois_stable);
    IrreducibilityReport { j_lines_are_sides, mixed_rejected, patterns, irreducible }
}

/// Invariants of End(V) and ∧²V under the center plus μ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterInvariants {
    pub end_dim: usize,
    pub end_is_k_span: bool,
    pub wedge_dim: usize,
    pub wedge_is_phi_line: bool,
}

impl CenterInvariants {
    pub fn passed(&self) -> bool {
        self.end_dim == 2 && self.end_is_k_span && self.wedge_dim == 1 && self.wedge_is_phi_line
    }
}

pub fn center_invariants(rep: &AntiWeilRep) -> Result<CenterInvariants, QuatError> {
    let m = rep.weight_module(true)?;
    let end = invariant_space(&end_module(&m)?);
    let flat = |q: &QMatrix| -> Vec<Rational> { (0..8).flat_map(|i| q.row(i)).collect() };
    let z = m.action("z").expect("center generator").clone();
    let id = QMatrix::q_identity(8);
    let end_is_k_span = in_span(&end, &flat(&id)) && in_span(&end, &flat(&z));

    let wedge = invariant_space(&wedge2_module(&m)?);
    // the bivector dual to φ is √D′·φ⁻¹
    let c = rep.gram_basis.inverse()?.scale(&rep.sqrt_dp);
    let phi_line = c.to_rational().map(|c| {
        let mut v = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                v.push(c.get(i, j) - c.get(j, i));
            }
        }
        v
    });
    let wedge_is_phi_line = phi_line.is_some_and(|v| !v.iter().all(Zero::is_zero) && in_span(&wedge, &v));
    Ok(CenterInvariants { end_dim: end.len(), end_is_k_span, wedge_dim: wedge.len(), wedge_is_phi_line })
}

/// Every check on one parameter triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiWeilReport {
    pub params: (i64, i64, i64),
    pub field: String,
    pub brackets: Vec<BracketCheck>,
    pub equivariance: EquivarianceReport,
    pub symplectic: SymplecticReport,
    pub irreducibility: IrreducibilityReport,
    pub center: CenterInvariants,
    pub phi_values: Vec<(String, String, String)>,
}

impl AntiWeilReport {
    pub fn passed(&self) -> bool {
        self.brackets.len() == 15
            && self.brackets.iter().all(|b| b.holds)
            && self.equivariance.passed()
            && self.symplectic.passed()
            && self.irreducibility.irreducible
            && self.center.passed()
    }
}

pub fn verify_antiweil(dp: i64, d: i64, a: i64) -> Result<AntiWeilReport, QuatError> {
    let rep = build_antiweil_rep(dp, d, a)?;
    let mut phi_values = Vec::new();
    for i in 0..4 {
        for j in 4..8 {
            let v = rep.gram_basis.get(i, j);
            if !v.is_zero() {
                phi_values.push((VW_LABELS[i].to_string(), VW_LABELS[j].to_string(), v.to_string()));
            }
        }
    }
    Ok(AntiWeilReport {
        params: rep.params,
        field: crate::arith::field_name(&rep.field),
        brackets: rep.lie.bracket_checks(),
        equivariance: verify_galois_equivariance(&rep),
        symplectic: verify_symplectic(&rep),
        irreducibility: verify_irreducibility(&rep),
        center: center_invariants(&rep)?,
        phi_values,
    })
}

pub const DEFAULT_PARAMS: (i64, i64, i64) = (-1, -2, -3);
