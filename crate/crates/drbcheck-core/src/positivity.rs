//! Feasibility of Hermitian positivity conditions: diagonal forms with
//! sign-monomial coefficients, zero witnesses for antisymmetric forms, and
//! the definiteness check on the Weil-type family.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{Float, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::{int, rat, ArithError, ExactMatrix, FieldElement, Matrix, MultiQuadField, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PositivityError {
    #[error("vector is zero")]
    ZeroVector,
    #[error("value is not totally real: {0}")]
    NotReal(String),
    #[error("constraint {constraint} has coefficients of mixed sign under {pattern} on a proper subspace")]
    Undecided { constraint: String, pattern: String },
    #[error("constraint {0} lives on the zero subspace")]
    EmptySubspace(String),
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A real nonzero parameter, either fixed or of free sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub value: Option<Rational>,
}

impl Parameter {
    pub fn free(name: &str) -> Self {
        Parameter { name: name.to_string(), value: None }
    }

    pub fn fixed(name: &str, value: Rational) -> Self {
        Parameter { name: name.to_string(), value: Some(value) }
    }
}

/// c·∏ pᵢ^eᵢ over the system parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: Rational, exps: &[u32]) -> Self {
        Monomial { coeff, exps: exps.to_vec() }
    }

    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        let mut v = self.coeff.clone();
        for (x, &e) in values.iter().zip(&self.exps) {
            for _ in 0..e {
                v *= x;
            }
        }
        v
    }

    /// Sign under parameter signs (fixed parameters carry their own sign).
    pub fn sign(&self, signs: &[i8]) -> i8 {
        let mut s = sign_of(&self.coeff);
        for (&p, &e) in signs.iter().zip(&self.exps) {
            if e % 2 == 1 {
                s *= p;
            }
        }
        s
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut out = format!("{}", self.coeff);
        for (n, &e) in names.iter().zip(&self.exps) {
            match e {
                0 => {}
                1 => out.push_str(&format!("*{n}")),
                _ => out.push_str(&format!("*{n}^{e}")),
            }
        }
        out
    }
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Σ cᵢ·zᵢz̄ᵢ > 0 for every nonzero z supported on `vars` and satisfying
/// `relations` linear equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityConstraint {
    pub label: String,
    pub vars: Vec<String>,
    pub terms: Vec<Monomial>,
    pub relations: usize,
    pub relation_text: Option<String>,
}

impl PositivityConstraint {
    pub fn full(label: &str, vars: &[&str], terms: Vec<Monomial>) -> Self {
        PositivityConstraint {
            label: label.to_string(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms,
            relations: 0,
            relation_text: None,
        }
    }

    pub fn restricted(label: &str, vars: &[&str], terms: Vec<Monomial>, relations: usize, text: &str) -> Self {
        PositivityConstraint { relations, relation_text: Some(text.to_string()), ..Self::full(label, vars, terms) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalPositivitySystem {
    pub name: String,
    pub params: Vec<Parameter>,
    pub constraints: Vec<PositivityConstraint>,
}

/// A term of one constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermRef {
    pub constraint: usize,
    pub term: usize,
}

/// Two terms whose positivity requirements can never hold together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContradictoryPair {
    pub first: TermRef,
    pub second: TermRef,
    pub first_text: String,
    pub second_text: String,
    /// Parameter whose sign the two terms decide in opposite ways.
    pub parameter: Option<String>,
    /// Sign of `parameter` required by each term.
    pub required_signs: Option<(i8, i8)>,
}

/// A sign pattern killed by one constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub pattern: Vec<(String, i8)>,
    pub constraint: usize,
    pub term: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    SignContradiction { pair: Option<ContradictoryPair>, violations: Vec<Violation> },
    ZeroWitness(ZeroWitness),
}

/// A parameter point at which every coefficient is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityWitness {
    pub point: Vec<(String, Rational)>,
    pub values: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Infeasible(Certificate),
    Feasible(FeasibilityWitness),
}

impl FeasibilityVerdict {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Infeasible(_))
    }

    pub fn status(&self) -> &'static str {
        if self.is_infeasible() {
            "INFEASIBLE"
        } else {
            "FEASIBLE"
        }
    }
}

impl DiagonalPositivitySystem {
    pub fn names(&self) -> Vec<String> {
        self.params.iter().map(|p| p.name.clone()).collect()
    }

    fn free(&self) -> Vec<usize> {
        (0..self.params.len()).filter(|&i| self.params[i].value.is_none()).collect()
    }

    /// All sign assignments of the parameters, free ones enumerated.
    pub fn sign_patterns(&self) -> Vec<Vec<i8>> {
        let free = self.free();
        (0..1u32 << free.len())
            .map(|mask| {
                self.params
                    .iter()
                    .enumerate()
                    .map(|(i, p)| match &p.value {
                        Some(v) => sign_of(v),
                        None => {
                            let k = free.iter().position(|&f| f == i).expect("free index");
                            if mask >> k & 1 == 1 {
                                -1
                            } else {
                                1
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn term_text(&self, t: TermRef) -> String {
        let c = &self.constraints[t.constraint];
        format!("{}: {}*|{}|^2 > 0", c.label, c.terms[t.term].format(&self.names()), c.vars[t.term])
    }

    fn format_pattern(&self, signs: &[i8]) -> Vec<(String, i8)> {
        self.free().into_iter().map(|i| (self.params[i].name.clone(), signs[i])).collect()
    }

    fn validate(&self) -> Result<(), PositivityError> {
        for p in &self.params {
            if p.value.as_ref().is_some_and(Zero::is_zero) {
                return Err(PositivityError::ZeroParameter(p.name.clone()));
            }
        }
        for c in &self.constraints {
            if c.vars.is_empty() || c.vars.len() <= c.relations || c.terms.len() != c.vars.len() {
                return Err(PositivityError::EmptySubspace(c.label.clone()));
            }
        }
        Ok(())
    }

    /// First violated term of constraint `ci` under `signs`, if any.
    fn violated(&self, ci: usize, signs: &[i8]) -> Result<Option<usize>, PositivityError> {
        let c = &self.constraints[ci];
        let s: Vec<i8> = c.terms.iter().map(|t| t.sign(signs)).collect();
        if c.relations == 0 {
            return Ok(s.iter().position(|&x| x <= 0));
        }
        if s.iter().all(|&x| x == s[0] && x != 0) {
            return Ok(if s[0] < 0 { Some(0) } else { None });
        }
        Err(PositivityError::Undecided {
            constraint: c.label.clone(),
            pattern: format!("{:?}", self.format_pattern(signs)),
        })
    }

    /// Every term's positivity is forced in every sign pattern.
    fn term_always_required(&self, ci: usize) -> bool {
        let c = &self.constraints[ci];
        c.relations == 0
            || self
                .sign_patterns()
                .iter()
                .all(|s| c.terms.iter().all(|t| t.sign(s) == c.terms[0].sign(s) && t.sign(s) != 0))
    }

    fn find_pair(&self) -> Option<ContradictoryPair> {
        let patterns = self.sign_patterns();
        let refs: Vec<TermRef> = (0..self.constraints.len())
            .filter(|&ci| self.term_always_required(ci))
            .flat_map(|ci| (0..self.constraints[ci].terms.len()).map(move |t| TermRef { constraint: ci, term: t }))
            .collect();
        let term = |r: &TermRef| &self.constraints[r.constraint].terms[r.term];
        for (i, a) in refs.iter().enumerate() {
            for b in &refs[i + 1..] {
                if patterns.iter().all(|s| term(a).sign(s) * term(b).sign(s) < 0) {
                    let free = self.free();
                    let param = free
                        .iter()
                        .copied()
                        .find(|&p| term(a).exps.get(p).is_some_and(|e| e % 2 == 1));
                    // the sign the parameter needs for a term to be positive,
                    // when it is the only free parameter of odd degree
                    let need = |t: &Monomial, p: usize| -> Option<i8> {
                        let odd: Vec<usize> = free.iter().copied().filter(|&q| t.exps[q] % 2 == 1).collect();
                        if odd != [p] {
                            return None;
                        }
                        let mut s = vec![1i8; self.params.len()];
                        for (i, prm) in self.params.iter().enumerate() {
                            if let Some(v) = &prm.value {
                                s[i] = sign_of(v);
                            }
                        }
                        Some(t.sign(&s))
                    };
                    let required_signs = param.and_then(|p| Some((need(term(a), p)?, need(term(b), p)?)));
                    return Some(ContradictoryPair {
                        first: *a,
                        second: *b,
                        first_text: self.term_text(*a),
                        second_text: self.term_text(*b),
                        parameter: param.filter(|_| required_signs.is_some()).map(|p| self.params[p].name.clone()),
                        required_signs,
                    });
                }
            }
        }
        None
    }
}

/// Decides whether some choice of parameter signs makes every constraint hold.
pub fn diagonal_feasibility(sys: &DiagonalPositivitySystem) -> Result<FeasibilityVerdict, PositivityError> {
    sys.validate()?;
    let mut violations = Vec::new();
    for signs in sys.sign_patterns() {
        let mut killed = None;
        for ci in 0..sys.constraints.len() {
            if let Some(t) = sys.violated(ci, &signs)? {
                killed = Some((ci, t));
                break;
            }
        }
        match killed {
            Some((constraint, term)) => {
                violations.push(Violation { pattern: sys.format_pattern(&signs), constraint, term })
            }
            None => {
                let point: Vec<Rational> = sys
                    .params
                    .iter()
                    .zip(&signs)
                    .map(|(p, &s)| p.value.clone().unwrap_or_else(|| int(s as i64)))
                    .collect();
                let values = sys
                    .constraints
                    .iter()
                    .map(|c| c.terms.iter().map(|t| t.evaluate(&point)).collect())
                    .collect();
                return Ok(FeasibilityVerdict::Feasible(FeasibilityWitness {
                    point: sys.names().into_iter().zip(point).collect(),
                    values,
                }));
            }
        }
    }
    Ok(FeasibilityVerdict::Infeasible(Certificate::SignContradiction { pair: sys.find_pair(), violations }))
}

/// Magnitudes substituted for free parameters when re-checking.
pub const RECHECK_MAGNITUDES: [(i64, i64); 4] = [(1, 7), (1, 1), (3, 1), (10, 1)];

/// Re-evaluates a sign certificate at sampled parameter points of every
/// pattern: the pair always has a nonpositive member, and every recorded
/// violation is a nonpositive term value.
pub fn recheck_certificate(sys: &DiagonalPositivitySystem, cert: &Certificate) -> bool {
    let Certificate::SignContradiction { pair, violations } = cert else {
        return false;
    };
    let free = sys.free();
    let patterns = sys.sign_patterns();
    if violations.len() != patterns.len() {
        return false;
    }
    let points = |signs: &[i8]| -> Vec<Vec<Rational>> {
        RECHECK_MAGNITUDES
            .iter()
            .map(|&(n, d)| {
                sys.params
                    .iter()
                    .zip(signs)
                    .map(|(p, &s)| p.value.clone().unwrap_or_else(|| rat(n * s as i64, d)))
                    .collect()
            })
            .collect()
    };
    let value = |r: TermRef, pt: &[Rational]| sys.constraints[r.constraint].terms[r.term].evaluate(pt);
    for signs in &patterns {
        for pt in points(signs) {
            if let Some(p) = pair {
                if value(p.first, &pt).is_positive() && value(p.second, &pt).is_positive() {
                    return false;
                }
            }
        }
    }
    for v in violations {
        let signs: Vec<i8> = (0..sys.params.len())
            .map(|i| match &sys.params[i].value {
                Some(x) => sign_of(x),
                None => v.pattern.iter().find(|(n, _)| *n == sys.params[i].name).map(|(_, s)| *s).unwrap_or(1),
            })
            .collect();
        if free.iter().any(|&i| !v.pattern.iter().any(|(n, _)| *n == sys.params[i].name)) {
            return false;
        }
        for pt in points(&signs) {
            if value(TermRef { constraint: v.constraint, term: v.term }, &pt).is_positive() {
                return false;
            }
        }
    }
    true
}

fn m(c: i64, exps: &[u32]) -> Monomial {
    Monomial::new(int(c), exps)
}

/// Quartic CM field, sl(2) form with a < 0; parameters M, N, λ.
pub fn deg4_imaginary_system() -> DiagonalPositivitySystem {
    DiagonalPositivitySystem {
        name: "deg4-imaginary".to_string(),
        params: vec![Parameter::free("M"), Parameter::free("N"), Parameter::free("lambda")],
        constraints: vec![
            PositivityConstraint::full("V_sigma", &["x1", "x-1"], vec![m(-2, &[1, 0, 0]), m(2, &[1, 0, 1])]),
            PositivityConstraint::full("V_tau", &["y1", "y-1"], vec![m(-2, &[0, 1, 0]), m(2, &[0, 1, 1])]),
            PositivityConstraint::full("V_taubar", &["y'1", "y'-1"], vec![m(-2, &[0, 1, 1]), m(2, &[0, 1, 0])]),
        ],
    }
}

fn lambda_powers(lambda: &Rational) -> [Rational; 4] {
    let l2 = lambda * lambda;
    let l3 = &l2 * lambda;
    [int(1), lambda.clone(), l2, l3]
}

/// Anti-Weil type, sl(2) form with a < 0 and λ < 0; parameter M.
pub fn antiweil_imaginary_system(lambda: &Rational) -> DiagonalPositivitySystem {
    let [_, l1, l2, l3] = lambda_powers(lambda);
    let mm = |c: Rational| Monomial::new(c, &[1]);
    DiagonalPositivitySystem {
        name: "antiweil-imaginary".to_string(),
        params: vec![Parameter::free("M")],
        constraints: vec![
            PositivityConstraint::restricted(
                "x-side",
                &["x0", "x1", "x2", "x3"],
                vec![mm(int(1)), mm(int(-3) * &l1), mm(int(12) * &l2), mm(int(-36) * &l3)],
                3,
                "dim V_sigma^{1,0} = 1",
            ),
            PositivityConstraint::restricted(
                "y-side",
                &["y0", "y1", "y2", "y3"],
                vec![mm(int(36) * &l3), mm(int(-12) * &l2), mm(int(3) * &l1), mm(int(-1))],
                1,
                "x0*y3 - 3*lambda*x1*y2 + 12*lambda^2*x2*y1 - 36*lambda^3*x3*y0 = 0",
            ),
        ],
    }
}

/// Anti-Weil type with λ > 0: the restrictions y₀ = y₂ = 0 and y₁ = y₃ = 0
/// of the y-side, each cut by one linear relation.
pub fn antiweil_lambda_positive_system(lambda: &Rational) -> DiagonalPositivitySystem {
    let [_, l1, l2, l3] = lambda_powers(lambda);
    let mm = |c: Rational| Monomial::new(c, &[1]);
    DiagonalPositivitySystem {
        name: "antiweil-imaginary".to_string(),
        params: vec![Parameter::free("M")],
        constraints: vec![
            PositivityConstraint::restricted(
                "y0=y2=0",
                &["y1", "y3"],
                vec![mm(int(-12) * &l2), mm(int(-1))],
                1,
                "x0*y3 + 12*lambda^2*x2*y1 = 0",
            ),
            PositivityConstraint::restricted(
                "y1=y3=0",
                &["y0", "y2"],
                vec![mm(int(36) * &l3), mm(int(3) * &l1)],
                1,
                "3*lambda*x1*y2 + 36*lambda^3*x3*y0 = 0",
            ),
        ],
    }
}

/// λ > 0 through the two restricted systems; λ < 0 through the full
/// diagonal system.
pub fn antiweil_lambda_positive(lambda: &Rational) -> Result<FeasibilityVerdict, PositivityError> {
    if lambda.is_zero() {
        return Err(PositivityError::ZeroParameter("lambda".to_string()));
    }
    if lambda.is_negative() {
        return diagonal_feasibility(&antiweil_imaginary_system(lambda));
    }
    diagonal_feasibility(&antiweil_lambda_positive_system(lambda))
}

/// The Gaussian field Q(√−1).
pub fn gaussian_field() -> MultiQuadField {
    MultiQuadField::new(&[-1]).expect("Q(sqrt(-1))")
}

pub fn gaussian(field: &MultiQuadField, re: Rational, im: Rational) -> FieldElement {
    field.from_rational(re).add(&field.sqrt_gen(0).scale(&im))
}

fn conj(z: &FieldElement) -> FieldElement {
    z.field().complex_conjugation().apply(z)
}

/// z ↦ Σ zᵢ·Hᵢⱼ·z̄ⱼ up to a nonzero scalar recorded as text.
#[derive(Debug, Clone, PartialEq)]
pub struct SesquilinearShape {
    pub label: String,
    pub scalar: String,
    pub vars: Vec<String>,
    pub matrix: ExactMatrix,
}

impl SesquilinearShape {
    pub fn value(&self, z: &[FieldElement]) -> FieldElement {
        let zb: Vec<FieldElement> = z.iter().map(conj).collect();
        let hz = self.matrix.mul_vec(&zb);
        z.iter().zip(&hz).fold(self.matrix.zero_elem().clone(), |acc, (a, b)| acc.add(&a.mul(b)))
    }
}

/// A nonzero vector, inside any stated subspace, where a form required to be
/// positive takes the value 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroWitness {
    pub form: String,
    pub vars: Vec<String>,
    pub vector: Vec<String>,
    pub value: String,
    pub relation: Option<String>,
}

/// The shape −2M′(x₁x̄₋₁ − x₋₁x̄₁) on (x₁, x₋₁).
pub fn deg4_real_shape() -> SesquilinearShape {
    let f = gaussian_field();
    let matrix = Matrix::from_rows(vec![vec![f.zero(), f.from_int(-2)], vec![f.from_int(2), f.zero()]], &f.zero());
    SesquilinearShape {
        label: "-2M'(x1*conj(x-1) - x-1*conj(x1))".to_string(),
        scalar: "M'".to_string(),
        vars: vec!["x1".to_string(), "x-1".to_string()],
        matrix,
    }
}

/// A real nonzero vector where the form vanishes: the all-ones vector, then
/// unit vectors, then the box [−2,2]ⁿ. `None` when nothing in that range works.
pub fn zero_witness_real_case(shape: &SesquilinearShape) -> Option<Vec<Rational>> {
    let n = shape.vars.len();
    let f = shape.matrix.zero_elem().field().clone();
    let test = |v: &[i64]| -> bool {
        let z: Vec<FieldElement> = v.iter().map(|&c| f.from_int(c)).collect();
        v.iter().any(|&c| c != 0) && shape.value(&z).is_zero()
    };
    let mut candidates: Vec<Vec<i64>> = vec![vec![1; n]];
    candidates.extend((0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()));
    let mut v = vec![-2i64; n];
    loop {
        candidates.push(v.clone());
        let mut k = 0;
        while k < n && v[k] == 2 {
            v[k] = -2;
            k += 1;
        }
        if k == n {
            break;
        }
        v[k] += 1;
    }
    candidates.into_iter().find(|v| test(v)).map(|v| v.into_iter().map(int).collect())
}

/// The y-side shape 2M′(y₀ȳ₃ − y₁ȳ₂ + y₂ȳ₁ − y₃ȳ₀) for sl(2) forms with a > 0.
pub fn antiweil_real_shape() -> SesquilinearShape {
    let f = gaussian_field();
    let mut h = ExactMatrix::field_zeros(4, 4, &f);
    for (i, j, c) in [(0, 3, 2), (1, 2, -2), (2, 1, 2), (3, 0, -2)] {
        h.set(i, j, f.from_int(c));
    }
    SesquilinearShape {
        label: "2M'(y0*conj(y3) - y1*conj(y2) + y2*conj(y1) - y3*conj(y0))".to_string(),
        scalar: "M'".to_string(),
        vars: (0..4).map(|i| format!("y{i}")).collect(),
        matrix: h,
    }
}

/// y = (0, 0, y₂, y₃) with x₀y₃ − x₁y₂ = 0; it lies in V_σ̄^{1,0} and the
/// y-side form vanishes on it.
pub fn antiweil_real_witness(x: &[FieldElement]) -> Result<Vec<FieldElement>, PositivityError> {
    if x.len() != 4 {
        return Err(PositivityError::Arith(ArithError::DimensionMismatch("x must have 4 entries")));
    }
    let f = x[0].field().clone();
    let (y2, y3) = if x[0].is_zero() && x[1].is_zero() { (f.one(), f.zero()) } else { (x[0].clone(), x[1].clone()) };
    Ok(vec![f.zero(), f.zero(), y2, y3])
}

/// x₀y₃ − x₁y₂ + x₂y₁ − x₃y₀.
pub fn antiweil_real_relation(x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    x[0].mul(&y[3]).sub(&x[1].mul(&y[2])).add(&x[2].mul(&y[1])).sub(&x[3].mul(&y[0]))
}

/// Hermitian form of dimension at most 4 over a field stable under complex
/// conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    pub gram: ExactMatrix,
}

impl HermitianForm {
    pub fn new(gram: ExactMatrix) -> Result<Self, PositivityError> {
        let n = gram.rows();
        if !gram.is_square() || n == 0 || n > 4 {
            return Err(PositivityError::Arith(ArithError::DimensionMismatch("Hermitian forms have size 1..4")));
        }
        let ok = (0..n).all(|i| (0..n).all(|j| *gram.get(j, i) == conj(gram.get(i, j))));
        if !ok {
            return Err(PositivityError::NotHermitian);
        }
        Ok(HermitianForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn value(&self, z: &[FieldElement]) -> FieldElement {
        let zb: Vec<FieldElement> = z.iter().map(conj).collect();
        let gz = self.gram.mul_vec(&zb);
        z.iter().zip(&gz).fold(self.gram.zero_elem().clone(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn leading_minors(&self) -> Vec<FieldElement> {
        (1..=self.dim())
            .map(|k| {
                let rows = (0..k).map(|i| self.gram.row(i)[..k].to_vec()).collect();
                Matrix::from_rows(rows, self.gram.zero_elem()).det()
            })
            .collect()
    }

    /// Sylvester's criterion, with signs taken in the designated real embedding.
    pub fn is_positive_definite(&self) -> Result<bool, PositivityError> {
        for d in self.leading_minors() {
            if d.real_sign()? <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Complex value of a field element under the embedding √d ↦ √d (d > 0),
/// √d ↦ i√|d| (d < 0).
pub fn to_complex(e: &FieldElement) -> Complex64 {
    let gens = e.field().generators().to_vec();
    let mut out = Complex64::new(0.0, 0.0);
    for (mask, c) in e.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut b = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for (i, &d) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let r = Float::sqrt((d.unsigned_abs()) as f64);
                b *= if d > 0 { Complex64::new(r, 0.0) } else { Complex64::new(0.0, r) };
            }
        }
        out += b;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub samples: usize,
    pub positive: usize,
    pub min_value: f64,
}

impl SampleReport {
    pub fn all_positive(&self) -> bool {
        self.samples > 0 && self.positive == self.samples
    }
}

/// Floating-point values of the form at random complex vectors.
pub fn sample_form<R: Rng>(form: &HermitianForm, samples: usize, rng: &mut R) -> SampleReport {
    let n = form.dim();
    let g: Vec<Vec<Complex64>> = (0..n).map(|i| form.gram.row(i).iter().map(to_complex).collect()).collect();
    let mut positive = 0;
    let mut min_value = f64::INFINITY;
    for _ in 0..samples {
        let z: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let mut v = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                v += z[i] * g[i][j] * z[j].conj();
            }
        }
        if v.re > 0.0 {
            positive += 1;
        }
        min_value = min_value.min(v.re);
    }
    SampleReport { samples, positive, min_value }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyVerdict {
    /// S(x) < 0 and the induced form is positive definite.
    Polarized,
    NotInFamily,
    /// S(x) < 0 but the induced form is not positive definite.
    Violation,
}

impl fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyVerdict::Polarized => "POLARIZED",
            FamilyVerdict::NotInFamily => "NOT_IN_FAMILY",
            FamilyVerdict::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilFamilyReport {
    pub x: Vec<FieldElement>,
    /// S(x) = x₀x̄₃ + x₁x̄₁ + x₂x̄₂ + x₃x̄₀.
    pub s_value: Rational,
    pub in_family: bool,
    /// Basis of {y : x₀y₃ − x₁y₂ − x₂y₁ + x₃y₀ = 0}.
    pub subspace: Vec<Vec<FieldElement>>,
    /// y₀ȳ₃ + y₁ȳ₁ + y₂ȳ₂ + y₃ȳ₀ on `subspace`.
    pub induced: HermitianForm,
    pub minors: Vec<Rational>,
    pub positive_definite: bool,
    /// (x₁x̄₁ + x₂x̄₂)(x₀x̄₃ + x₂x̄₂ + x₃x̄₀), when x₁ ≠ 0.
    pub discriminant: Option<Rational>,
    /// (x₁x̄₁ + x₂x̄₂)·S(x).
    pub discriminant_full: Rational,
    pub verdict: FamilyVerdict,
}

fn real_value(e: &FieldElement) -> Result<Rational, PositivityError> {
    e.to_rational().ok_or_else(|| PositivityError::NotReal(e.to_string()))
}

/// x₀ȳ₃ + x₁ȳ₁ + x₂ȳ₂ + x₃ȳ₀ as a Gram matrix.
fn family_gram(f: &MultiQuadField) -> ExactMatrix {
    let mut h = ExactMatrix::field_zeros(4, 4, f);
    for (i, j) in [(0, 3), (1, 1), (2, 2), (3, 0)] {
        h.set(i, j, f.one());
    }
    h
}

pub fn weil_family_check(x: &[FieldElement]) -> Result<WeilFamilyReport, PositivityError> {
    if x.len() != 4 {
        return Err(PositivityError::Arith(ArithError::DimensionMismatch("x must have 4 entries")));
    }
    if x.iter().all(FieldElement::is_zero) {
        return Err(PositivityError::ZeroVector);
    }
    let f = x[0].field().clone();
    let h = family_gram(&f);
    let outer = |a: &[FieldElement], b: &[FieldElement]| -> FieldElement {
        let bb: Vec<FieldElement> = b.iter().map(conj).collect();
        let hb = h.mul_vec(&bb);
        a.iter().zip(&hb).fold(f.zero(), |acc, (p, q)| acc.add(&p.mul(q)))
    };
    let s_value = real_value(&outer(x, x))?;
    let row = vec![x[3].clone(), x[2].neg(), x[1].neg(), x[0].clone()];
    let subspace = Matrix::from_rows(vec![row], &f.zero()).kernel();
    let k = subspace.len();
    let mut g = ExactMatrix::field_zeros(k, k, &f);
    for i in 0..k {
        for j in 0..k {
            g.set(i, j, outer(&subspace[i], &subspace[j]));
        }
    }
    let induced = HermitianForm::new(g)?;
    let minors = induced.leading_minors().iter().map(real_value).collect::<Result<Vec<_>, _>>()?;
    let positive_definite = minors.iter().all(Signed::is_positive);
    let n1 = real_value(&x[1].mul(&conj(&x[1])))?;
    let n2 = real_value(&x[2].mul(&conj(&x[2])))?;
    let cross = real_value(&x[0].mul(&conj(&x[3])).add(&x[3].mul(&conj(&x[0]))))?;
    let discriminant = (!x[1].is_zero()).then(|| (&n1 + &n2) * (&cross + &n2));
    let discriminant_full = (&n1 + &n2) * &s_value;
    let in_family = s_value.is_negative();
    let verdict = match (in_family, positive_definite) {
        (false, _) => FamilyVerdict::NotInFamily,
        (true, true) => FamilyVerdict::Polarized,
        (true, false) => FamilyVerdict::Violation,
    };
    Ok(WeilFamilyReport {
        x: x.to_vec(),
        s_value,
        in_family,
        subspace,
        induced,
        minors,
        positive_definite,
        discriminant,
        discriminant_full,
        verdict,
    })
}

/// Gaussian rational vector from (re, im) pairs.
pub fn gaussian_vector(parts: &[(Rational, Rational)]) -> Vec<FieldElement> {
    let f = gaussian_field();
    parts.iter().map(|(a, b)| gaussian(&f, a.clone(), b.clone())).collect()
}

pub const CASES: [&str; 5] = ["deg4-imaginary", "deg4-real", "antiweil-imaginary", "antiweil-real", "weil-family"];

/// Outcome of one named case.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseOutcome {
    Feasibility { system: Option<DiagonalPositivitySystem>, verdict: FeasibilityVerdict, rechecked: bool },
    Family(WeilFamilyReport),
}

impl CaseOutcome {
    /// INFEASIBLE for refuted systems; the family verdict otherwise.
    pub fn status(&self) -> String {
        match self {
            CaseOutcome::Feasibility { verdict, .. } => verdict.status().to_string(),
            CaseOutcome::Family(r) => r.verdict.to_string(),
        }
    }
}

fn format_vector(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

fn deg4_real_outcome() -> CaseOutcome {
    let shape = deg4_real_shape();
    let f = shape.matrix.zero_elem().field().clone();
    let verdict = match zero_witness_real_case(&shape) {
        Some(v) => {
            let z: Vec<FieldElement> = v.iter().map(|q| f.from_rational(q.clone())).collect();
            FeasibilityVerdict::Infeasible(Certificate::ZeroWitness(ZeroWitness {
                form: shape.label.clone(),
                vars: shape.vars.clone(),
                vector: format_vector(&z),
                value: shape.value(&z).to_string(),
                relation: None,
            }))
        }
        None => FeasibilityVerdict::Feasible(FeasibilityWitness { point: Vec::new(), values: Vec::new() }),
    };
    let rechecked = verdict.is_infeasible();
    CaseOutcome::Feasibility { system: None, verdict, rechecked }
}

fn antiweil_real_outcome(x: &[FieldElement]) -> Result<CaseOutcome, PositivityError> {
    let shape = antiweil_real_shape();
    let y = antiweil_real_witness(x)?;
    let value = shape.value(&y);
    let relation = antiweil_real_relation(x, &y);
    let rechecked = value.is_zero() && relation.is_zero() && y.iter().any(|c| !c.is_zero());
    let verdict = FeasibilityVerdict::Infeasible(Certificate::ZeroWitness(ZeroWitness {
        form: shape.label.clone(),
        vars: shape.vars.clone(),
        vector: format_vector(&y),
        value: value.to_string(),
        relation: Some(format!("x0*y3 - x1*y2 + x2*y1 - x3*y0 = {relation} with x = ({})", format_vector(x).join(", "))),
    }));
    Ok(CaseOutcome::Feasibility { system: None, verdict, rechecked })
}

/// Default x for the anti-Weil real case and the family check.
pub fn default_x() -> Vec<FieldElement> {
    gaussian_vector(&[(int(1), int(0)), (int(0), int(0)), (int(0), int(0)), (int(-1), int(0))])
}

/// Runs a named case with optional λ and x overrides.
pub fn run_case(
    name: &str,
    lambda: Option<Rational>,
    x: Option<Vec<FieldElement>>,
) -> Result<CaseOutcome, PositivityError> {
    let x = x.unwrap_or_else(default_x);
    match name {
        "deg4-imaginary" => {
            let sys = deg4_imaginary_system();
            let verdict = diagonal_feasibility(&sys)?;
            let rechecked = matches!(&verdict, FeasibilityVerdict::Infeasible(c) if recheck_certificate(&sys, c));
            Ok(CaseOutcome::Feasibility { system: Some(sys), verdict, rechecked })
        }
        "deg4-real" => Ok(deg4_real_outcome()),
        "antiweil-imaginary" => {
            let lambda = lambda.unwrap_or_else(|| int(-1));
            if lambda.is_zero() {
                return Err(PositivityError::ZeroParameter("lambda".to_string()));
            }
            let sys = if lambda.is_negative() {
                antiweil_imaginary_system(&lambda)
            } else {
                antiweil_lambda_positive_system(&lambda)
            };
            let verdict = diagonal_feasibility(&sys)?;
            let rechecked = matches!(&verdict, FeasibilityVerdict::Infeasible(c) if recheck_certificate(&sys, c));
            Ok(CaseOutcome::Feasibility { system: Some(sys), verdict, rechecked })
        }
        "antiweil-real" => antiweil_real_outcome(&x),
        "weil-family" => Ok(CaseOutcome::Family(weil_family_check(&x)?)),
        other => Err(PositivityError::UnknownCase(other.to_string())),
    }
}
