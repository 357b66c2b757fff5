//! Small Lie algebra representations: Weyl dimension counts, explicit
//! weight modules for sl(2), sl(2)×sl(2), sp(4) and sl(4), invariant
//! tensors, and index-set identities for Weil structures.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::arith::{int, ArithError, QMatrix, Rational};
use crate::lattice::primitive;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("{algebra} expects {expected} weight coordinates, got {got}")]
    WrongRank { algebra: &'static str, expected: usize, got: usize },
    #[error("generator sets differ")]
    IncompatibleGenerators,
    #[error("bracket identity fails: {0}")]
    Bracket(String),
    #[error("no explicit module for {0}")]
    Unsupported(String),
    #[error("block dimensions must be equal and positive: {0:?}")]
    BlockDims(Vec<usize>),
    #[error("degrees must satisfy deg_k | deg_K | dim_V: ({0}, {1}, {2})")]
    Divisibility(usize, usize, usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Semisimple types that can act faithfully on a 4-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraType {
    A1,
    A2,
    B2,
    G2,
    A1xA1,
    A3,
}

impl AlgebraType {
    pub const ALL: [AlgebraType; 6] = [
        AlgebraType::A1,
        AlgebraType::A1xA1,
        AlgebraType::A2,
        AlgebraType::B2,
        AlgebraType::G2,
        AlgebraType::A3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraType::A1 => "A1",
            AlgebraType::A2 => "A2",
            AlgebraType::B2 => "B2",
            AlgebraType::G2 => "G2",
            AlgebraType::A1xA1 => "A1xA1",
            AlgebraType::A3 => "A3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// Number of highest-weight coordinates.
    pub fn rank(self) -> usize {
        match self {
            AlgebraType::A1 => 1,
            AlgebraType::A3 => 3,
            _ => 2,
        }
    }

    pub fn lie_dim(self) -> usize {
        match self {
            AlgebraType::A1 => a_dim(1),
            AlgebraType::A2 => a_dim(2),
            AlgebraType::A3 => a_dim(3),
            AlgebraType::B2 => bc_dim(2),
            AlgebraType::G2 => 14,
            AlgebraType::A1xA1 => 2 * a_dim(1),
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// dim A_l = l² + 2l.
pub fn a_dim(l: usize) -> usize {
    l * l + 2 * l
}

/// dim B_l = dim C_l = 2l² + l.
pub fn bc_dim(l: usize) -> usize {
    2 * l * l + l
}

/// dim D_l = 2l² − l.
pub fn d_dim(l: usize) -> usize {
    2 * l * l - l
}

/// Dimension of the irreducible module with highest weight `w` in the
/// fundamental-weight basis. B2 has α₂ short, G2 has α₁ short.
pub fn weyl_dim(t: AlgebraType, w: &[u64]) -> Result<u128, LieError> {
    if w.len() != t.rank() {
        return Err(LieError::WrongRank { algebra: t.name(), expected: t.rank(), got: w.len() });
    }
    let m: Vec<u128> = w.iter().map(|&x| x as u128).collect();
    Ok(match t {
        AlgebraType::A1 => m[0] + 1,
        AlgebraType::A1xA1 => (m[0] + 1) * (m[1] + 1),
        AlgebraType::A2 => (m[0] + 1) * (m[1] + 1) * (m[0] + m[1] + 2) / 2,
        AlgebraType::B2 => (m[0] + 1) * (m[1] + 1) * (m[0] + m[1] + 2) * (2 * m[0] + m[1] + 3) / 6,
        AlgebraType::G2 => {
            (m[0] + 1)
                * (m[1] + 1)
                * (m[0] + m[1] + 2)
                * (m[0] + 2 * m[1] + 3)
                * (m[0] + 3 * m[1] + 4)
                * (2 * m[0] + 3 * m[1] + 5)
                / 120
        }
        AlgebraType::A3 => {
            (m[0] + 1)
                * (m[1] + 1)
                * (m[2] + 1)
                * (m[0] + m[1] + 2)
                * (m[1] + m[2] + 2)
                * (m[0] + m[1] + m[2] + 3)
                / 12
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSearchResult {
    pub algebra_type: AlgebraType,
    pub target: u64,
    pub solutions: Vec<Vec<u64>>,
}

/// Every integral dominant weight of dimension `target`. Coordinates are
/// bounded by `target` since the dimension is strictly increasing in each.
pub fn search_dim(t: AlgebraType, target: u64) -> DimensionSearchResult {
    let r = t.rank();
    let mut solutions = Vec::new();
    let mut w = vec![0u64; r];
    loop {
        if weyl_dim(t, &w).expect("rank matches") == target as u128 {
            solutions.push(w.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                return DimensionSearchResult { algebra_type: t, target, solutions };
            }
            w[i] += 1;
            if w[i] <= target {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// A finite-dimensional module over Q given by the matrices of a spanning set
/// of the acting Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightModule {
    pub name: String,
    pub labels: Vec<String>,
    pub generators: Vec<(String, QMatrix)>,
    /// (h, x, y) generator indices of each sl(2) factor.
    pub sl2_factors: Vec<[usize; 3]>,
}

impl WeightModule {
    /// Builds a module and checks its bracket identities.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        generators: Vec<(String, QMatrix)>,
        sl2_factors: Vec<[usize; 3]>,
    ) -> Result<Self, LieError> {
        let m = WeightModule { name: name.into(), labels, generators, sl2_factors };
        m.verify_brackets()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn action(&self, name: &str) -> Option<&QMatrix> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// sl(2) relations per factor, commuting factors, and closure of the
    /// span of the action matrices under brackets.
    pub fn verify_brackets(&self) -> Result<(), LieError> {
        let n = self.dim();
        for (g, m) in &self.generators {
            if m.rows() != n || m.cols() != n {
                return Err(LieError::Bracket(format!("{g} is not {n}x{n}")));
            }
        }
        let mat = |i: usize| &self.generators[i].1;
        for (k, &[h, x, y]) in self.sl2_factors.iter().enumerate() {
            if mat(h).bracket(mat(x)) != mat(x).scale(&int(2)) {
                return Err(LieError::Bracket(format!("[h,x] = 2x in factor {k}")));
            }
            if mat(h).bracket(mat(y)) != mat(y).scale(&int(-2)) {
                return Err(LieError::Bracket(format!("[h,y] = -2y in factor {k}")));
            }
            if mat(x).bracket(mat(y)) != *mat(h) {
                return Err(LieError::Bracket(format!("[x,y] = h in factor {k}")));
            }
        }
        for (a, fa) in self.sl2_factors.iter().enumerate() {
            for fb in &self.sl2_factors[a + 1..] {
                for &i in fa {
                    for &j in fb {
                        if !mat(i).bracket(mat(j)).is_zero() {
                            return Err(LieError::Bracket(format!(
                                "{} and {} commute",
                                self.generators[i].0, self.generators[j].0
                            )));
                        }
                    }
                }
            }
        }
        let span = self.flattened();
        let r = QMatrix::rank_of(&span, &int(0));
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let b = flatten(&mat(i).bracket(mat(j)));
                let mut ext = span.clone();
                ext.push(b);
                if QMatrix::rank_of(&ext, &int(0)) != r {
                    return Err(LieError::Bracket(format!(
                        "[{}, {}] leaves the span",
                        self.generators[i].0, self.generators[j].0
                    )));
                }
            }
        }
        Ok(())
    }

    fn flattened(&self) -> Vec<Vec<Rational>> {
        self.generators.iter().map(|(_, m)| flatten(m)).collect()
    }

    /// Dimension of the image of the acting algebra in gl(V).
    pub fn image_dim(&self) -> usize {
        QMatrix::rank_of(&self.flattened(), &int(0))
    }

    /// Whether the acting algebra, of dimension `lie_dim` and spanned by the
    /// generators, has zero kernel.
    pub fn is_faithful(&self, lie_dim: usize) -> bool {
        self.image_dim() == lie_dim
    }

    /// Whether both modules have the same image subalgebra of gl(V).
    pub fn same_image(&self, other: &WeightModule) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let a = self.flattened();
        let mut both = a.clone();
        both.extend(other.flattened());
        let r = QMatrix::rank_of(&both, &int(0));
        r == QMatrix::rank_of(&a, &int(0)) && r == other.image_dim()
    }

    /// Renders a coordinate vector as a combination of basis labels.
    pub fn format_vector(&self, v: &[Rational]) -> String {
        let mut out = String::new();
        for (c, l) in v.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a} "));
            }
            out.push_str(l);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn flatten(m: &QMatrix) -> Vec<Rational> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend(m.row(i));
    }
    v
}

/// V(m): basis v₀..v_m with h·vᵢ = (m−2i)vᵢ, y·vᵢ = (i+1)vᵢ₊₁,
/// x·vᵢ = (m−i+1)vᵢ₋₁.
pub fn sl2_irrep(m: usize) -> WeightModule {
    let n = m + 1;
    let mut h = QMatrix::q_zeros(n, n);
    let mut x = QMatrix::q_zeros(n, n);
    let mut y = QMatrix::q_zeros(n, n);
    for i in 0..n {
        h.set(i, i, int(m as i64 - 2 * i as i64));
        if i + 1 < n {
            y.set(i + 1, i, int(i as i64 + 1));
        }
        if i > 0 {
            x.set(i - 1, i, int((m - i + 1) as i64));
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let gens = vec![("h".to_string(), h), ("x".to_string(), x), ("y".to_string(), y)];
    WeightModule::new(format!("V({m})"), labels, gens, vec![[0, 1, 2]])
        .expect("sl(2) irreducible satisfies its relations")
}

/// Diagonal action l·(v⊗w) = (l·v)⊗w + v⊗(l·w). Basis index i·dim(b) + j.
pub fn tensor_module(a: &WeightModule, b: &WeightModule) -> Result<WeightModule, LieError> {
    if a.generator_names() != b.generator_names() || a.sl2_factors != b.sl2_factors {
        return Err(LieError::IncompatibleGenerators);
    }
    let ia = QMatrix::q_identity(a.dim());
    let ib = QMatrix::q_identity(b.dim());
    let gens = a
        .generators
        .iter()
        .zip(&b.generators)
        .map(|((n, ma), (_, mb))| (n.clone(), ma.kron(&ib).add(&ia.kron(mb))))
        .collect();
    let labels = pair_labels(a, b, "⊗");
    WeightModule::new(format!("{}⊗{}", a.name, b.name), labels, gens, a.sl2_factors.clone())
}

/// External product of modules over two algebras: generators of `a` act as
/// `(g,0)`, those of `b` as `(0,g)`.
pub fn box_module(a: &WeightModule, b: &WeightModule) -> Result<WeightModule, LieError> {
    let ia = QMatrix::q_identity(a.dim());
    let ib = QMatrix::q_identity(b.dim());
    let mut gens: Vec<(String, QMatrix)> =
        a.generators.iter().map(|(n, m)| (format!("({n},0)"), m.kron(&ib))).collect();
    gens.extend(b.generators.iter().map(|(n, m)| (format!("(0,{n})"), ia.kron(m))));
    let off = a.generators.len();
    let mut factors = a.sl2_factors.clone();
    factors.extend(b.sl2_factors.iter().map(|f| f.map(|i| i + off)));
    let labels = pair_labels(a, b, "⊠");
    WeightModule::new(format!("{}⊠{}", a.name, b.name), labels, gens, factors)
}

/// Dual module, acting by the negative transpose.
pub fn dual_module(a: &WeightModule) -> WeightModule {
    let gens = a.generators.iter().map(|(n, m)| (n.clone(), m.transpose().neg())).collect();
    let labels = a.labels.iter().map(|l| format!("{l}*")).collect();
    WeightModule::new(format!("{}*", a.name), labels, gens, a.sl2_factors.clone())
        .expect("dual of a module is a module")
}

/// End(V) = V ⊗ V*.
pub fn end_module(a: &WeightModule) -> Result<WeightModule, LieError> {
    let m = tensor_module(a, &dual_module(a))?;
    Ok(WeightModule { name: format!("End({})", a.name), ..m })
}

/// ∧²V with basis eᵢ∧eⱼ, i < j, in lexicographic order.
pub fn wedge2_module(a: &WeightModule) -> Result<WeightModule, LieError> {
    let n = a.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let d = pairs.len();
    let mut gens = Vec::new();
    for (name, m) in &a.generators {
        let mut w = QMatrix::q_zeros(d, d);
        for (col, &(i, j)) in pairs.iter().enumerate() {
            // l·(eᵢ∧eⱼ) = Σₖ m[k,i] eₖ∧eⱼ + Σₖ m[k,j] eᵢ∧eₖ
            for k in 0..n {
                let c = m.get(k, i);
                if !c.is_zero() && k != j {
                    let (row, s) = if k < j { (index(k, j), 1) } else { (index(j, k), -1) };
                    let v = w.get(row, col) + c * int(s);
                    w.set(row, col, v);
                }
                let c = m.get(k, j);
                if !c.is_zero() && k != i {
                    let (row, s) = if i < k { (index(i, k), 1) } else { (index(k, i), -1) };
                    let v = w.get(row, col) + c * int(s);
                    w.set(row, col, v);
                }
            }
        }
        gens.push((name.clone(), w));
    }
    let labels = pairs.iter().map(|&(i, j)| format!("{}∧{}", a.labels[i], a.labels[j])).collect();
    WeightModule::new(format!("∧²{}", a.name), labels, gens, a.sl2_factors.clone())
}

fn pair_labels(a: &WeightModule, b: &WeightModule, sep: &str) -> Vec<String> {
    a.labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("{x}{sep}{y}")))
        .collect()
}

/// The symplectic matrix s with s₁₃ = s₂₄ = 1, s₃₁ = s₄₂ = −1.
pub fn symplectic_s() -> QMatrix {
    QMatrix::from_ints(&[
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![-1, 0, 0, 0],
        vec![0, -1, 0, 0],
    ])
}

/// Standard module of sp(4) = {x : xᵗs + sx = 0}, with a basis found by
/// solving the defining linear system.
pub fn sp4_standard() -> WeightModule {
    let s = symplectic_s();
    // coefficient of x_kl in (xᵗs + sx)_ij
    let mut rows = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let mut row = vec![int(0); 16];
            for k in 0..4 {
                row[k * 4 + i] += s.get(k, j);
                row[k * 4 + j] += s.get(i, k);
            }
            rows.push(row);
        }
    }
    let basis = QMatrix::from_rows(rows, &int(0)).kernel();
    let gens = basis
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let m = QMatrix::from_rows((0..4).map(|r| v[r * 4..r * 4 + 4].to_vec()).collect(), &int(0));
            (format!("b{n}"), m)
        })
        .collect();
    let labels = (1..=4).map(|i| format!("e{i}")).collect();
    WeightModule::new("sp4", labels, gens, vec![]).expect("sp(4) is closed under brackets")
}

/// Standard module of sl(n): Eᵢⱼ for i ≠ j and Eᵢᵢ − Eᵢ₊₁ᵢ₊₁.
pub fn sl_standard(n: usize) -> WeightModule {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = QMatrix::q_zeros(n, n);
                m.set(i, j, int(1));
                gens.push((format!("E{}{}", i + 1, j + 1), m));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut m = QMatrix::q_zeros(n, n);
        m.set(i, i, int(1));
        m.set(i + 1, i + 1, int(-1));
        gens.push((format!("H{}", i + 1), m));
    }
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    WeightModule::new(format!("sl{n}"), labels, gens, vec![]).expect("sl(n) is closed under brackets")
}

/// Basis of the vectors killed by every generator, each scaled to a
/// primitive integer vector with positive leading entry and re-checked.
pub fn invariant_space(w: &WeightModule) -> Vec<Vec<Rational>> {
    let n = w.dim();
    if w.generators.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
    }
    let stacked = w
        .generators
        .iter()
        .skip(1)
        .fold(w.generators[0].1.clone(), |acc, (_, m)| acc.vstack(m));
    let basis: Vec<Vec<Rational>> = stacked
        .kernel()
        .into_iter()
        .map(|v| {
            let mut p: Vec<Rational> = primitive(&v).into_iter().map(Rational::from_integer).collect();
            if p.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
                p.iter_mut().for_each(|c| *c = -c.clone());
            }
            p
        })
        .collect();
    for v in &basis {
        assert!(is_invariant(w, v), "kernel vector is not invariant");
    }
    basis
}

/// Whether every generator annihilates `v`.
pub fn is_invariant(w: &WeightModule, v: &[Rational]) -> bool {
    w.generators.iter().all(|(_, m)| m.mul_vec(v).iter().all(Zero::is_zero))
}

/// Whether `v` is a rational multiple of a vector in `basis` span.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let r = QMatrix::rank_of(basis, &int(0));
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    QMatrix::rank_of(&ext, &int(0)) == r
}

/// One of the three explicit invariant tensors.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub module: String,
    pub module_dim: usize,
    pub invariant_dim: usize,
    pub expected: Vec<Rational>,
    pub expected_text: String,
    pub in_invariant_space: bool,
    pub annihilated: bool,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.in_invariant_space && self.annihilated
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn check_invariant(name: &'static str, w: &WeightModule, expected: Vec<Rational>) -> InvariantCheck {
    let inv = invariant_space(w);
    InvariantCheck {
        name,
        module: w.name.clone(),
        module_dim: w.dim(),
        invariant_dim: inv.len(),
        expected_text: w.format_vector(&expected),
        in_invariant_space: in_span(&inv, &expected),
        annihilated: is_invariant(w, &expected),
        expected,
    }
}

/// 3v₀∧v₃ − v₁∧v₂ in ∧²V(3); the symmetric tensor in (V(1)⊠V(1))^⊗2;
/// e₁∧e₃ + e₂∧e₄ in ∧² of the sp(4) standard module.
pub fn named_invariants() -> Result<Vec<InvariantCheck>, LieError> {
    let w3 = wedge2_module(&sl2_irrep(3))?;
    // basis (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    let a = check_invariant("wedge2_V3", &w3, ints(&[0, 0, 3, -1, 0, 0]));

    let v1 = sl2_irrep(1);
    let b = box_module(&v1, &v1)?;
    let bb = tensor_module(&b, &b)?;
    // v₁₁ = 0, v₁,₋₁ = 1, v₋₁,₁ = 2, v₋₁,₋₁ = 3
    let mut t = vec![int(0); 16];
    t[3] = int(1);
    t[3 * 4] = int(1);
    t[4 + 2] = int(-1);
    t[2 * 4 + 1] = int(-1);
    let b_check = check_invariant("sl2xsl2_symmetric", &bb, t);

    let ws = wedge2_module(&sp4_standard())?;
    let c = check_invariant("wedge2_sp4", &ws, ints(&[0, 1, 0, 0, 1, 0]));
    Ok(vec![a, b_check, c])
}

/// One faithful irreducible 4-dimensional module.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim4Rep {
    pub algebra: AlgebraType,
    pub highest_weight: Vec<u64>,
    pub description: String,
    pub module: WeightModule,
}

/// Outcome of the dimension-4 classification.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim4Classification {
    /// Types with dimension at most dim sl(4) = 15, with their dimensions.
    pub candidates: Vec<(String, usize)>,
    /// Types ruled out, with the reason.
    pub excluded: Vec<(String, String)>,
    pub searches: Vec<DimensionSearchResult>,
    pub reps: Vec<Dim4Rep>,
}

/// Explicit module for a highest weight, where one is available.
pub fn module_for(t: AlgebraType, w: &[u64]) -> Result<WeightModule, LieError> {
    weyl_dim(t, w)?;
    match (t, w) {
        (AlgebraType::A1, [m]) => Ok(sl2_irrep(*m as usize)),
        (AlgebraType::A1xA1, [a, b]) => box_module(&sl2_irrep(*a as usize), &sl2_irrep(*b as usize)),
        (AlgebraType::B2, [0, 1]) => Ok(sp4_standard()),
        (AlgebraType::A3, [1, 0, 0]) => Ok(sl_standard(4)),
        (AlgebraType::A3, [0, 0, 1]) => Ok(dual_module(&sl_standard(4))),
        _ => Err(LieError::Unsupported(format!("{t} {w:?}"))),
    }
}

fn describe(t: AlgebraType, w: &[u64]) -> String {
    match t {
        AlgebraType::A1 => format!("sl(2), V({})", w[0]),
        AlgebraType::A1xA1 => format!("sl(2)×sl(2), V({})⊠V({})", w[0], w[1]),
        AlgebraType::B2 => "sp(4), standard V(λ2)".to_string(),
        AlgebraType::A3 => "sl(4), standard".to_string(),
        _ => format!("{t} {w:?}"),
    }
}

/// Semisimple algebras with a faithful irreducible 4-dimensional module.
pub fn classify_dim4_faithful() -> Result<Dim4Classification, LieError> {
    let bound = 4 * 4 - 1;
    let mut candidates = Vec::new();
    let mut excluded = Vec::new();
    let mut simple = Vec::new();
    for l in 1.. {
        if a_dim(l) > bound {
            excluded.push((format!("A{l}"), format!("dim {} > {bound}", a_dim(l))));
            break;
        }
        simple.push((format!("A{l}"), a_dim(l)));
    }
    for l in 2.. {
        if bc_dim(l) > bound {
            excluded.push((format!("B{l}, C{l}"), format!("dim {} > {bound}", bc_dim(l))));
            break;
        }
        simple.push((format!("B{l}"), bc_dim(l)));
    }
    excluded.push(("D4".to_string(), format!("dim {} > {bound}", d_dim(4))));
    for (name, d) in [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)] {
        if d > bound {
            excluded.push((name.to_string(), format!("dim {d} > {bound}")));
        } else {
            simple.push((name.to_string(), d));
        }
    }
    candidates.extend(simple.iter().cloned());

    // products: every factor needs a nontrivial irreducible of dim >= its
    // smallest faithful dimension, and the dimensions multiply to 4
    let min_dim = |name: &str| -> Option<u64> {
        let t = AlgebraType::parse(name)?;
        (2..=4).find(|&d| !search_dim(t, d).solutions.is_empty())
    };
    let mut products: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..simple.len()).map(|i| vec![i]).collect();
    while let Some(p) = stack.pop() {
        let last = *p.last().expect("nonempty");
        for i in last..simple.len() {
            let mut q = p.clone();
            q.push(i);
            if q.iter().map(|&k| simple[k].1).sum::<usize>() <= bound {
                products.push(q.clone());
                stack.push(q);
            }
        }
    }
    products.sort();
    let mut product_a1a1 = false;
    for p in &products {
        let name = p.iter().map(|&k| simple[k].0.as_str()).collect::<Vec<_>>().join("x");
        let dim: usize = p.iter().map(|&k| simple[k].1).sum();
        candidates.push((name.clone(), dim));
        let mins: Vec<Option<u64>> = p.iter().map(|&k| min_dim(&simple[k].0)).collect();
        let least: u64 = mins.iter().map(|m| m.unwrap_or(5)).product();
        if least > 4 {
            excluded.push((name, format!("irreducible faithful modules have dim >= {least}")));
        } else if name == "A1xA1" {
            product_a1a1 = true;
        } else {
            excluded.push((name, "no factorization of 4 into faithful irreducible dims".to_string()));
        }
    }

    let mut types: Vec<AlgebraType> = simple
        .iter()
        .filter_map(|(n, _)| AlgebraType::parse(n))
        .collect();
    if product_a1a1 {
        types.insert(1, AlgebraType::A1xA1);
    }
    let mut searches = Vec::new();
    let mut reps: Vec<Dim4Rep> = Vec::new();
    for t in types {
        let found = search_dim(t, 4);
        for w in &found.solutions {
            let module = module_for(t, w)?;
            if !module.is_faithful(t.lie_dim()) {
                excluded.push((format!("{t} {w:?}"), format!("not faithful, image dim {}", module.image_dim())));
                continue;
            }
            if let Some(r) = reps.iter().find(|r| r.algebra == t && r.module.same_image(&module)) {
                let w0 = r.highest_weight.clone();
                excluded.push((format!("{t} {w:?}"), format!("same image as {t} {w0:?}")));
                continue;
            }
            reps.push(Dim4Rep {
                algebra: t,
                highest_weight: w.clone(),
                description: describe(t, w),
                module,
            });
        }
        searches.push(found);
    }
    Ok(Dim4Classification { candidates, excluded, searches, reps })
}

/// Random integer matrix of determinant 1, as a product of elementary ones.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QMatrix {
    let mut g = QMatrix::q_identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = int(rng.gen_range(-3..=3));
        let mut e = QMatrix::q_identity(n);
        e.set(i, j, c);
        g = g.mul(&e);
    }
    g
}

/// Block-diagonal matrix from square blocks.
pub fn block_diagonal(blocks: &[QMatrix]) -> QMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut g = QMatrix::q_zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                g.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    g
}

/// g·(e_{s₁}∧…∧e_{sₙ}) = Σ_T det g[T,S] e_T over sorted index sets T.
pub fn wedge_image(g: &QMatrix, s: &[usize]) -> Vec<(Vec<usize>, Rational)> {
    let mut out = Vec::new();
    for t in subsets(g.rows(), s.len()) {
        let minor = QMatrix::from_rows(
            t.iter().map(|&r| s.iter().map(|&c| g.get(r, c).clone()).collect()).collect(),
            &int(0),
        );
        let d = if s.is_empty() { int(1) } else { minor.det() };
        if !d.is_zero() {
            out.push((t, d));
        }
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Scalar by which `g` multiplies the top wedge of each block, or `None` if
/// some top wedge is not an eigenvector.
pub fn block_wedge_scalars(g: &QMatrix, block_dims: &[usize]) -> Option<Vec<Rational>> {
    let mut off = 0;
    let mut out = Vec::new();
    for &d in block_dims {
        let s: Vec<usize> = (off..off + d).collect();
        let img = wedge_image(g, &s);
        match img.as_slice() {
            [(t, c)] if *t == s => out.push(c.clone()),
            [] => out.push(int(0)),
            _ => return None,
        }
        off += d;
    }
    Some(out)
}

/// Samples block-diagonal matrices with unimodular blocks of equal size n
/// and checks that each fixes ⊕ᵢ ∧ⁿ(blockᵢ) pointwise.
pub fn weil_wedge_fixed_by_block_sl<R: Rng + ?Sized>(
    block_dims: &[usize],
    samples: usize,
    rng: &mut R,
) -> Result<bool, LieError> {
    let n = block_dims.first().copied().unwrap_or(0);
    if n == 0 || block_dims.iter().any(|&d| d != n) {
        return Err(LieError::BlockDims(block_dims.to_vec()));
    }
    for _ in 0..samples {
        let blocks: Vec<QMatrix> = block_dims.iter().map(|&d| random_unimodular(d, rng)).collect();
        let g = block_diagonal(&blocks);
        match block_wedge_scalars(&g, block_dims) {
            Some(c) if c.iter().all(One::is_one) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Index-set model of a field action: embedding σ owns the basis vectors
/// σ·n .. σ·n + n − 1 of V ⊗ Q̄, and restriction to the subfield sends σ to
/// σ / l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilLayer {
    pub deg_big: usize,
    pub deg_small: usize,
    pub dim: usize,
    /// Monomials of ∧ₖˡ(∧_Kⁿ V), as index sets in ∧ᵐ V.
    pub layered: BTreeSet<Vec<usize>>,
    /// Monomials of ∧ₖᵐ V.
    pub direct: BTreeSet<Vec<usize>>,
    /// ⊕_τ ⊗_{σ|τ} ∧ⁿ V_σ.
    pub expected: BTreeSet<Vec<usize>>,
}

impl WeilLayer {
    pub fn holds(&self) -> bool {
        self.layered == self.direct && self.direct == self.expected && self.direct.len() == self.deg_small
    }
}

/// Weil structure monomials: m-subsets lying in a single eigenspace.
fn weil_monomials(labels: &[usize], m: usize) -> Vec<Vec<usize>> {
    subsets(labels.len(), m)
        .into_iter()
        .filter(|s| s.iter().all(|&i| labels[i] == labels[s[0]]))
        .filter(|s| {
            // top wedge of its eigenspace
            let c = labels.iter().filter(|&&l| l == labels[s[0]]).count();
            c == m
        })
        .collect()
}

/// Compares ∧ₖˡ(∧_Kⁿ V) with ∧ₖᵐ V as sets of wedge monomials.
pub fn weil_layer(deg_big: usize, deg_small: usize, dim: usize) -> Result<WeilLayer, LieError> {
    if deg_small == 0 || deg_big == 0 || deg_big % deg_small != 0 || dim % deg_big != 0 {
        return Err(LieError::Divisibility(deg_big, deg_small, dim));
    }
    let n = dim / deg_big;
    let m = dim / deg_small;
    let l = deg_big / deg_small;
    let sigma: Vec<usize> = (0..dim).map(|i| i / n).collect();
    let tau_of = |s: usize| s / l;
    let tau: Vec<usize> = sigma.iter().map(|&s| tau_of(s)).collect();

    let direct: BTreeSet<Vec<usize>> = weil_monomials(&tau, m).into_iter().collect();

    // ∧_Kⁿ V: one monomial per σ; K acts on it through σ, so k through τ(σ)
    let k_summands = weil_monomials(&sigma, n);
    let summand_tau: Vec<usize> = k_summands.iter().map(|s| tau_of(sigma[s[0]])).collect();
    let layered: BTreeSet<Vec<usize>> = weil_monomials(&summand_tau, l)
        .into_iter()
        .map(|pick| {
            let mut u: Vec<usize> = pick.iter().flat_map(|&i| k_summands[i].iter().copied()).collect();
            u.sort_unstable();
            u
        })
        .collect();

    let expected: BTreeSet<Vec<usize>> = (0..deg_small)
        .map(|t| {
            (0..deg_big)
                .filter(|&s| tau_of(s) == t)
                .flat_map(|s| s * n..s * n + n)
                .collect()
        })
        .collect();
    Ok(WeilLayer { deg_big, deg_small, dim, layered, direct, expected })
}

pub fn weil_layer_identity(deg_big: usize, deg_small: usize, dim: usize) -> Result<bool, LieError> {
    Ok(weil_layer(deg_big, deg_small, dim)?.holds())
}

/// Chains deg_k | deg_K | dim.
pub fn divisor_chains(dim: usize) -> Vec<(usize, usize)> {
    let divs: Vec<usize> = (1..=dim).filter(|d| dim % d == 0).collect();
    let mut out = Vec::new();
    for &big in &divs {
        for &small in &divs {
            if big % small == 0 {
                out.push((big, small));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(AlgebraType::B2, &[0, 1]), Ok(4));
        assert_eq!(weyl_dim(AlgebraType::B2, &[1, 0]), Ok(5));
        assert_eq!(weyl_dim(AlgebraType::A2, &[0, 0]), Ok(1));
        assert_eq!(weyl_dim(AlgebraType::G2, &[1, 0]), Ok(7));
        assert_eq!(weyl_dim(AlgebraType::G2, &[0, 1]), Ok(14));
        assert_eq!(weyl_dim(AlgebraType::A3, &[0, 1, 0]), Ok(6));
        assert!(matches!(weyl_dim(AlgebraType::A2, &[1]), Err(LieError::WrongRank { .. })));
    }

    #[test]
    fn searches() {
        assert!(search_dim(AlgebraType::A2, 4).solutions.is_empty());
        assert!(search_dim(AlgebraType::G2, 4).solutions.is_empty());
        assert_eq!(search_dim(AlgebraType::A1, 4).solutions, vec![vec![3]]);
        assert_eq!(search_dim(AlgebraType::B2, 4).solutions, vec![vec![0, 1]]);
    }

    #[test]
    fn small_irreps() {
        let v3 = sl2_irrep(3);
        assert_eq!(v3.action("x").unwrap().get(0, 1), &int(3));
        let v0 = sl2_irrep(0);
        assert!(v0.generators.iter().all(|(_, m)| m.is_zero()));
        let v1 = sl2_irrep(1);
        assert_eq!(*v1.action("y").unwrap(), QMatrix::from_ints(&[vec![0, 0], vec![1, 0]]));
    }

    #[test]
    fn wedge_dims() {
        let w = wedge2_module(&sl2_irrep(1)).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.generators.iter().all(|(_, m)| m.is_zero()));
        assert_eq!(wedge2_module(&sl2_irrep(3)).unwrap().dim(), 6);
        assert_eq!(invariant_space(&end_module(&sl2_irrep(3)).unwrap()).len(), 1);
    }

    #[test]
    fn sp4_has_dimension_ten() {
        assert_eq!(sp4_standard().generators.len(), 10);
        assert_eq!(sl_standard(4).generators.len(), 15);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(8, 4).len(), 70);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
