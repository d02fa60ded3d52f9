//! Schwinger U(2) operators on pairs of qumodes and their real linear combinations.
//!
//! A term `c·S^axis_{r,s}` stands for the quadratic operator `c·â†(½σ_axis^{(r,s)})â`,
//! where `σ_axis^{(r,s)}` is a Pauli matrix embedded at rows and columns `r, s`.
//! The singleton `S^0_{r,r}` is the number operator `n̂_r`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, hermitian_defect, hermitize, CMatrix, I};

/// Hermiticity tolerance.
pub const HERM_TOL: f64 = 1e-10;
/// Coefficients at or below this are dropped by decompositions and `simplify`.
pub const COEFF_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "z")]
    Z,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::Zero, Axis::X, Axis::Y, Axis::Z];

    /// The 2×2 Pauli matrix, row-major.
    pub fn pauli(self) -> [Complex64; 4] {
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        match self {
            Axis::Zero => [l, o, o, l],
            Axis::X => [o, l, l, o],
            Axis::Y => [o, -I, I, o],
            Axis::Z => [l, o, o, -l],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Axis::Zero => '0',
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }

    /// Sign picked up when the pair is written in reverse order.
    fn reversal_sign(self) -> f64 {
        match self {
            Axis::Zero | Axis::X => 1.0,
            Axis::Y | Axis::Z => -1.0,
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(Axis::Zero),
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!("unknown axis '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwingerTerm {
    pub axis: Axis,
    pub pair: (usize, usize),
    pub coeff: f64,
}

impl SchwingerTerm {
    pub fn new(axis: Axis, r: usize, s: usize, coeff: f64) -> Self {
        Self { axis, pair: (r, s), coeff }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let (r, s) = self.pair;
        for index in [r, s] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if r == s && self.axis != Axis::Zero {
            return Err(Error::EqualIndices { axis: self.axis.symbol(), index: r });
        }
        Ok(())
    }

    /// Same operator with `r ≤ s`.
    fn oriented(self) -> Self {
        let (r, s) = self.pair;
        if r <= s {
            self
        } else {
            Self { axis: self.axis, pair: (s, r), coeff: self.coeff * self.axis.reversal_sign() }
        }
    }
}

/// A real linear combination of Schwinger operators on `n` qumodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawExpression")]
pub struct SchwingerExpression {
    n: usize,
    terms: Vec<SchwingerTerm>,
}

#[derive(Deserialize)]
struct RawExpression {
    n: usize,
    terms: Vec<SchwingerTerm>,
}

impl TryFrom<RawExpression> for SchwingerExpression {
    type Error = Error;

    fn try_from(raw: RawExpression) -> Result<Self> {
        Self::new(raw.n, raw.terms)
    }
}

impl SchwingerExpression {
    pub fn new(n: usize, terms: Vec<SchwingerTerm>) -> Result<Self> {
        for t in &terms {
            t.validate(n)?;
            if !t.coeff.is_finite() {
                return Err(Error::Parse(format!("non-finite coefficient {}", t.coeff)));
            }
        }
        Ok(Self { n, terms })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    /// `coeff·S^axis_{r,s}` on `n` modes.
    pub fn single(n: usize, axis: Axis, r: usize, s: usize, coeff: f64) -> Result<Self> {
        Self::new(n, vec![SchwingerTerm::new(axis, r, s, coeff)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[SchwingerTerm] {
        &self.terms
    }

    pub fn push(&mut self, axis: Axis, r: usize, s: usize, coeff: f64) -> Result<()> {
        let t = SchwingerTerm::new(axis, r, s, coeff);
        t.validate(self.n)?;
        self.terms.push(t);
        Ok(())
    }

    /// Orients every pair as `r ≤ s`, merges duplicates, drops zeros and sorts.
    pub fn simplify(&self) -> Self {
        let mut merged: BTreeMap<(usize, usize, Axis), f64> = BTreeMap::new();
        for t in self.terms.iter().map(|t| t.oriented()) {
            *merged.entry((t.pair.0, t.pair.1, t.axis)).or_default() += t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, v)| v.abs() > COEFF_EPS)
            .map(|((r, s, axis), coeff)| SchwingerTerm::new(axis, r, s, coeff))
            .collect();
        Self { n: self.n, terms }
    }

    pub fn scaled(&self, k: f64) -> Self {
        let terms = self.terms.iter().map(|t| SchwingerTerm { coeff: t.coeff * k, ..*t }).collect();
        Self { n: self.n, terms }
    }

    pub fn to_matrix(&self) -> HermitianGenerator {
        expression_to_matrix(self)
    }

    /// Pretty form using custom mode labels, e.g. `S^x_{0a,0b}`.
    pub fn display_with(&self, label: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < 0.0;
            match (k, neg) {
                (0, true) => out.push('−'),
                (0, false) => {}
                (_, true) => out.push_str(" − "),
                (_, false) => out.push_str(" + "),
            }
            let (r, s) = t.pair;
            out.push_str(&format!(
                "{}·S^{}_{{{},{}}}",
                format_coeff(t.coeff.abs()),
                t.axis.symbol(),
                label(r),
                label(s)
            ));
        }
        out
    }
}

impl fmt::Display for SchwingerExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|i| i.to_string()))
    }
}

impl std::ops::Add for SchwingerExpression {
    type Output = SchwingerExpression;

    fn add(mut self, rhs: Self) -> Self {
        self.n = self.n.max(rhs.n);
        self.terms.extend(rhs.terms);
        self
    }
}

impl std::ops::Sub for SchwingerExpression {
    type Output = SchwingerExpression;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.scaled(-1.0)
    }
}

impl std::ops::Neg for SchwingerExpression {
    type Output = SchwingerExpression;

    fn neg(self) -> Self {
        self.scaled(-1.0)
    }
}

/// Rounds to 6 decimals, trims trailing zeros, keeps at least one decimal.
fn format_coeff(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0');
    if s.ends_with('.') {
        format!("{s}0")
    } else {
        s.to_string()
    }
}

/// A Hermitian matrix `M` standing for the operator `â†Mâ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGenerator {
    entries: CMatrix,
}

impl HermitianGenerator {
    /// Checks Hermiticity within `HERM_TOL` and stores the Hermitian part.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::ShapeMismatch { expected: entries.nrows(), got: entries.ncols() });
        }
        let defect = hermitian_defect(&entries);
        if defect > HERM_TOL {
            return Err(Error::NonHermitian { defect });
        }
        Ok(Self { entries: hermitize(&entries) })
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: CMatrix::zeros(n, n) }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    /// `Re tr(A·B)`
    pub fn inner(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                acc += (self.entries[(i, j)] * other.entries[(j, i)]).re;
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_expression(&self) -> SchwingerExpression {
        matrix_to_expression(self)
    }
}

impl std::ops::Add for &HermitianGenerator {
    type Output = HermitianGenerator;

    fn add(self, rhs: Self) -> HermitianGenerator {
        HermitianGenerator { entries: &self.entries + &rhs.entries }
    }
}

impl std::ops::Sub for &HermitianGenerator {
    type Output = HermitianGenerator;

    fn sub(self, rhs: Self) -> HermitianGenerator {
        HermitianGenerator { entries: &self.entries - &rhs.entries }
    }
}

impl std::ops::Mul<f64> for &HermitianGenerator {
    type Output = HermitianGenerator;

    fn mul(self, k: f64) -> HermitianGenerator {
        HermitianGenerator { entries: self.entries.scale(k) }
    }
}

/// `σ_axis^{(r,s)}` embedded in an `n×n` zero matrix. `r = s` is only allowed
/// for axis 0, where it gives `2·E_rr`.
pub fn embed_pauli(axis: Axis, r: usize, s: usize, n: usize) -> Result<HermitianGenerator> {
    SchwingerTerm::new(axis, r, s, 1.0).validate(n)?;
    let mut m = CMatrix::zeros(n, n);
    add_pauli(&mut m, axis, r, s, 1.0);
    Ok(HermitianGenerator { entries: m })
}

fn add_pauli(m: &mut CMatrix, axis: Axis, r: usize, s: usize, k: f64) {
    let p = axis.pauli();
    m[(r, r)] += p[0] * k;
    m[(r, s)] += p[1] * k;
    m[(s, r)] += p[2] * k;
    m[(s, s)] += p[3] * k;
}

/// `M = Σ c·½σ_axis^{(r,s)}`
pub fn expression_to_matrix(expr: &SchwingerExpression) -> HermitianGenerator {
    let mut m = CMatrix::zeros(expr.n, expr.n);
    for t in &expr.terms {
        add_pauli(&mut m, t.axis, t.pair.0, t.pair.1, 0.5 * t.coeff);
    }
    HermitianGenerator { entries: m }
}

/// Canonical decomposition of `M`.
///
/// Off-diagonal `M_rs` (r<s) becomes `2Re(M_rs)·S^x_{r,s} − 2Im(M_rs)·S^y_{r,s}`.
/// Diagonal entries become `S^0` and `S^z` on pairs `(2k, 2k+1)`; a trailing odd
/// mode uses `S^0 − S^z` on `(n−2, n−1)`, or the singleton `S^0_{0,0}` when `n = 1`.
pub fn matrix_to_expression(m: &HermitianGenerator) -> SchwingerExpression {
    let n = m.n();
    let e = m.entries();
    let mut terms = Vec::new();
    let mut push = |axis, r, s, coeff: f64| {
        if coeff.abs() > COEFF_EPS {
            terms.push(SchwingerTerm::new(axis, r, s, coeff));
        }
    };
    for k in 0..n / 2 {
        let (a, b) = (e[(2 * k, 2 * k)].re, e[(2 * k + 1, 2 * k + 1)].re);
        push(Axis::Zero, 2 * k, 2 * k + 1, a + b);
        push(Axis::Z, 2 * k, 2 * k + 1, a - b);
    }
    if n % 2 == 1 {
        let d = e[(n - 1, n - 1)].re;
        if n == 1 {
            push(Axis::Zero, 0, 0, d);
        } else {
            push(Axis::Zero, n - 2, n - 1, d);
            push(Axis::Z, n - 2, n - 1, -d);
        }
    }
    for r in 0..n {
        for s in r + 1..n {
            push(Axis::X, r, s, 2.0 * e[(r, s)].re);
            push(Axis::Y, r, s, -2.0 * e[(r, s)].im);
        }
    }
    SchwingerExpression { n, terms }
}

/// Max defect of the u(2) relations among the four generators on pair `(r, s)`.
pub fn su2_structure_check(r: usize, s: usize, n: usize) -> Result<f64> {
    let gens = Axis::ALL.map(|a| embed_pauli(a, r, s, n).map(|m| m.entries.scale(0.5)));
    let [g0, gx, gy, gz] = gens;
    Ok(u2_defect(&[g0?, gx?, gy?, gz?]))
}

/// Max defect of `[S_k, S_l] = iε_klm S_m` and `[S_0, S_k] = 0` for the given
/// matrices ordered `(0, x, y, z)`.
pub fn u2_defect(g: &[CMatrix; 4]) -> f64 {
    let comm = |a: &CMatrix, b: &CMatrix| a * b - b * a;
    let mut defect: f64 = 0.0;
    for k in 1..4 {
        defect = defect.max(linalg::max_abs(&comm(&g[0], &g[k])));
    }
    for (k, l, m) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let lhs = comm(&g[k], &g[l]);
        let rhs = g[m].map(|z| I * z);
        defect = defect.max(linalg::max_abs_diff(&lhs, &rhs));
    }
    defect
}

/// `M' = WᴴMW`: the same quadratic form written in modes `â_new` with `â_old = W â_new`.
pub fn change_basis(m: &HermitianGenerator, w: &CMatrix) -> Result<HermitianGenerator> {
    if w.nrows() != m.n() {
        return Err(Error::ShapeMismatch { expected: m.n(), got: w.nrows() });
    }
    linalg::ensure_unitary(w, 1e-10)?;
    Ok(HermitianGenerator { entries: hermitize(&(w.adjoint() * m.entries() * w)) })
}

/// `W = exp(−iθM)`
pub fn generator_to_unitary(m: &HermitianGenerator, theta: f64) -> CMatrix {
    linalg::expm_hermitian(m.entries(), theta)
}
