//! Named states and the nullifier families they carry: pairs of two-mode
//! squeezed states, Bell-type spin pairs and the periodic dual-rail wire.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{passive_transform, AdjacencyMatrix};
use crate::linalg::{self, c, CMatrix};
use crate::schwinger::{generator_to_unitary, Axis, SchwingerExpression, SchwingerTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// Disjoint qumode pairs covering every mode, each read as one Schwinger spin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinPairing {
    pairs: Vec<(usize, usize)>,
    orientation: Orientation,
}

impl SpinPairing {
    pub fn new(pairs: Vec<(usize, usize)>, orientation: Orientation) -> Result<Self> {
        let n = pairs.len() * 2;
        let mut seen = vec![false; n];
        for &(a, b) in &pairs {
            for m in [a, b] {
                if m >= n {
                    return Err(Error::BadPairing(format!("mode {m} out of range for {n} modes")));
                }
                if seen[m] {
                    return Err(Error::BadPairing(format!("mode {m} appears twice")));
                }
                seen[m] = true;
            }
        }
        Ok(Self { pairs, orientation })
    }

    /// `(2i, 2i+1)` for each spin.
    pub fn vertical(n_spins: usize) -> Self {
        Self { pairs: (0..n_spins).map(|i| (2 * i, 2 * i + 1)).collect(), orientation: Orientation::Vertical }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn n_modes(&self) -> usize {
        self.pairs.len() * 2
    }
}

/// Spin A on modes `(0, 2)`, spin B on modes `(1, 3)` of a TMS pair.
pub fn tms_pair_spins() -> SpinPairing {
    SpinPairing { pairs: vec![(0, 2), (1, 3)], orientation: Orientation::Horizontal }
}

/// Two TMS states with edges `(0,1)` and `(2,3)`.
pub fn tms_pair(alpha: f64) -> Result<AdjacencyMatrix> {
    tms_pair_unequal(alpha, alpha)
}

/// Same as [`tms_pair`] with independent squeezing on each edge.
pub fn tms_pair_unequal(alpha1: f64, alpha2: f64) -> Result<AdjacencyMatrix> {
    for a in [alpha1, alpha2] {
        if !(a > 0.0) {
            return Err(Error::NonPositiveAlpha(a));
        }
    }
    let mut k = CMatrix::zeros(4, 4);
    for (r, s, a) in [(0, 1, alpha1), (2, 3, alpha2)] {
        k[(r, s)] = c(a.tanh(), 0.0);
        k[(s, r)] = c(a.tanh(), 0.0);
    }
    AdjacencyMatrix::new(k)
}

fn expr(n: usize, terms: &[(Axis, usize, usize, f64)]) -> SchwingerExpression {
    SchwingerExpression::new(n, terms.iter().map(|&(a, r, s, k)| SchwingerTerm::new(a, r, s, k)).collect())
        .expect("library expressions use valid indices")
}

/// `S^axis_A + sign·S^axis_B` on a TMS pair.
fn spin_combo(axis: Axis, sign: f64) -> SchwingerExpression {
    expr(4, &[(axis, 0, 2, 1.0), (axis, 1, 3, sign)])
}

/// `S^x_A − S^x_B`, `S^y_A + S^y_B`, `S^z_A − S^z_B` with short descriptions.
pub fn four_mode_symmetries() -> Vec<(SchwingerExpression, &'static str)> {
    vec![
        (spin_combo(Axis::X, -1.0), "x anti-correlated"),
        (spin_combo(Axis::Y, 1.0), "y correlated"),
        (spin_combo(Axis::Z, -1.0), "z anti-correlated"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BellVariant {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellVariant {
    pub const ALL: [BellVariant; 4] =
        [BellVariant::PhiPlus, BellVariant::PhiMinus, BellVariant::PsiPlus, BellVariant::PsiMinus];

    /// Signs `(x, y, z)` of spin B relative to spin A in the nullifiers.
    pub fn signs(self) -> [f64; 3] {
        match self {
            BellVariant::PhiPlus => [-1.0, 1.0, -1.0],
            BellVariant::PhiMinus => [1.0, -1.0, -1.0],
            BellVariant::PsiPlus => [-1.0, -1.0, 1.0],
            BellVariant::PsiMinus => [1.0, 1.0, 1.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BellVariant::PhiPlus => "phi+",
            BellVariant::PhiMinus => "phi-",
            BellVariant::PsiPlus => "psi+",
            BellVariant::PsiMinus => "psi-",
        }
    }
}

impl fmt::Display for BellVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariant(s.to_string()))
    }
}

/// Passive mode unitary taking the `phi+` graph to the given variant.
///
/// `phi-`: π phase on mode 2. `psi+`: additionally a half-turn of spin A about y.
/// `psi-`: additionally a half-turn of spin B about z.
pub fn bell_transform(variant: BellVariant) -> CMatrix {
    let mut w = linalg::identity(4);
    if variant == BellVariant::PhiPlus {
        return w;
    }
    w[(2, 2)] = c(-1.0, 0.0);
    if variant == BellVariant::PhiMinus {
        return w;
    }
    let y_a = expr(4, &[(Axis::Y, 0, 2, 1.0)]).to_matrix();
    w = generator_to_unitary(&y_a, -PI) * w;
    if variant == BellVariant::PsiPlus {
        return w;
    }
    let z_b = expr(4, &[(Axis::Z, 1, 3, 1.0)]).to_matrix();
    generator_to_unitary(&z_b, PI) * w
}

/// Graph of a Bell-type spin pair and its `x`, `y`, `z` and `0` nullifiers.
pub fn bell_analogue(variant: BellVariant, alpha: f64) -> Result<(AdjacencyMatrix, Vec<SchwingerExpression>)> {
    let k = passive_transform(&tms_pair(alpha)?, &bell_transform(variant))?;
    let [sx, sy, sz] = variant.signs();
    let nullifiers = vec![
        spin_combo(Axis::X, sx),
        spin_combo(Axis::Y, sy),
        spin_combo(Axis::Z, sz),
        spin_combo(Axis::Zero, -1.0),
    ];
    Ok((k, nullifiers))
}

/// Rail of a dual-rail spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rail {
    A,
    B,
}

/// Layout of the periodic dual-rail wire: spin `i` owns modes `2i` (rail a) and `2i+1` (rail b).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WireLayout {
    pub n_spins: usize,
    pub alpha: f64,
    pub periodic: bool,
}

impl WireLayout {
    pub fn new(n_spins: usize, alpha: f64) -> Result<Self> {
        if n_spins < 3 {
            return Err(Error::TooFewSpins(n_spins));
        }
        if !(alpha > 0.0) {
            return Err(Error::NonPositiveAlpha(alpha));
        }
        Ok(Self { n_spins, alpha, periodic: true })
    }

    /// A wire with the wrap-around bond removed. Only meant for negative controls.
    pub fn open(n_spins: usize, alpha: f64) -> Result<Self> {
        if n_spins < 2 {
            return Err(Error::TooFewSpins(n_spins));
        }
        if !(alpha > 0.0) {
            return Err(Error::NonPositiveAlpha(alpha));
        }
        Ok(Self { n_spins, alpha, periodic: false })
    }

    pub fn n_modes(&self) -> usize {
        2 * self.n_spins
    }

    pub fn mode(&self, spin: usize, rail: Rail) -> usize {
        let spin = spin % self.n_spins;
        match rail {
            Rail::A => 2 * spin,
            Rail::B => 2 * spin + 1,
        }
    }

    /// `(spin, rail)` label such as `3b`.
    pub fn label(&self, mode: usize) -> String {
        format!("{}{}", mode / 2, if mode.is_multiple_of(2) { 'a' } else { 'b' })
    }

    pub fn pairing(&self) -> SpinPairing {
        SpinPairing::vertical(self.n_spins)
    }
}

/// Per-spin balanced mixer `I_n ⊗ [[1, 1], [1, −1]]/√2`.
pub fn distributed_basis_unitary(n_spins: usize) -> CMatrix {
    let h = c(FRAC_1_SQRT_2, 0.0);
    let mut w = CMatrix::zeros(2 * n_spins, 2 * n_spins);
    for i in 0..n_spins {
        w[(2 * i, 2 * i)] = h;
        w[(2 * i, 2 * i + 1)] = h;
        w[(2 * i + 1, 2 * i)] = h;
        w[(2 * i + 1, 2 * i + 1)] = -h;
    }
    w
}

/// The wire in the distributed basis: TMS edges between `(i)−` (index `2i+1`)
/// and `(i+1)+` (index `2i+2`).
pub fn wire_distributed_k(layout: &WireLayout) -> Result<AdjacencyMatrix> {
    let n = layout.n_spins;
    let t = c(layout.alpha.tanh(), 0.0);
    let mut k = CMatrix::zeros(2 * n, 2 * n);
    let bonds = if layout.periodic { n } else { n - 1 };
    for i in 0..bonds {
        let minus = 2 * i + 1;
        let plus = 2 * ((i + 1) % n);
        k[(minus, plus)] = t;
        k[(plus, minus)] = t;
    }
    AdjacencyMatrix::new(k)
}

/// The dual-rail wire in the physical basis; every edge has weight `±½tanh(α)`.
pub fn dual_rail_wire(layout: &WireLayout) -> Result<AdjacencyMatrix> {
    passive_transform(&wire_distributed_k(layout)?, &distributed_basis_unitary(layout.n_spins))
}

/// `N_i = S^0_i − S^x_i − S^0_{i+1} − S^x_{i+1}` with spin operators on `(ia, ib)`.
pub fn wire_local_nullifier(layout: &WireLayout, i: usize) -> SchwingerExpression {
    let n = layout.n_spins;
    let (a0, b0) = (layout.mode(i, Rail::A), layout.mode(i, Rail::B));
    let (a1, b1) = (layout.mode((i + 1) % n, Rail::A), layout.mode((i + 1) % n, Rail::B));
    expr(
        layout.n_modes(),
        &[
            (Axis::Zero, a0, b0, 1.0),
            (Axis::X, a0, b0, -1.0),
            (Axis::Zero, a1, b1, -1.0),
            (Axis::X, a1, b1, -1.0),
        ],
    )
}

pub fn wire_local_nullifiers(layout: &WireLayout) -> Vec<SchwingerExpression> {
    (0..layout.n_spins).map(|i| wire_local_nullifier(layout, i)).collect()
}

/// `Σ_i S^x_{ia,ib}`
pub fn wire_global_x(layout: &WireLayout) -> SchwingerExpression {
    let terms: Vec<_> =
        (0..layout.n_spins).map(|i| (Axis::X, layout.mode(i, Rail::A), layout.mode(i, Rail::B), 1.0)).collect();
    expr(layout.n_modes(), &terms)
}

/// `Σ_k S^z_{(2k)a,(2k+1)a} + S^z_{(2k)b,(2k+1)b}` on horizontally paired modes.
pub fn wire_global_z(layout: &WireLayout) -> Result<SchwingerExpression> {
    if !layout.n_spins.is_multiple_of(2) {
        return Err(Error::OddSpinCount(layout.n_spins));
    }
    let mut terms = Vec::new();
    for k in 0..layout.n_spins / 2 {
        for rail in [Rail::A, Rail::B] {
            terms.push((Axis::Z, layout.mode(2 * k, rail), layout.mode(2 * k + 1, rail), 1.0));
        }
    }
    Ok(expr(layout.n_modes(), &terms))
}

/// `N_start + … + N_{start+len−1}` (indices mod n). A full ring gives `−2·Σ S^x`.
pub fn wire_chain_nullifier(layout: &WireLayout, start: usize, len: usize) -> Result<SchwingerExpression> {
    let n = layout.n_spins;
    if len == 0 || len > n {
        return Err(Error::SpanTooLong { len, n });
    }
    let sum = (0..len)
        .map(|k| wire_local_nullifier(layout, (start + k) % n))
        .fold(SchwingerExpression::zero(layout.n_modes()), |acc, e| acc + e);
    Ok(sum.simplify())
}

/// `S^0_{0,1} − S^x_{0,1} − S^0_{2,3} − S^x_{2,3}` on the first two spins.
pub fn four_mode_local_generator(layout: &WireLayout) -> SchwingerExpression {
    wire_local_nullifier(layout, 0)
}

/// The same generator written with relative phases on horizontal pairs:
/// `S^z_{0,2} + S^z_{1,3} − S^x_{0,1} − S^x_{2,3}`.
pub fn four_mode_split_generator(layout: &WireLayout) -> SchwingerExpression {
    expr(
        layout.n_modes(),
        &[(Axis::Z, 0, 2, 1.0), (Axis::Z, 1, 3, 1.0), (Axis::X, 0, 1, -1.0), (Axis::X, 2, 3, -1.0)],
    )
}

/// The six-mode `S^y` symmetry on the first three spins.
pub fn wire_exotic_y(layout: &WireLayout) -> Result<SchwingerExpression> {
    if layout.n_spins < 3 {
        return Err(Error::WireTooSmall(layout.n_spins));
    }
    let terms = [
        (0, 2, 1.0),
        (0, 3, -1.0),
        (1, 2, -1.0),
        (1, 3, 1.0),
        (2, 4, 1.0),
        (3, 5, 1.0),
        (4, 3, -1.0),
        (5, 2, -1.0),
    ]
    .map(|(r, s, k)| (Axis::Y, r, s, k));
    Ok(expr(layout.n_modes(), &terms))
}

/// Factorisation of the six-mode symmetry `exp(−iθ(−2S^z_{2,3} + X))` with
/// `X = S^x_{0,5} + S^x_{0,4} − S^x_{1,5} − S^x_{1,4}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SixModeDecomposition {
    pub generator: SchwingerExpression,
    pub mixing_part: SchwingerExpression,
    pub phase_part: SchwingerExpression,
    /// Mixers, central beamsplitter, inverse mixers; their product is `exp(−iθX)`.
    pub mixing_factors: Vec<CMatrix>,
    /// `exp(−iθ(−2S^z_{2,3}))`
    pub phase_factor: CMatrix,
}

impl SixModeDecomposition {
    pub fn mixing_product(&self) -> CMatrix {
        let n = self.phase_factor.nrows();
        self.mixing_factors.iter().fold(linalg::identity(n), |acc, f| acc * f)
    }

    pub fn full_product(&self) -> CMatrix {
        &self.phase_factor * self.mixing_product()
    }
}

pub fn six_mode_symmetry_decomposition(layout: &WireLayout, theta: f64) -> Result<SixModeDecomposition> {
    if layout.n_spins < 3 {
        return Err(Error::WireTooSmall(layout.n_spins));
    }
    let n = layout.n_modes();
    let mixing_part =
        expr(n, &[(Axis::X, 0, 5, 1.0), (Axis::X, 0, 4, 1.0), (Axis::X, 1, 5, -1.0), (Axis::X, 1, 4, -1.0)]);
    let phase_part = expr(n, &[(Axis::Z, 2, 3, -2.0)]);
    let generator = phase_part.clone() + mixing_part.clone();
    let u = |e: SchwingerExpression, t: f64| generator_to_unitary(&e.to_matrix(), t);
    let mixers = |t: f64| u(expr(n, &[(Axis::Y, 0, 1, 1.0), (Axis::Y, 4, 5, 1.0)]), t);
    let mixing_factors =
        vec![mixers(-PI / 2.0), u(expr(n, &[(Axis::X, 0, 5, 2.0)]), theta), mixers(PI / 2.0)];
    let phase_factor = u(phase_part.clone(), theta);
    Ok(SixModeDecomposition { generator, mixing_part, phase_part, mixing_factors, phase_factor })
}
