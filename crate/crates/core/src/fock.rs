//! Truncated Fock-space oracle: amplitudes of a Gaussian state built directly
//! from the relation `(â − Kâ†)|φ⟩ = 0`, and exact action of `â†Mâ`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::schwinger::HermitianGenerator;
use crate::states::SpinPairing;

/// Relative agreement required between recursion paths.
pub const RECURSION_TOL: f64 = 1e-10;
/// Amplitudes below this are omitted from JSON output.
pub const JSON_AMP_EPS: f64 = 1e-14;

pub type Occupation = Vec<u32>;

/// Sparse state vector keyed by occupation numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    n: usize,
    cutoff: u32,
    amps: BTreeMap<Occupation, Complex64>,
}

impl FockVector {
    pub fn new(n: usize, cutoff: u32) -> Self {
        Self { n, cutoff, amps: BTreeMap::new() }
    }

    /// A single basis state `|occ⟩`.
    pub fn basis(occ: &[u32], cutoff: u32) -> Self {
        let mut v = Self::new(occ.len(), cutoff);
        v.amps.insert(occ.to_vec(), Complex64::new(1.0, 0.0));
        v
    }

    pub fn n_modes(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &BTreeMap<Occupation, Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, occ: &[u32]) -> Complex64 {
        self.amps.get(occ).copied().unwrap_or_default()
    }

    pub fn add(&mut self, occ: Occupation, z: Complex64) {
        *self.amps.entry(occ).or_default() += z;
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            for z in self.amps.values_mut() {
                *z /= norm;
            }
        }
    }

    /// Norm of the part with total photon number at most `max_total`.
    pub fn norm_up_to(&self, max_total: u32) -> f64 {
        self.amps
            .iter()
            .filter(|(occ, _)| occ.iter().sum::<u32>() <= max_total)
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Norm of each photon-number sector.
    pub fn sector_norms(&self) -> BTreeMap<u32, f64> {
        let mut out: BTreeMap<u32, f64> = BTreeMap::new();
        for (occ, z) in &self.amps {
            *out.entry(occ.iter().sum()).or_default() += z.norm_sqr();
        }
        out.into_iter().map(|(k, v)| (k, v.sqrt())).collect()
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self { n: self.n, cutoff: self.cutoff, amps: self.amps.iter().map(|(o, z)| (o.clone(), z * k)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (occ, z) in &other.amps {
            out.add(occ.clone(), -z);
        }
        out
    }

    pub fn to_json(&self) -> FockJson {
        FockJson {
            n: self.n,
            cutoff: self.cutoff,
            amps: self
                .amps
                .iter()
                .filter(|(_, z)| z.norm() >= JSON_AMP_EPS)
                .map(|(occ, z)| FockAmp { occ: occ.clone(), re: z.re, im: z.im })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockJson {
    pub n: usize,
    pub cutoff: u32,
    pub amps: Vec<FockAmp>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockAmp {
    pub occ: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

/// All occupations of `n` modes with exactly `total` photons, in lexicographic order.
pub fn occupations(n: usize, total: u32) -> Vec<Occupation> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Occupation>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(n, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Amplitudes of the state with graph `K` up to `cutoff` photons, normalized.
///
/// Uses `√ν_i c(ν) = Σ_j K_ij √(ν−e_i)_j c(ν−e_i−e_j)` and checks that every
/// admissible `i` gives the same value.
pub fn state_from_k(k: &AdjacencyMatrix, cutoff: u32) -> Result<FockVector> {
    if cutoff < 2 || !cutoff.is_multiple_of(2) {
        return Err(Error::OddCutoff(cutoff as usize));
    }
    let n = k.n();
    let km = k.entries();
    let mut v = FockVector::new(n, cutoff);
    v.amps.insert(vec![0; n], Complex64::new(1.0, 0.0));
    for total in (2..=cutoff).step_by(2) {
        let mut sector = Vec::new();
        for occ in occupations(n, total) {
            let mut candidates = Vec::new();
            for i in (0..n).filter(|&i| occ[i] > 0) {
                let mut lowered = occ.clone();
                lowered[i] -= 1;
                let mut acc = Complex64::new(0.0, 0.0);
                for j in (0..n).filter(|&j| lowered[j] > 0) {
                    let kij = km[(i, j)];
                    if kij == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let mut prev = lowered.clone();
                    prev[j] -= 1;
                    acc += kij * (lowered[j] as f64).sqrt() * v.amplitude(&prev);
                }
                candidates.push(acc / (occ[i] as f64).sqrt());
            }
            sector.push((occ, candidates));
        }
        let scale = sector
            .iter()
            .flat_map(|(_, c)| c.iter())
            .fold(0.0_f64, |m, z| m.max(z.norm()));
        for (occ, candidates) in sector {
            let first = candidates[0];
            let mismatch = candidates.iter().fold(0.0_f64, |m, z| m.max((z - first).norm()));
            if scale > 0.0 && mismatch > RECURSION_TOL * scale {
                return Err(Error::InconsistentRecursion { occupation: occ, mismatch: mismatch / scale });
            }
            if first != Complex64::new(0.0, 0.0) {
                v.amps.insert(occ, first);
            }
        }
    }
    v.normalize();
    Ok(v)
}

/// `â_j v`
pub fn apply_annihilation(j: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::new(v.n, v.cutoff);
    for (occ, z) in &v.amps {
        if occ[j] > 0 {
            let mut o = occ.clone();
            o[j] -= 1;
            out.add(o, z * (occ[j] as f64).sqrt());
        }
    }
    out
}

/// `â_i† v` (may exceed the nominal cutoff by one photon)
pub fn apply_creation(i: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::new(v.n, v.cutoff);
    for (occ, z) in &v.amps {
        let mut o = occ.clone();
        o[i] += 1;
        let up = (o[i] as f64).sqrt();
        out.add(o, z * up);
    }
    out
}

/// `Σ_ij M_ij â_i†â_j v`, exact since photon number is conserved.
pub fn apply_quadratic(m: &HermitianGenerator, v: &FockVector) -> Result<FockVector> {
    if m.n() != v.n {
        return Err(Error::ShapeMismatch { expected: v.n, got: m.n() });
    }
    let e = m.entries();
    let mut out = FockVector::new(v.n, v.cutoff);
    for (occ, z) in &v.amps {
        for j in (0..v.n).filter(|&j| occ[j] > 0) {
            let mut lowered = occ.clone();
            lowered[j] -= 1;
            let down = (occ[j] as f64).sqrt();
            for i in 0..v.n {
                let mij = e[(i, j)];
                if mij == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut raised = lowered.clone();
                raised[i] += 1;
                let up = (raised[i] as f64).sqrt();
                out.add(raised, mij * z * down * up);
            }
        }
    }
    Ok(out)
}

/// `‖M|φ⟩‖ / ‖|φ⟩‖` for the truncated state with graph `K`.
pub fn nullifier_residual(m: &HermitianGenerator, k: &AdjacencyMatrix, cutoff: u32) -> Result<f64> {
    let phi = state_from_k(k, cutoff)?;
    let out = apply_quadratic(m, &phi)?;
    Ok(out.norm() / phi.norm())
}

/// `max_i ‖(â_i − Σ_j K_ij â_j†)|φ⟩‖` over sectors with total below `cutoff − 1`.
pub fn linear_nullifier_residual(k: &AdjacencyMatrix, phi: &FockVector) -> f64 {
    let n = k.n();
    let limit = phi.cutoff.saturating_sub(2);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let mut r = apply_annihilation(i, phi);
        for j in 0..n {
            let kij = k.entries()[(i, j)];
            if kij != Complex64::new(0.0, 0.0) {
                r = r.sub(&apply_creation(j, phi).scaled(kij));
            }
        }
        worst = worst.max(r.norm_up_to(limit));
    }
    worst
}

/// A Schwinger spin label with `s = twice_s/2`, `m = twice_m/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpinLabel {
    pub twice_s: u32,
    pub twice_m: i32,
}

impl SpinLabel {
    pub fn from_occupations(n1: u32, n2: u32) -> Self {
        Self { twice_s: n1 + n2, twice_m: n1 as i32 - n2 as i32 }
    }

    pub fn s(&self) -> f64 {
        self.twice_s as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.twice_m as f64 / 2.0
    }
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("{x}/2")
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}⟩", half(self.twice_s as i64), half(self.twice_m as i64))
    }
}

/// The same amplitudes relabelled by Schwinger spins.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinBasisView {
    pub pairing: SpinPairing,
    pub amplitudes: BTreeMap<Vec<SpinLabel>, Complex64>,
}

pub fn spin_basis_view(v: &FockVector, pairing: &SpinPairing) -> Result<SpinBasisView> {
    if pairing.n_modes() != v.n {
        return Err(Error::BadPairing(format!("pairing covers {} modes, vector has {}", pairing.n_modes(), v.n)));
    }
    let amplitudes = v
        .amps
        .iter()
        .map(|(occ, z)| {
            let labels = pairing.pairs().iter().map(|&(a, b)| SpinLabel::from_occupations(occ[a], occ[b])).collect();
            (labels, *z)
        })
        .collect();
    Ok(SpinBasisView { pairing: pairing.clone(), amplitudes })
}
