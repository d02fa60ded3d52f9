use std::path::{Path, PathBuf};

use gnl_core::graph::{hgraph_k, tms_k};
use gnl_core::io::{parse_matrix, parse_real_matrix, MatrixJson};
use gnl_core::schwinger::matrix_to_expression;
use gnl_core::states::{
    bell_analogue, dual_rail_wire, four_mode_symmetries, six_mode_symmetry_decomposition, tms_pair,
    tms_pair_spins, wire_chain_nullifier, wire_exotic_y, wire_global_x, wire_global_z, wire_local_nullifier,
    BellVariant, SpinPairing, WireLayout,
};
use gnl_core::{AdjacencyMatrix, Axis, HermitianGenerator, SchwingerExpression};

use crate::config::read;
use crate::error::{usage, CliError};

/// Parsed state request, before construction.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Tms { alpha: f64 },
    TmsPair { alpha: f64 },
    Bell { variant: BellVariant, alpha: f64 },
    HGraph { g: PathBuf, alpha: f64 },
    Wire { spins: usize, alpha: f64, open: bool },
    Vacuum { modes: usize },
    File { k: PathBuf },
}

#[derive(Debug, Default, Clone)]
pub struct StateParams {
    pub alpha: Option<f64>,
    pub spins: Option<usize>,
    pub modes: Option<usize>,
    pub open: bool,
    pub g: Option<PathBuf>,
    pub k: Option<PathBuf>,
}

fn need<T>(v: Option<T>, flag: &str, state: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("state {state} needs --{flag}")))
}

impl StateSpec {
    pub fn parse(name: &str, p: &StateParams) -> Result<Self, CliError> {
        let alpha = || need(p.alpha, "alpha", name);
        Ok(match name {
            "tms" => StateSpec::Tms { alpha: alpha()? },
            "tms-pair" => StateSpec::TmsPair { alpha: alpha()? },
            "hgraph" => StateSpec::HGraph { g: need(p.g.clone(), "g", name)?, alpha: alpha()? },
            "wire" => StateSpec::Wire { spins: need(p.spins, "spins", name)?, alpha: alpha()?, open: p.open },
            "vacuum" => StateSpec::Vacuum { modes: need(p.modes, "modes", name)? },
            "file" => StateSpec::File { k: need(p.k.clone(), "k", name)? },
            _ => match name.strip_prefix("bell:") {
                Some(v) => StateSpec::Bell { variant: v.parse()?, alpha: alpha()? },
                None => return Err(usage(format!("unknown state '{name}'"))),
            },
        })
    }

    pub fn describe(&self) -> String {
        match self {
            StateSpec::Tms { alpha } => format!("tms alpha={alpha}"),
            StateSpec::TmsPair { alpha } => format!("tms-pair alpha={alpha}"),
            StateSpec::Bell { variant, alpha } => format!("bell:{variant} alpha={alpha}"),
            StateSpec::HGraph { g, alpha } => format!("hgraph g={} alpha={alpha}", g.display()),
            StateSpec::Wire { spins, alpha, open } => {
                format!("wire spins={spins} alpha={alpha}{}", if *open { " open" } else { "" })
            }
            StateSpec::Vacuum { modes } => format!("vacuum modes={modes}"),
            StateSpec::File { k } => format!("file k={}", k.display()),
        }
    }

    pub fn build(&self) -> Result<BuiltState, CliError> {
        let mut layout = None;
        let mut pairing = None;
        let k = match self {
            StateSpec::Tms { alpha } => tms_k(*alpha)?,
            StateSpec::TmsPair { alpha } => {
                pairing = Some(tms_pair_spins());
                tms_pair(*alpha)?
            }
            StateSpec::Bell { variant, alpha } => {
                pairing = Some(tms_pair_spins());
                bell_analogue(*variant, *alpha)?.0
            }
            StateSpec::HGraph { g, alpha } => hgraph_k(&parse_real_matrix(&read(g)?)?, *alpha)?,
            StateSpec::Wire { spins, alpha, open } => {
                let l = if *open { WireLayout::open(*spins, *alpha)? } else { WireLayout::new(*spins, *alpha)? };
                pairing = Some(l.pairing());
                layout = Some(l);
                dual_rail_wire(&l)?
            }
            StateSpec::Vacuum { modes } => {
                if *modes == 0 {
                    return Err(usage("vacuum needs at least one mode"));
                }
                AdjacencyMatrix::vacuum(*modes)
            }
            StateSpec::File { k } => AdjacencyMatrix::new(parse_matrix(&read(k)?)?)?,
        };
        Ok(BuiltState { k, description: self.describe(), layout, pairing })
    }
}

pub struct BuiltState {
    pub k: AdjacencyMatrix,
    pub description: String,
    pub layout: Option<WireLayout>,
    pub pairing: Option<SpinPairing>,
}

impl BuiltState {
    pub fn n(&self) -> usize {
        self.k.n()
    }

    pub fn label(&self, mode: usize) -> String {
        match &self.layout {
            Some(l) => l.label(mode),
            None => mode.to_string(),
        }
    }

    fn wire(&self, generator: &str) -> Result<&WireLayout, CliError> {
        self.layout.as_ref().ok_or_else(|| usage(format!("generator {generator} needs a wire state")))
    }
}

fn parse_index(s: &str, what: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| usage(format!("bad {what} '{s}'")))
}

/// Resolves a named generator family against a built state.
///
/// `sz`, `sx`, `sy`, `s0` (optionally `:r,s`), `local:I`, `global-x`, `global-z`,
/// `chain:S:L`, `six-mode`, `exotic-y`, `four-x`, `four-y`, `four-z`.
pub fn named_generator(name: &str, state: &BuiltState) -> Result<SchwingerExpression, CliError> {
    let n = state.n();
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let pauli = match head {
        "s0" => Some(Axis::Zero),
        "sx" => Some(Axis::X),
        "sy" => Some(Axis::Y),
        "sz" => Some(Axis::Z),
        _ => None,
    };
    if let Some(axis) = pauli {
        let (r, s) = match arg {
            None => (0, 1),
            Some(a) => {
                let (r, s) = a.split_once(',').ok_or_else(|| usage(format!("expected {head}:r,s, got '{name}'")))?;
                (parse_index(r, "mode")?, parse_index(s, "mode")?)
            }
        };
        return Ok(SchwingerExpression::single(n, axis, r, s, 1.0)?);
    }
    let four = |i: usize| -> Result<SchwingerExpression, CliError> {
        if n != 4 {
            return Err(usage(format!("generator {name} needs a 4-mode state")));
        }
        Ok(four_mode_symmetries().swap_remove(i).0)
    };
    match (head, arg) {
        ("local", Some(i)) => {
            let layout = state.wire(name)?;
            let i = parse_index(i, "spin")?;
            if i >= layout.n_spins {
                return Err(usage(format!("spin {i} out of range for {} spins", layout.n_spins)));
            }
            Ok(wire_local_nullifier(layout, i))
        }
        ("chain", Some(a)) => {
            let (s, l) = a.split_once(':').ok_or_else(|| usage(format!("expected chain:S:L, got '{name}'")))?;
            Ok(wire_chain_nullifier(state.wire(name)?, parse_index(s, "spin")?, parse_index(l, "length")?)?)
        }
        ("global-x", None) => Ok(wire_global_x(state.wire(name)?)),
        ("global-z", None) => Ok(wire_global_z(state.wire(name)?)?),
        ("six-mode", None) => Ok(six_mode_symmetry_decomposition(state.wire(name)?, 0.0)?.generator),
        ("exotic-y", None) => Ok(wire_exotic_y(state.wire(name)?)?),
        ("four-x", None) => four(0),
        ("four-y", None) => four(1),
        ("four-z", None) => four(2),
        _ => Err(usage(format!("unknown generator '{name}'"))),
    }
}

/// Reads a generator file: either a Schwinger expression or a Hermitian matrix.
pub fn generator_file(path: &Path) -> Result<SchwingerExpression, CliError> {
    let text = read(path)?;
    if let Ok(e) = serde_json::from_str::<SchwingerExpression>(&text) {
        return Ok(SchwingerExpression::new(e.n(), e.terms().to_vec())?);
    }
    match serde_json::from_str::<MatrixJson>(&text) {
        Ok(m) => Ok(matrix_to_expression(&HermitianGenerator::new(m.to_matrix()?)?)),
        Err(e) => Err(gnl_core::Error::Parse(format!("{}: neither an expression nor a matrix ({e})", path.display())).into()),
    }
}
