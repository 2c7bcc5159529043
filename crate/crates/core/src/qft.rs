//! The quantum Fourier transform network on `Z_{2^m}`.
//!
//! The transform of size `2^k` on qubits `b, .., m-1` (with `b = m - k`) is
//! built as: the size `2^{k-1}` transform on qubits `b+1, .., m-1`; the
//! conditional phases `C_p` between qubit `b` and qubit `b+p` for
//! `p = 1 .. k-1`, each `diag(1, 1, 1, w^{2^{p-1}})` with `w = exp(2 pi i / 2^k)`;
//! one `H` on qubit `b`; then the cyclic rotation
//! `i_{k-1} .. i_1 i_0 -> i_0 i_{k-1} .. i_1` of the level's bits. The phase
//! ladder gives the odd amplitude `2j + 1` the factor `w^j`, the `H` forms the
//! butterfly and the rotation sends `2j -> j`, `2j + 1 -> j + 2^{k-1}`.
//!
//! The rotation is either emitted as `k - 1` adjacent swaps or folded into a
//! relabelling of the output wires, recorded as `final_permutation`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{Gate, GateKind, Program, ProgramJson, QState, DEFAULT_QUBIT_CAP};
use crate::vector::ComplexVector;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReorderMode {
    /// Emit the level rotations as swap gates.
    Swaps,
    /// Track the rotations as a permutation of output wires.
    #[default]
    Relabel,
}

impl std::str::FromStr for ReorderMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "swaps" => Ok(Self::Swaps),
            "relabel" => Ok(Self::Relabel),
            other => Err(Error::Invalid(format!("unknown reorder mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCountReport {
    pub hadamards: u64,
    pub cphases: u64,
    pub swaps: u64,
    pub total: u64,
}

impl GateCountReport {
    fn tally<'a>(gates: impl IntoIterator<Item = &'a Gate>) -> Self {
        let mut r = Self::default();
        for g in gates {
            match g.kind() {
                GateKind::H => r.hadamards += 1,
                GateKind::CPhase(_) => r.cphases += 1,
                GateKind::Swap => r.swaps += 1,
                _ => {}
            }
            r.total += 1;
        }
        r
    }
}

/// A compiled QFT network.
#[derive(Debug, Clone, PartialEq)]
pub struct GateList {
    n_qubits: usize,
    gates: Vec<Gate>,
    reorder_mode: ReorderMode,
    /// Logical qubit `q` of the transform's output sits on wire `final_permutation[q]`.
    final_permutation: Vec<usize>,
}

impl GateList {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn reorder_mode(&self) -> ReorderMode {
        self.reorder_mode
    }

    pub fn final_permutation(&self) -> &[usize] {
        &self.final_permutation
    }

    /// A literal tally of the emitted gates.
    pub fn count(&self) -> GateCountReport {
        GateCountReport::tally(&self.gates)
    }

    pub fn to_program(&self) -> Program {
        Program::new(self.n_qubits, self.gates.clone()).expect("compiled targets are in range")
    }

    /// Moves amplitudes from wire order to logical order: bit `q` of the
    /// logical index is bit `final_permutation[q]` of the wire index.
    pub fn relabel(&self, state: QState) -> QState {
        if self.final_permutation.iter().enumerate().all(|(q, &w)| q == w) {
            return state;
        }
        let amps = state.amplitudes();
        let mut out = ComplexVector::zeros(amps.len());
        for (wire_index, &a) in amps.iter().enumerate() {
            let logical = self
                .final_permutation
                .iter()
                .enumerate()
                .fold(0, |acc, (q, &w)| acc | ((wire_index >> w & 1) << q));
            out[logical] = a;
        }
        QState::from_amplitudes(out).expect("permutation preserves the norm")
    }

    /// Runs the network on `state` and returns the result in logical order.
    pub fn apply(&self, state: &QState) -> Result<QState> {
        let mut s = state.clone();
        self.to_program().apply_to(&mut s)?;
        Ok(self.relabel(s))
    }

    /// The composed unitary, one column per basis input, in logical order.
    pub fn unitary_columns(&self) -> Result<Vec<ComplexVector>> {
        let dim = 1usize << self.n_qubits;
        (0..dim)
            .map(|x| {
                let basis = QState::from_amplitudes(ComplexVector::basis(dim, x))?;
                Ok(self.apply(&basis)?.into_amplitudes())
            })
            .collect()
    }

    pub fn to_json(&self) -> CompiledQftJson {
        CompiledQftJson {
            program: self.to_program().to_json(),
            reorder: self.reorder_mode,
            final_permutation: self.final_permutation.clone(),
        }
    }

    /// One gate per line, e.g. `CPHASE(3) q0 q2`.
    pub fn to_text(&self) -> String {
        let mut out = format!("# QFT on {} qubits\n", self.n_qubits);
        for g in &self.gates {
            let name = match g.kind() {
                GateKind::H => "H".to_string(),
                GateKind::X => "X".to_string(),
                GateKind::Cnot => "CNOT".to_string(),
                GateKind::Swap => "SWAP".to_string(),
                GateKind::CPhase(d) => format!("CPHASE({d})"),
                GateKind::Custom => "U".to_string(),
            };
            let targets: Vec<String> = g.targets().iter().map(|t| format!("q{t}")).collect();
            out.push_str(&format!("{name} {}\n", targets.join(" ")));
        }
        out.push_str(&format!("# final permutation: {:?}\n", self.final_permutation));
        out
    }
}

/// JSON form of a compiled network: the program plus its wire permutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompiledQftJson {
    #[serde(flatten)]
    pub program: ProgramJson,
    pub reorder: ReorderMode,
    pub final_permutation: Vec<usize>,
}

struct Emitter {
    m: usize,
    mode: ReorderMode,
    // logical qubit -> wire
    wire: Vec<usize>,
    gates: Vec<Gate>,
}

impl Emitter {
    fn level(&mut self, k: usize) -> Result<()> {
        let base = self.m - k;
        if k > 1 {
            self.level(k - 1)?;
        }
        for p in 1..k {
            // w^{2^{p-1}} with w = exp(2 pi i / 2^k)
            let d = (k - p + 1) as u32;
            self.gates
                .push(Gate::cphase(self.wire[base], self.wire[base + p], d)?);
        }
        self.gates.push(Gate::h(self.wire[base]));
        for q in base..self.m - 1 {
            match self.mode {
                ReorderMode::Swaps => self.gates.push(Gate::swap(self.wire[q], self.wire[q + 1])?),
                ReorderMode::Relabel => self.wire.swap(q, q + 1),
            }
        }
        Ok(())
    }
}

/// Compiles the Fourier transform on `Z_{2^m}`.
pub fn compile_qft(m: usize, mode: ReorderMode) -> Result<GateList> {
    if !(1..=DEFAULT_QUBIT_CAP).contains(&m) {
        return Err(Error::QubitCount {
            n: m,
            cap: DEFAULT_QUBIT_CAP,
        });
    }
    let mut e = Emitter {
        m,
        mode,
        wire: (0..m).collect(),
        gates: Vec::new(),
    };
    e.level(m)?;
    Ok(GateList {
        n_qubits: m,
        gates: e.gates,
        reorder_mode: mode,
        final_permutation: e.wire,
    })
}

/// Closed-form gate counts: `m` Hadamards, `m(m-1)/2` conditional phases and,
/// with explicit swaps, `m(m-1)/2` swaps.
pub fn gate_count(m: usize, mode: ReorderMode) -> GateCountReport {
    let m = m as u64;
    let pairs = m * m.saturating_sub(1) / 2;
    let swaps = match mode {
        ReorderMode::Swaps => pairs,
        ReorderMode::Relabel => 0,
    };
    GateCountReport {
        hadamards: m,
        cphases: pairs,
        swaps,
        total: m + pairs + swaps,
    }
}

/// The Fourier transform on `Z_{2^m}` applied to an m-qubit state through the network.
pub fn apply_qft(state: &QState) -> Result<QState> {
    compile_qft(state.n_qubits(), ReorderMode::Relabel)?.apply(state)
}
