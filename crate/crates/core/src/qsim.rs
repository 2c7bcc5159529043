//! An n-qubit state-vector simulator.
//!
//! Qubit 0 is the least significant bit of the amplitude index. A 1-qubit gate
//! on qubit `t` acts on the `2^{n-1}` amplitude pairs `(i, i | 1 << t)` with
//! bit `t` of `i` clear; a 2-qubit gate on `(i, j)` acts on `2^{n-2}` strided
//! 4-vectors, ordered `|q_i q_j>` with `q_i` the more significant bit.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::unit_root;
use crate::tolerance::{DENSE, UNITARY};
use crate::vector::ComplexVector;

pub const DEFAULT_QUBIT_CAP: usize = 24;

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Formats outcome `index` as an n-bit string with qubit `n - 1` first.
pub fn bitstring(index: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bitstring(s: &str) -> Result<usize> {
    if s.is_empty() || s.len() > 63 || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Invalid(format!("not a bit string: {s:?}")));
    }
    Ok(usize::from_str_radix(s, 2).expect("validated"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateMatrix {
    One(Matrix2),
    Two(Matrix4),
}

impl GateMatrix {
    pub fn arity(&self) -> usize {
        match self {
            Self::One(_) => 1,
            Self::Two(_) => 2,
        }
    }

    fn dim(&self) -> usize {
        1 << self.arity()
    }

    fn at(&self, r: usize, c: usize) -> Complex64 {
        match self {
            Self::One(m) => m[r][c],
            Self::Two(m) => m[r][c],
        }
    }

    /// Largest entry of `|U U^dagger - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let dot: Complex64 = (0..d).map(|k| self.at(i, k) * self.at(j, k).conj()).sum();
                let target = if i == j { ONE } else { ZERO };
                let dev = (dot - target).norm();
                if dev.is_nan() {
                    return f64::NAN;
                }
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<Vec<Complex64>> {
        let d = self.dim();
        (0..d).map(|r| (0..d).map(|c| self.at(r, c)).collect()).collect()
    }
}

/// Names the standard gates so programs can be written back out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    H,
    X,
    Cnot,
    Swap,
    /// `diag(1, 1, 1, exp(2 pi i / 2^d))`.
    CPhase(u32),
    Custom,
}

/// A 1- or 2-qubit unitary bound to its target qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    matrix: GateMatrix,
    targets: Vec<usize>,
}

impl Gate {
    /// Builds a gate, rejecting non-unitary matrices and repeated targets.
    pub fn new(matrix: GateMatrix, targets: &[usize]) -> Result<Self> {
        Self::checked(GateKind::Custom, matrix, targets)
    }

    fn checked(kind: GateKind, matrix: GateMatrix, targets: &[usize]) -> Result<Self> {
        if targets.len() != matrix.arity() {
            return Err(Error::ArityMismatch {
                arity: matrix.arity(),
                targets: targets.len(),
            });
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(Error::RepeatedTarget(targets.to_vec()));
        }
        let defect = matrix.unitarity_defect();
        if defect.is_nan() || defect > UNITARY {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self {
            kind,
            matrix,
            targets: targets.to_vec(),
        })
    }

    pub fn one(matrix: Matrix2, target: usize) -> Result<Self> {
        Self::new(GateMatrix::One(matrix), &[target])
    }

    pub fn two(matrix: Matrix4, first: usize, second: usize) -> Result<Self> {
        Self::new(GateMatrix::Two(matrix), &[first, second])
    }

    pub fn h(target: usize) -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::checked(GateKind::H, GateMatrix::One([[s, s], [s, -s]]), &[target]).expect("H is unitary")
    }

    pub fn x(target: usize) -> Self {
        Self::checked(GateKind::X, GateMatrix::One([[ZERO, ONE], [ONE, ZERO]]), &[target])
            .expect("X is unitary")
    }

    pub fn identity(target: usize) -> Self {
        Self::checked(GateKind::Custom, GateMatrix::One([[ONE, ZERO], [ZERO, ONE]]), &[target])
            .expect("I is unitary")
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][1] = ONE;
        m[2][3] = ONE;
        m[3][2] = ONE;
        Self::checked(GateKind::Cnot, GateMatrix::Two(m), &[control, target])
    }

    pub fn swap(a: usize, b: usize) -> Result<Self> {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][2] = ONE;
        m[2][1] = ONE;
        m[3][3] = ONE;
        Self::checked(GateKind::Swap, GateMatrix::Two(m), &[a, b])
    }

    /// `diag(1, 1, 1, exp(2 pi i / 2^d))` on `(control, target)`.
    pub fn cphase(control: usize, target: usize, d: u32) -> Result<Self> {
        if d > 62 {
            return Err(Error::Invalid(format!("phase exponent {d} too large")));
        }
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][1] = ONE;
        m[2][2] = ONE;
        m[3][3] = unit_root(1, 1 << d);
        Self::checked(GateKind::CPhase(d), GateMatrix::Two(m), &[control, target])
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn matrix(&self) -> &GateMatrix {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn arity(&self) -> usize {
        self.matrix.arity()
    }

    /// The same gate on relabelled qubits.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Self {
        Self {
            kind: self.kind,
            matrix: self.matrix.clone(),
            targets: self.targets.iter().map(|&t| map(t)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QState {
    n: usize,
    amps: ComplexVector,
}

impl QState {
    /// `|0...0>` on `n` qubits, `1 <= n <= 24`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_QUBIT_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n < 1 || n > cap {
            return Err(Error::QubitCount { n, cap });
        }
        Ok(Self {
            n,
            amps: ComplexVector::basis(1 << n, 0),
        })
    }

    /// Wraps a normalised amplitude vector of length `2^n`.
    pub fn from_amplitudes(amps: ComplexVector) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::NotPowerOfTwo(len));
        }
        let n = len.trailing_zeros() as usize;
        if n > DEFAULT_QUBIT_CAP {
            return Err(Error::QubitCount {
                n,
                cap: DEFAULT_QUBIT_CAP,
            });
        }
        amps.check_finite()?;
        let norm = amps.norm_sqr();
        if (norm - 1.0).abs() > DENSE {
            return Err(Error::NotNormalised(norm));
        }
        Ok(Self { n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amps
    }

    pub fn into_amplitudes(self) -> ComplexVector {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_sqr()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::BadQubit { qubit: q, n: self.n })
        }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for &t in gate.targets() {
            self.check_qubit(t)?;
        }
        match &gate.matrix {
            GateMatrix::One(m) => self.kernel_1q(m, gate.targets[0]),
            GateMatrix::Two(m) => self.kernel_2q(m, gate.targets[0], gate.targets[1]),
        }
        Ok(())
    }

    pub fn apply_1q(&mut self, gate: &Gate, target: usize) -> Result<()> {
        match &gate.matrix {
            GateMatrix::One(m) => {
                self.check_qubit(target)?;
                self.kernel_1q(m, target);
                Ok(())
            }
            GateMatrix::Two(_) => Err(Error::ArityMismatch {
                arity: 2,
                targets: 1,
            }),
        }
    }

    pub fn apply_2q(&mut self, gate: &Gate, i: usize, j: usize) -> Result<()> {
        match &gate.matrix {
            GateMatrix::Two(m) => {
                self.check_qubit(i)?;
                self.check_qubit(j)?;
                if i == j {
                    return Err(Error::RepeatedTarget(vec![i, j]));
                }
                self.kernel_2q(m, i, j);
                Ok(())
            }
            GateMatrix::One(_) => Err(Error::ArityMismatch {
                arity: 1,
                targets: 2,
            }),
        }
    }

    fn kernel_1q(&mut self, u: &Matrix2, t: usize) {
        let stride = 1usize << t;
        let len = self.amps.len();
        for block in (0..len).step_by(2 * stride) {
            for i in block..block + stride {
                let a0 = self.amps[i];
                let a1 = self.amps[i + stride];
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i + stride] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
    }

    fn kernel_2q(&mut self, u: &Matrix4, i: usize, j: usize) {
        let (lo, hi) = (i.min(j), i.max(j));
        let (bi, bj) = (1usize << i, 1usize << j);
        let quarter = self.amps.len() >> 2;
        for k in 0..quarter {
            // spread k around two zero bits at positions lo and hi
            let low = k & ((1 << lo) - 1);
            let rest = k >> lo;
            let mid = rest & ((1 << (hi - lo - 1)) - 1);
            let top = rest >> (hi - lo - 1);
            let base = low | (mid << (lo + 1)) | (top << (hi + 1));
            let idx = [base, base | bj, base | bi, base | bi | bj];
            let a = idx.map(|x| self.amps[x]);
            for (r, &x) in idx.iter().enumerate() {
                self.amps[x] = u[r][0] * a[0] + u[r][1] * a[1] + u[r][2] * a[2] + u[r][3] * a[3];
            }
        }
    }

    /// Born distribution over all `2^n` outcomes.
    pub fn distribution(&self) -> Distribution {
        Distribution::from_weights(self.amps.probabilities())
    }

    /// Distribution of one qubit's value.
    pub fn measure_qubit_distribution(&self, qubit: usize) -> Result<Distribution> {
        self.register_distribution(&[qubit])
    }

    /// Distribution of the outcome of measuring `qubits`; bit `b` of an outcome
    /// is the value of `qubits[b]`.
    pub fn register_distribution(&self, qubits: &[usize]) -> Result<Distribution> {
        self.check_register(qubits)?;
        let mut p = vec![0.0; 1 << qubits.len()];
        for (x, a) in self.amps.iter().enumerate() {
            p[extract_bits(x, qubits)] += a.norm_sqr();
        }
        Ok(Distribution::from_weights(p))
    }

    fn check_register(&self, qubits: &[usize]) -> Result<()> {
        for (k, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..k].contains(&q) {
                return Err(Error::RepeatedTarget(qubits.to_vec()));
            }
        }
        Ok(())
    }

    /// Measures `qubits`, returning the outcome and the renormalised post-measurement state.
    pub fn collapse_register<R: Rng + ?Sized>(
        &self,
        qubits: &[usize],
        rng: &mut R,
    ) -> Result<(usize, QState)> {
        let dist = self.register_distribution(qubits)?;
        let outcome = dist.draw(rng);
        let p = dist.probability(outcome);
        let scale = 1.0 / p.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(x, &a)| {
                if extract_bits(x, qubits) == outcome {
                    a * scale
                } else {
                    ZERO
                }
            })
            .collect();
        Ok((outcome, QState { n: self.n, amps }))
    }

    /// `shots` independent full-register measurements, as outcome -> count.
    pub fn sample<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> BTreeMap<usize, usize> {
        self.distribution().sample(shots, rng)
    }
}

fn extract_bits(x: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (b, &q)| acc | ((x >> q & 1) << b))
}

/// A probability distribution over outcomes `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probabilities: Vec<f64>,
}

impl Distribution {
    /// Clamps tiny negative roundoff to zero. Weights are not rescaled.
    pub fn from_weights(mut probabilities: Vec<f64>) -> Self {
        for p in probabilities.iter_mut() {
            if *p < 0.0 && *p >= -1e-12 {
                *p = 0.0;
            }
        }
        Self { probabilities }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, outcome: usize) -> f64 {
        self.probabilities.get(outcome).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn support(&self, threshold: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.probabilities[i] > threshold)
            .collect()
    }

    pub fn total_variation(&self, other: &Distribution) -> f64 {
        let n = self.len().max(other.len());
        0.5 * (0..n)
            .map(|i| (self.probability(i) - other.probability(i)).abs())
            .sum::<f64>()
    }

    /// One draw; never returns a zero-probability outcome.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = self.total();
        let target = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut last = 0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = i;
            if target < acc {
                return i;
            }
        }
        last
    }

    pub fn sample<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> BTreeMap<usize, usize> {
        let cumulative: Vec<f64> = self
            .probabilities
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p.max(0.0);
                Some(*acc)
            })
            .collect();
        let total = cumulative.last().copied().unwrap_or(0.0);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let target = rng.gen::<f64>() * total;
            let mut i = cumulative.partition_point(|&c| c <= target);
            if i >= cumulative.len() {
                i = cumulative.len() - 1;
            }
            // skip zero-width bins left behind by roundoff at the upper edge
            while self.probabilities[i] <= 0.0 && i > 0 {
                i -= 1;
            }
            *counts.entry(i).or_insert(0) += 1;
        }
        counts
    }
}

/// An ordered list of gates on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    n: usize,
    steps: Vec<Gate>,
}

impl Program {
    pub fn new(n: usize, steps: Vec<Gate>) -> Result<Self> {
        if !(1..=DEFAULT_QUBIT_CAP).contains(&n) {
            return Err(Error::QubitCount {
                n,
                cap: DEFAULT_QUBIT_CAP,
            });
        }
        for g in &steps {
            if let Some(&q) = g.targets().iter().find(|&&q| q >= n) {
                return Err(Error::BadQubit { qubit: q, n });
            }
        }
        Ok(Self { n, steps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Gate] {
        &self.steps
    }

    /// Applies every step in order to `state`.
    pub fn apply_to(&self, state: &mut QState) -> Result<()> {
        if state.n_qubits() != self.n {
            return Err(Error::LengthMismatch {
                expected: 1 << self.n,
                got: state.amplitudes().len(),
            });
        }
        for g in &self.steps {
            state.apply(g)?;
        }
        Ok(())
    }

    /// Runs the program from `|0...0>`.
    pub fn run(&self) -> Result<QState> {
        let mut state = QState::new(self.n)?;
        self.apply_to(&mut state)?;
        Ok(state)
    }

    pub fn to_json(&self) -> ProgramJson {
        ProgramJson {
            n: self.n,
            steps: self.steps.iter().map(StepJson::from_gate).collect(),
        }
    }
}

pub fn run_program(program: &Program) -> Result<QState> {
    program.run()
}

/// Wire form of a [`Program`]:
/// `{"n": 2, "steps": [{"gate": "H", "targets": [0]}, {"matrix": [[[1,0],[0,0]], ...], "targets": [1]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramJson {
    pub n: usize,
    pub steps: Vec<StepJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepJson {
    Named {
        gate: String,
        targets: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<u32>,
    },
    Matrix {
        matrix: Vec<Vec<[f64; 2]>>,
        targets: Vec<usize>,
    },
}

impl StepJson {
    fn from_gate(g: &Gate) -> Self {
        let targets = g.targets().to_vec();
        let named = |name: &str, param| StepJson::Named {
            gate: name.to_string(),
            targets: targets.clone(),
            param,
        };
        match g.kind() {
            GateKind::H => named("H", None),
            GateKind::X => named("X", None),
            GateKind::Cnot => named("CNOT", None),
            GateKind::Swap => named("SWAP", None),
            GateKind::CPhase(d) => named("CPHASE", Some(d)),
            GateKind::Custom => StepJson::Matrix {
                matrix: g
                    .matrix()
                    .entries()
                    .iter()
                    .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
                    .collect(),
                targets,
            },
        }
    }

    fn to_gate(&self) -> Result<Gate> {
        match self {
            StepJson::Named {
                gate,
                targets,
                param,
            } => {
                let want = |k: usize| {
                    if targets.len() == k {
                        Ok(())
                    } else {
                        Err(Error::ArityMismatch {
                            arity: k,
                            targets: targets.len(),
                        })
                    }
                };
                match gate.as_str() {
                    "H" => want(1).map(|_| Gate::h(targets[0])),
                    "X" => want(1).map(|_| Gate::x(targets[0])),
                    "CNOT" => want(2).and_then(|_| Gate::cnot(targets[0], targets[1])),
                    "SWAP" => want(2).and_then(|_| Gate::swap(targets[0], targets[1])),
                    "CPHASE" => want(2).and_then(|_| {
                        let d = param.ok_or_else(|| {
                            Error::Invalid("CPHASE needs a \"param\" phase exponent".into())
                        })?;
                        Gate::cphase(targets[0], targets[1], d)
                    }),
                    other => Err(Error::Invalid(format!("unknown gate {other:?}"))),
                }
            }
            StepJson::Matrix { matrix, targets } => {
                let c = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
                let square = |d: usize| matrix.len() == d && matrix.iter().all(|r| r.len() == d);
                if square(2) {
                    let mut m = [[ZERO; 2]; 2];
                    for r in 0..2 {
                        for k in 0..2 {
                            m[r][k] = c(&matrix[r][k]);
                        }
                    }
                    Gate::new(GateMatrix::One(m), targets)
                } else if square(4) {
                    let mut m = [[ZERO; 4]; 4];
                    for r in 0..4 {
                        for k in 0..4 {
                            m[r][k] = c(&matrix[r][k]);
                        }
                    }
                    Gate::new(GateMatrix::Two(m), targets)
                } else {
                    Err(Error::Invalid("gate matrix must be 2x2 or 4x4".into()))
                }
            }
        }
    }
}

impl TryFrom<&ProgramJson> for Program {
    type Error = Error;
    fn try_from(p: &ProgramJson) -> Result<Self> {
        let steps = p.steps.iter().map(StepJson::to_gate).collect::<Result<Vec<_>>>()?;
        Program::new(p.n, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn state(amps: &[Complex64]) -> QState {
        QState::from_amplitudes(ComplexVector::new(amps.to_vec())).unwrap()
    }

    #[test]
    fn new_state_examples() {
        assert_eq!(QState::new(1).unwrap().amplitudes().as_slice(), &[c(1.0), c(0.0)]);
        assert_eq!(QState::new(2).unwrap().amplitudes().as_slice(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);
        assert_eq!(QState::new(24).unwrap().amplitudes().len(), 1 << 24);
        assert_eq!(QState::new(0), Err(Error::QubitCount { n: 0, cap: 24 }));
        assert_eq!(QState::new(25), Err(Error::QubitCount { n: 25, cap: 24 }));
    }

    #[test]
    fn apply_1q_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut s = QState::new(1).unwrap();
        s.apply(&Gate::h(0)).unwrap();
        assert!(s.amplitudes().max_abs_diff(&ComplexVector::from_reals(&[h, h])) < 1e-15);

        let before = state(&[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
        let mut after = before.clone();
        after.apply(&Gate::identity(0)).unwrap();
        assert_eq!(after, before);

        let mut s = QState::new(2).unwrap();
        s.apply_1q(&Gate::h(0), 1).unwrap();
        assert!(s.amplitudes().max_abs_diff(&ComplexVector::from_reals(&[h, 0.0, h, 0.0])) < 1e-15);
    }

    #[test]
    fn apply_errors() {
        let mut s = QState::new(2).unwrap();
        assert_eq!(s.apply(&Gate::h(2)), Err(Error::BadQubit { qubit: 2, n: 2 }));
        assert!(Gate::cnot(1, 1).is_err());
        let bad = [[c(1.0), c(1.0)], [c(0.0), c(1.0)]];
        assert!(matches!(Gate::one(bad, 0), Err(Error::NotUnitary(_))));
        let nan = [[c(f64::NAN), c(0.0)], [c(0.0), c(1.0)]];
        assert!(matches!(Gate::one(nan, 0), Err(Error::NotUnitary(_))));
        assert!(s.apply_2q(&Gate::swap(0, 1).unwrap(), 0, 0).is_err());
        assert!(s.apply_2q(&Gate::h(0), 0, 1).is_err());
    }

    #[test]
    fn apply_2q_examples() {
        // |10> has qubit 1 set: index 2
        let mut s = state(&[c(0.0), c(0.0), c(1.0), c(0.0)]);
        s.apply(&Gate::cnot(1, 0).unwrap()).unwrap();
        assert_eq!(s.amplitudes().as_slice(), &[c(0.0), c(0.0), c(0.0), c(1.0)]);

        let mut s = state(&[c(0.0), c(1.0), c(0.0), c(0.0)]);
        s.apply(&Gate::swap(0, 1).unwrap()).unwrap();
        assert_eq!(s.amplitudes().as_slice(), &[c(0.0), c(0.0), c(1.0), c(0.0)]);

        let w = unit_root(1, 8);
        let mut s = state(&[c(0.0), c(0.0), c(0.0), c(1.0)]);
        s.apply(&Gate::cphase(0, 1, 3).unwrap()).unwrap();
        assert!((s.amplitudes()[3] - w).norm() < 1e-15);
    }

    #[test]
    fn run_program_examples() {
        let empty = Program::new(2, vec![]).unwrap();
        assert_eq!(run_program(&empty).unwrap(), QState::new(2).unwrap());

        let bell = Program::new(2, vec![Gate::h(0), Gate::cnot(0, 1).unwrap()]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = run_program(&bell).unwrap();
        assert!(s.amplitudes().max_abs_diff(&ComplexVector::from_reals(&[h, 0.0, 0.0, h])) < 1e-15);

        assert_eq!(
            Program::new(2, vec![Gate::h(3)]),
            Err(Error::BadQubit { qubit: 3, n: 2 })
        );
    }

    #[test]
    fn measure_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = state(&[c(h), c(0.0), c(0.0), c(h)]);
        let d = bell.measure_qubit_distribution(0).unwrap();
        assert!((d.probability(0) - 0.5).abs() < 1e-12);
        assert!((d.probability(1) - 0.5).abs() < 1e-12);

        let d = QState::new(1).unwrap().measure_qubit_distribution(0).unwrap();
        assert_eq!(d.probabilities(), &[1.0, 0.0]);

        let s = state(&[c(1.0 / 3f64.sqrt()), c(0.0), c(0.0), c((2.0 / 3.0f64).sqrt())]);
        let d = s.measure_qubit_distribution(1).unwrap();
        assert!((d.probability(0) - 1.0 / 3.0).abs() < 1e-12);
        assert!((d.probability(1) - 2.0 / 3.0).abs() < 1e-12);

        assert!(s.measure_qubit_distribution(2).is_err());
    }

    #[test]
    fn collapse_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // |0> (x) |+> : qubit 1 is |0>, qubit 0 is |+>
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = state(&[c(h), c(h), c(0.0), c(0.0)]);
        let (outcome, post) = s.collapse_register(&[1], &mut rng).unwrap();
        assert_eq!(outcome, 0);
        assert!(post.amplitudes().max_abs_diff(s.amplitudes()) < 1e-15);

        let bell = state(&[c(h), c(0.0), c(0.0), c(h)]);
        let mut seen = [0usize; 2];
        for _ in 0..200 {
            let (b, post) = bell.collapse_register(&[0], &mut rng).unwrap();
            seen[b] += 1;
            let expect = ComplexVector::basis(4, if b == 1 { 3 } else { 0 });
            assert!(post.amplitudes().max_abs_diff(&expect) < 1e-15);
        }
        assert!(seen[0] > 50 && seen[1] > 50);

        // |f> for f(g) = g mod 2 on Z_4: group register on qubits 0,1, value on qubit 2
        let mut amps = vec![c(0.0); 8];
        for g in 0..4usize {
            amps[g | ((g % 2) << 2)] = c(0.5);
        }
        let joint = state(&amps);
        for _ in 0..20 {
            let (v, post) = joint.collapse_register(&[2], &mut rng).unwrap();
            let mut expect = vec![c(0.0); 8];
            for g in (0..4usize).filter(|g| g % 2 == v) {
                expect[g | (v << 2)] = c(h);
            }
            assert!(post.amplitudes().max_abs_diff(&ComplexVector::new(expect)) < 1e-15);
        }
    }

    #[test]
    fn sample_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = state(&[c(0.0), c(1.0), c(0.0), c(0.0)]);
        let counts = s.sample(100, &mut rng);
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![(1, 100)]);
        assert_eq!(bitstring(1, 2), "01");

        let u = state(&[c(0.5); 4]);
        let counts = u.sample(100_000, &mut rng);
        let sigma = (100_000.0f64 * 0.25 * 0.75).sqrt();
        for k in 0..4 {
            assert!((counts[&k] as f64 - 25_000.0).abs() < 5.0 * sigma);
        }

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = state(&[c(h), c(0.0), c(0.0), c(h)]);
        let counts = bell.sample(1000, &mut rng);
        assert!(counts.keys().all(|&k| k == 0 || k == 3));
    }

    #[test]
    fn sampling_is_seeded() {
        let s = state(&[c(0.5); 4]);
        let a = s.sample(500, &mut ChaCha8Rng::seed_from_u64(9));
        let b = s.sample(500, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn program_json() {
        let text = r#"{"n": 2, "steps": [
            {"gate": "H", "targets": [0]},
            {"gate": "CNOT", "targets": [0, 1]},
            {"gate": "CPHASE", "targets": [0, 1], "param": 2},
            {"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "targets": [1]}
        ]}"#;
        let parsed: ProgramJson = serde_json::from_str(text).unwrap();
        let program = Program::try_from(&parsed).unwrap();
        assert_eq!(program.steps().len(), 4);
        assert_eq!(program.steps()[2].kind(), GateKind::CPhase(2));
        let back = Program::try_from(&program.to_json()).unwrap();
        assert_eq!(back, program);

        let bad: ProgramJson =
            serde_json::from_str(r#"{"n": 1, "steps": [{"gate": "CPHASE", "targets": [0, 1]}]}"#).unwrap();
        assert!(Program::try_from(&bad).is_err());
        let bad: ProgramJson =
            serde_json::from_str(r#"{"n": 1, "steps": [{"gate": "T", "targets": [0]}]}"#).unwrap();
        assert!(Program::try_from(&bad).is_err());
    }
}
